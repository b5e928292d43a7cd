#include "scambait/embedded.hpp"

#include <stdexcept>
#include <string>

namespace scambait {

std::string_view embedded_data(std::string_view name) {
  for (const auto& f : detail::embedded_files()) {
    if (f.name == name) return f.content;
  }
  throw std::out_of_range("no embedded data file named " + std::string(name));
}

}  // namespace scambait
