#pragma once

#include <string_view>
#include <vector>

namespace scambait {

// Returns the compiled-in copy of a shipped data file (by basename, e.g.
// "honeypost_phrases.txt"). Throws std::out_of_range for unknown names.
std::string_view embedded_data(std::string_view name);

namespace detail {
struct EmbeddedFile {
  std::string_view name;
  std::string_view content;
};
const std::vector<EmbeddedFile>& embedded_files();
}  // namespace detail

}  // namespace scambait
