#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "scambait/event.hpp"

namespace scambait {

struct DisclosureFiles {
  std::string profiles;          // profile \t conversations
  std::string payment_emails;    // email \t ff \t conversations
  std::string crypto_addresses;  // address \t kind \t validity \t conversations
};

// Scam-candidate profiles, PayPal emails and crypto addresses found in the
// log, one deduplicated record per line with the conversations they came
// from, sorted, each file with a header row.
DisclosureFiles build_disclosure(const std::vector<InteractionEvent>& events);

// Writes profiles.tsv, payment_emails.tsv and crypto_addresses.tsv.
void export_disclosure(const std::vector<InteractionEvent>& events, const std::filesystem::path& out_dir);

// Masks email local parts and phone digits ("mar***@gmail.com", "+*******21").
std::string mask_personal(std::string_view text);

}  // namespace scambait
