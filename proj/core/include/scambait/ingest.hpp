#pragma once

#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "scambait/event.hpp"

namespace scambait {

enum class ContactKind { email, x_dm, instagram_dm, whatsapp_phone, telegram, url, google_form };

std::string_view to_string(ContactKind k);
ContactKind parse_contact_kind(std::string_view s);

// Channels the engagement accounts can talk on directly.
bool is_supported_contact(ContactKind k);

struct ContactChannel {
  ContactKind kind = ContactKind::email;
  std::string address;  // normalized: lowercase handles/emails, "+digits", scheme-qualified URLs

  bool operator==(const ContactChannel&) const = default;
  auto operator<=>(const ContactChannel&) const = default;
};

enum class Classification { unclassified, excluded_verified, excluded_official, benign, scam_candidate };

std::string_view to_string(Classification c);

struct ScamProfile {
  std::string profile_id;
  std::string handle;
  std::string display_name;
  std::string description;
  bool verified = false;
  std::set<std::string> followers;
  std::set<std::string> following;
  Classification classification = Classification::unclassified;
  std::vector<ContactChannel> channels;
};

struct Allowlists {
  std::set<std::string, std::less<>> official_social;
  std::set<std::string, std::less<>> official_wallets;

  // One handle per line, '#' comments; entries are normalized on load.
  static Allowlists parse(std::string_view social, std::string_view wallets);
  static const Allowlists& builtin();

  bool contains(std::string_view handle) const;
};

std::string normalize_handle(std::string_view handle);

// Contact channels in order of first appearance, deduplicated. `self_handle`
// resolves "dm me" to the author's own account when given.
std::vector<ContactChannel> extract_channels(std::string_view text, std::string_view self_handle = {});

// True when the text claims a support/expert role (support lexicon).
bool detect_impersonation(std::string_view text);

// Precedence: verified, allowlisted, benign (no channel and no support claim),
// otherwise scam_candidate.
Classification classify_profile(const ScamProfile& profile, const std::vector<InteractionEvent>& events,
                                const Allowlists& allow);

// classify_profile plus filling profile.channels from the event texts.
void ingest_profile(ScamProfile& profile, const std::vector<InteractionEvent>& events, const Allowlists& allow);

}  // namespace scambait
