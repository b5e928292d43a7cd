#include "scambait/disclosure.hpp"

#include <fstream>
#include <map>
#include <regex>
#include <set>

#include "scambait/analytics.hpp"
#include "scambait/report.hpp"
#include "scambait/text.hpp"

namespace scambait {
namespace {

std::string join_ids(const std::set<std::string>& ids) {
  std::string out;
  for (const auto& id : ids) {
    if (!out.empty()) out += ',';
    out += id;
  }
  return out;
}

void write_file(const std::filesystem::path& p, const std::string& content) {
  std::ofstream out(p, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write " + p.string());
  out << content;
  if (!out) throw std::runtime_error("write to " + p.string() + " failed");
}

}  // namespace

DisclosureFiles build_disclosure(const std::vector<InteractionEvent>& events) {
  // Scam candidates as recorded by the filtration step, with the conversations
  // held with them.
  std::map<std::string, std::set<std::string>> profiles;
  static constexpr std::string_view kCandidate = "classification: scam_candidate";
  for (const auto& e : events) {
    if (e.kind == EventKind::system && e.text && *e.text == kCandidate) profiles[normalize_handle(e.profile_id)];
  }
  for (const auto& e : events) {
    if ((e.kind == EventKind::direct_message_in || e.kind == EventKind::direct_message_out) && e.conversation_id) {
      profiles[normalize_handle(e.profile_id)].insert(*e.conversation_id);
    }
  }

  struct EmailRow {
    bool ff = false;
    std::set<std::string> convs;
  };
  struct CryptoRow {
    PaymentKind kind;
    Validity validity;
    std::set<std::string> convs;
  };
  std::map<std::string, EmailRow> emails;
  std::map<std::string, CryptoRow> crypto;
  for (const auto& cp : payments_from_transcripts(transcripts_from_events(events))) {
    for (const auto& p : cp.profiles) {
      if (p.kind == PaymentKind::paypal && p.identifier.find('@') != std::string::npos) {
        auto& row = emails[text::to_lower(p.identifier)];
        row.ff = row.ff || p.ff_flag;
        row.convs.insert(cp.conversation_id);
      } else if (p.kind == PaymentKind::crypto_btc || p.kind == PaymentKind::crypto_eth ||
                 p.kind == PaymentKind::crypto_other) {
        auto [it, inserted] = crypto.try_emplace(p.identifier, CryptoRow{p.kind, p.validity, {}});
        it->second.convs.insert(cp.conversation_id);
      }
    }
  }

  DisclosureFiles f;
  f.profiles = "profile\tconversations\n";
  for (const auto& [handle, convs] : profiles) f.profiles += handle + "\t" + join_ids(convs) + "\n";
  f.payment_emails = "email\tff\tconversations\n";
  for (const auto& [email, row] : emails) {
    f.payment_emails += email + "\t" + (row.ff ? "true" : "false") + "\t" + join_ids(row.convs) + "\n";
  }
  f.crypto_addresses = "address\tkind\tvalidity\tconversations\n";
  for (const auto& [addr, row] : crypto) {
    f.crypto_addresses += addr + "\t" + std::string(to_string(row.kind)) + "\t" + std::string(to_string(row.validity)) +
                          "\t" + join_ids(row.convs) + "\n";
  }
  return f;
}

void export_disclosure(const std::vector<InteractionEvent>& events, const std::filesystem::path& out_dir) {
  std::filesystem::create_directories(out_dir);
  const DisclosureFiles f = build_disclosure(events);
  write_file(out_dir / "profiles.tsv", f.profiles);
  write_file(out_dir / "payment_emails.tsv", f.payment_emails);
  write_file(out_dir / "crypto_addresses.tsv", f.crypto_addresses);
}

std::string mask_personal(std::string_view text) {
  static const std::regex email(R"(([A-Za-z0-9._%+\-*]+)@([A-Za-z0-9.\-]+\.[A-Za-z]{2,}))");
  static const std::regex phone(R"(\+?\d[\d\s\-().]{6,}\d)");
  std::string s(text);
  auto mask_with = [](const std::string& in, const std::regex& re, auto fn) {
    std::string result;
    auto begin = std::sregex_iterator(in.begin(), in.end(), re);
    std::size_t last = 0;
    for (auto it = begin; it != std::sregex_iterator(); ++it) {
      result.append(in, last, static_cast<std::size_t>(it->position()) - last);
      result += fn(*it);
      last = static_cast<std::size_t>(it->position() + it->length());
    }
    result.append(in, last);
    return result;
  };
  s = mask_with(s, email, [](const std::smatch& m) {
    const std::string local = m[1].str();
    return local.substr(0, std::min<std::size_t>(3, local.size())) + "***@" + m[2].str();
  });
  s = mask_with(s, phone, [](const std::smatch& m) {
    std::string digits;
    for (char c : m.str()) {
      if (std::isdigit(static_cast<unsigned char>(c))) digits += c;
    }
    if (digits.size() < 8) return m.str();
    return "+" + std::string(digits.size() - 2, '*') + digits.substr(digits.size() - 2);
  });
  return s;
}

}  // namespace scambait
