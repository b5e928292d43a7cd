#include "fixtures.hpp"

#include <random>
#include <stdexcept>

#include "scambait/crypto_address.hpp"
#include "scambait/text.hpp"

namespace fixtures {

using namespace scambait;

std::filesystem::path path(const std::string& name) { return std::filesystem::path(SCAMBAIT_FIXTURE_DIR) / name; }

std::string read(const std::string& name) { return text::read_file(path(name)); }

std::vector<std::vector<std::string>> tsv(const std::string& name) {
  std::vector<std::vector<std::string>> rows;
  for (const auto& line : text::split(read(name), '\n')) {
    if (line.empty() || line.front() == '#') continue;
    rows.push_back(text::split(line, '\t'));
  }
  return rows;
}

Timestamp at(const char* iso) { return parse_iso8601(iso); }

Transcript dialogue(const std::string& name, Timestamp start, Millis step) {
  Transcript t;
  t.conversation_id = "cv-" + name;
  t.profile_id = "scammer-" + name;
  t.channel = ChannelKind::instagram;
  Timestamp now = start;
  for (const auto& row : tsv(name)) {
    if (row.size() != 2) throw std::runtime_error("bad dialogue row in " + name);
    t.turns.push_back({row[0] == "system" ? Author::system : Author::scammer, row[1], now});
    now += step;
  }
  return t;
}

std::vector<InteractionEvent> dm_events(const Transcript& t) {
  std::vector<InteractionEvent> out;
  for (std::size_t i = 0; i < t.turns.size(); ++i) {
    InteractionEvent e;
    e.id = t.conversation_id + "-" + std::to_string(i);
    e.ts = t.turns[i].at;
    e.kind = t.turns[i].author == Author::system ? EventKind::direct_message_out : EventKind::direct_message_in;
    e.profile_id = t.profile_id;
    e.conversation_id = t.conversation_id;
    e.channel = t.channel;
    e.text = t.turns[i].text;
    out.push_back(std::move(e));
  }
  return out;
}

std::vector<oracle::DmEvent> to_oracle(const std::vector<InteractionEvent>& events) {
  std::vector<oracle::DmEvent> out;
  for (const auto& e : events) {
    if (e.kind != EventKind::direct_message_in && e.kind != EventKind::direct_message_out) continue;
    out.push_back({*e.conversation_id, std::string(to_string(e.channel)), e.kind == EventKind::direct_message_in,
                   e.ts.time_since_epoch().count()});
  }
  return out;
}

namespace {

Respondent respondent(std::string id, std::string handle, bool verified, std::vector<std::string> replies) {
  Respondent r;
  r.profile.profile_id = id;
  r.profile.handle = handle;
  r.profile.display_name = handle;
  r.profile.verified = verified;
  Timestamp ts = parse_iso8601("2023-11-20T10:00:00Z");
  int n = 0;
  for (auto& text : replies) {
    InteractionEvent e;
    e.id = id + "-r" + std::to_string(n++);
    e.ts = ts;
    e.kind = EventKind::reply;
    e.profile_id = id;
    e.honeypost_id = "hp-1";
    e.channel = ChannelKind::x;
    e.text = std::move(text);
    r.events.push_back(std::move(e));
    ts += kMinute;
  }
  // A like never carries text and must not influence the class.
  InteractionEvent like;
  like.id = id + "-like";
  like.ts = ts;
  like.kind = EventKind::like;
  like.profile_id = id;
  like.honeypost_id = "hp-1";
  like.channel = ChannelKind::x;
  r.events.push_back(std::move(like));
  return r;
}

}  // namespace

std::vector<Respondent> filtration_fixture() {
  std::vector<Respondent> v;
  // Verified accounts are excluded even when they sound like scammers.
  v.push_back(respondent("ver-1", "newsdesk_daily", true, {"Wallet scams are rising, stay safe"}));
  v.push_back(respondent("ver-2", "cryptojournalist", true, {"Contact support at help@exchange-news.com"}));
  v.push_back(respondent("ver-3", "security_researcher", true, {"Never share your seed phrase with an expert"}));
  v.push_back(respondent("ver-4", "bankofficial", true, {"DM @bank_help on twitter for official support"}));
  v.push_back(respondent("ver-5", "techreviewer", true, {"Hope you recover it"}));
  // Official platform accounts from the allowlist.
  v.push_back(respondent("off-1", "@Instagram", false, {"Please contact support through the app settings"}));
  v.push_back(respondent("off-2", "gmail", false, {"Visit https://support.google.com for account recovery"}));
  v.push_back(respondent("off-3", "facebook", false, {"We are here to help, send us a DM"}));
  v.push_back(respondent("off-4", "whatsapp", false, {"Use the official recovery flow"}));
  v.push_back(respondent("off-5", "youtube", false, {"Check our help center"}));
  // Benign bystanders: no channel offered, no support claim.
  v.push_back(respondent("ben-1", "sam_1987", false, {"Same happened to me, so annoying"}));
  v.push_back(respondent("ben-2", "lola.h", false, {"Good luck getting it back!"}));
  v.push_back(respondent("ben-3", "mkt_watch", false, {"This is why I keep a paper backup"}));
  v.push_back(respondent("ben-4", "jpz", false, {"Did you try resetting your password?"}));
  v.push_back(respondent("ben-5", "anna_b", false, {"Ugh, sorry to hear that"}));
  // Scam candidates offering an engageable channel.
  v.push_back(respondent("cand-1", "recover_ace", false, {"I can help, email me at ace.recovery@gmail.com"}));
  v.push_back(respondent("cand-2", "wallet_medic", false, {"Wallet support here, dm @wallet_medic on twitter"}));
  v.push_back(respondent("cand-3", "ig_restore", false, {"Reach out to @restore_pro on instagram"}));
  v.push_back(respondent("cand-4", "hackfix", false, {"I am a recovery agent", "Contact hackfix.pro@outlook.com"}));
  v.push_back(respondent("cand-5", "coin_doctor", false, {"Ledger expert here, DM me"}));
  return v;
}

SimScammerScript three_method_script(std::uint64_t seed) {
  SimScammerScript s;
  s.id = "script-three";
  s.handle = "wallet_medic";
  s.channel = ChannelKind::email;
  s.role_title = "wallet support agent";
  s.verification_asks = {VerificationAsk::account_address};
  s.issue_reason = IssueReason::system_bug;
  s.price = Money{Decimal::from_int(150), "USD"};
  const std::vector<std::uint8_t> h160(20, 0x42);
  s.payment_methods = {
      {PaymentKind::paypal, "medic.payments@gmail.com"},
      {PaymentKind::crypto_btc, base58check_encode(0x00, h160)},
      {PaymentKind::crypto_eth, eip55_checksum("52908400098527886e0f7030069857d2e4169ee7")},
  };
  s.frustration_threshold = 3;
  s.seed = seed;
  return s;
}

std::vector<ScamProfile> random_profiles(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  auto pick = [&](std::size_t k) { return static_cast<std::size_t>(rng() % k); };
  const std::vector<std::string> names = {"Recovery Desk", "recovery  desk", "Jay Fix", "Wallet Medic", "Ana",
                                          "Crypto Help",   "Mark Lee",       "Lee Mark", "Support Team", "Zed"};
  const std::vector<std::string> descs = {"",          "Certified recovery expert", "certified  RECOVERY expert",
                                          "DM for help", "Blockchain developer",     "", "Mom of two", ""};
  std::vector<ScamProfile> out;
  for (std::size_t i = 0; i < n; ++i) {
    ScamProfile p;
    p.profile_id = "p" + std::string(i < 10 ? "0" : "") + std::to_string(i);
    p.handle = "h" + std::to_string(i);
    // Unique names most of the time so components stay non-trivial.
    p.display_name = pick(4) == 0 ? names[pick(names.size())] : "user " + std::to_string(i);
    p.description = pick(3) == 0 ? descs[pick(descs.size())] : "";
    const std::size_t followers = pick(3);
    for (std::size_t f = 0; f < followers; ++f) p.followers.insert("f" + std::to_string(pick(60)));
    const std::size_t channels = pick(3);
    for (std::size_t c = 0; c < channels; ++c) {
      const std::size_t which = pick(40);
      if (pick(2) == 0) {
        p.channels.push_back({ContactKind::email, "m" + std::to_string(which) + "@mail.com"});
      } else {
        p.channels.push_back({ContactKind::telegram, "t" + std::to_string(which)});
      }
    }
    out.push_back(std::move(p));
  }
  return out;
}

std::vector<oracle::ClusterInput> to_oracle(const std::vector<ScamProfile>& profiles) {
  std::vector<oracle::ClusterInput> out;
  for (const auto& p : profiles) {
    oracle::ClusterInput c{p.profile_id, p.display_name, p.description, p.followers, {}};
    for (const auto& ch : p.channels) c.channels.insert(std::string(to_string(ch.kind)) + ":" + ch.address);
    out.push_back(std::move(c));
  }
  return out;
}

DriveResult drive(Conversation& conv, ChatProvider& provider, const SimScammerScript& script, Timestamp start,
                  int max_decisions, const EngineConfig& cfg) {
  DriveResult r;
  Timestamp now = start;
  for (int i = 0; i < max_decisions && conv.state != ConversationState::ended; ++i) {
    Decision d = next_reply(conv, provider, now, cfg);
    r.decisions.push_back(d);
    if (const auto* idle = std::get_if<decision::Idle>(&d)) {
      now = idle->resume_at;
      continue;
    }
    const auto text = outbound_text(d);
    if (text) r.outbound.push_back(*text);
    if (!text || conv.state == ConversationState::ended || r.scammer.stage == SimStage::gone) continue;
    const SimClock clock(now);
    const ScammerReply reply = scammer_step(script, r.scammer, *text, clock);
    r.scammer = reply.state;
    if (reply.text) {
      now = reply.at;
      conv.add_scammer_turn(*reply.text, now);
    }
  }
  return r;
}

}  // namespace fixtures
