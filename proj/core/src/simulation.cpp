#include "scambait/simulation.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <memory>
#include <queue>

#include <json.hpp>

#include "scambait/channels.hpp"
#include "scambait/disclosure.hpp"
#include "scambait/honeypost.hpp"
#include "scambait/rng.hpp"
#include "scambait/simscammer.hpp"
#include "scambait/text.hpp"

namespace scambait {
namespace {

constexpr std::string_view kBenignReplies[] = {
    "So sorry to hear that, hope you get it back soon.",
    "Same thing happened to me last week. Good luck getting it back!",
    "Ugh, that's the worst. Try resetting it from the app.",
    "Good luck getting it back",
    "That happened to my cousin too, it took a few days to sort out.",
};

std::string capitalize(std::string s) {
  bool start = true;
  for (char& c : s) {
    if (start && std::isalpha(static_cast<unsigned char>(c))) c = static_cast<char>(std::toupper(c));
    start = c == ' ';
  }
  return s;
}

// What a scammer writes under a honeypost to pull the victim into DMs.
std::string respondent_reply(const SimScammerScript& s, Rng& rng) {
  const std::string role = s.role_title;
  switch (s.channel) {
    case ChannelKind::email: {
      const std::string lines[] = {
          "I'm a " + role + ", I can help you. Email me at " + s.handle + "@gmail.com",
          role + " here. Send a mail to " + s.handle + "@outlook.com and I will get it fixed.",
      };
      return lines[rng.below(2)];
    }
    case ChannelKind::instagram: {
      const std::string lines[] = {
          "Reach out to @" + s.handle + " on Instagram, " + role + " here.",
          "I'm a " + role + ". Send a dm to @" + s.handle + " on IG",
      };
      return lines[rng.below(2)];
    }
    case ChannelKind::x:
    case ChannelKind::simulated:
      break;
  }
  const std::string lines[] = {
      "I'm a " + role + ", send a dm to @" + s.handle + " on X",
      role + " here, I've helped many people. DM @" + s.handle + " for help.",
  };
  return lines[rng.below(2)];
}

ContactKind contact_for(ChannelKind k) {
  switch (k) {
    case ChannelKind::email:
      return ContactKind::email;
    case ChannelKind::instagram:
      return ContactKind::instagram_dm;
    case ChannelKind::x:
    case ChannelKind::simulated:
      break;
  }
  return ContactKind::x_dm;
}

struct Engagement {
  const SimScammerScript* script = nullptr;
  Conversation conv;
  SimState sim;
  bool reply_pending = false;
  std::uint64_t wake_gen = 0;
  int provider_failures = 0;
  SimulatedChannel* channel = nullptr;
};

struct QueueItem {
  Timestamp at{};
  std::uint64_t seq = 0;
  enum Type { persona_wake, scammer_deliver } type = persona_wake;
  std::size_t conv = 0;
  std::uint64_t gen = 0;
  std::string text;
  bool operator>(const QueueItem& o) const { return at != o.at ? at > o.at : seq > o.seq; }
};

class Simulator {
 public:
  Simulator(const CampaignConfig& cfg, EventLog& log) : cfg_(cfg), log_(log), clock_(cfg.start_time()) {
    mask_ = cfg.mask_personal.value_or(false);
  }

  SimulationReport run();

 private:
  std::string next_event_id() {
    char buf[32];
    std::snprintf(buf, sizeof buf, "ev-%07llu", static_cast<unsigned long long>(event_counter_++));
    return buf;
  }

  void log_event(Timestamp ts, EventKind kind, const std::string& profile, const std::string& post,
                 std::optional<std::string> conv, ChannelKind channel, std::optional<std::string> text) {
    InteractionEvent e;
    e.id = next_event_id();
    e.ts = ts;
    e.kind = kind;
    e.profile_id = profile;
    e.honeypost_id = post;
    e.conversation_id = std::move(conv);
    e.channel = channel;
    if (text && mask_) text = mask_personal(*text);
    e.text = std::move(text);
    log_.append(e);
  }

  void push(QueueItem item) {
    item.seq = seq_++;
    queue_.push(std::move(item));
  }

  void schedule_wake(std::size_t i, Timestamp at) {
    auto& en = engagements_[i];
    push({at, 0, QueueItem::persona_wake, i, ++en.wake_gen, {}});
  }

  void end_note(Engagement& en, Timestamp at) {
    log_event(at, EventKind::system, en.conv.scammer_profile_id, {}, en.conv.id, en.conv.channel,
              "conversation ended: " + std::string(to_string(*en.conv.end_reason)));
  }

  void persona_wake(std::size_t i, Timestamp at);
  void scammer_deliver(std::size_t i, Timestamp at, const std::string& text);
  void scammer_react(std::size_t i, const std::string& inbound);

  const CampaignConfig& cfg_;
  EventLog& log_;
  SimClock clock_;
  bool mask_ = false;
  std::uint64_t event_counter_ = 0;
  std::uint64_t seq_ = 0;
  std::uint64_t inbound_counter_ = 0;
  std::unique_ptr<ChatProvider> base_provider_;
  std::unique_ptr<ChatProvider> provider_;
  std::vector<Engagement> engagements_;
  std::map<std::string, std::size_t, std::less<>> by_conversation_;
  std::map<ChannelKind, std::vector<std::unique_ptr<SimulatedChannel>>> accounts_;
  std::priority_queue<QueueItem, std::vector<QueueItem>, std::greater<>> queue_;
};

void Simulator::scammer_react(std::size_t i, const std::string& inbound) {
  auto& en = engagements_[i];
  if (en.reply_pending || en.sim.stage == SimStage::gone) return;
  ScammerReply r = scammer_step(*en.script, en.sim, inbound, clock_);
  en.sim = r.state;
  if (r.text) {
    en.reply_pending = true;
    push({r.at, 0, QueueItem::scammer_deliver, i, 0, std::move(*r.text)});
  }
}

void Simulator::persona_wake(std::size_t i, Timestamp at) {
  auto& en = engagements_[i];
  Conversation& conv = en.conv;
  if (conv.state == ConversationState::ended) return;

  const Conversation backup = conv;
  Decision d;
  try {
    d = next_reply(conv, *provider_, at, cfg_.engine);
  } catch (const ProviderError& e) {
    if (++en.provider_failures >= 3) {
      stop_conversation(conv);
      log_event(at, EventKind::system, conv.scammer_profile_id, {}, conv.id, conv.channel,
                std::string("provider failure: ") + e.what());
      end_note(en, at);
    } else {
      schedule_wake(i, at + 5 * kMinute);
    }
    return;
  }

  if (auto* idle = std::get_if<decision::Idle>(&d)) {
    schedule_wake(i, idle->resume_at);
    return;
  }
  if (auto text = outbound_text(d)) {
    try {
      const DeliveryReceipt receipt = en.channel->send_message(conv.id, *text);
      log_event(receipt.sent_at, EventKind::direct_message_out, conv.scammer_profile_id, {}, conv.id, conv.channel,
                *text);
    } catch (const ChannelError& e) {
      conv = backup;
      if (e.code() == ChannelErrorCode::rate_limited) {
        schedule_wake(i, at + std::max(e.retry_after(), Millis{1}));
      } else {
        stop_conversation(conv);
        end_note(en, at);
      }
      return;
    }
    if (conv.state != ConversationState::ended) {
      schedule_wake(i, at + cfg_.engine.silence_timeout);
      scammer_react(i, *text);
    }
  }
  if (conv.state == ConversationState::ended) end_note(en, at);
}

void Simulator::scammer_deliver(std::size_t i, Timestamp at, const std::string& text) {
  auto& en = engagements_[i];
  en.reply_pending = false;
  if (en.conv.state == ConversationState::ended) return;  // nobody is listening any more
  char id[48];
  std::snprintf(id, sizeof id, "in-%07llu", static_cast<unsigned long long>(inbound_counter_++));
  en.channel->deliver({id, en.conv.id, en.conv.scammer_profile_id, text, at});
  for (const auto& msg : en.channel->poll_messages(Timestamp::min())) {
    auto it = by_conversation_.find(msg.conversation_id);
    if (it == by_conversation_.end()) continue;
    auto& target = engagements_[it->second];
    if (target.conv.state == ConversationState::ended) continue;
    target.conv.add_scammer_turn(msg.text, msg.received_at);
    log_event(msg.received_at, EventKind::direct_message_in, target.conv.scammer_profile_id, {}, target.conv.id,
              target.conv.channel, msg.text);
    // The persona answers after a short pause.
    Rng rng(derive_seed(target.conv.persona.seed, "think", target.conv.turns.size()));
    schedule_wake(it->second, msg.received_at + Millis{rng.between(60, 300) * 1000});
  }
}

SimulationReport Simulator::run() {
  validate_config(cfg_);
  SimulationReport report;
  const std::uint64_t seed = cfg_.seed;
  const Timestamp start = cfg_.start_time();

  // Honeyposts.
  auto contexts = cfg_.posts.contexts.empty() ? all_recovery_contexts() : cfg_.posts.contexts;
  std::vector<HoneyPost> posts;
  for (std::size_t c = 0; c < contexts.size(); ++c) {
    for (int k = 0; k < cfg_.posts.posts_per_context; ++k) {
      posts.push_back(generate_post(contexts[c], derive_seed(seed, "post", c * 100000 + static_cast<std::size_t>(k))));
    }
  }
  // Interleave contexts in posting order.
  Rng order_rng(derive_seed(seed, "post-order"));
  for (std::size_t k = posts.size(); k > 1; --k) std::swap(posts[k - 1], posts[order_rng.below(k)]);
  PostSchedule schedule = schedule_posts(std::move(posts), start, cfg_.posts.interval);
  report.posts = schedule.posts.size();
  for (const auto& p : schedule.posts) {
    const std::string honey = p.context.kind == RecoveryKind::crypto_wallet ? "honey_crypto" : "honey_social";
    log_event(p.scheduled_at, EventKind::system, honey, p.id, std::nullopt, ChannelKind::x, p.text);
  }

  // Population.
  std::vector<SimScammerScript> scripts =
      make_population(cfg_.simulation.population, derive_seed(seed, "population"), cfg_.simulation.mix,
                      cfg_.simulation.channels);
  for (const auto& s : cfg_.simulation.scripts) scripts.push_back(s);

  struct Respondent {
    ScamProfile profile;
    std::vector<InteractionEvent> events;
    const SimScammerScript* script = nullptr;
    const HoneyPost* post = nullptr;
  };
  std::vector<Respondent> respondents;
  struct Pending {
    Timestamp at;
    EventKind kind;
    std::size_t respondent;  // npos for non-text viewers
    std::string profile;
    const HoneyPost* post;
    std::optional<std::string> text;
  };
  std::vector<Pending> pending;
  auto pick_post = [&](Rng& rng) -> const HoneyPost* {
    if (schedule.posts.empty()) return nullptr;
    return &schedule.posts[rng.below(schedule.posts.size())];
  };
  auto reply_time = [&](Rng& rng, const HoneyPost* post) {
    return post->scheduled_at + Millis{std::llround(rng.exponential_with_median(30.0 * 60 * 1000)) + 1000};
  };

  if (!schedule.posts.empty()) {
    for (const auto& s : scripts) {
      Rng rng(derive_seed(s.seed, "respond"));
      Respondent r;
      r.script = &s;
      r.post = pick_post(rng);
      r.profile.profile_id = s.handle.empty() ? s.id : s.handle;
      r.profile.handle = r.profile.profile_id;
      r.profile.display_name = capitalize(s.role_title);
      r.profile.description = "Helping people recover their accounts. DM for help.";
      pending.push_back({reply_time(rng, r.post), EventKind::reply, respondents.size(), r.profile.profile_id, r.post,
                         respondent_reply(s, rng)});
      respondents.push_back(std::move(r));
    }

    const int pop = cfg_.simulation.population;
    auto count_or = [](int v, int def) { return v >= 0 ? v : def; };
    const int n_verified = count_or(cfg_.simulation.verified_respondents, pop / 10);
    const int n_official = count_or(cfg_.simulation.official_respondents, pop / 10);
    const int n_benign = count_or(cfg_.simulation.benign_respondents, pop / 5);
    const int n_viewers = count_or(cfg_.simulation.non_text_interactions, pop);

    std::vector<std::string> officials(Allowlists::builtin().official_wallets.begin(),
                                       Allowlists::builtin().official_wallets.end());
    for (const auto& h : Allowlists::builtin().official_social) officials.push_back(h);
    Rng extra(derive_seed(seed, "respondents"));
    for (int k = 0; k < n_verified + n_official + n_benign; ++k) {
      Respondent r;
      r.post = pick_post(extra);
      std::string text;
      if (k < n_verified) {
        r.profile.profile_id = "verified_helper_" + std::to_string(k);
        r.profile.verified = true;
        text = "Hi, this is the official support team. Please follow the steps at https://help.example.com/recover";
      } else if (k < n_verified + n_official) {
        r.profile.profile_id = officials[extra.below(officials.size())];
        text = "We're sorry for the trouble. Please use the in-app help center to recover your account.";
      } else {
        r.profile.profile_id = "neighbor_" + std::to_string(k);
        text = std::string(kBenignReplies[extra.below(std::size(kBenignReplies))]);
      }
      // Official handles may repeat; keep one respondent per handle.
      const bool dup = std::any_of(respondents.begin(), respondents.end(),
                                   [&](const Respondent& o) { return o.profile.profile_id == r.profile.profile_id; });
      if (dup) continue;
      r.profile.handle = r.profile.profile_id;
      r.profile.display_name = r.profile.profile_id;
      pending.push_back({reply_time(extra, r.post), EventKind::reply, respondents.size(), r.profile.profile_id, r.post,
                         std::move(text)});
      respondents.push_back(std::move(r));
    }
    static constexpr EventKind kNonText[] = {EventKind::like, EventKind::retweet, EventKind::bookmark,
                                             EventKind::impression};
    for (int k = 0; k < n_viewers; ++k) {
      const HoneyPost* post = pick_post(extra);
      pending.push_back({reply_time(extra, post), kNonText[extra.below(std::size(kNonText))], std::string::npos,
                         "viewer_" + std::to_string(extra.below(static_cast<std::uint64_t>(std::max(1, n_viewers)))),
                         post, std::nullopt});
    }
  }
  std::stable_sort(pending.begin(), pending.end(), [](const Pending& a, const Pending& b) { return a.at < b.at; });
  for (const auto& p : pending) {
    log_event(p.at, p.kind, p.profile, p.post->id, std::nullopt, ChannelKind::x, p.text);
    if (p.respondent != std::string::npos) respondents[p.respondent].events.push_back(log_.events().back());
  }
  report.respondents = respondents.size();

  // Filtration, then engagement for candidates only.
  base_provider_ = std::make_unique<ScriptedChatProvider>();
  if (cfg_.provider.kind == "http") {
    base_provider_ = std::make_unique<HttpChatProvider>(
        HttpProviderConfig{cfg_.provider.url, cfg_.provider.api_key, cfg_.provider.timeout});
  }
  provider_ = std::make_unique<RetryingProvider>(*base_provider_, cfg_.provider.attempts, Millis{500},
                                                 [](Millis) {});  // simulated time: no real sleeping

  for (ChannelKind k : {ChannelKind::x, ChannelKind::instagram, ChannelKind::email, ChannelKind::simulated}) {
    for (int a = 0; a < cfg_.accounts_per_channel; ++a) {
      accounts_[k].push_back(std::make_unique<SimulatedChannel>(
          "persona_" + std::string(to_string(k)) + "_" + std::to_string(a + 1), k, clock_, cfg_.rate_limit(k)));
    }
  }

  const Allowlists& allow = Allowlists::builtin();
  std::map<ChannelKind, std::size_t> account_rr;
  engagements_.reserve(respondents.size());
  for (auto& r : respondents) {
    if (r.events.empty()) continue;
    ingest_profile(r.profile, r.events, allow);
    ++report.classifications[r.profile.classification];
    log_event(r.events.back().ts, EventKind::system, r.profile.profile_id, {}, std::nullopt, ChannelKind::x,
              "classification: " + std::string(to_string(r.profile.classification)));
    if (r.profile.classification != Classification::scam_candidate || !r.script) continue;

    const ChannelKind ch = r.script->channel;
    const bool reachable = std::any_of(r.profile.channels.begin(), r.profile.channels.end(),
                                       [&](const ContactChannel& c) { return c.kind == contact_for(ch); });
    if (!reachable) {
      ++report.not_engaged_unsupported;
      continue;
    }
    Engagement en;
    en.script = r.script;
    const std::size_t idx = engagements_.size();
    Rng prng(derive_seed(seed, "persona-variant", idx));
    PersonaVariant variant = r.post->context.kind == RecoveryKind::social_media ? PersonaVariant::social_lockout
                                                                                 : PersonaVariant::crypto_newcomer;
    if (variant == PersonaVariant::crypto_newcomer && prng.bernoulli(cfg_.personas.language_negotiator)) {
      variant = PersonaVariant::language_negotiator;
    }
    en.conv.id = "cv-" + r.script->id;
    en.conv.scammer_profile_id = r.profile.profile_id;
    en.conv.channel = ch;
    en.conv.persona = build_persona(r.post->context, variant, derive_seed(seed, "persona", idx));
    en.conv.persona.max_message_length = cfg_.personas.max_message_length;
    auto& pool = accounts_[ch];
    en.channel = pool[account_rr[ch]++ % pool.size()].get();
    by_conversation_[en.conv.id] = idx;
    engagements_.push_back(std::move(en));
    schedule_wake(idx, r.events.front().ts + 2 * kMinute);
  }
  report.engaged = engagements_.size();

  // Discrete-event loop.
  const Timestamp horizon = start + cfg_.simulation.horizon;
  while (!queue_.empty()) {
    QueueItem item = queue_.top();
    queue_.pop();
    if (item.at > horizon) break;
    if (item.at > clock_.now()) clock_.set(item.at);
    if (item.type == QueueItem::persona_wake) {
      if (item.gen != engagements_[item.conv].wake_gen) continue;
      persona_wake(item.conv, item.at);
    } else {
      scammer_deliver(item.conv, item.at, item.text);
    }
  }

  for (const auto& en : engagements_) {
    const Conversation& c = en.conv;
    ConversationSummary s;
    s.id = c.id;
    s.profile_id = c.scammer_profile_id;
    s.channel = c.channel;
    s.variant = c.persona.variant;
    s.state = c.state;
    s.end_reason = c.end_reason;
    s.system_turns = c.count(Author::system);
    s.scammer_turns = c.count(Author::scammer);
    s.failure_claims = c.failure_claims_made;
    s.collected = c.collected;
    s.language = c.language.value_or("");
    report.payment_profiles += c.collected.size();
    report.conversations.push_back(std::move(s));
  }
  report.analytics = compute_report(log_.events());
  return report;
}

}  // namespace

SimulationReport run_simulation(const CampaignConfig& config, EventLog& log) {
  Simulator sim(config, log);
  return sim.run();
}

std::string simulation_report_to_json(const SimulationReport& r) {
  using ojson = nlohmann::ordered_json;
  ojson j;
  j["posts"] = r.posts;
  j["respondents"] = r.respondents;
  ojson cls = ojson::object();
  for (const auto& [c, n] : r.classifications) cls[std::string(to_string(c))] = n;
  j["classifications"] = cls;
  j["engaged"] = r.engaged;
  j["not_engaged_unsupported"] = r.not_engaged_unsupported;
  j["payment_profiles"] = r.payment_profiles;
  ojson convs = ojson::array();
  for (const auto& c : r.conversations) {
    ojson profiles = ojson::array();
    for (const auto& p : c.collected) {
      ojson pj = {{"kind", std::string(to_string(p.kind))},
                  {"identifier", p.identifier},
                  {"validity", std::string(to_string(p.validity))},
                  {"ff", p.ff_flag},
                  {"source_turn", p.source_turn}};
      if (p.amount) pj["amount"] = p.amount->to_string();
      profiles.push_back(std::move(pj));
    }
    convs.push_back({{"id", c.id},
                     {"profile_id", c.profile_id},
                     {"channel", std::string(to_string(c.channel))},
                     {"persona", std::string(to_string(c.variant))},
                     {"state", std::string(to_string(c.state))},
                     {"end_reason", c.end_reason ? ojson(std::string(to_string(*c.end_reason))) : ojson(nullptr)},
                     {"system_turns", c.system_turns},
                     {"scammer_turns", c.scammer_turns},
                     {"failure_claims", c.failure_claims},
                     {"language", c.language},
                     {"collected", std::move(profiles)}});
  }
  j["conversations"] = std::move(convs);
  j["analytics"] = ojson::parse(report_to_json(r.analytics));
  return j.dump(2, ' ', false, ojson::error_handler_t::replace) + "\n";
}

}  // namespace scambait
