// Command line front end: posts, simulate, engage, report, export, qualprompts.
#include <filesystem>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>
#include <json.hpp>

#include "scambait/analytics.hpp"
#include "scambait/channels.hpp"
#include "scambait/config.hpp"
#include "scambait/disclosure.hpp"
#include "scambait/event_log.hpp"
#include "scambait/honeypost.hpp"
#include "scambait/report.hpp"
#include "scambait/simulation.hpp"

namespace fs = std::filesystem;
using namespace scambait;

namespace {

constexpr int kOk = 0;
constexpr int kConfigError = 2;
constexpr int kRuntimeError = 3;

struct Options {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::string log;
  std::string out = ".";
  std::string channel = "simulated";
};

CampaignConfig load(const Options& o) {
  CampaignConfig c = o.config.empty() ? CampaignConfig{} : load_config(o.config);
  if (o.seed) c.seed = *o.seed;
  apply_env_overrides(c);
  validate_config(c);
  return c;
}

void write_text(const fs::path& p, const std::string& s) {
  if (p.has_parent_path()) fs::create_directories(p.parent_path());
  std::ofstream out(p, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write " + p.string());
  out << s;
}

std::vector<InteractionEvent> read_log(const Options& o) {
  if (o.log.empty()) throw std::runtime_error("--log is required");
  return read_event_log(o.log);
}

int cmd_posts(const Options& o) {
  const CampaignConfig c = load(o);
  auto contexts = c.posts.contexts.empty() ? all_recovery_contexts() : c.posts.contexts;
  std::vector<HoneyPost> posts;
  for (std::size_t i = 0; i < contexts.size(); ++i) {
    for (int k = 0; k < c.posts.posts_per_context; ++k) {
      posts.push_back(generate_post(contexts[i], derive_seed(c.seed, "post", i * 100000 + static_cast<std::size_t>(k))));
    }
  }
  const PostSchedule schedule = schedule_posts(std::move(posts), c.start_time(), c.posts.interval);
  int violations = 0;
  std::string jsonl;
  for (const auto& p : schedule.posts) {
    const auto v = validate_post(p.text);
    violations += static_cast<int>(v.size());
    nlohmann::ordered_json j = {{"id", p.id},
                                {"kind", std::string(to_string(p.context.kind))},
                                {"target", p.context.target},
                                {"scheduled_at", format_iso8601(p.scheduled_at)},
                                {"text", p.text},
                                {"violations", v}};
    jsonl += j.dump() + "\n";
  }
  write_text(fs::path(o.out) / "posts.jsonl", jsonl);
  std::cout << schedule.posts.size() << " posts written to " << (fs::path(o.out) / "posts.jsonl").string() << ", "
            << violations << " violations\n";
  return violations == 0 ? kOk : kRuntimeError;
}

int cmd_simulate(const Options& o) {
  const CampaignConfig c = load(o);
  const fs::path log_path = o.log.empty() ? fs::path(o.out) / "events.jsonl" : fs::path(o.log);
  if (log_path.has_parent_path()) fs::create_directories(log_path.parent_path());
  fs::remove(log_path);  // a simulation always starts a fresh log
  EventLog log = EventLog::open(log_path);
  const SimulationReport r = run_simulation(c, log);
  write_text(fs::path(o.out) / "report.json", simulation_report_to_json(r));
  write_text(fs::path(o.out) / "report.txt", report_to_text(r.analytics));
  std::cout << "posts " << r.posts << ", respondents " << r.respondents << ", engaged " << r.engaged
            << ", payment profiles " << r.payment_profiles << "\n"
            << "log: " << log_path.string() << "\nreport: " << (fs::path(o.out) / "report.json").string() << "\n";
  return kOk;
}

// Real platforms are not wired in; the simulated channel runs an interactive
// session where each stdin line is a scammer message.
int cmd_engage(const Options& o) {
  const CampaignConfig c = load(o);
  const ChannelKind kind = parse_channel_kind(o.channel);
  if (kind != ChannelKind::simulated) {
    PlatformStubAdapter adapter(kind, "persona_" + o.channel + "_1");
    adapter.send_message("probe", "Hello");  // throws channel_unavailable
    return kOk;
  }
  ScriptedChatProvider scripted;
  std::unique_ptr<ChatProvider> http;
  ChatProvider* provider = &scripted;
  if (c.provider.kind == "http") {
    http = std::make_unique<HttpChatProvider>(HttpProviderConfig{c.provider.url, c.provider.api_key, c.provider.timeout});
    provider = http.get();
  }
  RetryingProvider retrying(*provider, c.provider.attempts);
  Conversation conv;
  conv.id = "cv-interactive";
  conv.scammer_profile_id = "stdin";
  conv.persona = build_persona({RecoveryKind::crypto_wallet, "Trust Wallet"}, PersonaVariant::crypto_newcomer, c.seed);
  Timestamp now = c.start_time();
  auto step = [&] {
    const Decision d = next_reply(conv, retrying, now, c.engine);
    if (auto t = outbound_text(d)) std::cout << "persona> " << *t << std::endl;
  };
  step();
  std::string line;
  while (conv.state != ConversationState::ended && std::getline(std::cin, line)) {
    if (line.empty()) continue;
    now += kMinute;
    conv.add_scammer_turn(line, now);
    step();
  }
  if (conv.end_reason) std::cout << "ended: " << to_string(*conv.end_reason) << "\n";
  for (const auto& p : conv.collected) {
    std::cout << "collected: " << to_string(p.kind) << " " << p.identifier << " (" << to_string(p.validity) << ")\n";
  }
  return kOk;
}

int cmd_report(const Options& o) {
  const AnalyticsReport r = compute_report(read_log(o));
  write_text(fs::path(o.out) / "report.json", report_to_json(r));
  std::cout << report_to_text(r);
  return kOk;
}

int cmd_export(const Options& o) {
  export_disclosure(read_log(o), o.out);
  std::cout << "wrote profiles.tsv, payment_emails.tsv, crypto_addresses.tsv to " << o.out << "\n";
  return kOk;
}

int cmd_qualprompts(const Options& o) {
  const auto events = read_log(o);
  const Questionnaire& q = Questionnaire::builtin();
  std::string out;
  std::size_t n = 0;
  for (const auto& t : transcripts_from_events(events)) {
    if (t.turns.empty()) continue;
    const QualPrompt p = build_qualitative_prompt(t, q);
    const std::string answers = heuristic_answers(t, q);
    nlohmann::ordered_json j = {{"conversation_id", t.conversation_id}, {"prompt", p.text}, {"heuristic_answers", answers}};
    out += j.dump(-1, ' ', false, nlohmann::json::error_handler_t::replace) + "\n";
    ++n;
  }
  write_text(fs::path(o.out) / "qualprompts.jsonl", out);
  std::cout << n << " prompts written to " << (fs::path(o.out) / "qualprompts.jsonl").string() << "\n";
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"scambait: honeypost scam-baiting campaigns and their analytics"};
  app.require_subcommand(1);
  Options o;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", o.config, "Campaign config (JSON)")->check(CLI::ExistingFile);
    sub->add_option("--seed", o.seed, "Override the config seed");
    sub->add_option("--log", o.log, "Event log (JSON lines)");
    sub->add_option("--out", o.out, "Output directory");
    sub->add_option("--channel", o.channel, "x, instagram, email or simulated")
        ->check(CLI::IsMember({"x", "instagram", "email", "simulated"}));
  };
  struct Verb {
    const char* name;
    const char* help;
    int (*fn)(const Options&);
  };
  const Verb verbs[] = {
      {"posts", "Generate and validate honeyposts", cmd_posts},
      {"simulate", "Run the end-to-end simulation", cmd_simulate},
      {"engage", "Run the engagement loop on a channel", cmd_engage},
      {"report", "Compute analytics from a log", cmd_report},
      {"export", "Write disclosure files from a log", cmd_export},
      {"qualprompts", "Emit questionnaire prompts for each conversation", cmd_qualprompts},
  };
  int (*chosen)(const Options&) = nullptr;
  for (const auto& v : verbs) {
    CLI::App* sub = app.add_subcommand(v.name, v.help);
    add_common(sub);
    sub->callback([&chosen, fn = v.fn] { chosen = fn; });
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kConfigError;
  }
  try {
    return chosen(o);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kConfigError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kRuntimeError;
  }
}
