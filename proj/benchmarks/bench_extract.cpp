#include <benchmark/benchmark.h>

#include "scambait/ingest.hpp"
#include "scambait/payextract.hpp"

using namespace scambait;

namespace {

constexpr const char* kTurn =
    "Okay the fee is $150. Send it via PayPal friends and family to fix.desk@gmail.com or "
    "btc 3J98t1WpEZ73CNmQviecrnyiWrnqRhWNLy, then text me on WhatsApp +1 415 555 0132.";

void BM_ExtractPaymentProfiles(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(extract_payment_profiles(kTurn, 3));
}
BENCHMARK(BM_ExtractPaymentProfiles);

void BM_ExtractChannels(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(extract_channels(kTurn, "desk"));
}
BENCHMARK(BM_ExtractChannels);

}  // namespace
