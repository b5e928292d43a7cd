#include <benchmark/benchmark.h>

#include "scambait/crypto_address.hpp"

using namespace scambait;

namespace {

void BM_ValidateBase58Check(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(validate_crypto_address("1A1zP1eP5QGefi2DMPTfTL5SLmv7DivfNa"));
}
BENCHMARK(BM_ValidateBase58Check);

void BM_ValidateBech32(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(validate_crypto_address("bc1qw508d6qejxtdg4y5r3zarvary0c5xw7kv8f3t4"));
  }
}
BENCHMARK(BM_ValidateBech32);

void BM_ValidateEip55(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(validate_crypto_address("0x5aAeb6053F3E94C9b9A09f33669435E7Ef1BeAed"));
  }
}
BENCHMARK(BM_ValidateEip55);

}  // namespace
