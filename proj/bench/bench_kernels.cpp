// Serial reference kernels against their OpenMP counterparts.

#include <benchmark/benchmark.h>

#include <random>

#include "bacforge/kernels.hpp"

using namespace bacforge;
using kernels::Exec;

namespace {

std::vector<FramedChunk> random_chunks(std::size_t n) {
  std::mt19937_64 rng(42);
  std::vector<FramedChunk> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) out.push_back(FramedChunk::make(i, static_cast<std::uint32_t>(rng())));
  return out;
}

std::string random_dna(std::size_t n) {
  std::mt19937_64 rng(7);
  std::string s(n, 'A');
  for (auto& c : s) c = "ACGT"[rng() % 4];
  return s;
}

std::vector<std::string> patterns() {
  return {"GAATTC", "AAGCTT", "GGATCC", "CTGCAG", "GTCGAC", "RCCGGY", "GATC", "CCWGG",
          "GCGGCCGC", "TCGA", "YGGCCR", "GANTC", "ACNNNNGT", "GGTACC", "CAGCTG", "TGATCA"};
}

template <Exec E>
void BM_EncodeBlocks(benchmark::State& state) {
  const auto chunks = random_chunks(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(kernels::encode_blocks(chunks, E));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

template <Exec E>
void BM_DecodeBlocks(benchmark::State& state) {
  const auto bases = kernels::encode_blocks(random_chunks(static_cast<std::size_t>(state.range(0))), Exec::Serial);
  for (auto _ : state) benchmark::DoNotOptimize(kernels::decode_blocks(bases, E));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

template <Exec E>
void BM_ScanPatterns(benchmark::State& state) {
  const auto seq = random_dna(static_cast<std::size_t>(state.range(0)));
  const auto pats = patterns();
  for (auto _ : state) benchmark::DoNotOptimize(kernels::scan_patterns(seq, pats, true, E));
  state.SetBytesProcessed(state.iterations() * state.range(0) * static_cast<std::int64_t>(pats.size()));
}

}  // namespace

BENCHMARK(BM_EncodeBlocks<Exec::Serial>)->Range(1 << 8, 1 << 16);
BENCHMARK(BM_EncodeBlocks<Exec::Parallel>)->Range(1 << 8, 1 << 16);
BENCHMARK(BM_DecodeBlocks<Exec::Serial>)->Range(1 << 8, 1 << 16);
BENCHMARK(BM_DecodeBlocks<Exec::Parallel>)->Range(1 << 8, 1 << 16);
BENCHMARK(BM_ScanPatterns<Exec::Serial>)->Range(1 << 12, 1 << 20);
BENCHMARK(BM_ScanPatterns<Exec::Parallel>)->Range(1 << 12, 1 << 20);

BENCHMARK_MAIN();
