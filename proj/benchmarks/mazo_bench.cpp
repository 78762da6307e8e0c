#include <benchmark/benchmark.h>

#include <random>

#include "mazo/actor.hpp"
#include "mazo/map.hpp"
#include "mazo/pairing.hpp"
#include "mazo/persist.hpp"

using namespace mazo;

static void BM_RngNext(benchmark::State& state) {
  auto s = derive_stream(Seed{1}, StreamLabel::Misc);
  for (auto _ : state) benchmark::DoNotOptimize(s.next_u64());
}
BENCHMARK(BM_RngNext);

static void BM_GenerateMap(benchmark::State& state) {
  std::uint64_t seed = 1;
  for (auto _ : state) benchmark::DoNotOptimize(generate_map(Seed{seed++}, RunConfig{}));
}
BENCHMARK(BM_GenerateMap);

static void BM_ChooseCombatAction(benchmark::State& state) {
  const auto& db = baseline_content();
  auto run = start_run(Seed{1}, RunConfig{}, db);
  run = enter_node(run, run.party.map.sector_entries[0][0], db);
  const auto& combat = std::get<scene::InCombat>(run.scene).combat;
  for (auto _ : state) benchmark::DoNotOptimize(choose_combat_action(combat, 0, db));
}
BENCHMARK(BM_ChooseCombatAction);

static void BM_PlayRun(benchmark::State& state) {
  const auto& db = baseline_content();
  const RunConfig cfg{3, static_cast<int>(state.range(0)), 6, 4};
  std::uint64_t seed = 1;
  for (auto _ : state) benchmark::DoNotOptimize(play_run(Seed{seed++}, cfg, db));
}
BENCHMARK(BM_PlayRun)->Arg(1)->Arg(2)->Unit(benchmark::kMillisecond);

static void BM_SaveLoad(benchmark::State& state) {
  const auto& db = baseline_content();
  RunState run;
  play_run(Seed{3}, RunConfig{3, 2, 6, 4}, db, {}, {}, &run);
  for (auto _ : state) benchmark::DoNotOptimize(load_run(save_run(run), db));
}
BENCHMARK(BM_SaveLoad)->Unit(benchmark::kMicrosecond);

static std::string payload(std::size_t n) {
  std::mt19937_64 g(9);
  std::string s;
  while (s.size() < n) s += "a=candidate:" + std::to_string(g() % 100000) + " udp ";
  s.resize(n);
  return s;
}

static void BM_PairingRoundTrip(benchmark::State& state) {
  const auto p = payload(static_cast<std::size_t>(state.range(0)));
  const bool compress = state.range(1) != 0;
  for (auto _ : state) {
    AssemblyState st;
    AbsorbResult r;
    for (const auto& f : encode_payload(p, compress)) {
      r = absorb(st, decode_frame(f));
      st = r.state;
    }
    benchmark::DoNotOptimize(r.payload);
  }
  state.SetBytesProcessed(static_cast<std::int64_t>(state.iterations()) * state.range(0));
}
BENCHMARK(BM_PairingRoundTrip)->Args({4096, 0})->Args({4096, 1})->Args({65536, 0})->Args({65536, 1});
BENCHMARK_MAIN();
