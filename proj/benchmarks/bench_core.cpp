#include <benchmark/benchmark.h>

#include "gadgetlab/corpus.hpp"
#include "gadgetlab/ef_solver.hpp"
#include "gadgetlab/formula.hpp"
#include "gadgetlab/gadget.hpp"
#include "gadgetlab/sequences.hpp"
#include "gadgetlab/stone_pairing.hpp"
#include "gadgetlab/type_partition.hpp"

using namespace gadgetlab;

namespace {

SequenceSpec spec(std::string family, std::map<std::string, double> params = {},
                  std::map<std::string, std::string> options = {}, std::uint64_t seed = 0) {
  SequenceSpec s;
  s.family = std::move(family);
  s.params = std::move(params);
  s.options = std::move(options);
  s.seed = seed;
  return s;
}

void BM_EfLinearOrders(benchmark::State& state) {
  auto k = static_cast<std::size_t>(state.range(0));
  auto a = linear_order((std::size_t{1} << k) - 1);
  auto b = linear_order(std::size_t{1} << k);
  for (auto _ : state) benchmark::DoNotOptimize(duplicator_wins(a, {}, b, {}, k));
}
BENCHMARK(BM_EfLinearOrders)->DenseRange(1, 4);

void BM_EfCycles(benchmark::State& state) {
  auto n = static_cast<std::size_t>(state.range(0));
  auto a = directed_cycles({n});
  auto b = directed_cycles({n / 2, n - n / 2});
  for (auto _ : state) benchmark::DoNotOptimize(duplicator_wins(a, {}, b, {}, 3));
}
BENCHMARK(BM_EfCycles)->Arg(8)->Arg(12)->Arg(16);

void BM_TypePartition(benchmark::State& state) {
  auto s = generate(spec("random-hypergraph", {{"p", 0.3}}, {{"symmetric", "true"}}, 3),
                    static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(rank_k_type_partition(s, 2, 1).type_count);
}
BENCHMARK(BM_TypePartition)->Arg(10)->Arg(20)->Arg(40);

void BM_PairingExact(benchmark::State& state) {
  auto s = generate(spec("random-hypergraph", {{"p", 0.2}}, {{"symmetric", "true"}}, 5),
                    static_cast<std::size_t>(state.range(0)));
  auto f = parse_formula("exists z. (E(x,z) and E(z,y))");
  for (auto _ : state) benchmark::DoNotOptimize(stone_pairing_exact(s, f));
}
BENCHMARK(BM_PairingExact)->Arg(50)->Arg(100)->Arg(200);

void BM_PairingSampled(benchmark::State& state) {
  auto s = generate(spec("random-hypergraph", {{"p", 0.2}}, {{"symmetric", "true"}}, 5), 500);
  auto f = parse_formula("exists z. (E(x,z) and E(z,y))");
  auto samples = static_cast<std::uint64_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(stone_pairing_sampled(s, f, samples, 1).estimate);
}
BENCHMARK(BM_PairingSampled)->Arg(1000)->Arg(10000);

void BM_GadgetConstruct(benchmark::State& state) {
  auto a = generate(spec("random-hypergraph", {{"p", 0.1}}, {{"symmetric", "true"}}, 7),
                    static_cast<std::size_t>(state.range(0)));
  auto renamed = Structure(Language({{"R", 2}}), a.size(), a.relations());
  auto g = path_gadget(4);
  for (auto _ : state) benchmark::DoNotOptimize(gadget_construct(renamed, "R", g).result.size());
}
BENCHMARK(BM_GadgetConstruct)->Arg(100)->Arg(400);

}  // namespace

BENCHMARK_MAIN();
