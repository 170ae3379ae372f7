#include <benchmark/benchmark.h>

#include "cnz/cluster.hpp"
#include "cnz/geometry.hpp"
#include "cnz/jacobian.hpp"
#include "cnz/network.hpp"
#include "cnz/tropical.hpp"

using namespace cnz;

namespace {

MutationSequence main_theorem_loop() {
  ExchangeMatrix B = validate_exchange_matrix(IMat{{0, -1, 2, 2, -1},
                                                   {1, 0, -3, 0, 2},
                                                   {-2, 3, 0, -3, 2},
                                                   {-2, 0, 3, 0, -1},
                                                   {1, -2, -2, 1, 0}});
  Permutation p = Permutation::from_cycles("(5 4 3 2 1)", 5);
  return make_sequence(B, {1, 1, 1}, {p, p, p});
}

void BM_matrix_mutate(benchmark::State& state) {
  ExchangeMatrix B = main_theorem_loop().B;
  for (auto _ : state) benchmark::DoNotOptimize(matrix_mutate(B, 1));
}
BENCHMARK(BM_matrix_mutate);

void BM_symbolic_trajectory_T3(benchmark::State& state) {
  MutationSequence gamma = main_theorem_loop();
  for (auto _ : state) benchmark::DoNotOptimize(run_sequence(gamma, true));
}
BENCHMARK(BM_symbolic_trajectory_T3);

void BM_c_matrix_run(benchmark::State& state) {
  ExchangeMatrix B = main_theorem_loop().B;
  std::vector<int> m;
  for (int i = 0; i < 12; ++i) m.push_back(i % 5 + 1);
  MutationSequence gamma = make_sequence(B, m);
  for (auto _ : state) benchmark::DoNotOptimize(c_matrix_run(gamma));
}
BENCHMARK(BM_c_matrix_run);

void BM_build_network(benchmark::State& state) {
  MutationSequence gamma = main_theorem_loop();
  for (auto _ : state) benchmark::DoNotOptimize(build_network(gamma));
}
BENCHMARK(BM_build_network);

void BM_tau_T3(benchmark::State& state) {
  MutationSequence gamma = main_theorem_loop();
  for (auto _ : state) benchmark::DoNotOptimize(tau(gamma));
}
BENCHMARK(BM_tau_T3);

void BM_verify_det_modular(benchmark::State& state) {
  MutationSequence gamma = main_theorem_loop();
  for (auto _ : state)
    benchmark::DoNotOptimize(verify_det_formula(gamma, VerifyMode::modular, 4, 7));
}
BENCHMARK(BM_verify_det_modular);

void BM_gluing_figure_eight(benchmark::State& state) {
  ExchangeMatrix B = validate_exchange_matrix(IMat{{0, 2, -2}, {-2, 0, 2}, {2, -2, 0}});
  MutationSequence gamma = make_sequence(
      B, {2, 1}, {Permutation::identity(3), Permutation::from_cycles("(3 2 1)", 3)});
  GluingSystem sys = gluing_system(gamma);
  for (auto _ : state)
    benchmark::DoNotOptimize(solve_gluing_complex(sys, {{0.5, 0.8}, {0.5, 0.8}}, 1e-12, 100));
}
BENCHMARK(BM_gluing_figure_eight);

}  // namespace

BENCHMARK_MAIN();
