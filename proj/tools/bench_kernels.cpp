// Serial reference vs OpenMP kernels. Thread count is the benchmark argument.

#include <benchmark/benchmark.h>

#include "mosaic/constructions.hpp"
#include "mosaic/cover.hpp"
#include "mosaic/io.hpp"
#include "mosaic/search.hpp"
#include "mosaic/symmetry.hpp"

using namespace mosaic;

namespace {

SearchProblem problem(const char* name) {
  return io::parse_problem(io::read_file(std::string(MOSAIC_FIXTURE_DIR) + "/" + name));
}

const CoverProblem& cyclic13_cover() {
  static const CoverProblem p = [] {
    const SearchProblem s = problem("cyclic13.problem");
    return selection_problem(s, enumerate_column_orbits(s));
  }();
  return p;
}

const CoverProblem& homog9_cover() {
  static const CoverProblem p = [] {
    const SearchProblem s = problem("homog9.problem");
    return selection_problem(s, enumerate_column_orbits(s));
  }();
  return p;
}

const std::vector<Mosaic>& batch() {
  static const std::vector<Mosaic> b = [] {
    std::vector<Mosaic> out;
    for (auto& r : solve_selections(problem("homog9.problem"), {200, 1})) out.push_back(r.mosaic);
    return out;
  }();
  return b;
}

void BM_CoverSerial(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(solve_cover_serial(cyclic13_cover()));
}

void BM_CoverParallel(benchmark::State& state) {
  const int threads = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(solve_cover(cyclic13_cover(), {0, threads, 256}));
}

void BM_CoverLimitedSerial(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(solve_cover_serial(homog9_cover(), 2000));
}

void BM_CoverLimitedParallel(benchmark::State& state) {
  const int threads = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(solve_cover(homog9_cover(), {2000, threads, 256}));
}

void BM_CanonicalSerial(benchmark::State& state) {
  for (auto _ : state)
    for (const Mosaic& m : batch()) benchmark::DoNotOptimize(canonical_form(m));
}

void BM_CanonicalParallel(benchmark::State& state) {
  const int threads = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(canonical_forms(batch(), threads, false));
}

void BM_OrbitEnumeration(benchmark::State& state) {
  const SearchProblem s = problem("cyclic13.problem");
  for (auto _ : state) benchmark::DoNotOptimize(enumerate_column_orbits(s));
}

}  // namespace

BENCHMARK(BM_CoverSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_CoverParallel)->Arg(1)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_CoverLimitedSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_CoverLimitedParallel)->Arg(1)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_CanonicalSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_CanonicalParallel)->Arg(1)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_OrbitEnumeration)->Unit(benchmark::kMillisecond);

int main(int argc, char** argv) {
  // Build the shared inputs before any timing starts.
  cyclic13_cover();
  homog9_cover();
  batch();
  benchmark::Initialize(&argc, argv);
  if (benchmark::ReportUnrecognizedArguments(argc, argv)) return 1;
  benchmark::RunSpecifiedBenchmarks();
  benchmark::Shutdown();
  return 0;
}
