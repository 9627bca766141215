#include <benchmark/benchmark.h>

#include <graphflow/assembly.hpp>
#include <graphflow/geometry.hpp>
#include <graphflow/scheme.hpp>

using namespace graphflow;

namespace {

std::shared_ptr<const FeSpace> disk_space(int level) {
  return std::make_shared<const FeSpace>(std::make_shared<const Mesh>(generate_disk_mesh(level)));
}

State prepared_state(const std::shared_ptr<const FeSpace>& space, const ProblemSpec& p, SchemeConfig& config) {
  config.tau = space->mesh().h_max * space->mesh().h_max;
  config.final_time = 1.0;
  return initial_state(space, p, config);
}

}  // namespace

static void BM_DiskMesh(benchmark::State& st) {
  for (auto _ : st) benchmark::DoNotOptimize(generate_disk_mesh(static_cast<int>(st.range(0))));
}
BENCHMARK(BM_DiskMesh)->DenseRange(2, 4)->Unit(benchmark::kMillisecond);

static void BM_AssembleAnisotropicStiffness(benchmark::State& st) {
  const auto space = disk_space(static_cast<int>(st.range(0)));
  const FeFunction u = FeFunction::interpolate(space, [](const Vec2& x) { return 1.0 - x.squaredNorm(); });
  for (auto _ : st) {
    benchmark::DoNotOptimize(
        assemble_weighted_stiffness(*space, [&](const QuadraturePoint& qp) { return e_matrix(u.gradient(qp.element)); }));
  }
  st.counters["dofs"] = space->num_dofs();
}
BENCHMARK(BM_AssembleAnisotropicStiffness)->DenseRange(2, 4)->Unit(benchmark::kMillisecond);

static void BM_GraphSolve(benchmark::State& st) {
  const auto space = disk_space(static_cast<int>(st.range(0)));
  const ProblemSpec p = example2();
  SchemeConfig config;
  const State s = prepared_state(space, p, config);
  const LinearSystem sys = graph_system(s, p, config);
  SolveStats stats;
  for (auto _ : st) benchmark::DoNotOptimize(solve(sys, config.solver_tolerance, &stats));
  st.counters["cg_iterations"] = static_cast<double>(stats.iterations);
}
BENCHMARK(BM_GraphSolve)->DenseRange(2, 4)->Unit(benchmark::kMillisecond);

static void BM_TimeStep(benchmark::State& st) {
  const auto space = disk_space(static_cast<int>(st.range(0)));
  const ProblemSpec p = example1();
  SchemeConfig config;
  const State s = prepared_state(space, p, config);
  for (auto _ : st) {
    const FeFunction u_new = graph_step(s, p, config);
    benchmark::DoNotOptimize(surface_step(s, u_new, p, config));
  }
}
BENCHMARK(BM_TimeStep)->DenseRange(2, 4)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
