#include <alesurf/assembly.hpp>
#include <alesurf/experiment.hpp>
#include <alesurf/lagrangian.hpp>
#include <alesurf/linear_solver.hpp>
#include <alesurf/mesh.hpp>
#include <alesurf/stepping.hpp>

#include <benchmark/benchmark.h>

namespace
{
	using namespace alesurf;

	void BM_AssembleMass(benchmark::State &state)
	{
		const OscillatingDumbbell surface;
		const SurfaceMesh mesh = build_initial_mesh(surface, static_cast<int>(state.range(0)));
		const Assembler assembler(mesh);
		for (auto _ : state)
			benchmark::DoNotOptimize(assembler.mass(mesh));
		state.counters["nodes"] = static_cast<double>(mesh.num_nodes());
	}
	BENCHMARK(BM_AssembleMass)->DenseRange(2, 4);

	void BM_AssembleStiffness(benchmark::State &state)
	{
		const OscillatingDumbbell surface;
		const SurfaceMesh mesh = build_initial_mesh(surface, static_cast<int>(state.range(0)));
		const Assembler assembler(mesh);
		for (auto _ : state)
			benchmark::DoNotOptimize(assembler.stiffness(mesh));
	}
	BENCHMARK(BM_AssembleStiffness)->DenseRange(2, 4);

	void BM_AssembleLoad(benchmark::State &state)
	{
		const OscillatingDumbbell surface;
		const SurfaceMesh mesh = build_initial_mesh(surface, static_cast<int>(state.range(0)));
		const Assembler assembler(mesh);
		const auto f = [&](const Vec3 &x, double t) {
			return manufactured_rhs(surface, project_to_surface(surface, x, t), t);
		};
		for (auto _ : state)
			benchmark::DoNotOptimize(assembler.load(mesh, f, 0.1));
	}
	BENCHMARK(BM_AssembleLoad)->DenseRange(2, 4);

	void BM_SolveBackwardEulerSystem(benchmark::State &state)
	{
		const OscillatingDumbbell surface;
		const SurfaceMesh mesh = build_initial_mesh(surface, static_cast<int>(state.range(0)));
		const Assembler assembler(mesh);
		const SparseMatrix op = add_scaled(assembler.mass(mesh), assembler.stiffness(mesh), 1.0, 0.01);
		const Eigen::VectorXd b = Eigen::VectorXd::Ones(op.rows());
		SolverOptions opts;
		opts.kind = state.range(1) == 0 ? SolverKind::Direct : SolverKind::GmresIlu;
		for (auto _ : state)
			benchmark::DoNotOptimize(solve(op, b, opts));
	}
	BENCHMARK(BM_SolveBackwardEulerSystem)->ArgsProduct({{3, 4}, {0, 1}});

	void BM_LagrangianRadauNodes(benchmark::State &state)
	{
		const OscillatingDumbbell surface;
		const SurfaceMesh mesh = build_initial_mesh(surface, 2, MotionMode::Lagrangian);
		const ButcherTableau tab = radau_iia(static_cast<int>(state.range(0)));
		for (auto _ : state)
			benchmark::DoNotOptimize(rk_node_stages(surface, mesh.nodes, 0.0, 0.01, tab));
	}
	BENCHMARK(BM_LagrangianRadauNodes)->DenseRange(1, 3);

	void BM_RunExperiment(benchmark::State &state)
	{
		ExperimentConfig config;
		config.method = state.range(0) == 0 ? "ie" : "radau5";
		config.refinement = 2;
		config.tau = 0.05;
		for (auto _ : state)
			benchmark::DoNotOptimize(run_experiment(config));
	}
	BENCHMARK(BM_RunExperiment)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
} // namespace
BENCHMARK_MAIN();
