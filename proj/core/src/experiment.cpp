#include <alesurf/experiment.hpp>
#include <alesurf/assembly.hpp>
#include <alesurf/geometry.hpp>
#include <alesurf/lagrangian.hpp>
#include <alesurf/stepping.hpp>
#include <alesurf/time_schemes.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <deque>
#include <memory>
#include <sstream>

namespace alesurf
{
	std::string to_string(ExperimentMotion motion)
	{
		switch (motion)
		{
		case ExperimentMotion::Ale:
			return "ale";
		case ExperimentMotion::Lagrangian:
			return "lagrangian";
		case ExperimentMotion::StationarySphere:
			return "stationary_sphere";
		}
		return "unknown";
	}

	ExperimentMotion parse_motion(const std::string &name)
	{
		if (name == "ale")
			return ExperimentMotion::Ale;
		if (name == "lagrangian")
			return ExperimentMotion::Lagrangian;
		if (name == "stationary_sphere")
			return ExperimentMotion::StationarySphere;
		throw ConfigError("unknown motion '" + name + "' (expected ale, lagrangian, stationary_sphere)");
	}

	long step_count(const ExperimentConfig &config)
	{
		if (!(config.tau > 0.0) || !std::isfinite(config.tau))
			throw ConfigError("tau must be positive");
		if (!(config.t_end > 0.0) || !std::isfinite(config.t_end))
			throw ConfigError("t_end must be positive");
		const double ratio = config.t_end / config.tau;
		const long n = std::lround(ratio);
		if (n < 1 || std::abs(ratio - static_cast<double>(n)) > 1e-9 * std::max(1.0, ratio))
			throw ConfigError("t_end / tau = " + format_double(ratio) + " is not a whole number of steps");
		return n;
	}

	void validate(const ExperimentConfig &config)
	{
		const Integrator integ = make_integrator(config.method);
		const long n = step_count(config);
		if (config.refinement < 0 || config.refinement > max_refinement)
			throw ConfigError("refinement must lie in [0, " + std::to_string(max_refinement) + "]");
		if (!(config.solver_tol > 0.0))
			throw ConfigError("solver tolerance must be positive");
		if (!integ.is_runge_kutta() && n < integ.bdf().steps)
			throw ConfigError(config.method + " needs at least " + std::to_string(integ.bdf().steps) + " steps");
	}

	namespace
	{
		/// Mesh motion, matrices and load for one experiment.
		class Discretization
		{
		public:
			Discretization(const ExperimentConfig &config)
				: config_(config)
			{
				if (config.motion == ExperimentMotion::StationarySphere)
					surface_ = std::make_unique<UnitSphere>();
				else
					surface_ = std::make_unique<OscillatingDumbbell>();
				if (config.initial_data == InitialData::Zero)
					field_ = std::make_unique<ZeroField>();
				else
					field_ = std::make_unique<DecayingProduct>();

				MotionMode mode = MotionMode::ALE;
				if (config.motion == ExperimentMotion::Lagrangian)
					mode = MotionMode::Lagrangian;
				else if (config.motion == ExperimentMotion::StationarySphere)
					mode = MotionMode::Stationary;
				initial_ = build_initial_mesh(*surface_, config.refinement, mode);
				assembler_ = std::make_unique<Assembler>(initial_);

				if (mode == MotionMode::Stationary)
				{
					stationary_M_ = assembler_->mass(initial_);
					stationary_A_ = assembler_->stiffness(initial_);
				}
			}

			const LevelSetSurface &surface() const { return *surface_; }
			const SurfaceMesh &initial_mesh() const { return initial_; }
			const Assembler &assembler() const { return *assembler_; }
			bool lagrangian() const { return initial_.motion == MotionMode::Lagrangian; }

			double u(const Vec3 &x, double t) const { return field_->value(x, t); }

			/// Mesh at time t for motions with closed-form node positions.
			SurfaceMesh closed_form_mesh(double t) const
			{
				if (initial_.motion == MotionMode::ALE)
					return move_nodes_ale(*surface_, initial_, t);
				SurfaceMesh m = initial_;
				m.time = t;
				return m;
			}

			SurfaceMesh with_nodes(NodeSet nodes, double t) const
			{
				SurfaceMesh m = initial_;
				m.nodes = std::move(nodes);
				m.time = t;
				return m;
			}

			AssembledSystem system(const SurfaceMesh &mesh) const
			{
				AssembledSystem sys;
				sys.t = mesh.time;
				if (initial_.motion == MotionMode::Stationary)
				{
					sys.M = stationary_M_;
					sys.A = stationary_A_;
					sys.B = assembler_->zero();
				}
				else
				{
					sys.M = assembler_->mass(mesh);
					sys.A = assembler_->stiffness(mesh);
					if (initial_.motion == MotionMode::ALE)
					{
						std::vector<Vec3> w(mesh.num_nodes()), v(mesh.num_nodes());
						for (std::size_t i = 0; i < mesh.num_nodes(); ++i)
						{
							w[i] = surface_->ale_velocity(initial_.ref_nodes[i], mesh.time);
							v[i] = material_velocity(*surface_, mesh.nodes[i], mesh.time);
						}
						sys.B = assembler_->b_matrix(mesh, w, v);
					}
					else
						sys.B = assembler_->zero(); // nodes move with the material velocity
				}
				if (field_->is_zero())
					sys.load = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(mesh.num_nodes()));
				else
					sys.load = assembler_->load(mesh, [this](const Vec3 &x, double t) {
						return manufactured_rhs(*surface_, *field_, project_to_surface(*surface_, x, t), t);
					}, mesh.time);
				return sys;
			}

			SparseMatrix mass(const SurfaceMesh &mesh) const
			{
				if (initial_.motion == MotionMode::Stationary)
					return stationary_M_;
				return assembler_->mass(mesh);
			}

		private:
			const ExperimentConfig &config_;
			std::unique_ptr<LevelSetSurface> surface_;
			std::unique_ptr<ScalarField> field_;
			SurfaceMesh initial_;
			std::unique_ptr<Assembler> assembler_;
			SparseMatrix stationary_M_;
			SparseMatrix stationary_A_;
		};

		bool is_solver_error(const Error &e)
		{
			return dynamic_cast<const LinearSolveError *>(&e) != nullptr ||
				   dynamic_cast<const NodeSolveDiverged *>(&e) != nullptr ||
				   dynamic_cast<const NoConvergence *>(&e) != nullptr;
		}

		/// Stage meshes of one Runge-Kutta step from `mesh` at t_n.
		std::vector<SurfaceMesh> rk_stage_meshes(const Discretization &disc, const SurfaceMesh &mesh, double t_n,
												 double tau, const ButcherTableau &tab)
		{
			std::vector<SurfaceMesh> meshes;
			meshes.reserve(tab.stages);
			if (disc.lagrangian())
			{
				std::vector<NodeSet> stages = rk_node_stages(disc.surface(), mesh.nodes, t_n, tau, tab);
				for (int i = 0; i < tab.stages; ++i)
					meshes.push_back(disc.with_nodes(std::move(stages[i]), t_n + tab.c[i] * tau));
			}
			else
				for (int i = 0; i < tab.stages; ++i)
					meshes.push_back(disc.closed_form_mesh(t_n + tab.c[i] * tau));
			return meshes;
		}

		SteppingState rk_advance(const Discretization &disc, SteppingState state, SurfaceMesh &mesh,
								 const ButcherTableau &tab, double tau, const SolverOptions &opts)
		{
			const std::vector<SurfaceMesh> stages = rk_stage_meshes(disc, mesh, state.time(), tau, tab);
			state = irk_step(std::move(state), [&](double, int i) { return disc.system(stages[i]); }, tab, tau, opts);
			mesh = stages.back();
			mesh.time = state.time();
			return state;
		}

		/// Runge-Kutta substeps for Lagrangian BDF start-up nodes.
		int startup_substeps(double tau) { return std::max(20, static_cast<int>(std::ceil(tau / 1e-4))); }
	} // namespace

	ErrorReport run_experiment(const ExperimentConfig &config, const StepObserver &observer)
	{
		validate(config);
		const auto wall_start = std::chrono::steady_clock::now();

		const Integrator integ = make_integrator(config.method);
		const long n_steps = step_count(config);
		const double tau = config.tau;
		SolverOptions opts;
		opts.rel_tol = config.solver_tol;

		const Discretization disc(config);
		const LevelSetSurface &surface = disc.surface();
		auto u = [&disc](const Vec3 &x, double t) { return disc.u(x, t); };

		SurfaceMesh mesh = disc.initial_mesh();
		double drift = max_node_residual(surface, mesh);
		SteppingState state(tau);
		state.push({0.0, interpolate(mesh, u, 0.0), disc.mass(mesh)}, 1);
		if (observer)
			observer(0, 0.0, state.current(), state.current_mass());

		long step = 0;
		try
		{
			if (integ.is_runge_kutta())
			{
				for (step = 1; step <= n_steps; ++step)
				{
					state = rk_advance(disc, std::move(state), mesh, integ.tableau(), tau, opts);
					drift = std::max(drift, max_node_residual(surface, mesh));
					if (observer)
						observer(step, state.time(), state.current(), state.current_mass());
				}
			}
			else
			{
				const BdfScheme &bdf = integ.bdf();
				const int k = bdf.steps;
				std::deque<NodeSet> node_history{mesh.nodes};

				// Starting values at t_1 .. t_{k-1}.
				if (config.bdf_start == BdfStart::RadauBootstrap)
				{
					const ButcherTableau radau = radau_iia(3);
					SteppingState boot = state;
					for (step = 1; step < k; ++step)
					{
						boot = rk_advance(disc, std::move(boot), mesh, radau, tau, opts);
						state.push(boot.history().front(), k);
						node_history.push_front(mesh.nodes);
						drift = std::max(drift, max_node_residual(surface, mesh));
						if (observer)
							observer(step, state.time(), state.current(), state.current_mass());
					}
				}
				else
				{
					for (step = 1; step < k; ++step)
					{
						const double t = step * tau;
						if (disc.lagrangian())
							mesh = disc.with_nodes(integrate_nodes_rk4(surface, mesh.nodes, mesh.time, t, startup_substeps(tau)), t);
						else
							mesh = disc.closed_form_mesh(t);
						state.push({t, interpolate(mesh, u, t), disc.mass(mesh)}, k);
						node_history.push_front(mesh.nodes);
						drift = std::max(drift, max_node_residual(surface, mesh));
						if (observer)
							observer(step, state.time(), state.current(), state.current_mass());
					}
				}

				for (step = k; step <= n_steps; ++step)
				{
					const double t_new = state.time() + tau;
					if (disc.lagrangian())
					{
						const std::vector<NodeSet> hist(node_history.begin(), node_history.end());
						mesh = disc.with_nodes(bdf_node_step(surface, hist, t_new, tau, bdf), t_new);
						node_history.push_front(mesh.nodes);
						if (static_cast<int>(node_history.size()) > k)
							node_history.pop_back();
					}
					else
						mesh = disc.closed_form_mesh(t_new);
					state = bdf_step(std::move(state), [&](double, int) { return disc.system(mesh); }, bdf, tau, opts);
					drift = std::max(drift, max_node_residual(surface, mesh));
					if (observer)
						observer(step, state.time(), state.current(), state.current_mass());
				}
			}
		}
		catch (const ConfigError &)
		{
			throw;
		}
		catch (const Error &e)
		{
			std::ostringstream os;
			os << "step " << step << " (t = " << format_double(step * tau) << "): " << e.what();
			throw ExperimentFailure(os.str(), step, step * tau, is_solver_error(e));
		}

		const double T = state.time();
		mesh.time = T;
		const AssembledSystem final_sys = disc.system(mesh);
		const Eigen::VectorXd e = state.current() - interpolate(mesh, u, T);

		ErrorReport report;
		report.method = config.method;
		report.motion = to_string(config.motion);
		report.refinement = config.refinement;
		const MeshQuality quality = mesh_quality(mesh);
		report.h = quality.h;
		report.tau = tau;
		report.err_M = m_norm(final_sys.M, e);
		report.err_A = a_seminorm(final_sys.A, e);
		report.min_angle_final = quality.min_angle;
		report.offsurface_drift = drift;
		report.steps = n_steps;
		report.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - wall_start).count();
		return report;
	}

	double eoc(double e1, double x1, double e2, double x2)
	{
		return std::log(e1 / e2) / std::log(x1 / x2);
	}

	void compute_eoc(SweepResult &result)
	{
		result.temporal.clear();
		result.spatial.clear();
		if (result.rows.empty())
			return;
		int finest = result.rows.front().refinement;
		double smallest_tau = result.rows.front().tau;
		for (const ErrorReport &r : result.rows)
		{
			finest = std::max(finest, r.refinement);
			smallest_tau = std::min(smallest_tau, r.tau);
		}
		for (ErrorReport &r : result.rows)
			r.eoc_time = r.eoc_space = not_available;

		std::vector<ErrorReport *> in_time, in_space;
		for (ErrorReport &r : result.rows)
		{
			if (r.refinement == finest)
				in_time.push_back(&r);
			if (r.tau == smallest_tau)
				in_space.push_back(&r);
		}
		std::stable_sort(in_time.begin(), in_time.end(), [](auto *a, auto *b) { return a->tau > b->tau; });
		std::stable_sort(in_space.begin(), in_space.end(), [](auto *a, auto *b) { return a->refinement < b->refinement; });

		for (std::size_t i = 1; i < in_time.size(); ++i)
		{
			const ErrorReport &c = *in_time[i - 1];
			ErrorReport &f = *in_time[i];
			f.eoc_time = eoc(c.err_M, c.tau, f.err_M, f.tau);
			result.temporal.push_back({c.tau, f.tau, f.eoc_time, eoc(c.err_A, c.tau, f.err_A, f.tau)});
		}
		for (std::size_t i = 1; i < in_space.size(); ++i)
		{
			const ErrorReport &c = *in_space[i - 1];
			ErrorReport &f = *in_space[i];
			const double levels = f.refinement - c.refinement;
			f.eoc_space = std::log2(c.err_M / f.err_M) / levels;
			result.spatial.push_back({c.h, f.h, f.eoc_space, std::log2(c.err_A / f.err_A) / levels});
		}
	}

	SweepResult run_sweep(const ExperimentConfig &base, const std::vector<double> &tau_list,
						  const std::vector<int> &refinement_list)
	{
		if (tau_list.empty() || refinement_list.empty())
			throw ConfigError("sweep needs at least one tau and one refinement");
		SweepResult result;
		for (int r : refinement_list)
			for (double tau : tau_list)
			{
				ExperimentConfig cell = base;
				cell.refinement = r;
				cell.tau = tau;
				result.rows.push_back(run_experiment(cell));
			}
		compute_eoc(result);
		return result;
	}
} // namespace alesurf
