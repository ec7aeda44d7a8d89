#include <alesurf/stepping.hpp>
#include <alesurf/errors.hpp>

#include <cmath>

namespace alesurf
{
	void SteppingState::push(HistoryEntry entry, std::size_t keep)
	{
		if (!history_.empty())
		{
			const double dt = entry.t - history_.front().t;
			if (!(std::abs(dt - tau_) <= 1e-9 * std::max(1.0, std::abs(entry.t))))
				throw ConfigError("history times must advance by tau");
		}
		history_.push_front(std::move(entry));
		while (history_.size() > keep)
			history_.pop_back();
	}

	SteppingState irk_step(SteppingState state, const SystemProvider &provider, const ButcherTableau &tab,
						   double tau, const SolverOptions &opts)
	{
		const int s = tab.stages;
		const double t_n = state.time();
		const SparseMatrix &M_n = state.current_mass();
		const int n = M_n.rows();

		std::vector<AssembledSystem> stage(s);
		std::vector<SparseMatrix> operators(s);
		for (int i = 0; i < s; ++i)
		{
			stage[i] = provider(t_n + tab.c[i] * tau, i);
			operators[i] = add_scaled(stage[i].A, stage[i].B, 1.0, 1.0);
		}

		BlockSystem system(s, n);
		const Eigen::VectorXd mass_history = matvec(M_n, state.current());
		for (int i = 0; i < s; ++i)
		{
			system.add_term(i, i, stage[i].M, 1.0);
			Eigen::VectorXd rhs = mass_history;
			for (int j = 0; j < s; ++j)
			{
				if (tab.a(i, j) == 0.0)
					continue;
				system.add_term(i, j, operators[j], tau * tab.a(i, j));
				rhs += tau * tab.a(i, j) * stage[j].load;
			}
			system.rhs().segment(i * n, n) = rhs;
		}

		const Eigen::VectorXd stages = solve(system, opts);
		state.push({t_n + tau, stages.segment((s - 1) * n, n), std::move(stage[s - 1].M)}, 1);
		return state;
	}

	SteppingState bdf_step(SteppingState state, const SystemProvider &provider, const BdfScheme &scheme,
						   double tau, const SolverOptions &opts)
	{
		const int k = scheme.steps;
		if (static_cast<int>(state.size()) < k)
			throw InsufficientHistory("BDF" + std::to_string(k) + " needs " + std::to_string(k) + " history entries, got " + std::to_string(state.size()));

		const double t_new = state.time() + tau;
		AssembledSystem sys = provider(t_new, 0);

		Eigen::VectorXd rhs = tau * sys.load;
		for (int j = 1; j <= k; ++j)
		{
			const HistoryEntry &h = state.history()[j - 1];
			rhs -= scheme.delta[j] * matvec(h.M, h.alpha);
		}
		const SparseMatrix op = add_scaled(sys.M, add_scaled(sys.A, sys.B, tau, tau), scheme.delta[0], 1.0);
		Eigen::VectorXd alpha = solve(op, rhs, opts);
		state.push({t_new, std::move(alpha), std::move(sys.M)}, static_cast<std::size_t>(k));
		return state;
	}

	std::vector<Eigen::VectorXd> bdf_starting_values(int k, const std::vector<SurfaceMesh> &meshes,
													 const std::function<double(const Vec3 &, double)> &u)
	{
		if (static_cast<int>(meshes.size()) < k)
			throw InsufficientHistory("starting values need meshes at " + std::to_string(k) + " time levels, got " + std::to_string(meshes.size()));
		std::vector<Eigen::VectorXd> out;
		out.reserve(k);
		for (int i = 0; i < k; ++i)
			out.push_back(interpolate(meshes[i], u, meshes[i].time));
		return out;
	}
} // namespace alesurf
