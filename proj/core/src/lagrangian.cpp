#include <alesurf/lagrangian.hpp>
#include <alesurf/errors.hpp>

#include <cmath>

namespace alesurf
{
	namespace
	{
		/// Damped Newton for residual(x) = 0 with a forward-difference Jacobian.
		template <typename Residual>
		Eigen::VectorXd newton_solve(Residual &&residual, Eigen::VectorXd x, std::size_t node,
									 const NodeSolveOptions &opts)
		{
			const Eigen::Index n = x.size();
			Eigen::VectorXd r = residual(x);
			double rnorm = r.lpNorm<Eigen::Infinity>();
			Eigen::MatrixXd J(n, n);
			for (int it = 0; it < opts.max_iterations && rnorm > opts.residual_tol; ++it)
			{
				for (Eigen::Index j = 0; j < n; ++j)
				{
					Eigen::VectorXd xp = x;
					const double h = opts.jacobian_step * std::max(1.0, std::abs(x[j]));
					xp[j] += h;
					J.col(j) = (residual(xp) - r) / h;
				}
				const Eigen::VectorXd dx = J.partialPivLu().solve(-r);
				double lambda = 1.0;
				Eigen::VectorXd x_new = x + dx;
				Eigen::VectorXd r_new = residual(x_new);
				while (!(r_new.lpNorm<Eigen::Infinity>() < rnorm) && lambda > 1e-4)
				{
					lambda *= 0.5;
					x_new = x + lambda * dx;
					r_new = residual(x_new);
				}
				if (!(r_new.lpNorm<Eigen::Infinity>() < rnorm))
					break;
				x = std::move(x_new);
				r = std::move(r_new);
				rnorm = r.lpNorm<Eigen::Infinity>();
			}
			if (!(rnorm <= opts.residual_tol))
				throw NodeSolveDiverged(node, rnorm);
			return x;
		}

		/// Newton on family(1) from the guess, falling back to continuation along family(sigma), sigma: 0 -> 1,
		/// where sigma scales the step size and family(0) is solved by `start`.
		template <typename Family>
		Eigen::VectorXd robust_solve(Family &&family, const Eigen::VectorXd &guess, const Eigen::VectorXd &start,
									 std::size_t node, const NodeSolveOptions &opts)
		{
			try
			{
				return newton_solve(family(1.0), guess, node, opts);
			}
			catch (const NodeSolveDiverged &direct)
			{
				for (int substeps : {16, 128})
				{
					try
					{
						Eigen::VectorXd x = start;
						for (int k = 1; k <= substeps; ++k)
							x = newton_solve(family(static_cast<double>(k) / substeps), x, node, opts);
						return x;
					}
					catch (const NodeSolveDiverged &)
					{
					}
				}
				throw direct;
			}
		}
	} // namespace

	std::vector<NodeSet> rk_node_stages(const LevelSetSurface &surface, const NodeSet &nodes, double t_n,
										double tau, const ButcherTableau &tab, const NodeSolveOptions &opts)
	{
		const int s = tab.stages;
		std::vector<NodeSet> stages(s, NodeSet(nodes.size()));
		for (std::size_t i = 0; i < nodes.size(); ++i)
		{
			const Vec3 a = nodes[i];
			auto family = [&](double sigma) {
				const double h = sigma * tau;
				return [&, h](const Eigen::VectorXd &y) {
					Eigen::VectorXd r(3 * s);
					std::vector<Vec3> f(s);
					for (int j = 0; j < s; ++j)
						f[j] = material_velocity(surface, y.segment<3>(3 * j), t_n + tab.c[j] * h);
					for (int k = 0; k < s; ++k)
					{
						Vec3 rhs = a;
						for (int j = 0; j < s; ++j)
							rhs += h * tab.a(k, j) * f[j];
						r.segment<3>(3 * k) = y.segment<3>(3 * k) - rhs;
					}
					return r;
				};
			};

			Eigen::VectorXd guess(3 * s);
			const Vec3 f0 = material_velocity(surface, a, t_n);
			for (int k = 0; k < s; ++k)
				guess.segment<3>(3 * k) = a + tab.c[k] * tau * f0;

			const Eigen::VectorXd y = robust_solve(family, guess, a.replicate(s, 1), i, opts);
			for (int k = 0; k < s; ++k)
				stages[k][i] = y.segment<3>(3 * k);
		}
		return stages;
	}

	NodeSet bdf_node_step(const LevelSetSurface &surface, std::span<const NodeSet> history, double t_new,
						  double tau, const BdfScheme &scheme, const NodeSolveOptions &opts)
	{
		const int k = scheme.steps;
		if (static_cast<int>(history.size()) < k)
			throw InsufficientHistory("BDF" + std::to_string(k) + " node step needs " + std::to_string(k) + " previous node sets, got " + std::to_string(history.size()));
		const std::size_t n = history.front().size();
		NodeSet out(n);
		for (std::size_t i = 0; i < n; ++i)
		{
			Vec3 known = Vec3::Zero();
			for (int j = 1; j <= k; ++j)
				known += scheme.delta[j] * history[j - 1][i];
			auto family = [&](double sigma) {
				return [&, sigma](const Eigen::VectorXd &y) -> Eigen::VectorXd {
					const Vec3 a = y;
					return scheme.delta[0] * a + known - sigma * tau * material_velocity(surface, a, t_new);
				};
			};
			const Vec3 &prev = history.front()[i];
			const Eigen::VectorXd guess = prev + tau * material_velocity(surface, prev, t_new - tau);
			out[i] = robust_solve(family, guess, Eigen::VectorXd(-known / scheme.delta[0]), i, opts);
		}
		return out;
	}

	NodeSet integrate_nodes_rk4(const LevelSetSurface &surface, const NodeSet &nodes, double t0, double t1,
								int substeps)
	{
		NodeSet out = nodes;
		const double h = (t1 - t0) / substeps;
		for (Vec3 &y : out)
			for (int m = 0; m < substeps; ++m)
			{
				const double t = t0 + m * h;
				const Vec3 k1 = material_velocity(surface, y, t);
				const Vec3 k2 = material_velocity(surface, y + 0.5 * h * k1, t + 0.5 * h);
				const Vec3 k3 = material_velocity(surface, y + 0.5 * h * k2, t + 0.5 * h);
				const Vec3 k4 = material_velocity(surface, y + h * k3, t + h);
				y += h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
			}
		return out;
	}

	SurfaceMesh advance_nodes_lagrangian(const LevelSetSurface &surface, const SurfaceMesh &mesh, double t_n,
										 double tau, const Integrator &scheme, std::span<const NodeSet> history,
										 const NodeSolveOptions &opts)
	{
		if (mesh.motion != MotionMode::Lagrangian)
			throw ConfigError("advance_nodes_lagrangian requires a Lagrangian mesh, got " + to_string(mesh.motion));
		if (!(tau > 0.0))
			throw ConfigError("step size must be positive");
		SurfaceMesh out = mesh;
		if (scheme.is_runge_kutta())
			out.nodes = rk_node_stages(surface, mesh.nodes, t_n, tau, scheme.tableau(), opts).back();
		else
			out.nodes = bdf_node_step(surface, history, t_n + tau, tau, scheme.bdf(), opts);
		out.time = t_n + tau;
		return out;
	}
} // namespace alesurf
