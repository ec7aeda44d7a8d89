#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <Eigen/Eigenvalues>
#include <Eigen/SparseCholesky>

#include <alesurf/assembly.hpp>
#include <alesurf/experiment.hpp>
#include <alesurf/geometry.hpp>
#include <alesurf/mesh.hpp>
#include <alesurf/stepping.hpp>
#include <alesurf/time_schemes.hpp>

#include "../common/oracles.hpp"

namespace
{
	using namespace alesurf;

	struct Verdict
	{
		bool pass = true;
		std::ostringstream detail;

		void require(bool ok) { pass = pass && ok; }
	};

	int failures = 0;

	void report(const std::string &name, Verdict &v)
	{
		std::printf("%s %s: %s\n", v.pass ? "PASS" : "FAIL", name.c_str(), v.detail.str().c_str());
		std::fflush(stdout);
		if (!v.pass)
			++failures;
	}

	void info(const std::string &line)
	{
		std::printf("    %s\n", line.c_str());
		std::fflush(stdout);
	}

	std::string fmt(double x, const char *format = "%.3g")
	{
		char buf[64];
		std::snprintf(buf, sizeof buf, format, x);
		return buf;
	}

	double seconds_since(std::chrono::steady_clock::time_point start)
	{
		return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
	}

	struct FinalState
	{
		ErrorReport report;
		Eigen::VectorXd alpha;
		SparseMatrix M;
	};

	FinalState run_with_final(const ExperimentConfig &config)
	{
		FinalState out;
		out.report = run_experiment(config, [&](long, double, const Eigen::VectorXd &alpha, const SparseMatrix &M) {
			out.alpha = alpha;
			out.M = M;
		});
		return out;
	}

	// Temporal orders. The fully discrete error splits as e_h(tau) = (alpha_tau - alpha_ref) + e_h(ref);
	// the second part is the tau-independent spatial plateau, the first the temporal part whose
	// decay is read off until it reaches the reference accuracy.
	void temporal_orders()
	{
		const auto start = std::chrono::steady_clock::now();
		const int refinement = 3;
		std::vector<double> taus;
		for (int j = 0; j <= 5; ++j)
			taus.push_back(0.1 * std::ldexp(1.0, -j));

		ExperimentConfig base;
		base.refinement = refinement;
		base.motion = ExperimentMotion::Ale;
		base.t_end = 0.6;
		base.solver_tol = 1e-13;
		base.bdf_start = BdfStart::RadauBootstrap;

		ExperimentConfig ref_config = base;
		ref_config.method = "radau5";
		ref_config.tau = 0.1 * std::ldexp(1.0, -7);
		const FinalState reference = run_with_final(ref_config);
		const double ref_norm = m_norm(reference.M, reference.alpha);
		const double plateau = 1e-9 * ref_norm;
		info("reference radau5 tau = " + fmt(ref_config.tau) + ": err_M " + fmt(reference.report.err_M) +
			 ", |alpha|_M " + fmt(ref_norm) + ", temporal floor " + fmt(plateau));

		const std::vector<std::pair<std::string, int>> methods{{"ie", 1}, {"bdf1", 1}, {"bdf2", 2}, {"bdf3", 3},
															   {"radau3", 3}, {"bdf4", 4}, {"bdf5", 5}, {"radau5", 5}};
		Verdict verdict;
		for (const auto &[method, order] : methods)
		{
			std::vector<double> err_total, err_time;
			for (const double tau : taus)
			{
				ExperimentConfig config = base;
				config.method = method;
				config.tau = tau;
				const FinalState fs = run_with_final(config);
				err_total.push_back(fs.report.err_M);
				err_time.push_back(m_norm(fs.M, fs.alpha - reference.alpha));
			}
			std::string total_line = method + " |e_h|_M:", time_line = method + " temporal part:";
			double measured = std::nan("");
			for (std::size_t j = 0; j < taus.size(); ++j)
			{
				total_line += " " + fmt(err_total[j]);
				time_line += " " + fmt(err_time[j]);
				if (j > 0 && err_time[j] >= plateau && err_time[j - 1] >= plateau)
					measured = eoc(err_time[j - 1], taus[j - 1], err_time[j], taus[j]);
			}
			std::string eoc_line = method + " EOC (|e_h|_M, temporal part):";
			for (std::size_t j = 1; j < taus.size(); ++j)
				eoc_line += " (" + fmt(eoc(err_total[j - 1], taus[j - 1], err_total[j], taus[j]), "%.2f") + ", " +
							fmt(eoc(err_time[j - 1], taus[j - 1], err_time[j], taus[j]), "%.2f") + ")";
			info(total_line);
			info(time_line);
			info(eoc_line);
			const bool ok = std::isfinite(measured) && std::abs(measured - order) <= 0.25;
			verdict.require(ok);
			verdict.detail << method << " " << fmt(measured, "%.2f") << " (target " << order << ")" << (ok ? "" : " [out]") << "; ";
		}
		const double elapsed = seconds_since(start);
		verdict.require(elapsed < 900.0);
		verdict.detail << "runtime " << fmt(elapsed, "%.0f") << " s";
		report("temporal orders (refinement 3, ALE, T = 0.6, |e|_M within 0.25)", verdict);
	}

	void spatial_order()
	{
		ExperimentConfig base;
		base.method = "radau5";
		base.tau = 0.1 * std::ldexp(1.0, -5);
		base.motion = ExperimentMotion::Ale;
		base.solver_tol = 1e-13;
		const SweepResult sweep = run_sweep(base, {base.tau}, {1, 2, 3});
		for (const ErrorReport &row : sweep.rows)
			info("refinement " + std::to_string(row.refinement) + ": h " + fmt(row.h) + ", err_M " + fmt(row.err_M) +
				 ", err_A " + fmt(row.err_A));
		Verdict verdict;
		for (const EocEntry &e : sweep.spatial)
		{
			const bool ok_m = std::abs(e.eoc_M - 2.0) <= 0.3;
			const bool ok_a = std::abs(e.eoc_A - 1.0) <= 0.3;
			verdict.require(ok_m && ok_a);
			verdict.detail << "h " << fmt(e.coarse) << " -> " << fmt(e.fine) << ": M " << fmt(e.eoc_M, "%.2f")
						   << (ok_m ? "" : " [out]") << ", A " << fmt(e.eoc_A, "%.2f") << (ok_a ? "" : " [out]") << "; ";
		}
		verdict.detail << "targets M 2.0 +- 0.3, A 1.0 +- 0.3 (radau5, tau = 0.1 * 2^-5)";
		report("spatial order (refinements 1, 2, 3)", verdict);
	}

	struct Snapshot
	{
		SurfaceMesh mesh;
		std::vector<Vec3> w, v;
	};

	std::vector<Snapshot> dumbbell_snapshots()
	{
		const OscillatingDumbbell surface;
		std::vector<Snapshot> out;
		for (int r = 0; r <= 2; ++r)
		{
			const SurfaceMesh initial = build_initial_mesh(surface, r);
			for (const double t : {0.0, 0.25, 0.6})
			{
				Snapshot s{move_nodes_ale(surface, initial, t), {}, {}};
				for (std::size_t i = 0; i < s.mesh.num_nodes(); ++i)
				{
					s.w.push_back(surface.ale_velocity(s.mesh.ref_nodes[i], t));
					s.v.push_back(material_velocity(surface, s.mesh.nodes[i], t));
				}
				out.push_back(std::move(s));
			}
		}
		return out;
	}

	double relative_difference(const Eigen::MatrixXd &x, const Eigen::MatrixXd &oracle)
	{
		return (x - oracle).norm() / oracle.norm();
	}

	void matrix_properties(const std::vector<Snapshot> &snapshots)
	{
		Verdict verdict;
		double worst_sym = 0, worst_a1 = 0, worst_1b = 0, worst_m = 0, worst_a = 0, worst_b = 0;
		bool spd = true;
		for (const Snapshot &s : snapshots)
		{
			const Assembler assembler(s.mesh);
			const SparseMatrix M = assembler.mass(s.mesh);
			const SparseMatrix A = assembler.stiffness(s.mesh);
			const SparseMatrix B = assembler.b_matrix(s.mesh, s.w, s.v);
			Eigen::SimplicialLLT<Eigen::SparseMatrix<double>> llt(M.to_eigen());
			spd = spd && llt.info() == Eigen::Success;
			const Eigen::MatrixXd Ad = A.to_dense(), Bd = B.to_dense();
			const Eigen::VectorXd ones = Eigen::VectorXd::Ones(A.rows());
			worst_sym = std::max(worst_sym, (Ad - Ad.transpose()).cwiseAbs().maxCoeff());
			worst_a1 = std::max(worst_a1, (Ad * ones).cwiseAbs().maxCoeff());
			worst_1b = std::max(worst_1b, (ones.transpose() * Bd).cwiseAbs().maxCoeff());
			const test::DenseMatrices oracle = test::dense_oracle(s.mesh, s.w, s.v);
			worst_m = std::max(worst_m, relative_difference(M.to_dense(), oracle.M));
			worst_a = std::max(worst_a, relative_difference(Ad, oracle.A));
			worst_b = std::max(worst_b, relative_difference(Bd, oracle.B));
		}
		verdict.require(spd && worst_sym <= 1e-13 && worst_a1 <= 1e-13 && worst_1b <= 1e-13);
		verdict.require(worst_m <= 1e-13 && worst_a <= 1e-13 && worst_b <= 1e-13);
		verdict.detail << "M SPD " << (spd ? "yes" : "no") << ", max|A - A^T| " << fmt(worst_sym) << ", max|A1| "
					   << fmt(worst_a1) << ", max|1^T B| " << fmt(worst_1b) << ", oracle rel. diff M " << fmt(worst_m)
					   << " A " << fmt(worst_a) << " B " << fmt(worst_b) << " (" << snapshots.size() << " snapshots)";
		report("matrix property suite (refinements 0-2, t = 0, 0.25, 0.6)", verdict);
	}

	void b_estimate(const std::vector<Snapshot> &snapshots)
	{
		Verdict verdict;
		std::mt19937_64 rng(20240601);
		std::normal_distribution<double> gauss;
		double worst = 0;
		int pairs = 0;
		for (const Snapshot &s : snapshots)
		{
			const Assembler assembler(s.mesh);
			const SparseMatrix M = assembler.mass(s.mesh);
			const SparseMatrix A = assembler.stiffness(s.mesh);
			const SparseMatrix B = assembler.b_matrix(s.mesh, s.w, s.v);
			double max_diff = 0;
			for (std::size_t i = 0; i < s.w.size(); ++i)
				max_diff = std::max(max_diff, (s.w[i] - s.v[i]).norm());
			const int n = A.rows();
			for (int p = 0; p < 200; ++p)
			{
				Eigen::VectorXd z(n), y(n);
				for (int i = 0; i < n; ++i)
					z[i] = gauss(rng), y[i] = gauss(rng);
				const double lhs = std::abs(bilinear(B, y, z));
				const double rhs = 1.01 * max_diff * m_norm(M, z) * a_seminorm(A, y);
				worst = std::max(worst, lhs / rhs);
				verdict.require(lhs <= rhs);
				++pairs;
			}
		}
		verdict.detail << pairs << " pairs, max |<Bz, y>| / (1.01 max|W_h - V_h| |z|_M |y|_A) = " << fmt(worst);
		report("B-estimate surrogate", verdict);
	}

	// Stationary unit sphere, f = 0. BDF starting values are the exact semidiscrete
	// solution exp(-M^{-1} A t) alpha_0. Once alpha_n reaches the constant mode the
	// norm is flat and only rounding moves it, hence the relative slack.
	constexpr double monotonicity_slack = 1e-12;

	void conservation()
	{
		const UnitSphere sphere;
		const SurfaceMesh mesh = build_initial_mesh(sphere, 2, MotionMode::Stationary);
		const Assembler assembler(mesh);
		AssembledSystem sys;
		sys.M = assembler.mass(mesh);
		sys.A = assembler.stiffness(mesh);
		sys.B = assembler.zero();
		sys.load = Eigen::VectorXd::Zero(mesh.num_nodes());
		const SystemProvider provider = [&](double t, int) { AssembledSystem s = sys; s.t = t; return s; };

		const Eigen::VectorXd alpha0 = interpolate(mesh, [](const Vec3 &x, double) { return 1.0 + x[0] * x[1] + x[2] * x[2] + 0.5 * x[2]; }, 0.0);
		const Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> eig(sys.A.to_dense(), sys.M.to_dense());
		const Eigen::MatrixXd modes = eig.eigenvectors();
		const Eigen::VectorXd coeffs = modes.transpose() * sys.M.to_dense() * alpha0;
		auto semidiscrete = [&](double t) {
			return Eigen::VectorXd(modes * (coeffs.array() * (-eig.eigenvalues().array() * t).exp()).matrix());
		};

		const Eigen::VectorXd ones = Eigen::VectorXd::Ones(mesh.num_nodes());
		SolverOptions opts;
		opts.rel_tol = 1e-13;
		Verdict verdict;
		for (const std::string &id : integrator_ids())
		{
			const Integrator integ = make_integrator(id);
			std::string line = id + ":";
			for (const double tau : {0.01, 0.1, 1.0})
			{
				SteppingState state(tau);
				state.push({0.0, alpha0, sys.M}, 8);
				int k = 1;
				if (!integ.is_runge_kutta())
				{
					k = integ.bdf().steps;
					for (int j = 1; j < k; ++j)
						state.push({j * tau, semidiscrete(j * tau), sys.M}, k);
				}
				const double mass0 = ones.dot(matvec(sys.M, alpha0));
				double mass_drift = 0, worst_increase = 0;
				double prev_norm = m_norm(sys.M, state.current());
				bool monotone = true;
				for (int step = k; step <= 100; ++step)
				{
					state = integ.is_runge_kutta() ? irk_step(std::move(state), provider, integ.tableau(), tau, opts)
												   : bdf_step(std::move(state), provider, integ.bdf(), tau, opts);
					const double norm = m_norm(sys.M, state.current());
					if (norm > prev_norm * (1.0 + monotonicity_slack))
					{
						monotone = false;
						worst_increase = std::max(worst_increase, (norm - prev_norm) / prev_norm);
					}
					prev_norm = norm;
					mass_drift = std::max(mass_drift, std::abs(ones.dot(matvec(sys.M, state.current())) - mass0) / std::abs(mass0));
				}
				const bool ok = mass_drift <= 1e-9 && monotone;
				verdict.require(ok);
				line += " tau " + fmt(tau) + " mass drift " + fmt(mass_drift) + (monotone ? " monotone" : " max rel. increase " + fmt(worst_increase)) + ";";
				if (!ok)
					verdict.detail << id << "@" << fmt(tau) << " ";
			}
			info(line);
		}
		verdict.detail << (verdict.pass ? "all integrators conserve mass and decrease |alpha|_M" : "violate the criterion");
		report("conservation/stability (unit sphere, f = 0, 100 steps)", verdict);
	}

	void manufactured_rhs_check()
	{
		const OscillatingDumbbell dumbbell;
		const test::FdRhsOracle oracle(dumbbell);
		std::mt19937_64 rng(7);
		std::uniform_real_distribution<double> time(0.0, 1.0);
		double worst = 0, largest = 0;
		for (int i = 0; i < 100; ++i)
		{
			const double t = time(rng);
			const Vec3 x = test::random_surface_point(dumbbell, t, rng);
			const double f = manufactured_rhs(dumbbell, x, t);
			worst = std::max(worst, std::abs(f - oracle(x, t)));
			largest = std::max(largest, std::abs(f));
		}
		const UnitSphere sphere;
		double worst_sphere = 0;
		for (int i = 0; i < 100; ++i)
		{
			const double t = time(rng);
			const Vec3 x = test::random_surface_point(sphere, t, rng);
			worst_sphere = std::max(worst_sphere, std::abs(manufactured_rhs(sphere, x, t)));
		}
		Verdict verdict;
		verdict.require(worst <= 1e-6 && worst_sphere <= 1e-12);
		verdict.detail << "max |f - f_fd| " << fmt(worst) << " (max |f| " << fmt(largest) << "), max |f| on sphere "
					   << fmt(worst_sphere);
		report("manufactured right-hand side", verdict);
	}

	void scheme_coefficients()
	{
		Verdict verdict;
		for (int k = 1; k <= 5; ++k)
		{
			const BdfScheme scheme = bdf_coefficients(k);
			const std::vector<test::Rational> oracle = test::bdf_oracle(k);
			bool exact = static_cast<int>(scheme.delta.size()) == k + 1;
			for (int j = 0; exact && j <= k; ++j)
				exact = scheme.delta[j] == oracle[j].to_double();
			verdict.require(exact);
			verdict.detail << "bdf" << k << (exact ? " exact" : " MISMATCH") << "; ";
		}
		const std::vector<double> zs{-1000.0, -100.0, -10.0, -3.0, -1.0, -0.5, -0.1, 0.0, 0.25, 0.5};
		for (int s = 1; s <= 3; ++s)
		{
			const ButcherTableau tab = radau_iia(s);
			const TableauDiagnostics diag = verify_tableau(tab);
			double worst = 0;
			for (const double z : zs)
				worst = std::max(worst, std::abs(stability_function(tab, z) - test::radau_pade(s, z)));
			const bool ok = diag.admissible() && diag.min_stability_eigenvalue >= -1e-12 && worst <= 1e-12;
			verdict.require(ok);
			verdict.detail << "radau s=" << s << " min eig " << fmt(diag.min_stability_eigenvalue) << ", R(z) err "
						   << fmt(worst) << "; ";
		}
		report("scheme coefficients", verdict);
	}

	void ale_benefit()
	{
		ExperimentConfig config;
		config.method = "ie";
		config.refinement = 3;
		config.tau = 0.1 * std::ldexp(1.0, -4);
		config.motion = ExperimentMotion::Ale;
		const ErrorReport ale = run_experiment(config);
		config.motion = ExperimentMotion::Lagrangian;
		const ErrorReport lag = run_experiment(config);
		Verdict verdict;
		verdict.require(ale.err_M < lag.err_M && ale.min_angle_final >= lag.min_angle_final);
		verdict.detail << "err_M ale " << fmt(ale.err_M) << ", lagrangian " << fmt(lag.err_M) << ", ratio "
					   << fmt(ale.err_M / lag.err_M) << "; min angle ale " << fmt(ale.min_angle_final) << ", lagrangian "
					   << fmt(lag.min_angle_final);
		report("ALE benefit (ie, refinement 3, tau = 0.1 * 2^-4)", verdict);
	}
} // namespace

int main()
{
	const std::vector<Snapshot> snapshots = dumbbell_snapshots();
	scheme_coefficients();
	manufactured_rhs_check();
	matrix_properties(snapshots);
	b_estimate(snapshots);
	conservation();
	ale_benefit();
	spatial_order();
	temporal_orders();
	std::printf("%d criterion(s) failed\n", failures);
	return failures == 0 ? 0 : 1;
}
