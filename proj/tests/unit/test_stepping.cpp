#include <cmath>
#include <functional>

#include <gtest/gtest.h>
#include <unsupported/Eigen/MatrixFunctions>

#include <alesurf/errors.hpp>
#include <alesurf/stepping.hpp>

#include "../common/oracles.hpp"

using namespace alesurf;

namespace
{
	AssembledSystem dense_system(double t, const Eigen::MatrixXd &M, const Eigen::MatrixXd &A, const Eigen::MatrixXd &B,
								 const Eigen::VectorXd &load)
	{
		AssembledSystem s;
		s.t = t;
		s.M = SparseMatrix::from_dense(M);
		s.A = SparseMatrix::from_dense(A);
		s.B = SparseMatrix::from_dense(B);
		s.load = load;
		return s;
	}

	AssembledSystem scalar_system(double t, double m, double a, double load)
	{
		const Eigen::MatrixXd M = Eigen::MatrixXd::Constant(1, 1, m), A = Eigen::MatrixXd::Constant(1, 1, a);
		return dense_system(t, M, A, Eigen::MatrixXd::Zero(1, 1), Eigen::VectorXd::Constant(1, load));
	}

	/// Integrates to T with the integrator `id`, taking BDF starting values from `exact`.
	Eigen::VectorXd integrate(const std::string &id, const SystemProvider &provider,
							  const std::function<Eigen::VectorXd(double)> &exact, double T, int steps)
	{
		const Integrator integ = make_integrator(id);
		const double tau = T / steps;
		SolverOptions opts;
		opts.rel_tol = 1e-15;
		SteppingState state(tau);
		state.push({0.0, exact(0.0), provider(0.0, 0).M}, 8);
		if (integ.is_runge_kutta())
		{
			for (int n = 0; n < steps; ++n)
				state = irk_step(std::move(state), provider, integ.tableau(), tau, opts);
			return state.current();
		}
		const int k = integ.bdf().steps;
		for (int j = 1; j < k; ++j)
			state.push({j * tau, exact(j * tau), provider(j * tau, 0).M}, k);
		for (int n = k; n <= steps; ++n)
			state = bdf_step(std::move(state), provider, integ.bdf(), tau, opts);
		return state.current();
	}

	double observed_order(const std::string &id, const SystemProvider &provider,
						  const std::function<Eigen::VectorXd(double)> &exact, double T, int steps)
	{
		const double e1 = (integrate(id, provider, exact, T, steps) - exact(T)).norm();
		const double e2 = (integrate(id, provider, exact, T, 2 * steps) - exact(T)).norm();
		return std::log2(e1 / e2);
	}
} // namespace

TEST(Irk, ScalarBackwardEuler)
{
	const double lambda = 3.0, tau = 0.2;
	SteppingState state(tau);
	state.push({0.0, Eigen::VectorXd::Constant(1, 2.0), SparseMatrix::identity(1)}, 1);
	state = irk_step(std::move(state), [&](double t, int) { return scalar_system(t, 1.0, lambda, 0.0); }, radau_iia(1), tau);
	EXPECT_NEAR(state.current()[0], 2.0 / (1.0 + tau * lambda), 1e-15);
	EXPECT_NEAR(state.time(), tau, 1e-16);
}

TEST(Irk, ScalarRadauReproducesStabilityFunction)
{
	for (int s = 2; s <= 3; ++s)
		for (double tl : {0.1, 1.0, 10.0})
		{
			SteppingState state(1.0);
			state.push({0.0, Eigen::VectorXd::Ones(1), SparseMatrix::identity(1)}, 1);
			state = irk_step(std::move(state), [&](double t, int) { return scalar_system(t, 1.0, tl, 0.0); }, radau_iia(s), 1.0);
			EXPECT_NEAR(state.current()[0], test::radau_pade(s, -tl), 1e-14) << s << " " << tl;
		}
}

TEST(Irk, StagesAreEvaluatedAtTheirAbscissae)
{
	const ButcherTableau tab = radau_iia(3);
	std::vector<std::pair<double, int>> calls;
	SteppingState state(0.5);
	state.push({1.0, Eigen::VectorXd::Ones(1), SparseMatrix::identity(1)}, 1);
	irk_step(std::move(state), [&](double t, int i) { calls.emplace_back(t, i); return scalar_system(t, 1.0, 1.0, 0.0); }, tab, 0.5);
	ASSERT_EQ(calls.size(), 3u);
	for (int i = 0; i < 3; ++i)
	{
		EXPECT_EQ(calls[i].second, i);
		EXPECT_NEAR(calls[i].first, 1.0 + tab.c[i] * 0.5, 1e-15);
	}
}

TEST(Bdf, Bdf1IsBackwardEuler)
{
	const double lambda = 3.0, tau = 0.2;
	const SystemProvider p = [&](double t, int) { return scalar_system(t, 1.5, lambda, 0.7); };
	SteppingState a(tau), b(tau);
	a.push({0.0, Eigen::VectorXd::Constant(1, 2.0), p(0, 0).M}, 1);
	b = a;
	for (int n = 0; n < 5; ++n)
	{
		a = bdf_step(std::move(a), p, bdf_coefficients(1), tau);
		b = irk_step(std::move(b), p, radau_iia(1), tau);
		EXPECT_NEAR(a.current()[0], b.current()[0], 1e-15);
	}
}

TEST(Bdf, Bdf2HandRecursion)
{
	const double lambda = 2.0, tau = 0.1;
	SteppingState state(tau);
	const SystemProvider p = [&](double t, int) { return scalar_system(t, 1.0, lambda, 0.0); };
	double prev2 = 1.0, prev1 = std::exp(-lambda * tau);
	state.push({0.0, Eigen::VectorXd::Constant(1, prev2), SparseMatrix::identity(1)}, 2);
	state.push({tau, Eigen::VectorXd::Constant(1, prev1), SparseMatrix::identity(1)}, 2);
	for (int n = 2; n < 8; ++n)
	{
		state = bdf_step(std::move(state), p, bdf_coefficients(2), tau);
		const double expected = (2.0 * prev1 - 0.5 * prev2) / (1.5 + tau * lambda);
		EXPECT_NEAR(state.current()[0], expected, 1e-15);
		EXPECT_NEAR(1.5 * expected - 2.0 * prev1 + 0.5 * prev2 + tau * lambda * expected, 0.0, 1e-15);
		prev2 = prev1;
		prev1 = expected;
		EXPECT_EQ(state.size(), 2u);
	}
}

TEST(Bdf, RequiresHistory)
{
	SteppingState state(0.1);
	state.push({0.0, Eigen::VectorXd::Ones(1), SparseMatrix::identity(1)}, 3);
	EXPECT_THROW(bdf_step(state, [](double t, int) { return scalar_system(t, 1, 1, 0); }, bdf_coefficients(3), 0.1),
				 InsufficientHistory);
}

TEST(SteppingState, TimesMustAdvanceByTau)
{
	SteppingState state(0.1);
	state.push({0.0, Eigen::VectorXd::Ones(1), SparseMatrix::identity(1)}, 2);
	EXPECT_THROW(state.push({0.25, Eigen::VectorXd::Ones(1), SparseMatrix::identity(1)}, 2), ConfigError);
	state.push({0.1, Eigen::VectorXd::Ones(1), SparseMatrix::identity(1)}, 2);
	state.push({0.2, Eigen::VectorXd::Ones(1), SparseMatrix::identity(1)}, 2);
	EXPECT_EQ(state.size(), 2u);
	EXPECT_NEAR(state.history().back().t, 0.1, 1e-16);
}

TEST(Orders, ConstantCoefficientSystemAgainstMatrixExponential)
{
	Eigen::MatrixXd M(2, 2), A(2, 2), B(2, 2);
	M << 2.0, 0.5, 0.5, 1.0;
	A << 3.0, 1.0, -1.0, 2.0;
	B << 0.0, 0.5, -0.5, 0.0;
	const Eigen::VectorXd alpha0 = Eigen::Vector2d(1.0, -0.5);
	const Eigen::MatrixXd generator = -M.inverse() * (A + B);
	const auto exact = [&](double t) { return Eigen::VectorXd((generator * t).exp() * alpha0); };
	const SystemProvider provider = [&](double t, int) { return dense_system(t, M, A, B, Eigen::VectorXd::Zero(2)); };
	for (const std::string &id : integrator_ids())
	{
		const int p = make_integrator(id).order();
		EXPECT_NEAR(observed_order(id, provider, exact, 1.0, p >= 4 ? 10 : 20), p, 0.3) << id;
	}
}

TEST(Orders, TimeDependentMassAndLoad)
{
	// d/dt((1 + t) a) + lambda a = 1, a(0) = 1: with y = (1 + t) a,
	// y (1 + t)^lambda = 1 + ((1 + t)^(lambda + 1) - 1) / (lambda + 1).
	const double lambda = 2.5;
	const auto exact = [&](double t) {
		const double y = (1.0 + (std::pow(1.0 + t, lambda + 1.0) - 1.0) / (lambda + 1.0)) / std::pow(1.0 + t, lambda);
		return Eigen::VectorXd::Constant(1, y / (1.0 + t));
	};
	const SystemProvider provider = [&](double t, int) { return scalar_system(t, 1.0 + t, lambda, 1.0); };
	for (const std::string &id : integrator_ids())
	{
		const int p = make_integrator(id).order();
		EXPECT_NEAR(observed_order(id, provider, exact, 1.0, make_integrator(id).is_runge_kutta() ? 10 : 40), p, 0.3) << id;
	}
}

TEST(Exactness, PureMassProblemIsPreserved)
{
	const SurfaceMesh mesh = build_initial_mesh(UnitSphere{}, 2, MotionMode::Stationary);
	const Assembler assembler(mesh);
	AssembledSystem sys;
	sys.M = assembler.mass(mesh);
	sys.A = assembler.zero();
	sys.B = assembler.zero();
	sys.load = Eigen::VectorXd::Zero(mesh.num_nodes());
	const Eigen::VectorXd alpha0 = interpolate(mesh, [](const Vec3 &x, double) { return x[0] * x[1] + x[2]; }, 0.0);
	const SystemProvider provider = [&](double t, int) { AssembledSystem s = sys; s.t = t; return s; };
	for (const std::string &id : integrator_ids())
	{
		const Eigen::VectorXd end = integrate(id, provider, [&](double) { return alpha0; }, 1.0, 10);
		EXPECT_LE((end - alpha0).cwiseAbs().maxCoeff(), 1e-13) << id;
	}
}

TEST(StartingValues, Examples)
{
	const OscillatingDumbbell s;
	const SurfaceMesh m = build_initial_mesh(s, 1);
	std::vector<SurfaceMesh> meshes{m, move_nodes_ale(s, m, 0.1), move_nodes_ale(s, m, 0.2)};
	const auto one = bdf_starting_values(1, meshes, exact_solution);
	ASSERT_EQ(one.size(), 1u);
	EXPECT_EQ(one[0], interpolate(m, exact_solution, 0.0));
	const auto three = bdf_starting_values(3, meshes, [](const Vec3 &, double) { return 0.0; });
	ASSERT_EQ(three.size(), 3u);
	for (const auto &v : three)
		EXPECT_EQ(v, Eigen::VectorXd::Zero(m.num_nodes()));
	const auto exact = bdf_starting_values(3, meshes, exact_solution);
	for (int i = 0; i < 3; ++i)
		EXPECT_EQ(exact[i], interpolate(meshes[i], exact_solution, 0.1 * i));
}
