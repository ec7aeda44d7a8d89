#include <cmath>

#include <gtest/gtest.h>

#include <alesurf/errors.hpp>
#include <alesurf/time_schemes.hpp>

#include "../common/oracles.hpp"

using namespace alesurf;

TEST(RadauIIA, OneStageIsBackwardEuler)
{
	const ButcherTableau t = radau_iia(1);
	EXPECT_EQ(t.stages, 1);
	EXPECT_NEAR(t.a(0, 0), 1.0, 1e-15);
	EXPECT_NEAR(t.b[0], 1.0, 1e-15);
	EXPECT_NEAR(t.c[0], 1.0, 1e-15);
	EXPECT_EQ(t.stage_order, 1);
	EXPECT_EQ(t.classical_order, 1);
}

TEST(RadauIIA, TwoStageValues)
{
	const ButcherTableau t = radau_iia(2);
	Eigen::Matrix2d a;
	a << 5.0 / 12, -1.0 / 12, 3.0 / 4, 1.0 / 4;
	EXPECT_LE((t.a - a).cwiseAbs().maxCoeff(), 1e-15);
	EXPECT_LE((t.b - Eigen::Vector2d(0.75, 0.25)).cwiseAbs().maxCoeff(), 1e-15);
	EXPECT_LE((t.c - Eigen::Vector2d(1.0 / 3, 1.0)).cwiseAbs().maxCoeff(), 1e-15);
	EXPECT_EQ(t.stage_order, 2);
	EXPECT_EQ(t.classical_order, 3);
}

TEST(RadauIIA, ThreeStageAbscissaeAndOrderConditions)
{
	const ButcherTableau t = radau_iia(3);
	const double r6 = std::sqrt(6.0);
	EXPECT_NEAR(t.c[0], (4 - r6) / 10, 1e-15);
	EXPECT_NEAR(t.c[1], (4 + r6) / 10, 1e-15);
	EXPECT_NEAR(t.c[2], 1.0, 1e-15);
	EXPECT_EQ(t.stage_order, 3);
	EXPECT_EQ(t.classical_order, 5);
	// Known entries of the classical tableau.
	EXPECT_NEAR(t.a(0, 0), (88 - 7 * r6) / 360, 1e-15);
	EXPECT_NEAR(t.a(2, 2), 1.0 / 9, 1e-15);
	EXPECT_NEAR(t.b[0], (16 - r6) / 36, 1e-15);
}

TEST(RadauIIA, CollocationConditions)
{
	for (int s = 1; s <= 3; ++s)
	{
		const ButcherTableau t = radau_iia(s);
		for (int k = 1; k <= 2 * s - 1; ++k)
			EXPECT_NEAR((t.b.array() * t.c.array().pow(k - 1)).sum(), 1.0 / k, 1e-14) << s << " " << k;
		for (int k = 1; k <= s; ++k)
			for (int i = 0; i < s; ++i)
				EXPECT_NEAR((t.a.row(i).transpose().array() * t.c.array().pow(k - 1)).sum(), std::pow(t.c[i], k) / k, 1e-14);
		EXPECT_LE((t.b.transpose() - t.a.row(s - 1)).cwiseAbs().maxCoeff(), 1e-15);
	}
	EXPECT_THROW(radau_iia(0), UnsupportedStageCount);
	EXPECT_THROW(radau_iia(4), UnsupportedStageCount);
}

TEST(VerifyTableau, Examples)
{
	const TableauDiagnostics be = verify_tableau(radau_iia(1));
	EXPECT_NEAR(be.min_stability_eigenvalue, 1.0, 1e-15);
	EXPECT_TRUE(be.admissible());

	for (int s = 2; s <= 3; ++s)
	{
		const TableauDiagnostics d = verify_tableau(radau_iia(s));
		EXPECT_GE(d.min_stability_eigenvalue, -1e-12);
		EXPECT_LE(d.stiff_accuracy_residual, 1e-15);
		EXPECT_LE(d.last_abscissa_residual, 1e-15);
		EXPECT_GT(d.min_weight, 0.0);
		EXPECT_GT(d.min_singular_value, 0.0);
		EXPECT_TRUE(d.admissible());
	}

	ButcherTableau euler;
	euler.stages = 1;
	euler.a = Eigen::MatrixXd::Zero(1, 1);
	euler.b = Eigen::VectorXd::Ones(1);
	euler.c = Eigen::VectorXd::Zero(1);
	const TableauDiagnostics ee = verify_tableau(euler);
	EXPECT_FALSE(ee.stiffly_accurate);
	EXPECT_FALSE(ee.invertible);
	EXPECT_FALSE(ee.admissible());
}

TEST(StabilityFunction, MatchesPadeForms)
{
	for (int s = 1; s <= 3; ++s)
	{
		const ButcherTableau t = radau_iia(s);
		for (double z : {-1000.0, -100.0, -10.0, -1.0, -0.1, 0.0, 0.1, 0.5})
			EXPECT_NEAR(stability_function(t, z), test::radau_pade(s, z), 1e-12) << s << " " << z;
		EXPECT_LT(std::abs(stability_function(t, -1e8)), 1e-7);
	}
}

TEST(Bdf, MatchesRationalOracleExactly)
{
	for (int k = 1; k <= 5; ++k)
	{
		const BdfScheme scheme = bdf_coefficients(k);
		const auto oracle = test::bdf_oracle(k);
		ASSERT_EQ(scheme.steps, k);
		ASSERT_EQ(scheme.delta.size(), oracle.size());
		test::Rational sum;
		for (int j = 0; j <= k; ++j)
		{
			EXPECT_EQ(scheme.delta[j], oracle[j].to_double()) << k << " " << j;
			sum = sum + oracle[j];
		}
		EXPECT_EQ(sum, test::Rational(0));
		EXPECT_GT(scheme.delta[0], 0.0);
	}
}

TEST(Bdf, Examples)
{
	EXPECT_EQ(bdf_coefficients(1).delta, (std::vector<double>{1.0, -1.0}));
	EXPECT_EQ(bdf_coefficients(2).delta, (std::vector<double>{1.5, -2.0, 0.5}));
	const std::vector<double> d5 = bdf_coefficients(5).delta;
	const std::vector<double> expected{137.0 / 60, -5.0, 5.0, -10.0 / 3, 5.0 / 4, -1.0 / 5};
	EXPECT_EQ(d5, expected);
	EXPECT_THROW(bdf_coefficients(0), UnsupportedOrder);
	EXPECT_THROW(bdf_coefficients(6), UnsupportedOrder);
}

TEST(Integrators, Ids)
{
	EXPECT_EQ(integrator_ids().size(), 8u);
	EXPECT_EQ(make_integrator("ie").tableau().stages, 1);
	EXPECT_EQ(make_integrator("radau3").tableau().stages, 2);
	EXPECT_EQ(make_integrator("radau5").tableau().stages, 3);
	EXPECT_EQ(make_integrator("radau3").order(), 3);
	EXPECT_EQ(make_integrator("radau5").order(), 5);
	for (int k = 1; k <= 5; ++k)
	{
		const Integrator i = make_integrator("bdf" + std::to_string(k));
		EXPECT_FALSE(i.is_runge_kutta());
		EXPECT_EQ(i.order(), k);
	}
	EXPECT_THROW(make_integrator("bdf6"), ConfigError);
	EXPECT_THROW(make_integrator("rk4"), ConfigError);
}
