#include <alesurf/time_schemes.hpp>
#include <alesurf/errors.hpp>

#include <cmath>
#include <cstdint>
#include <numeric>

namespace alesurf
{
	namespace
	{
		/// Right Radau points on [0, 1].
		Eigen::VectorXd radau_abscissae(int s)
		{
			Eigen::VectorXd c(s);
			switch (s)
			{
			case 1:
				c << 1.0;
				break;
			case 2:
				c << 1.0 / 3.0, 1.0;
				break;
			case 3:
			{
				const double r6 = std::sqrt(6.0);
				c << (4.0 - r6) / 10.0, (4.0 + r6) / 10.0, 1.0;
				break;
			}
			default:
				throw UnsupportedStageCount("Radau IIA is provided for s = 1, 2, 3, got " + std::to_string(s));
			}
			return c;
		}

		struct Rational
		{
			std::int64_t num = 0;
			std::int64_t den = 1;

			Rational &operator+=(const Rational &o)
			{
				num = num * o.den + o.num * den;
				den *= o.den;
				const std::int64_t g = std::gcd(num, den);
				if (g != 0)
				{
					num /= g;
					den /= g;
				}
				return *this;
			}
			double value() const { return static_cast<double>(num) / static_cast<double>(den); }
		};

		std::int64_t binomial(int n, int k)
		{
			std::int64_t r = 1;
			for (int i = 1; i <= k; ++i)
				r = r * (n - k + i) / i;
			return r;
		}
	} // namespace

	ButcherTableau radau_iia(int s)
	{
		ButcherTableau tab;
		tab.stages = s;
		tab.c = radau_abscissae(s);

		// Collocation: sum_j a_ij c_j^(k-1) = c_i^k / k for k = 1..s.
		Eigen::MatrixXd vandermonde(s, s);
		for (int k = 0; k < s; ++k)
			for (int j = 0; j < s; ++j)
				vandermonde(k, j) = std::pow(tab.c[j], k);
		Eigen::MatrixXd rhs(s, s);
		for (int k = 0; k < s; ++k)
			for (int i = 0; i < s; ++i)
				rhs(k, i) = std::pow(tab.c[i], k + 1) / (k + 1);
		tab.a = vandermonde.fullPivLu().solve(rhs).transpose();
		tab.b = tab.a.row(s - 1).transpose();
		tab.stage_order = s;
		tab.classical_order = 2 * s - 1;
		return tab;
	}

	TableauDiagnostics verify_tableau(const ButcherTableau &tab)
	{
		TableauDiagnostics diag;
		const int s = tab.stages;
		if (s <= 0 || tab.a.rows() != s || tab.a.cols() != s || tab.b.size() != s || tab.c.size() != s)
			return diag;

		diag.stiff_accuracy_residual = (tab.b.transpose() - tab.a.row(s - 1)).cwiseAbs().maxCoeff();
		diag.last_abscissa_residual = std::abs(tab.c[s - 1] - 1.0);
		diag.stiffly_accurate = diag.stiff_accuracy_residual <= 1e-14 && diag.last_abscissa_residual <= 1e-14;

		Eigen::MatrixXd stability(s, s);
		for (int i = 0; i < s; ++i)
			for (int j = 0; j < s; ++j)
				stability(i, j) = tab.b[i] * tab.a(i, j) + tab.b[j] * tab.a(j, i) - tab.b[i] * tab.b[j];
		diag.min_stability_eigenvalue = Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(stability).eigenvalues().minCoeff();
		diag.min_weight = tab.b.minCoeff();
		diag.algebraically_stable = diag.min_weight > 0.0 && diag.min_stability_eigenvalue >= -1e-12;

		diag.min_singular_value = Eigen::JacobiSVD<Eigen::MatrixXd>(tab.a).singularValues().minCoeff();
		diag.invertible = diag.min_singular_value > 1e-12;
		return diag;
	}

	double stability_function(const ButcherTableau &tab, double z)
	{
		const int s = tab.stages;
		const Eigen::MatrixXd m = Eigen::MatrixXd::Identity(s, s) - z * tab.a;
		const Eigen::VectorXd y = m.partialPivLu().solve(Eigen::VectorXd::Ones(s));
		return 1.0 + z * tab.b.dot(y);
	}

	BdfScheme bdf_coefficients(int k)
	{
		if (k < 1 || k > 5)
			throw UnsupportedOrder("BDF is provided for k = 1..5, got " + std::to_string(k));
		std::vector<Rational> coeff(k + 1);
		for (int l = 1; l <= k; ++l)
			for (int j = 0; j <= l; ++j)
			{
				const std::int64_t sign = (j % 2 == 0) ? 1 : -1;
				coeff[j] += Rational{sign * binomial(l, j), l};
			}
		BdfScheme scheme;
		scheme.steps = k;
		for (const Rational &r : coeff)
			scheme.delta.push_back(r.value());
		return scheme;
	}

	int Integrator::order() const
	{
		if (is_runge_kutta())
			return tableau().classical_order;
		return bdf().steps;
	}

	const std::vector<std::string> &integrator_ids()
	{
		static const std::vector<std::string> ids{"ie", "radau3", "radau5", "bdf1", "bdf2", "bdf3", "bdf4", "bdf5"};
		return ids;
	}

	Integrator make_integrator(const std::string &id)
	{
		if (id == "ie")
			return {id, radau_iia(1)};
		if (id == "radau3")
			return {id, radau_iia(2)};
		if (id == "radau5")
			return {id, radau_iia(3)};
		if (id.size() == 4 && id.rfind("bdf", 0) == 0 && id[3] >= '1' && id[3] <= '5')
			return {id, bdf_coefficients(id[3] - '0')};
		throw ConfigError("unknown method '" + id + "' (expected ie, radau3, radau5, bdf1..bdf5)");
	}
} // namespace alesurf
