#pragma once

#include <string>
#include <variant>
#include <vector>

#include <Eigen/Dense>

namespace alesurf
{
	/// Coefficients (a_ij, b_i, c_i) of an s-stage Runge-Kutta method.
	struct ButcherTableau
	{
		int stages = 0;
		Eigen::MatrixXd a;
		Eigen::VectorXd b;
		Eigen::VectorXd c;
		int stage_order = 0;
		int classical_order = 0;
	};

	struct TableauDiagnostics
	{
		double stiff_accuracy_residual = 0; ///< max_j |b_j - a_sj|
		double last_abscissa_residual = 0;  ///< |c_s - 1|
		double min_weight = 0;              ///< min_j b_j
		double min_stability_eigenvalue = 0;
		double min_singular_value = 0; ///< of a
		bool stiffly_accurate = false;
		bool algebraically_stable = false;
		bool invertible = false;

		bool admissible() const { return stiffly_accurate && algebraically_stable && invertible; }
	};

	/// Radau IIA collocation method with s in {1, 2, 3}; throws UnsupportedStageCount otherwise.
	ButcherTableau radau_iia(int stages);

	/// Structural checks: stiff accuracy, algebraic stability of
	/// (b_i a_ij + b_j a_ji - b_i b_j), invertibility of a. Never throws.
	TableauDiagnostics verify_tableau(const ButcherTableau &tab);

	/// Stability function R(z) = 1 + z b^T (I - z a)^{-1} 1.
	double stability_function(const ButcherTableau &tab, double z);

	/// k-step BDF: delta_j is the coefficient of zeta^j in sum_{l=1}^k (1/l)(1 - zeta)^l.
	struct BdfScheme
	{
		int steps = 0;
		std::vector<double> delta; ///< delta_0 .. delta_k
	};

	/// Throws UnsupportedOrder unless 1 <= k <= 5.
	BdfScheme bdf_coefficients(int k);

	/// Time integrator selected by CLI id: ie, radau3, radau5, bdf1 .. bdf5.
	struct Integrator
	{
		std::string id;
		std::variant<ButcherTableau, BdfScheme> scheme;

		bool is_runge_kutta() const { return std::holds_alternative<ButcherTableau>(scheme); }
		const ButcherTableau &tableau() const { return std::get<ButcherTableau>(scheme); }
		const BdfScheme &bdf() const { return std::get<BdfScheme>(scheme); }
		/// Expected temporal convergence order.
		int order() const;
	};

	/// Throws ConfigError on an unknown id.
	Integrator make_integrator(const std::string &id);
	const std::vector<std::string> &integrator_ids();
} // namespace alesurf
