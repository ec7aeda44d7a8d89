#pragma once

#include <cstddef>

#include <Eigen/Dense>

#include <alesurf/sparse.hpp>

namespace alesurf
{
	enum class SolverKind
	{
		Automatic, ///< direct up to `direct_limit` unknowns, Krylov above
		Direct,
		GmresIlu
	};

	struct SolverOptions
	{
		double rel_tol = 1e-10;
		SolverKind kind = SolverKind::Automatic;
		std::size_t direct_limit = 20000;
		int restart = 50;
		int max_iterations = 10000;
	};

	/// ||K x - b||_2 / ||b||_2 (or ||K x||_2 when b = 0).
	double relative_residual(const SparseMatrix &k, const Eigen::VectorXd &x, const Eigen::VectorXd &b);

	/// Solves K x = b to relative residual rel_tol. Throws SingularMatrix when a
	/// factorization fails and SolverBreakdown when the Krylov iteration stagnates;
	/// both carry the residual reached. Deterministic for identical inputs.
	Eigen::VectorXd solve(const SparseMatrix &k, const Eigen::VectorXd &b, const SolverOptions &opts = {});
	Eigen::VectorXd solve(const BlockSystem &system, const SolverOptions &opts = {});

	/// Incomplete LU factorization with zero fill-in on the pattern of K.
	class Ilu0
	{
	public:
		/// Throws SingularMatrix on a zero or missing diagonal pivot.
		explicit Ilu0(const SparseMatrix &k);
		/// Solves (L U) y = x.
		Eigen::VectorXd apply(const Eigen::VectorXd &x) const;

	private:
		SparseMatrix lu_;
		std::vector<int> diag_;
	};

	/// Right-preconditioned restarted GMRES(m) with ILU(0). Throws SolverBreakdown.
	Eigen::VectorXd gmres_ilu(const SparseMatrix &k, const Eigen::VectorXd &b, const SolverOptions &opts = {});
} // namespace alesurf
