#include <alesurf/linear_solver.hpp>
#include <alesurf/errors.hpp>

#include <cmath>
#include <limits>
#include <vector>

#include <Eigen/SparseLU>

namespace alesurf
{
	double relative_residual(const SparseMatrix &k, const Eigen::VectorXd &x, const Eigen::VectorXd &b)
	{
		const double r = (matvec(k, x) - b).norm();
		const double bn = b.norm();
		return bn > 0.0 ? r / bn : r;
	}

	namespace
	{
		void require_square(const SparseMatrix &k, const Eigen::VectorXd &b)
		{
			if (k.rows() != k.cols() || b.size() != k.rows())
				throw DimensionMismatch("solve: matrix " + std::to_string(k.rows()) + "x" + std::to_string(k.cols()) + " with right-hand side of length " + std::to_string(b.size()));
		}

		Eigen::VectorXd solve_direct(const SparseMatrix &k, const Eigen::VectorXd &b, const SolverOptions &opts)
		{
			Eigen::SparseMatrix<double> a = k.to_eigen();
			a.makeCompressed();
			Eigen::SparseLU<Eigen::SparseMatrix<double>, Eigen::COLAMDOrdering<int>> lu;
			lu.compute(a);
			if (lu.info() != Eigen::Success)
				throw SingularMatrix("sparse LU factorization failed: " + lu.lastErrorMessage(),
									 std::numeric_limits<double>::infinity());
			Eigen::VectorXd x = lu.solve(b);
			double res = relative_residual(k, x, b);
			// A few steps of iterative refinement for badly scaled systems.
			for (int it = 0; it < 3 && !(res <= opts.rel_tol); ++it)
			{
				x += lu.solve(b - matvec(k, x));
				res = relative_residual(k, x, b);
			}
			if (!std::isfinite(res) || res > opts.rel_tol)
				throw SingularMatrix("direct solve reached relative residual " + std::to_string(res), res);
			return x;
		}
	} // namespace

	Eigen::VectorXd solve(const SparseMatrix &k, const Eigen::VectorXd &b, const SolverOptions &opts)
	{
		require_square(k, b);
		if (b.norm() == 0.0)
			return Eigen::VectorXd::Zero(b.size());
		const bool direct = opts.kind == SolverKind::Direct ||
							(opts.kind == SolverKind::Automatic && static_cast<std::size_t>(k.rows()) <= opts.direct_limit);
		return direct ? solve_direct(k, b, opts) : gmres_ilu(k, b, opts);
	}

	Eigen::VectorXd solve(const BlockSystem &system, const SolverOptions &opts)
	{
		return solve(system.flatten(), system.rhs(), opts);
	}

	// ---------------------------------------------------------------------------
	// ILU(0)

	Ilu0::Ilu0(const SparseMatrix &k) : lu_(k), diag_(k.rows(), -1)
	{
		const int n = k.rows();
		const auto &off = lu_.row_offsets();
		const auto &col = lu_.column_indices();
		auto &val = lu_.values_mutable();
		for (int i = 0; i < n; ++i)
		{
			diag_[i] = static_cast<int>(lu_.find(i, i));
			if (diag_[i] < 0)
				throw SingularMatrix("ILU(0): missing diagonal in row " + std::to_string(i), std::numeric_limits<double>::infinity());
		}
		for (int i = 0; i < n; ++i)
		{
			for (int p = off[i]; p < off[i + 1] && col[p] < i; ++p)
			{
				const int kcol = col[p];
				const double pivot = val[diag_[kcol]];
				if (pivot == 0.0)
					throw SingularMatrix("ILU(0): zero pivot in row " + std::to_string(kcol), std::numeric_limits<double>::infinity());
				val[p] /= pivot;
				// Row i -= l_ik * (row k restricted to the pattern of row i, columns > k).
				int q = p + 1;
				for (int r = diag_[kcol] + 1; r < off[kcol + 1]; ++r)
				{
					while (q < off[i + 1] && col[q] < col[r])
						++q;
					if (q < off[i + 1] && col[q] == col[r])
						val[q] -= val[p] * val[r];
				}
			}
			if (val[diag_[i]] == 0.0)
				throw SingularMatrix("ILU(0): zero pivot in row " + std::to_string(i), std::numeric_limits<double>::infinity());
		}
	}

	Eigen::VectorXd Ilu0::apply(const Eigen::VectorXd &x) const
	{
		const int n = lu_.rows();
		const auto &off = lu_.row_offsets();
		const auto &col = lu_.column_indices();
		const auto &val = lu_.values();
		Eigen::VectorXd y = x;
		for (int i = 0; i < n; ++i)
			for (int p = off[i]; p < diag_[i]; ++p)
				y[i] -= val[p] * y[col[p]];
		for (int i = n - 1; i >= 0; --i)
		{
			for (int p = diag_[i] + 1; p < off[i + 1]; ++p)
				y[i] -= val[p] * y[col[p]];
			y[i] /= val[diag_[i]];
		}
		return y;
	}

	// ---------------------------------------------------------------------------
	// GMRES

	Eigen::VectorXd gmres_ilu(const SparseMatrix &k, const Eigen::VectorXd &b, const SolverOptions &opts)
	{
		require_square(k, b);
		const Eigen::Index n = b.size();
		const double bnorm = b.norm();
		if (bnorm == 0.0)
			return Eigen::VectorXd::Zero(n);

		const Ilu0 precond(k);
		const int m = std::max(1, opts.restart);
		Eigen::VectorXd x = Eigen::VectorXd::Zero(n);
		Eigen::MatrixXd basis(n, m + 1);
		Eigen::MatrixXd hess = Eigen::MatrixXd::Zero(m + 1, m);
		Eigen::VectorXd cs(m), sn(m), g(m + 1);

		int total = 0;
		double res = 1.0;
		double previous_cycle_res = std::numeric_limits<double>::infinity();
		while (total < opts.max_iterations)
		{
			Eigen::VectorXd r = b - matvec(k, x);
			double beta = r.norm();
			res = beta / bnorm;
			if (res <= opts.rel_tol)
				return x;
			if (!(res < previous_cycle_res * (1.0 - 1e-12)))
				throw SolverBreakdown("GMRES stagnated at relative residual " + std::to_string(res), res);
			previous_cycle_res = res;

			basis.col(0) = r / beta;
			g.setZero();
			g[0] = beta;
			hess.setZero();
			int j = 0;
			for (; j < m && total < opts.max_iterations; ++j, ++total)
			{
				Eigen::VectorXd w = matvec(k, precond.apply(basis.col(j)));
				for (int i = 0; i <= j; ++i)
				{
					hess(i, j) = w.dot(basis.col(i));
					w -= hess(i, j) * basis.col(i);
				}
				const double h_next = w.norm();
				hess(j + 1, j) = h_next;
				if (h_next > 0.0)
					basis.col(j + 1) = w / h_next;
				for (int i = 0; i < j; ++i)
				{
					const double t = cs[i] * hess(i, j) + sn[i] * hess(i + 1, j);
					hess(i + 1, j) = -sn[i] * hess(i, j) + cs[i] * hess(i + 1, j);
					hess(i, j) = t;
				}
				const double denom = std::hypot(hess(j, j), hess(j + 1, j));
				if (denom == 0.0)
					throw SolverBreakdown("GMRES breakdown: singular Hessenberg", res);
				cs[j] = hess(j, j) / denom;
				sn[j] = hess(j + 1, j) / denom;
				hess(j, j) = denom;
				hess(j + 1, j) = 0.0;
				g[j + 1] = -sn[j] * g[j];
				g[j] = cs[j] * g[j];
				if (std::abs(g[j + 1]) / bnorm <= 0.1 * opts.rel_tol || h_next == 0.0)
				{
					++j;
					++total;
					break;
				}
			}
			const Eigen::VectorXd y = hess.topLeftCorner(j, j).triangularView<Eigen::Upper>().solve(g.head(j));
			x += precond.apply(basis.leftCols(j) * y);
		}
		res = relative_residual(k, x, b);
		if (res <= opts.rel_tol)
			return x;
		throw SolverBreakdown("GMRES reached the iteration limit at relative residual " + std::to_string(res), res);
	}
} // namespace alesurf
