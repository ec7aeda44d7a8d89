#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Sparse>

namespace alesurf
{
	struct Triplet
	{
		int row;
		int col;
		double value;
	};

	/// Compressed row storage. Column indices are strictly increasing within each
	/// row; stored values may be zero. Immutable once built, except through
	/// `values_mutable()` which keeps the pattern fixed.
	class SparseMatrix
	{
	public:
		SparseMatrix() = default;
		/// Validates the CSR invariants; throws DimensionMismatch on violation.
		SparseMatrix(int rows, int cols, std::vector<int> row_offsets, std::vector<int> column_indices,
					 std::vector<double> values);

		/// Duplicates are summed.
		static SparseMatrix from_triplets(int rows, int cols, std::span<const Triplet> triplets);
		static SparseMatrix identity(int n);
		static SparseMatrix diagonal(std::span<const double> diag);
		static SparseMatrix from_dense(const Eigen::MatrixXd &dense);

		int rows() const { return rows_; }
		int cols() const { return cols_; }
		std::size_t nnz() const { return values_.size(); }

		const std::vector<int> &row_offsets() const { return row_offsets_; }
		const std::vector<int> &column_indices() const { return column_indices_; }
		const std::vector<double> &values() const { return values_; }
		std::vector<double> &values_mutable() { return values_; }

		/// Stored value at (i, j), or 0 outside the pattern.
		double coeff(int i, int j) const;
		/// Position of (i, j) in values(), or -1.
		std::ptrdiff_t find(int i, int j) const;

		Eigen::MatrixXd to_dense() const;
		Eigen::SparseMatrix<double> to_eigen() const;

	private:
		int rows_ = 0;
		int cols_ = 0;
		std::vector<int> row_offsets_{0};
		std::vector<int> column_indices_;
		std::vector<double> values_;
	};

	/// Throws DimensionMismatch.
	Eigen::VectorXd matvec(const SparseMatrix &m, const Eigen::VectorXd &x);
	/// alpha M + beta N on the union of both sparsity patterns.
	SparseMatrix add_scaled(const SparseMatrix &m, const SparseMatrix &n, double alpha, double beta);
	SparseMatrix transpose(const SparseMatrix &m);
	SparseMatrix scaled(const SparseMatrix &m, double alpha);
	double frobenius_norm(const SparseMatrix &m);
	/// x^T M y.
	double bilinear(const SparseMatrix &m, const Eigen::VectorXd &x, const Eigen::VectorXd &y);

	/// s x s grid of N x N blocks, each a linear combination of sparse matrices.
	class BlockSystem
	{
	public:
		struct Term
		{
			const SparseMatrix *matrix;
			double scale;
		};

		BlockSystem(int block_count, int block_size);

		int block_count() const { return s_; }
		int block_size() const { return n_; }

		/// Adds scale * matrix to block (i, j). The matrix must outlive the system.
		void add_term(int i, int j, const SparseMatrix &matrix, double scale);
		const std::vector<Term> &terms(int i, int j) const { return blocks_[i * s_ + j]; }

		Eigen::VectorXd &rhs() { return rhs_; }
		const Eigen::VectorXd &rhs() const { return rhs_; }

		SparseMatrix flatten() const;
		Eigen::VectorXd apply(const Eigen::VectorXd &x) const;

	private:
		int s_;
		int n_;
		std::vector<std::vector<Term>> blocks_;
		Eigen::VectorXd rhs_;
	};

	/// "%%MatrixMarket matrix coordinate real general", 1-based indices.
	void write_matrix_market(const SparseMatrix &m, std::ostream &os);
	void write_matrix_market(const SparseMatrix &m, const std::filesystem::path &path);
} // namespace alesurf
