#include <alesurf/sparse.hpp>
#include <alesurf/errors.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <limits>
#include <numeric>

namespace alesurf
{
	namespace
	{
		std::string dims(int r, int c) { return std::to_string(r) + "x" + std::to_string(c); }
	} // namespace

	SparseMatrix::SparseMatrix(int rows, int cols, std::vector<int> row_offsets, std::vector<int> column_indices,
							   std::vector<double> values)
		: rows_(rows), cols_(cols), row_offsets_(std::move(row_offsets)),
		  column_indices_(std::move(column_indices)), values_(std::move(values))
	{
		if (rows_ < 0 || cols_ < 0 || row_offsets_.size() != static_cast<std::size_t>(rows_) + 1 || row_offsets_.front() != 0)
			throw DimensionMismatch("CSR: row offsets do not match " + dims(rows_, cols_));
		if (column_indices_.size() != values_.size() || static_cast<std::size_t>(row_offsets_.back()) != values_.size())
			throw DimensionMismatch("CSR: index and value arrays disagree");
		for (int i = 0; i < rows_; ++i)
		{
			if (row_offsets_[i] > row_offsets_[i + 1])
				throw DimensionMismatch("CSR: row offsets decrease at row " + std::to_string(i));
			for (int p = row_offsets_[i]; p < row_offsets_[i + 1]; ++p)
			{
				if (column_indices_[p] < 0 || column_indices_[p] >= cols_)
					throw DimensionMismatch("CSR: column index out of range in row " + std::to_string(i));
				if (p > row_offsets_[i] && column_indices_[p] <= column_indices_[p - 1])
					throw DimensionMismatch("CSR: columns not strictly increasing in row " + std::to_string(i));
			}
		}
	}

	SparseMatrix SparseMatrix::from_triplets(int rows, int cols, std::span<const Triplet> triplets)
	{
		std::vector<Triplet> sorted(triplets.begin(), triplets.end());
		for (const Triplet &t : sorted)
			if (t.row < 0 || t.row >= rows || t.col < 0 || t.col >= cols)
				throw DimensionMismatch("triplet (" + std::to_string(t.row) + ", " + std::to_string(t.col) + ") outside " + dims(rows, cols));
		std::stable_sort(sorted.begin(), sorted.end(), [](const Triplet &a, const Triplet &b) {
			return a.row != b.row ? a.row < b.row : a.col < b.col;
		});
		std::vector<int> offsets(rows + 1, 0), cols_out;
		std::vector<double> vals;
		for (std::size_t k = 0; k < sorted.size(); ++k)
		{
			const Triplet &t = sorted[k];
			if (k > 0 && sorted[k - 1].row == t.row && sorted[k - 1].col == t.col)
			{
				vals.back() += t.value;
				continue;
			}
			cols_out.push_back(t.col);
			vals.push_back(t.value);
			++offsets[t.row + 1];
		}
		std::partial_sum(offsets.begin(), offsets.end(), offsets.begin());
		return SparseMatrix(rows, cols, std::move(offsets), std::move(cols_out), std::move(vals));
	}

	SparseMatrix SparseMatrix::identity(int n)
	{
		const std::vector<double> ones(n, 1.0);
		return diagonal(ones);
	}

	SparseMatrix SparseMatrix::diagonal(std::span<const double> diag)
	{
		const int n = static_cast<int>(diag.size());
		std::vector<int> offsets(n + 1), cols(n);
		std::iota(offsets.begin(), offsets.end(), 0);
		std::iota(cols.begin(), cols.end(), 0);
		return SparseMatrix(n, n, std::move(offsets), std::move(cols), std::vector<double>(diag.begin(), diag.end()));
	}

	SparseMatrix SparseMatrix::from_dense(const Eigen::MatrixXd &dense)
	{
		std::vector<Triplet> t;
		for (int i = 0; i < dense.rows(); ++i)
			for (int j = 0; j < dense.cols(); ++j)
				if (dense(i, j) != 0.0)
					t.push_back({i, j, dense(i, j)});
		return from_triplets(static_cast<int>(dense.rows()), static_cast<int>(dense.cols()), t);
	}

	std::ptrdiff_t SparseMatrix::find(int i, int j) const
	{
		const auto begin = column_indices_.begin() + row_offsets_[i];
		const auto end = column_indices_.begin() + row_offsets_[i + 1];
		const auto it = std::lower_bound(begin, end, j);
		if (it == end || *it != j)
			return -1;
		return it - column_indices_.begin();
	}

	double SparseMatrix::coeff(int i, int j) const
	{
		const std::ptrdiff_t p = find(i, j);
		return p < 0 ? 0.0 : values_[p];
	}

	Eigen::MatrixXd SparseMatrix::to_dense() const
	{
		Eigen::MatrixXd d = Eigen::MatrixXd::Zero(rows_, cols_);
		for (int i = 0; i < rows_; ++i)
			for (int p = row_offsets_[i]; p < row_offsets_[i + 1]; ++p)
				d(i, column_indices_[p]) = values_[p];
		return d;
	}

	Eigen::SparseMatrix<double> SparseMatrix::to_eigen() const
	{
		// Eigen's row-major map shares the layout; copy into column-major for the factorizations.
		Eigen::Map<const Eigen::SparseMatrix<double, Eigen::RowMajor>> view(
			rows_, cols_, static_cast<Eigen::Index>(values_.size()), row_offsets_.data(), column_indices_.data(),
			values_.data());
		return Eigen::SparseMatrix<double>(view);
	}

	Eigen::VectorXd matvec(const SparseMatrix &m, const Eigen::VectorXd &x)
	{
		if (x.size() != m.cols())
			throw DimensionMismatch("matvec: matrix " + dims(m.rows(), m.cols()) + " with vector of length " + std::to_string(x.size()));
		Eigen::VectorXd y(m.rows());
		const auto &off = m.row_offsets();
		const auto &col = m.column_indices();
		const auto &val = m.values();
		for (int i = 0; i < m.rows(); ++i)
		{
			double acc = 0.0;
			for (int p = off[i]; p < off[i + 1]; ++p)
				acc += val[p] * x[col[p]];
			y[i] = acc;
		}
		return y;
	}

	SparseMatrix add_scaled(const SparseMatrix &m, const SparseMatrix &n, double alpha, double beta)
	{
		if (m.rows() != n.rows() || m.cols() != n.cols())
			throw DimensionMismatch("add_scaled: " + dims(m.rows(), m.cols()) + " vs " + dims(n.rows(), n.cols()));
		std::vector<int> offsets(m.rows() + 1, 0), cols;
		std::vector<double> vals;
		cols.reserve(m.nnz() + n.nnz());
		vals.reserve(m.nnz() + n.nnz());
		for (int i = 0; i < m.rows(); ++i)
		{
			int p = m.row_offsets()[i], pe = m.row_offsets()[i + 1];
			int q = n.row_offsets()[i], qe = n.row_offsets()[i + 1];
			while (p < pe || q < qe)
			{
				const int cp = p < pe ? m.column_indices()[p] : std::numeric_limits<int>::max();
				const int cq = q < qe ? n.column_indices()[q] : std::numeric_limits<int>::max();
				if (cp == cq)
				{
					cols.push_back(cp);
					vals.push_back(alpha * m.values()[p++] + beta * n.values()[q++]);
				}
				else if (cp < cq)
				{
					cols.push_back(cp);
					vals.push_back(alpha * m.values()[p++]);
				}
				else
				{
					cols.push_back(cq);
					vals.push_back(beta * n.values()[q++]);
				}
			}
			offsets[i + 1] = static_cast<int>(cols.size());
		}
		return SparseMatrix(m.rows(), m.cols(), std::move(offsets), std::move(cols), std::move(vals));
	}

	SparseMatrix transpose(const SparseMatrix &m)
	{
		std::vector<int> offsets(m.cols() + 1, 0);
		for (int c : m.column_indices())
			++offsets[c + 1];
		std::partial_sum(offsets.begin(), offsets.end(), offsets.begin());
		std::vector<int> cols(m.nnz());
		std::vector<double> vals(m.nnz());
		std::vector<int> next(offsets.begin(), offsets.end() - 1);
		for (int i = 0; i < m.rows(); ++i)
			for (int p = m.row_offsets()[i]; p < m.row_offsets()[i + 1]; ++p)
			{
				const int dst = next[m.column_indices()[p]]++;
				cols[dst] = i;
				vals[dst] = m.values()[p];
			}
		return SparseMatrix(m.cols(), m.rows(), std::move(offsets), std::move(cols), std::move(vals));
	}

	SparseMatrix scaled(const SparseMatrix &m, double alpha)
	{
		SparseMatrix out = m;
		for (double &v : out.values_mutable())
			v *= alpha;
		return out;
	}

	double frobenius_norm(const SparseMatrix &m)
	{
		double s = 0.0;
		for (double v : m.values())
			s += v * v;
		return std::sqrt(s);
	}

	double bilinear(const SparseMatrix &m, const Eigen::VectorXd &x, const Eigen::VectorXd &y)
	{
		if (x.size() != m.rows())
			throw DimensionMismatch("bilinear: left vector length " + std::to_string(x.size()) + " vs " + dims(m.rows(), m.cols()));
		return x.dot(matvec(m, y));
	}

	// ---------------------------------------------------------------------------

	BlockSystem::BlockSystem(int block_count, int block_size)
		: s_(block_count), n_(block_size), blocks_(static_cast<std::size_t>(block_count) * block_count),
		  rhs_(Eigen::VectorXd::Zero(static_cast<Eigen::Index>(block_count) * block_size))
	{
	}

	void BlockSystem::add_term(int i, int j, const SparseMatrix &matrix, double scale)
	{
		if (matrix.rows() != n_ || matrix.cols() != n_)
			throw DimensionMismatch("block (" + std::to_string(i) + ", " + std::to_string(j) + "): expected " + dims(n_, n_) + ", got " + dims(matrix.rows(), matrix.cols()));
		blocks_[i * s_ + j].push_back({&matrix, scale});
	}

	SparseMatrix BlockSystem::flatten() const
	{
		std::vector<Triplet> t;
		for (int bi = 0; bi < s_; ++bi)
			for (int bj = 0; bj < s_; ++bj)
				for (const Term &term : terms(bi, bj))
				{
					const SparseMatrix &m = *term.matrix;
					for (int i = 0; i < n_; ++i)
						for (int p = m.row_offsets()[i]; p < m.row_offsets()[i + 1]; ++p)
							t.push_back({bi * n_ + i, bj * n_ + m.column_indices()[p], term.scale * m.values()[p]});
				}
		return SparseMatrix::from_triplets(s_ * n_, s_ * n_, t);
	}

	Eigen::VectorXd BlockSystem::apply(const Eigen::VectorXd &x) const
	{
		if (x.size() != static_cast<Eigen::Index>(s_) * n_)
			throw DimensionMismatch("block apply: vector length " + std::to_string(x.size()));
		Eigen::VectorXd y = Eigen::VectorXd::Zero(x.size());
		for (int bi = 0; bi < s_; ++bi)
			for (int bj = 0; bj < s_; ++bj)
				for (const Term &term : terms(bi, bj))
					y.segment(bi * n_, n_) += term.scale * matvec(*term.matrix, x.segment(bj * n_, n_));
		return y;
	}

	// ---------------------------------------------------------------------------

	void write_matrix_market(const SparseMatrix &m, std::ostream &os)
	{
		os << "%%MatrixMarket matrix coordinate real general\n"
		   << m.rows() << ' ' << m.cols() << ' ' << m.nnz() << '\n'
		   << std::setprecision(std::numeric_limits<double>::max_digits10);
		for (int i = 0; i < m.rows(); ++i)
			for (int p = m.row_offsets()[i]; p < m.row_offsets()[i + 1]; ++p)
				os << i + 1 << ' ' << m.column_indices()[p] + 1 << ' ' << m.values()[p] << '\n';
	}

	void write_matrix_market(const SparseMatrix &m, const std::filesystem::path &path)
	{
		std::ofstream os(path);
		if (!os)
			throw IoError("cannot open " + path.string() + " for writing");
		write_matrix_market(m, os);
	}
} // namespace alesurf
