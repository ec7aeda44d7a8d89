#pragma once

#include <array>
#include <functional>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include <alesurf/geometry.hpp>
#include <alesurf/mesh.hpp>
#include <alesurf/quadrature.hpp>
#include <alesurf/sparse.hpp>

namespace alesurf
{
	/// Area and (constant) tangential gradients of the barycentric coordinates of a
	/// flat triangle, computed in the element plane from edge vectors.
	struct ElementGeometry
	{
		double area = 0;
		std::array<Vec3, 3> grad;
	};

	/// Throws DegenerateElement (reporting `element`) if the area is <= 1e-14.
	ElementGeometry element_geometry(const Vec3 &p0, const Vec3 &p1, const Vec3 &p2, std::size_t element = 0);

	using SurfaceFunction = std::function<double(const Vec3 &, double)>;

	/// Matrices and load of d/dt(M a) + A a + B a = b at one time instant.
	struct AssembledSystem
	{
		double t = 0;
		SparseMatrix M;
		SparseMatrix A;
		SparseMatrix B;
		Eigen::VectorXd load;
	};

	/// P1 assembly on a fixed connectivity. The nodal sparsity pattern and the
	/// element-to-value scatter map are built once and reused for every snapshot.
	class Assembler
	{
	public:
		explicit Assembler(const std::vector<Triangle> &triangles, std::size_t num_nodes);
		explicit Assembler(const SurfaceMesh &mesh);

		std::size_t num_nodes() const { return n_; }

		/// Local matrix |E|/12 (1 + delta_ij).
		SparseMatrix mass(const SurfaceMesh &mesh) const;
		/// Local matrix |E| grad(l_i) . grad(l_j).
		SparseMatrix stiffness(const SurfaceMesh &mesh) const;
		/// B_kj = int chi_j (W_h - V_h) . grad chi_k with the three-midpoint rule (exact).
		SparseMatrix b_matrix(const SurfaceMesh &mesh, std::span<const Vec3> w_nodes,
							  std::span<const Vec3> v_nodes) const;
		/// All-zero matrix on the nodal pattern.
		SparseMatrix zero() const;
		/// b_k = sum_E |E| sum_q w_q f(x_q, t) chi_k(x_q), degree-5 rule.
		Eigen::VectorXd load(const SurfaceMesh &mesh, const SurfaceFunction &f, double t) const;

	private:
		SparseMatrix scatter(const std::vector<std::array<double, 9>> &local) const;

		std::size_t n_;
		std::vector<Triangle> triangles_;
		SparseMatrix pattern_;
		std::vector<std::array<int, 9>> slots_;
		QuadratureRule b_rule_;
		QuadratureRule load_rule_;
	};

	SparseMatrix assemble_mass(const SurfaceMesh &mesh);
	SparseMatrix assemble_stiffness(const SurfaceMesh &mesh);
	/// Throws DimensionMismatch when the velocity arrays do not match the node count.
	SparseMatrix assemble_b_matrix(const SurfaceMesh &mesh, std::span<const Vec3> w_nodes,
								   std::span<const Vec3> v_nodes);
	Eigen::VectorXd assemble_load(const SurfaceMesh &mesh, const SurfaceFunction &f, double t);

	/// sqrt(e^T M e).
	double m_norm(const SparseMatrix &M, const Eigen::VectorXd &e);
	/// sqrt(max(e^T A e, 0)); values below -1e-14 are still clamped.
	double a_seminorm(const SparseMatrix &A, const Eigen::VectorXd &e);

	/// Nodal interpolant of u(., t) at the mesh nodes.
	Eigen::VectorXd interpolate(const SurfaceMesh &mesh, const std::function<double(const Vec3 &, double)> &u, double t);
} // namespace alesurf
