#include <alesurf/assembly.hpp>
#include <alesurf/errors.hpp>

#include <algorithm>
#include <cmath>

namespace alesurf
{
	ElementGeometry element_geometry(const Vec3 &p0, const Vec3 &p1, const Vec3 &p2, std::size_t element)
	{
		const Vec3 n = (p1 - p0).cross(p2 - p0);
		const double n2 = n.squaredNorm();
		ElementGeometry g;
		g.area = 0.5 * std::sqrt(n2);
		if (!(g.area > 1e-14))
			throw DegenerateElement(element, g.area);
		// grad l_i = n x (p_k - p_j) / |n|^2 for the cyclic triple (i, j, k).
		g.grad[0] = n.cross(p2 - p1) / n2;
		g.grad[1] = n.cross(p0 - p2) / n2;
		g.grad[2] = n.cross(p1 - p0) / n2;
		return g;
	}

	Assembler::Assembler(const std::vector<Triangle> &triangles, std::size_t num_nodes)
		: n_(num_nodes), triangles_(triangles), b_rule_(triangle_rule(2)), load_rule_(triangle_rule(5))
	{
		std::vector<Triplet> t;
		t.reserve(9 * triangles.size());
		for (const Triangle &tri : triangles)
			for (int a = 0; a < 3; ++a)
				for (int b = 0; b < 3; ++b)
					t.push_back({tri[a], tri[b], 0.0});
		const int n = static_cast<int>(num_nodes);
		pattern_ = SparseMatrix::from_triplets(n, n, t);
		slots_.resize(triangles.size());
		for (std::size_t e = 0; e < triangles.size(); ++e)
			for (int a = 0; a < 3; ++a)
				for (int b = 0; b < 3; ++b)
					slots_[e][3 * a + b] = static_cast<int>(pattern_.find(triangles[e][a], triangles[e][b]));
	}

	Assembler::Assembler(const SurfaceMesh &mesh) : Assembler(mesh.triangles, mesh.num_nodes()) {}

	SparseMatrix Assembler::scatter(const std::vector<std::array<double, 9>> &local) const
	{
		SparseMatrix out = pattern_;
		auto &val = out.values_mutable();
		std::fill(val.begin(), val.end(), 0.0);
		for (std::size_t e = 0; e < local.size(); ++e)
			for (int k = 0; k < 9; ++k)
				val[slots_[e][k]] += local[e][k];
		return out;
	}

	SparseMatrix Assembler::zero() const
	{
		SparseMatrix out = pattern_;
		std::fill(out.values_mutable().begin(), out.values_mutable().end(), 0.0);
		return out;
	}

	SparseMatrix Assembler::mass(const SurfaceMesh &mesh) const
	{
		std::vector<std::array<double, 9>> local(triangles_.size());
		for (std::size_t e = 0; e < triangles_.size(); ++e)
		{
			const Triangle &t = triangles_[e];
			const double area = element_geometry(mesh.nodes[t[0]], mesh.nodes[t[1]], mesh.nodes[t[2]], e).area;
			for (int a = 0; a < 3; ++a)
				for (int b = 0; b < 3; ++b)
					local[e][3 * a + b] = area / 12.0 * (a == b ? 2.0 : 1.0);
		}
		return scatter(local);
	}

	SparseMatrix Assembler::stiffness(const SurfaceMesh &mesh) const
	{
		std::vector<std::array<double, 9>> local(triangles_.size());
		for (std::size_t e = 0; e < triangles_.size(); ++e)
		{
			const Triangle &t = triangles_[e];
			const ElementGeometry g = element_geometry(mesh.nodes[t[0]], mesh.nodes[t[1]], mesh.nodes[t[2]], e);
			for (int a = 0; a < 3; ++a)
				for (int b = 0; b < 3; ++b)
					local[e][3 * a + b] = g.area * g.grad[a].dot(g.grad[b]);
		}
		return scatter(local);
	}

	SparseMatrix Assembler::b_matrix(const SurfaceMesh &mesh, std::span<const Vec3> w_nodes,
									 std::span<const Vec3> v_nodes) const
	{
		if (w_nodes.size() != n_ || v_nodes.size() != n_)
			throw DimensionMismatch("B matrix: expected " + std::to_string(n_) + " nodal velocities, got " + std::to_string(w_nodes.size()) + " and " + std::to_string(v_nodes.size()));
		std::vector<std::array<double, 9>> local(triangles_.size());
		for (std::size_t e = 0; e < triangles_.size(); ++e)
		{
			const Triangle &t = triangles_[e];
			const ElementGeometry g = element_geometry(mesh.nodes[t[0]], mesh.nodes[t[1]], mesh.nodes[t[2]], e);
			const std::array<Vec3, 3> diff{w_nodes[t[0]] - v_nodes[t[0]], w_nodes[t[1]] - v_nodes[t[1]],
										   w_nodes[t[2]] - v_nodes[t[2]]};
			local[e].fill(0.0);
			for (std::size_t q = 0; q < b_rule_.size(); ++q)
			{
				const auto &l = b_rule_.points[q];
				const Vec3 dq = l[0] * diff[0] + l[1] * diff[1] + l[2] * diff[2];
				const double wq = g.area * b_rule_.weights[q];
				// row = test index k, column = trial index j
				for (int k = 0; k < 3; ++k)
				{
					const double transport = dq.dot(g.grad[k]);
					for (int j = 0; j < 3; ++j)
						local[e][3 * k + j] += wq * l[j] * transport;
				}
			}
		}
		return scatter(local);
	}

	Eigen::VectorXd Assembler::load(const SurfaceMesh &mesh, const SurfaceFunction &f, double t) const
	{
		Eigen::VectorXd b = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(n_));
		for (std::size_t e = 0; e < triangles_.size(); ++e)
		{
			const Triangle &tri = triangles_[e];
			const Vec3 &p0 = mesh.nodes[tri[0]], &p1 = mesh.nodes[tri[1]], &p2 = mesh.nodes[tri[2]];
			const double area = element_geometry(p0, p1, p2, e).area;
			for (std::size_t q = 0; q < load_rule_.size(); ++q)
			{
				const auto &l = load_rule_.points[q];
				const Vec3 x = l[0] * p0 + l[1] * p1 + l[2] * p2;
				const double fw = area * load_rule_.weights[q] * f(x, t);
				for (int k = 0; k < 3; ++k)
					b[tri[k]] += fw * l[k];
			}
		}
		return b;
	}

	SparseMatrix assemble_mass(const SurfaceMesh &mesh) { return Assembler(mesh).mass(mesh); }
	SparseMatrix assemble_stiffness(const SurfaceMesh &mesh) { return Assembler(mesh).stiffness(mesh); }

	SparseMatrix assemble_b_matrix(const SurfaceMesh &mesh, std::span<const Vec3> w_nodes,
								   std::span<const Vec3> v_nodes)
	{
		return Assembler(mesh).b_matrix(mesh, w_nodes, v_nodes);
	}

	Eigen::VectorXd assemble_load(const SurfaceMesh &mesh, const SurfaceFunction &f, double t)
	{
		return Assembler(mesh).load(mesh, f, t);
	}

	double m_norm(const SparseMatrix &M, const Eigen::VectorXd &e)
	{
		return std::sqrt(std::max(bilinear(M, e, e), 0.0));
	}

	double a_seminorm(const SparseMatrix &A, const Eigen::VectorXd &e)
	{
		return std::sqrt(std::max(bilinear(A, e, e), 0.0));
	}

	Eigen::VectorXd interpolate(const SurfaceMesh &mesh, const std::function<double(const Vec3 &, double)> &u, double t)
	{
		Eigen::VectorXd out(static_cast<Eigen::Index>(mesh.num_nodes()));
		for (std::size_t i = 0; i < mesh.num_nodes(); ++i)
			out[static_cast<Eigen::Index>(i)] = u(mesh.nodes[i], t);
		return out;
	}
} // namespace alesurf
