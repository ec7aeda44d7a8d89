#include <alesurf/mesh.hpp>
#include <alesurf/errors.hpp>

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <set>
#include <utility>

namespace alesurf
{
	std::string to_string(MotionMode mode)
	{
		switch (mode)
		{
		case MotionMode::ALE:
			return "ale";
		case MotionMode::Lagrangian:
			return "lagrangian";
		case MotionMode::Stationary:
			return "stationary";
		}
		return "unknown";
	}

	namespace
	{
		SurfaceMesh icosahedron()
		{
			const double phi = (1.0 + std::sqrt(5.0)) / 2.0;
			SurfaceMesh m;
			m.nodes = {
				{-1, phi, 0}, {1, phi, 0}, {-1, -phi, 0}, {1, -phi, 0},
				{0, -1, phi}, {0, 1, phi}, {0, -1, -phi}, {0, 1, -phi},
				{phi, 0, -1}, {phi, 0, 1}, {-phi, 0, -1}, {-phi, 0, 1}};
			for (Vec3 &p : m.nodes)
				p.normalize();
			m.triangles = {
				{0, 11, 5}, {0, 5, 1}, {0, 1, 7}, {0, 7, 10}, {0, 10, 11},
				{1, 5, 9}, {5, 11, 4}, {11, 10, 2}, {10, 7, 6}, {7, 1, 8},
				{3, 9, 4}, {3, 4, 2}, {3, 2, 6}, {3, 6, 8}, {3, 8, 9},
				{4, 9, 5}, {2, 4, 11}, {6, 2, 10}, {8, 6, 7}, {9, 8, 1}};
			return m;
		}

		void subdivide(SurfaceMesh &m)
		{
			std::map<std::pair<int, int>, int> midpoint;
			auto mid = [&](int i, int j) {
				const auto key = std::minmax(i, j);
				auto it = midpoint.find(key);
				if (it != midpoint.end())
					return it->second;
				const int idx = static_cast<int>(m.nodes.size());
				m.nodes.push_back((0.5 * (m.nodes[i] + m.nodes[j])).normalized());
				midpoint.emplace(key, idx);
				return idx;
			};
			std::vector<Triangle> refined;
			refined.reserve(4 * m.triangles.size());
			for (const Triangle &t : m.triangles)
			{
				const int a = mid(t[0], t[1]);
				const int b = mid(t[1], t[2]);
				const int c = mid(t[2], t[0]);
				refined.push_back({t[0], a, c});
				refined.push_back({t[1], b, a});
				refined.push_back({t[2], c, b});
				refined.push_back({a, b, c});
			}
			m.triangles = std::move(refined);
		}

		double interior_angle(const Vec3 &apex, const Vec3 &p, const Vec3 &q)
		{
			const Vec3 u = p - apex, v = q - apex;
			return std::atan2(u.cross(v).norm(), u.dot(v));
		}
	} // namespace

	SurfaceMesh build_icosphere(int refinement)
	{
		if (refinement < 0 || refinement > max_refinement)
			throw ConfigError("refinement must lie in [0, " + std::to_string(max_refinement) + "], got " + std::to_string(refinement));
		SurfaceMesh m = icosahedron();
		for (int r = 0; r < refinement; ++r)
			subdivide(m);
		m.ref_nodes = m.nodes;
		m.motion = MotionMode::Stationary;
		return m;
	}

	SurfaceMesh build_initial_mesh(const LevelSetSurface &surface, int refinement, MotionMode motion)
	{
		SurfaceMesh m = build_icosphere(refinement);
		for (Vec3 &p : m.nodes)
			p = project_to_surface(surface, surface.from_unit_sphere(p), 0.0, 1e-12);
		m.ref_nodes = m.nodes;
		m.time = 0.0;
		m.motion = motion;
		return m;
	}

	SurfaceMesh move_nodes_ale(const LevelSetSurface &surface, const SurfaceMesh &mesh, double t)
	{
		if (mesh.motion != MotionMode::ALE)
			throw ConfigError("move_nodes_ale requires an ALE mesh, got " + to_string(mesh.motion));
		SurfaceMesh out = mesh;
		for (std::size_t i = 0; i < out.nodes.size(); ++i)
			out.nodes[i] = surface.ale_position(mesh.ref_nodes[i], t);
		out.time = t;
		return out;
	}

	double triangle_area(const Vec3 &p0, const Vec3 &p1, const Vec3 &p2)
	{
		return 0.5 * (p1 - p0).cross(p2 - p0).norm();
	}

	MeshQuality mesh_quality(const SurfaceMesh &mesh)
	{
		MeshQuality q;
		q.min_angle = std::numbers::pi;
		for (std::size_t e = 0; e < mesh.triangles.size(); ++e)
		{
			const Triangle &t = mesh.triangles[e];
			const Vec3 &p0 = mesh.nodes[t[0]], &p1 = mesh.nodes[t[1]], &p2 = mesh.nodes[t[2]];
			const double area = triangle_area(p0, p1, p2);
			if (!(area > 1e-14))
				throw DegenerateElement(e, area);

			const double a = (p1 - p2).norm(), b = (p2 - p0).norm(), c = (p0 - p1).norm();
			q.min_angle = std::min({q.min_angle, interior_angle(p0, p1, p2), interior_angle(p1, p2, p0),
									interior_angle(p2, p0, p1)});
			const double circumradius = a * b * c / (4.0 * area);
			const double inradius = 2.0 * area / (a + b + c);
			q.max_aspect = std::max(q.max_aspect, circumradius / (2.0 * inradius));
			q.h = std::max({q.h, a, b, c});
		}
		return q;
	}

	int euler_characteristic(const SurfaceMesh &mesh)
	{
		std::set<std::pair<int, int>> edges;
		for (const Triangle &t : mesh.triangles)
			for (int k = 0; k < 3; ++k)
				edges.insert(std::minmax(t[k], t[(k + 1) % 3]));
		return static_cast<int>(mesh.nodes.size()) - static_cast<int>(edges.size()) + static_cast<int>(mesh.triangles.size());
	}

	bool is_closed_oriented_manifold(const SurfaceMesh &mesh)
	{
		std::map<std::pair<int, int>, int> directed;
		for (const Triangle &t : mesh.triangles)
			for (int k = 0; k < 3; ++k)
				if (++directed[{t[k], t[(k + 1) % 3]}] > 1)
					return false;
		for (const auto &[edge, count] : directed)
			if (!directed.contains({edge.second, edge.first}))
				return false;
		return true;
	}

	double signed_volume(const SurfaceMesh &mesh)
	{
		double vol = 0.0;
		for (const Triangle &t : mesh.triangles)
			vol += mesh.nodes[t[0]].dot(mesh.nodes[t[1]].cross(mesh.nodes[t[2]]));
		return vol / 6.0;
	}

	double max_node_residual(const LevelSetSurface &surface, const SurfaceMesh &mesh)
	{
		double r = 0.0;
		for (const Vec3 &p : mesh.nodes)
			r = std::max(r, std::abs(surface.d(p, mesh.time)));
		return r;
	}
} // namespace alesurf
