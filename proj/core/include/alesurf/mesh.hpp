#pragma once

#include <array>
#include <cstddef>
#include <filesystem>
#include <string>
#include <vector>

#include <alesurf/geometry.hpp>

namespace alesurf
{
	enum class MotionMode
	{
		ALE,
		Lagrangian,
		Stationary
	};

	std::string to_string(MotionMode mode);

	using Triangle = std::array<int, 3>;

	/// Triangulated surface snapshot. Connectivity is never modified by motion;
	/// only node coordinates and the time stamp change.
	struct SurfaceMesh
	{
		std::vector<Vec3> nodes;
		std::vector<Vec3> ref_nodes;
		std::vector<Triangle> triangles; ///< counterclockwise w.r.t. the outward normal
		double time = 0.0;
		MotionMode motion = MotionMode::ALE;

		std::size_t num_nodes() const { return nodes.size(); }
		std::size_t num_triangles() const { return triangles.size(); }
	};

	struct MeshQuality
	{
		double min_angle = 0; ///< radians
		double max_aspect = 0; ///< circumradius / (2 inradius)
		double h = 0;          ///< max element diameter
	};

	inline constexpr int max_refinement = 6;

	/// Unit-sphere icosphere: the icosahedron subdivided `refinement` times.
	SurfaceMesh build_icosphere(int refinement);

	/// Icosphere mapped onto the initial surface and projected onto it.
	/// Has 10 * 4^r + 2 nodes and 20 * 4^r triangles.
	SurfaceMesh build_initial_mesh(const LevelSetSurface &surface, int refinement,
								   MotionMode motion = MotionMode::ALE);

	/// Nodes placed at ale_position(ref_node, t); requires motion == ALE.
	SurfaceMesh move_nodes_ale(const LevelSetSurface &surface, const SurfaceMesh &mesh, double t);

	/// Throws DegenerateElement if any triangle has area <= 1e-14.
	MeshQuality mesh_quality(const SurfaceMesh &mesh);

	double triangle_area(const Vec3 &p0, const Vec3 &p1, const Vec3 &p2);

	/// V - E + F.
	int euler_characteristic(const SurfaceMesh &mesh);

	/// True when every edge is shared by exactly two triangles with opposite orientation.
	bool is_closed_oriented_manifold(const SurfaceMesh &mesh);

	/// Enclosed volume by the divergence theorem; positive for outward orientation.
	double signed_volume(const SurfaceMesh &mesh);

	/// max_i |d(a_i, mesh.time)|.
	double max_node_residual(const LevelSetSurface &surface, const SurfaceMesh &mesh);

	/// ASCII OFF ("OFF", "V F 0", coordinates, "3 i j k"); indices 0-based.
	void write_off(const SurfaceMesh &mesh, const std::filesystem::path &path);
	void write_off(const SurfaceMesh &mesh, std::ostream &os);
	/// Imported nodes become both current and reference nodes at time 0.
	SurfaceMesh read_off(const std::filesystem::path &path, MotionMode motion = MotionMode::ALE);
	SurfaceMesh read_off(std::istream &is, MotionMode motion = MotionMode::ALE);
} // namespace alesurf
