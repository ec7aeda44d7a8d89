#pragma once

#include <span>
#include <vector>

#include <alesurf/geometry.hpp>
#include <alesurf/mesh.hpp>
#include <alesurf/time_schemes.hpp>

namespace alesurf
{
	using NodeSet = std::vector<Vec3>;

	/// Tuning of the per-node implicit solves.
	struct NodeSolveOptions
	{
		double residual_tol = 1e-12;
		double jacobian_step = 1e-7;
		int max_iterations = 50;
	};

	/// Stage node positions Y_1..Y_s of one Runge-Kutta step of da/dt = V(a,t) nu(a,t);
	/// the last stage is the new node set (stiff accuracy). Each node's 3s stage
	/// unknowns are solved by damped Newton with a finite-difference Jacobian, with a
	/// step-size continuation fallback when the direct iteration stalls.
	/// Throws NodeSolveDiverged with the offending node index.
	std::vector<NodeSet> rk_node_stages(const LevelSetSurface &surface, const NodeSet &nodes, double t_n,
										double tau, const ButcherTableau &tab,
										const NodeSolveOptions &opts = {});

	/// One BDF step: solves sum_j delta_j a_{n-j} = tau V(a_n, t_n) nu(a_n, t_n) per node.
	/// `history` holds the k previous node sets, most recent first.
	NodeSet bdf_node_step(const LevelSetSurface &surface, std::span<const NodeSet> history, double t_new,
						  double tau, const BdfScheme &scheme, const NodeSolveOptions &opts = {});

	/// Classical explicit RK4 with `substeps` uniform substeps; used for BDF start-up nodes.
	NodeSet integrate_nodes_rk4(const LevelSetSurface &surface, const NodeSet &nodes, double t0, double t1,
								int substeps);

	/// Advances a Lagrangian mesh from t_n to t_n + tau with the given integrator.
	/// For BDF, `history` must hold the node sets at t_n, t_n - tau, ... (k sets, most recent first).
	SurfaceMesh advance_nodes_lagrangian(const LevelSetSurface &surface, const SurfaceMesh &mesh, double t_n,
										 double tau, const Integrator &scheme,
										 std::span<const NodeSet> history = {},
										 const NodeSolveOptions &opts = {});
} // namespace alesurf
