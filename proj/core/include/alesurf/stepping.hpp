#pragma once

#include <deque>
#include <functional>
#include <vector>

#include <Eigen/Dense>

#include <alesurf/assembly.hpp>
#include <alesurf/linear_solver.hpp>
#include <alesurf/mesh.hpp>
#include <alesurf/time_schemes.hpp>

namespace alesurf
{
	/// Returns M, A, B and the load at time t. `stage` is the Runge-Kutta stage
	/// index (0-based) or 0 for a BDF step.
	using SystemProvider = std::function<AssembledSystem(double t, int stage)>;

	struct HistoryEntry
	{
		double t = 0;
		Eigen::VectorXd alpha;
		SparseMatrix M;
	};

	/// Solution history for d/dt(M a) + A a + B a = b, most recent entry first.
	class SteppingState
	{
	public:
		SteppingState() = default;
		explicit SteppingState(double tau) : tau_(tau) {}

		double tau() const { return tau_; }
		double time() const { return history_.front().t; }
		const Eigen::VectorXd &current() const { return history_.front().alpha; }
		const SparseMatrix &current_mass() const { return history_.front().M; }
		const std::deque<HistoryEntry> &history() const { return history_; }
		std::size_t size() const { return history_.size(); }

		/// Pushes a new most-recent entry and keeps at most `keep` entries.
		/// Throws ConfigError unless times advance by tau.
		void push(HistoryEntry entry, std::size_t keep);

	private:
		double tau_ = 0;
		std::deque<HistoryEntry> history_;
	};

	/// One step of a stiffly accurate implicit Runge-Kutta method. The s stage
	/// equations M_ni a_ni + tau sum_j a_ij (A_nj + B_nj) a_nj = M_n a_n + tau sum_j a_ij b_nj
	/// are solved as one coupled system; the last stage becomes the new solution.
	SteppingState irk_step(SteppingState state, const SystemProvider &provider, const ButcherTableau &tab,
						   double tau, const SolverOptions &opts = {});

	/// One k-step BDF step: (delta_0 M_n + tau (A_n + B_n)) a_n = tau b_n - sum_{j>=1} delta_j M_{n-j} a_{n-j}.
	/// Throws InsufficientHistory when fewer than k entries are stored.
	SteppingState bdf_step(SteppingState state, const SystemProvider &provider, const BdfScheme &scheme,
						   double tau, const SolverOptions &opts = {});

	/// Nodal values of u(., t_i) on meshes[i], i = 0..k-1.
	std::vector<Eigen::VectorXd> bdf_starting_values(int k, const std::vector<SurfaceMesh> &meshes,
													 const std::function<double(const Vec3 &, double)> &u);
} // namespace alesurf
