#pragma once

#include <cstddef>
#include <filesystem>
#include <functional>
#include <iosfwd>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include <alesurf/errors.hpp>
#include <alesurf/mesh.hpp>
#include <alesurf/sparse.hpp>

namespace alesurf
{
	enum class ExperimentMotion
	{
		Ale,
		Lagrangian,
		StationarySphere
	};

	/// "ale", "lagrangian", "stationary_sphere".
	std::string to_string(ExperimentMotion motion);
	/// Throws ConfigError.
	ExperimentMotion parse_motion(const std::string &name);

	enum class InitialData
	{
		Manufactured, ///< u = exp(-6t) x1 x2 with its manufactured forcing
		Zero          ///< u = 0, f = 0
	};

	enum class BdfStart
	{
		ExactSolution, ///< nodal values of the exact solution at t_0..t_{k-1}
		RadauBootstrap ///< k-1 steps of Radau IIA (s = 3) from the initial data
	};

	struct ExperimentConfig
	{
		std::string method = "ie";
		int refinement = 2;
		double tau = 0.1;
		double t_end = 0.6;
		ExperimentMotion motion = ExperimentMotion::Ale;
		std::filesystem::path out_path;
		double solver_tol = 1e-10;
		InitialData initial_data = InitialData::Manufactured;
		BdfStart bdf_start = BdfStart::ExactSolution;
	};

	/// Number of steps t_end / tau; throws ConfigError unless it is a positive whole
	/// number up to a relative rounding tolerance of 1e-9.
	long step_count(const ExperimentConfig &config);
	/// Throws ConfigError describing the first invalid field.
	void validate(const ExperimentConfig &config);

	inline constexpr double not_available = std::numeric_limits<double>::quiet_NaN();

	struct ErrorReport
	{
		std::string method;
		std::string motion;
		int refinement = 0;
		double h = 0;
		double tau = 0;
		double err_M = 0;
		double err_A = 0;
		double min_angle_final = 0;
		double offsurface_drift = 0;
		double wall_ms = 0;
		long steps = 0;
		double eoc_time = not_available;
		double eoc_space = not_available;
	};

	/// A module error raised while time stepping, tagged with the step and time.
	class ExperimentFailure : public Error
	{
	public:
		ExperimentFailure(const std::string &what, long step, double time, bool solver_failure)
			: Error(what), step_(step), time_(time), solver_failure_(solver_failure) {}
		long step() const { return step_; }
		double time() const { return time_; }
		bool solver_failure() const { return solver_failure_; }

	private:
		long step_;
		double time_;
		bool solver_failure_;
	};

	/// Optional per-step observer: (step index, time, coefficient vector, mass matrix).
	using StepObserver = std::function<void(long, double, const Eigen::VectorXd &, const SparseMatrix &)>;

	/// Full discretization from t = 0 to t_end: builds the mesh, moves it and
	/// integrates the semidiscrete system, then measures e = a_N - u(nodes, T)
	/// in the M(T) norm and the A(T) seminorm of the final mesh.
	ErrorReport run_experiment(const ExperimentConfig &config, const StepObserver &observer = {});

	/// log(e1 / e2) / log(x1 / x2); log2(e1 / e2) for halving.
	double eoc(double e1, double x1, double e2, double x2);

	struct EocEntry
	{
		double coarse = 0; ///< tau or h of the coarser run
		double fine = 0;
		double eoc_M = 0;
		double eoc_A = 0;
	};

	struct SweepResult
	{
		std::vector<ErrorReport> rows;
		std::vector<EocEntry> temporal; ///< consecutive taus at the finest refinement
		std::vector<EocEntry> spatial;  ///< consecutive refinements at the smallest tau
	};

	/// Runs every (refinement, tau) cell; rows ordered by refinement, then tau as given.
	/// Temporal EOC uses consecutive entries of tau_list; spatial EOC is log2 of
	/// consecutive error ratios between refinements.
	SweepResult run_sweep(const ExperimentConfig &base, const std::vector<double> &tau_list,
						  const std::vector<int> &refinement_list);

	/// Temporal and spatial EOC recomputed from the error table alone.
	void compute_eoc(SweepResult &result);

	/// Exact header of the results CSV.
	inline constexpr const char *csv_header =
		"method,motion,refine,h,tau,err_M,err_A,min_angle_final,offsurface_drift,wall_ms";

	/// Shortest round-trip decimal representation.
	std::string format_double(double value);
	std::string csv_row(const ErrorReport &report);
	void write_csv(const std::vector<ErrorReport> &rows, std::ostream &os);
	/// Writes header + rows; throws IoError.
	void write_csv(const std::vector<ErrorReport> &rows, const std::filesystem::path &path);
	/// Throws IoError on a missing file or a header/column mismatch.
	std::vector<ErrorReport> read_csv(std::istream &is);
	std::vector<ErrorReport> read_csv(const std::filesystem::path &path);
} // namespace alesurf
