// Command-line driver: single runs and (tau, refinement) sweeps written as CSV.

#include <alesurf/experiment.hpp>

#include <CLI11.hpp>

#include <cmath>
#include <iomanip>
#include <iostream>
#include <string>
#include <vector>

namespace
{
	constexpr int exit_ok = 0;
	constexpr int exit_solver_failure = 2;
	constexpr int exit_config_error = 3;

	struct CommonOptions
	{
		std::string method = "ie";
		std::string motion = "ale";
		double t_end = 0.6;
		std::string out;
		double solver_tol = 1e-10;
		bool zero_initial = false;
		std::string bdf_start = "exact";
	};

	void add_common(CLI::App *cmd, CommonOptions &o)
	{
		cmd->add_option("--method", o.method, "ie|radau3|radau5|bdf1..bdf5")->capture_default_str();
		cmd->add_option("--motion", o.motion, "ale|lagrangian|stationary_sphere")->capture_default_str();
		cmd->add_option("--t-end", o.t_end, "final time")->capture_default_str();
		cmd->add_option("--out", o.out, "CSV output path (stdout when omitted)");
		cmd->add_option("--solver-tol", o.solver_tol, "relative residual of the linear solves")->capture_default_str();
		cmd->add_flag("--zero-initial", o.zero_initial, "u = 0 initial data and zero forcing");
		cmd->add_option("--bdf-start", o.bdf_start, "exact|radau: BDF starting values")->capture_default_str();
	}

	alesurf::ExperimentConfig to_config(const CommonOptions &o)
	{
		alesurf::ExperimentConfig c;
		c.method = o.method;
		c.motion = alesurf::parse_motion(o.motion);
		c.t_end = o.t_end;
		c.out_path = o.out;
		c.solver_tol = o.solver_tol;
		c.initial_data = o.zero_initial ? alesurf::InitialData::Zero : alesurf::InitialData::Manufactured;
		if (o.bdf_start == "exact")
			c.bdf_start = alesurf::BdfStart::ExactSolution;
		else if (o.bdf_start == "radau")
			c.bdf_start = alesurf::BdfStart::RadauBootstrap;
		else
			throw alesurf::ConfigError("unknown --bdf-start '" + o.bdf_start + "' (expected exact or radau)");
		return c;
	}

	void emit(const std::vector<alesurf::ErrorReport> &rows, const std::string &out)
	{
		if (out.empty())
			alesurf::write_csv(rows, std::cout);
		else
			alesurf::write_csv(rows, std::filesystem::path(out));
	}

	void print_eoc(const alesurf::SweepResult &r)
	{
		std::ostream &os = std::cerr;
		os << std::setprecision(4);
		os << "temporal EOC (finest refinement)\n";
		for (const auto &e : r.temporal)
			os << "  tau " << e.coarse << " -> " << e.fine << ": M " << e.eoc_M << ", A " << e.eoc_A << '\n';
		os << "spatial EOC (smallest tau)\n";
		for (const auto &e : r.spatial)
			os << "  h " << e.coarse << " -> " << e.fine << ": M " << e.eoc_M << ", A " << e.eoc_A << '\n';
	}
} // namespace

int main(int argc, char **argv)
{
	CLI::App app{"ALE evolving-surface finite elements: convergence experiments"};
	app.require_subcommand(1);

	CommonOptions run_opts;
	int refine = 2;
	double tau = 0.1;
	CLI::App *run = app.add_subcommand("run", "single experiment");
	add_common(run, run_opts);
	run->add_option("--refine", refine, "icosphere refinement level")->capture_default_str();
	run->add_option("--tau", tau, "time step")->capture_default_str();

	CommonOptions sweep_opts;
	std::vector<double> tau_list;
	for (int j = 0; j <= 5; ++j)
		tau_list.push_back(0.1 * std::ldexp(1.0, -j));
	std::vector<int> refine_list{1, 2, 3};
	CLI::App *sweep = app.add_subcommand("sweep", "tau x refinement sweep with EOC");
	add_common(sweep, sweep_opts);
	sweep->add_option("--tau-list", tau_list, "time steps")->delimiter(',');
	sweep->add_option("--refine-list", refine_list, "refinement levels")->delimiter(',');

	try
	{
		app.parse(argc, argv);
	}
	catch (const CLI::Success &e)
	{
		return app.exit(e);
	}
	catch (const CLI::ParseError &e)
	{
		app.exit(e);
		return exit_config_error;
	}

	try
	{
		if (*run)
		{
			alesurf::ExperimentConfig config = to_config(run_opts);
			config.refinement = refine;
			config.tau = tau;
			emit({alesurf::run_experiment(config)}, run_opts.out);
		}
		else
		{
			const alesurf::ExperimentConfig config = to_config(sweep_opts);
			for (double t : tau_list)
			{
				alesurf::ExperimentConfig check = config;
				check.tau = t;
				alesurf::step_count(check);
			}
			const alesurf::SweepResult result = alesurf::run_sweep(config, tau_list, refine_list);
			emit(result.rows, sweep_opts.out);
			print_eoc(result);
		}
	}
	catch (const alesurf::ConfigError &e)
	{
		std::cerr << "configuration error: " << e.what() << '\n';
		return exit_config_error;
	}
	catch (const alesurf::IoError &e)
	{
		std::cerr << "I/O error: " << e.what() << '\n';
		return exit_config_error;
	}
	catch (const alesurf::Error &e)
	{
		std::cerr << "solver failure: " << e.what() << '\n';
		return exit_solver_failure;
	}
	return exit_ok;
}
