#include <alesurf/experiment.hpp>

#include <charconv>
#include <fstream>
#include <sstream>

namespace alesurf
{
	std::string format_double(double value)
	{
		char buf[64];
		const auto res = std::to_chars(buf, buf + sizeof(buf), value);
		return std::string(buf, res.ptr);
	}

	std::string csv_row(const ErrorReport &r)
	{
		std::string row;
		row += r.method + ',' + r.motion + ',' + std::to_string(r.refinement);
		for (double v : {r.h, r.tau, r.err_M, r.err_A, r.min_angle_final, r.offsurface_drift, r.wall_ms})
			row += ',' + format_double(v);
		return row;
	}

	void write_csv(const std::vector<ErrorReport> &rows, std::ostream &os)
	{
		os << csv_header << '\n';
		for (const ErrorReport &r : rows)
			os << csv_row(r) << '\n';
	}

	void write_csv(const std::vector<ErrorReport> &rows, const std::filesystem::path &path)
	{
		std::ofstream os(path);
		if (!os)
			throw IoError("cannot open " + path.string() + " for writing");
		write_csv(rows, os);
		if (!os)
			throw IoError("failed writing " + path.string());
	}

	namespace
	{
		double parse_double(const std::string &field, std::size_t line)
		{
			double v = 0.0;
			const auto res = std::from_chars(field.data(), field.data() + field.size(), v);
			if (res.ec != std::errc() || res.ptr != field.data() + field.size())
				throw IoError("CSV line " + std::to_string(line) + ": bad number '" + field + "'");
			return v;
		}
	} // namespace

	std::vector<ErrorReport> read_csv(std::istream &is)
	{
		std::string line;
		if (!std::getline(is, line))
			throw IoError("CSV: empty input");
		if (!line.empty() && line.back() == '\r')
			line.pop_back();
		if (line != csv_header)
			throw IoError("CSV: unexpected header '" + line + "'");

		std::vector<ErrorReport> rows;
		for (std::size_t lineno = 2; std::getline(is, line); ++lineno)
		{
			if (!line.empty() && line.back() == '\r')
				line.pop_back();
			if (line.empty())
				continue;
			std::vector<std::string> f;
			std::istringstream ls(line);
			for (std::string cell; std::getline(ls, cell, ',');)
				f.push_back(cell);
			if (f.size() != 10)
				throw IoError("CSV line " + std::to_string(lineno) + ": expected 10 columns, got " + std::to_string(f.size()));
			ErrorReport r;
			r.method = f[0];
			r.motion = f[1];
			r.refinement = static_cast<int>(parse_double(f[2], lineno));
			r.h = parse_double(f[3], lineno);
			r.tau = parse_double(f[4], lineno);
			r.err_M = parse_double(f[5], lineno);
			r.err_A = parse_double(f[6], lineno);
			r.min_angle_final = parse_double(f[7], lineno);
			r.offsurface_drift = parse_double(f[8], lineno);
			r.wall_ms = parse_double(f[9], lineno);
			rows.push_back(std::move(r));
		}
		return rows;
	}

	std::vector<ErrorReport> read_csv(const std::filesystem::path &path)
	{
		std::ifstream is(path);
		if (!is)
			throw IoError("cannot open " + path.string());
		return read_csv(is);
	}
} // namespace alesurf
