#include <alesurf/mesh.hpp>
#include <alesurf/errors.hpp>

#include <fstream>
#include <iomanip>
#include <limits>
#include <sstream>

namespace alesurf
{
	void write_off(const SurfaceMesh &mesh, std::ostream &os)
	{
		os << "OFF\n"
		   << mesh.nodes.size() << ' ' << mesh.triangles.size() << " 0\n";
		os << std::setprecision(std::numeric_limits<double>::max_digits10);
		for (const Vec3 &p : mesh.nodes)
			os << p[0] << ' ' << p[1] << ' ' << p[2] << '\n';
		for (const Triangle &t : mesh.triangles)
			os << "3 " << t[0] << ' ' << t[1] << ' ' << t[2] << '\n';
	}

	void write_off(const SurfaceMesh &mesh, const std::filesystem::path &path)
	{
		std::ofstream os(path);
		if (!os)
			throw IoError("cannot open " + path.string() + " for writing");
		write_off(mesh, os);
	}

	namespace
	{
		// Next non-empty line with '#' comments stripped.
		bool next_content_line(std::istream &is, std::string &line)
		{
			while (std::getline(is, line))
			{
				if (const auto hash = line.find('#'); hash != std::string::npos)
					line.erase(hash);
				if (line.find_first_not_of(" \t\r") != std::string::npos)
					return true;
			}
			return false;
		}
	} // namespace

	SurfaceMesh read_off(std::istream &is, MotionMode motion)
	{
		std::string line;
		if (!next_content_line(is, line) || line.substr(line.find_first_not_of(" \t"), 3) != "OFF")
			throw IoError("OFF: missing header");

		// Counts may follow the keyword on the same line.
		std::istringstream header(line.substr(line.find("OFF") + 3));
		long nv = -1, nf = -1, ne = 0;
		if (!(header >> nv >> nf >> ne))
		{
			if (!next_content_line(is, line))
				throw IoError("OFF: missing counts line");
			std::istringstream counts(line);
			if (!(counts >> nv >> nf >> ne))
				throw IoError("OFF: malformed counts line '" + line + "'");
		}
		if (nv < 0 || nf < 0)
			throw IoError("OFF: negative counts");

		SurfaceMesh mesh;
		mesh.nodes.reserve(nv);
		for (long i = 0; i < nv; ++i)
		{
			if (!next_content_line(is, line))
				throw IoError("OFF: truncated vertex list");
			std::istringstream ls(line);
			Vec3 p;
			if (!(ls >> p[0] >> p[1] >> p[2]))
				throw IoError("OFF: malformed vertex line '" + line + "'");
			mesh.nodes.push_back(p);
		}
		mesh.triangles.reserve(nf);
		for (long f = 0; f < nf; ++f)
		{
			if (!next_content_line(is, line))
				throw IoError("OFF: truncated face list");
			std::istringstream ls(line);
			int n = 0;
			Triangle t{};
			if (!(ls >> n >> t[0] >> t[1] >> t[2]) || n != 3)
				throw IoError("OFF: only triangular faces are supported, got '" + line + "'");
			for (int idx : t)
				if (idx < 0 || idx >= nv)
					throw IoError("OFF: vertex index out of range in '" + line + "'");
			mesh.triangles.push_back(t);
		}
		mesh.ref_nodes = mesh.nodes;
		mesh.time = 0.0;
		mesh.motion = motion;
		return mesh;
	}

	SurfaceMesh read_off(const std::filesystem::path &path, MotionMode motion)
	{
		std::ifstream is(path);
		if (!is)
			throw IoError("cannot open " + path.string());
		return read_off(is, motion);
	}
} // namespace alesurf
