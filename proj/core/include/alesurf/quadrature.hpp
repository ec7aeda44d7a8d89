#pragma once

#include <array>
#include <vector>

namespace alesurf
{
	/// Quadrature on the reference triangle in barycentric coordinates. Weights are
	/// positive and sum to one; scale by the element area at use.
	struct QuadratureRule
	{
		std::vector<std::array<double, 3>> points;
		std::vector<double> weights;
		int degree = 0;

		std::size_t size() const { return weights.size(); }
	};

	/// Rules exact for polynomials of the requested degree: 1 (centroid),
	/// 2 (edge midpoints), 4 (6 points), 5 (7 points), 6 (12 points). Other
	/// degrees round up to the next available rule; above 6 throws ConfigError.
	QuadratureRule triangle_rule(int degree);
} // namespace alesurf
