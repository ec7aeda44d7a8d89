#include <alesurf/quadrature.hpp>
#include <alesurf/errors.hpp>

#include <cmath>
#include <string>

namespace alesurf
{
	namespace
	{
		void add_orbit3(QuadratureRule &q, double a, double b, double w)
		{
			q.points.push_back({a, b, b});
			q.points.push_back({b, a, b});
			q.points.push_back({b, b, a});
			q.weights.insert(q.weights.end(), 3, w);
		}

		void add_orbit6(QuadratureRule &q, double a, double b, double c, double w)
		{
			for (const auto &p : {std::array{a, b, c}, std::array{a, c, b}, std::array{b, a, c},
								  std::array{b, c, a}, std::array{c, a, b}, std::array{c, b, a}})
				q.points.push_back(p);
			q.weights.insert(q.weights.end(), 6, w);
		}
	} // namespace

	QuadratureRule triangle_rule(int degree)
	{
		QuadratureRule q;
		if (degree <= 1)
		{
			q.degree = 1;
			q.points.push_back({1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0});
			q.weights.push_back(1.0);
		}
		else if (degree == 2)
		{
			q.degree = 2;
			add_orbit3(q, 0.0, 0.5, 1.0 / 3.0);
		}
		else if (degree <= 4)
		{
			q.degree = 4;
			const double b1 = 0.44594849091596488632, b2 = 0.09157621350977074346;
			add_orbit3(q, 1.0 - 2.0 * b1, b1, 0.2233815896780114657);
			add_orbit3(q, 1.0 - 2.0 * b2, b2, 0.10995174365532186764);
		}
		else if (degree == 5)
		{
			q.degree = 5;
			q.points.push_back({1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0});
			q.weights.push_back(0.225);
			const double r15 = std::sqrt(15.0);
			add_orbit3(q, (9.0 + 2.0 * r15) / 21.0, (6.0 - r15) / 21.0, (155.0 - r15) / 1200.0);
			add_orbit3(q, (9.0 - 2.0 * r15) / 21.0, (6.0 + r15) / 21.0, (155.0 + r15) / 1200.0);
		}
		else if (degree == 6)
		{
			q.degree = 6;
			const double b1 = 0.24928674517091042129, b2 = 0.06308901449150222834;
			const double b3 = 0.053145049844816947353, c3 = 0.31035245103378440542;
			add_orbit3(q, 1.0 - 2.0 * b1, b1, 0.11678627572637936603);
			add_orbit3(q, 1.0 - 2.0 * b2, b2, 0.050844906370206816921);
			add_orbit6(q, b3, c3, 1.0 - b3 - c3, 0.082851075618373575194);
		}
		else
			throw ConfigError("no triangle quadrature rule of degree " + std::to_string(degree));
		return q;
	}
} // namespace alesurf
