#include <alesurf/geometry.hpp>
#include <alesurf/errors.hpp>

#include <cmath>
#include <numbers>
#include <sstream>

namespace alesurf
{
	namespace
	{
		constexpr double pi = std::numbers::pi;
		constexpr double G_second = 400.0;

		std::string describe(const Vec3 &x, double t)
		{
			std::ostringstream os;
			os.precision(17);
			os << "(" << x[0] << ", " << x[1] << ", " << x[2] << ") at t=" << t;
			return os.str();
		}
	} // namespace

	// ---------------------------------------------------------------------------
	// OscillatingDumbbell

	double OscillatingDumbbell::G(double s) { return 200.0 * s * (s - 199.0 / 200.0); }
	double OscillatingDumbbell::dG(double s) { return 400.0 * s - 199.0; }
	double OscillatingDumbbell::L(double t) { return 1.0 + 0.2 * std::sin(4.0 * pi * t); }
	double OscillatingDumbbell::dL(double t) { return 0.8 * pi * std::cos(4.0 * pi * t); }
	double OscillatingDumbbell::A(double t) { return 0.1 + 0.05 * std::sin(2.0 * pi * t); }
	double OscillatingDumbbell::dA(double t) { return 0.1 * pi * std::cos(2.0 * pi * t); }

	double OscillatingDumbbell::d(const Vec3 &x, double t) const
	{
		const double a = A(t), l = L(t);
		const double s = x[2] * x[2] / (l * l);
		return x[0] * x[0] + x[1] * x[1] + a * a * G(s) - a * a;
	}

	Vec3 OscillatingDumbbell::grad_d(const Vec3 &x, double t) const
	{
		const double a = A(t), l = L(t);
		const double s = x[2] * x[2] / (l * l);
		return {2.0 * x[0], 2.0 * x[1], a * a * dG(s) * 2.0 * x[2] / (l * l)};
	}

	double OscillatingDumbbell::dt_d(const Vec3 &x, double t) const
	{
		const double a = A(t), l = L(t);
		const double s = x[2] * x[2] / (l * l);
		const double ds_dt = -2.0 * s * dL(t) / l;
		return 2.0 * a * dA(t) * (G(s) - 1.0) + a * a * dG(s) * ds_dt;
	}

	Mat3 OscillatingDumbbell::hessian_d(const Vec3 &x, double t) const
	{
		const double a = A(t), l = L(t), l2 = l * l;
		const double s = x[2] * x[2] / l2;
		const double ds = 2.0 * x[2] / l2;
		Mat3 H = Mat3::Zero();
		H(0, 0) = 2.0;
		H(1, 1) = 2.0;
		H(2, 2) = a * a * (G_second * ds * ds + dG(s) * 2.0 / l2);
		return H;
	}

	Tensor3 OscillatingDumbbell::third_derivs_d(const Vec3 &x, double t) const
	{
		const double a = A(t), l = L(t);
		Tensor3 T;
		T.slice[2](2, 2) = a * a * 12.0 * G_second * x[2] / (l * l * l * l);
		return T;
	}

	Vec3 OscillatingDumbbell::dt_grad_d(const Vec3 &x, double t) const
	{
		const double a = A(t), l = L(t), l2 = l * l;
		const double s = x[2] * x[2] / l2;
		const double ds_dt = -2.0 * s * dL(t) / l;
		const double z = 2.0 * x[2] / l2;
		const double dz_dt = -2.0 * z * dL(t) / l;
		const double g3 = 2.0 * a * dA(t) * dG(s) * z + a * a * G_second * ds_dt * z + a * a * dG(s) * dz_dt;
		return {0.0, 0.0, g3};
	}

	Vec3 OscillatingDumbbell::ale_position(const Vec3 &a0, double t) const
	{
		const double sa = A(t) / A(0.0), sl = L(t) / L(0.0);
		return {a0[0] * sa, a0[1] * sa, a0[2] * sl};
	}

	Vec3 OscillatingDumbbell::ale_velocity(const Vec3 &a0, double t) const
	{
		const double sa = dA(t) / A(0.0), sl = dL(t) / L(0.0);
		return {a0[0] * sa, a0[1] * sa, a0[2] * sl};
	}

	Vec3 OscillatingDumbbell::ale_velocity_at(const Vec3 &x, double t) const
	{
		const double ra = dA(t) / A(t), rl = dL(t) / L(t);
		return {x[0] * ra, x[1] * ra, x[2] * rl};
	}

	double OscillatingDumbbell::radius_at(double x3, double t) const
	{
		const double a = A(t), l = L(t);
		const double s = x3 * x3 / (l * l);
		const double r2 = a * a * (1.0 - G(s));
		return r2 > 0.0 ? std::sqrt(r2) : 0.0;
	}

	Vec3 OscillatingDumbbell::from_unit_sphere(const Vec3 &p) const
	{
		const double rho = std::hypot(p[0], p[1]);
		if (rho < 1e-14)
			return {0.0, 0.0, p[2] >= 0.0 ? L(0.0) : -L(0.0)};
		const double r = radius_at(p[2], 0.0);
		return {r * p[0] / rho, r * p[1] / rho, p[2]};
	}

	// ---------------------------------------------------------------------------
	// UnitSphere

	double UnitSphere::d(const Vec3 &x, double) const { return x.squaredNorm() - 1.0; }
	Vec3 UnitSphere::grad_d(const Vec3 &x, double) const { return 2.0 * x; }
	double UnitSphere::dt_d(const Vec3 &, double) const { return 0.0; }
	Mat3 UnitSphere::hessian_d(const Vec3 &, double) const { return 2.0 * Mat3::Identity(); }
	Tensor3 UnitSphere::third_derivs_d(const Vec3 &, double) const { return {}; }
	Vec3 UnitSphere::dt_grad_d(const Vec3 &, double) const { return Vec3::Zero(); }
	Vec3 UnitSphere::ale_position(const Vec3 &a0, double) const { return a0; }
	Vec3 UnitSphere::ale_velocity(const Vec3 &, double) const { return Vec3::Zero(); }
	Vec3 UnitSphere::ale_velocity_at(const Vec3 &, double) const { return Vec3::Zero(); }
	Vec3 UnitSphere::from_unit_sphere(const Vec3 &p) const { return p.normalized(); }

	// ---------------------------------------------------------------------------
	// Derived kinematics

	namespace
	{
		double checked_gradient_norm(const Vec3 &g, const Vec3 &x, double t)
		{
			const double n = g.norm();
			if (!(n >= min_gradient_norm))
				throw DegenerateGradient("|grad d| below threshold at " + describe(x, t));
			return n;
		}
	} // namespace

	Vec3 normal(const LevelSetSurface &surface, const Vec3 &x, double t)
	{
		const Vec3 g = surface.grad_d(x, t);
		return g / checked_gradient_norm(g, x, t);
	}

	double normal_speed(const LevelSetSurface &surface, const Vec3 &x, double t)
	{
		const Vec3 g = surface.grad_d(x, t);
		return -surface.dt_d(x, t) / checked_gradient_norm(g, x, t);
	}

	Vec3 material_velocity(const LevelSetSurface &surface, const Vec3 &x, double t)
	{
		const Vec3 g = surface.grad_d(x, t);
		const double n = checked_gradient_norm(g, x, t);
		return (-surface.dt_d(x, t) / n) * (g / n);
	}

	VelocitySample sample_velocities(const LevelSetSurface &surface, const Vec3 &x, double t)
	{
		const Vec3 g = surface.grad_d(x, t);
		const double n = checked_gradient_norm(g, x, t);
		VelocitySample out;
		out.nu = g / n;
		out.V = -surface.dt_d(x, t) / n;
		out.v = out.V * out.nu;
		out.w = surface.ale_velocity_at(x, t);
		return out;
	}

	namespace
	{
		void require_on_initial_surface(const LevelSetSurface &surface, const Vec3 &a0, double tol)
		{
			const double r = surface.d(a0, 0.0);
			if (!(std::abs(r) <= tol))
				throw OffSurfaceInput("reference point " + describe(a0, 0.0) + " is off the initial surface, d = " + std::to_string(r));
		}
	} // namespace

	Vec3 ale_position(const LevelSetSurface &surface, const Vec3 &a0, double t, double tol)
	{
		require_on_initial_surface(surface, a0, tol);
		return surface.ale_position(a0, t);
	}

	Vec3 ale_velocity(const LevelSetSurface &surface, const Vec3 &a0, double t, double tol)
	{
		require_on_initial_surface(surface, a0, tol);
		return surface.ale_velocity(a0, t);
	}

	Vec3 project_to_surface(const LevelSetSurface &surface, const Vec3 &x, double t,
							double tol, int max_iterations)
	{
		const Vec3 dir = normal(surface, x, t);
		const auto phi = [&](double s) { return surface.d(x + s * dir, t); };
		const double g0 = phi(0.0);
		if (std::abs(g0) <= tol)
			return x;

		// Bracket a sign change on s -> d(x + s n), trying the Newton side first at each scale.
		const double newton = -g0 / surface.grad_d(x, t).dot(dir);
		double lo = 0.0, glo = g0, hi = 0.0, ghi = g0;
		bool bracketed = false;
		int it = 0;
		for (double scale = newton; it < max_iterations && !bracketed; ++it, scale *= 2.0)
			for (double s : {scale, -scale})
			{
				const double g = phi(s);
				if (std::abs(g) <= tol)
					return x + s * dir;
				if ((g < 0) != (g0 < 0))
				{
					lo = scale == newton ? 0.0 : s / 2.0;
					glo = phi(lo);
					hi = s;
					ghi = g;
					bracketed = true;
					break;
				}
			}

		// Safeguarded Newton inside the bracket.
		double s = bracketed ? hi : 0.0, g = bracketed ? ghi : g0;
		for (; bracketed && it < max_iterations; ++it)
		{
			if (std::abs(g) <= tol)
				return x + s * dir;
			const double slope = surface.grad_d(x + s * dir, t).dot(dir);
			double next = slope != 0.0 ? s - g / slope : lo;
			if (!(next > std::min(lo, hi) && next < std::max(lo, hi)))
				next = 0.5 * (lo + hi);
			const double gn = phi(next);
			if ((gn < 0) == (glo < 0))
			{
				lo = next;
				glo = gn;
			}
			else
			{
				hi = next;
				ghi = gn;
			}
			s = next;
			g = gn;
		}
		if (std::abs(g) <= tol)
			return x + s * dir;
		throw NoConvergence("projection onto surface failed from " + describe(x, t) + ", residual " + std::to_string(g));
	}

	// ---------------------------------------------------------------------------
	// Exact solution and forcing

	double DecayingProduct::value(const Vec3 &x, double t) const { return std::exp(-6.0 * t) * x[0] * x[1]; }

	Vec3 DecayingProduct::gradient(const Vec3 &x, double t) const
	{
		const double e = std::exp(-6.0 * t);
		return {e * x[1], e * x[0], 0.0};
	}

	Mat3 DecayingProduct::hessian(const Vec3 &, double t) const
	{
		Mat3 H = Mat3::Zero();
		H(0, 1) = H(1, 0) = std::exp(-6.0 * t);
		return H;
	}

	double DecayingProduct::time_derivative(const Vec3 &x, double t) const { return -6.0 * value(x, t); }

	double exact_solution(const Vec3 &x, double t) { return DecayingProduct{}.value(x, t); }
	Vec3 exact_solution_gradient(const Vec3 &x, double t) { return DecayingProduct{}.gradient(x, t); }

	double manufactured_rhs(const LevelSetSurface &surface, const ScalarField &u, const Vec3 &x, double t)
	{
		if (u.is_zero())
			return 0.0;

		const Vec3 g = surface.grad_d(x, t);
		const double gn = checked_gradient_norm(g, x, t);
		const Vec3 nu = g / gn;
		const Mat3 Hd = surface.hessian_d(x, t);
		const double dtd = surface.dt_d(x, t);
		const Mat3 P = Mat3::Identity() - nu * nu.transpose();

		// Jacobian of the extended normal and mean curvature H = div(nu).
		const Mat3 Dnu = P * Hd / gn;
		const double H = Dnu.trace();

		// v = V nu with V = -d_t / |grad d|; grad |grad d| = Hd nu.
		const double V = -dtd / gn;
		const Vec3 gradV = -surface.dt_grad_d(x, t) / gn + dtd * (Hd * nu) / (gn * gn);
		const Vec3 v = V * nu;
		const Mat3 Dv = nu * gradV.transpose() + V * Dnu;
		const double div_gamma_v = Dv.trace() - nu.dot(Dv * nu);

		const Vec3 gu = u.gradient(x, t);
		const Mat3 D2u = u.hessian(x, t);
		const double material_derivative = u.time_derivative(x, t) + v.dot(gu);
		const double laplace_beltrami = D2u.trace() - nu.dot(D2u * nu) - H * nu.dot(gu);

		return material_derivative + u.value(x, t) * div_gamma_v - laplace_beltrami;
	}

	double manufactured_rhs(const LevelSetSurface &surface, const Vec3 &x, double t)
	{
		return manufactured_rhs(surface, DecayingProduct{}, x, t);
	}
} // namespace alesurf
