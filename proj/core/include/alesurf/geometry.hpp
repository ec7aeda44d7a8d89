#pragma once

#include <array>
#include <memory>
#include <string>

#include <Eigen/Dense>

namespace alesurf
{
	using Vec3 = Eigen::Vector3d;
	using Mat3 = Eigen::Matrix3d;

	/// Third derivatives of a scalar field: slice[i](j, k) = d^3 f / dx_i dx_j dx_k.
	struct Tensor3
	{
		std::array<Mat3, 3> slice{Mat3::Zero(), Mat3::Zero(), Mat3::Zero()};

		double operator()(int i, int j, int k) const { return slice[i](j, k); }
	};

	/// An evolving closed surface given as the zero level set of d(x, t), together
	/// with an ALE parametrization of it. All members are pure functions of (x, t).
	class LevelSetSurface
	{
	public:
		virtual ~LevelSetSurface() = default;

		virtual std::string name() const = 0;

		virtual double d(const Vec3 &x, double t) const = 0;
		virtual Vec3 grad_d(const Vec3 &x, double t) const = 0;
		virtual double dt_d(const Vec3 &x, double t) const = 0;
		virtual Mat3 hessian_d(const Vec3 &x, double t) const = 0;
		virtual Tensor3 third_derivs_d(const Vec3 &x, double t) const = 0;
		virtual Vec3 dt_grad_d(const Vec3 &x, double t) const = 0;

		/// Position at time t of the ALE trajectory starting at a0 on the initial surface.
		virtual Vec3 ale_position(const Vec3 &a0, double t) const = 0;
		/// Exact time derivative of ale_position.
		virtual Vec3 ale_velocity(const Vec3 &a0, double t) const = 0;
		/// ALE velocity w as a field: velocity of the trajectory passing through x at time t.
		virtual Vec3 ale_velocity_at(const Vec3 &x, double t) const = 0;

		/// Maps a point of the unit sphere onto the initial surface (before projection).
		virtual Vec3 from_unit_sphere(const Vec3 &p) const = 0;
	};

	/// Surface of revolution d = x1^2 + x2^2 + A(t)^2 G(x3^2 / L(t)^2) - A(t)^2 with
	/// G(s) = 200 s (s - 199/200), L(t) = 1 + 0.2 sin(4 pi t), A(t) = 0.1 + 0.05 sin(2 pi t).
	/// The ALE map scales x1, x2 by A(t)/A(0) and x3 by L(t)/L(0).
	class OscillatingDumbbell final : public LevelSetSurface
	{
	public:
		std::string name() const override { return "dumbbell"; }

		static double G(double s);
		static double dG(double s);
		static double L(double t);
		static double dL(double t);
		static double A(double t);
		static double dA(double t);

		double d(const Vec3 &x, double t) const override;
		Vec3 grad_d(const Vec3 &x, double t) const override;
		double dt_d(const Vec3 &x, double t) const override;
		Mat3 hessian_d(const Vec3 &x, double t) const override;
		Tensor3 third_derivs_d(const Vec3 &x, double t) const override;
		Vec3 dt_grad_d(const Vec3 &x, double t) const override;

		Vec3 ale_position(const Vec3 &a0, double t) const override;
		Vec3 ale_velocity(const Vec3 &a0, double t) const override;
		Vec3 ale_velocity_at(const Vec3 &x, double t) const override;

		/// Radius of the cross-section at height x3 (zero outside [-L, L]).
		double radius_at(double x3, double t) const;
		Vec3 from_unit_sphere(const Vec3 &p) const override;
	};

	/// Stationary unit sphere d = |x|^2 - 1 with identity ALE map.
	class UnitSphere final : public LevelSetSurface
	{
	public:
		std::string name() const override { return "sphere"; }

		double d(const Vec3 &x, double t) const override;
		Vec3 grad_d(const Vec3 &x, double t) const override;
		double dt_d(const Vec3 &x, double t) const override;
		Mat3 hessian_d(const Vec3 &x, double t) const override;
		Tensor3 third_derivs_d(const Vec3 &x, double t) const override;
		Vec3 dt_grad_d(const Vec3 &x, double t) const override;

		Vec3 ale_position(const Vec3 &a0, double t) const override;
		Vec3 ale_velocity(const Vec3 &a0, double t) const override;
		Vec3 ale_velocity_at(const Vec3 &x, double t) const override;
		Vec3 from_unit_sphere(const Vec3 &p) const override;
	};

	inline constexpr double on_surface_tolerance = 1e-10;
	inline constexpr double min_gradient_norm = 1e-12;

	struct VelocitySample
	{
		Vec3 v;        ///< material velocity V * nu
		Vec3 w;        ///< ALE velocity
		Vec3 nu;       ///< unit normal
		double V = 0;  ///< normal speed
	};

	/// Unit normal grad d / |grad d|. Throws DegenerateGradient when |grad d| < 1e-12.
	Vec3 normal(const LevelSetSurface &surface, const Vec3 &x, double t);
	/// V = -d_t / |grad d|.
	double normal_speed(const LevelSetSurface &surface, const Vec3 &x, double t);
	/// v = V nu, defined in a neighbourhood of the surface.
	Vec3 material_velocity(const LevelSetSurface &surface, const Vec3 &x, double t);
	VelocitySample sample_velocities(const LevelSetSurface &surface, const Vec3 &x, double t);

	/// ALE position of a0; throws OffSurfaceInput unless |d(a0, 0)| <= tol.
	Vec3 ale_position(const LevelSetSurface &surface, const Vec3 &a0, double t,
					  double tol = on_surface_tolerance);
	Vec3 ale_velocity(const LevelSetSurface &surface, const Vec3 &a0, double t,
					  double tol = on_surface_tolerance);

	/// Root of d(x + s n, t) = 0 along the fixed line n = grad d(x)/|grad d(x)|: expanding bracket search
	/// from the Newton step, then safeguarded Newton.
	/// Throws NoConvergence after max_iterations.
	Vec3 project_to_surface(const LevelSetSurface &surface, const Vec3 &x, double t,
							double tol = 1e-12, int max_iterations = 50);

	/// A smooth space-time scalar field u(x, t) with ambient derivatives.
	class ScalarField
	{
	public:
		virtual ~ScalarField() = default;
		virtual double value(const Vec3 &x, double t) const = 0;
		virtual Vec3 gradient(const Vec3 &x, double t) const = 0;
		virtual Mat3 hessian(const Vec3 &x, double t) const = 0;
		virtual double time_derivative(const Vec3 &x, double t) const = 0;
		virtual bool is_zero() const { return false; }
	};

	/// u(x, t) = exp(-6 t) x1 x2.
	class DecayingProduct final : public ScalarField
	{
	public:
		double value(const Vec3 &x, double t) const override;
		Vec3 gradient(const Vec3 &x, double t) const override;
		Mat3 hessian(const Vec3 &x, double t) const override;
		double time_derivative(const Vec3 &x, double t) const override;
	};

	class ZeroField final : public ScalarField
	{
	public:
		double value(const Vec3 &, double) const override { return 0.0; }
		Vec3 gradient(const Vec3 &, double) const override { return Vec3::Zero(); }
		Mat3 hessian(const Vec3 &, double) const override { return Mat3::Zero(); }
		double time_derivative(const Vec3 &, double) const override { return 0.0; }
		bool is_zero() const override { return true; }
	};

	double exact_solution(const Vec3 &x, double t);
	Vec3 exact_solution_gradient(const Vec3 &x, double t);

	/// Right-hand side f = mat_deriv(u) + u div_Gamma(v) - LaplaceBeltrami(u) evaluated
	/// pointwise from ambient calculus, v being the normal material velocity.
	double manufactured_rhs(const LevelSetSurface &surface, const ScalarField &u,
							const Vec3 &x, double t);
	/// Same, for u = exp(-6 t) x1 x2.
	double manufactured_rhs(const LevelSetSurface &surface, const Vec3 &x, double t);
} // namespace alesurf
