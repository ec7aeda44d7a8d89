#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace alesurf
{
	/// Base class of every error raised by the library.
	class Error : public std::runtime_error
	{
	public:
		using std::runtime_error::runtime_error;
	};

	class DegenerateGradient : public Error
	{
	public:
		using Error::Error;
	};

	class OffSurfaceInput : public Error
	{
	public:
		using Error::Error;
	};

	class NoConvergence : public Error
	{
	public:
		using Error::Error;
	};

	class DegenerateElement : public Error
	{
	public:
		DegenerateElement(std::size_t element, double area);
		std::size_t element() const { return element_; }
		double area() const { return area_; }

	private:
		std::size_t element_;
		double area_;
	};

	class NodeSolveDiverged : public Error
	{
	public:
		NodeSolveDiverged(std::size_t node, double residual);
		std::size_t node() const { return node_; }
		double residual() const { return residual_; }

	private:
		std::size_t node_;
		double residual_;
	};

	class DimensionMismatch : public Error
	{
	public:
		using Error::Error;
	};

	/// Linear solve failures carry the relative residual that was reached.
	class LinearSolveError : public Error
	{
	public:
		LinearSolveError(const std::string &what, double residual)
			: Error(what), residual_(residual) {}
		double residual() const { return residual_; }

	private:
		double residual_;
	};

	class SolverBreakdown : public LinearSolveError
	{
	public:
		using LinearSolveError::LinearSolveError;
	};

	class SingularMatrix : public LinearSolveError
	{
	public:
		using LinearSolveError::LinearSolveError;
	};

	class UnsupportedStageCount : public Error
	{
	public:
		using Error::Error;
	};

	class UnsupportedOrder : public Error
	{
	public:
		using Error::Error;
	};

	class InsufficientHistory : public Error
	{
	public:
		using Error::Error;
	};

	/// Invalid user-facing configuration (bad method id, step size, ...).
	class ConfigError : public Error
	{
	public:
		using Error::Error;
	};

	class IoError : public Error
	{
	public:
		using Error::Error;
	};
} // namespace alesurf
