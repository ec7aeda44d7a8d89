#include <alesurf/errors.hpp>

namespace alesurf
{
	DegenerateElement::DegenerateElement(std::size_t element, double area)
		: Error("degenerate element " + std::to_string(element) + " with area " + std::to_string(area)),
		  element_(element), area_(area)
	{
	}

	NodeSolveDiverged::NodeSolveDiverged(std::size_t node, double residual)
		: Error("implicit node solve diverged at node " + std::to_string(node) + ", residual " + std::to_string(residual)),
		  node_(node), residual_(residual)
	{
	}
} // namespace alesurf
