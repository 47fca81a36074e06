#include "gutkin/errors.hpp"

#include <sstream>

namespace gutkin {

namespace {

std::string convexity_message(double theta, double min_rho)
{
    std::ostringstream os;
    os.precision(17);
    os << "support curve is not strictly convex: min rho = " << min_rho
       << " at theta = " << theta;
    return os.str();
}

}  // namespace

ConvexityViolation::ConvexityViolation(double theta, double min_rho)
    : Error(convexity_message(theta, min_rho)), theta_(theta), min_rho_(min_rho)
{
}

NotOnBoundary::NotOnBoundary(double gap)
    : Error("point is not on the boundary (gap " + std::to_string(gap) + ")"), gap_(gap)
{
}

DegenerateQuadratic::DegenerateQuadratic(double a, double b, double c)
    : Error("curvature quadratic is degenerate: |A| = " + std::to_string(std::abs(a))),
      has_linear_root_(b != 0.0),
      linear_root_(b != 0.0 ? -c / b : 0.0)
{
}

}  // namespace gutkin
