#pragma once

#include "gutkin/geomnd.hpp"

#include <cstddef>
#include <cstdint>
#include <vector>

#include <boost/random/sobol.hpp>

namespace gutkin {

struct SamplerSpec {
    std::size_t samples = 10000;
    std::uint64_t seed = 0;
};

/// A launch site for a δ-chord: boundary foot and unit tangent direction.
struct BoundarySample {
    VecX foot;
    VecX tangent;
};

/// Sobol points in (0,1)^dim with a seeded Cranley–Patterson rotation.
class ShiftedSobol {
public:
    ShiftedSobol(unsigned dim, std::uint64_t seed);
    /// Next point; coordinates are clamped away from 0 and 1.
    std::vector<double> next();
    unsigned dim() const noexcept { return dim_; }

private:
    unsigned dim_;
    boost::random::sobol engine_;
    std::vector<double> shift_;
};

/// Deterministic launch sites for a body:
///  - sphere/ellipsoid: Sobol points mapped through the Gaussian trick to the
///    unit sphere (feet) and to tangent directions;
///  - revolution: a shifted product grid over profile angle × rotation ×
///    tangent angle with at least `samples` points;
///  - planar: Sobol support angles with both chord orientations.
std::vector<BoundarySample> boundary_samples(const ConvexBody& body, const SamplerSpec& spec);

/// Standard normal quantile.
double normal_quantile(double u);

}  // namespace gutkin
