#include "gutkin/sampling.hpp"

#include <boost/math/special_functions/erf.hpp>

#include <cmath>
#include <numbers>
#include <random>

namespace gutkin {

namespace {

constexpr double kPi = std::numbers::pi;

double unit_from_bits(std::uint64_t bits) { return static_cast<double>(bits >> 11) * 0x1.0p-53; }

std::vector<double> seeded_shift(unsigned dim, std::uint64_t seed)
{
    std::mt19937_64 rng(seed);
    std::vector<double> shift(dim);
    for (auto& s : shift) s = unit_from_bits(rng());
    return shift;
}

VecX gaussian_vector(const std::vector<double>& u, std::size_t offset, int d)
{
    VecX g(d);
    for (int i = 0; i < d; ++i) g(i) = normal_quantile(u[offset + i]);
    return g;
}

VecX tangent_from(const VecX& gauss, const VecX& unit_normal)
{
    VecX t = gauss - gauss.dot(unit_normal) * unit_normal;
    const double len = t.norm();
    if (len < 1e-8) return tangent_basis_of(unit_normal).col(0);
    return t / len;
}

std::vector<BoundarySample> quadric_samples(const ConvexBody& body, const QuadricForm& qf,
                                            const SamplerSpec& spec)
{
    const int d = body.dim();
    ShiftedSobol seq(2 * d, spec.seed);
    std::vector<BoundarySample> out;
    out.reserve(spec.samples);
    for (std::size_t i = 0; i < spec.samples; ++i) {
        const auto u = seq.next();
        VecX g = gaussian_vector(u, 0, d);
        if (g.norm() == 0.0) g(0) = 1.0;
        const VecX dir = g.normalized();
        const VecX foot = qf.center + qf.frame * qf.semi_axes.cwiseProduct(dir);
        const VecX outer = (qf.frame * dir.cwiseQuotient(qf.semi_axes)).normalized();
        out.push_back({foot, tangent_from(gaussian_vector(u, d, d), outer)});
    }
    return out;
}

std::vector<BoundarySample> revolution_samples(const Revolution& rev, const SamplerSpec& spec)
{
    int n = 1;
    while (static_cast<std::size_t>(n) * n * n < spec.samples) ++n;
    const auto shift = seeded_shift(3, spec.seed);
    const auto [e1, e2] = perpendicular_pair(rev.axis);

    std::vector<BoundarySample> out;
    out.reserve(static_cast<std::size_t>(n) * n * n);
    for (int i = 0; i < n; ++i) {
        const double theta = kPi * (i + shift[0]) / n;
        const Vec2 prof = rev.profile.position(theta);
        for (int j = 0; j < n; ++j) {
            const double psi = 2.0 * kPi * (j + shift[1]) / n;
            const Eigen::Vector3d radial = std::cos(psi) * e1 + std::sin(psi) * e2;
            const Eigen::Vector3d azimuthal = -std::sin(psi) * e1 + std::cos(psi) * e2;
            const Eigen::Vector3d meridian = -std::sin(theta) * rev.axis + std::cos(theta) * radial;
            const Eigen::Vector3d foot = prof.x() * rev.axis + prof.y() * radial;
            for (int k = 0; k < n; ++k) {
                const double alpha = 2.0 * kPi * (k + shift[2]) / n;
                const Eigen::Vector3d t = std::cos(alpha) * meridian + std::sin(alpha) * azimuthal;
                out.push_back({VecX(foot), VecX(t)});
            }
        }
    }
    return out;
}

std::vector<BoundarySample> planar_samples(const Planar& pl, const SamplerSpec& spec)
{
    ShiftedSobol seq(1, spec.seed);
    std::vector<BoundarySample> out;
    out.reserve(spec.samples);
    for (std::size_t i = 0; i < spec.samples; ++i) {
        const double theta = 2.0 * kPi * seq.next()[0];
        const double orientation = (i % 2 == 0) ? 1.0 : -1.0;
        out.push_back({VecX(pl.curve.position(theta)), VecX(orientation * unit_tangent(theta))});
    }
    return out;
}

}  // namespace

double normal_quantile(double u) { return std::numbers::sqrt2 * boost::math::erf_inv(2.0 * u - 1.0); }

ShiftedSobol::ShiftedSobol(unsigned dim, std::uint64_t seed)
    : dim_(dim), engine_(dim), shift_(seeded_shift(dim, seed))
{
}

std::vector<double> ShiftedSobol::next()
{
    std::vector<double> u(dim_);
    for (unsigned i = 0; i < dim_; ++i) {
        double v = unit_from_bits(engine_()) + shift_[i];
        if (v >= 1.0) v -= 1.0;
        u[i] = std::clamp(v, 1e-15, 1.0 - 1e-15);
    }
    return u;
}

std::vector<BoundarySample> boundary_samples(const ConvexBody& body, const SamplerSpec& spec)
{
    if (auto qf = body.quadric()) return quadric_samples(body, *qf, spec);
    if (const auto* pl = std::get_if<Planar>(&body.shape())) return planar_samples(*pl, spec);
    return revolution_samples(std::get<Revolution>(body.shape()), spec);
}

}  // namespace gutkin
