#include "gutkin/billiard.hpp"

#include "gutkin/errors.hpp"
#include "gutkin/format.hpp"

#include <cmath>
#include <numbers>
#include <ostream>
#include <stdexcept>

namespace gutkin {

namespace {

constexpr double kPi = std::numbers::pi;

// Tolerances on caller-supplied launch data.
constexpr double kTangentTol = 1e-10;

void require_delta(double delta)
{
    if (!(delta > 0.0 && delta < kPi / 2)) throw std::invalid_argument("delta must lie in (0, pi/2)");
}

struct Chord {
    ChordRecord record;
    SurfacePoint exit;
    VecX dir;
};

Chord chord_from(const ConvexBody& body, const SurfacePoint& start, const VecX& tangent_dir, double delta)
{
    require_delta(delta);
    if (std::abs(tangent_dir.norm() - 1.0) > kTangentTol)
        throw std::invalid_argument("delta_chord: tangent direction must be a unit vector");
    if (std::abs(tangent_dir.dot(start.inner_normal)) > kTangentTol)
        throw std::invalid_argument("delta_chord: direction is not tangent at the foot");

    VecX dir = std::cos(delta) * tangent_dir + std::sin(delta) * start.inner_normal;
    dir.normalize();
    Chord c{{}, ray_exit(body, start.position, dir), dir};
    c.record.p_from = start.position;
    c.record.p_to = c.exit.position;
    c.record.length = (c.record.p_to - c.record.p_from).norm();
    c.record.launch_angle = delta;
    c.record.arrival_angle = angle_to_tangent_plane(dir, c.exit.inner_normal);
    c.record.defect = std::abs(c.record.arrival_angle - delta);
    return c;
}

double wrapped_difference(double a, double b, double period)
{
    double d = std::fmod(a - b, period);
    if (d > period / 2) d -= period;
    if (d < -period / 2) d += period;
    return d;
}

struct Partials {
    double ds_ds, ds_dp, dp_ds, dp_dp;
    double det() const { return ds_ds * dp_dp - ds_dp * dp_ds; }
};

Partials central_partials(const SupportCurve2D& curve, const PhasePoint2D& x, double h)
{
    const double per = curve.perimeter();
    const auto sp = billiard_map(curve, {x.s + h, x.p});
    const auto sm = billiard_map(curve, {x.s - h, x.p});
    const auto pp = billiard_map(curve, {x.s, x.p + h});
    const auto pm = billiard_map(curve, {x.s, x.p - h});
    return {wrapped_difference(sp.s, sm.s, per) / (2 * h), wrapped_difference(pp.s, pm.s, per) / (2 * h),
            (sp.p - sm.p) / (2 * h), (pp.p - pm.p) / (2 * h)};
}

}  // namespace

double angle_to_tangent_plane(const VecX& dir, const VecX& unit_normal)
{
    return std::asin(std::min(1.0, std::abs(dir.dot(unit_normal))));
}

OrientedLine reflect(const ConvexBody& body, const OrientedLine& line)
{
    const auto start = surface_point(body, line.foot);
    if (!(line.dir.dot(start.inner_normal) > 0.0))
        throw std::invalid_argument("reflect: line does not enter the body at its foot");
    const auto exit = ray_exit(body, line.foot, line.dir);
    const VecX& n = exit.inner_normal;
    VecX out = line.dir - 2.0 * line.dir.dot(n) * n;
    out.normalize();
    return {exit.position, out};
}

ChordRecord delta_chord(const ConvexBody& body, const VecX& foot, const VecX& tangent_dir, double delta)
{
    return chord_from(body, surface_point(body, foot), tangent_dir, delta).record;
}

std::vector<OrbitStep> sigma_orbit(const ConvexBody& body, const VecX& start_foot, const VecX& start_tangent,
                                   double delta, int n_steps)
{
    if (n_steps < 0) throw std::invalid_argument("sigma_orbit: negative step count");
    std::vector<OrbitStep> orbit;
    orbit.reserve(n_steps);
    SurfacePoint at = surface_point(body, start_foot);
    VecX tangent = start_tangent;
    for (int i = 0; i < n_steps; ++i) {
        auto c = chord_from(body, at, tangent, delta);
        const VecX& n = c.exit.inner_normal;
        VecX along = c.dir - c.dir.dot(n) * n;
        const double len = along.norm();
        orbit.push_back({c.record, tangent, len - std::cos(delta)});
        tangent = along / len;
        at = std::move(c.exit);
    }
    return orbit;
}

PlanarChord planar_delta_chord(const SupportCurve2D& curve, double theta, double delta, int orientation)
{
    require_delta(delta);
    const double sign = orientation >= 0 ? 1.0 : -1.0;
    const Vec2 dir = std::cos(delta) * sign * unit_tangent(theta) - std::sin(delta) * unit_normal(theta);
    const Vec2 from = curve.position(theta);
    const double phi = planar_exit_angle(curve, from, dir);
    PlanarChord c;
    c.theta_from = wrap_angle(theta);
    c.theta_to = phi;
    c.length = (curve.position(phi) - from).norm();
    c.arrival_angle = std::asin(std::min(1.0, std::abs(dir.dot(unit_normal(phi)))));
    c.defect = std::abs(c.arrival_angle - delta);
    return c;
}

PhasePoint2D billiard_map(const SupportCurve2D& curve, const PhasePoint2D& phase)
{
    if (!(std::abs(phase.p) < 1.0)) throw DegeneratePhase("billiard_map: |p| must be < 1");
    const double theta = curve.theta_at_arc_length(phase.s);
    const Vec2 dir = phase.p * unit_tangent(theta) - std::sqrt(1.0 - phase.p * phase.p) * unit_normal(theta);
    const double phi = planar_exit_angle(curve, curve.position(theta), dir);
    return {curve.arc_length(phi), dir.dot(unit_tangent(phi))};
}

double symplectic_jacobian(const SupportCurve2D& curve, const PhasePoint2D& phase, double step)
{
    if (std::abs(phase.p) > 1.0 - 1e-3) throw DegeneratePhase("phase point is too close to tangency");
    const auto coarse = central_partials(curve, phase, step);
    const double det = coarse.det();
    if (std::abs(det - 1.0) <= 1e-6) return det;

    const auto fine = central_partials(curve, phase, step / 2);
    auto extrapolate = [](double f, double c) { return (4.0 * f - c) / 3.0; };
    const Partials rich{extrapolate(fine.ds_ds, coarse.ds_ds), extrapolate(fine.ds_dp, coarse.ds_dp),
                        extrapolate(fine.dp_ds, coarse.dp_ds), extrapolate(fine.dp_dp, coarse.dp_dp)};
    return rich.det();
}

void write_orbit_csv(std::ostream& os, const std::vector<OrbitStep>& orbit)
{
    const auto d = orbit.empty() ? 0 : orbit.front().chord.p_from.size();
    os << "step";
    for (Eigen::Index i = 0; i < d; ++i) os << ",foot_" << i;
    os << ",length,launch_angle,arrival_angle,defect\n";
    for (std::size_t k = 0; k < orbit.size(); ++k) {
        const auto& c = orbit[k].chord;
        os << k;
        for (Eigen::Index i = 0; i < d; ++i) os << ',' << format_double(c.p_from(i));
        os << ',' << format_double(c.length) << ',' << format_double(c.launch_angle) << ','
           << format_double(c.arrival_angle) << ',' << format_double(c.defect) << '\n';
    }
}

}  // namespace gutkin
