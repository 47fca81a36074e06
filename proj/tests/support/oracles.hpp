#pragma once

// Independent reference computations for the tests. Nothing here calls into
// the library's numerical routines: curves are re-evaluated from their
// coefficients, integrals use plain composite Simpson, roots use long double
// or quad precision, chords are found by dense scanning plus bisection.

#include <boost/multiprecision/cpp_bin_float.hpp>

#include <Eigen/Dense>

#include <cmath>
#include <functional>
#include <numbers>
#include <vector>

namespace oracle {

constexpr double kPi = std::numbers::pi;

struct Term {
    int n;
    double a;
    double b;
};

struct Curve {
    double r0;
    std::vector<Term> terms;

    double h(double t) const
    {
        double v = r0;
        for (const auto& m : terms) v += m.a * std::cos(m.n * t) + m.b * std::sin(m.n * t);
        return v;
    }
    double dh(double t) const
    {
        double v = 0;
        for (const auto& m : terms) v += m.n * (-m.a * std::sin(m.n * t) + m.b * std::cos(m.n * t));
        return v;
    }
    double rho(double t) const
    {
        double v = r0;
        for (const auto& m : terms) v += (1.0 - m.n * m.n) * (m.a * std::cos(m.n * t) + m.b * std::sin(m.n * t));
        return v;
    }
    Eigen::Vector2d point(double t) const
    {
        const double c = std::cos(t), s = std::sin(t);
        return {h(t) * c - dh(t) * s, h(t) * s + dh(t) * c};
    }
};

/// Composite Simpson on [a, b] with `panels` (even) subintervals.
inline double simpson(const std::function<double(double)>& f, double a, double b, int panels = 20000)
{
    const double h = (b - a) / panels;
    double s = f(a) + f(b);
    for (int i = 1; i < panels; ++i) s += f(a + i * h) * (i % 2 ? 4.0 : 2.0);
    return s * h / 3.0;
}

/// Chord-length integral (1/cos δ) ∫₀^{2δ} cos φ ρ(θ+φ) dφ by Simpson.
inline double chord_integral(const Curve& c, double theta, double delta)
{
    return simpson([&](double p) { return std::cos(p) * c.rho(theta + p); }, 0.0, 2.0 * delta) / std::cos(delta);
}

/// Perimeter by Simpson on ρ.
inline double perimeter(const Curve& c) { return simpson([&](double t) { return c.rho(t); }, 0.0, 2.0 * kPi); }

/// Ray-shot δ-chord from γ(θ) (counterclockwise launch). Scans the exit
/// parameter densely for a sign change of cross(γ(φ) − a, dir) on the far
/// side, then bisects.
struct Chord {
    double theta_to;
    double length;
    double arrival_angle;
};

inline Chord shoot(const Curve& c, double theta, double delta)
{
    const Eigen::Vector2d a = c.point(theta);
    const Eigen::Vector2d tangent(-std::sin(theta), std::cos(theta));
    const Eigen::Vector2d inner(-std::cos(theta), -std::sin(theta));
    const Eigen::Vector2d dir = std::cos(delta) * tangent + std::sin(delta) * inner;
    auto side = [&](double phi) {
        const Eigen::Vector2d q = c.point(phi) - a;
        return q.x() * dir.y() - q.y() * dir.x();
    };
    // The chord end lies strictly after θ along the curve.
    const int scan = 20000;
    double lo = theta + 1e-9, flo = side(lo);
    double hi = lo;
    for (int i = 1; i <= scan; ++i) {
        hi = theta + 1e-9 + (2.0 * kPi - 2e-9) * i / scan;
        const double fhi = side(hi);
        if ((fhi < 0) != (flo < 0) && (c.point(hi) - a).dot(dir) > 1e-12) break;
        lo = hi;
        flo = fhi;
    }
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        if ((side(mid) < 0) == (flo < 0)) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    const double phi = 0.5 * (lo + hi);
    const Eigen::Vector2d b = c.point(phi);
    const Eigen::Vector2d nb(std::cos(phi), std::sin(phi));
    return {phi, (b - a).norm(), std::asin(std::min(1.0, std::abs(dir.dot(nb))))};
}

/// tan(nδ) − n tan δ evaluated in quad precision.
inline double quad_residual(int n, double delta)
{
    using Q = boost::multiprecision::cpp_bin_float_quad;
    const Q d(delta);
    const Q r = boost::multiprecision::tan(Q(n) * d) - Q(n) * boost::multiprecision::tan(d);
    return static_cast<double>(boost::multiprecision::abs(r));
}

/// Exit parameter t > 0 of x + t v from the ellipsoid Σ x_i²/a_i² = 1,
/// axis-aligned and centered at the origin, in long double.
inline double ellipsoid_exit(const Eigen::VectorXd& axes, const Eigen::VectorXd& x, const Eigen::VectorXd& v)
{
    long double A = 0, B = 0, C = -1;
    for (Eigen::Index i = 0; i < axes.size(); ++i) {
        const long double a2 = static_cast<long double>(axes(i)) * axes(i);
        A += static_cast<long double>(v(i)) * v(i) / a2;
        B += 2.0L * x(i) * v(i) / a2;
        C += static_cast<long double>(x(i)) * x(i) / a2;
    }
    const long double disc = std::sqrt(B * B - 4 * A * C);
    return static_cast<double>((-B + disc) / (2 * A));
}

/// Outer unit normal of the axis-aligned origin-centered ellipsoid.
inline Eigen::VectorXd ellipsoid_normal(const Eigen::VectorXd& axes, const Eigen::VectorXd& x)
{
    return x.cwiseQuotient(axes.cwiseProduct(axes)).normalized();
}

}  // namespace oracle
