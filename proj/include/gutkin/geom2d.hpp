#pragma once

// Planar convex curves given by a trigonometric support function
//
//   h(θ) = r0 + Σ (a_n cos nθ + b_n sin nθ),   n ≥ 2,
//
// parametrized by the outer-normal angle θ. The boundary point with outer
// normal u(θ) = (cos θ, sin θ) is γ(θ) = h u + h' u⊥, the curve is traversed
// counterclockwise as θ grows, its unit tangent is u⊥(θ) = (−sin θ, cos θ)
// (tangent angle = θ + π/2) and dγ/dθ = ρ(θ) u⊥(θ) with ρ = h + h''.

#include <Eigen/Core>

#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

namespace gutkin {

using Vec2 = Eigen::Vector2d;

struct Harmonic {
    int n = 2;
    double a = 0.0;
    double b = 0.0;
};

struct CurvePoint {
    double theta = 0.0;
    Vec2 position;
    Vec2 tangent;
    Vec2 inner_normal;
    double rho = 0.0;
};

/// Outer unit normal u(θ).
inline Vec2 unit_normal(double theta) { return {std::cos(theta), std::sin(theta)}; }
/// Counterclockwise unit tangent u⊥(θ).
inline Vec2 unit_tangent(double theta) { return {-std::sin(theta), std::cos(theta)}; }

/// Wraps an angle into [0, 2π).
double wrap_angle(double theta);
/// Absolute angular distance in [0, π].
double angular_distance(double a, double b);

class SupportCurve2D {
public:
    /// Throws ConvexityViolation when ρ = h + h'' is not positive everywhere,
    /// std::invalid_argument for r0 ≤ 0 or a harmonic with n < 2.
    SupportCurve2D(double r0, std::vector<Harmonic> harmonics);

    static SupportCurve2D circle(double radius) { return SupportCurve2D(radius, {}); }

    double r0() const noexcept { return r0_; }
    const std::vector<Harmonic>& harmonics() const noexcept { return harmonics_; }

    double h(double theta) const;
    double dh(double theta) const;
    double d2h(double theta) const;
    double rho(double theta) const;
    double drho(double theta) const;
    double width(double theta) const { return h(theta) + h(theta + std::numbers::pi); }

    Vec2 position(double theta) const;

    /// True iff every non-zero harmonic has odd n (then h(θ)+h(θ+π) = 2 r0).
    bool is_constant_width() const;
    /// True iff h(−θ) = h(θ), i.e. no sine terms.
    bool is_even() const;
    bool is_circle() const;

    double perimeter() const;
    /// Arc length from θ = 0, unbounded and strictly increasing in θ.
    double arc_length(double theta) const;
    /// Inverse of arc_length on the whole real line.
    double theta_at_arc_length(double s) const;

    /// 2·(r0 + Σ |a_n| + |b_n|), an upper bound on the diameter.
    double diameter_bound() const;

    double min_rho() const noexcept { return min_rho_; }
    double min_rho_theta() const noexcept { return min_rho_theta_; }

    /// max over θ of ⟨p, u(θ)⟩ − h(θ): ≤ 0 iff p lies in the closed region.
    /// The maximizing θ is written to `argmax` when given. A finite `hint`
    /// skips the global grid search and refines locally from the hint.
    double support_gap(const Vec2& p, double* argmax = nullptr,
                       double hint = std::numeric_limits<double>::quiet_NaN()) const;

private:
    double r0_;
    std::vector<Harmonic> harmonics_;
    double min_rho_ = 0.0;
    double min_rho_theta_ = 0.0;
};

/// Constant-width curve; rejects even harmonics with NotConstantWidth.
SupportCurve2D make_constant_width(double r0, const std::vector<Harmonic>& odd_harmonics);

CurvePoint eval_point(const SupportCurve2D& curve, double theta);

/// Support parameter of the opposite end of the double normal through θ.
double antipodal(const SupportCurve2D& curve, double theta);

/// l = (1/cos δ) ∫₀^{2δ} cos φ · ρ(θ + φ) dφ, composite 64-point
/// Gauss–Legendre, panel count doubled until successive values agree.
double chord_length_integral(const SupportCurve2D& curve, double theta, double delta);
/// Same integral with a fixed number of panels per π/2 of arc.
double chord_length_integral(const SupportCurve2D& curve, double theta, double delta,
                             int panels_per_quarter);

}  // namespace gutkin
