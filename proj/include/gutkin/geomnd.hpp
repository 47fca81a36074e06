#pragma once

#include "gutkin/geom2d.hpp"

#include <Eigen/Dense>

#include <optional>
#include <utility>
#include <string>
#include <variant>

namespace gutkin {

using VecX = Eigen::VectorXd;
using MatX = Eigen::MatrixXd;

struct Sphere {
    VecX center;
    double radius = 1.0;
};

/// Axis-aligned in `frame`: column i of the frame carries semi-axis i.
struct Ellipsoid {
    VecX center;
    VecX semi_axes;
    MatX frame;
};

/// Body swept by a symmetric constant-width profile around `axis` (d = 3,
/// centered at the origin). Profile coordinates: x along the axis, y the
/// distance from it.
struct Revolution {
    SupportCurve2D profile;
    Eigen::Vector3d axis;
};

/// A planar support-function curve seen as a 2-dimensional body.
struct Planar {
    SupportCurve2D curve;
};

struct SurfacePoint {
    VecX position;
    VecX inner_normal;
    /// d × (d−1), orthonormal, spans the tangent space.
    MatX tangent_basis;
    /// In `tangent_basis` coordinates; S t = D_t(outer normal). Not provided
    /// for Revolution bodies.
    std::optional<MatX> shape_operator;
    /// Outer-normal angle in the profile plane (Planar, Revolution).
    std::optional<double> support_angle;
};

/// Level-set data of a quadric body: F(x) = Σ y_i²/a_i² − 1, y = Qᵀ(x − c).
struct QuadricForm {
    VecX center;
    VecX semi_axes;
    MatX frame;

    VecX local(const VecX& x) const { return frame.transpose() * (x - center); }
    VecX gradient(const VecX& x) const;
    MatX hessian() const;
    /// Radial projection onto F = 0.
    VecX project(const VecX& x) const;
};

class ConvexBody {
public:
    using Shape = std::variant<Sphere, Ellipsoid, Revolution, Planar>;

    static ConvexBody sphere(int d, double radius, const VecX& center = VecX());
    /// `frame` defaults to the identity, `center` to the origin.
    static ConvexBody ellipsoid(const VecX& semi_axes, const MatX& frame = MatX(),
                                const VecX& center = VecX());
    static ConvexBody revolution(const SupportCurve2D& profile,
                                 const Eigen::Vector3d& axis = Eigen::Vector3d::UnitZ());
    static ConvexBody planar(const SupportCurve2D& curve);

    const Shape& shape() const noexcept { return shape_; }
    int dim() const noexcept { return dim_; }
    double diameter_bound() const noexcept { return diameter_; }
    /// Short human-readable identifier, e.g. "ellipsoid(2,1,1)".
    const std::string& id() const noexcept { return id_; }
    ConvexBody& set_id(std::string id);

    /// True for round spheres in any disguise (equal semi-axes, circle profiles).
    bool is_round() const;
    std::optional<QuadricForm> quadric() const;

    /// Signed gap, ≤ 0 inside, length units; zero exactly on the boundary.
    double gap(const VecX& x) const;

private:
    explicit ConvexBody(Shape s);

    Shape shape_;
    int dim_ = 0;
    double diameter_ = 0.0;
    std::string id_;
};

bool contains(const ConvexBody& body, const VecX& x);

/// First forward boundary point of the ray origin + t·dir, t > 0.
/// Throws RayMisses for an outside origin or a (near-)tangent launch.
SurfacePoint ray_exit(const ConvexBody& body, const VecX& origin, const VecX& dir);

/// Throws NotOnBoundary when `position` is farther than 1e-9 (relative to
/// the body scale) from the boundary.
SurfacePoint surface_point(const ConvexBody& body, const VecX& position);

/// Exit support angle of a chord on a planar support curve: the unique φ with
/// ⟨u(φ), dir⟩ > 0 such that γ(φ) lies on the line origin + t·dir.
double planar_exit_angle(const SupportCurve2D& curve, const Vec2& origin, const Vec2& dir);

/// Orthonormal pair (e1, e2) perpendicular to a unit 3-axis, e1 × e2 = axis.
std::pair<Eigen::Vector3d, Eigen::Vector3d> perpendicular_pair(const Eigen::Vector3d& axis);

/// Orthonormal completion of a unit normal: d × (d−1) tangent basis.
MatX tangent_basis_of(const VecX& unit_normal);

}  // namespace gutkin
