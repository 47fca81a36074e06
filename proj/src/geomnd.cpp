#include "gutkin/geomnd.hpp"

#include "gutkin/errors.hpp"

#include <Eigen/QR>
#include <boost/math/tools/roots.hpp>

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace gutkin {

namespace {

constexpr double kPi = std::numbers::pi;

// Relative tolerance for "on the boundary" and "inside".
constexpr double kBoundaryTol = 1e-9;

std::string format_number(double v)
{
    std::ostringstream os;
    os.precision(6);
    os << v;
    return os.str();
}

std::string format_curve(const SupportCurve2D& c)
{
    std::string s = "r0=" + format_number(c.r0());
    for (const auto& hm : c.harmonics()) {
        s += ";(" + std::to_string(hm.n) + "," + format_number(hm.a);
        if (hm.b != 0.0) s += "," + format_number(hm.b);
        s += ")";
    }
    return s;
}

struct ProfileCoords {
    Vec2 q;                 // (axial, radial ≥ 0)
    Eigen::Vector3d radial; // unit radial direction
};

ProfileCoords to_profile(const Revolution& rev, const VecX& x)
{
    const Eigen::Vector3d p = x.head<3>();
    const double axial = p.dot(rev.axis);
    Eigen::Vector3d perp = p - axial * rev.axis;
    const double r = perp.norm();
    Eigen::Vector3d radial = r > 1e-300 ? Eigen::Vector3d(perp / r) : perpendicular_pair(rev.axis).first;
    return {Vec2(axial, r), radial};
}

void require_dim(const ConvexBody& body, const VecX& x, const char* what)
{
    if (x.size() != body.dim())
        throw std::invalid_argument(std::string(what) + ": dimension mismatch (body d = " +
                                    std::to_string(body.dim()) + ", vector d = " +
                                    std::to_string(x.size()) + ")");
}

SurfacePoint quadric_surface_point(const QuadricForm& qf, const VecX& x, bool is_sphere)
{
    SurfacePoint sp;
    sp.position = x;
    const VecX grad = qf.gradient(x);
    const double gnorm = grad.norm();
    sp.inner_normal = -grad / gnorm;
    if (is_sphere) sp.inner_normal = (qf.center - x).normalized();
    sp.tangent_basis = tangent_basis_of(sp.inner_normal);
    if (is_sphere) {
        const auto m = sp.tangent_basis.cols();
        sp.shape_operator = MatX::Identity(m, m) / qf.semi_axes(0);
    } else {
        MatX s = sp.tangent_basis.transpose() * qf.hessian() * sp.tangent_basis / gnorm;
        sp.shape_operator = 0.5 * (s + s.transpose());
    }
    return sp;
}

SurfacePoint planar_surface_point(const SupportCurve2D& curve, double theta)
{
    SurfacePoint sp;
    sp.position = curve.position(theta);
    sp.inner_normal = -unit_normal(theta);
    sp.tangent_basis = unit_tangent(theta);
    sp.shape_operator = MatX::Constant(1, 1, 1.0 / curve.rho(theta));
    sp.support_angle = theta;
    return sp;
}

SurfacePoint revolution_surface_point(const Revolution& rev, const VecX& x, double theta)
{
    const auto pc = to_profile(rev, x);
    SurfacePoint sp;
    sp.position = x;
    const Eigen::Vector3d outer = std::cos(theta) * rev.axis + std::sin(theta) * pc.radial;
    sp.inner_normal = -outer;
    sp.tangent_basis = tangent_basis_of(sp.inner_normal);
    sp.support_angle = theta;
    return sp;
}

SurfacePoint revolution_ray_exit(const ConvexBody& body, const Revolution& rev, const VecX& origin,
                                 const VecX& dir)
{
    const double diam = body.diameter_bound();
    auto gap_at = [&](double t, double* arg, double hint) {
        const auto pc = to_profile(rev, origin + t * dir);
        return rev.profile.support_gap(pc.q, arg, hint);
    };

    const double g0 = gap_at(0.0, nullptr, std::numeric_limits<double>::quiet_NaN());
    if (g0 > kBoundaryTol * diam) throw RayMisses("ray origin lies outside the body");

    // The gap along a ray is convex in t, negative on the open chord.
    double hi = 1.5 * diam;
    double lo = 0.0;
    if (g0 >= -kBoundaryTol * diam) {
        double t = hi;
        bool found = false;
        for (int k = 0; k < 60; ++k) {
            t *= 0.5;
            if (t < 1e-12 * diam) break;
            if (gap_at(t, nullptr, std::numeric_limits<double>::quiet_NaN()) < 0.0) {
                found = true;
                break;
            }
            hi = t;
        }
        if (!found) throw RayMisses("ray is tangent to the body (no interior chord)");
        lo = t;
    }

    double hint = std::numeric_limits<double>::quiet_NaN();
    for (int it = 0; it < 200 && hi - lo > 1e-16 * diam; ++it) {
        const double mid = 0.5 * (lo + hi);
        double arg = 0.0;
        const double g = gap_at(mid, &arg, hi - lo < 0.05 * diam ? hint : std::numeric_limits<double>::quiet_NaN());
        hint = arg;
        if (g < 0.0)
            lo = mid;
        else
            hi = mid;
    }
    const double t = 0.5 * (lo + hi);
    if (t < 1e-12 * diam) throw RayMisses("ray is tangent to the body (no interior chord)");
    const VecX x = origin + t * dir;
    double theta = 0.0;
    gap_at(t, &theta, std::numeric_limits<double>::quiet_NaN());
    return revolution_surface_point(rev, x, theta);
}

}  // namespace

VecX QuadricForm::gradient(const VecX& x) const
{
    const VecX y = local(x);
    return frame * (2.0 * y.cwiseQuotient(semi_axes.cwiseProduct(semi_axes)));
}

MatX QuadricForm::hessian() const
{
    const VecX diag = 2.0 * semi_axes.cwiseProduct(semi_axes).cwiseInverse();
    return frame * diag.asDiagonal() * frame.transpose();
}

VecX QuadricForm::project(const VecX& x) const
{
    const VecX y = local(x);
    const double q = y.cwiseQuotient(semi_axes).norm();
    return center + frame * (y / q);
}

std::pair<Eigen::Vector3d, Eigen::Vector3d> perpendicular_pair(const Eigen::Vector3d& axis)
{
    Eigen::Index k = 0;
    axis.cwiseAbs().minCoeff(&k);
    Eigen::Vector3d e1 = axis.cross(Eigen::Vector3d::Unit(k)).normalized();
    Eigen::Vector3d e2 = axis.cross(e1);
    return {e1, e2};
}

MatX tangent_basis_of(const VecX& unit_normal)
{
    const auto d = unit_normal.size();
    Eigen::HouseholderQR<MatX> qr{MatX(unit_normal)};
    MatX q = qr.householderQ() * MatX::Identity(d, d);
    return q.rightCols(d - 1);
}

ConvexBody::ConvexBody(Shape s) : shape_(std::move(s)) {}

ConvexBody ConvexBody::sphere(int d, double radius, const VecX& center)
{
    if (d < 2) throw std::invalid_argument("sphere: dimension must be >= 2");
    if (!(radius > 0.0)) throw std::invalid_argument("sphere: radius must be positive");
    VecX c = center.size() == 0 ? VecX::Zero(d) : center;
    if (c.size() != d) throw std::invalid_argument("sphere: center has the wrong dimension");
    ConvexBody b(Sphere{c, radius});
    b.dim_ = d;
    b.diameter_ = 2.0 * radius;
    b.id_ = "sphere(d=" + std::to_string(d) + ",r=" + format_number(radius) + ")";
    return b;
}

ConvexBody ConvexBody::ellipsoid(const VecX& semi_axes, const MatX& frame, const VecX& center)
{
    const auto d = semi_axes.size();
    if (d < 2) throw std::invalid_argument("ellipsoid: need at least two semi-axes");
    if (!(semi_axes.minCoeff() > 0.0)) throw std::invalid_argument("ellipsoid: semi-axes must be positive");
    MatX q = frame.size() == 0 ? MatX::Identity(d, d) : frame;
    if (q.rows() != d || q.cols() != d) throw std::invalid_argument("ellipsoid: frame must be d x d");
    if (!(q.transpose() * q).isApprox(MatX::Identity(d, d), 1e-10))
        throw std::invalid_argument("ellipsoid: frame must be orthonormal");
    VecX c = center.size() == 0 ? VecX::Zero(d) : center;
    if (c.size() != d) throw std::invalid_argument("ellipsoid: center has the wrong dimension");
    ConvexBody b(Ellipsoid{c, semi_axes, q});
    b.dim_ = static_cast<int>(d);
    b.diameter_ = 2.0 * semi_axes.maxCoeff();
    std::string id = "ellipsoid(";
    for (Eigen::Index i = 0; i < d; ++i) id += (i ? "," : "") + format_number(semi_axes(i));
    b.id_ = id + ")";
    return b;
}

ConvexBody ConvexBody::revolution(const SupportCurve2D& profile, const Eigen::Vector3d& axis)
{
    if (!profile.is_constant_width())
        throw NotConstantWidth("revolution profile must be of constant width");
    if (!profile.is_even())
        throw std::invalid_argument("revolution profile must be symmetric: h(-theta) = h(theta)");
    if (!(axis.norm() > 0.0)) throw std::invalid_argument("revolution: zero axis");
    ConvexBody b(Revolution{profile, axis.normalized()});
    b.dim_ = 3;
    b.diameter_ = profile.diameter_bound();
    b.id_ = "revolution(" + format_curve(profile) + ")";
    return b;
}

ConvexBody ConvexBody::planar(const SupportCurve2D& curve)
{
    ConvexBody b(Planar{curve});
    b.dim_ = 2;
    b.diameter_ = curve.diameter_bound();
    b.id_ = "support2d(" + format_curve(curve) + ")";
    return b;
}

ConvexBody& ConvexBody::set_id(std::string id)
{
    id_ = std::move(id);
    return *this;
}

bool ConvexBody::is_round() const
{
    return std::visit(
        [](const auto& s) -> bool {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, Sphere>)
                return true;
            else if constexpr (std::is_same_v<T, Ellipsoid>)
                return s.semi_axes.maxCoeff() == s.semi_axes.minCoeff();
            else if constexpr (std::is_same_v<T, Revolution>)
                return s.profile.is_circle();
            else
                return s.curve.is_circle();
        },
        shape_);
}

std::optional<QuadricForm> ConvexBody::quadric() const
{
    if (const auto* s = std::get_if<Sphere>(&shape_))
        return QuadricForm{s->center, VecX::Constant(dim_, s->radius), MatX::Identity(dim_, dim_)};
    if (const auto* e = std::get_if<Ellipsoid>(&shape_)) return QuadricForm{e->center, e->semi_axes, e->frame};
    return std::nullopt;
}

double ConvexBody::gap(const VecX& x) const
{
    require_dim(*this, x, "gap");
    return std::visit(
        [&](const auto& s) -> double {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, Sphere>) {
                return (x - s.center).norm() - s.radius;
            } else if constexpr (std::is_same_v<T, Ellipsoid>) {
                const VecX y = s.frame.transpose() * (x - s.center);
                return (y.cwiseQuotient(s.semi_axes).norm() - 1.0) * s.semi_axes.minCoeff();
            } else if constexpr (std::is_same_v<T, Revolution>) {
                return s.profile.support_gap(to_profile(s, x).q);
            } else {
                return s.curve.support_gap(Vec2(x(0), x(1)));
            }
        },
        shape_);
}

bool contains(const ConvexBody& body, const VecX& x) { return body.gap(x) <= 0.0; }

double planar_exit_angle(const SupportCurve2D& curve, const Vec2& origin, const Vec2& dir)
{
    const double diam = curve.diameter_bound();
    if (curve.support_gap(origin) > kBoundaryTol * diam) throw RayMisses("ray origin lies outside the curve");

    const double phi_d = std::atan2(dir.y(), dir.x());
    auto g = [&](double phi) {
        const Vec2 v = curve.position(phi) - origin;
        return dir.x() * v.y() - dir.y() * v.x();
    };
    const double lo = phi_d - kPi / 2;
    const double hi = phi_d + kPi / 2;
    const double glo = g(lo);
    const double ghi = g(hi);
    if (!(glo < 0.0) || !(ghi > 0.0)) throw RayMisses("ray is tangent to the curve");

    boost::math::tools::eps_tolerance<double> tol(52);
    std::uintmax_t iters = 200;
    auto [a, b] = boost::math::tools::toms748_solve(g, lo, hi, glo, ghi, tol, iters);
    double phi = 0.5 * (a + b);
    // g'(φ) = ρ(φ) cos(φ − φ_d) > 0 on the bracket.
    for (int it = 0; it < 3; ++it) {
        const double slope = curve.rho(phi) * std::cos(phi - phi_d);
        if (!(slope > 0.0)) break;
        const double next = phi - g(phi) / slope;
        if (next <= lo || next >= hi) break;
        phi = next;
    }
    if ((curve.position(phi) - origin).norm() < 1e-12 * diam)
        throw RayMisses("ray is tangent to the curve (zero-length chord)");
    return wrap_angle(phi);
}

SurfacePoint ray_exit(const ConvexBody& body, const VecX& origin, const VecX& dir)
{
    require_dim(body, origin, "ray_exit");
    require_dim(body, dir, "ray_exit");
    if (std::abs(dir.norm() - 1.0) > 1e-9) throw std::invalid_argument("ray_exit: direction must be a unit vector");

    if (auto qf = body.quadric()) {
        const VecX y0 = qf->local(origin).cwiseQuotient(qf->semi_axes);
        const VecX e = (qf->frame.transpose() * dir).cwiseQuotient(qf->semi_axes);
        const double a = e.squaredNorm();
        const double b = y0.dot(e);
        const double c = y0.squaredNorm() - 1.0;
        if (c > 2.0 * kBoundaryTol) throw RayMisses("ray origin lies outside the body");
        const double disc = b * b - a * c;
        if (disc < 0.0) throw RayMisses("ray misses the body");
        const double q = -(b + std::copysign(std::sqrt(disc), b));
        double t = q / a;
        if (q != 0.0) t = std::max(t, c / q);
        if (!(t > 1e-12 * body.diameter_bound())) throw RayMisses("ray is tangent to the body (no interior chord)");
        return quadric_surface_point(*qf, origin + t * dir, std::holds_alternative<Sphere>(body.shape()));
    }
    if (const auto* p = std::get_if<Planar>(&body.shape())) {
        const double phi = planar_exit_angle(p->curve, Vec2(origin(0), origin(1)), Vec2(dir(0), dir(1)));
        return planar_surface_point(p->curve, phi);
    }
    const auto& rev = std::get<Revolution>(body.shape());
    return revolution_ray_exit(body, rev, origin, dir);
}

SurfacePoint surface_point(const ConvexBody& body, const VecX& position)
{
    require_dim(body, position, "surface_point");
    const double tol = kBoundaryTol * std::max(1.0, body.diameter_bound());
    if (auto qf = body.quadric()) {
        const double g = body.gap(position);
        if (std::abs(g) > tol) throw NotOnBoundary(g);
        return quadric_surface_point(*qf, position, std::holds_alternative<Sphere>(body.shape()));
    }
    if (const auto* p = std::get_if<Planar>(&body.shape())) {
        double theta = 0.0;
        const double g = p->curve.support_gap(Vec2(position(0), position(1)), &theta);
        if (std::abs(g) > tol) throw NotOnBoundary(g);
        auto sp = planar_surface_point(p->curve, theta);
        sp.position = position;
        return sp;
    }
    const auto& rev = std::get<Revolution>(body.shape());
    double theta = 0.0;
    const double g = rev.profile.support_gap(to_profile(rev, position).q, &theta);
    if (std::abs(g) > tol) throw NotOnBoundary(g);
    return revolution_surface_point(rev, position, theta);
}

}  // namespace gutkin
