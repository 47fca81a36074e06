#include "gutkin/geodesics.hpp"

#include "gutkin/errors.hpp"
#include "gutkin/format.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <stdexcept>

namespace gutkin {

namespace {

using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;

constexpr double kDriftLimit = 1e-6;

struct Field {
    Vec3 center;
    Mat3 frame;
    Vec3 inv_sq;  // 1/a_i²

    Vec3 gradient(const Vec3& x) const { return frame * (2.0 * inv_sq.cwiseProduct(frame.transpose() * (x - center))); }
    Mat3 hessian() const { return frame * (2.0 * inv_sq).asDiagonal() * frame.transpose(); }

    Vec3 project(const Vec3& x) const
    {
        const Vec3 y = frame.transpose() * (x - center);
        const double q = std::sqrt(y.cwiseProduct(y).dot(inv_sq));
        return center + frame * (y / q);
    }

    Vec3 accel(const Vec3& x, const Vec3& v) const
    {
        const Vec3 g = gradient(x);
        return -(v.dot(hessian() * v) / g.squaredNorm()) * g;
    }
};

Field field_of(const ConvexBody& body)
{
    if (body.dim() != 3) throw std::invalid_argument("integrate_geodesic: body must be 3-dimensional");
    const auto q = body.quadric();
    if (!q) throw std::invalid_argument("integrate_geodesic: only sphere and ellipsoid bodies are supported");
    Field f;
    f.center = q->center;
    f.frame = q->frame;
    f.inv_sq = q->semi_axes.cwiseProduct(q->semi_axes).cwiseInverse();
    return f;
}

// d/ds at index i of a uniformly spaced sequence.
template <class Get>
Vec3 derivative(std::size_t i, std::size_t count, double h, Get get)
{
    if (i == 0) return (-3.0 * get(0) + 4.0 * get(1) - get(2)) / (2.0 * h);
    if (i + 1 == count) return (3.0 * get(i) - 4.0 * get(i - 1) + get(i - 2)) / (2.0 * h);
    return (get(i + 1) - get(i - 1)) / (2.0 * h);
}

double spacing(const std::vector<GeodesicSample>& s) { return s[1].s - s[0].s; }

}  // namespace

std::vector<GeodesicSample> integrate_geodesic(const ConvexBody& body, const SurfacePoint& start, const Vec3& dir,
                                               double length, double step)
{
    const Field f = field_of(body);
    if (!(length > 0.0)) throw std::invalid_argument("integrate_geodesic: length must be positive");
    if (step <= 0.0) step = 1e-3 * body.diameter_bound();

    Vec3 x = start.position;
    Vec3 v = dir;
    const Vec3 n0 = -f.gradient(x).normalized();
    if (std::abs(v.norm() - 1.0) > 1e-10 || std::abs(v.dot(n0)) > 1e-10)
        throw std::invalid_argument("integrate_geodesic: direction is not a unit tangent at the start point");

    const auto steps = static_cast<std::size_t>(std::max(2.0, std::ceil(length / step)));
    const double h = length / static_cast<double>(steps);
    const Mat3 H = f.hessian();

    std::vector<GeodesicSample> out(steps + 1);
    auto record = [&](std::size_t i) {
        const Vec3 g = f.gradient(x);
        auto& smp = out[i];
        smp.s = h * static_cast<double>(i);
        smp.position = x;
        smp.v = v;
        smp.n = -g / g.norm();
        smp.w = v.cross(smp.n);
        smp.k = v.dot(H * v) / g.norm();
    };
    record(0);

    for (std::size_t i = 1; i <= steps; ++i) {
        const Vec3 k1x = v, k1v = f.accel(x, v);
        const Vec3 k2x = v + 0.5 * h * k1v, k2v = f.accel(x + 0.5 * h * k1x, k2x);
        const Vec3 k3x = v + 0.5 * h * k2v, k3v = f.accel(x + 0.5 * h * k2x, k3x);
        const Vec3 k4x = v + h * k3v, k4v = f.accel(x + h * k3x, k4x);
        x += (h / 6.0) * (k1x + 2.0 * k2x + 2.0 * k3x + k4x);
        v += (h / 6.0) * (k1v + 2.0 * k2v + 2.0 * k3v + k4v);

        x = f.project(x);
        const Vec3 n = -f.gradient(x).normalized();
        const double drift = std::max(std::abs(v.norm() - 1.0), std::abs(v.dot(n)));
        if (drift > kDriftLimit)
            throw StepTooLarge("integrate_geodesic: frame drift " + format_double(drift) + " at s = " +
                               format_double(h * static_cast<double>(i)) + " with step " + format_double(h));
        v = (v - v.dot(n) * n).normalized();
        record(i);
    }

    const std::size_t count = out.size();
    for (std::size_t i = 0; i < count; ++i) {
        const Vec3 ndot = derivative(i, count, h, [&](std::size_t j) { return out[j].n; });
        out[i].tau = (ndot + out[i].k * out[i].v).dot(out[i].w);
    }
    return out;
}

FrenetResiduals frenet_residuals(const std::vector<GeodesicSample>& samples)
{
    FrenetResiduals r;
    const std::size_t count = samples.size();
    if (count < 3) throw std::invalid_argument("frenet_residuals: need at least 3 samples");
    const double h = spacing(samples);
    for (std::size_t i = 0; i < count; ++i) {
        const auto& p = samples[i];
        const Vec3 vdot = derivative(i, count, h, [&](std::size_t j) { return samples[j].v; });
        const Vec3 ndot = derivative(i, count, h, [&](std::size_t j) { return samples[j].n; });
        const Vec3 wdot = derivative(i, count, h, [&](std::size_t j) { return samples[j].w; });
        r.f1 = std::max(r.f1, (vdot - p.k * p.n).norm());
        r.f2 = std::max(r.f2, (ndot + p.k * p.v - p.tau * p.w).norm());
        r.f3_v = std::max(r.f3_v, std::abs(wdot.dot(p.v)));
        r.f3_n = std::max(r.f3_n, std::abs(wdot.dot(p.n) + p.tau));
        Mat3 frame;
        frame << p.v, p.n, p.w;
        r.orthonormality = std::max(r.orthonormality, (frame.transpose() * frame - Mat3::Identity()).cwiseAbs().maxCoeff());
    }
    return r;
}

std::vector<GeodesicSample> integrate_geodesic_adaptive(const ConvexBody& body, const SurfacePoint& start,
                                                        const Vec3& dir, double length, double tolerance,
                                                        int max_halvings)
{
    double step = 1e-3 * body.diameter_bound();
    for (int i = 0;; ++i, step *= 0.5) {
        auto samples = integrate_geodesic(body, start, dir, length, step);
        if (frenet_residuals(samples).f1 < tolerance || i >= max_halvings) return samples;
    }
}

double planarity_defect(const std::vector<GeodesicSample>& samples)
{
    if (samples.size() < 10) throw std::invalid_argument("planarity_defect: need at least 10 samples");
    Vec3 centroid = Vec3::Zero();
    for (const auto& p : samples) centroid += p.position;
    centroid /= static_cast<double>(samples.size());
    Eigen::MatrixXd centered(samples.size(), 3);
    for (std::size_t i = 0; i < samples.size(); ++i) centered.row(i) = (samples[i].position - centroid).transpose();
    const Eigen::JacobiSVD<Eigen::MatrixXd> svd(centered, Eigen::ComputeThinV);
    const Vec3 normal = svd.matrixV().col(2);
    const double distance = (centered * normal).cwiseAbs().maxCoeff();

    double torsion = 0.0;
    for (std::size_t i = 1; i < samples.size(); ++i)
        torsion += 0.5 * (std::abs(samples[i].tau) + std::abs(samples[i - 1].tau)) * (samples[i].s - samples[i - 1].s);
    return std::max(distance, torsion);
}

double max_abs_torsion(const std::vector<GeodesicSample>& samples)
{
    double m = 0.0;
    for (const auto& p : samples) m = std::max(m, std::abs(p.tau));
    return m;
}

void write_geodesic_csv(std::ostream& os, const std::vector<GeodesicSample>& samples)
{
    os << "s,x,y,z,k,tau\n";
    for (const auto& p : samples)
        os << format_double(p.s) << ',' << format_double(p.position.x()) << ',' << format_double(p.position.y()) << ','
           << format_double(p.position.z()) << ',' << format_double(p.k) << ',' << format_double(p.tau) << '\n';
}

}  // namespace gutkin
