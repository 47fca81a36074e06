#include "gutkin/geom2d.hpp"

#include "gutkin/errors.hpp"

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/tools/minima.hpp>
#include <boost/math/tools/roots.hpp>

#include <algorithm>
#include <stdexcept>

namespace gutkin {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

constexpr int kConvexityGrid = 4096;

// Strictly convex means ρ bounded away from zero relative to the scale.
constexpr double kConvexityMargin = 1e-9;

int max_order(const std::vector<Harmonic>& hs)
{
    int n = 1;
    for (const auto& hm : hs) n = std::max(n, hm.n);
    return n;
}

// Maximizes a smooth periodic function given value, first and second
// derivative, starting from the bracket [lo, hi] around a grid maximum.
template <class F, class DF, class D2F>
double refine_max(F f, DF df, D2F d2f, double lo, double hi)
{
    auto neg = [&](double t) { return -f(t); };
    auto [t, v] = boost::math::tools::brent_find_minima(neg, lo, hi, 40);
    (void)v;
    for (int it = 0; it < 6; ++it) {
        const double curv = d2f(t);
        if (!(curv < 0.0)) break;
        const double step = -df(t) / curv;
        const double next = t + step;
        if (next < lo || next > hi) break;
        t = next;
        if (std::abs(step) < 1e-16) break;
    }
    return t;
}

}  // namespace

double wrap_angle(double theta)
{
    double w = std::fmod(theta, kTwoPi);
    if (w < 0.0) w += kTwoPi;
    if (w >= kTwoPi) w = 0.0;
    return w;
}

double angular_distance(double a, double b)
{
    const double d = wrap_angle(a - b);
    return std::min(d, kTwoPi - d);
}

SupportCurve2D::SupportCurve2D(double r0, std::vector<Harmonic> harmonics)
    : r0_(r0), harmonics_(std::move(harmonics))
{
    if (!(r0_ > 0.0) || !std::isfinite(r0_))
        throw std::invalid_argument("support curve: r0 must be positive");
    for (const auto& hm : harmonics_) {
        if (hm.n < 2) throw std::invalid_argument("support curve: harmonic order must be >= 2");
        if (!std::isfinite(hm.a) || !std::isfinite(hm.b))
            throw std::invalid_argument("support curve: non-finite coefficient");
    }

    // Every local minimum of the trigonometric polynomial ρ is bracketed by a
    // discrete local minimum on a grid much finer than the highest harmonic.
    const int m = std::max(kConvexityGrid, 64 * max_order(harmonics_));
    const double step = kTwoPi / m;
    std::vector<double> vals(m);
    for (int i = 0; i < m; ++i) vals[i] = rho(i * step);

    min_rho_ = std::numeric_limits<double>::infinity();
    for (int i = 0; i < m; ++i) {
        const double prev = vals[(i + m - 1) % m];
        const double next = vals[(i + 1) % m];
        if (vals[i] > prev || vals[i] > next) continue;
        const double center = i * step;
        auto [t, v] = boost::math::tools::brent_find_minima(
            [this](double x) { return rho(x); }, center - step, center + step, 50);
        for (int it = 0; it < 4; ++it) {
            double curv = 0.0;
            for (const auto& hm : harmonics_) {
                const double k = -(1.0 - hm.n * hm.n) * hm.n * hm.n;
                curv += k * (hm.a * std::cos(hm.n * t) + hm.b * std::sin(hm.n * t));
            }
            if (!(curv > 0.0)) break;
            const double next = t - drho(t) / curv;
            if (std::abs(next - center) > step) break;
            t = next;
        }
        v = rho(t);
        if (v < min_rho_) {
            min_rho_ = v;
            min_rho_theta_ = wrap_angle(t);
        }
        if (harmonics_.empty()) break;
    }
    if (min_rho_ <= kConvexityMargin * r0_) throw ConvexityViolation(min_rho_theta_, min_rho_);
}

double SupportCurve2D::h(double theta) const
{
    double v = r0_;
    for (const auto& hm : harmonics_) v += hm.a * std::cos(hm.n * theta) + hm.b * std::sin(hm.n * theta);
    return v;
}

double SupportCurve2D::dh(double theta) const
{
    double v = 0.0;
    for (const auto& hm : harmonics_)
        v += hm.n * (-hm.a * std::sin(hm.n * theta) + hm.b * std::cos(hm.n * theta));
    return v;
}

double SupportCurve2D::d2h(double theta) const
{
    double v = 0.0;
    for (const auto& hm : harmonics_)
        v -= hm.n * hm.n * (hm.a * std::cos(hm.n * theta) + hm.b * std::sin(hm.n * theta));
    return v;
}

double SupportCurve2D::rho(double theta) const
{
    double v = r0_;
    for (const auto& hm : harmonics_) {
        const double k = 1.0 - hm.n * hm.n;
        v += k * (hm.a * std::cos(hm.n * theta) + hm.b * std::sin(hm.n * theta));
    }
    return v;
}

double SupportCurve2D::drho(double theta) const
{
    double v = 0.0;
    for (const auto& hm : harmonics_) {
        const double k = (1.0 - hm.n * hm.n) * hm.n;
        v += k * (-hm.a * std::sin(hm.n * theta) + hm.b * std::cos(hm.n * theta));
    }
    return v;
}

Vec2 SupportCurve2D::position(double theta) const
{
    return h(theta) * unit_normal(theta) + dh(theta) * unit_tangent(theta);
}

bool SupportCurve2D::is_constant_width() const
{
    return std::all_of(harmonics_.begin(), harmonics_.end(), [](const Harmonic& hm) {
        return hm.n % 2 == 1 || (hm.a == 0.0 && hm.b == 0.0);
    });
}

bool SupportCurve2D::is_even() const
{
    return std::all_of(harmonics_.begin(), harmonics_.end(),
                       [](const Harmonic& hm) { return hm.b == 0.0; });
}

bool SupportCurve2D::is_circle() const
{
    return std::all_of(harmonics_.begin(), harmonics_.end(),
                       [](const Harmonic& hm) { return hm.a == 0.0 && hm.b == 0.0; });
}

double SupportCurve2D::perimeter() const { return kTwoPi * r0_; }

double SupportCurve2D::arc_length(double theta) const
{
    double s = r0_ * theta;
    for (const auto& hm : harmonics_) {
        const double k = (1.0 - hm.n * hm.n) / hm.n;
        s += k * (hm.a * std::sin(hm.n * theta) + hm.b * (1.0 - std::cos(hm.n * theta)));
    }
    return s;
}

double SupportCurve2D::theta_at_arc_length(double s) const
{
    double spread = 0.0;
    for (const auto& hm : harmonics_)
        spread += std::abs((1.0 - hm.n * hm.n) / hm.n) * (std::abs(hm.a) + 2.0 * std::abs(hm.b));
    if (spread == 0.0) return s / r0_;
    const double lo = (s - spread) / r0_;
    const double hi = (s + spread) / r0_;
    auto fn = [&](double t) { return std::make_pair(arc_length(t) - s, rho(t)); };
    std::uintmax_t iters = 100;
    return boost::math::tools::newton_raphson_iterate(fn, s / r0_, lo, hi, 52, iters);
}

double SupportCurve2D::diameter_bound() const
{
    double amp = r0_;
    for (const auto& hm : harmonics_) amp += std::abs(hm.a) + std::abs(hm.b);
    return 2.0 * amp;
}

double SupportCurve2D::support_gap(const Vec2& p, double* argmax, double hint) const
{
    auto f = [&](double t) { return p.dot(unit_normal(t)) - h(t); };
    auto df = [&](double t) { return p.dot(unit_tangent(t)) - dh(t); };
    auto d2f = [&](double t) { return -p.dot(unit_normal(t)) - d2h(t); };

    if (std::isfinite(hint)) {
        double t = hint;
        bool ok = true;
        for (int it = 0; it < 12; ++it) {
            const double curv = d2f(t);
            if (!(curv < 0.0)) {
                ok = false;
                break;
            }
            const double step = -df(t) / curv;
            t += step;
            if (std::abs(t - hint) > 0.25) {
                ok = false;
                break;
            }
            if (std::abs(step) < 1e-15) break;
        }
        if (ok) {
            if (argmax) *argmax = wrap_angle(t);
            return f(t);
        }
    }

    const int m = std::max(96, 24 * max_order(harmonics_));
    const double step = kTwoPi / m;
    int best = 0;
    double best_val = -std::numeric_limits<double>::infinity();
    for (int i = 0; i < m; ++i) {
        const double v = f(i * step);
        if (v > best_val) {
            best_val = v;
            best = i;
        }
    }
    const double center = best * step;
    const double t = refine_max(f, df, d2f, center - step, center + step);
    if (argmax) *argmax = wrap_angle(t);
    return std::max(f(t), best_val);
}

SupportCurve2D make_constant_width(double r0, const std::vector<Harmonic>& odd_harmonics)
{
    for (const auto& hm : odd_harmonics) {
        if (hm.n < 3 || hm.n % 2 == 0)
            throw NotConstantWidth("constant-width curves take odd harmonics n >= 3 only (got n = " +
                                   std::to_string(hm.n) + ")");
    }
    return SupportCurve2D(r0, odd_harmonics);
}

CurvePoint eval_point(const SupportCurve2D& curve, double theta)
{
    CurvePoint cp;
    cp.theta = wrap_angle(theta);
    cp.position = curve.position(theta);
    cp.tangent = unit_tangent(theta);
    cp.inner_normal = -unit_normal(theta);
    cp.rho = curve.rho(theta);
    return cp;
}

double antipodal(const SupportCurve2D& curve, double theta)
{
    if (!curve.is_constant_width())
        throw NotConstantWidth("antipodal map needs a constant-width curve (even harmonic present)");
    return wrap_angle(theta + kPi);
}

double chord_length_integral(const SupportCurve2D& curve, double theta, double delta,
                             int panels_per_quarter)
{
    if (!(delta > 0.0 && delta < kPi / 2))
        throw std::invalid_argument("chord_length_integral: delta must lie in (0, pi/2)");
    if (panels_per_quarter < 1) throw std::invalid_argument("chord_length_integral: panels < 1");

    const double span = 2.0 * delta;
    const int panels = std::max(1, static_cast<int>(std::ceil(span / (kPi / 2) * panels_per_quarter)));
    const double width = span / panels;
    auto integrand = [&](double phi) { return std::cos(phi) * curve.rho(theta + phi); };
    double total = 0.0;
    for (int i = 0; i < panels; ++i) {
        total += boost::math::quadrature::gauss<double, 64>::integrate(integrand, i * width,
                                                                       (i + 1) * width);
    }
    return total / std::cos(delta);
}

double chord_length_integral(const SupportCurve2D& curve, double theta, double delta)
{
    double prev = chord_length_integral(curve, theta, delta, 1);
    for (int panels = 2; panels <= 64; panels *= 2) {
        const double next = chord_length_integral(curve, theta, delta, panels);
        if (std::abs(next - prev) <= 1e-14 * std::max(1.0, std::abs(next))) return next;
        prev = next;
    }
    return prev;
}

}  // namespace gutkin
