#include "gutkin/delta_solver.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace gutkin {

namespace {

constexpr double kHalfPi = std::numbers::pi / 2;
constexpr double kExclusion = 1e-8;
constexpr double kResidualBound = 1e-10;
constexpr int kSubdivisions = 64;

double signed_residual(int n, double delta) { return std::tan(n * delta) - n * std::tan(delta); }

// Residual a root bracketed to adjacent doubles can carry: slope × ulp.
double resolution_bound(int n, double delta)
{
    const double sn = 1.0 / std::cos(n * delta);
    const double s1 = 1.0 / std::cos(delta);
    const double slope = std::abs(n * sn * sn - n * s1 * s1);
    const double ulp = std::nextafter(delta, 2.0) - delta;
    return std::max(kResidualBound, 8.0 * slope * ulp);
}

double bisect(int n, double lo, double hi)
{
    double flo = signed_residual(n, lo);
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        const double fmid = signed_residual(n, mid);
        if (fmid == 0.0) return mid;
        if ((fmid < 0.0) == (flo < 0.0)) {
            lo = mid;
            flo = fmid;
        } else {
            hi = mid;
        }
    }
    // Closer endpoint by residual.
    return std::abs(signed_residual(n, lo)) <= std::abs(signed_residual(n, hi)) ? lo : hi;
}

}  // namespace

double gutkin_residual(int n, double delta) { return std::abs(signed_residual(n, delta)); }

std::vector<DeltaRoot> solve_gutkin_delta(int n)
{
    if (n < 4) throw std::invalid_argument("solve_gutkin_delta: n must be >= 4 (got " + std::to_string(n) + ")");

    std::vector<double> edges{0.0};
    for (int k = 0;; ++k) {
        const double pole = (2 * k + 1) * std::numbers::pi / (2 * n);
        if (pole >= kHalfPi) break;
        edges.push_back(pole);
    }
    edges.push_back(kHalfPi);

    // On the first branch (0, π/(2n)) tan is convex with tan 0 = 0, so
    // tan(nδ) > n tan δ strictly and there is nothing to bracket.
    std::vector<DeltaRoot> roots;
    for (std::size_t b = 1; b + 1 < edges.size(); ++b) {
        const double lo = edges[b] + kExclusion;
        const double hi = edges[b + 1] - kExclusion;
        if (!(hi > lo)) continue;
        const double width = (hi - lo) / kSubdivisions;
        double a = lo;
        double fa = signed_residual(n, a);
        for (int i = 1; i <= kSubdivisions; ++i) {
            const double c = (i == kSubdivisions) ? hi : lo + i * width;
            const double fc = signed_residual(n, c);
            if (fa == 0.0 || (fa < 0.0) != (fc < 0.0)) {
                const double delta = fa == 0.0 ? a : bisect(n, a, c);
                const double res = gutkin_residual(n, delta);
                const double pole_gap = std::min(delta - edges[b], edges[b + 1] - delta);
                if (res < resolution_bound(n, delta) && pole_gap > kExclusion) roots.push_back({n, delta, res});
            }
            a = c;
            fa = fc;
        }
    }
    std::sort(roots.begin(), roots.end(), [](const auto& x, const auto& y) { return x.delta < y.delta; });
    return roots;
}

std::vector<RootCollision> root_near_collisions(int n_min, int n_max, double tolerance)
{
    std::vector<DeltaRoot> all;
    for (int n = std::max(4, n_min); n <= n_max; ++n) {
        const auto r = solve_gutkin_delta(n);
        all.insert(all.end(), r.begin(), r.end());
    }
    std::sort(all.begin(), all.end(), [](const auto& x, const auto& y) { return x.delta < y.delta; });
    std::vector<RootCollision> out;
    for (std::size_t i = 0; i < all.size(); ++i) {
        for (std::size_t j = i + 1; j < all.size() && all[j].delta - all[i].delta < tolerance; ++j) {
            if (all[i].n != all[j].n) out.push_back({all[i], all[j], all[j].delta - all[i].delta});
        }
    }
    return out;
}

}  // namespace gutkin
