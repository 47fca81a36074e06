#include "gutkin/lemmas.hpp"

#include "gutkin/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace gutkin {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kDegenerateA = 1e-14;
constexpr double kCaseTol = 1e-14;

void require_constant_width(const SupportCurve2D& curve, const char* what)
{
    if (!curve.is_constant_width()) throw NotConstantWidth(std::string(what) + ": curve is not of constant width");
}

void require_delta(double delta)
{
    if (!(delta > 0.0 && delta < kPi / 2)) throw std::invalid_argument("delta must lie in (0, pi/2)");
}

}  // namespace

const char* to_string(PairSide side)
{
    switch (side) {
    case PairSide::OneBelowOneAbove: return "one_below_one_above";
    case PairSide::BothEqual: return "both_equal";
    case PairSide::BothBelow: return "both_below";
    case PairSide::BothAbove: return "both_above";
    }
    return "unknown";
}

const char* to_string(DichotomyCase c)
{
    switch (c) {
    case DichotomyCase::Case1: return "case1";
    case DichotomyCase::Case1Boundary: return "case1_boundary";
    case DichotomyCase::Case2: return "case2";
    }
    return "unknown";
}

AntipodalCheck verify_antipodal_chords(const SupportCurve2D& curve, double delta, double theta_a)
{
    require_constant_width(curve, "verify_antipodal_chords");
    const auto ab = planar_delta_chord(curve, theta_a, delta);
    const auto ac = planar_delta_chord(curve, theta_a + kPi, delta);
    AntipodalCheck out;
    out.theta_b = ab.theta_to;
    out.theta_c = ac.theta_to;
    out.claim_defect = angular_distance(ac.theta_to, antipodal(curve, ab.theta_to));
    out.gutkin_defect = std::max(ab.defect, ac.defect);
    return out;
}

WidthChordCheck verify_width_chord_identity(const SupportCurve2D& curve, double delta, double theta_a)
{
    require_constant_width(curve, "verify_width_chord_identity");
    require_delta(delta);
    const double half_width = curve.r0();
    WidthChordCheck out;
    out.rho_sum_err = std::abs(curve.rho(theta_a) + curve.rho(theta_a + kPi) - 2.0 * half_width);
    out.l = chord_length_integral(curve, theta_a, delta);
    out.l_bar = chord_length_integral(curve, theta_a + kPi, delta);
    out.chord_sum_err = std::abs(out.l + out.l_bar - 4.0 * half_width * std::sin(delta));
    return out;
}

double osculating_margin(const SupportCurve2D& curve, double delta)
{
    const double theta = curve.min_rho_theta();
    const auto chord = planar_delta_chord(curve, theta, delta);
    return chord.length - 2.0 * curve.min_rho() * std::sin(delta);
}

CurvatureInequalityReport check_curvature_inequality(const SupportCurve2D& curve, double delta, int grid,
                                                     double equality_band)
{
    require_constant_width(curve, "check_curvature_inequality");
    require_delta(delta);
    if (grid < 2) throw std::invalid_argument("check_curvature_inequality: grid must be >= 2");

    const double s = std::sin(delta);
    CurvatureInequalityReport rep;
    rep.delta = delta;
    rep.grid = grid;
    rep.min_margin = std::numeric_limits<double>::infinity();

    auto kl_at = [&](double theta) {
        const auto c = planar_delta_chord(curve, theta, delta);
        rep.max_gutkin_defect = std::max(rep.max_gutkin_defect, c.defect);
        return c.length / curve.rho(theta);
    };

    for (int i = 0; i < grid; ++i) {
        const double theta = 2.0 * kPi * i / grid;
        const double kl = kl_at(theta);
        if (kl - s < rep.min_margin) {
            rep.min_margin = kl - s;
            rep.min_margin_theta = theta;
        }
        rep.max_equality_gap = std::max(rep.max_equality_gap, std::abs(kl - 2.0 * s));
        if (theta >= kPi - 1e-12) continue;

        AntipodalPair pair;
        pair.theta = theta;
        pair.kl = kl;
        pair.kl_bar = kl_at(theta + kPi);
        const double d1 = pair.kl - 2.0 * s;
        const double d2 = pair.kl_bar - 2.0 * s;
        if (std::abs(d1) <= equality_band && std::abs(d2) <= equality_band)
            pair.side = PairSide::BothEqual;
        else if ((d1 < 0.0) != (d2 < 0.0))
            pair.side = PairSide::OneBelowOneAbove;
        else
            pair.side = d1 < 0.0 ? PairSide::BothBelow : PairSide::BothAbove;
        rep.pairs.push_back(pair);
    }
    rep.osculating_margin = osculating_margin(curve, delta);
    return rep;
}

QuadraticCoeffs curvature_coefficients(double k1_b, double l1, double delta)
{
    const double s = std::sin(delta);
    const double kl = k1_b * l1;
    QuadraticCoeffs q;
    q.A = l1 * s * (kl - s);
    q.B = 2.0 * s - kl * (1.0 + s * s);
    q.C = (s / l1) * (kl - 2.0 * s);
    q.k1_b = k1_b;
    q.l1 = l1;
    q.delta = delta;
    return q;
}

QuadraticSolution curvature_quadratic(double k1_b, double l1, double delta)
{
    if (!(l1 > 0.0)) throw std::invalid_argument("curvature_quadratic: l1 must be positive");
    require_delta(delta);
    QuadraticSolution sol;
    sol.coeffs = curvature_coefficients(k1_b, l1, delta);
    const auto& [A, B, C, k, l, d] = sol.coeffs;
    if (std::abs(A) < kDegenerateA) throw DegenerateQuadratic(A, B, C);

    sol.discriminant = B * B - 4.0 * A * C;
    if (sol.discriminant < 0.0) return sol;
    const double q = -0.5 * (B + std::copysign(std::sqrt(sol.discriminant), B));
    if (q == 0.0) {
        sol.roots = {0.0, 0.0};
        return sol;
    }
    sol.roots = {q / A, C / q};
    std::sort(sol.roots.begin(), sol.roots.end());
    return sol;
}

DichotomyReport case_dichotomy_probe(const SupportCurve2D& curve, double delta, const std::vector<double>& theta_grid)
{
    require_delta(delta);
    DichotomyReport rep;
    rep.delta = delta;
    for (double theta : theta_grid) {
        const auto chord = planar_delta_chord(curve, theta, delta);
        DichotomyPoint pt;
        pt.theta_a = chord.theta_from;
        pt.theta_b = chord.theta_to;
        pt.k1_b = 1.0 / curve.rho(chord.theta_to);
        pt.l1 = chord.length;
        std::vector<double> roots;
        try {
            const auto sol = curvature_quadratic(pt.k1_b, pt.l1, delta);
            pt.C = sol.coeffs.C;
            roots = sol.roots;
        } catch (const DegenerateQuadratic& e) {
            pt.C = curvature_coefficients(pt.k1_b, pt.l1, delta).C;
            if (e.has_linear_root()) roots = {e.linear_root()};
        }
        const double scale = std::abs(pt.k1_b) + 1.0 / pt.l1;
        for (double r : roots)
            if (r > 1e-12 * scale) pt.positive_roots.push_back(r);

        if (pt.C < -kCaseTol) {
            pt.kind = DichotomyCase::Case1;
            ++rep.case1;
        } else if (pt.C <= kCaseTol) {
            pt.kind = DichotomyCase::Case1Boundary;
            ++rep.boundary;
        } else {
            pt.kind = DichotomyCase::Case2;
            ++rep.case2;
        }
        rep.points.push_back(std::move(pt));
    }
    return rep;
}

ChordIdentityCheck verify_chord_identities(const ConvexBody& body, const ChordRecord& chord, double delta)
{
    const VecX n_a = surface_point(body, chord.p_from).inner_normal;
    const VecX n_b = surface_point(body, chord.p_to).inner_normal;
    const VecX v = chord.p_to - chord.p_from;
    const double ls = chord.length * std::sin(delta);
    return {std::abs(n_a.dot(v) - ls), std::abs(n_b.dot(v) + ls)};
}

std::vector<LemmaReport> run_lemma_suite(const SupportCurve2D& curve, const std::string& curve_id, double delta,
                                         int grid)
{
    require_constant_width(curve, "run_lemma_suite");
    require_delta(delta);
    const bool circle = curve.is_circle();
    const char* conditional = circle ? "assert" : "diagnostic";
    std::vector<LemmaReport> out;
    auto add = [&](std::string lemma, double worst, bool pass, const char* mode) {
        out.push_back({std::move(lemma), curve_id, delta, grid, worst, pass, mode});
    };

    double odin = 0.0, dva = 0.0, routes = 0.0, gutkin = 0.0, antipodal_claim = 0.0;
    for (int i = 0; i < grid; ++i) {
        const double theta = 2.0 * kPi * i / grid;
        const auto w = verify_width_chord_identity(curve, delta, theta);
        odin = std::max(odin, w.rho_sum_err);
        dva = std::max(dva, w.chord_sum_err);
        const auto geo = planar_delta_chord(curve, theta, delta);
        routes = std::max(routes, std::abs(geo.length - w.l));
        gutkin = std::max(gutkin, geo.defect);
        antipodal_claim = std::max(antipodal_claim, verify_antipodal_chords(curve, delta, theta).claim_defect);
    }
    add("gutkin_defect", gutkin, circle ? gutkin < 1e-10 : true, conditional);
    add("width_identity_rho", odin, odin < 1e-12, "assert");
    add("width_identity_chord_sum", dva, dva < 1e-10, "assert");
    add("chord_routes_agree", routes, routes < 1e-8, conditional);
    add("antipodal_chords", antipodal_claim, antipodal_claim < 1e-10, conditional);

    const auto ineq = check_curvature_inequality(curve, delta, grid, circle ? 1e-12 : 1e-9);
    add("kl_greater_than_sin_delta", std::max(0.0, -ineq.min_margin), ineq.min_margin > 0.0, conditional);
    int off_pattern = 0;
    for (const auto& p : ineq.pairs)
        if (p.side != PairSide::OneBelowOneAbove && p.side != PairSide::BothEqual) ++off_pattern;
    add("kl_antipodal_alternative", off_pattern, off_pattern == 0, conditional);
    if (circle)
        add("kl_equals_two_sin_delta", ineq.max_equality_gap, ineq.max_equality_gap < 1e-12, "assert");
    const double osc = ineq.osculating_margin;
    if (circle)
        add("osculating_chord_bound", std::abs(osc), std::abs(osc) < 1e-12, "assert");
    else
        add("osculating_chord_bound", std::max(0.0, -osc), osc > 0.0, "assert");

    std::vector<double> thetas(grid);
    for (int i = 0; i < grid; ++i) thetas[i] = 2.0 * kPi * i / grid;
    const auto probe = case_dichotomy_probe(curve, delta, thetas);
    double root_err = 0.0;
    for (const auto& p : probe.points) {
        const double top = p.positive_roots.empty() ? 0.0 : p.positive_roots.back();
        root_err = std::max(root_err, std::abs(top - 1.0 / curve.r0()));
    }
    add("curvature_quadratic_root", root_err, circle ? root_err < 1e-12 && probe.boundary == grid : true,
        conditional);
    return out;
}

}  // namespace gutkin
