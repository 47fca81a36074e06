#pragma once

// Numerical checks of the chord lemmas for constant-width curves and of the
// curvature quadratic that links the two principal geodesics through a point.
//
// Conventions: chords on planar curves are launched counterclockwise from the
// support angle θ; k and l in the curvature inequality are the curvature at
// the launch point and the length of the chord leaving it; in the quadratic,
// k1(b) is the curvature at the far end b of the chord of length l1.

#include "gutkin/billiard.hpp"
#include "gutkin/geom2d.hpp"
#include "gutkin/geomnd.hpp"

#include <string>
#include <vector>

namespace gutkin {

struct AntipodalCheck {
    double theta_b = 0.0;
    double theta_c = 0.0;
    /// Angular distance between c and the antipode of b.
    double claim_defect = 0.0;
    /// Largest arrival-angle defect of the two chords (the lemma assumes 0).
    double gutkin_defect = 0.0;
};

/// Chords [a, b] from θ_a and [ā, c] from θ_a + π; the claim is c = b̄.
AntipodalCheck verify_antipodal_chords(const SupportCurve2D& curve, double delta, double theta_a);

struct WidthChordCheck {
    double rho_sum_err = 0.0;
    double chord_sum_err = 0.0;
    double l = 0.0;
    double l_bar = 0.0;
};

/// |ρ(θ)+ρ(θ+π) − 2R| and |l + l̄ − 4R sin δ| with l, l̄ from the chord
/// integral. Throws NotConstantWidth.
WidthChordCheck verify_width_chord_identity(const SupportCurve2D& curve, double delta, double theta_a);

enum class PairSide {
    OneBelowOneAbove,  // k·l < 2 sin δ at exactly one end
    BothEqual,         // both within the equality band
    BothBelow,
    BothAbove,
};

const char* to_string(PairSide side);

struct AntipodalPair {
    double theta = 0.0;
    double kl = 0.0;
    double kl_bar = 0.0;
    PairSide side = PairSide::BothEqual;
};

struct CurvatureInequalityReport {
    double delta = 0.0;
    int grid = 0;
    /// min over the grid of k·l − sin δ, and where it occurs.
    double min_margin = 0.0;
    double min_margin_theta = 0.0;
    /// max over the grid of |k·l − 2 sin δ|.
    double max_equality_gap = 0.0;
    /// Largest Gutkin defect of the launched chords.
    double max_gutkin_defect = 0.0;
    /// l(θ_min) − 2 ρ_min sin δ at the point of minimal curvature radius.
    double osculating_margin = 0.0;
    std::vector<AntipodalPair> pairs;
};

/// Requires a constant-width curve. Pairs within `equality_band` of 2 sin δ
/// on both ends are reported as BothEqual.
CurvatureInequalityReport check_curvature_inequality(const SupportCurve2D& curve, double delta, int grid,
                                                     double equality_band = 1e-12);

/// l(θ_min) − 2 ρ_min sin δ, with l the ray-shot chord at the point of
/// minimal curvature radius.
double osculating_margin(const SupportCurve2D& curve, double delta);

struct QuadraticCoeffs {
    double A = 0.0;
    double B = 0.0;
    double C = 0.0;
    double k1_b = 0.0;
    double l1 = 0.0;
    double delta = 0.0;
};

QuadraticCoeffs curvature_coefficients(double k1_b, double l1, double delta);

struct QuadraticSolution {
    QuadraticCoeffs coeffs;
    double discriminant = 0.0;
    /// Real roots, ascending; a double root appears twice. Empty if complex.
    std::vector<double> roots;
};

/// Throws DegenerateQuadratic when |A| < 1e-14.
QuadraticSolution curvature_quadratic(double k1_b, double l1, double delta);

enum class DichotomyCase {
    Case1,          // C < 0: a single positive root
    Case1Boundary,  // C = 0 within tolerance: roots {0, −B/A}
    Case2,          // C > 0: two positive roots (or complex)
};

const char* to_string(DichotomyCase c);

struct DichotomyPoint {
    double theta_a = 0.0;
    double theta_b = 0.0;
    double k1_b = 0.0;
    double l1 = 0.0;
    double C = 0.0;
    DichotomyCase kind = DichotomyCase::Case1Boundary;
    std::vector<double> positive_roots;
};

struct DichotomyReport {
    double delta = 0.0;
    std::vector<DichotomyPoint> points;
    int case1 = 0;
    int boundary = 0;
    int case2 = 0;
};

/// Builds (k1(b), l1) from the δ-chord at each grid angle and classifies the
/// resulting quadratic by the sign of C (tolerance 1e-14).
DichotomyReport case_dichotomy_probe(const SupportCurve2D& curve, double delta,
                                     const std::vector<double>& theta_grid);

struct ChordIdentityCheck {
    /// |⟨n(a), b − a⟩ − l sin δ|
    double launch_err = 0.0;
    /// |⟨n(b), b − a⟩ + l sin δ|
    double arrival_err = 0.0;
};

/// Evaluates both chord identities on a δ-chord of `body`.
ChordIdentityCheck verify_chord_identities(const ConvexBody& body, const ChordRecord& chord, double delta);

/// One line of the lemma report.
struct LemmaReport {
    std::string lemma;
    std::string curve;
    double delta = 0.0;
    int grid = 0;
    double worst_error = 0.0;
    bool pass = true;
    /// "assert" or "diagnostic"
    std::string mode;
};

/// All lemma checks for one constant-width curve at one δ. Checks whose
/// hypotheses hold exactly (identities of constant-width curves, everything
/// on circles) run in assert mode; the others are diagnostic.
std::vector<LemmaReport> run_lemma_suite(const SupportCurve2D& curve, const std::string& curve_id, double delta,
                                         int grid);

}  // namespace gutkin
