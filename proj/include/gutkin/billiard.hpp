#pragma once

#include "gutkin/geom2d.hpp"
#include "gutkin/geomnd.hpp"

#include <iosfwd>
#include <vector>

namespace gutkin {

/// Billiard state: a boundary foot and a unit direction entering the body.
struct OrientedLine {
    VecX foot;
    VecX dir;
};

/// Boundary coordinates of a planar billiard: arc length s ∈ [0, perimeter)
/// and p = cos of the angle between the outgoing direction and the
/// counterclockwise tangent.
struct PhasePoint2D {
    double s = 0.0;
    double p = 0.0;
};

struct ChordRecord {
    VecX p_from;
    VecX p_to;
    double length = 0.0;
    double launch_angle = 0.0;
    double arrival_angle = 0.0;
    double defect = 0.0;
};

struct OrbitStep {
    ChordRecord chord;
    /// Tangent direction used to launch this chord.
    VecX tangent;
    /// |tangential part of the chord direction at arrival| − cos δ.
    double tangential_drift = 0.0;
};

/// A δ-chord on a planar support curve in support-angle coordinates.
struct PlanarChord {
    double theta_from = 0.0;
    double theta_to = 0.0;
    double length = 0.0;
    double arrival_angle = 0.0;
    double defect = 0.0;
};

/// Angle between a unit direction and the tangent hyperplane with the given
/// unit normal, in [0, π/2].
double angle_to_tangent_plane(const VecX& dir, const VecX& unit_normal);

/// One bounce: next foot is the exit of the line, direction is mirrored in the
/// tangent hyperplane there. Propagates RayMisses.
OrientedLine reflect(const ConvexBody& body, const OrientedLine& line);

/// Chord launched from `foot` along cos δ·tangent_dir + sin δ·inner_normal.
ChordRecord delta_chord(const ConvexBody& body, const VecX& foot, const VecX& tangent_dir, double delta);

/// Chains δ-chords: each next launch tangent is the normalized tangential
/// projection of the arriving chord direction. Drift is recorded, not fixed.
std::vector<OrbitStep> sigma_orbit(const ConvexBody& body, const VecX& start_foot,
                                   const VecX& start_tangent, double delta, int n_steps);

/// δ-chord from γ(θ) towards increasing θ (orientation +1) or decreasing θ (−1).
PlanarChord planar_delta_chord(const SupportCurve2D& curve, double theta, double delta,
                               int orientation = 1);

/// Billiard map of a planar support curve in (s, p) coordinates.
PhasePoint2D billiard_map(const SupportCurve2D& curve, const PhasePoint2D& phase);

/// Determinant of the Jacobian of billiard_map by central differences with
/// step `step` in s and p; falls back to Richardson extrapolation when the
/// plain estimate is more than 1e-6 away from 1. Throws DegeneratePhase for
/// |p| > 1 − 1e-3.
double symplectic_jacobian(const SupportCurve2D& curve, const PhasePoint2D& phase, double step = 1e-5);

/// CSV: step, foot_0..foot_{d-1}, length, launch_angle, arrival_angle, defect.
void write_orbit_csv(std::ostream& os, const std::vector<OrbitStep>& orbit);

}  // namespace gutkin
