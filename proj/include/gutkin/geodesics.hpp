#pragma once

// Geodesics on quadric bodies in R^3 and their Frenet data.

#include "gutkin/geomnd.hpp"

#include <Eigen/Dense>

#include <iosfwd>
#include <vector>

namespace gutkin {

struct GeodesicSample {
    double s = 0.0;
    Eigen::Vector3d position;
    Eigen::Vector3d v;
    /// Unit inner normal of the body.
    Eigen::Vector3d n;
    /// v × n
    Eigen::Vector3d w;
    double k = 0.0;
    double tau = 0.0;
};

/// RK4 on ẍ = −(vᵀHv / |∇F|²) ∇F with the position projected back onto the
/// boundary and the velocity re-normalized in the tangent plane after every
/// step. `step` ≤ 0 selects 1e-3 × diameter; the last step is shortened so
/// that the final sample sits at s = length. τ = ⟨ṅ + k v, w⟩ with ṅ from
/// central differences (second-order one-sided at the ends).
///
/// Sphere and Ellipsoid bodies in d = 3 only (std::invalid_argument
/// otherwise, and for a direction that is not a unit tangent within 1e-10).
/// Throws StepTooLarge when a step moves |v| or ⟨v, n⟩ by more than 1e-6.
std::vector<GeodesicSample> integrate_geodesic(const ConvexBody& body, const SurfacePoint& start,
                                               const Eigen::Vector3d& dir, double length, double step = 0.0);

/// Finite-difference checks of the frame equations on a sample list.
struct FrenetResiduals {
    /// max |v̇ − k n|
    double f1 = 0.0;
    /// max |ṅ + k v − τ w|
    double f2 = 0.0;
    /// max |⟨ẇ, v⟩| and max |⟨ẇ, n⟩ + τ|
    double f3_v = 0.0;
    double f3_n = 0.0;
    /// max deviation of {v, n, w} from an orthonormal frame
    double orthonormality = 0.0;
};

FrenetResiduals frenet_residuals(const std::vector<GeodesicSample>& samples);

/// Starts at 1e-3 × diameter and halves the step (at most `max_halvings`
/// times) until the f1 residual is below `tolerance`.
std::vector<GeodesicSample> integrate_geodesic_adaptive(const ConvexBody& body, const SurfacePoint& start,
                                                        const Eigen::Vector3d& dir, double length,
                                                        double tolerance = 1e-6, int max_halvings = 6);

/// max(distance of the positions from their least-squares plane, ∫|τ| ds).
/// Requires at least 10 samples.
double planarity_defect(const std::vector<GeodesicSample>& samples);

double max_abs_torsion(const std::vector<GeodesicSample>& samples);

/// CSV: s,x,y,z,k,tau
void write_geodesic_csv(std::ostream& os, const std::vector<GeodesicSample>& samples);

}  // namespace gutkin
