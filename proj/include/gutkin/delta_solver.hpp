#pragma once

#include <vector>

namespace gutkin {

/// A solution δ ∈ (0, π/2) of tan(nδ) = n tan δ.
struct DeltaRoot {
    int n = 0;
    double delta = 0.0;
    double residual = 0.0;
};

/// |tan(nδ) − n tan δ|.
double gutkin_residual(int n, double delta);

/// All roots of tan(nδ) = n tan δ in (0, π/2), sorted ascending. Each
/// continuity branch of tan(nδ) (poles at (2k+1)π/(2n)) is scanned for sign
/// changes and every bracket is bisected to full precision. δ = 0 and points
/// within 1e-8 of a pole are excluded. Requires n ≥ 4.
std::vector<DeltaRoot> solve_gutkin_delta(int n);

struct RootCollision {
    DeltaRoot first;
    DeltaRoot second;
    double separation = 0.0;
};

/// Pairs of roots for different n in [n_min, n_max] closer than `tolerance`.
/// Diagnostic only.
std::vector<RootCollision> root_near_collisions(int n_min, int n_max, double tolerance);

}  // namespace gutkin
