#pragma once

#include "gutkin/billiard.hpp"
#include "gutkin/geomnd.hpp"
#include "gutkin/sampling.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace gutkin {

/// Gutkin defect statistics over a deterministic sample of δ-chords.
struct DefectReport {
    std::string body;
    double delta = 0.0;
    std::size_t sample_count = 0;
    std::uint64_t seed = 0;
    double max_defect = 0.0;
    double mean_defect = 0.0;
    double rms_defect = 0.0;
    /// Launches that raised RayMisses; tolerated below 0.1% of the samples.
    std::size_t misses = 0;
    ChordRecord worst_chord;
};

DefectReport defect_scan(const ConvexBody& body, double delta, const SamplerSpec& sampler);

struct CharacterizationRow {
    std::string body;
    bool round = false;
    std::vector<double> mean_defect;  // one per δ of the grid
    double min_mean_defect = 0.0;
};

struct CharacterizationTable {
    std::vector<double> delta_grid;
    std::vector<CharacterizationRow> rows;
    /// Largest min-over-δ mean defect among the round bodies (0 if none).
    double sphere_baseline = 0.0;
    /// Round rows below 1e-9 and every other row above 100 × baseline.
    bool pass = false;
};

CharacterizationTable sphere_characterization_experiment(const std::vector<ConvexBody>& family,
                                                         const std::vector<double>& delta_grid,
                                                         const SamplerSpec& sampler);

struct ScalingPoint {
    double eps = 0.0;
    double rms_defect = 0.0;
};

struct ScalingResult {
    int n = 0;
    double delta = 0.0;
    std::vector<ScalingPoint> points;
    /// Least-squares slope of log(rms) against log(eps); NaN with fewer than
    /// two positive points.
    double slope = 0.0;
};

/// Planar defect scans of h = 1 + ε cos nθ for each ε. Throws
/// ConvexityViolation when some ε ≥ 1/(n² − 1).
ScalingResult perturbation_scaling(int n, double delta, const std::vector<double>& eps_list,
                                   const SamplerSpec& sampler);

double loglog_slope(const std::vector<ScalingPoint>& points);

/// CSV: eps,rms_defect rows followed by a "# slope=..." footer line.
void write_scaling_csv(std::ostream& os, const ScalingResult& result);

}  // namespace gutkin
