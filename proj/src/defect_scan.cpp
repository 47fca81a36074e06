#include "gutkin/defect_scan.hpp"

#include "gutkin/errors.hpp"
#include "gutkin/format.hpp"
#include "gutkin/parallel.hpp"

#include <cmath>
#include <limits>
#include <optional>
#include <ostream>
#include <stdexcept>

namespace gutkin {

DefectReport defect_scan(const ConvexBody& body, double delta, const SamplerSpec& sampler)
{
    if (sampler.samples < 1) throw std::invalid_argument("defect_scan: need at least one sample");
    const auto sites = boundary_samples(body, sampler);
    std::vector<std::optional<ChordRecord>> chords(sites.size());
    parallel_for(sites.size(), [&](std::size_t i) {
        try {
            chords[i] = delta_chord(body, sites[i].foot, sites[i].tangent, delta);
        } catch (const RayMisses&) {
        }
    });

    DefectReport rep;
    rep.body = body.id();
    rep.delta = delta;
    rep.seed = sampler.seed;
    CompensatedSum sum;
    CompensatedSum sum_sq;
    bool have_worst = false;
    for (const auto& c : chords) {
        if (!c) {
            ++rep.misses;
            continue;
        }
        ++rep.sample_count;
        sum.add(c->defect);
        sum_sq.add(c->defect * c->defect);
        if (!have_worst || c->defect > rep.max_defect) {
            rep.max_defect = c->defect;
            rep.worst_chord = *c;
            have_worst = true;
        }
    }
    if (rep.misses * 1000 >= sites.size())
        throw RayMisses("defect_scan: " + std::to_string(rep.misses) + " of " + std::to_string(sites.size()) +
                        " launches missed (limit 0.1%)");
    rep.mean_defect = sum.value() / rep.sample_count;
    rep.rms_defect = std::sqrt(sum_sq.value() / rep.sample_count);
    return rep;
}

CharacterizationTable sphere_characterization_experiment(const std::vector<ConvexBody>& family,
                                                         const std::vector<double>& delta_grid,
                                                         const SamplerSpec& sampler)
{
    if (family.empty() || delta_grid.empty())
        throw std::invalid_argument("sphere_characterization_experiment: empty family or delta grid");
    CharacterizationTable table;
    table.delta_grid = delta_grid;
    for (const auto& body : family) {
        CharacterizationRow row;
        row.body = body.id();
        row.round = body.is_round();
        row.min_mean_defect = std::numeric_limits<double>::infinity();
        for (double delta : delta_grid) {
            const double m = defect_scan(body, delta, sampler).mean_defect;
            row.mean_defect.push_back(m);
            row.min_mean_defect = std::min(row.min_mean_defect, m);
        }
        table.rows.push_back(std::move(row));
    }

    bool pass = true;
    for (const auto& row : table.rows) {
        if (!row.round) continue;
        table.sphere_baseline = std::max(table.sphere_baseline, row.min_mean_defect);
        pass = pass && row.min_mean_defect < 1e-9;
    }
    for (const auto& row : table.rows) {
        if (!row.round) pass = pass && row.min_mean_defect > 100.0 * table.sphere_baseline;
    }
    table.pass = pass;
    return table;
}

double loglog_slope(const std::vector<ScalingPoint>& points)
{
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int m = 0;
    for (const auto& p : points) {
        if (!(p.eps > 0.0 && p.rms_defect > 0.0)) continue;
        const double x = std::log(p.eps);
        const double y = std::log(p.rms_defect);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
        ++m;
    }
    if (m < 2) return std::numeric_limits<double>::quiet_NaN();
    const double denom = m * sxx - sx * sx;
    if (denom == 0.0) return std::numeric_limits<double>::quiet_NaN();
    return (m * sxy - sx * sy) / denom;
}

ScalingResult perturbation_scaling(int n, double delta, const std::vector<double>& eps_list,
                                   const SamplerSpec& sampler)
{
    if (n < 2) throw std::invalid_argument("perturbation_scaling: harmonic order must be >= 2");
    ScalingResult res;
    res.n = n;
    res.delta = delta;
    for (double eps : eps_list) {
        if (eps < 0.0) throw std::invalid_argument("perturbation_scaling: eps must be non-negative");
        const SupportCurve2D probe(1.0, {{n, eps, 0.0}});
        const auto rep = defect_scan(ConvexBody::planar(probe), delta, sampler);
        res.points.push_back({eps, rep.rms_defect});
    }
    res.slope = loglog_slope(res.points);
    return res;
}

void write_scaling_csv(std::ostream& os, const ScalingResult& result)
{
    os << "eps,rms_defect\n";
    for (const auto& p : result.points) os << format_double(p.eps) << ',' << format_double(p.rms_defect) << '\n';
    os << "# slope=" << format_double(result.slope) << " n=" << result.n << " delta=" << format_double(result.delta)
       << '\n';
}

}  // namespace gutkin
