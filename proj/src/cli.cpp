#include "gutkin/cli.hpp"

#include "gutkin/billiard.hpp"
#include "gutkin/format.hpp"
#include "gutkin/sampling.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <ostream>
#include <random>
#include <sstream>

#ifndef GUTKIN_LAB_VERSION
#define GUTKIN_LAB_VERSION "dev"
#endif

namespace gutkin {

namespace {

constexpr double kPi = std::numbers::pi;

constexpr std::pair<Command, const char*> kCommands[] = {
    {Command::SolveDelta, "solve-delta"}, {Command::Defect, "defect"},         {Command::Lemmas, "lemmas"},
    {Command::Orbit, "orbit"},            {Command::Scaling, "scaling"},       {Command::Symplectic, "symplectic"},
    {Command::Geodesic, "geodesic"},      {Command::Characterize, "characterize"},
};

const std::vector<double> kDefaultEps{1e-3, 2e-3, 4e-3, 8e-3};

bool looks_inline(const std::string& s)
{
    const auto p = s.find_first_not_of(" \t\r\n");
    return p != std::string::npos && (s[p] == '{' || s[p] == '[');
}

JsonDocument resolve_source(const std::string& source, const std::string& field)
{
    if (looks_inline(source)) return JsonDocument::parse(source, "--" + field);
    try {
        return JsonDocument::load(source);
    } catch (const ConfigError& e) {
        if (e.line() == 0) throw ConfigError(field, 0, "cannot read " + source);
        throw;
    }
}

std::vector<double> to_vector(const VecX& v) { return {v.data(), v.data() + v.size()}; }

VecX to_vec(const std::vector<double>& v) { return Eigen::Map<const VecX>(v.data(), static_cast<Eigen::Index>(v.size())); }

// Uniform double in [0, 1) from the top 53 bits; platform independent.
double unit_draw(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

Json provenance(const ExperimentConfig& cfg)
{
    return {{"tool", "gutkin-lab"}, {"version", GUTKIN_LAB_VERSION}, {"seed", cfg.seed}, {"config", config_to_json(cfg)}};
}

std::string csv_header(const ExperimentConfig& cfg)
{
    return "# gutkin-lab " GUTKIN_LAB_VERSION " seed=" + std::to_string(cfg.seed) +
           " config=" + config_to_json(cfg).dump() + "\n";
}

ConvexBody body_of(const ExperimentConfig& cfg)
{
    const auto doc = JsonDocument::parse(cfg.body.dump(), "body");
    return parse_body(doc.value(), doc);
}

SupportCurve2D curve_of(const ExperimentConfig& cfg)
{
    const auto doc = JsonDocument::parse(cfg.curve.dump(), "curve");
    return parse_curve(doc.value(), doc);
}

RunResult run_solve_delta(const ExperimentConfig& cfg)
{
    const auto roots = solve_gutkin_delta(cfg.n);
    RunResult r;
    if (cfg.format == OutputFormat::Csv) {
        std::ostringstream os;
        os << csv_header(cfg) << "n,delta,residual\n";
        for (const auto& x : roots) os << x.n << ',' << format_double(x.delta) << ',' << format_double(x.residual) << '\n';
        r.report = os.str();
    } else {
        Json j = provenance(cfg);
        j["roots"] = Json::array();
        for (const auto& x : roots) j["roots"].push_back(to_json(x));
        r.report = dump(j);
    }
    return r;
}

RunResult run_defect(const ExperimentConfig& cfg)
{
    const ConvexBody body = body_of(cfg);
    const SamplerSpec sampler{static_cast<std::size_t>(cfg.samples), cfg.seed};
    RunResult r;
    Json reports = Json::array();
    std::ostringstream csv;
    csv << csv_header(cfg) << "body,delta,samples,seed,max_defect,mean_defect,rms_defect,misses\n";
    for (double delta : cfg.deltas) {
        const auto rep = defect_scan(body, delta, sampler);
        Json j = to_json(rep);
        if (body.is_round()) {
            const bool pass = rep.max_defect < 1e-9;
            j["pass"] = pass;
            if (!pass) r.exit_code = 2;
        }
        reports.push_back(j);
        csv << rep.body << ',' << format_double(rep.delta) << ',' << rep.sample_count << ',' << rep.seed << ','
            << format_double(rep.max_defect) << ',' << format_double(rep.mean_defect) << ','
            << format_double(rep.rms_defect) << ',' << rep.misses << '\n';
    }
    if (cfg.format == OutputFormat::Csv) {
        r.report = csv.str();
    } else {
        Json j = provenance(cfg);
        j["reports"] = reports;
        r.report = dump(j);
    }
    return r;
}

RunResult run_lemmas(const ExperimentConfig& cfg)
{
    const SupportCurve2D curve = curve_of(cfg);
    const std::string id = ConvexBody::planar(curve).id();
    RunResult r;
    Json lemmas = Json::array();
    std::ostringstream csv;
    csv << csv_header(cfg) << "lemma,curve,delta,grid,worst_error,pass,mode\n";
    for (double delta : cfg.deltas) {
        for (const auto& rep : run_lemma_suite(curve, id, delta, cfg.grid)) {
            if (rep.mode == "assert" && !rep.pass) r.exit_code = 2;
            lemmas.push_back(to_json(rep));
            csv << rep.lemma << ',' << rep.curve << ',' << format_double(rep.delta) << ',' << rep.grid << ','
                << format_double(rep.worst_error) << ',' << (rep.pass ? "true" : "false") << ',' << rep.mode << '\n';
        }
    }
    if (cfg.format == OutputFormat::Csv) {
        r.report = csv.str();
    } else {
        Json j = provenance(cfg);
        j["lemmas"] = lemmas;
        r.report = dump(j);
    }
    return r;
}

RunResult run_orbit(const ExperimentConfig& cfg)
{
    const ConvexBody body = body_of(cfg);
    VecX foot, tangent;
    if (!cfg.start.empty()) {
        foot = to_vec(cfg.start);
        tangent = to_vec(cfg.direction);
    } else {
        const auto s = boundary_samples(body, {1, cfg.seed});
        foot = s.front().foot;
        tangent = s.front().tangent;
    }
    const auto orbit = sigma_orbit(body, foot, tangent, cfg.deltas.front(), cfg.steps);
    RunResult r;
    if (cfg.format == OutputFormat::Csv) {
        std::ostringstream os;
        os << csv_header(cfg);
        write_orbit_csv(os, orbit);
        r.report = os.str();
    } else {
        Json j = provenance(cfg);
        j["body"] = body.id();
        j["orbit"] = Json::array();
        for (std::size_t k = 0; k < orbit.size(); ++k) {
            Json step = to_json(orbit[k].chord);
            step["step"] = k;
            step["tangent"] = to_vector(orbit[k].tangent);
            step["tangential_drift"] = orbit[k].tangential_drift;
            j["orbit"].push_back(step);
        }
        r.report = dump(j);
    }
    return r;
}

RunResult run_scaling(const ExperimentConfig& cfg)
{
    const SamplerSpec sampler{static_cast<std::size_t>(cfg.samples), cfg.seed};
    const auto res = perturbation_scaling(cfg.n, cfg.deltas.front(), cfg.eps.empty() ? kDefaultEps : cfg.eps, sampler);
    RunResult r;
    if (cfg.format == OutputFormat::Csv) {
        std::ostringstream os;
        os << csv_header(cfg);
        write_scaling_csv(os, res);
        r.report = os.str();
    } else {
        Json j = provenance(cfg);
        j["scaling"] = to_json(res);
        r.report = dump(j);
    }
    return r;
}

RunResult run_symplectic(const ExperimentConfig& cfg)
{
    const SupportCurve2D curve = curve_of(cfg);
    std::mt19937_64 rng(cfg.seed);
    const double perimeter = curve.perimeter();
    RunResult r;
    Json points = Json::array();
    std::ostringstream csv;
    csv << csv_header(cfg) << "s,p,det,abs_err,tolerance,pass\n";
    double worst = 0.0;
    bool pass = true;
    for (int i = 0; i < cfg.samples; ++i) {
        const double s = perimeter * unit_draw(rng);
        const double p = (1.0 - 2e-3) * (2.0 * unit_draw(rng) - 1.0);
        const double det = symplectic_jacobian(curve, {s, p});
        const double err = std::abs(det - 1.0);
        const double tol = 1.0 - std::abs(p) < 0.1 ? 1e-5 : 1e-6;
        const bool ok = err < tol;
        pass = pass && ok;
        worst = std::max(worst, err);
        points.push_back({{"s", s}, {"p", p}, {"det", det}, {"abs_err", err}, {"tolerance", tol}, {"pass", ok}});
        csv << format_double(s) << ',' << format_double(p) << ',' << format_double(det) << ',' << format_double(err)
            << ',' << format_double(tol) << ',' << (ok ? "true" : "false") << '\n';
    }
    if (!pass) r.exit_code = 2;
    if (cfg.format == OutputFormat::Csv) {
        r.report = csv.str();
    } else {
        Json j = provenance(cfg);
        j["curve"] = ConvexBody::planar(curve).id();
        j["max_abs_err"] = worst;
        j["pass"] = pass;
        j["points"] = points;
        r.report = dump(j);
    }
    return r;
}

RunResult run_geodesic(const ExperimentConfig& cfg)
{
    const ConvexBody body = body_of(cfg);
    SurfacePoint start;
    Eigen::Vector3d dir;
    if (!cfg.start.empty()) {
        start = surface_point(body, to_vec(cfg.start));
        dir = to_vec(cfg.direction);
    } else {
        const auto s = boundary_samples(body, {1, cfg.seed});
        start = surface_point(body, s.front().foot);
        dir = s.front().tangent;
    }
    const double length = cfg.length > 0.0 ? cfg.length : kPi * body.diameter_bound();
    const auto samples = integrate_geodesic(body, start, dir, length, cfg.step);
    RunResult r;
    if (cfg.format == OutputFormat::Csv) {
        std::ostringstream os;
        os << csv_header(cfg);
        write_geodesic_csv(os, samples);
        r.report = os.str();
    } else {
        const auto fr = frenet_residuals(samples);
        Json j = provenance(cfg);
        j["body"] = body.id();
        j["max_abs_tau"] = max_abs_torsion(samples);
        // Too short a path for a plane fit.
        j["planarity_defect"] = samples.size() >= 10 ? Json(planarity_defect(samples)) : Json(nullptr);
        j["frenet_residuals"] = {{"f1", fr.f1}, {"f2", fr.f2}, {"f3_v", fr.f3_v}, {"f3_n", fr.f3_n},
                                 {"orthonormality", fr.orthonormality}};
        j["samples"] = Json::array();
        for (const auto& p : samples)
            j["samples"].push_back({{"s", p.s},
                                    {"x", p.position.x()},
                                    {"y", p.position.y()},
                                    {"z", p.position.z()},
                                    {"k", p.k},
                                    {"tau", p.tau}});
        r.report = dump(j);
    }
    return r;
}

RunResult run_characterize(const ExperimentConfig& cfg)
{
    std::vector<ConvexBody> family;
    for (std::size_t i = 0; i < cfg.family.size(); ++i) {
        const auto doc = JsonDocument::parse(cfg.family[i].dump(), "family");
        family.push_back(parse_body(doc.value(), doc, "family[" + std::to_string(i) + "]"));
    }
    const SamplerSpec sampler{static_cast<std::size_t>(cfg.samples), cfg.seed};
    const auto table = sphere_characterization_experiment(family, cfg.deltas, sampler);
    RunResult r;
    r.exit_code = table.pass ? 0 : 2;
    if (cfg.format == OutputFormat::Csv) {
        std::ostringstream os;
        os << csv_header(cfg) << "body,round";
        for (double d : table.delta_grid) os << ",delta_" << format_double(d);
        os << ",min_mean_defect\n";
        for (const auto& row : table.rows) {
            os << row.body << ',' << (row.round ? "true" : "false");
            for (double m : row.mean_defect) os << ',' << format_double(m);
            os << ',' << format_double(row.min_mean_defect) << '\n';
        }
        os << "# sphere_baseline=" << format_double(table.sphere_baseline) << " pass=" << (table.pass ? "true" : "false")
           << '\n';
        r.report = os.str();
    } else {
        Json j = provenance(cfg);
        j["characterization"] = to_json(table);
        r.report = dump(j);
    }
    return r;
}

Json default_family()
{
    return Json::array({
        {{"type", "sphere"}, {"d", 3}, {"radius", 1.0}},
        {{"type", "ellipsoid"}, {"semi_axes", {1.1, 1.0, 1.0}}},
        {{"type", "revolution"},
         {"profile", {{"type", "support2d"}, {"r0", 1.0}, {"harmonics", Json::array({{{"n", 3}, {"a", 0.05}, {"b", 0.0}}})}}}},
    });
}

std::vector<double> default_delta_grid()
{
    std::vector<double> g;
    for (int i = 1; i <= 10; ++i) g.push_back(0.13 * i);
    return g;
}

// Typed accessors for config files.
struct FieldReader {
    const JsonDocument& doc;

    const Json* find(const char* key) const
    {
        const auto it = doc.value().find(key);
        return it == doc.value().end() ? nullptr : &*it;
    }
    double number(const char* key, const Json& j) const
    {
        if (!j.is_number()) doc.fail(key, "expected a number");
        return j.get<double>();
    }
    long long integer(const char* key, const Json& j) const
    {
        if (!j.is_number_integer()) doc.fail(key, "expected an integer");
        return j.get<long long>();
    }
    std::vector<double> numbers(const char* key, const Json& j) const
    {
        if (j.is_number()) return {j.get<double>()};
        if (!j.is_array()) doc.fail(key, "expected a number or an array of numbers");
        std::vector<double> v;
        for (const auto& x : j) v.push_back(number(key, x));
        return v;
    }
    std::string string(const char* key, const Json& j) const
    {
        if (!j.is_string()) doc.fail(key, "expected a string");
        return j.get<std::string>();
    }
};

void set_spec(const Json& j, const char* key, const JsonDocument& doc, std::string& source, Json& target)
{
    if (j.is_object()) {
        target = j;
        source = "inline";
    } else if (j.is_string()) {
        std::filesystem::path p = j.get<std::string>();
        if (p.is_relative()) p = std::filesystem::path(doc.origin()).parent_path() / p;
        source = p.string();
    } else {
        doc.fail(key, "expected an object or a file path");
    }
}

}  // namespace

const char* to_string(Command c)
{
    for (const auto& [cmd, name] : kCommands)
        if (cmd == c) return name;
    return "unknown";
}

std::optional<Command> command_from_string(const std::string& s)
{
    for (const auto& [cmd, name] : kCommands)
        if (s == name) return cmd;
    return std::nullopt;
}

ExperimentConfig load_config(const std::string& path)
{
    const auto doc = JsonDocument::load(path);
    if (!doc.value().is_object()) throw ConfigError(path, 1, "config must be a JSON object");
    const FieldReader rd{doc};
    ExperimentConfig cfg;
    static const char* const kKnown[] = {"command", "body",  "curve",  "family", "delta",     "delta_grid",
                                         "degrees", "n",     "samples", "seed",  "grid",      "steps",
                                         "eps",     "start", "direction", "length", "step",   "output",
                                         "format"};
    for (const auto& [key, _] : doc.value().items()) {
        if (std::find_if(std::begin(kKnown), std::end(kKnown), [&](const char* k) { return key == k; }) ==
            std::end(kKnown))
            doc.fail(key, "unknown field");
    }

    if (const auto* j = rd.find("command")) {
        const auto c = command_from_string(rd.string("command", *j));
        if (!c) doc.fail("command", "unknown command \"" + j->get<std::string>() + "\"");
        cfg.command = *c;
    }
    // Inline specs are parsed here so errors point at lines of this file.
    if (const auto* j = rd.find("body")) {
        set_spec(*j, "body", doc, cfg.body_source, cfg.body);
        if (j->is_object()) parse_body(*j, doc);
    }
    if (const auto* j = rd.find("curve")) {
        set_spec(*j, "curve", doc, cfg.curve_source, cfg.curve);
        if (j->is_object()) parse_curve(*j, doc);
    }
    if (const auto* j = rd.find("family")) {
        if (!j->is_array()) doc.fail("family", "expected an array of body specs");
        for (std::size_t i = 0; i < j->size(); ++i) parse_body((*j)[i], doc, "family[" + std::to_string(i) + "]");
        cfg.family = *j;
    }
    if (const auto* j = rd.find("delta")) cfg.deltas = rd.numbers("delta", *j);
    if (const auto* j = rd.find("delta_grid")) cfg.deltas = rd.numbers("delta_grid", *j);
    if (const auto* j = rd.find("degrees")) {
        if (!j->is_boolean()) doc.fail("degrees", "expected true or false");
        if (j->get<bool>())
            for (double& d : cfg.deltas) d *= kPi / 180.0;
    }
    if (const auto* j = rd.find("n")) cfg.n = static_cast<int>(rd.integer("n", *j));
    if (const auto* j = rd.find("samples")) cfg.samples = static_cast<int>(rd.integer("samples", *j));
    if (const auto* j = rd.find("seed")) {
        const auto s = rd.integer("seed", *j);
        if (s < 0) doc.fail("seed", "must be non-negative");
        cfg.seed = static_cast<std::uint64_t>(s);
    }
    if (const auto* j = rd.find("grid")) cfg.grid = static_cast<int>(rd.integer("grid", *j));
    if (const auto* j = rd.find("steps")) cfg.steps = static_cast<int>(rd.integer("steps", *j));
    if (const auto* j = rd.find("eps")) cfg.eps = rd.numbers("eps", *j);
    if (const auto* j = rd.find("start")) cfg.start = rd.numbers("start", *j);
    if (const auto* j = rd.find("direction")) cfg.direction = rd.numbers("direction", *j);
    if (const auto* j = rd.find("length")) cfg.length = rd.number("length", *j);
    if (const auto* j = rd.find("step")) cfg.step = rd.number("step", *j);
    if (const auto* j = rd.find("output")) {
        std::filesystem::path p = rd.string("output", *j);
        if (p.is_relative()) p = std::filesystem::path(path).parent_path() / p;
        cfg.output = p.string();
    }
    if (const auto* j = rd.find("format")) {
        const auto f = rd.string("format", *j);
        if (f == "json")
            cfg.format = OutputFormat::Json;
        else if (f == "csv")
            cfg.format = OutputFormat::Csv;
        else
            doc.fail("format", "expected \"json\" or \"csv\"");
    }
    return cfg;
}

void validate(ExperimentConfig& cfg)
{
    auto need = [](bool ok, const char* field, const std::string& msg) {
        if (!ok) throw ConfigError(field, 0, msg);
    };
    auto resolve = [](std::string& source, Json& target, const char* field) {
        if (!target.is_null() || source.empty()) return;
        target = resolve_source(source, field).value();
    };
    resolve(cfg.body_source, cfg.body, "body");
    resolve(cfg.curve_source, cfg.curve, "curve");

    const Command c = cfg.command;
    const bool uses_delta = c != Command::SolveDelta && c != Command::Symplectic && c != Command::Geodesic;
    if (c == Command::Characterize) {
        if (cfg.deltas.empty()) cfg.deltas = default_delta_grid();
        if (cfg.family.empty()) cfg.family = default_family();
    }
    if (uses_delta) need(!cfg.deltas.empty(), "delta", "a delta value is required for " + std::string(to_string(c)));
    for (double d : cfg.deltas) need(d > 0.0 && d < kPi / 2, "delta", "must lie in (0, pi/2), got " + format_double(d));
    need(cfg.samples >= 1, "samples", "must be >= 1");

    switch (c) {
    case Command::SolveDelta: need(cfg.n >= 4, "n", "solve-delta needs --n >= 4"); break;
    case Command::Scaling: need(cfg.n >= 2, "n", "scaling needs --n >= 2"); break;
    case Command::Defect:
    case Command::Orbit:
    case Command::Geodesic: need(!cfg.body.is_null(), "body", "a body spec is required"); break;
    case Command::Lemmas:
    case Command::Symplectic: need(!cfg.curve.is_null(), "curve", "a curve spec is required"); break;
    case Command::Characterize: break;
    }
    if (c == Command::Lemmas) need(cfg.grid >= 2, "grid", "must be >= 2");
    if (c == Command::Orbit) need(cfg.steps >= 1, "steps", "must be >= 1");
    if (c == Command::Orbit || c == Command::Geodesic) {
        need(cfg.start.empty() == cfg.direction.empty(), cfg.start.empty() ? "start" : "direction",
             "start and direction must be given together");
        need(cfg.start.size() == cfg.direction.size(), "direction", "must have as many components as start");
    }
    for (double e : cfg.eps) need(e >= 0.0, "eps", "must be non-negative");
}

Json config_to_json(const ExperimentConfig& cfg)
{
    Json j;
    j["command"] = to_string(cfg.command);
    if (!cfg.body.is_null()) j["body"] = cfg.body;
    if (!cfg.curve.is_null()) j["curve"] = cfg.curve;
    if (cfg.command == Command::Characterize) j["family"] = cfg.family;
    j["delta"] = cfg.deltas;
    j["n"] = cfg.n;
    j["samples"] = cfg.samples;
    j["seed"] = cfg.seed;
    j["grid"] = cfg.grid;
    j["steps"] = cfg.steps;
    j["eps"] = cfg.eps;
    j["start"] = cfg.start;
    j["direction"] = cfg.direction;
    j["length"] = cfg.length;
    j["step"] = cfg.step;
    j["format"] = cfg.format == OutputFormat::Json ? "json" : "csv";
    return j;
}

RunResult execute(const ExperimentConfig& cfg)
{
    switch (cfg.command) {
    case Command::SolveDelta: return run_solve_delta(cfg);
    case Command::Defect: return run_defect(cfg);
    case Command::Lemmas: return run_lemmas(cfg);
    case Command::Orbit: return run_orbit(cfg);
    case Command::Scaling: return run_scaling(cfg);
    case Command::Symplectic: return run_symplectic(cfg);
    case Command::Geodesic: return run_geodesic(cfg);
    case Command::Characterize: return run_characterize(cfg);
    }
    return {1, {}};
}

int run(ExperimentConfig config, std::ostream& out, std::ostream& err)
{
    RunResult result;
    try {
        validate(config);
        result = execute(config);
    } catch (const ConfigError& e) {
        err << "config error: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    }

    if (config.output.empty()) {
        out << result.report;
        out.flush();
        if (!out) {
            err << "error: failed to write the report\n";
            return 1;
        }
    } else {
        std::ofstream f(config.output, std::ios::binary | std::ios::trunc);
        f << result.report;
        f.close();
        if (!f) {
            err << "error: cannot write " << config.output << '\n';
            return 1;
        }
    }
    if (result.exit_code == 2) err << "assert-mode check failed; see the report\n";
    return result.exit_code;
}

int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Numerical experiments on the equal-angle (Gutkin) billiard property", "gutkin-lab"};
    app.set_version_flag("--version", GUTKIN_LAB_VERSION);
    app.require_subcommand(1);

    std::string config_path, body, curve, output, format;
    double delta = 0.0, length = 0.0, step = 0.0;
    std::vector<double> delta_grid, eps, start, direction;
    int n = 0, samples = 0, grid = 0, steps = 0;
    std::uint64_t seed = 0;
    bool degrees = false;

    std::vector<CLI::App*> subs;
    for (const auto& [cmd, name] : kCommands) {
        auto* sub = app.add_subcommand(name);
        sub->fallthrough();
        subs.push_back(sub);
    }
    auto* o_config = app.add_option("--config", config_path, "JSON config file; flags override its fields");
    auto* o_body = app.add_option("--body", body, "body spec: JSON file or inline JSON");
    auto* o_curve = app.add_option("--curve", curve, "support2d curve spec: JSON file or inline JSON");
    auto* o_delta = app.add_option("--delta", delta, "chord angle delta (radians unless --degrees)");
    auto* o_grid_d = app.add_option("--delta-grid", delta_grid, "comma-separated delta values")->delimiter(',');
    app.add_flag("--degrees", degrees, "read delta values in degrees");
    auto* o_n = app.add_option("--n", n, "harmonic order");
    auto* o_samples = app.add_option("--samples", samples, "sample count (launches or phase points)");
    auto* o_seed = app.add_option("--seed", seed, "sampler seed");
    auto* o_grid = app.add_option("--grid", grid, "lemma grid size");
    auto* o_steps = app.add_option("--steps", steps, "orbit length");
    auto* o_eps = app.add_option("--eps", eps, "comma-separated perturbation sizes")->delimiter(',');
    auto* o_start = app.add_option("--start", start, "start point, comma-separated")->delimiter(',');
    auto* o_dir = app.add_option("--dir", direction, "start direction, comma-separated")->delimiter(',');
    auto* o_length = app.add_option("--length", length, "geodesic length");
    auto* o_step = app.add_option("--step", step, "geodesic integration step");
    auto* o_output = app.add_option("-o,--output", output, "report path (default stdout)");
    auto* o_format = app.add_option("--format", format, "json or csv")->check(CLI::IsMember({"json", "csv"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? 0 : 1;
    }

    ExperimentConfig cfg;
    try {
        if (*o_config) cfg = load_config(config_path);
    } catch (const ConfigError& e) {
        err << "config error: " << e.what() << '\n';
        return 1;
    }
    for (std::size_t i = 0; i < subs.size(); ++i)
        if (subs[i]->parsed()) cfg.command = kCommands[i].first;

    const double unit = degrees ? kPi / 180.0 : 1.0;
    if (*o_body) {
        cfg.body_source = body;
        cfg.body = nullptr;
    }
    if (*o_curve) {
        cfg.curve_source = curve;
        cfg.curve = nullptr;
    }
    if (*o_delta) cfg.deltas = {delta * unit};
    if (*o_grid_d) {
        cfg.deltas.clear();
        for (double d : delta_grid) cfg.deltas.push_back(d * unit);
    }
    if (*o_n) cfg.n = n;
    if (*o_samples) cfg.samples = samples;
    if (*o_seed) cfg.seed = seed;
    if (*o_grid) cfg.grid = grid;
    if (*o_steps) cfg.steps = steps;
    if (*o_eps) cfg.eps = eps;
    if (*o_start) cfg.start = start;
    if (*o_dir) cfg.direction = direction;
    if (*o_length) cfg.length = length;
    if (*o_step) cfg.step = step;
    if (*o_output) cfg.output = output;
    if (*o_format) cfg.format = format == "csv" ? OutputFormat::Csv : OutputFormat::Json;
    return run(std::move(cfg), out, err);
}

}  // namespace gutkin
