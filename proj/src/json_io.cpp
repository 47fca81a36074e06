#include "gutkin/json_io.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

namespace gutkin {

namespace {

int line_at(const std::string& text, std::size_t byte)
{
    byte = std::min(byte, text.size());
    return 1 + static_cast<int>(std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(byte), '\n'));
}

std::string last_key(const std::string& path)
{
    const auto dot = path.find_last_of('.');
    std::string key = dot == std::string::npos ? path : path.substr(dot + 1);
    const auto bracket = key.find('[');
    return bracket == std::string::npos ? key : key.substr(0, bracket);
}

double number_at(const Json& j, const std::string& key, const JsonDocument& doc, const std::string& path)
{
    const auto it = j.find(key);
    if (it == j.end()) doc.fail(path + "." + key, "missing required number");
    if (!it->is_number()) doc.fail(path + "." + key, "expected a number");
    return it->get<double>();
}

VecX vector_at(const Json& j, const JsonDocument& doc, const std::string& path)
{
    if (!j.is_array()) doc.fail(path, "expected an array of numbers");
    VecX v(static_cast<Eigen::Index>(j.size()));
    for (std::size_t i = 0; i < j.size(); ++i) {
        if (!j[i].is_number()) doc.fail(path, "element " + std::to_string(i) + " is not a number");
        v(static_cast<Eigen::Index>(i)) = j[i].get<double>();
    }
    return v;
}

const std::string& type_of(const Json& j, const JsonDocument& doc, const std::string& path)
{
    if (!j.is_object()) doc.fail(path, "expected an object");
    const auto it = j.find("type");
    if (it == j.end() || !it->is_string()) doc.fail(path + ".type", "missing string field");
    return it->get_ref<const std::string&>();
}

template <class F>
auto guarded(const JsonDocument& doc, const std::string& path, F&& build)
{
    try {
        return build();
    } catch (const ConfigError&) {
        throw;
    } catch (const std::exception& e) {
        doc.fail(path, e.what());
    }
}

}  // namespace

ConfigError::ConfigError(std::string field, int line, const std::string& message)
    : Error((line > 0 ? "line " + std::to_string(line) + ": " : std::string()) + field + ": " + message),
      field_(std::move(field)),
      line_(line)
{
}

JsonDocument JsonDocument::parse(const std::string& text, std::string origin)
{
    JsonDocument doc;
    doc.text_ = text;
    doc.origin_ = std::move(origin);
    try {
        doc.value_ = Json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ConfigError(doc.origin_, line_at(text, e.byte == 0 ? 0 : e.byte - 1), "invalid JSON");
    }
    return doc;
}

JsonDocument JsonDocument::load(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError(path, 0, "cannot open file");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse(ss.str(), path);
}

int JsonDocument::line_of(const std::string& key) const
{
    const auto pos = text_.find('"' + key + '"');
    return pos == std::string::npos ? 0 : line_at(text_, pos);
}

void JsonDocument::fail(const std::string& field, const std::string& message) const
{
    throw ConfigError(field, line_of(last_key(field)), message + (origin_.empty() ? "" : " (in " + origin_ + ")"));
}

SupportCurve2D parse_curve(const Json& j, const JsonDocument& doc, const std::string& path)
{
    const auto& type = type_of(j, doc, path);
    if (type != "support2d") doc.fail(path + ".type", "expected \"support2d\", got \"" + type + "\"");
    const double r0 = number_at(j, "r0", doc, path);
    std::vector<Harmonic> harmonics;
    if (const auto it = j.find("harmonics"); it != j.end()) {
        if (!it->is_array()) doc.fail(path + ".harmonics", "expected an array");
        for (std::size_t i = 0; i < it->size(); ++i) {
            const auto& hj = (*it)[i];
            const std::string hp = path + ".harmonics[" + std::to_string(i) + "]";
            if (!hj.is_object()) doc.fail(hp, "expected an object");
            const auto nit = hj.find("n");
            if (nit == hj.end() || !nit->is_number_integer()) doc.fail(hp + ".n", "expected an integer");
            const double a = hj.contains("a") ? number_at(hj, "a", doc, hp) : 0.0;
            const double b = hj.contains("b") ? number_at(hj, "b", doc, hp) : 0.0;
            harmonics.push_back({nit->get<int>(), a, b});
        }
    }
    return guarded(doc, path, [&] { return SupportCurve2D(r0, std::move(harmonics)); });
}

ConvexBody parse_body(const Json& j, const JsonDocument& doc, const std::string& path)
{
    const auto& type = type_of(j, doc, path);
    auto optional_vector = [&](const char* key) {
        const auto it = j.find(key);
        return it == j.end() ? VecX() : vector_at(*it, doc, path + "." + key);
    };

    ConvexBody body = [&] {
        if (type == "sphere") {
            const auto dit = j.find("d");
            if (dit == j.end() || !dit->is_number_integer()) doc.fail(path + ".d", "expected an integer dimension");
            const double radius = number_at(j, "radius", doc, path);
            const VecX center = optional_vector("center");
            return guarded(doc, path, [&] { return ConvexBody::sphere(dit->get<int>(), radius, center); });
        }
        if (type == "ellipsoid") {
            const auto ait = j.find("semi_axes");
            if (ait == j.end()) doc.fail(path + ".semi_axes", "missing required array");
            const VecX axes = vector_at(*ait, doc, path + ".semi_axes");
            MatX frame;
            if (const auto fit = j.find("frame"); fit != j.end()) {
                if (!fit->is_array()) doc.fail(path + ".frame", "expected an array of columns");
                frame.resize(axes.size(), static_cast<Eigen::Index>(fit->size()));
                for (std::size_t c = 0; c < fit->size(); ++c) {
                    const VecX col = vector_at((*fit)[c], doc, path + ".frame");
                    if (col.size() != axes.size()) doc.fail(path + ".frame", "column has the wrong length");
                    frame.col(static_cast<Eigen::Index>(c)) = col;
                }
            }
            const VecX center = optional_vector("center");
            return guarded(doc, path, [&] { return ConvexBody::ellipsoid(axes, frame, center); });
        }
        if (type == "revolution") {
            const auto pit = j.find("profile");
            if (pit == j.end()) doc.fail(path + ".profile", "missing required curve");
            const SupportCurve2D profile = parse_curve(*pit, doc, path + ".profile");
            Eigen::Vector3d axis = Eigen::Vector3d::UnitZ();
            if (j.contains("axis")) {
                const VecX a = optional_vector("axis");
                if (a.size() != 3) doc.fail(path + ".axis", "expected 3 components");
                axis = a;
            }
            return guarded(doc, path, [&] { return ConvexBody::revolution(profile, axis); });
        }
        if (type == "support2d") return ConvexBody::planar(parse_curve(j, doc, path));
        doc.fail(path + ".type", "unknown body type \"" + type + "\"");
    }();

    if (const auto it = j.find("id"); it != j.end()) {
        if (!it->is_string()) doc.fail(path + ".id", "expected a string");
        body.set_id(it->get<std::string>());
    }
    return body;
}

Json to_json(const SupportCurve2D& curve)
{
    Json h = Json::array();
    for (const auto& m : curve.harmonics()) h.push_back({{"n", m.n}, {"a", m.a}, {"b", m.b}});
    return {{"type", "support2d"}, {"r0", curve.r0()}, {"harmonics", h}};
}

Json to_json(const DeltaRoot& root) { return {{"n", root.n}, {"delta", root.delta}, {"residual", root.residual}}; }

Json to_json(const DefectReport& r)
{
    return {{"body", r.body},           {"delta", r.delta},           {"samples", r.sample_count},
            {"seed", r.seed},           {"max_defect", r.max_defect}, {"mean_defect", r.mean_defect},
            {"rms_defect", r.rms_defect}, {"misses", r.misses}};
}

Json to_json(const LemmaReport& r)
{
    return {{"lemma", r.lemma}, {"curve", r.curve},   {"delta", r.delta}, {"grid", r.grid},
            {"worst_error", r.worst_error}, {"pass", r.pass}, {"mode", r.mode}};
}

Json to_json(const ScalingResult& r)
{
    Json pts = Json::array();
    for (const auto& p : r.points) pts.push_back({{"eps", p.eps}, {"rms_defect", p.rms_defect}});
    return {{"n", r.n}, {"delta", r.delta}, {"points", pts}, {"slope", r.slope}};
}

Json to_json(const CharacterizationTable& t)
{
    Json rows = Json::array();
    for (const auto& row : t.rows)
        rows.push_back({{"body", row.body},
                        {"round", row.round},
                        {"mean_defect", row.mean_defect},
                        {"min_mean_defect", row.min_mean_defect}});
    return {{"delta_grid", t.delta_grid}, {"rows", rows}, {"sphere_baseline", t.sphere_baseline}, {"pass", t.pass}};
}

Json to_json(const ChordRecord& c)
{
    return {{"from", std::vector<double>(c.p_from.data(), c.p_from.data() + c.p_from.size())},
            {"to", std::vector<double>(c.p_to.data(), c.p_to.data() + c.p_to.size())},
            {"length", c.length},
            {"launch_angle", c.launch_angle},
            {"arrival_angle", c.arrival_angle},
            {"defect", c.defect}};
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace gutkin
