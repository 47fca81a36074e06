#pragma once

// JSON readers for curves and bodies, and JSON writers for the reports.

#include "gutkin/defect_scan.hpp"
#include "gutkin/delta_solver.hpp"
#include "gutkin/errors.hpp"
#include "gutkin/geodesics.hpp"
#include "gutkin/geom2d.hpp"
#include "gutkin/geomnd.hpp"
#include "gutkin/lemmas.hpp"

#include <json.hpp>

#include <string>

namespace gutkin {

using Json = nlohmann::ordered_json;

/// Configuration problem. `line` is 1-based, 0 when unknown.
class ConfigError : public Error {
public:
    ConfigError(std::string field, int line, const std::string& message);
    const std::string& field() const noexcept { return field_; }
    int line() const noexcept { return line_; }

private:
    std::string field_;
    int line_;
};

/// Parsed JSON text that remembers where it came from, so that field errors
/// can point at a line.
class JsonDocument {
public:
    /// Throws ConfigError with the line of a syntax error.
    static JsonDocument parse(const std::string& text, std::string origin);
    static JsonDocument load(const std::string& path);

    const Json& value() const noexcept { return value_; }
    const std::string& origin() const noexcept { return origin_; }
    /// Line of the first occurrence of "key" in the source text, 0 if absent.
    int line_of(const std::string& key) const;
    [[noreturn]] void fail(const std::string& field, const std::string& message) const;

private:
    std::string text_;
    std::string origin_;
    Json value_;
};

/// {"type":"support2d","r0":...,"harmonics":[{"n":..,"a":..,"b":..}]}
SupportCurve2D parse_curve(const Json& j, const JsonDocument& doc, const std::string& path = "curve");

/// sphere {d, radius, center?} | ellipsoid {semi_axes, frame?, center?} |
/// revolution {profile, axis?} | support2d (planar body). Optional "id".
ConvexBody parse_body(const Json& j, const JsonDocument& doc, const std::string& path = "body");

Json to_json(const SupportCurve2D& curve);
Json to_json(const DeltaRoot& root);
Json to_json(const DefectReport& report);
Json to_json(const LemmaReport& report);
Json to_json(const ScalingResult& result);
Json to_json(const CharacterizationTable& table);
Json to_json(const ChordRecord& chord);

/// Indented, newline-terminated; doubles round-trip, non-finite values become null.
std::string dump(const Json& j);

}  // namespace gutkin
