#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "vcorr/vcorr.hpp"

namespace vctool {

using nlohmann::json;

struct Diagnostic {
    std::string path; // JSON pointer into the config
    std::string message;
};

// Thrown for anything the user can fix by editing the config; exit code 1.
struct ConfigError {
    std::vector<Diagnostic> diagnostics;
};

enum class Format { json, csv };

struct SweepRange {
    double lo;
    double hi;
    int points;
};

// Validated, typed form of the JSON run document.
struct RunConfig {
    std::string command; // "correlate vacuum", "energy two-body", ...
    vcorr::UnitSystem units = vcorr::UnitSystem::natural();

    vcorr::FieldPair pair = vcorr::FieldPair::EE;
    vcorr::Vec3 r{0, 0, 0};
    vcorr::Vec3 rprime{0, 0, 0};
    std::vector<vcorr::Atom> atoms;
    std::optional<double> t;
    bool include_bare = true;
    bool stationary = false; // dynamic: drop the transient (t -> infinity)

    bool is_static = true;
    bool equilateral = false;
    double side = 10.0;
    double distance = 10.0;
    std::optional<SweepRange> sweep;
    vcorr::Channel channel = vcorr::Channel::ee;
    vcorr::TwoBodyRoute route = vcorr::TwoBodyRoute::imaginary_frequency;
    vcorr::DipoleAverage average = vcorr::DipoleAverage::fixed;

    // Quadrature overrides, applied on top of each routine's own default.
    json quadrature = json::object();

    std::string input;    // fit: CSV path, "-" for stdin
    std::string suite;    // verify
    std::string case_name;

    Format format = Format::json;
    std::string output; // empty: stdout

    json document; // canonical form, hashed into the provenance block
};

// Rejects unknown keys and type mismatches, reporting every problem found.
RunConfig parse_config(const json& doc);

vcorr::QuadratureSpec apply_overrides(vcorr::QuadratureSpec base, const json& overrides);

// FNV-1a over the canonical dump; stable across runs and platforms.
std::string config_hash(const json& doc);

} // namespace vctool
