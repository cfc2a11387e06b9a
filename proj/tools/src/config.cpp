#include "config.hpp"

#include <cstdint>
#include <cstdio>
#include <map>
#include <set>

namespace vctool {

namespace {

const std::set<std::string> commands = {
    "correlate vacuum", "correlate dressed", "correlate dynamic", "energy two-body",
    "energy three-body", "fit", "verify", "list-cases",
};

// Reads one object, remembering which keys were consumed so the leftovers
// can be reported as unknown.
class Reader {
public:
    Reader(const json& obj, std::string path, std::vector<Diagnostic>& diags)
        : obj_(obj), path_(std::move(path)), diags_(diags)
    {
        if (!obj_.is_object()) fail("", "expected an object");
    }

    ~Reader() = default;

    void finish() const
    {
        if (!obj_.is_object()) return;
        for (const auto& [key, value] : obj_.items())
            if (!seen_.count(key)) diags_.push_back({path_ + "/" + key, "unknown key"});
    }

    const json* get(const std::string& key)
    {
        seen_.insert(key);
        if (!obj_.is_object() || !obj_.contains(key)) return nullptr;
        return &obj_.at(key);
    }

    std::optional<double> number(const std::string& key)
    {
        const json* v = get(key);
        if (!v) return std::nullopt;
        if (!v->is_number()) {
            fail(key, "expected a number");
            return std::nullopt;
        }
        return v->get<double>();
    }

    std::optional<int> integer(const std::string& key)
    {
        const json* v = get(key);
        if (!v) return std::nullopt;
        if (!v->is_number_integer()) {
            fail(key, "expected an integer");
            return std::nullopt;
        }
        return v->get<int>();
    }

    std::optional<bool> boolean(const std::string& key)
    {
        const json* v = get(key);
        if (!v) return std::nullopt;
        if (!v->is_boolean()) {
            fail(key, "expected true or false");
            return std::nullopt;
        }
        return v->get<bool>();
    }

    std::optional<std::string> string(const std::string& key, const std::set<std::string>& allowed = {})
    {
        const json* v = get(key);
        if (!v) return std::nullopt;
        if (!v->is_string()) {
            fail(key, "expected a string");
            return std::nullopt;
        }
        auto s = v->get<std::string>();
        if (!allowed.empty() && !allowed.count(s)) {
            std::string msg = "must be one of";
            for (const auto& a : allowed) msg += " '" + a + "'";
            fail(key, msg);
            return std::nullopt;
        }
        return s;
    }

    std::optional<vcorr::Vec3> vec3(const std::string& key)
    {
        const json* v = get(key);
        if (!v) return std::nullopt;
        if (!v->is_array() || v->size() != 3 || !(*v)[0].is_number() || !(*v)[1].is_number() ||
            !(*v)[2].is_number()) {
            fail(key, "expected an array of three numbers");
            return std::nullopt;
        }
        return vcorr::Vec3{(*v)[0].get<double>(), (*v)[1].get<double>(), (*v)[2].get<double>()};
    }

    void fail(const std::string& key, const std::string& msg) const
    {
        diags_.push_back({key.empty() ? path_ : path_ + "/" + key, msg});
    }

    std::string path(const std::string& key) const { return path_ + "/" + key; }

private:
    const json& obj_;
    std::string path_;
    std::vector<Diagnostic>& diags_;
    std::set<std::string> seen_;
};

vcorr::Atom read_atom(const json& j, const std::string& path, std::vector<Diagnostic>& diags)
{
    Reader r(j, path, diags);
    vcorr::Atom a;
    a.dipole = {0, 0, 1};
    if (auto p = r.vec3("position")) a.position = *p;
    else r.fail("position", "required");
    if (auto w = r.number("omega")) {
        a.omega = *w;
        if (!(*w > 0.0)) r.fail("omega", "must be positive");
    }
    if (auto d = r.vec3("dipole")) a.dipole = *d;
    if (auto s = r.string("state", {"ground", "excited"}))
        a.state = *s == "excited" ? vcorr::StateTag::excited : vcorr::StateTag::ground;
    r.finish();
    return a;
}

} // namespace

RunConfig parse_config(const json& doc)
{
    std::vector<Diagnostic> diags;
    RunConfig c;
    c.document = doc;
    Reader r(doc, "", diags);

    if (auto s = r.string("command", commands)) c.command = *s;
    else if (!r.get("command")) r.fail("command", "required");

    if (auto s = r.string("units", {"natural", "gaussian"}))
        c.units = *s == "gaussian" ? vcorr::UnitSystem::gaussian() : vcorr::UnitSystem::natural();
    if (auto s = r.string("pair", {"EE", "BB", "EB", "scalar"})) c.pair = vcorr::parse_field_pair(*s);
    if (auto v = r.vec3("r")) c.r = *v;
    if (auto v = r.vec3("rprime")) c.rprime = *v;
    if (auto v = r.vec3("R")) { // separation form: r = R, r' = 0
        c.r = *v;
        c.rprime = {0, 0, 0};
    }
    if (const json* atoms = r.get("atoms")) {
        if (!atoms->is_array()) r.fail("atoms", "expected an array");
        else
            for (std::size_t i = 0; i < atoms->size(); ++i)
                c.atoms.push_back(read_atom((*atoms)[i], r.path("atoms") + "/" + std::to_string(i), diags));
    }
    c.t = r.number("t");
    if (c.t && !(*c.t >= 0.0)) r.fail("t", "must be non-negative");
    if (auto b = r.boolean("include_bare")) c.include_bare = *b;
    if (auto b = r.boolean("stationary")) c.stationary = *b;
    if (auto b = r.boolean("static")) c.is_static = *b;
    if (auto b = r.boolean("equilateral")) c.equilateral = *b;
    if (auto v = r.number("side")) c.side = *v;
    if (auto v = r.number("distance")) c.distance = *v;
    if (const json* sw = r.get("sweep")) {
        Reader s(*sw, r.path("sweep"), diags);
        const auto lo = s.number("lo"), hi = s.number("hi");
        const auto n = s.integer("points");
        if (!lo) s.fail("lo", "required");
        if (!hi) s.fail("hi", "required");
        if (!n) s.fail("points", "required");
        if (lo && hi && n) {
            if (!(*lo > 0.0 && *hi > *lo)) s.fail("", "need 0 < lo < hi");
            if (*n < 2 || *n > 100000) s.fail("points", "must be in [2, 100000]");
            c.sweep = SweepRange{*lo, *hi, *n};
            try {
                vcorr::SweepSpec{vcorr::SweepFamily::two_body_distance, *lo, *hi, *n}.validate();
            } catch (const vcorr::Error& e) {
                s.fail("", e.what());
            }
        }
        s.finish();
    }
    if (auto s = r.string("channel", {"ee", "mm", "em"})) c.channel = vcorr::parse_channel(*s);
    if (auto s = r.string("route", {"imaginary", "real"}))
        c.route = *s == "real" ? vcorr::TwoBodyRoute::real_axis : vcorr::TwoBodyRoute::imaginary_frequency;
    if (auto s = r.string("average", {"fixed", "isotropic"}))
        c.average = *s == "isotropic" ? vcorr::DipoleAverage::isotropic : vcorr::DipoleAverage::fixed;
    if (const json* q = r.get("quadrature")) {
        Reader s(*q, r.path("quadrature"), diags);
        json out = json::object();
        for (const char* key : {"rel_tol", "abs_tol", "tail_factor", "regulator_eta"})
            if (auto v = s.number(key)) out[key] = *v;
        if (auto v = s.integer("ladder_levels")) out["ladder_levels"] = *v;
        s.finish();
        c.quadrature = out;
        try {
            apply_overrides({}, out).validate();
        } catch (const vcorr::Error& e) {
            diags.push_back({r.path("quadrature"), e.what()});
        }
    }
    if (auto s = r.string("input")) c.input = *s;
    if (auto s = r.string("suite", {"oracle", "routes", "specfun"})) c.suite = *s;
    if (auto s = r.string("case")) c.case_name = *s;
    if (const json* out = r.get("output")) {
        Reader s(*out, r.path("output"), diags);
        if (auto f = s.string("format", {"json", "csv"})) c.format = *f == "csv" ? Format::csv : Format::json;
        if (auto p = s.string("path")) c.output = *p;
        s.finish();
    }
    r.finish();

    // Cross-field requirements.
    if (c.command == "correlate dressed" || c.command == "correlate dynamic") {
        if (c.atoms.size() != 1) r.fail("atoms", "this command takes exactly one atom");
    }
    if (c.command.rfind("correlate", 0) == 0 && c.sweep) r.fail("sweep", "correlate commands take a single point");
    if (c.command == "correlate dynamic" && !c.t) r.fail("t", "required for dynamic correlations");
    if (c.command == "energy two-body" && !c.atoms.empty() && c.atoms.size() != 2)
        r.fail("atoms", "two-body energy takes two atoms");
    if (c.command == "energy three-body") {
        if (!c.equilateral && c.atoms.size() != 3) r.fail("atoms", "give three atoms or set equilateral");
        if (!c.is_static && !c.t && !c.sweep) r.fail("t", "dynamic energy needs t or a time sweep");
        if (c.sweep && c.is_static && !c.equilateral) r.fail("sweep", "a static sweep scales the equilateral side");
    }
    if (c.command == "verify" && c.suite.empty()) r.fail("suite", "required");

    if (!diags.empty()) throw ConfigError{diags};
    return c;
}

vcorr::QuadratureSpec apply_overrides(vcorr::QuadratureSpec base, const json& o)
{
    if (o.contains("rel_tol")) base.rel_tol = o["rel_tol"].get<double>();
    if (o.contains("abs_tol")) base.abs_tol = o["abs_tol"].get<double>();
    if (o.contains("tail_factor")) base.tail_factor = o["tail_factor"].get<double>();
    if (o.contains("regulator_eta")) base.regulator_eta = o["regulator_eta"].get<double>();
    if (o.contains("ladder_levels")) base.ladder_levels = o["ladder_levels"].get<int>();
    return base;
}

std::string config_hash(const json& doc)
{
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char ch : doc.dump()) {
        h ^= ch;
        h *= 1099511628211ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

} // namespace vctool
