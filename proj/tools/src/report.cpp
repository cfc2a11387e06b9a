#include "report.hpp"

#include <cstdio>

namespace vctool {

namespace {

std::string number(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string cell_text(const Cell& c)
{
    if (const auto* d = std::get_if<double>(&c)) return number(*d);
    if (const auto* i = std::get_if<std::int64_t>(&c)) return std::to_string(*i);
    if (const auto* b = std::get_if<bool>(&c)) return *b ? "true" : "false";
    return csv_field(std::get<std::string>(c));
}

json cell_json(const Cell& c)
{
    return std::visit([](const auto& v) { return json(v); }, c);
}

std::string units_description(const RunConfig& c)
{
    return c.units.natural_mode ? "natural (hbar = c = 1; lengths in c/omega_ref, energies in hbar omega_ref)"
                                : "gaussian (cm, s, erg, statC)";
}

json provenance(const Report& r, const RunConfig& c)
{
    return {
        {"vcorr_version", vcorr::version},
        {"command", c.command},
        {"config_hash", config_hash(c.document)},
        {"units", units_description(c)},
        {"converged", r.converged},
        {"diagnostics", r.diagnostics},
    };
}

} // namespace

std::string unit_label(vcorr::Dimension d, const RunConfig& c)
{
    using vcorr::Dimension;
    const bool nat = c.units.natural_mode;
    switch (d) {
    case Dimension::length: return nat ? "c/omega_ref" : "cm";
    case Dimension::time: return nat ? "1/omega_ref" : "s";
    case Dimension::frequency: return nat ? "omega_ref" : "rad/s";
    case Dimension::energy: return nat ? "hbar omega_ref" : "erg";
    case Dimension::correlation: return nat ? "hbar omega_ref^4/c^3" : "erg/cm^3";
    case Dimension::polarizability: return nat ? "(c/omega_ref)^3" : "cm^3";
    }
    return "";
}

std::string correlation_unit(vcorr::FieldPair p, const RunConfig& c)
{
    if (p == vcorr::FieldPair::scalar) return c.units.natural_mode ? "hbar omega_ref^2/c" : "erg/cm";
    return unit_label(vcorr::Dimension::correlation, c);
}

json tensor_json(const vcorr::Tensor3& t)
{
    json out = json::array();
    for (const auto& z : t.a) out.push_back({z.real(), z.imag()});
    return out;
}

std::string csv_field(const std::string& s)
{
    if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
    std::string q = "\"";
    for (char ch : s) {
        if (ch == '"') q += '"';
        q += ch;
    }
    return q + "\"";
}

std::vector<std::string> csv_split(const std::string& line)
{
    std::vector<std::string> out(1);
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char ch = line[i];
        if (quoted) {
            if (ch == '"' && i + 1 < line.size() && line[i + 1] == '"') {
                out.back() += '"';
                ++i;
            } else if (ch == '"') {
                quoted = false;
            } else {
                out.back() += ch;
            }
        } else if (ch == '"') {
            quoted = true;
        } else if (ch == ',') {
            out.emplace_back();
        } else if (ch != '\r') {
            out.back() += ch;
        }
    }
    return out;
}

void write_report(std::ostream& os, const Report& r, const RunConfig& c)
{
    if (c.format == Format::csv) {
        // Provenance rides along as comment lines ahead of the header row.
        const json p = provenance(r, c);
        os << "# vcorr " << vcorr::version << " " << c.command << "\n";
        os << "# config_hash " << p["config_hash"].get<std::string>() << "\n";
        os << "# units " << units_description(c) << "\n";
        os << "# converged " << (r.converged ? "true" : "false") << "\n";
        for (const auto& d : r.diagnostics) os << "# diagnostic " << d.dump() << "\n";
        for (std::size_t i = 0; i < r.columns.size(); ++i) {
            const auto& col = r.columns[i];
            os << (i ? "," : "") << csv_field(col.unit.empty() ? col.name : col.name + " [" + col.unit + "]");
        }
        os << "\n";
        for (const auto& row : r.rows) {
            for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << cell_text(row[i]);
            os << "\n";
        }
        return;
    }
    json doc;
    doc["provenance"] = provenance(r, c);
    json cols = json::array();
    for (const auto& col : r.columns) cols.push_back({{"name", col.name}, {"unit", col.unit}});
    doc["columns"] = cols;
    json rows = json::array();
    for (const auto& row : r.rows) {
        json jr = json::array();
        for (const auto& cell : row) jr.push_back(cell_json(cell));
        rows.push_back(jr);
    }
    doc["rows"] = rows;
    for (const auto& [k, v] : r.extra.items()) doc[k] = v;
    os << doc.dump(2) << "\n";
}

void write_config_error(std::ostream& os, const ConfigError& e)
{
    json d = json::array();
    for (const auto& x : e.diagnostics) d.push_back({{"path", x.path}, {"message", x.message}});
    os << json{{"error", "config"}, {"diagnostics", d}}.dump(2) << "\n";
}

} // namespace vctool
