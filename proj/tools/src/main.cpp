// vcorr command line front end. Flags and --config files both become one
// JSON run document, which is validated before anything is computed.

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "commands.hpp"
#include "config.hpp"
#include "report.hpp"

using namespace vctool;

namespace {

enum Exit { ok = 0, config_error = 1, unconverged = 2 };

std::vector<double> split_numbers(const std::string& s, char sep, const std::string& path, std::size_t count)
{
    std::vector<double> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, sep)) {
        try {
            std::size_t used = 0;
            out.push_back(std::stod(item, &used));
            if (used != item.size()) throw std::invalid_argument(item);
        } catch (const std::exception&) {
            throw ConfigError{{{path, "cannot read '" + item + "' as a number"}}};
        }
    }
    if (out.size() != count)
        throw ConfigError{{{path, "expected " + std::to_string(count) + " values in '" + s + "'"}}};
    return out;
}

json vec_json(const std::string& s, const std::string& path)
{
    const auto v = split_numbers(s, ',', path, 3);
    return json::array({v[0], v[1], v[2]});
}

// "x,y,z[;omega[;mx,my,mz[;excited]]]"
json atom_json(const std::string& s, const std::string& path)
{
    std::vector<std::string> f;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ';')) f.push_back(item);
    if (f.empty() || f.size() > 4) throw ConfigError{{{path, "atom format is x,y,z[;omega[;mx,my,mz[;state]]]"}}};
    json a = {{"position", vec_json(f[0], path + "/position")}};
    if (f.size() > 1) a["omega"] = split_numbers(f[1], ',', path + "/omega", 1)[0];
    if (f.size() > 2) a["dipole"] = vec_json(f[2], path + "/dipole");
    if (f.size() > 3) a["state"] = f[3];
    return a;
}

json sweep_json(const std::string& s)
{
    const auto v = split_numbers(s, ':', "/sweep", 3);
    if (v[2] != std::floor(v[2])) throw ConfigError{{{"/sweep/points", "must be an integer"}}};
    return {{"lo", v[0]}, {"hi", v[1]}, {"points", static_cast<int>(v[2])}};
}

json load_config(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw ConfigError{{{"", "cannot open config '" + path + "'"}}};
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw ConfigError{{{"", std::string("config is not valid JSON: ") + e.what()}}};
    }
}

struct Flags {
    std::string config, format, output, units;
    std::string pair, R, r, rp, channel, route, average, sweep, input, suite, case_name;
    std::vector<std::string> atoms;
    double t = 0, side = 0, distance = 0;
    double rel_tol = 0, abs_tol = 0, tail_factor = 0;
    int ladder_levels = 0;
    bool no_bare = false, stationary = false, is_static = false, dynamic = false,
         equilateral = false;
};

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"vcorr: vacuum field correlations and dispersion energies"};
    app.set_version_flag("--version", std::string(vcorr::version));
    app.require_subcommand(1);
    app.fallthrough();

    Flags fl;
    app.add_option("--config", fl.config, "JSON run document; flags override its keys")->check(CLI::ExistingFile);
    app.add_option("--format", fl.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
    app.add_option("--output,-o", fl.output, "write results here instead of stdout");
    app.add_option("--units", fl.units, "natural (default) or gaussian")->check(CLI::IsMember({"natural", "gaussian"}));
    app.add_option("--rel-tol", fl.rel_tol, "quadrature relative tolerance");
    app.add_option("--abs-tol", fl.abs_tol, "quadrature absolute tolerance");
    app.add_option("--ladder-levels", fl.ladder_levels, "regulator ladder length");
    app.add_option("--tail-factor", fl.tail_factor, "truncation point in units of 1/eta_min");

    auto add_points = [&](CLI::App* s) {
        s->add_option("--R", fl.R, "separation x,y,z (r = R, r' = 0)");
        s->add_option("--r", fl.r, "first field point x,y,z");
        s->add_option("--rp", fl.rp, "second field point x,y,z");
    };
    auto add_atoms = [&](CLI::App* s) {
        s->add_option("--atom", fl.atoms, "x,y,z[;omega[;mx,my,mz[;ground|excited]]], repeatable");
    };

    auto* correlate = app.add_subcommand("correlate", "field correlation tensors")->require_subcommand(1);
    correlate->fallthrough();
    auto* vac = correlate->add_subcommand("vacuum", "bare vacuum correlation");
    vac->add_option("--pair", fl.pair, "EE, BB, EB or scalar")->check(CLI::IsMember({"EE", "BB", "EB", "scalar"}));
    add_points(vac);
    auto* dressed = correlate->add_subcommand("dressed", "static correlation dressed by one atom");
    add_points(dressed);
    add_atoms(dressed);
    dressed->add_flag("--no-bare", fl.no_bare, "dressing part only");
    auto* dyn = correlate->add_subcommand("dynamic", "correlation after switching on the coupling at t = 0");
    add_points(dyn);
    add_atoms(dyn);
    dyn->add_option("--t", fl.t, "time since the atom was placed")->required();
    dyn->add_flag("--stationary", fl.stationary, "drop the transient (t -> infinity)");

    auto* energy = app.add_subcommand("energy", "dispersion energies")->require_subcommand(1);
    energy->fallthrough();
    auto* two = energy->add_subcommand("two-body", "Casimir-Polder energy of two atoms");
    add_atoms(two);
    two->add_option("--distance", fl.distance, "separation when no atoms are given");
    two->add_option("--sweep", fl.sweep, "lo:hi:n log-spaced separations");
    two->add_option("--channel", fl.channel, "ee, mm or em")->check(CLI::IsMember({"ee", "mm", "em"}));
    two->add_option("--route", fl.route, "imaginary or real")->check(CLI::IsMember({"imaginary", "real"}));
    auto* three = energy->add_subcommand("three-body", "non-additive three-body energy");
    add_atoms(three);
    auto* st = three->add_flag("--static", fl.is_static, "stationary ground-state energy (default)");
    three->add_flag("--dynamic", fl.dynamic, "time-dependent energy at --t or over a time sweep")->excludes(st);
    three->add_flag("--equilateral", fl.equilateral, "place the atoms on an equilateral triangle");
    three->add_option("--side", fl.side, "equilateral side");
    three->add_option("--sweep", fl.sweep, "lo:hi:n, sides (static) or times (dynamic)");
    three->add_option("--t", fl.t, "time for the dynamic energy");
    three->add_option("--average", fl.average, "fixed or isotropic dipoles")->check(CLI::IsMember({"fixed", "isotropic"}));
    three->add_flag("--stationary", fl.stationary, "dynamic: drop the transient");

    auto* fit = app.add_subcommand("fit", "power-law exponent of a two-column CSV table");
    fit->add_option("--input,input", fl.input, "CSV file, - for stdin");
    auto* verify = app.add_subcommand("verify", "check the library against its oracles");
    verify->add_option("suite", fl.suite, "oracle, routes or specfun")->required();
    verify->add_option("--case", fl.case_name, "single case; see list-cases");
    auto* list = app.add_subcommand("list-cases", "list verify cases");
    auto* run = app.add_subcommand("run", "execute a JSON run document");
    run->add_option("config", fl.config, "JSON run document")->required()->check(CLI::ExistingFile);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        write_config_error(std::cerr, ConfigError{{{"", e.what()}}});
        return config_error;
    }

    RunConfig cfg;
    try {
        json doc = fl.config.empty() ? json::object() : load_config(fl.config);
        std::string command;
        if (vac->parsed()) command = "correlate vacuum";
        else if (dressed->parsed()) command = "correlate dressed";
        else if (dyn->parsed()) command = "correlate dynamic";
        else if (two->parsed()) command = "energy two-body";
        else if (three->parsed()) command = "energy three-body";
        else if (fit->parsed()) command = "fit";
        else if (verify->parsed()) command = "verify";
        else if (list->parsed()) command = "list-cases";
        if (!command.empty()) {
            if (doc.contains("command") && doc["command"] != command)
                throw ConfigError{{{"/command", "config says '" + doc["command"].get<std::string>() +
                                                     "' but the command line asks for '" + command + "'"}}};
            doc["command"] = command;
        }

        auto given = [&](const std::string& name) {
            for (auto* sub : {vac, dressed, dyn, two, three, fit, verify})
                if (const auto* opt = sub->get_option_no_throw(name); sub->parsed() && opt && opt->count() > 0)
                    return true;
            return false;
        };
        auto set_output = [&](const char* key, const std::string& v) {
            if (!doc.contains("output")) doc["output"] = json::object();
            doc["output"][key] = v;
        };
        if (app.count("--format")) set_output("format", fl.format);
        if (app.count("--output")) set_output("path", fl.output);
        if (app.count("--units")) doc["units"] = fl.units;
        for (const auto& [flag, key, value] : {std::tuple{"--rel-tol", "rel_tol", fl.rel_tol},
                                               {"--abs-tol", "abs_tol", fl.abs_tol},
                                               {"--tail-factor", "tail_factor", fl.tail_factor}})
            if (app.count(flag)) doc["quadrature"][key] = value;
        if (app.count("--ladder-levels")) doc["quadrature"]["ladder_levels"] = fl.ladder_levels;

        if (given("--pair")) doc["pair"] = fl.pair;
        if (given("--R")) doc["R"] = vec_json(fl.R, "/R");
        if (given("--r")) doc["r"] = vec_json(fl.r, "/r");
        if (given("--rp")) doc["rprime"] = vec_json(fl.rp, "/rprime");
        if (given("--atom")) {
            json atoms = json::array();
            for (std::size_t i = 0; i < fl.atoms.size(); ++i)
                atoms.push_back(atom_json(fl.atoms[i], "/atoms/" + std::to_string(i)));
            doc["atoms"] = atoms;
        }
        if (given("--no-bare")) doc["include_bare"] = false;
        if (given("--t")) doc["t"] = fl.t;
        if (given("--stationary")) doc["stationary"] = true;
        if (given("--distance")) doc["distance"] = fl.distance;
        if (given("--sweep")) doc["sweep"] = sweep_json(fl.sweep);
        if (given("--channel")) doc["channel"] = fl.channel;
        if (given("--route")) doc["route"] = fl.route;
        if (given("--static")) doc["static"] = true;
        if (given("--dynamic")) doc["static"] = false;
        if (given("--equilateral")) doc["equilateral"] = true;
        if (given("--side")) doc["side"] = fl.side;
        if (given("--average")) doc["average"] = fl.average;
        if (given("--input")) doc["input"] = fl.input;
        if (verify->parsed()) doc["suite"] = fl.suite;
        if (given("--case")) doc["case"] = fl.case_name;

        cfg = parse_config(doc);
        // Sweeps default to CSV, single results to JSON.
        if (!doc.contains("output") || !doc["output"].contains("format"))
            cfg.format = cfg.sweep ? Format::csv : Format::json;

        const Report rep = execute(cfg);
        if (cfg.output.empty()) {
            write_report(std::cout, rep, cfg);
        } else {
            std::ofstream out(cfg.output, std::ios::binary);
            if (!out) throw ConfigError{{{"/output/path", "cannot write '" + cfg.output + "'"}}};
            write_report(out, rep, cfg);
        }
        return rep.converged ? ok : unconverged;
    } catch (const ConfigError& e) {
        write_config_error(std::cerr, e);
        return config_error;
    } catch (const vcorr::Error& e) {
        // Convergence failures outside a sweep row are reported as such;
        // everything else is an input the library refuses.
        json d = {{"error", vcorr::to_string(e.kind())}, {"message", e.what()}, {"command", cfg.command}};
        std::cerr << d.dump(2) << "\n";
        return e.kind() == vcorr::ErrorKind::convergence ? unconverged : config_error;
    }
}
