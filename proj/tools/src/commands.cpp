#include "commands.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <iostream>
#include <limits>
#include <numbers>
#include <sstream>
#include <thread>

namespace vctool {

using namespace vcorr;

namespace {

constexpr double pi = std::numbers::pi;

// Runs fn(i) for i in [0, n) on up to VC_THREADS workers. Each index owns
// its output slot, so results do not depend on scheduling.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn)
{
    const std::size_t nt = std::min<std::size_t>(n, std::size_t(oracle_threads()));
    if (nt <= 1) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::vector<std::exception_ptr> errors(nt);
    std::vector<std::thread> pool;
    for (std::size_t id = 0; id < nt; ++id)
        pool.emplace_back([&, id] {
            try {
                for (std::size_t i = id; i < n; i += nt) fn(i);
            } catch (...) {
                errors[id] = std::current_exception();
            }
        });
    for (auto& th : pool) th.join();
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
}

std::vector<double> sweep_grid(const SweepRange& s, SweepFamily family)
{
    return SweepSpec{family, s.lo, s.hi, s.points}.grid();
}

Atom default_atom(Vec3 pos, double omega)
{
    Atom a;
    a.position = pos;
    a.omega = omega;
    a.dipole = {0, 0, 1};
    return a;
}

void add_tensor_rows(Report& rep, const std::string& part, const Tensor3& t)
{
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            rep.rows.push_back({part, std::int64_t(i), std::int64_t(j), t(i, j).real(), t(i, j).imag()});
}

Report tensor_report(const CorrTensor& ct, const RunConfig& c)
{
    Report rep;
    const std::string unit = correlation_unit(ct.pair, c);
    rep.columns = {{"part", ""}, {"i", ""}, {"j", ""}, {"re", unit}, {"im", unit}};
    add_tensor_rows(rep, "total", ct.entries);
    json parts = json::object();
    for (const auto& [name, t] : ct.parts) {
        add_tensor_rows(rep, name, t);
        parts[name] = tensor_json(t);
    }
    rep.extra["pair"] = to_string(ct.pair);
    rep.extra["tensor"] = tensor_json(ct.entries);
    rep.extra["parts"] = parts;
    if (ct.has_flags)
        rep.extra["causality"] = {{"in_cone_r", ct.flags.in_cone_r},
                                  {"in_cone_rprime", ct.flags.in_cone_rprime},
                                  {"pair_connected", ct.flags.pair_connected}};
    return rep;
}

Report correlate_vacuum(const RunConfig& c)
{
    if (c.pair == FieldPair::scalar) {
        Report rep;
        rep.columns = {{"separation", unit_label(Dimension::length, c)}, {"value", correlation_unit(c.pair, c)}};
        rep.rows.push_back({(c.r - c.rprime).norm(), vacuum_scalar_corr(c.r, c.rprime, c.units)});
        rep.extra["pair"] = "scalar";
        return rep;
    }
    Report rep = tensor_report(vacuum_em_corr(c.pair, c.r, c.rprime, c.units), c);
    if (c.pair == FieldPair::EB) rep.extra["symmetrized"] = tensor_json(vacuum_eb_symmetrized(c.r, c.rprime, c.units));
    return rep;
}

Report correlate_dressed(const RunConfig& c)
{
    const DressedCorrRequest req{c.atoms[0], c.r, c.rprime, c.include_bare};
    const CorrTensor ct = c.atoms[0].state == StateTag::excited ? dressed_excited_corr(req, c.units)
                                                                 : dressed_ground_corr(req, c.units);
    return tensor_report(ct, c);
}

Report correlate_dynamic(const RunConfig& c)
{
    DynamicOptions opt;
    opt.quad = apply_overrides(opt.quad, c.quadrature);
    opt.include_transient = !c.stationary;
    const Atom& a = c.atoms[0];
    const CorrTensor ct = a.state == StateTag::excited ? dynamic_excited_corr(a, c.r, c.rprime, *c.t, c.units, opt)
                                                        : dynamic_ground_corr(a, c.r, c.rprime, *c.t, c.units, opt);
    Report rep = tensor_report(ct, c);
    rep.extra["t"] = *c.t;
    return rep;
}

struct EnergyRow {
    double x = 0.0;
    EnergyResult e;
};

void add_energy_rows(Report& rep, const std::vector<EnergyRow>& rows, const std::string& xname,
                     const std::string& xunit, const RunConfig& c)
{
    const std::string eu = unit_label(Dimension::energy, c);
    rep.columns = {{xname, xunit}, {"E", eu}, {"est_error", eu}, {"converged", ""}, {"regime", ""}, {"gates", ""}};
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const auto& r = rows[i];
        std::string gates;
        for (const auto& [name, on] : r.e.causality) gates += (gates.empty() ? "" : ";") + name + "=" + (on ? "1" : "0");
        rep.rows.push_back({r.x, r.e.value, r.e.est_error, r.e.converged, std::string(to_string(r.e.regime_hint)), gates});
        if (!r.e.converged) {
            rep.converged = false;
            rep.diagnostics.push_back({{"row", i}, {xname, r.x}, {"message", "quadrature did not reach tolerance"}});
        }
    }
}

// Evaluates every point; a convergence failure marks that point instead of
// aborting the sweep.
std::vector<EnergyRow> evaluate(const std::vector<double>& xs, const std::function<EnergyResult(double)>& fn)
{
    std::vector<EnergyRow> rows(xs.size());
    parallel_for(xs.size(), [&](std::size_t i) {
        rows[i].x = xs[i];
        try {
            rows[i].e = fn(xs[i]);
        } catch (const Error& e) {
            if (e.kind() != ErrorKind::convergence) throw;
            rows[i].e.value = std::numeric_limits<double>::quiet_NaN();
            rows[i].e.converged = false;
        }
    });
    return rows;
}

Report energy_two_body(const RunConfig& c)
{
    Atom B = c.atoms.empty() ? default_atom({0, 0, 0}, 1.0) : c.atoms[0];
    Atom C = c.atoms.empty() ? default_atom({0, 0, c.distance}, 1.3) : c.atoms[1];
    const Vec3 axis = (C.position - B.position).unit();
    const double R0 = (C.position - B.position).norm();
    const std::vector<double> xs = c.sweep ? sweep_grid(*c.sweep, SweepFamily::two_body_distance) : std::vector{R0};
    const QuadratureSpec spec = apply_overrides({}, c.quadrature);
    const auto rows = evaluate(xs, [&](double R) {
        Atom Cr = C;
        Cr.position = B.position + axis * R;
        return two_body_energy(B, Cr, c.channel, c.units, c.route, spec);
    });
    Report rep;
    add_energy_rows(rep, rows, "R", unit_label(Dimension::length, c), c);
    rep.extra["channel"] = to_string(c.channel);
    rep.extra["route"] = c.route == TwoBodyRoute::real_axis ? "real" : "imaginary";
    return rep;
}

std::array<Atom, 3> equilateral(const RunConfig& c, double s)
{
    std::array<Atom, 3> a = {default_atom({}, 1.0), default_atom({}, 1.3), default_atom({}, 0.8)};
    for (std::size_t i = 0; i < std::min<std::size_t>(3, c.atoms.size()); ++i) a[i] = c.atoms[i];
    a[0].position = {0, 0, 0};
    a[1].position = {s, 0, 0};
    a[2].position = {0.5 * s, 0.5 * std::sqrt(3.0) * s, 0};
    return a;
}

Report energy_three_body(const RunConfig& c)
{
    Report rep;
    if (c.is_static) {
        const QuadratureSpec spec = apply_overrides(QuadratureSpec::imaginary_frequency(), c.quadrature);
        if (c.equilateral) {
            const std::vector<double> xs = c.sweep ? sweep_grid(*c.sweep, SweepFamily::equilateral_side) : std::vector{c.side};
            const auto rows = evaluate(xs, [&](double s) {
                const auto a = equilateral(c, s);
                return three_body_static(a[0], a[1], a[2], c.units, spec);
            });
            add_energy_rows(rep, rows, "side", unit_label(Dimension::length, c), c);
        } else {
            const auto rows = evaluate({0.0}, [&](double) {
                return three_body_static(c.atoms[0], c.atoms[1], c.atoms[2], c.units, spec);
            });
            add_energy_rows(rep, rows, "index", "", c);
        }
        return rep;
    }
    DynamicEnergyOptions opt;
    opt.quad = apply_overrides(opt.quad, c.quadrature);
    opt.average = c.average;
    opt.include_transient = !c.stationary;
    const auto atoms = c.equilateral ? equilateral(c, c.side) : std::array{c.atoms[0], c.atoms[1], c.atoms[2]};
    const std::vector<double> ts = c.sweep ? sweep_grid(*c.sweep, SweepFamily::triangle_time) : std::vector{*c.t};
    const auto rows = evaluate(ts, [&](double t) {
        return three_body_dynamic_symmetrized(atoms[0], atoms[1], atoms[2], t, c.units, opt);
    });
    add_energy_rows(rep, rows, "t", unit_label(Dimension::time, c), c);
    return rep;
}

Report fit(const RunConfig& c)
{
    std::ifstream file;
    std::istream* in = &std::cin;
    if (!c.input.empty() && c.input != "-") {
        file.open(c.input);
        if (!file) throw ConfigError{{{"/input", "cannot open '" + c.input + "'"}}};
        in = &file;
    }
    std::vector<double> x, y;
    std::vector<std::string> header;
    std::string line;
    while (std::getline(*in, line)) {
        if (line.empty() || line[0] == '#') continue;
        const auto f = csv_split(line);
        if (header.empty()) {
            header = f;
            continue;
        }
        if (f.size() < 2) continue;
        try {
            const double xv = std::stod(f[0]), yv = std::stod(f[1]);
            if (std::isfinite(xv) && std::isfinite(yv)) {
                x.push_back(xv);
                y.push_back(yv);
            }
        } catch (const std::exception&) {
            throw ConfigError{{{"/input", "non-numeric entry in row " + std::to_string(x.size() + 1)}}};
        }
    }
    if (x.size() < 3) throw ConfigError{{{"/input", "need at least three numeric rows to fit"}}};
    const ExponentFit f = scaling_exponent_fit(x, y);
    Report rep;
    rep.columns = {{"exponent", ""}, {"stderr", ""}, {"prefactor", ""}, {"points", ""}};
    rep.rows.push_back({f.exponent, f.stderr_, f.prefactor, std::int64_t(x.size())});
    rep.extra["x_column"] = header.size() > 0 ? header[0] : "";
    rep.extra["y_column"] = header.size() > 1 ? header[1] : "";
    return rep;
}

// ---- verify ---------------------------------------------------------------

struct CaseResult {
    double value;
    double reference;
    double deviation; // relative unless noted in the description
    double tolerance;
};

struct VerifyCase {
    const char* suite;
    const char* name;
    const char* description;
    std::function<CaseResult(const UnitSystem&)> run;
};

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

const std::vector<VerifyCase>& verify_cases()
{
    static const std::vector<VerifyCase> cases = {
        {"oracle", "scalar", "mode-sum scalar correlation at R = 1 vs closed form, 1%",
         [](const UnitSystem& u) {
             const auto lad = mode_sum_scalar_extrapolated(60.0, 144, {1.6, 1.2, 0.9, 0.7}, {0, 0, 0}, {0, 0, 1}, u, true);
             const double ref = vacuum_scalar_corr({0, 0, 0}, {0, 0, 1}, u);
             return CaseResult{lad.value, ref, rel(lad.value, ref), 0.01};
         }},
        {"oracle", "ee", "mode-sum EE tensor at R = 1 vs closed form, 2% of the largest entry",
         [](const UnitSystem& u) {
             const auto lad = mode_sum_em_extrapolated(16.0, 96, {0.9, 0.7, 0.55, 0.45, 0.35}, FieldPair::EE,
                                                       {0, 0, 0}, {0, 0, 1}, u);
             const Tensor3 ref = vacuum_em_corr(FieldPair::EE, {0, 0, 0}, {0, 0, 1}, u).entries;
             return CaseResult{lad.value(2, 2).real(), ref(2, 2).real(), max_abs_diff(lad.value, ref) / ref.max_abs(), 0.02};
         }},
        {"oracle", "bb", "mode-sum BB tensor equals mode-sum EE tensor",
         [](const UnitSystem& u) {
             const ModeGrid g{16.0, 48, 0.5, true};
             const Tensor3 ee = mode_sum_em_corr(g, FieldPair::EE, {0, 0, 0}, {0.3, 0, 1}, u);
             const Tensor3 bb = mode_sum_em_corr(g, FieldPair::BB, {0, 0, 0}, {0.3, 0, 1}, u);
             return CaseResult{bb.max_abs(), ee.max_abs(), max_abs_diff(bb, ee) / ee.max_abs(), 1e-12};
         }},
        {"oracle", "eb", "symmetrized mode-sum EB (2 Re) relative to |EB|",
         [](const UnitSystem& u) {
             const Tensor3 eb = mode_sum_em_corr({16.0, 48, 0.5, true}, FieldPair::EB, {0, 0, 0}, {0.3, 0, 1}, u);
             return CaseResult{2.0 * eb.max_abs_real(), 0.0, eb.max_abs_real() / eb.max_abs(), 1e-10};
         }},
        {"routes", "dressed-ground", "double-frequency-integral dressing vs auxiliary-f closed form",
         [](const UnitSystem& u) {
             Atom a = default_atom({0, 0, 0}, 1.0);
             a.dipole = {0.3, 0.4, 1.0};
             const DressedCorrRequest req{a, {2, 1, 0}, {-1, 3, 1}, false};
             const Tensor3 ref = dressed_ground_corr_double_integral(req, u).entries;
             const Tensor3 got = dressed_ground_corr(req, u).entries;
             return CaseResult{got(2, 2).real(), ref(2, 2).real(), max_abs_diff(got, ref) / ref.max_abs(), 1e-6};
         }},
        {"routes", "two-body", "imaginary-frequency vs real-axis two-body energy at R = 2",
         [](const UnitSystem& u) {
             const Atom B = default_atom({0, 0, 0}, 1.0), C = default_atom({0, 0, 2}, 1.3);
             const double im = two_body_energy(B, C, Channel::ee, u).value;
             const double re = two_body_energy(B, C, Channel::ee, u, TwoBodyRoute::real_axis).value;
             return CaseResult{re, im, rel(re, im), 1e-4};
         }},
        {"specfun", "z-f-limit", "z f(z) at z = 1e4 approaches 1",
         [](const UnitSystem&) {
             const double v = 1e4 * auxiliary_f(1e4);
             return CaseResult{v, 1.0, std::abs(v - 1.0), 1e-4};
         }},
        {"specfun", "pv-kernel", "PV engine vs closed-form sine kernel, absolute",
         [](const UnitSystem&) {
             CaseResult worst{0, 0, 0, 1e-8};
             for (double kA : {0.5, 1.0, 2.0})
                 for (double X : {0.3, 1.0, 2.5, 7.0}) {
                     const auto g = [X, kA](double k) { return cplx(std::sin(k * X) / (k - kA)); };
                     const auto r = integrate_pv(g, kA, QuadratureSpec::principal_value(kA), 0.0,
                                                 std::numeric_limits<double>::infinity(), X);
                     const double ref = pv_sine_kernel(kA * X);
                     const double d = std::abs(r.value.real() - ref);
                     if (d >= worst.deviation) worst = {r.value.real(), ref, d, 1e-8};
                 }
             return worst;
         }},
    };
    return cases;
}

Report verify(const RunConfig& c)
{
    Report rep;
    rep.columns = {{"suite", ""}, {"case", ""}, {"value", ""}, {"reference", ""}, {"deviation", ""},
                   {"tolerance", ""}, {"result", ""}};
    bool any = false;
    for (const auto& vc : verify_cases()) {
        if (c.suite != vc.suite || (!c.case_name.empty() && c.case_name != vc.name)) continue;
        any = true;
        const CaseResult r = vc.run(c.units);
        const bool pass = r.deviation <= r.tolerance;
        rep.rows.push_back({std::string(vc.suite), std::string(vc.name), r.value, r.reference, r.deviation,
                            r.tolerance, std::string(pass ? "PASS" : "FAIL")});
        if (!pass) {
            rep.converged = false;
            rep.diagnostics.push_back({{"case", vc.name}, {"message", vc.description}});
        }
    }
    if (!any) throw ConfigError{{{"/case", "no case '" + c.case_name + "' in suite '" + c.suite + "'"}}};
    return rep;
}

Report list_cases(const RunConfig&)
{
    Report rep;
    rep.columns = {{"suite", ""}, {"case", ""}, {"description", ""}};
    for (const auto& vc : verify_cases())
        rep.rows.push_back({std::string(vc.suite), std::string(vc.name), std::string(vc.description)});
    return rep;
}

} // namespace

Report execute(const RunConfig& c)
{
    if (c.command == "correlate vacuum") return correlate_vacuum(c);
    if (c.command == "correlate dressed") return correlate_dressed(c);
    if (c.command == "correlate dynamic") return correlate_dynamic(c);
    if (c.command == "energy two-body") return energy_two_body(c);
    if (c.command == "energy three-body") return energy_three_body(c);
    if (c.command == "fit") return fit(c);
    if (c.command == "verify") return verify(c);
    return list_cases(c);
}

} // namespace vctool
