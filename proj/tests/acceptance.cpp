// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails. Reference values come from tests/support/oracles.cpp or
// from closed forms written out here.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "vcorr/vcorr.hpp"

using namespace vcorr;
constexpr double pi = std::numbers::pi;

namespace {

const UnitSystem nat = UnitSystem::natural();

using Clock = std::chrono::steady_clock;
double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

struct Outcome {
    bool pass = true;
    std::string detail;
    void require(bool ok, const char* fmt, auto... args)
    {
        char buf[256];
        std::snprintf(buf, sizeof buf, fmt, args...);
        if (!detail.empty()) detail += "; ";
        detail += buf;
        if (!ok) {
            detail += " [x]";
            pass = false;
        }
    }
};

Atom atom_at(Vec3 pos, double omega = 1.0, Vec3 mu = {0, 0, 1})
{
    Atom a;
    a.position = pos;
    a.omega = omega;
    a.dipole = mu;
    return a;
}

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

Outcome scalar_vacuum()
{
    Outcome o;
    const auto t0 = Clock::now();
    const auto lad = mode_sum_scalar_extrapolated(60.0, 144, {1.6, 1.2, 0.9, 0.7}, {0, 0, 0}, {0, 0, 1}, nat, true);
    const double secs = seconds_since(t0);
    const double lib = vacuum_scalar_corr({0, 0, 0}, {0, 0, 1}, nat);
    o.require(rel(lad.value, lib) < 0.01, "oracle %.6f vs closed form %.6f (rel %.3g)", lad.value, lib,
              rel(lad.value, lib));
    o.require(secs < 10.0, "oracle time %.1f s", secs);
    return o;
}

Outcome ee_vacuum()
{
    Outcome o;
    const Vec3 R{1, 2, 2};
    const double r4 = std::pow(R.norm(), 4);
    const Tensor3 ee = vacuum_em_corr(FieldPair::EE, {0, 0, 0}, R, nat).entries;
    const Vec3 n = R.unit(), p = cross(n, Vec3{0, 0, 1}).unit(), q = cross(n, p);
    double worst = 0.0;
    for (const auto& [v, lam] : {std::pair{n, 4 / (pi * r4)}, std::pair{p, -4 / (pi * r4)}, std::pair{q, -4 / (pi * r4)}}) {
        const auto w = ee.apply(v);
        for (int i = 0; i < 3; ++i) worst = std::max(worst, std::abs(w[i] - lam * v[i]) * r4);
    }
    o.require(worst < 1e-14, "eigenstructure residual %.1e", worst);

    const auto lad = mode_sum_em_extrapolated(16.0, 96, {0.9, 0.7, 0.55, 0.45, 0.35}, FieldPair::EE, {0, 0, 0},
                                              {0, 0, 1}, nat);
    const Tensor3 lib = vacuum_em_corr(FieldPair::EE, {0, 0, 0}, {0, 0, 1}, nat).entries;
    const double dev = max_abs_diff(lad.value, lib) / lib.max_abs();
    o.require(dev < 0.02, "oracle vs closed form %.2f%%", 100 * dev);

    const double bb = max_abs_diff(vacuum_em_corr(FieldPair::BB, {0, 0, 0}, R, nat).entries, ee);
    o.require(bb == 0.0, "BB-EE %.1e", bb);
    const double sym = vacuum_eb_symmetrized({0, 0, 0}, R, nat).max_abs();
    o.require(sym == 0.0, "symmetrized EB %.1e", sym);
    const Tensor3 eb = mode_sum_em_corr({16.0, 48, 0.5, true}, FieldPair::EB, {0, 0, 0}, {0.3, 0, 1}, nat);
    // <E_i B_j> + <B_j E_i> = 2 Re <E_i B_j>
    const double symm = eb.max_abs_real() / eb.max_abs();
    o.require(symm < 1e-10, "oracle symmetrized EB %.1e", symm);
    return o;
}

// R and R' derivatives go under the outer frequency integral, so the
// reference never touches the auxiliary functions.
Tensor3 dressing_double_integral(const Atom& a, const Vec3& r, const Vec3& rp)
{
    QuadratureSpec spec;
    spec.rel_tol = 1e-11;
    return dressed_ground_corr_double_integral({a, r, rp, false}, nat, spec).entries;
}

Outcome dressed_ground()
{
    Outcome o;
    struct Case {
        Vec3 r, rp, mu;
    };
    const Case cases[10] = {
        {{0, 0, 1}, {0, 0, -1}, {0, 0, 1}},       {{0, 0, 1}, {0, 0, 2}, {0, 0, 1}},
        {{1, 0, 0.5}, {0, 1.5, 0}, {0, 0, 1}},    {{0.3, 0.2, 0.4}, {-0.5, 0.1, 0.3}, {1, 0, 0}},
        {{2, 1, 0}, {-1, 3, 1}, {0.6, 0, 0.8}},   {{5, 0, 0}, {0, 6, 2}, {0, 1, 0}},
        {{0.1, 0, 0}, {0, 0, 0.15}, {0.3, 0.4, 1}}, {{3, 3, 3}, {-2, 1, 4}, {0, 0, 1}},
        {{8, -2, 1}, {1, 9, -3}, {1, 1, 0}},      {{0.7, 0.7, 0}, {0.7, -0.7, 0.2}, {0.2, 0.9, 0.4}},
    };
    const auto t0 = Clock::now();
    double worst = 0.0;
    for (const auto& c : cases) {
        const Atom a = atom_at({0, 0, 0}, 1.0, c.mu);
        const Tensor3 lib = dressed_ground_corr({a, c.r, c.rp, false}, nat).entries;
        const Tensor3 ref = dressing_double_integral(a, c.r, c.rp);
        worst = std::max(worst, max_abs_diff(lib, ref) / ref.max_abs());
    }
    const double secs = seconds_since(t0);
    o.require(worst < 1e-6, "10 geometries worst rel %.1e", worst);
    o.require(secs < 60.0, "%.1f s", secs);

    std::vector<double> s, zz;
    const Atom a = atom_at({0, 0, 0}, 1.0, {0, 0, 1});
    for (const double x : SweepSpec{SweepFamily::two_body_distance, 50.0, 500.0, 16}.grid()) {
        s.push_back(x);
        zz.push_back(dressed_ground_corr({a, {0, 0, x}, {0, 0.5 * x, 1.5 * x}, false}, nat).entries(2, 2).real());
    }
    const double slope = oracle::loglog_slope(s, zz);
    o.require(std::abs(slope + 7.0) <= 0.2, "far-zone dressing slope %.3f", slope);
    return o;
}

std::vector<double> two_body_sweep(double lo, double hi, std::vector<double>& R)
{
    std::vector<double> E;
    R = SweepSpec{SweepFamily::two_body_distance, lo, hi, 16}.grid();
    for (double x : R) E.push_back(two_body_energy(atom_at({0, 0, 0}), atom_at({0, 0, x}, 1.3), Channel::ee, nat).value);
    return E;
}

Outcome two_body()
{
    Outcome o;
    std::vector<double> R;
    std::vector<double> E = two_body_sweep(0.01, 0.1, R);
    const double near = oracle::loglog_slope(R, E);
    o.require(std::abs(near + 6.0) <= 0.1, "near slope %.4f", near);
    E = two_body_sweep(10.0, 100.0, R);
    const double far = oracle::loglog_slope(R, E);
    o.require(std::abs(far + 7.0) <= 0.1, "far slope %.4f", far);
    double worst = 0.0;
    for (double x : {0.02, 0.3, 2.0, 15.0, 60.0}) {
        const Atom B = atom_at({0, 0, 0}), C = atom_at({0, x, 0}, 1.3);
        const double im = two_body_energy(B, C, Channel::ee, nat, TwoBodyRoute::imaginary_frequency).value;
        const double re = two_body_energy(B, C, Channel::ee, nat, TwoBodyRoute::real_axis).value;
        worst = std::max(worst, rel(re, im));
    }
    o.require(worst < 1e-4, "route agreement worst rel %.1e", worst);
    return o;
}

Outcome three_body_static_criterion()
{
    Outcome o;
    const auto t0 = Clock::now();
    std::vector<double> R, E;
    const double h = std::sqrt(3.0) / 2;
    for (double s : SweepSpec{SweepFamily::equilateral_side, 10.0, 100.0, 16}.grid()) {
        R.push_back(s);
        E.push_back(three_body_static(atom_at({0, 0, 0}), atom_at({s, 0, 0}), atom_at({s / 2, h * s, 0}), nat).value);
    }
    const double slope = oracle::loglog_slope(R, E);
    o.require(std::abs(slope + 10.0) <= 0.15, "equilateral far slope %.3f", slope);

    const Atom A = atom_at({0, 0, 0}), B = atom_at({3, 0, 0}, 1.3), C = atom_at({0.4, 4, 1}, 0.8);
    const double e = three_body_static(A, B, C, nat).value;
    double worst = 0.0;
    for (const double v : {three_body_static(A, C, B, nat).value, three_body_static(B, A, C, nat).value,
                           three_body_static(B, C, A, nat).value, three_body_static(C, A, B, nat).value,
                           three_body_static(C, B, A, nat).value})
        worst = std::max(worst, rel(v, e));
    o.require(worst <= 1e-12, "permutation spread %.1e", worst);

    const double s = 20.0;
    const Vec3 pa{0, 0, 0}, pb{s, 0, 0}, pc{s / 2, h * s, 0};
    const double lib = three_body_static(atom_at(pa), atom_at(pb), atom_at(pc), nat).value;
    const double ref = oracle::three_body_static_fd({pa, 1.0, 1.0}, {pb, 1.0, 1.0}, {pc, 1.0, 1.0});
    o.require(rel(lib, ref) < 1e-4, "finite-difference oracle rel %.1e", rel(lib, ref));
    const double secs = seconds_since(t0);
    o.require(secs < 120.0, "%.1f s", secs);
    return o;
}

Outcome dynamical_gates()
{
    Outcome o;
    const UnitSystem& u = nat;
    // Every gate closed: beta, gamma, alpha + beta, |beta - alpha| ... all beyond ct.
    {
        const Atom A = atom_at({0, 0, 0}), B = atom_at({5, 0, 0}, 1.2), C = atom_at({0, 6, 0}, 0.9);
        Atom Ax = A;
        Ax.state = StateTag::excited;
        const double t = 0.7;
        const double p = three_body_dynamic_partial(A, B, C, t, u).value;
        const auto sym = three_body_dynamic_symmetrized(A, B, C, t, u);
        const double res = three_body_resonant(Ax, B, C, t, u).value;
        bool all_off = true;
        for (const auto& [name, on] : sym.causality) all_off = all_off && !on;
        o.require(all_off && p == 0.0 && sym.value == 0.0 && res == 0.0, "all gates off: %g %g %g", p, sym.value, res);
    }
    // alpha, beta, gamma > ct, side differences below ct.
    {
        double worst = 0.0;
        const struct {
            Vec3 b, c;
            double t;
        } cases[] = {{{4, 0, 0}, {4, 3, 0}, 2.3}, {{3.2, 0, 0}, {1.5, 2.9, 0.4}, 2.6}, {{6, 0, 0}, {2, 5, 1}, 4.0}};
        for (const auto& c : cases) {
            const Atom A = atom_at({0, 0, 0}), B = atom_at(c.b, 1.2), C = atom_at(c.c, 0.9);
            worst = std::max(worst, std::abs(three_body_dynamic_symmetrized(A, B, C, c.t, u).value));
        }
        o.require(worst == 0.0, "symmetrized energy with alpha, beta, gamma > ct: max |E| %.3e", worst);
    }
    // beta, gamma > ct > alpha: nonzero.
    {
        const Atom A = atom_at({0, 0, 0}), B = atom_at({5, 0, 0}, 1.2), C = atom_at({5, 2, 0}, 0.9);
        const double v = three_body_dynamic_symmetrized(A, B, C, 2.5, u).value;
        o.require(v != 0.0, "witness beta, gamma > ct > alpha: %.3e", v);
    }
    return o;
}

Outcome settling()
{
    Outcome o;
    // Distinct frequencies: identical atoms put alpha_C(omega_A) on its pole.
    const Atom A = atom_at({0, 0, 0}), B = atom_at({3, 0, 0}, 1.3), C = atom_at({0, 4, 0}, 0.8);
    const double stat = three_body_static(A, B, C, nat).value;
    DynamicEnergyOptions opt;
    opt.average = DipoleAverage::isotropic;
    const double t = 50.0 * 5.0; // 50 max(alpha, beta, gamma)/c
    // 20 pi is a common period of 1, 1.3 and 0.8; 64 points clear the
    // highest combination tone.
    const double avg = window_average(
        [&](double tt) { return three_body_dynamic_symmetrized(A, B, C, tt, nat, opt).value; }, t, 20.0 * pi, 64);
    o.require(rel(avg, stat) < 1e-3, "window average %.6e vs static %.6e (rel %.2e)", avg, stat, rel(avg, stat));
    return o;
}

Outcome special_functions()
{
    Outcome o;
    double worst = 0.0;
    for (double z = 1e-3; z <= 1e3; z *= 1.02) {
        const double ref = oracle::Ci(z) * std::sin(z) - (oracle::Si(z) - pi / 2) * std::cos(z);
        worst = std::max(worst, std::abs(auxiliary_f(z) - ref));
    }
    o.require(worst < 1e-12, "f identity max dev %.1e", worst);
    const double zf = 1e4 * auxiliary_f(1e4);
    o.require(std::abs(zf - 1.0) < 1e-4, "z f(z) at 1e4 = %.8f", zf);

    double pv = 0.0;
    for (double kA : {0.5, 1.0, 2.0})
        for (double X : {0.3, 1.0, 2.5, 7.0}) {
            const auto g = [X](double k) { return cplx(std::sin(k * X)); };
            auto spec = QuadratureSpec::principal_value(kA);
            const auto ex = integrate_pv([&](double k) { return g(k) / (k - kA); }, kA, spec, 0.0,
                                         std::numeric_limits<double>::infinity(), X);
            spec.pv_method = PvMethod::subtraction;
            const auto sub = integrate_pv([&](double k) { return g(k) / (k - kA); }, kA, spec, 0.0,
                                          std::numeric_limits<double>::infinity(), X);
            const double ref = oracle::pv_sine_closed(kA * X);
            pv = std::max({pv, std::abs(ex.value.real() - ref), std::abs(sub.value.real() - ref)});
        }
    o.require(pv < 1e-8, "PV engine vs closed form max dev %.1e", pv);
    return o;
}

#ifdef VCORR_CLI_PATH
std::string run_capture(const std::string& cmd, int& status)
{
    std::string out;
    FILE* p = popen(cmd.c_str(), "r");
    if (!p) {
        status = -1;
        return out;
    }
    char buf[4096];
    std::size_t n;
    while ((n = std::fread(buf, 1, sizeof buf, p)) > 0) out.append(buf, n);
    status = pclose(p);
    return out;
}
#endif

Outcome determinism(Clock::time_point start)
{
    Outcome o;
#ifdef VCORR_CLI_PATH
    const std::string cli = VCORR_CLI_PATH;
    const char* runs[] = {
        " correlate vacuum --pair EE --R 0,0,1",
        " energy three-body --static --equilateral --sweep 10:100:16",
        " energy two-body --sweep 10:100:16 --format csv",
    };
    for (const char* args : runs) {
        int s1 = 0, s2 = 0;
        const std::string a = run_capture(cli + args, s1), b = run_capture(cli + args, s2);
        o.require(s1 == 0 && s2 == 0 && !a.empty() && a == b, "'%s' identical (%zu bytes)", args + 1, a.size());
    }
#else
    o.require(false, "%s", "command line tool not built");
#endif
    const double secs = seconds_since(start);
    o.require(secs < 600.0, "acceptance run %.0f s", secs);
    return o;
}

} // namespace

int main()
{
    const auto start = Clock::now();
    const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
        {"scalar vacuum correlation", scalar_vacuum},
        {"EE vacuum tensor", ee_vacuum},
        {"dressed ground correlation", dressed_ground},
        {"two-body energy", two_body},
        {"three-body static energy", three_body_static_criterion},
        {"dynamical gates", dynamical_gates},
        {"settling", settling},
        {"special functions", special_functions},
        {"determinism", [start] { return determinism(start); }},
    };
    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        const auto t0 = Clock::now();
        Outcome o;
        try {
            o = criteria[i].second();
        } catch (const std::exception& e) {
            o.pass = false;
            o.detail = std::string("exception: ") + e.what();
        }
        std::printf("criterion %zu %s: %s (%.1f s) %s\n", i + 1, o.pass ? "PASS" : "FAIL", criteria[i].first,
                    seconds_since(t0), o.detail.c_str());
        std::fflush(stdout);
        failed += !o.pass;
    }
    std::printf("%d of %zu criteria failed\n", failed, criteria.size());
    return failed ? 1 : 0;
}
