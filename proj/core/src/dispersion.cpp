#include "vcorr/dispersion.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <mutex>
#include <numbers>
#include <tuple>

#include "vcorr/error.hpp"

namespace vcorr {

namespace {

constexpr double pi = std::numbers::pi;
constexpr cplx I{0.0, 1.0};

double pole_radius(const std::vector<double>& poles, double fast)
{
    double r = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < poles.size(); ++i) {
        r = std::min(r, 0.25 * poles[i]);
        for (std::size_t j = 0; j < i; ++j)
            if (poles[i] != poles[j]) r = std::min(r, 0.25 * std::abs(poles[i] - poles[j]));
    }
    return std::min(r, 0.25 / fast);
}

std::vector<double> unique_poles(std::vector<double> p)
{
    std::sort(p.begin(), p.end());
    p.erase(std::unique(p.begin(), p.end()), p.end());
    return p;
}

std::vector<double> wavenumber_poles(const PolarizabilityModel& m, const UnitSystem& u)
{
    std::vector<double> out;
    for (const auto& r : m.resonances())
        if (r.dipole_sq != 0.0) out.push_back(r.omega / u.c);
    return out;
}

Regime regime_for(double distance, const std::vector<double>& k)
{
    if (k.empty()) return Regime::mixed;
    const double kmin = *std::min_element(k.begin(), k.end());
    const double kmax = *std::max_element(k.begin(), k.end());
    if (distance * kmax < 0.3) return Regime::near;
    if (distance * kmin > 30.0) return Regime::far;
    return Regime::mixed;
}

// F[e^{ikR}/R] for the ee/mm channels, and its em counterpart
// eps_ijl R_l (k^2/R + ik/R^2) e^{ikR}.
Tensor3 propagator(Channel ch, cplx k, const Vec3& Rvec)
{
    const double R = Rvec.norm();
    if (ch == Channel::em)
        return levi_civita(Rvec / R) * ((k * k / R + I * k / (R * R)) * std::exp(I * k * R));
    return apply_F(radial_exp(k, R), Rvec);
}

std::pair<const PolarizabilityModel*, const PolarizabilityModel*> channel_models(const PolarizableBody& B,
                                                                                   const PolarizableBody& C,
                                                                                   Channel ch)
{
    switch (ch) {
    case Channel::ee: return {&B.electric, &C.electric};
    case Channel::mm: return {&B.magnetic, &C.magnetic};
    case Channel::em: return {&B.electric, &C.magnetic};
    }
    return {&B.electric, &C.electric};
}

} // namespace

const char* to_string(Regime r)
{
    switch (r) {
    case Regime::near: return "near";
    case Regime::far: return "far";
    case Regime::mixed: return "mixed";
    }
    return "?";
}

EnergyResult two_body_energy(const PolarizableBody& B, const PolarizableBody& C, Channel ch, const UnitSystem& u,
                             TwoBodyRoute route, const QuadratureSpec& spec)
{
    u.validate();
    const Vec3 Rvec = C.position - B.position;
    const double R = Rvec.norm();
    if (!(R > 0.0)) throw Error(ErrorKind::singular, "bodies coincide");
    const auto [aB, aC] = channel_models(B, C, ch);

    EnergyResult out;
    out.channel = ch;
    std::vector<double> poles = wavenumber_poles(*aB, u);
    for (double p : wavenumber_poles(*aC, u)) poles.push_back(p);
    poles = unique_poles(poles);
    out.regime_hint = regime_for(R, poles);
    if (aB->is_zero() || aC->is_zero()) {
        out.route = "trivial";
        return out;
    }

    const double pref = -u.hbar * u.c / (2.0 * pi);
    if (route == TwoBodyRoute::imaginary_frequency) {
        const double c = u.c;
        auto g = [&, c](double uu) {
            const Tensor3 G = propagator(ch, cplx(0.0, uu), Rvec);
            return aB->imaginary(c * uu) * aC->imaginary(c * uu) * G.matmul(G).trace().real();
        };
        QuadratureSpec s = spec;
        s.method = QuadMethod::imaginary_frequency;
        const QuadResult r = integrate_imaginary_frequency(g, s);
        out.value = pref * r.value.real();
        out.est_error = std::abs(pref) * r.est_error;
        out.evals = r.evals;
        out.converged = r.converged;
        out.route = "imaginary_frequency";
        return out;
    }

    // Real axis, contour above the polarizability poles.
    const double c = u.c;
    auto g = [&, c](cplx k) {
        const Tensor3 G = propagator(ch, k, Rvec);
        return aB->at(c * k) * aC->at(c * k) * G.matmul(G).trace();
    };
    const PhaseScales sc{2.0 * R, 2.0 * R};
    const QuadResult r =
        integrate_indented(g, poles, pole_radius(poles, 2.0 * R), PoleSide::above, sc, spec);
    out.value = pref * r.value.imag();
    out.est_error = std::abs(pref) * r.est_error;
    out.evals = r.evals;
    out.converged = r.converged;
    out.route = "real_axis";
    return out;
}

EnergyResult two_body_energy(const Atom& B, const Atom& C, Channel ch, const UnitSystem& u, TwoBodyRoute route,
                             const QuadratureSpec& spec)
{
    return two_body_energy(make_body(B, u), make_body(C, u), ch, u, route, spec);
}

EnergyResult three_body_static(const PolarizableBody& A, const PolarizableBody& B, const PolarizableBody& C,
                               const UnitSystem& u, const QuadratureSpec& spec)
{
    u.validate();
    const GeometryTriplet g{A.position, B.position, C.position};
    g.validate();
    const Vec3 va = C.position - B.position, vb = C.position - A.position, vc = B.position - A.position;

    EnergyResult out;
    out.channel = Channel::ee;
    std::vector<double> k = wavenumber_poles(A.electric, u);
    for (const auto* m : {&B.electric, &C.electric})
        for (double p : wavenumber_poles(*m, u)) k.push_back(p);
    out.regime_hint = regime_for(std::min({g.alpha(), g.beta(), g.gamma()}), k);
    if (out.regime_hint == Regime::near && std::max({g.alpha(), g.beta(), g.gamma()}) * *std::max_element(k.begin(), k.end()) >= 0.3)
        out.regime_hint = Regime::mixed;
    if (A.electric.is_zero() || B.electric.is_zero() || C.electric.is_zero()) {
        out.route = "trivial";
        return out;
    }

    const double c = u.c;
    auto integrand = [&, c](double uu) {
        const Tensor3 Fa = apply_F(radial_exp(cplx(0.0, uu), va.norm()), va);
        const Tensor3 Fb = apply_F(radial_exp(cplx(0.0, uu), vb.norm()), vb);
        const Tensor3 Fc = apply_F(radial_exp(cplx(0.0, uu), vc.norm()), vc);
        return A.electric.imaginary(c * uu) * B.electric.imaginary(c * uu) * C.electric.imaginary(c * uu) *
               trace3(Fa, Fb, Fc).real();
    };
    const QuadResult r = integrate_imaginary_frequency(integrand, spec);
    const double pref = -u.hbar * u.c / pi;
    out.value = pref * r.value.real();
    out.est_error = std::abs(pref) * r.est_error;
    out.evals = r.evals;
    out.converged = r.converged;
    out.route = "imaginary_frequency";
    return out;
}

EnergyResult three_body_static(const Atom& A, const Atom& B, const Atom& C, const UnitSystem& u,
                               const QuadratureSpec& spec)
{
    return three_body_static(make_body(A, u), make_body(B, u), make_body(C, u), u, spec);
}

namespace {

// Contraction weights for sum_XYZ w_XYZ (X a)(Y b)(Z c) where
// F^alpha = sum_X P^X_alpha X, X in {A: delta, (-1,-1); B: nn, (1,-1)} and
// the dipoles sit on F^gamma and F^beta.
struct TriWeights {
    double w[2][2][2]; // [X alpha][Y beta][Z gamma]
};

TriWeights tri_weights(const Vec3& na, const Vec3& nb, const Vec3& nc, const Vec3& mu, DipoleAverage avg)
{
    TriWeights t{};
    if (avg == DipoleAverage::fixed) {
        const Vec3 u[2] = {mu, nc * dot(mu, nc)};
        const Vec3 w[2] = {mu, nb * dot(mu, nb)};
        for (int X = 0; X < 2; ++X)
            for (int Y = 0; Y < 2; ++Y)
                for (int Z = 0; Z < 2; ++Z)
                    t.w[X][Y][Z] = X == 0 ? dot(u[Z], w[Y]) : dot(u[Z], na) * dot(na, w[Y]);
        return t;
    }
    // mu_n mu_p -> |mu|^2/3 delta_np: (|mu|^2/3) tr(P^Z_gamma P^X_alpha P^Y_beta)
    const Tensor3 Pa[2] = {Tensor3::identity(), Tensor3::outer(na, na)};
    const Tensor3 Pb[2] = {Tensor3::identity(), Tensor3::outer(nb, nb)};
    const Tensor3 Pc[2] = {Tensor3::identity(), Tensor3::outer(nc, nc)};
    const double m2 = mu.norm2() / 3.0;
    for (int X = 0; X < 2; ++X)
        for (int Y = 0; Y < 2; ++Y)
            for (int Z = 0; Z < 2; ++Z) t.w[X][Y][Z] = m2 * trace3(Pc[Z], Pa[X], Pb[Y]).real();
    return t;
}

inline cplx op(int X, const RadialDerivs& d, double x)
{
    return X == 0 ? -d.d2 - d.d1 / x : d.d2 - d.d1 / x;
}

cplx contract(const TriWeights& t, const RadialDerivs& a, double xa, const RadialDerivs& b, double xb,
              const RadialDerivs& c, double xc)
{
    const cplx A[2] = {op(0, a, xa), op(1, a, xa)};
    const cplx B[2] = {op(0, b, xb), op(1, b, xb)};
    const cplx C[2] = {op(0, c, xc), op(1, c, xc)};
    cplx s = 0.0;
    for (int X = 0; X < 2; ++X)
        for (int Y = 0; Y < 2; ++Y) s += A[X] * B[Y] * (t.w[X][Y][0] * C[0] + t.w[X][Y][1] * C[1]);
    return s;
}

int sgn(double x) { return (x > 0.0) - (x < 0.0); }

void cone_guard(double ct, double x, const char* what)
{
    if (x > 0.0 && std::abs(ct - x) < 1e-9 * x)
        throw Error(ErrorKind::light_cone, std::string("evaluation on the light-cone surface ") + what);
}

// One half of the bracket of Delta E_A(B, C; t): B carries alpha_B(w) in
// front, C the polarizability inside the bracket; `beta` is |C - A|,
// `gamma` is |B - A|. The mirror is the same call with B, C swapped.
struct HalfSpec {
    const Atom* A;
    const PolarizabilityModel* aB;
    const PolarizabilityModel* aC;
    Vec3 va, vb, vc; // alpha, beta, gamma separations
    TriWeights w;
};

struct Gates {
    bool t1, t2, t3;
};

Gates gates_for(double ct, double a, double b)
{
    return {ct > b, ct > a + b, ct > std::abs(b - a)};
}

// One plane-wave piece of a bracket group: coef times the triple contraction
// of e^{i ka k alpha}/alpha, e^{i kb k beta}/beta, e^{i kg k gamma}/gamma.
// A zero multiplier means the profile does not depend on k and `fa`/`fb`
// holds it. `rate` is the net coefficient of k in the phase.
struct Wave {
    cplx coef;
    int ka, kb, kg;
    RadialDerivs fa, fb;
    double rate;
};

constexpr cplx half_sin{0.0, -0.5}; // 1/(2i)

std::vector<Wave> stationary_waves(double a, double b, double g, const Gates& gt)
{
    std::vector<Wave> w;
    const int s = sgn(b - a);
    for (int sg : {-1, 1}) {
        const cplx sn = double(sg) * half_sin;
        if (gt.t1)
            for (int sa : {-1, 1}) w.push_back({sn, sa, -1, sg, {}, {}, sa * a - b + sg * g});
        if (gt.t2) w.push_back({sn, -1, -1, sg, {}, {}, -a - b + sg * g});
        if (gt.t3 && s != 0) w.push_back({double(s) * sn, s, -s, sg, {}, {}, s * (a - b) + sg * g});
    }
    return w;
}

// Transient pieces, without the common factor -alpha_C(w_A) e^{-i w_A t}
// e^{-i k ct}; ct enters only through the rates.
std::vector<Wave> transient_waves(double a, double b, double g, double kA, double ct, const Gates& gt)
{
    std::vector<Wave> w;
    const int s = sgn(b - a);
    const RadialDerivs eb = radial_exp(-kA, b), ea = radial_exp(-kA, a);
    const RadialDerivs esa = radial_exp(double(s) * kA, a), esb = radial_exp(-double(s) * kA, b);
    for (int sg : {-1, 1}) {
        const cplx sn = double(sg) * half_sin;
        if (gt.t1)
            for (int sa : {-1, 1}) w.push_back({sn, sa, 0, sg, {}, eb, -ct + sa * a + sg * g});
        if (gt.t2) w.push_back({sn, 0, 0, sg, ea, eb, -ct + sg * g});
        if (gt.t3 && s != 0) w.push_back({double(s) * sn, 0, 0, sg, esa, esb, -ct + sg * g});
    }
    return w;
}

// sum over waves with sign(rate) = sign of W(k) * extra(k) * coef * contraction,
// each sign group on its own contour.
QuadResult integrate_waves(const std::vector<Wave>& waves, const TriWeights& tw, double a, double b, double g,
                           const std::function<cplx(cplx)>& weight, const std::vector<double>& poles,
                           const QuadratureSpec& spec)
{
    QuadResult total;
    total.converged = true;
    for (int sign : {1, -1}) {
        std::vector<const Wave*> grp;
        double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
        for (const auto& w : waves) {
            if (w.rate == 0.0) throw Error(ErrorKind::singular, "degenerate triangle: a bracket phase vanishes");
            if ((w.rate > 0.0) != (sign > 0)) continue;
            grp.push_back(&w);
            lo = std::min(lo, std::abs(w.rate));
            hi = std::max(hi, std::abs(w.rate));
        }
        if (grp.empty()) continue;
        auto f = [&](cplx k) {
            cplx acc = 0.0;
            for (const Wave* w : grp) {
                const RadialDerivs pa = w->ka ? radial_exp(double(w->ka) * k, a) : w->fa;
                const RadialDerivs pb = w->kb ? radial_exp(double(w->kb) * k, b) : w->fb;
                acc += w->coef * contract(tw, pa, a, pb, b, radial_exp(double(w->kg) * k, g), g);
            }
            return weight(k) * acc;
        };
        const QuadResult r =
            integrate_indented(f, poles, pole_radius(poles, hi), PoleSide::mean, {lo, hi}, spec, 0.0, sign);
        total.value += r.value;
        total.est_error += r.est_error;
        total.evals += r.evals;
        total.converged = total.converged && r.converged;
    }
    return total;
}

QuadResult half_stationary(const HalfSpec& h, const Gates& gt, const UnitSystem& u, const QuadratureSpec& spec)
{
    const double a = h.va.norm(), b = h.vb.norm(), g = h.vc.norm();
    const double kA = h.A->omega / u.c, c = u.c;
    std::vector<double> poles = wavenumber_poles(*h.aB, u);
    for (double p : wavenumber_poles(*h.aC, u)) poles.push_back(p);
    auto weight = [&, kA, c](cplx k) { return h.aB->at(c * k) * h.aC->at(c * k) / (k + kA); };
    return integrate_waves(stationary_waves(a, b, g, gt), h.w, a, b, g, weight, unique_poles(poles), spec);
}

QuadResult half_transient(const HalfSpec& h, const Gates& gt, double t, const UnitSystem& u,
                          const QuadratureSpec& spec)
{
    const double a = h.va.norm(), b = h.vb.norm(), g = h.vc.norm();
    const double kA = h.A->omega / u.c, c = u.c, ct = u.c * t;
    const cplx lead = -(*h.aC)(h.A->omega) * std::exp(-I * (h.A->omega * t));
    auto weight = [&, kA, c, ct, lead](cplx k) {
        return lead * h.aB->at(c * k) / (k + kA) * std::exp(-I * (k * ct));
    };
    return integrate_waves(transient_waves(a, b, g, kA, ct, gt), h.w, a, b, g, weight,
                           unique_poles(wavenumber_poles(*h.aB, u)), spec);
}

struct PartialKey {
    std::vector<double> data;
    bool operator<(const PartialKey& o) const { return data < o.data; }
};

std::mutex cache_mutex;
std::map<PartialKey, QuadResult> stationary_cache;

PartialKey key_of(const HalfSpec& h, const Gates& gt, const UnitSystem& u, const QuadratureSpec& spec)
{
    PartialKey k;
    for (const Vec3* v : {&h.va, &h.vb, &h.vc}) k.data.insert(k.data.end(), {v->x, v->y, v->z});
    for (const auto& row : h.w.w)
        for (const auto& col : row) k.data.insert(k.data.end(), col, col + 2);
    k.data.push_back(h.A->omega);
    for (const auto* m : {h.aB, h.aC})
        for (const auto& r : m->resonances()) k.data.insert(k.data.end(), {r.omega, r.dipole_sq});
    k.data.insert(k.data.end(), {double(gt.t1), double(gt.t2), double(gt.t3), u.hbar, u.c, spec.rel_tol,
                                 spec.abs_tol, double(spec.ladder_levels), spec.regulator_eta, spec.tail_factor,
                                 double(spec.panel_points)});
    return k;
}

QuadResult cached_stationary(const HalfSpec& h, const Gates& gt, const UnitSystem& u, const QuadratureSpec& spec)
{
    const PartialKey key = key_of(h, gt, u, spec);
    {
        std::lock_guard<std::mutex> lock(cache_mutex);
        auto it = stationary_cache.find(key);
        if (it != stationary_cache.end()) return it->second;
    }
    QuadResult r = half_stationary(h, gt, u, spec);
    std::lock_guard<std::mutex> lock(cache_mutex);
    if (stationary_cache.size() > 4096) stationary_cache.clear();
    stationary_cache.emplace(key, r);
    return r;
}

PolarizabilityModel two_level(const Atom& a, const UnitSystem& u)
{
    return PolarizabilityModel({{a.omega, a.dipole.norm2()}}, u);
}

} // namespace

EnergyResult three_body_dynamic_partial(const Atom& A, const Atom& B, const Atom& C, double t, const UnitSystem& u,
                                        const DynamicEnergyOptions& opt)
{
    u.validate();
    A.validate();
    B.validate();
    C.validate();
    if (t < 0.0) throw Error(ErrorKind::domain, "time must be non-negative");
    const GeometryTriplet geo{A.position, B.position, C.position};
    geo.validate();

    const Vec3 va = C.position - B.position, vb = C.position - A.position, vc = B.position - A.position;
    const double a = va.norm(), b = vb.norm(), g = vc.norm(), ct = u.c * t;
    for (double x : {b, g, a + b, a + g, std::abs(b - a), std::abs(g - a)}) cone_guard(ct, x, "of the bracket gates");

    const PolarizabilityModel pB = two_level(B, u), pC = two_level(C, u);
    const Gates gBC = gates_for(ct, a, b); // main half: beta = |C - A|
    const Gates gCB = gates_for(ct, a, g); // mirror: beta <-> gamma

    EnergyResult out;
    out.channel = Channel::ee;
    out.causality = {{"theta(ct-beta)", gBC.t1},          {"theta(ct-(alpha+beta))", gBC.t2},
                     {"theta(ct-|beta-alpha|)", gBC.t3},  {"theta(ct-gamma)", gCB.t1},
                     {"theta(ct-(alpha+gamma))", gCB.t2}, {"theta(ct-|gamma-alpha|)", gCB.t3}};
    out.regime_hint = regime_for(std::min({a, b, g}), {A.omega / u.c, B.omega / u.c, C.omega / u.c});
    out.route = "real_axis_indented_mean";

    const bool any = gBC.t1 || gBC.t2 || gBC.t3 || gCB.t1 || gCB.t2 || gCB.t3;
    if (!any || A.dipole.norm2() == 0.0 || pB.is_zero() || pC.is_zero()) return out;

    const Vec3 na = va / a, nb = vb / b, nc = vc / g;
    // Main half: F^gamma mu, F^alpha, F^beta mu; the mirror swaps beta and gamma.
    const HalfSpec main{&A, &pB, &pC, va, vb, vc, tri_weights(na, nb, nc, A.dipole, opt.average)};
    const HalfSpec mirror{&A, &pC, &pB, va, vc, vb, tri_weights(na, nc, nb, A.dipole, opt.average)};

    cplx total = 0.0;
    auto add = [&](const QuadResult& r) {
        total += r.value;
        out.est_error += r.est_error;
        out.evals += r.evals;
        out.converged = out.converged && r.converged;
    };
    for (const auto& [h, gt] : {std::pair{&main, gBC}, std::pair{&mirror, gCB}}) {
        if (!(gt.t1 || gt.t2 || gt.t3)) continue;
        add(cached_stationary(*h, gt, u, opt.quad));
        if (opt.include_transient) add(half_transient(*h, gt, t, u, opt.quad));
    }
    const double pref = -1.0 / (2.0 * pi);
    out.value = pref * total.real();
    out.est_error *= std::abs(pref);
    return out;
}

EnergyResult three_body_dynamic_symmetrized(const Atom& A, const Atom& B, const Atom& C, double t,
                                            const UnitSystem& u, const DynamicEnergyOptions& opt)
{
    const EnergyResult eA = three_body_dynamic_partial(A, B, C, t, u, opt);
    const EnergyResult eB = three_body_dynamic_partial(B, A, C, t, u, opt);
    const EnergyResult eC = three_body_dynamic_partial(C, A, B, t, u, opt);
    EnergyResult out;
    out.channel = Channel::ee;
    out.value = 2.0 / 3.0 * (eA.value + eB.value + eC.value);
    out.est_error = 2.0 / 3.0 * (eA.est_error + eB.est_error + eC.est_error);
    out.evals = eA.evals + eB.evals + eC.evals;
    out.converged = eA.converged && eB.converged && eC.converged;
    out.regime_hint = eA.regime_hint;
    out.route = eA.route;
    const char* tag[3] = {"A:", "B:", "C:"};
    const EnergyResult* parts[3] = {&eA, &eB, &eC};
    for (int i = 0; i < 3; ++i)
        for (const auto& [name, on] : parts[i]->causality) out.causality.emplace_back(tag[i] + name, on);
    return out;
}

EnergyResult three_body_resonant(const Atom& A, const Atom& B, const Atom& C, double t, const UnitSystem& u)
{
    u.validate();
    A.validate();
    B.validate();
    C.validate();
    if (t < 0.0) throw Error(ErrorKind::domain, "time must be non-negative");
    const GeometryTriplet geo{A.position, B.position, C.position};
    geo.validate();
    const Vec3 va = C.position - B.position, vb = C.position - A.position, vc = B.position - A.position;
    const double b = vb.norm(), g = vc.norm(), ct = u.c * t;
    cone_guard(ct, b, "beta");
    cone_guard(ct, g, "gamma");

    EnergyResult out;
    out.channel = Channel::ee;
    out.causality = {{"theta(ct-beta)", ct > b}, {"theta(ct-gamma)", ct > g}};
    out.route = "closed_form";
    if (!(ct > b && ct > g) || A.dipole.norm2() == 0.0) return out;

    const double w0 = A.omega, k0 = w0 / u.c;
    const double aB = two_level(B, u)(w0), aC = two_level(C, u)(w0);
    const auto X = apply_F_vec(radial_inverse(g), vc, A.dipole);
    const auto Y = apply_F_vec(radial_exp(-k0, b), vb, A.dipole);
    const Tensor3 Z = apply_F(radial_cos(k0, va.norm()), va);
    const cplx ph = std::exp(-I * (w0 * t));
    double s = 0.0;
    for (int l = 0; l < 3; ++l)
        for (int m = 0; m < 3; ++m) s += 2.0 * (X[l] * Y[m] * ph).real() * Z(l, m).real();
    out.value = -aB * aC * s;
    return out;
}

void SweepSpec::validate() const
{
    if (!(lo > 0.0) || !(hi > lo)) throw Error(ErrorKind::config, "sweep needs 0 < lo < hi");
    const double decades = std::log10(hi / lo);
    if (points < 8 || points < std::ceil(8.0 * decades))
        throw Error(ErrorKind::config, "sweep needs at least 8 points per decade");
}

std::vector<double> SweepSpec::grid() const
{
    validate();
    std::vector<double> out(points);
    for (int i = 0; i < points; ++i) out[i] = lo * std::pow(hi / lo, double(i) / (points - 1));
    return out;
}

ExponentFit scaling_exponent_fit(const std::vector<double>& R, const std::vector<double>& E)
{
    if (R.size() != E.size() || R.size() < 8) throw Error(ErrorKind::config, "exponent fit needs >= 8 samples");
    const int s0 = sgn(E.front());
    for (std::size_t i = 0; i < R.size(); ++i) {
        if (!(R[i] > 0.0)) throw Error(ErrorKind::domain, "exponent fit needs positive abscissae");
        if (sgn(E[i]) != s0 || s0 == 0) throw Error(ErrorKind::domain, "sign change inside the fit window");
    }
    const double n = double(R.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < R.size(); ++i) {
        const double x = std::log(R[i]), y = std::log(std::abs(E[i]));
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    const double den = n * sxx - sx * sx;
    const double slope = (n * sxy - sx * sy) / den;
    const double icpt = (sy - slope * sx) / n;
    double ss = 0.0;
    for (std::size_t i = 0; i < R.size(); ++i) {
        const double r = std::log(std::abs(E[i])) - icpt - slope * std::log(R[i]);
        ss += r * r;
    }
    const double se = std::sqrt(ss / (n - 2.0) * n / den);
    return {slope, se, s0 * std::exp(icpt)};
}

ExponentFit scaling_exponent_fit(const SweepSpec& sweep, const std::vector<double>& E)
{
    return scaling_exponent_fit(sweep.grid(), E);
}

} // namespace vcorr
