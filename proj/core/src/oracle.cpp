#include "vcorr/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <numbers>
#include <thread>

#include "vcorr/dynamic_corr.hpp"
#include "vcorr/error.hpp"
#include "vcorr/tensorops.hpp"

namespace vcorr {

namespace {

constexpr double pi = std::numbers::pi;

// Runs fn(nx, acc) for every slab nx in [-n_max, n_max] and returns the
// per-slab accumulators in slab order, so reductions are independent of
// the thread count.
template <class Acc, class Fn>
std::vector<Acc> per_slab(int n_max, const Acc& init, Fn fn)
{
    const int slabs = 2 * n_max + 1;
    std::vector<Acc> out(slabs, init);
    const int nt = std::min(oracle_threads(), slabs);
    auto work = [&](int id) {
        for (int s = id; s < slabs; s += nt) fn(s - n_max, out[s]);
    };
    if (nt <= 1) {
        work(0);
        return out;
    }
    std::vector<std::thread> pool;
    for (int id = 0; id < nt; ++id) pool.emplace_back(work, id);
    for (auto& th : pool) th.join();
    return out;
}

void check_separation(const ModeGrid& g, const Vec3& d)
{
    if (d.norm() >= 0.25 * g.L)
        throw Error(ErrorKind::aliasing, "separation comparable to the mode box; enlarge L");
}

inline bool in_cutoff(int nx, int ny, int nz, int n_max, bool spherical)
{
    if (nx == 0 && ny == 0 && nz == 0) return false;
    return !spherical || nx * nx + ny * ny + nz * nz <= n_max * n_max;
}

struct EtaSums {
    std::vector<double> re, im;
};

// sum over modes of w(k) e^{i k.R} e^{-eta k}/k^p for every eta at once.
EtaSums scalar_pass(double L, int n_max, bool spherical, const std::vector<double>& etas, const Vec3& R)
{
    const double dk = 2.0 * pi / L;
    const EtaSums zero{std::vector<double>(etas.size(), 0.0), std::vector<double>(etas.size(), 0.0)};
    auto slabs = per_slab(n_max, zero, [&](int nx, EtaSums& acc) {
        for (int ny = -n_max; ny <= n_max; ++ny)
            for (int nz = -n_max; nz <= n_max; ++nz) {
                if (!in_cutoff(nx, ny, nz, n_max, spherical)) continue;
                const Vec3 k{dk * nx, dk * ny, dk * nz};
                const double kn = k.norm(), ph = dot(k, R);
                const double c = std::cos(ph) / kn, s = std::sin(ph) / kn;
                for (std::size_t e = 0; e < etas.size(); ++e) {
                    const double w = std::exp(-etas[e] * kn);
                    acc.re[e] += c * w;
                    acc.im[e] += s * w;
                }
            }
    });
    EtaSums tot = zero;
    for (const auto& s : slabs)
        for (std::size_t e = 0; e < etas.size(); ++e) {
            tot.re[e] += s.re[e];
            tot.im[e] += s.im[e];
        }
    return tot;
}

std::vector<Tensor3> em_pass(double L, int n_max, bool spherical, const std::vector<double>& etas, FieldPair pair,
                             const Vec3& R)
{
    const double dk = 2.0 * pi / L;
    const std::vector<Tensor3> zero(etas.size());
    auto slabs = per_slab(n_max, zero, [&](int nx, std::vector<Tensor3>& acc) {
        for (int ny = -n_max; ny <= n_max; ++ny)
            for (int nz = -n_max; nz <= n_max; ++nz) {
                if (!in_cutoff(nx, ny, nz, n_max, spherical)) continue;
                const Vec3 k{dk * nx, dk * ny, dk * nz};
                const double kn = k.norm(), ph = dot(k, R);
                const Vec3 n = k / kn;
                Tensor3 w;
                if (pair == FieldPair::EB)
                    w = levi_civita(n) * cplx(0.0, kn * std::sin(ph));
                else
                    w = (Tensor3::identity() - Tensor3::outer(n, n)) * cplx(kn * std::cos(ph));
                for (std::size_t e = 0; e < etas.size(); ++e) acc[e] += w * cplx(std::exp(-etas[e] * kn));
            }
    });
    std::vector<Tensor3> tot(etas.size());
    for (const auto& s : slabs)
        for (std::size_t e = 0; e < etas.size(); ++e) tot[e] += s[e];
    return tot;
}

// Shell sums S(s) = sum_{|n|^2 = s} e^{-eta k} (delta - kk) mu cos(k.R); the
// lattice is inversion symmetric so the sine part vanishes identically.
struct Shells {
    std::vector<double> k;
    std::vector<Vec3> S, T;
};

Shells shell_sums(const ModeGrid& g, const Vec3& mu, const Vec3& R, const Vec3& Rp)
{
    const double dk = 2.0 * pi / g.L;
    const int n2max = 3 * g.n_max * g.n_max;
    const int slabs = 2 * g.n_max + 1;
    // A fixed number of slab chunks keeps memory bounded and the reduction
    // order independent of the thread count.
    constexpr int chunks = 8;
    struct Acc {
        std::vector<Vec3> S, T;
        std::vector<char> used;
    };
    std::vector<Acc> acc(chunks, Acc{std::vector<Vec3>(n2max + 1), std::vector<Vec3>(n2max + 1),
                                     std::vector<char>(n2max + 1, 0)});
    auto work = [&](int id, int stride) {
        for (int c = id; c < chunks; c += stride) {
            Acc& a = acc[c];
            for (int s = c * slabs / chunks; s < (c + 1) * slabs / chunks; ++s) {
                const int nx = s - g.n_max;
                for (int ny = -g.n_max; ny <= g.n_max; ++ny)
                    for (int nz = -g.n_max; nz <= g.n_max; ++nz) {
                        if (!in_cutoff(nx, ny, nz, g.n_max, g.spherical)) continue;
                        const int n2 = nx * nx + ny * ny + nz * nz;
                        const Vec3 k{dk * nx, dk * ny, dk * nz};
                        const double kn = k.norm();
                        const Vec3 n = k / kn;
                        const Vec3 Pmu = (mu - n * dot(n, mu)) * std::exp(-g.eta * kn);
                        a.S[n2] = a.S[n2] + Pmu * std::cos(dot(k, R));
                        a.T[n2] = a.T[n2] + Pmu * std::cos(dot(k, Rp));
                        a.used[n2] = 1;
                    }
            }
        }
    };
    const int nt = std::min(oracle_threads(), chunks);
    if (nt <= 1) {
        work(0, 1);
    } else {
        std::vector<std::thread> pool;
        for (int id = 0; id < nt; ++id) pool.emplace_back(work, id, nt);
        for (auto& th : pool) th.join();
    }
    Shells out;
    for (int s = 1; s <= n2max; ++s) {
        Vec3 S{}, T{};
        bool used = false;
        for (const auto& a : acc) {
            S = S + a.S[s];
            T = T + a.T[s];
            used = used || a.used[s];
        }
        if (!used) continue;
        out.k.push_back(dk * std::sqrt(double(s)));
        out.S.push_back(S);
        out.T.push_back(T);
    }
    return out;
}

Tensor3 outer_sum(const Shells& sh, const std::function<double(std::size_t, std::size_t)>& w)
{
    const std::size_t n = sh.k.size();
    Tensor3 out;
    for (std::size_t a = 0; a < n; ++a) {
        Vec3 U{};
        for (std::size_t b = 0; b < n; ++b) U = U + sh.T[b] * w(a, b);
        out += Tensor3::outer(sh.S[a], U);
    }
    return out;
}

} // namespace

void ModeGrid::validate() const
{
    if (!(L > 0.0) || !std::isfinite(L)) throw Error(ErrorKind::config, "box edge must be positive");
    if (n_max < 1) throw Error(ErrorKind::config, "n_max must be at least 1");
    if (!(eta > 0.0)) throw Error(ErrorKind::config, "regulator eta must be positive");
}

std::pair<Vec3, Vec3> polarization_basis(const Vec3& khat)
{
    // Fallback axis: the coordinate axis least aligned with khat, lowest
    // index on ties.
    const double ax[3] = {std::abs(khat.x), std::abs(khat.y), std::abs(khat.z)};
    int i = 0;
    for (int j = 1; j < 3; ++j)
        if (ax[j] < ax[i]) i = j;
    const Vec3 e{double(i == 0), double(i == 1), double(i == 2)};
    Vec3 e1 = cross(e, khat);
    e1 = e1 / e1.norm();
    return {e1, cross(khat, e1)};
}

int oracle_threads()
{
    int n = int(std::thread::hardware_concurrency());
    if (n < 1) n = 1;
    if (const char* env = std::getenv("VC_THREADS")) {
        const int cap = std::atoi(env);
        if (cap >= 1) n = std::min(n, cap);
    }
    return n;
}

ScalarSum mode_sum_scalar_corr(const ModeGrid& grid, const Vec3& r, const Vec3& rprime, const UnitSystem& u)
{
    grid.validate();
    u.validate();
    const Vec3 R = r - rprime;
    check_separation(grid, R);
    const EtaSums s = scalar_pass(grid.L, grid.n_max, grid.spherical, {grid.eta}, R);
    const double pref = u.hbar * u.c / (2.0 * grid.volume());
    return {pref * s.re[0], pref * s.im[0]};
}

Tensor3 mode_sum_em_corr(const ModeGrid& grid, FieldPair pair, const Vec3& r, const Vec3& rprime,
                         const UnitSystem& u)
{
    grid.validate();
    u.validate();
    if (pair == FieldPair::scalar) throw Error(ErrorKind::config, "use mode_sum_scalar_corr for the scalar field");
    const Vec3 R = r - rprime;
    check_separation(grid, R);
    return em_pass(grid.L, grid.n_max, grid.spherical, {grid.eta}, pair, R)[0] *
           cplx(2.0 * pi * u.hbar * u.c / grid.volume());
}

double rational_extrapolate(const std::vector<double>& x, const std::vector<double>& y)
{
    // Bulirsch-Stoer diagonal rational interpolation evaluated at 0.
    const std::size_t n = x.size();
    if (n == 0 || y.size() != n) throw Error(ErrorKind::config, "extrapolation needs matching samples");
    std::vector<double> c(y), d(y);
    std::size_t ns = 0;
    for (std::size_t i = 1; i < n; ++i)
        if (std::abs(x[i]) < std::abs(x[ns])) ns = i;
    double val = y[ns];
    if (x[ns] == 0.0) return val;
    std::size_t idx = ns;
    for (std::size_t m = 1; m < n; ++m) {
        for (std::size_t i = 0; i < n - m; ++i) {
            const double w = c[i + 1] - d[i];
            const double h = x[i + m];
            const double t = x[i] * d[i] / h;
            double dd = t - c[i + 1];
            if (dd == 0.0) throw Error(ErrorKind::convergence, "rational extrapolation hit a pole");
            dd = w / dd;
            d[i] = c[i + 1] * dd;
            c[i] = t * dd;
        }
        double corr;
        if (2 * idx < n - m) {
            corr = c[idx];
        } else {
            corr = d[idx - 1];
            --idx;
        }
        val += corr;
    }
    return val;
}

LadderResult mode_sum_scalar_extrapolated(double L, int n_max, const std::vector<double>& etas, const Vec3& r,
                                          const Vec3& rprime, const UnitSystem& u, bool spherical)
{
    ModeGrid g{L, n_max, etas.empty() ? 0.0 : etas.front(), spherical};
    g.validate();
    u.validate();
    const Vec3 R = r - rprime;
    check_separation(g, R);
    const EtaSums s = scalar_pass(L, n_max, spherical, etas, R);
    const double pref = u.hbar * u.c / (2.0 * g.volume());
    LadderResult out{0.0, etas, {}};
    std::vector<double> x;
    for (std::size_t e = 0; e < etas.size(); ++e) {
        out.samples.push_back(pref * s.re[e]);
        x.push_back(etas[e] * etas[e]);
    }
    out.value = rational_extrapolate(x, out.samples);
    return out;
}

TensorLadderResult mode_sum_em_extrapolated(double L, int n_max, const std::vector<double>& etas, FieldPair pair,
                                            const Vec3& r, const Vec3& rprime, const UnitSystem& u,
                                            bool spherical)
{
    ModeGrid g{L, n_max, etas.empty() ? 0.0 : etas.front(), spherical};
    g.validate();
    u.validate();
    const Vec3 R = r - rprime;
    check_separation(g, R);
    TensorLadderResult out{{}, etas, em_pass(L, n_max, spherical, etas, pair, R)};
    const cplx pref = 2.0 * pi * u.hbar * u.c / g.volume();
    std::vector<double> x;
    for (auto& t : out.samples) t *= pref;
    for (double e : etas) x.push_back(e * e);
    double scale = 0.0;
    for (const auto& t : out.samples) scale = std::max(scale, t.max_abs());
    for (int i = 0; i < 9; ++i) {
        std::vector<double> re, im;
        for (const auto& t : out.samples) {
            re.push_back(t.a[i].real());
            im.push_back(t.a[i].imag());
        }
        // Components that are zero by symmetry come out as rounding noise;
        // extrapolating noise is meaningless (and can hit a pole).
        const auto negligible = [scale](const std::vector<double>& v) {
            return std::all_of(v.begin(), v.end(), [scale](double y) { return std::abs(y) <= 1e-12 * scale; });
        };
        const bool re_zero = negligible(re), im_zero = negligible(im);
        out.value.a[i] = cplx(re_zero ? 0.0 : rational_extrapolate(x, re), im_zero ? 0.0 : rational_extrapolate(x, im));
    }
    return out;
}

CorrTensor mode_pair_dressed_corr(const ModeGrid& grid, const Atom& atom, const Vec3& r, const Vec3& rprime,
                                  const UnitSystem& u, std::optional<double> t)
{
    grid.validate();
    u.validate();
    atom.validate();
    const Vec3 R = r - atom.position, Rp = rprime - atom.position;
    check_separation(grid, r - rprime);
    check_separation(grid, R);
    check_separation(grid, Rp);
    const double kmax = 2.0 * pi / grid.L * grid.n_max;
    if (grid.eta * kmax < 3.0)
        throw Error(ErrorKind::convergence, "mode cutoff too small for the regulator; raise n_max or eta");

    CorrTensor out;
    out.pair = FieldPair::EE;
    const Tensor3 bare = mode_sum_em_corr(grid, FieldPair::EE, r, rprime, u);
    out.parts.emplace_back("bare", bare);

    const double V = grid.volume(), c = u.c;
    Tensor3 dress;
    if (!t) {
        const double pref = 4.0 * pi * pi / (V * V);
        const bool excited = atom.state == StateTag::excited;
        const auto trs = excited ? std::vector<Transition>{{atom.omega, atom.dipole}} : atom.transitions();
        for (const auto& tr : trs) {
            if (tr.dipole.norm2() == 0.0) continue;
            const Shells sh = shell_sums(grid, tr.dipole, R, Rp);
            const double wA = tr.omega;
            for (double k : sh.k)
                if (excited && std::abs(c * k - wA) < 1e-12 * wA)
                    throw Error(ErrorKind::pole, "a box mode sits on the atomic resonance");
            // The product term of the bracket factorizes; only the 1/(w + w')
            // term needs the shell double sum.
            auto lone = [&](double w) { return excited ? w / (wA - w) : w / (w + wA); };
            Vec3 Ssum{}, Tsum{};
            for (std::size_t a = 0; a < sh.k.size(); ++a) {
                Ssum = Ssum + sh.S[a] * lone(c * sh.k[a]);
                Tsum = Tsum + sh.T[a] * lone(c * sh.k[a]);
            }
            dress += Tensor3::outer(Ssum, Tsum) * cplx(2.0 * pref);
            auto w = [&](std::size_t a, std::size_t b) {
                const double wa = c * sh.k[a], wb = c * sh.k[b];
                const double g = excited ? -(1.0 / (wa + wb)) * (1.0 / (wA - wa) + 1.0 / (wA - wb))
                                         : (1.0 / (wa + wb)) * (1.0 / (wa + wA) + 1.0 / (wb + wA));
                return pref * wa * wb * 2.0 * g; // "+ c.c." of a real bracket
            };
            dress += outer_sum(sh, w);
        }
    } else {
        const double tt = *t;
        if (tt < 0.0) throw Error(ErrorKind::domain, "time must be non-negative");
        if (atom.dipole.norm2() != 0.0) {
            const Shells sh = shell_sums(grid, atom.dipole, R, Rp);
            const double wA = atom.omega;
            const cplx I{0.0, 1.0};
            auto h = [&](double wa, double wb) {
                const cplx lead = std::exp(-I * (wa * tt)) / (I * (wA + wa));
                const cplx p = (window_F(wa + wb, tt) - std::conj(window_F(wA - wb, tt))) * std::exp(-I * (wb * tt));
                const cplx m = (window_F(wa - wb, tt) - std::conj(window_F(wA + wb, tt))) * std::exp(I * (wb * tt));
                return lead * (p - m);
            };
            const double pref = -8.0 * pi * pi / (V * V);
            auto w = [&](std::size_t a, std::size_t b) {
                const double wa = c * sh.k[a], wb = c * sh.k[b];
                return pref * wa * wb * (h(wa, wb) + h(wb, wa)).real();
            };
            dress = outer_sum(sh, w);
        }
    }
    out.parts.emplace_back("dressing", dress);
    out.entries = bare + dress;
    return out;
}

TensorLadderResult mode_pair_dressed_extrapolated(double L, int n_max, const std::vector<double>& etas,
                                                  const Atom& atom, const Vec3& r, const Vec3& rprime,
                                                  const UnitSystem& u, bool spherical, int poly_degree,
                                                  double eta_kmax)
{
    if (etas.size() < std::size_t(poly_degree + 1))
        throw Error(ErrorKind::config, "too few regulator values for the fit degree");
    TensorLadderResult out{{}, etas, {}};
    for (double e : etas) {
        const int n = std::max(n_max, int(std::ceil(eta_kmax * L / (2.0 * pi * e))));
        out.samples.push_back(mode_pair_dressed_corr(ModeGrid{L, n, e, spherical}, atom, r, rprime, u).part("dressing"));
    }

    // Least-squares polynomial in eta, evaluated at eta = 0.
    const int m = poly_degree + 1;
    const std::size_t n = etas.size();
    std::vector<double> A(m * m, 0.0);
    for (std::size_t s = 0; s < n; ++s)
        for (int i = 0; i < m; ++i)
            for (int j = 0; j < m; ++j) A[i * m + j] += std::pow(etas[s], i + j);
    for (int comp = 0; comp < 9; ++comp) {
        std::vector<double> M(A), b(m, 0.0);
        for (std::size_t s = 0; s < n; ++s)
            for (int i = 0; i < m; ++i) b[i] += std::pow(etas[s], i) * out.samples[s].a[comp].real();
        for (int col = 0; col < m; ++col) {
            int piv = col;
            for (int row = col + 1; row < m; ++row)
                if (std::abs(M[row * m + col]) > std::abs(M[piv * m + col])) piv = row;
            for (int j = 0; j < m; ++j) std::swap(M[col * m + j], M[piv * m + j]);
            std::swap(b[col], b[piv]);
            for (int row = col + 1; row < m; ++row) {
                const double f = M[row * m + col] / M[col * m + col];
                for (int j = col; j < m; ++j) M[row * m + j] -= f * M[col * m + j];
                b[row] -= f * b[col];
            }
        }
        std::vector<double> x(m);
        for (int i = m - 1; i >= 0; --i) {
            double s = b[i];
            for (int j = i + 1; j < m; ++j) s -= M[i * m + j] * x[j];
            x[i] = s / M[i * m + i];
        }
        out.value.a[comp] = x[0];
    }
    return out;
}

} // namespace vcorr
