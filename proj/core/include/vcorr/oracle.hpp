#pragma once

#include <optional>
#include <vector>

#include "vcorr/static_corr.hpp"

namespace vcorr {

// Periodic box of edge L; k = 2 pi n / L with n in Z^3 \ 0, |n_i| <= n_max
// (cube) or |n| <= n_max (sphere).
struct ModeGrid {
    double L = 40.0;
    int n_max = 48;
    double eta = 0.5;
    bool spherical = false;

    void validate() const;
    double volume() const { return L * L * L; }
};

// Two real unit vectors orthogonal to khat and to each other.
std::pair<Vec3, Vec3> polarization_basis(const Vec3& khat);

// Number of worker threads (VC_THREADS caps it).
int oracle_threads();

struct ScalarSum {
    double value;
    double imag_residue;
};

// (hbar c^2 / 2V) sum_k e^{i k.R} e^{-eta k} / omega_k
ScalarSum mode_sum_scalar_corr(const ModeGrid& grid, const Vec3& r, const Vec3& rprime,
                               const UnitSystem& u);

// EE/BB: (2 pi hbar / V) sum omega_k (delta - kk) e^{i k.R} e^{-eta k};
// EB: (2 pi hbar / V) sum omega_k eps_ijl k_l e^{i k.R} e^{-eta k}.
Tensor3 mode_sum_em_corr(const ModeGrid& grid, FieldPair pair, const Vec3& r, const Vec3& rprime,
                         const UnitSystem& u);

enum class ExtrapolationVariable { eta, eta_squared };

struct LadderResult {
    double value;
    std::vector<double> etas;
    std::vector<double> samples;
};

// Bulirsch-Stoer rational extrapolation of samples to eta = 0.
double rational_extrapolate(const std::vector<double>& x, const std::vector<double>& y);

LadderResult mode_sum_scalar_extrapolated(double L, int n_max, const std::vector<double>& etas,
                                          const Vec3& r, const Vec3& rprime, const UnitSystem& u,
                                          bool spherical = false);

struct TensorLadderResult {
    Tensor3 value;
    std::vector<double> etas;
    std::vector<Tensor3> samples;
};

TensorLadderResult mode_sum_em_extrapolated(double L, int n_max, const std::vector<double>& etas,
                                            FieldPair pair, const Vec3& r, const Vec3& rprime,
                                            const UnitSystem& u, bool spherical = false);

// Literal truncated double-mode sums. With no `t` the static dressed
// state is used (ground or excited by atom.state); with `t` the
// dynamical two-mode correlation of an initially bare ground atom.
// parts: bare, dressing
CorrTensor mode_pair_dressed_corr(const ModeGrid& grid, const Atom& atom, const Vec3& r,
                                  const Vec3& rprime, const UnitSystem& u,
                                  std::optional<double> t = std::nullopt);

// Dressing part only, least-squares polynomial in eta evaluated at 0. Each
// sample uses at least n_max and enough modes that eta k_max >= eta_kmax,
// since below that the cutoff and not the regulator sets the sum.
TensorLadderResult mode_pair_dressed_extrapolated(double L, int n_max,
                                                  const std::vector<double>& etas,
                                                  const Atom& atom, const Vec3& r,
                                                  const Vec3& rprime, const UnitSystem& u,
                                                  bool spherical = true, int poly_degree = 2,
                                                  double eta_kmax = 10.0);

} // namespace vcorr
