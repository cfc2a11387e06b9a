#pragma once

#include <functional>

#include "vcorr/static_corr.hpp"

namespace vcorr {

// (e^{ixt} - 1)/(ix), equal to t at x = 0.
cplx window_F(double x, double t);

// theta(0) = 0 throughout.
CausalityFlags causality_flags(const Vec3& atom_pos, const Vec3& r, const Vec3& rprime, double t,
                               const UnitSystem& u = UnitSystem::natural());

// Relative distance to a light-cone surface below which evaluation is
// refused.
inline constexpr double light_cone_guard = 1e-9;

struct DynamicOptions {
    QuadratureSpec quad{};
    bool include_transient = true; // false gives the t -> infinity limit
};

// parts: zeroth, first_first, zeroth_second
CorrTensor dynamic_ground_corr(const Atom& atom, const Vec3& r, const Vec3& rprime, double t,
                               const UnitSystem& u, const DynamicOptions& opt = {});

// parts: zeroth, nonresonant, resonant
CorrTensor dynamic_excited_corr(const Atom& atom, const Vec3& r, const Vec3& rprime, double t,
                                const UnitSystem& u, const DynamicOptions& opt = {});

// Mean of f over [t - T/2, t + T/2] sampled at `points` equally spaced
// instants (exact for harmonics of 2 pi / T below `points`).
Tensor3 window_average(const std::function<Tensor3(double)>& f, double t, double period,
                       int points = 16);
double window_average(const std::function<double(double)>& f, double t, double period,
                      int points = 16);

} // namespace vcorr
