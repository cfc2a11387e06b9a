#pragma once

#include <string>
#include <utility>
#include <vector>

#include "vcorr/atom.hpp"
#include "vcorr/quadrature.hpp"
#include "vcorr/tensor.hpp"
#include "vcorr/tensorops.hpp"
#include "vcorr/units.hpp"

namespace vcorr {

enum class FieldPair { EE, BB, EB, scalar };

FieldPair parse_field_pair(const std::string& s);
const char* to_string(FieldPair p);

struct CausalityFlags {
    bool in_cone_r = false;
    bool in_cone_rprime = false;
    bool pair_connected = false;
};

struct CorrTensor {
    Tensor3 entries;
    FieldPair pair = FieldPair::EE;
    std::vector<std::pair<std::string, Tensor3>> parts;
    CausalityFlags flags;
    bool has_flags = false;

    const Tensor3& part(const std::string& name) const;
    bool has_part(const std::string& name) const;
};

// hbar c / (4 pi |r - r'|^2)
double vacuum_scalar_corr(const Vec3& r, const Vec3& rprime, const UnitSystem& u);

// EE and BB: -(4 hbar c / pi)(delta - 2 RR)/R^4. EB: regulated angular
// form, see docs.
CorrTensor vacuum_em_corr(FieldPair pair, const Vec3& r, const Vec3& rprime, const UnitSystem& u);

// <E_i(r) B_j(r')> + <B_j(r') E_i(r)>
Tensor3 vacuum_eb_symmetrized(const Vec3& r, const Vec3& rprime, const UnitSystem& u);

struct DressedCorrRequest {
    Atom atom;
    Vec3 r;
    Vec3 rprime;
    bool include_bare = true;

    void validate() const;
};

// parts: bare (when requested), dressing
CorrTensor dressed_ground_corr(const DressedCorrRequest& req, const UnitSystem& u);

enum class ExcitedPvRoute { numeric, closed_form };

// parts: bare (when requested), pv_part, resonant_part
CorrTensor dressed_excited_corr(const DressedCorrRequest& req, const UnitSystem& u,
                                ExcitedPvRoute route = ExcitedPvRoute::numeric);

// Pre-F scalar kernels, in units of 1/length^2 times the stated factor.
// (2/pi) f(k(R+R'))/(R R')
double dressed_ground_profile(double k, double R, double Rp);
// (2/pi) PV int dk sin(k (R+R'))/(k - kA) / (R R')
double dressed_excited_pv_profile(double kA, double R, double Rp);
// (2/pi) 2 pi sin(kA R) sin(kA R') / (R R')
double dressed_excited_resonant_profile(double kA, double R, double Rp);

// The same ground kernel computed from the unreduced double wavenumber
// integral (1/k'-k read as a principal value), as an independent route.
QuadResult dressed_ground_profile_double_integral(double kA, double R, double Rp,
                                                  const QuadratureSpec& spec = {});
// Its R, R' derivatives (a, b <= 2), taken under the outer integral.
BiradialDerivs dressed_ground_biradial_double_integral(double kA, double R, double Rp,
                                                       const QuadratureSpec& spec = {},
                                                       QuadResult* report = nullptr);
// Ground dressing tensor through the double-integral route; parts as
// dressed_ground_corr.
CorrTensor dressed_ground_corr_double_integral(const DressedCorrRequest& req, const UnitSystem& u,
                                               const QuadratureSpec& spec = {},
                                               QuadResult* report = nullptr);

} // namespace vcorr
