#pragma once
// Reference implementations used only by the tests. None of these call
// the library code they are meant to check.
#include <functional>
#include <vector>

#include "vcorr/tensor.hpp"
#include "vcorr/tensorops.hpp"

namespace oracle {

using vcorr::cplx;
using vcorr::Tensor3;
using vcorr::Vec3;

// (-delta nabla^2 + nabla nabla) h at x, fourth-order central differences.
Tensor3 fd_F(const std::function<cplx(const Vec3&)>& h, const Vec3& x, double step);

// Mixed partials d^a/dR^a d^b/dR'^b H, a, b <= 2, on a 5x5 stencil.
vcorr::BiradialDerivs fd_biradial(const std::function<double(double, double)>& H, double R, double Rp,
                                  double step);

// Si and Ci from GSL.
double Si(double z);
double Ci(double z);

// PV int_0^inf sin(w)/(w - z) dw = cos z (pi/2 + Si z) - sin z Ci z.
double pv_sine_closed(double z);

// Simple least-squares slope of log|y| against log x.
double loglog_slope(const std::vector<double>& x, const std::vector<double>& y);

// Ground-state three-body energy in natural units for two-level atoms
// (omega_X, |mu_X|^2), by GSL quadrature over u with F applied by finite
// differences of e^{-u r}/r.
struct TwoLevel {
    Vec3 pos;
    double omega;
    double mu2;
};
double three_body_static_fd(const TwoLevel& A, const TwoLevel& B, const TwoLevel& C);

// Semi-infinite integral of a smooth decaying function (GSL qagiu).
double integrate_semi_infinite(const std::function<double(double)>& g, double epsrel = 1e-11);

} // namespace oracle
