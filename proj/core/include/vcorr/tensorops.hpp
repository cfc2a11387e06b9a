#pragma once

#include <functional>
#include <string>

#include "vcorr/tensor.hpp"

namespace vcorr {

// h, h', h'' of a radial function at one distance.
struct RadialDerivs {
    cplx h, d1, d2;
};

struct RadialProfile {
    std::function<cplx(double)> value;
    std::function<cplx(double)> d1;
    std::function<cplx(double)> d2;

    RadialDerivs at(double R) const { return {value(R), d1(R), d2(R)}; }
};

// e^{i k R}/R and friends; k may be complex (continued frequencies).
RadialDerivs radial_exp(cplx k, double R);
RadialDerivs radial_sin(cplx k, double R);
RadialDerivs radial_cos(cplx k, double R);
RadialDerivs radial_inverse(double R);

RadialProfile profile_inverse();
RadialProfile profile_constant(cplx c);
RadialProfile profile_exp(cplx k);
RadialProfile profile_sin(cplx k);
RadialProfile profile_cos(cplx k);
RadialProfile profile_exp_decay(double u); // e^{-uR}/R

// F_pq = (-delta_pq nabla^2 + d_p d_q) h(R), by radial decomposition:
// delta (-h'' - h'/R) + RR (h'' - h'/R).
Tensor3 apply_F(const RadialDerivs& d, const Vec3& Rvec);
Tensor3 apply_F(const RadialProfile& h, const Vec3& Rvec);

// m_q F^R_{qi} h as a vector (index i).
std::array<cplx, 3> apply_F_vec(const RadialDerivs& d, const Vec3& Rvec, const Vec3& m);

// Mixed partials d[a][b] = d^a/dR^a d^b/dR'^b H(R, R'), a, b <= 2.
struct BiradialDerivs {
    cplx d[3][3]{};
};

using BiradialProfile = std::function<BiradialDerivs(double R, double Rp)>;

// T_ij = m1_q F^R_{qi} F^{R'}_{pj} m2_p H(R, R').
Tensor3 apply_FF(const BiradialDerivs& d, const Vec3& Rvec, const Vec3& Rpvec,
                 const Vec3& m1, const Vec3& m2);

// Biradial derivatives of phi(R + R') / (R R') from phi^{(n)}, n = 0..4,
// evaluated at S = R + R'.
BiradialDerivs biradial_sum_over_product(const std::array<cplx, 5>& phi, double R, double Rp);
// Separable u(R) v(R').
BiradialDerivs biradial_product(const RadialDerivs& u, const RadialDerivs& v);

enum class Channel { ee, mm, em };

Channel parse_channel(const std::string& s);
const char* to_string(Channel c);

// T_ij = eps_ijl n_l
Tensor3 levi_civita(const Vec3& n);

Tensor3 potential_tensor(Channel ch, double k, const Vec3& Rvec);
Tensor3 potential_tensor_symmetrized(Channel ch, double k, double kprime, const Vec3& Rvec);
inline Tensor3 potential_tensor_symmetrized(double k, double kprime, const Vec3& Rvec)
{
    return potential_tensor_symmetrized(Channel::ee, k, kprime, Rvec);
}

} // namespace vcorr
