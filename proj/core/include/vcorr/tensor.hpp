#pragma once

#include <array>
#include <complex>

#include "vcorr/vec3.hpp"

namespace vcorr {

using cplx = std::complex<double>;

// 3x3 complex tensor, row-major.
struct Tensor3 {
    std::array<cplx, 9> a{};

    cplx& operator()(int i, int j) { return a[3 * i + j]; }
    const cplx& operator()(int i, int j) const { return a[3 * i + j]; }

    static Tensor3 zero() { return {}; }
    static Tensor3 identity();
    static Tensor3 diag(cplx d0, cplx d1, cplx d2);
    // A * delta_ij + B * n_i n_j
    static Tensor3 radial(cplx A, cplx B, const Vec3& n);
    // u_i v_j
    static Tensor3 outer(const Vec3& u, const Vec3& v);
    static Tensor3 outer(const std::array<cplx, 3>& u, const std::array<cplx, 3>& v);

    Tensor3& operator+=(const Tensor3& o);
    Tensor3& operator-=(const Tensor3& o);
    Tensor3& operator*=(cplx s);
    Tensor3 operator+(const Tensor3& o) const { Tensor3 r = *this; return r += o; }
    Tensor3 operator-(const Tensor3& o) const { Tensor3 r = *this; return r -= o; }
    Tensor3 operator*(cplx s) const { Tensor3 r = *this; return r *= s; }
    Tensor3 operator-() const { return *this * cplx(-1.0); }

    Tensor3 transpose() const;
    Tensor3 conj() const;
    Tensor3 matmul(const Tensor3& o) const;
    cplx trace() const { return a[0] + a[4] + a[8]; }
    std::array<cplx, 3> apply(const std::array<cplx, 3>& v) const;
    std::array<cplx, 3> apply(const Vec3& v) const;

    double max_abs() const;
    double max_abs_real() const;
    double max_abs_imag() const;
};

inline Tensor3 operator*(cplx s, const Tensor3& t) { return t * s; }

// sum_ij x_ij y_ij
cplx contract(const Tensor3& x, const Tensor3& y);
// tr(A B C)
cplx trace3(const Tensor3& A, const Tensor3& B, const Tensor3& C);
double max_abs_diff(const Tensor3& x, const Tensor3& y);

} // namespace vcorr
