#include "vcorr/tensor.hpp"

#include <algorithm>
#include <cmath>

namespace vcorr {

Tensor3 Tensor3::identity() { return diag(1.0, 1.0, 1.0); }

Tensor3 Tensor3::diag(cplx d0, cplx d1, cplx d2)
{
    Tensor3 t;
    t(0, 0) = d0;
    t(1, 1) = d1;
    t(2, 2) = d2;
    return t;
}

Tensor3 Tensor3::radial(cplx A, cplx B, const Vec3& n)
{
    Tensor3 t;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) t(i, j) = B * (n[i] * n[j]) + (i == j ? A : cplx(0.0));
    return t;
}

Tensor3 Tensor3::outer(const Vec3& u, const Vec3& v)
{
    Tensor3 t;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) t(i, j) = u[i] * v[j];
    return t;
}

Tensor3 Tensor3::outer(const std::array<cplx, 3>& u, const std::array<cplx, 3>& v)
{
    Tensor3 t;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) t(i, j) = u[i] * v[j];
    return t;
}

Tensor3& Tensor3::operator+=(const Tensor3& o)
{
    for (int k = 0; k < 9; ++k) a[k] += o.a[k];
    return *this;
}

Tensor3& Tensor3::operator-=(const Tensor3& o)
{
    for (int k = 0; k < 9; ++k) a[k] -= o.a[k];
    return *this;
}

Tensor3& Tensor3::operator*=(cplx s)
{
    for (auto& x : a) x *= s;
    return *this;
}

Tensor3 Tensor3::transpose() const
{
    Tensor3 t;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) t(i, j) = (*this)(j, i);
    return t;
}

Tensor3 Tensor3::conj() const
{
    Tensor3 t;
    for (int k = 0; k < 9; ++k) t.a[k] = std::conj(a[k]);
    return t;
}

Tensor3 Tensor3::matmul(const Tensor3& o) const
{
    Tensor3 t;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            cplx s = 0.0;
            for (int k = 0; k < 3; ++k) s += (*this)(i, k) * o(k, j);
            t(i, j) = s;
        }
    return t;
}

std::array<cplx, 3> Tensor3::apply(const std::array<cplx, 3>& v) const
{
    std::array<cplx, 3> r{};
    for (int i = 0; i < 3; ++i) r[i] = (*this)(i, 0) * v[0] + (*this)(i, 1) * v[1] + (*this)(i, 2) * v[2];
    return r;
}

std::array<cplx, 3> Tensor3::apply(const Vec3& v) const { return apply(std::array<cplx, 3>{v.x, v.y, v.z}); }

double Tensor3::max_abs() const
{
    double m = 0.0;
    for (const auto& x : a) m = std::max(m, std::abs(x));
    return m;
}

double Tensor3::max_abs_real() const
{
    double m = 0.0;
    for (const auto& x : a) m = std::max(m, std::abs(x.real()));
    return m;
}

double Tensor3::max_abs_imag() const
{
    double m = 0.0;
    for (const auto& x : a) m = std::max(m, std::abs(x.imag()));
    return m;
}

cplx contract(const Tensor3& x, const Tensor3& y)
{
    cplx s = 0.0;
    for (int k = 0; k < 9; ++k) s += x.a[k] * y.a[k];
    return s;
}

cplx trace3(const Tensor3& A, const Tensor3& B, const Tensor3& C) { return A.matmul(B).matmul(C).trace(); }

double max_abs_diff(const Tensor3& x, const Tensor3& y) { return (x - y).max_abs(); }

} // namespace vcorr
