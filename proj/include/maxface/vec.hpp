#pragma once

#include <array>
#include <cmath>
#include <complex>

namespace maxface {

using cplx = std::complex<double>;
using Vec3 = std::array<double, 3>;
using CVec3 = std::array<cplx, 3>;

inline constexpr double pi = 3.14159265358979323846;
inline constexpr cplx I{0.0, 1.0};

template <class T>
std::array<T, 3> operator+(const std::array<T, 3>& a, const std::array<T, 3>& b) {
    return {a[0] + b[0], a[1] + b[1], a[2] + b[2]};
}
template <class T>
std::array<T, 3> operator-(const std::array<T, 3>& a, const std::array<T, 3>& b) {
    return {a[0] - b[0], a[1] - b[1], a[2] - b[2]};
}
template <class T>
std::array<T, 3> operator-(const std::array<T, 3>& a) {
    return {-a[0], -a[1], -a[2]};
}
template <class T, class S>
auto operator*(const S& s, const std::array<T, 3>& a) -> std::array<decltype(s * a[0]), 3> {
    return {s * a[0], s * a[1], s * a[2]};
}
template <class T>
std::array<T, 3>& operator+=(std::array<T, 3>& a, const std::array<T, 3>& b) {
    a[0] += b[0];
    a[1] += b[1];
    a[2] += b[2];
    return a;
}

template <class A, class B>
auto cross(const std::array<A, 3>& a, const std::array<B, 3>& b)
    -> std::array<decltype(a[0] * b[0]), 3> {
    return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

// Bilinear dot product, no conjugation.
template <class A, class B>
auto dot(const std::array<A, 3>& a, const std::array<B, 3>& b) -> decltype(a[0] * b[0]) {
    return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
}

template <class A, class B, class C>
auto det3(const std::array<A, 3>& a, const std::array<B, 3>& b, const std::array<C, 3>& c) {
    return dot(a, cross(b, c));
}

inline Vec3 real(const CVec3& v) { return {v[0].real(), v[1].real(), v[2].real()}; }
inline Vec3 imag(const CVec3& v) { return {v[0].imag(), v[1].imag(), v[2].imag()}; }
inline CVec3 conj(const CVec3& v) { return {std::conj(v[0]), std::conj(v[1]), std::conj(v[2])}; }
inline CVec3 complexify(const Vec3& v) { return {cplx(v[0]), cplx(v[1]), cplx(v[2])}; }

inline double norm(const Vec3& v) { return std::sqrt(dot(v, v)); }
inline double norm(const CVec3& v) {
    return std::sqrt(std::norm(v[0]) + std::norm(v[1]) + std::norm(v[2]));
}
inline double max_abs(const CVec3& v) {
    return std::max({std::abs(v[0]), std::abs(v[1]), std::abs(v[2])});
}
inline double max_abs(const Vec3& v) {
    return std::max({std::abs(v[0]), std::abs(v[1]), std::abs(v[2])});
}
inline Vec3 normalized(const Vec3& v) { return (1.0 / norm(v)) * v; }

inline bool all_finite(const Vec3& v) {
    return std::isfinite(v[0]) && std::isfinite(v[1]) && std::isfinite(v[2]);
}
inline bool all_finite(const CVec3& v) {
    for (const auto& c : v)
        if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) return false;
    return true;
}

}  // namespace maxface
