#pragma once

// Scalar-generic 3-vector / quaternion kernels and a forward-mode dual
// number. The flight dynamics, camera chain and constraint functions are
// written once against these templates; instantiating them with Dual<N>
// yields exact Jacobians for the SQP without hand-derived chain rules.

#include <array>
#include <cmath>
#include <cstddef>

namespace plmpc {

/// Forward-mode dual scalar carrying N partial derivatives.
template <int N>
struct Dual {
  double v = 0.0;
  std::array<double, N> d{};

  Dual() = default;
  Dual(double value) : v(value) {}  // NOLINT: implicit constant lift
  static Dual seed(double value, int slot) {
    Dual out(value);
    out.d[slot] = 1.0;
    return out;
  }

  Dual operator-() const {
    Dual out(-v);
    for (int i = 0; i < N; ++i) out.d[i] = -d[i];
    return out;
  }
  Dual& operator+=(const Dual& o) {
    v += o.v;
    for (int i = 0; i < N; ++i) d[i] += o.d[i];
    return *this;
  }
  Dual& operator-=(const Dual& o) {
    v -= o.v;
    for (int i = 0; i < N; ++i) d[i] -= o.d[i];
    return *this;
  }
  Dual& operator*=(const Dual& o) {
    for (int i = 0; i < N; ++i) d[i] = d[i] * o.v + v * o.d[i];
    v *= o.v;
    return *this;
  }
  Dual& operator/=(const Dual& o) {
    const double inv = 1.0 / o.v;
    for (int i = 0; i < N; ++i) d[i] = (d[i] - v * inv * o.d[i]) * inv;
    v *= inv;
    return *this;
  }

  friend Dual operator+(Dual a, const Dual& b) { return a += b; }
  friend Dual operator-(Dual a, const Dual& b) { return a -= b; }
  friend Dual operator*(Dual a, const Dual& b) { return a *= b; }
  friend Dual operator/(Dual a, const Dual& b) { return a /= b; }

  friend bool operator<(const Dual& a, const Dual& b) { return a.v < b.v; }
  friend bool operator>(const Dual& a, const Dual& b) { return a.v > b.v; }
  friend bool operator<=(const Dual& a, const Dual& b) { return a.v <= b.v; }
  friend bool operator>=(const Dual& a, const Dual& b) { return a.v >= b.v; }
};

template <int N>
inline Dual<N> sqrt(const Dual<N>& a) {
  Dual<N> out(std::sqrt(a.v));
  const double s = 0.5 / out.v;
  for (int i = 0; i < N; ++i) out.d[i] = s * a.d[i];
  return out;
}

template <int N>
inline Dual<N> exp(const Dual<N>& a) {
  Dual<N> out(std::exp(a.v));
  for (int i = 0; i < N; ++i) out.d[i] = out.v * a.d[i];
  return out;
}

template <int N>
inline Dual<N> sin(const Dual<N>& a) {
  Dual<N> out(std::sin(a.v));
  const double c = std::cos(a.v);
  for (int i = 0; i < N; ++i) out.d[i] = c * a.d[i];
  return out;
}

template <int N>
inline Dual<N> cos(const Dual<N>& a) {
  Dual<N> out(std::cos(a.v));
  const double s = -std::sin(a.v);
  for (int i = 0; i < N; ++i) out.d[i] = s * a.d[i];
  return out;
}

/// atan2 with the usual quadrant handling; derivative of atan2(y, x).
template <int N>
inline Dual<N> atan2(const Dual<N>& y, const Dual<N>& x) {
  Dual<N> out(std::atan2(y.v, x.v));
  const double den = x.v * x.v + y.v * y.v;
  for (int i = 0; i < N; ++i) out.d[i] = (x.v * y.d[i] - y.v * x.d[i]) / den;
  return out;
}

// ADL hooks so templated kernels can call unqualified sqrt/sin/... on both
// plain doubles and duals.
using std::atan2;
using std::cos;
using std::exp;
using std::sin;
using std::sqrt;

template <class S>
struct V3T {
  S x{}, y{}, z{};

  V3T() = default;
  V3T(S xx, S yy, S zz) : x(xx), y(yy), z(zz) {}

  V3T operator+(const V3T& o) const { return {x + o.x, y + o.y, z + o.z}; }
  V3T operator-(const V3T& o) const { return {x - o.x, y - o.y, z - o.z}; }
  V3T operator*(const S& s) const { return {x * s, y * s, z * s}; }
  V3T operator-() const { return {-x, -y, -z}; }

  S dot(const V3T& o) const { return x * o.x + y * o.y + z * o.z; }
  V3T cross(const V3T& o) const {
    return {y * o.z - z * o.y, z * o.x - x * o.z, x * o.y - y * o.x};
  }
  S squared_norm() const { return dot(*this); }
  S norm() const {
    using plmpc::sqrt;
    using std::sqrt;
    return sqrt(squared_norm());
  }
};

/// Hamilton quaternion (w, x, y, z); q_WB rotates body-frame vectors into
/// the world frame via rotate().
template <class S>
struct Q4T {
  S w{}, x{}, y{}, z{};

  Q4T() : w(S(1)) {}
  Q4T(S ww, S xx, S yy, S zz) : w(ww), x(xx), y(yy), z(zz) {}

  Q4T conjugate() const { return {w, -x, -y, -z}; }

  Q4T operator*(const Q4T& o) const {
    return {w * o.w - x * o.x - y * o.y - z * o.z,
            w * o.x + x * o.w + y * o.z - z * o.y,
            w * o.y - x * o.z + y * o.w + z * o.x,
            w * o.z + x * o.y - y * o.x + z * o.w};
  }

  S squared_norm() const { return w * w + x * x + y * y + z * z; }

  Q4T normalized() const {
    using plmpc::sqrt;
    using std::sqrt;
    const S inv = S(1) / sqrt(squared_norm());
    return {w * inv, x * inv, y * inv, z * inv};
  }

  /// R(q) * v, expanded (no temporaries from quaternion products).
  V3T<S> rotate(const V3T<S>& v) const {
    const V3T<S> u{x, y, z};
    const V3T<S> t = u.cross(v) * S(2);
    return v + t * w + u.cross(t);
  }
};

/// q̇ = ½ q ⊗ (0, ω) with body rates ω.
template <class S>
inline Q4T<S> quat_derivative(const Q4T<S>& q, const V3T<S>& omega) {
  const Q4T<S> om{S(0), omega.x, omega.y, omega.z};
  Q4T<S> qd = q * om;
  return {qd.w * S(0.5), qd.x * S(0.5), qd.y * S(0.5), qd.z * S(0.5)};
}

}  // namespace plmpc
