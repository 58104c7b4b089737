#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace lorentz {

using cplx = std::complex<double>;
using Vec = std::vector<cplx>;

// Half-integer quantum numbers are stored as doubled integers so that shell
// and weight indices never suffer floating-point drift.
struct HalfInt {
  int twice = 0;

  HalfInt() = default;
  static HalfInt from_twice(int t) {
    HalfInt h;
    h.twice = t;
    return h;
  }
  static HalfInt whole(int n) { return from_twice(2 * n); }

  double value() const { return 0.5 * static_cast<double>(twice); }
  bool is_integer() const { return (twice % 2) == 0; }

  friend bool operator==(HalfInt a, HalfInt b) { return a.twice == b.twice; }
  friend bool operator!=(HalfInt a, HalfInt b) { return a.twice != b.twice; }
  friend bool operator<(HalfInt a, HalfInt b) { return a.twice < b.twice; }
  friend bool operator<=(HalfInt a, HalfInt b) { return a.twice <= b.twice; }

  std::string to_string() const {
    if (is_integer()) return std::to_string(twice / 2);
    return std::to_string(twice) + "/2";
  }
};

inline double norm2(const Vec& v) {
  double s = 0.0;
  for (const cplx& z : v) s += std::norm(z);
  return std::sqrt(s);
}

// Inner product, antilinear in the first argument.
inline cplx dot(const Vec& u, const Vec& v) {
  if (u.size() != v.size()) throw std::invalid_argument("dot: size mismatch");
  cplx s = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) s += std::conj(u[i]) * v[i];
  return s;
}

inline void axpy(cplx a, const Vec& x, Vec& y) {
  if (x.size() != y.size()) throw std::invalid_argument("axpy: size mismatch");
  for (std::size_t i = 0; i < x.size(); ++i) y[i] += a * x[i];
}

inline void scale(Vec& v, cplx a) {
  for (cplx& z : v) z *= a;
}

inline double max_abs(const Vec& v) {
  double m = 0.0;
  for (const cplx& z : v) m = std::max(m, std::abs(z));
  return m;
}

}  // namespace lorentz
