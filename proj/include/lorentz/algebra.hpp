#pragma once

// Canonical description of so(3,1): the six hermitian generators H1..H3
// (rotations) and F1..F3 (boosts), the structure table, the involution, and
// the derived ladder/chiral basis elements.
//
// Structure table (fixed by requiring that the explicit irreducible action
// formulas represent it; see irrep.hpp):
//
//   [H_j, H_k] =  i eps_{jkl} H_l
//   [H_j, F_k] =  i eps_{jkl} F_l      (equivalently [F_j, H_k] = i eps_{jkl} F_l)
//   [F_j, F_k] = -i eps_{jkl} H_l
//
// Consequences in the ladder basis H+- = H1 +- i H2, F+- = F1 +- i F2:
//   [H+, H-] = 2 H3      [F+, F-] = -2 H3     [H+-, F-+] = +-2 F3
//   [H3, H+-] = +-H+-    [H3, F+-] = +-F+-    [F3, H+-] = +-F+-
//   [F3, F+-] = -+H+-    [H+-, F+-] = 0       [F3, H3]  = 0
//
// All table entries are exact small integers times i, so the algebraic
// identities at this layer hold exactly in double precision.

#include <array>
#include <cstdlib>
#include <sstream>

#include "lorentz/types.hpp"

namespace lorentz {

enum class Gen : int { H1 = 0, H2 = 1, H3 = 2, F1 = 3, F2 = 4, F3 = 5 };

inline constexpr std::array<const char*, 6> kGenNames = {"H1", "H2", "H3",
                                                         "F1", "F2", "F3"};

inline const char* name(Gen g) { return kGenNames[static_cast<int>(g)]; }

inline bool is_boost(Gen g) { return static_cast<int>(g) >= 3; }

// Levi-Civita symbol on 1-based indices; 0 whenever an index repeats or
// falls outside {1,2,3}.
inline int levi_civita(int j, int k, int l) {
  if (j < 1 || j > 3 || k < 1 || k > 3 || l < 1 || l > 3) return 0;
  if (j == k || k == l || j == l) return 0;
  // even permutations of (1,2,3)
  if ((j == 1 && k == 2 && l == 3) || (j == 2 && k == 3 && l == 1) ||
      (j == 3 && k == 1 && l == 2))
    return 1;
  return -1;
}

// Finite complex linear combination of the six primitive generators.
class LieElement {
 public:
  LieElement() = default;

  static LieElement zero() { return LieElement(); }

  static LieElement unit(Gen g) {
    LieElement x;
    x.c_[static_cast<int>(g)] = 1.0;
    return x;
  }

  static LieElement H(int j) { return unit(static_cast<Gen>(j - 1)); }
  static LieElement F(int j) { return unit(static_cast<Gen>(j + 2)); }

  static LieElement H_plus() { return H(1) + cplx(0, 1) * H(2); }
  static LieElement H_minus() { return H(1) - cplx(0, 1) * H(2); }
  static LieElement F_plus() { return F(1) + cplx(0, 1) * F(2); }
  static LieElement F_minus() { return F(1) - cplx(0, 1) * F(2); }

  // A_j = (H_j + i F_j)/2,  B_j = (H_j - i F_j)/2
  static LieElement A(int j) { return 0.5 * (H(j) + cplx(0, 1) * F(j)); }
  static LieElement B(int j) { return 0.5 * (H(j) - cplx(0, 1) * F(j)); }

  cplx coeff(Gen g) const { return c_[static_cast<int>(g)]; }

  LieElement& add(Gen g, cplx a) {
    c_[static_cast<int>(g)] += a;
    return *this;
  }

  bool is_zero() const {
    for (const cplx& z : c_)
      if (z != 0.0) return false;
    return true;
  }

  bool has_boost_part() const {
    return c_[3] != 0.0 || c_[4] != 0.0 || c_[5] != 0.0;
  }

  bool has_rotation_part() const {
    return c_[0] != 0.0 || c_[1] != 0.0 || c_[2] != 0.0;
  }

  double max_abs() const {
    double m = 0.0;
    for (const cplx& z : c_) m = std::max(m, std::abs(z));
    return m;
  }

  friend LieElement operator+(const LieElement& a, const LieElement& b) {
    LieElement r;
    for (int i = 0; i < 6; ++i) r.c_[i] = a.c_[i] + b.c_[i];
    return r;
  }

  friend LieElement operator-(const LieElement& a, const LieElement& b) {
    LieElement r;
    for (int i = 0; i < 6; ++i) r.c_[i] = a.c_[i] - b.c_[i];
    return r;
  }

  friend LieElement operator*(cplx a, const LieElement& x) {
    LieElement r;
    for (int i = 0; i < 6; ++i) r.c_[i] = a * x.c_[i];
    return r;
  }

  friend LieElement operator-(const LieElement& x) { return cplx(-1.0) * x; }

  // Zero coefficients are skipped; an all-zero element prints as "0".
  std::string to_string() const {
    std::ostringstream os;
    bool first = true;
    for (int i = 0; i < 6; ++i) {
      if (c_[i] == 0.0) continue;
      if (!first) os << " + ";
      os << "(" << c_[i].real() << (c_[i].imag() < 0 ? "" : "+")
         << c_[i].imag() << "i)*" << kGenNames[i];
      first = false;
    }
    if (first) os << "0";
    return os.str();
  }

 private:
  std::array<cplx, 6> c_{};
};

namespace detail {

inline LieElement primitive_bracket(Gen a, Gen b) {
  const int ia = static_cast<int>(a);
  const int ib = static_cast<int>(b);
  const int j = (ia % 3) + 1;
  const int k = (ib % 3) + 1;
  const bool a_boost = is_boost(a);
  const bool b_boost = is_boost(b);
  LieElement r;
  for (int l = 1; l <= 3; ++l) {
    const int eps = levi_civita(j, k, l);
    if (eps == 0) continue;
    if (!a_boost && !b_boost) {
      r.add(static_cast<Gen>(l - 1), cplx(0, eps));  // [H,H] = i eps H
    } else if (a_boost && b_boost) {
      r.add(static_cast<Gen>(l - 1), cplx(0, -eps));  // [F,F] = -i eps H
    } else {
      r.add(static_cast<Gen>(l + 2), cplx(0, eps));  // [H,F],[F,H] = i eps F
    }
  }
  return r;
}

}  // namespace detail

// Bilinear extension of the structure table.
inline LieElement bracket(const LieElement& x, const LieElement& y) {
  LieElement r;
  for (int a = 0; a < 6; ++a) {
    const cplx xa = x.coeff(static_cast<Gen>(a));
    if (xa == 0.0) continue;
    for (int b = 0; b < 6; ++b) {
      const cplx yb = y.coeff(static_cast<Gen>(b));
      if (yb == 0.0) continue;
      r = r + (xa * yb) *
                  detail::primitive_bracket(static_cast<Gen>(a),
                                            static_cast<Gen>(b));
    }
  }
  return r;
}

// The involution fixing the six hermitian generators, extended antilinearly.
// It swaps H+ <-> H-, F+ <-> F- and A_j <-> B_j.
inline LieElement involute(const LieElement& x) {
  LieElement r;
  for (int i = 0; i < 6; ++i) {
    Gen g = static_cast<Gen>(i);
    r.add(g, std::conj(x.coeff(g)));
  }
  return r;
}

inline double element_distance(const LieElement& x, const LieElement& y) {
  return (x - y).max_abs();
}

// max || [[X,Y],Z] + [[Y,Z],X] + [[Z,X],Y] || over all primitive triples.
inline double jacobi_residual() {
  double worst = 0.0;
  for (int a = 0; a < 6; ++a)
    for (int b = 0; b < 6; ++b)
      for (int c = 0; c < 6; ++c) {
        const LieElement X = LieElement::unit(static_cast<Gen>(a));
        const LieElement Y = LieElement::unit(static_cast<Gen>(b));
        const LieElement Z = LieElement::unit(static_cast<Gen>(c));
        const LieElement s = bracket(bracket(X, Y), Z) +
                             bracket(bracket(Y, Z), X) +
                             bracket(bracket(Z, X), Y);
        worst = std::max(worst, s.max_abs());
      }
  return worst;
}

// max || [X,Y] + [Y,X] || over all primitive pairs.
inline double antisymmetry_residual() {
  double worst = 0.0;
  for (int a = 0; a < 6; ++a)
    for (int b = 0; b < 6; ++b) {
      const LieElement X = LieElement::unit(static_cast<Gen>(a));
      const LieElement Y = LieElement::unit(static_cast<Gen>(b));
      worst = std::max(worst, (bracket(X, Y) + bracket(Y, X)).max_abs());
    }
  return worst;
}

// max || involute([x,y]) - [involute(y), involute(x)] || over primitive pairs
// scaled by a few non-real coefficients, exercising antilinearity.
inline double star_bracket_residual() {
  const std::array<cplx, 3> coeffs = {cplx(1, 0), cplx(0, 1), cplx(0.5, -2)};
  double worst = 0.0;
  for (int a = 0; a < 6; ++a)
    for (int b = 0; b < 6; ++b)
      for (const cplx& ca : coeffs)
        for (const cplx& cb : coeffs) {
          const LieElement x = ca * LieElement::unit(static_cast<Gen>(a));
          const LieElement y = cb * LieElement::unit(static_cast<Gen>(b));
          const LieElement lhs = involute(bracket(x, y));
          const LieElement rhs = bracket(involute(y), involute(x));
          worst = std::max(worst, (lhs - rhs).max_abs());
        }
  return worst;
}

// Human-readable resolved bracket table, one line per ordered primitive pair
// with a nonzero bracket.
inline std::vector<std::string> bracket_table_lines() {
  std::vector<std::string> lines;
  for (int a = 0; a < 6; ++a)
    for (int b = a + 1; b < 6; ++b) {
      const LieElement r = detail::primitive_bracket(static_cast<Gen>(a),
                                                     static_cast<Gen>(b));
      std::ostringstream os;
      os << "[" << kGenNames[a] << "," << kGenNames[b] << "] = "
         << r.to_string();
      lines.push_back(os.str());
    }
  return lines;
}

}  // namespace lorentz
