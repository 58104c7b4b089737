#pragma once

// Truncated matrices for the irreducible so(3,1) actions rho_{l0,l1} on
// D_{l0,l1} = span{ xi_{l,m} : l = l0, l0+1, ..., Lmax; m = -l..l }, and the
// two Casimir operators.
//
// Basis enumeration is (l ascending, m ascending); this order is part of the
// file-format contract for all exported matrices.
//
// Action on basis vectors (A_l, C_l are the coefficient functions below):
//   H3  xi_{l,m} = m xi_{l,m}
//   H+- xi_{l,m} = sqrt((l -+ m)(l +- m + 1)) xi_{l,m+-1}
//   F3  xi_{l,m} = C_l sqrt(l^2-m^2) xi_{l-1,m} - m A_l xi_{l,m}
//                  - C_{l+1} sqrt((l+1)^2-m^2) xi_{l+1,m}
//   F+- xi_{l,m} = +-C_l sqrt((l -+ m)(l -+ m - 1)) xi_{l-1,m+-1}
//                  - A_l sqrt((l -+ m)(l +- m + 1)) xi_{l,m+-1}
//                  +- C_{l+1} sqrt((l +- m + 1)(l +- m + 2)) xi_{l+1,m+-1}
//
// Truncation discipline: matrix elements that would land on a shell above
// Lmax are dropped and the operator records interior_depth = 1 per boost
// factor; products add depths.  Identity checks are only asserted after
// projecting onto the interior (shells l <= Lmax - depth).

#include <optional>

#include "lorentz/algebra.hpp"
#include "lorentz/sparse.hpp"

namespace lorentz {

enum class UnitaryClass { principal, supplementary, nonunitary };

inline const char* name(UnitaryClass u) {
  switch (u) {
    case UnitaryClass::principal: return "principal";
    case UnitaryClass::supplementary: return "supplementary";
    default: return "nonunitary";
  }
}

struct RepSpec {
  HalfInt l0;        // lowest shell, 2*l0 a nonnegative integer
  cplx l1;           // complex series parameter
  int lmax = 40;     // keep shells l0 <= l <= lmax

  RepSpec() = default;
  RepSpec(HalfInt l0_, cplx l1_, int lmax_) : l0(l0_), l1(l1_), lmax(lmax_) {
    validate();
  }
  static RepSpec of(double l0_value, cplx l1_, int lmax_) {
    const int twice = static_cast<int>(std::lround(2.0 * l0_value));
    if (std::abs(2.0 * l0_value - twice) > 1e-12)
      throw std::invalid_argument("RepSpec: l0 must be a half-integer");
    return RepSpec(HalfInt::from_twice(twice), l1_, lmax_);
  }

  void validate() const {
    if (l0.twice < 0) throw std::invalid_argument("RepSpec: l0 must be >= 0");
    if (2 * lmax < l0.twice)
      throw std::invalid_argument("RepSpec: lmax must be >= l0");
  }

  UnitaryClass unitary_class() const {
    if (l1.real() == 0.0) return UnitaryClass::principal;
    if (l0.twice == 0 && l1.imag() == 0.0 && l1.real() >= 0.0 && l1.real() < 1.0)
      return UnitaryClass::supplementary;
    return UnitaryClass::nonunitary;
  }
};

// Dense enumeration of (l, m) pairs, all indices doubled.
class BasisLayout {
 public:
  BasisLayout(HalfInt l0, int lmax) : twol0_(l0.twice), twolmax_(2 * lmax) {
    if (twolmax_ < twol0_) throw std::invalid_argument("BasisLayout: lmax < l0");
    int off = 0;
    for (int twol = twol0_; twol <= twolmax_; twol += 2) {
      offsets_.push_back(off);
      off += twol + 1;  // shell l holds 2l+1 states
    }
    dim_ = off;
  }
  explicit BasisLayout(const RepSpec& spec) : BasisLayout(spec.l0, spec.lmax) {}

  int dim() const { return dim_; }
  int twol0() const { return twol0_; }
  int twolmax() const { return twolmax_; }
  int shell_count() const { return static_cast<int>(offsets_.size()); }

  bool contains(int twol, int twom) const {
    return twol >= twol0_ && twol <= twolmax_ && ((twol - twol0_) % 2 == 0) &&
           std::abs(twom) <= twol && ((twol - twom) % 2 == 0);
  }

  int index(int twol, int twom) const {
    if (!contains(twol, twom))
      throw std::out_of_range("BasisLayout::index: (l,m) outside basis");
    return offsets_[(twol - twol0_) / 2] + (twom + twol) / 2;
  }

  std::pair<int, int> label(int idx) const {  // returns (2l, 2m)
    int s = static_cast<int>(offsets_.size()) - 1;
    while (offsets_[s] > idx) --s;
    const int twol = twol0_ + 2 * s;
    return {twol, 2 * (idx - offsets_[s]) - twol};
  }

  // Mask keeping shells l <= lmax - depth.
  std::vector<bool> interior_mask(int depth) const {
    std::vector<bool> keep(dim_, false);
    const int cutoff = twolmax_ - 2 * depth;
    for (int i = 0; i < dim_; ++i) keep[i] = label(i).first <= cutoff;
    return keep;
  }

  std::vector<int> shell_indices(int twol) const {
    std::vector<int> ids;
    for (int twom = -twol; twom <= twol; twom += 2)
      ids.push_back(index(twol, twom));
    return ids;
  }

 private:
  int twol0_;
  int twolmax_;
  std::vector<int> offsets_;
  int dim_ = 0;
};

// C_l = i sqrt((l^2-l0^2)(l^2-l1^2)) / (l sqrt(4 l^2 - 1))  for l >= 1,
//       0 for l in {0, 1/2}.  Principal branch for complex radicands; for the
// unitary classes the radicand is a nonnegative real.
inline cplx coeff_C(const RepSpec& spec, HalfInt l) {
  if (l.twice < spec.l0.twice || l.twice > 2 * spec.lmax + 2)
    throw std::out_of_range("coeff_C: l outside truncated range");
  if (l.twice <= 1) return 0.0;  // l = 0 or 1/2
  const double lv = l.value();
  const double l0v = spec.l0.value();
  const cplx rad = (lv * lv - l0v * l0v) * (lv * lv - spec.l1 * spec.l1);
  return cplx(0, 1) * std::sqrt(rad) / (lv * std::sqrt(4.0 * lv * lv - 1.0));
}

// A_l = i l0 l1 / (l (l+1))  for l > 0, 0 for l = 0.
inline cplx coeff_A(const RepSpec& spec, HalfInt l) {
  if (l.twice < spec.l0.twice || l.twice > 2 * spec.lmax + 2)
    throw std::out_of_range("coeff_A: l outside truncated range");
  if (l.twice == 0) return 0.0;
  const double lv = l.value();
  return cplx(0, 1) * spec.l0.value() * spec.l1 / (lv * (lv + 1.0));
}

// Sparse operator together with its reliability bookkeeping: the matrix is
// exact on span{ xi_{l,m} : l <= Lmax - interior_depth }.  Composition adds
// interior depths (each boost factor leaks one shell).
struct TruncatedOperator {
  SparseMatrix mat;
  int interior_depth = 0;

  int dim() const { return mat.rows(); }
};

inline TruncatedOperator operator*(const TruncatedOperator& a,
                                   const TruncatedOperator& b) {
  return TruncatedOperator{a.mat * b.mat,
                           a.interior_depth + b.interior_depth};
}

inline TruncatedOperator operator+(const TruncatedOperator& a,
                                   const TruncatedOperator& b) {
  return TruncatedOperator{a.mat + b.mat,
                           std::max(a.interior_depth, b.interior_depth)};
}

enum class LadderGen { H3, Hp, Hm, F3, Fp, Fm };

inline const char* name(LadderGen g) {
  switch (g) {
    case LadderGen::H3: return "H3";
    case LadderGen::Hp: return "H+";
    case LadderGen::Hm: return "H-";
    case LadderGen::F3: return "F3";
    case LadderGen::Fp: return "F+";
    default: return "F-";
  }
}

namespace detail {

inline double lad(double l, double m, int sign) {
  // sqrt((l -+ m)(l +- m + 1)) for H+- and the shell-diagonal boost factor
  const double a = sign > 0 ? (l - m) * (l + m + 1.0) : (l + m) * (l - m + 1.0);
  return a <= 0.0 ? 0.0 : std::sqrt(a);
}

}  // namespace detail

inline TruncatedOperator rep_ladder(const RepSpec& spec, LadderGen g) {
  spec.validate();
  const BasisLayout lay(spec);
  std::vector<Triplet> t;
  const int twolmax = lay.twolmax();
  for (int twol = lay.twol0(); twol <= twolmax; twol += 2) {
    const double l = 0.5 * twol;
    const HalfInt hl = HalfInt::from_twice(twol);
    const cplx Cl = coeff_C(spec, hl);
    const cplx Cl1 = coeff_C(spec, HalfInt::from_twice(twol + 2));
    const cplx Al = coeff_A(spec, hl);
    for (int twom = -twol; twom <= twol; twom += 2) {
      const double m = 0.5 * twom;
      const int col = lay.index(twol, twom);
      switch (g) {
        case LadderGen::H3:
          if (twom != 0) t.push_back({col, col, m});
          break;
        case LadderGen::Hp: {
          const double a = detail::lad(l, m, +1);
          if (a != 0.0) t.push_back({lay.index(twol, twom + 2), col, a});
          break;
        }
        case LadderGen::Hm: {
          const double a = detail::lad(l, m, -1);
          if (a != 0.0) t.push_back({lay.index(twol, twom - 2), col, a});
          break;
        }
        case LadderGen::F3: {
          const double down = (l * l - m * m);
          if (down > 0.0 && Cl != 0.0)
            t.push_back({lay.index(twol - 2, twom), col, Cl * std::sqrt(down)});
          if (twom != 0 && Al != 0.0) t.push_back({col, col, -m * Al});
          const double up = ((l + 1.0) * (l + 1.0) - m * m);
          if (twol + 2 <= twolmax && Cl1 != 0.0)
            t.push_back({lay.index(twol + 2, twom), col, -Cl1 * std::sqrt(up)});
          break;
        }
        case LadderGen::Fp: {
          const double down = (l - m) * (l - m - 1.0);
          if (down > 0.0 && Cl != 0.0)
            t.push_back({lay.index(twol - 2, twom + 2), col, Cl * std::sqrt(down)});
          const double mid = detail::lad(l, m, +1);
          if (mid != 0.0 && Al != 0.0)
            t.push_back({lay.index(twol, twom + 2), col, -Al * mid});
          const double up = (l + m + 1.0) * (l + m + 2.0);
          if (twol + 2 <= twolmax && Cl1 != 0.0)
            t.push_back({lay.index(twol + 2, twom + 2), col, Cl1 * std::sqrt(up)});
          break;
        }
        case LadderGen::Fm: {
          const double down = (l + m) * (l + m - 1.0);
          if (down > 0.0 && Cl != 0.0)
            t.push_back({lay.index(twol - 2, twom - 2), col, -Cl * std::sqrt(down)});
          const double mid = detail::lad(l, m, -1);
          if (mid != 0.0 && Al != 0.0)
            t.push_back({lay.index(twol, twom - 2), col, -Al * mid});
          const double up = (l - m + 1.0) * (l - m + 2.0);
          if (twol + 2 <= twolmax && Cl1 != 0.0)
            t.push_back({lay.index(twol + 2, twom - 2), col, -Cl1 * std::sqrt(up)});
          break;
        }
      }
    }
  }
  TruncatedOperator op;
  op.mat = SparseMatrix::from_triplets(lay.dim(), lay.dim(), std::move(t));
  op.interior_depth = (g == LadderGen::F3 || g == LadderGen::Fp ||
                       g == LadderGen::Fm)
                          ? 1
                          : 0;
  return op;
}

// Linear combination over the six hermitian generators:
//   H1 = (H+ + H-)/2, H2 = (H+ - H-)/(2i), and likewise for boosts.
inline TruncatedOperator rep_operator(const RepSpec& spec, const LieElement& x) {
  const BasisLayout lay(spec);
  SparseMatrix sum(lay.dim(), lay.dim());
  bool boost = false;
  const cplx half(0.5, 0.0), halfi(0.0, -0.5);  // 1/(2i) = -i/2
  struct Part {
    Gen g;
    LadderGen a, b;
    cplx ca, cb;
  };
  const Part parts[6] = {
      {Gen::H1, LadderGen::Hp, LadderGen::Hm, half, half},
      {Gen::H2, LadderGen::Hp, LadderGen::Hm, halfi, -halfi},
      {Gen::H3, LadderGen::H3, LadderGen::H3, cplx(1.0), cplx(0.0)},
      {Gen::F1, LadderGen::Fp, LadderGen::Fm, half, half},
      {Gen::F2, LadderGen::Fp, LadderGen::Fm, halfi, -halfi},
      {Gen::F3, LadderGen::F3, LadderGen::F3, cplx(1.0), cplx(0.0)},
  };
  for (const Part& p : parts) {
    const cplx c = x.coeff(p.g);
    if (c == 0.0) continue;
    if (is_boost(p.g)) boost = true;
    sum = sum + (c * p.ca) * rep_ladder(spec, p.a).mat;
    if (p.cb != 0.0) sum = sum + (c * p.cb) * rep_ladder(spec, p.b).mat;
  }
  return TruncatedOperator{std::move(sum), boost ? 1 : 0};
}

// ---------------------------------------------------------------------------
// Casimir operators.

enum class CasimirKind { J1, J2 };

struct QuadTerm {
  cplx coeff;
  LadderGen left, right;  // coeff * left . right, right acts first
};

// The quadratic expansions in the ladder basis:
//   Q1 = 2 H3^2 + H+H- + H-H+ - 2 F3^2 - F+F- - F-F+
//   Q2 = H+F- + H-F+ + F+H- + F-H+ + 4 F3H3
inline std::vector<QuadTerm> casimir_quadratic_terms(CasimirKind k) {
  using LG = LadderGen;
  if (k == CasimirKind::J1)
    return {{2.0, LG::H3, LG::H3},  {1.0, LG::Hp, LG::Hm},
            {1.0, LG::Hm, LG::Hp},  {-2.0, LG::F3, LG::F3},
            {-1.0, LG::Fp, LG::Fm}, {-1.0, LG::Fm, LG::Fp}};
  return {{1.0, LG::Hp, LG::Fm},
          {1.0, LG::Hm, LG::Fp},
          {1.0, LG::Fp, LG::Hm},
          {1.0, LG::Fm, LG::Hp},
          {4.0, LG::F3, LG::H3}};
}

// Normalizations fixing the scalar action to (l0^2 + l1^2 - 1) for J1 and
// i l0 l1 for J2 (the quadratic expansions above act as 2x and -4x those
// scalars, respectively).
inline cplx casimir_normalization(CasimirKind k) {
  return k == CasimirKind::J1 ? cplx(0.5) : cplx(-0.25);
}

inline cplx casimir_reference_scalar(const RepSpec& spec, CasimirKind k) {
  const double l0 = spec.l0.value();
  if (k == CasimirKind::J1) return l0 * l0 + spec.l1 * spec.l1 - 1.0;
  return cplx(0, 1) * l0 * spec.l1;
}

inline TruncatedOperator casimir(const RepSpec& spec, CasimirKind k) {
  if (2 * spec.lmax < spec.l0.twice + 4)
    throw std::invalid_argument("casimir: truncation too small (lmax < l0+2)");
  const BasisLayout lay(spec);
  SparseMatrix sum(lay.dim(), lay.dim());
  for (const QuadTerm& term : casimir_quadratic_terms(k)) {
    const SparseMatrix prod =
        rep_ladder(spec, term.left).mat * rep_ladder(spec, term.right).mat;
    sum = sum + term.coeff * prod;
  }
  return TruncatedOperator{casimir_normalization(k) * sum, 2};
}

// Largest deviation of op from scalar*identity on the interior.
inline double scalar_action_residual(const TruncatedOperator& op,
                                     const BasisLayout& lay, cplx scalar) {
  const std::vector<bool> keep = lay.interior_mask(op.interior_depth);
  Vec d(lay.dim(), 0.0);
  for (int i = 0; i < lay.dim(); ++i)
    if (keep[i]) d[i] = scalar;
  const SparseMatrix diff = op.mat - SparseMatrix::diagonal(d);
  return diff.max_abs_masked(keep);
}

// max over kept entries of |A - B| entrywise.
inline double operator_distance(const SparseMatrix& a, const SparseMatrix& b,
                                const std::vector<bool>& keep) {
  return (a - b).max_abs_masked(keep);
}

inline double adjointness_residual(const TruncatedOperator& op,
                                   const TruncatedOperator& op_star) {
  return (op_star.mat - op.mat.adjoint()).max_abs();
}

// || (pi(X)pi(Y) - pi(Y)pi(X) - pi([X,Y])) P_interior ||_max with the
// interior taken at the summed depth of the product.
inline double commutator_closure_residual(const RepSpec& spec,
                                          const LieElement& X,
                                          const LieElement& Y) {
  const BasisLayout lay(spec);
  const TruncatedOperator px = rep_operator(spec, X);
  const TruncatedOperator py = rep_operator(spec, Y);
  const TruncatedOperator pb = rep_operator(spec, bracket(X, Y));
  const SparseMatrix lhs = px.mat * py.mat - py.mat * px.mat - pb.mat;
  const int depth = px.interior_depth + py.interior_depth;
  return lhs.max_abs_masked(lay.interior_mask(std::max(depth, pb.interior_depth)));
}

}  // namespace lorentz
