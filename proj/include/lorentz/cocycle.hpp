#pragma once

// The Schurmann triple (rho_10, c, psi): the distinguished 1-cocycle
//
//   c(H3) = c(H+-) = 0,
//   c(F3) = -(1/sqrt 2) xi_{1,0},   c(F+-) = +-xi_{1,+-1},
//
// coboundaries d_v(X) = rho(X) v, the identically-zero functional psi, and
// numerical verification of the defining identities
//
//   eta([X,Y]) = rho(X) eta(Y) - rho(Y) eta(X)
//   psi([X,Y]) = <eta(Y), eta(X)> - <eta(X), eta(Y)>   (X, Y in the real form)
//
// Whether c extends to a coboundary is *not* decided here by linear solves at
// finite truncation; that question is handled by the divergence analysis in
// series.hpp.

#include <array>
#include <functional>

#include "lorentz/irrep.hpp"

namespace lorentz {

// Values on the six hermitian generators over a truncated D basis, extended
// linearly to arbitrary elements.
class CocycleMap {
 public:
  CocycleMap() = default;
  explicit CocycleMap(int dim) : dim_(dim) {
    for (Vec& v : values_) v.assign(dim, 0.0);
  }

  int dim() const { return dim_; }

  Vec& value(Gen g) { return values_[static_cast<int>(g)]; }
  const Vec& value(Gen g) const { return values_[static_cast<int>(g)]; }

  Vec operator()(const LieElement& x) const {
    Vec out(dim_, 0.0);
    for (int i = 0; i < 6; ++i) {
      const cplx a = x.coeff(static_cast<Gen>(i));
      if (a != 0.0) axpy(a, values_[i], out);
    }
    return out;
  }

 private:
  int dim_ = 0;
  std::array<Vec, 6> values_;
};

// Linear functional on the complexified algebra, stored by its values on the
// hermitian generators.
struct PsiFunctional {
  std::array<cplx, 6> values{};

  cplx operator()(const LieElement& x) const {
    cplx s = 0.0;
    for (int i = 0; i < 6; ++i) s += x.coeff(static_cast<Gen>(i)) * values[i];
    return s;
  }
};

struct SchurmannTriple {
  RepSpec spec;
  CocycleMap eta;
  PsiFunctional psi;
};

// The cocycle c on D_{1,0}.  c(F1) = (c(F+)+c(F-))/2 and so on.
inline CocycleMap cocycle_c(int lmax) {
  const RepSpec spec = RepSpec::of(1.0, 0.0, lmax);
  const BasisLayout lay(spec);
  CocycleMap c(lay.dim());
  Vec xi10(lay.dim(), 0.0), xi11(lay.dim(), 0.0), xi1m1(lay.dim(), 0.0);
  xi10[lay.index(2, 0)] = 1.0;
  xi11[lay.index(2, 2)] = 1.0;
  xi1m1[lay.index(2, -2)] = 1.0;

  axpy(-1.0 / std::sqrt(2.0), xi10, c.value(Gen::F3));
  // F1 = (F+ + F-)/2 -> (xi_{1,1} - xi_{1,-1})/2
  axpy(0.5, xi11, c.value(Gen::F1));
  axpy(-0.5, xi1m1, c.value(Gen::F1));
  // F2 = (F+ - F-)/(2i) -> (xi_{1,1} + xi_{1,-1})/(2i)
  axpy(cplx(0, -0.5), xi11, c.value(Gen::F2));
  axpy(cplx(0, -0.5), xi1m1, c.value(Gen::F2));
  return c;
}

// d_v(X) = rho(X) v for each generator.
inline CocycleMap coboundary(const RepSpec& spec, const Vec& v) {
  const BasisLayout lay(spec);
  if (static_cast<int>(v.size()) != lay.dim())
    throw std::invalid_argument("coboundary: vector dimension mismatch");
  CocycleMap d(lay.dim());
  for (int i = 0; i < 6; ++i) {
    const Gen g = static_cast<Gen>(i);
    d.value(g) = rep_operator(spec, LieElement::unit(g)).mat.apply(v);
  }
  return d;
}

inline SchurmannTriple canonical_triple(int lmax) {
  SchurmannTriple t;
  t.spec = RepSpec::of(1.0, 0.0, lmax);
  t.eta = cocycle_c(lmax);
  t.psi = PsiFunctional{};  // identically zero
  return t;
}

struct PairResidual {
  Gen x, y;
  double residual;
};

struct CocycleReport {
  std::vector<PairResidual> pairs;
  double max_residual = 0.0;
};

// || eta([X,Y]) - rho(X) eta(Y) + rho(Y) eta(X) ||_2 over ordered primitive
// pairs.
inline CocycleReport verify_cocycle_identity(const SchurmannTriple& t) {
  const BasisLayout lay(t.spec);
  std::array<SparseMatrix, 6> rho;
  for (int i = 0; i < 6; ++i)
    rho[i] = rep_operator(t.spec, LieElement::unit(static_cast<Gen>(i))).mat;

  CocycleReport rep;
  for (int a = 0; a < 6; ++a)
    for (int b = 0; b < 6; ++b) {
      if (a == b) continue;
      const Gen ga = static_cast<Gen>(a), gb = static_cast<Gen>(b);
      Vec lhs = t.eta(bracket(LieElement::unit(ga), LieElement::unit(gb)));
      const Vec xy = rho[a].apply(t.eta.value(gb));
      const Vec yx = rho[b].apply(t.eta.value(ga));
      for (int i = 0; i < lay.dim(); ++i) lhs[i] -= xy[i] - yx[i];
      const double r = norm2(lhs);
      rep.pairs.push_back({ga, gb, r});
      rep.max_residual = std::max(rep.max_residual, r);
    }
  return rep;
}

// | psi([X,Y]) - <eta(Y), eta(X)> + <eta(X), eta(Y)> | over the real-form
// basis pairs X = i G_a, Y = i G_b.
inline CocycleReport verify_psi_relation(const SchurmannTriple& t) {
  CocycleReport rep;
  for (int a = 0; a < 6; ++a)
    for (int b = 0; b < 6; ++b) {
      const Gen ga = static_cast<Gen>(a), gb = static_cast<Gen>(b);
      const LieElement X = cplx(0, 1) * LieElement::unit(ga);
      const LieElement Y = cplx(0, 1) * LieElement::unit(gb);
      const Vec ex = t.eta(X);
      const Vec ey = t.eta(Y);
      const cplx rhs = dot(ey, ex) - dot(ex, ey);
      const double r = std::abs(t.psi(bracket(X, Y)) - rhs);
      rep.pairs.push_back({ga, gb, r});
      rep.max_residual = std::max(rep.max_residual, r);
    }
  return rep;
}

// The 6x6 Gram form (X,Y) -> <eta(X*), eta(Y)> on the hermitian generators;
// returns its largest deviation from hermitian symmetry.
inline double gram_hermiticity_residual(const CocycleMap& eta) {
  std::array<std::array<cplx, 6>, 6> g;
  for (int a = 0; a < 6; ++a)
    for (int b = 0; b < 6; ++b) {
      const Vec ea = eta(involute(LieElement::unit(static_cast<Gen>(a))));
      const Vec eb = eta(LieElement::unit(static_cast<Gen>(b)));
      g[a][b] = dot(ea, eb);
    }
  double worst = 0.0;
  for (int a = 0; a < 6; ++a)
    for (int b = 0; b < 6; ++b)
      worst = std::max(worst, std::abs(g[a][b] - std::conj(g[b][a])));
  return worst;
}

// ---------------------------------------------------------------------------
// The limit of normalized coboundaries of xi_00 as l1 -> 1.

struct RemarkLimitRow {
  double l1 = 0.0;
  // || eta_{l1}(G) - c(G) || per hermitian generator, and the max
  std::array<double, 6> cocycle_distance{};
  double max_cocycle_distance = 0.0;
  // max entrywise distance between the l >= 1 block of rho_{0,l1} and
  // rho_{1,0} over the six generators
  double block_distance = 0.0;
};

struct RemarkLimitReport {
  std::vector<RemarkLimitRow> rows;
  bool cocycle_monotone = true;
  bool block_monotone = true;
};

inline RemarkLimitReport remark_limit_check(const std::vector<double>& l1_seq,
                                            int lmax) {
  for (double l1 : l1_seq)
    if (!(l1 > 0.0 && l1 < 1.0))
      throw std::invalid_argument("remark_limit_check: l1 outside (0,1)");

  const CocycleMap c = cocycle_c(lmax);
  const RepSpec ref = RepSpec::of(1.0, 0.0, lmax);
  std::array<SparseMatrix, 6> rho_ref;
  for (int i = 0; i < 6; ++i)
    rho_ref[i] = rep_operator(ref, LieElement::unit(static_cast<Gen>(i))).mat;

  RemarkLimitReport out;
  for (double l1 : l1_seq) {
    const RepSpec spec = RepSpec::of(0.0, l1, lmax);
    const BasisLayout lay(spec);
    Vec xi00(lay.dim(), 0.0);
    xi00[lay.index(0, 0)] = 1.0;
    const CocycleMap d = coboundary(spec, xi00);
    // C_1(0,l1) = sqrt(1-l1^2)/sqrt(3) as a real number; the normalization is
    // 1/(i C_1 sqrt 2).
    const double c1 = std::sqrt(1.0 - l1 * l1) / std::sqrt(3.0);
    const cplx norm = 1.0 / (cplx(0, 1) * c1 * std::sqrt(2.0));

    RemarkLimitRow row;
    row.l1 = l1;
    for (int i = 0; i < 6; ++i) {
      const Gen g = static_cast<Gen>(i);
      Vec diff = d.value(g);
      scale(diff, norm);
      // compare on the common l >= 1 block; entry 0 of the (0,l1) basis is
      // xi_00, which c's basis does not contain
      const Vec& cv = c.value(g);
      double s = std::norm(diff[0]);
      for (int k = 1; k < lay.dim(); ++k) s += std::norm(diff[k] - cv[k - 1]);
      row.cocycle_distance[i] = std::sqrt(s);
      row.max_cocycle_distance =
          std::max(row.max_cocycle_distance, row.cocycle_distance[i]);
    }

    std::vector<int> block_ids;
    for (int i = 1; i < lay.dim(); ++i) block_ids.push_back(i);
    for (int i = 0; i < 6; ++i) {
      const SparseMatrix sub =
          rep_operator(spec, LieElement::unit(static_cast<Gen>(i)))
              .mat.sub_block(block_ids, block_ids);
      row.block_distance =
          std::max(row.block_distance, (sub - rho_ref[i]).max_abs());
    }
    out.rows.push_back(row);
  }

  for (std::size_t i = 1; i < out.rows.size(); ++i) {
    if (out.rows[i].max_cocycle_distance >
        out.rows[i - 1].max_cocycle_distance + 1e-15)
      out.cocycle_monotone = false;
    if (out.rows[i].block_distance > out.rows[i - 1].block_distance + 1e-15)
      out.block_monotone = false;
  }
  return out;
}

}  // namespace lorentz
