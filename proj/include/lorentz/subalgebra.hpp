#pragma once

// Irreducible families of the two Lie subalgebras used by the decomposer:
//
//   so(3)  = span{H3, H1, H2}: spin-s matrices pi_s, dimension 2s+1, with
//            pi_s(H3) e_m = m e_m and
//            pi_s(H+-) e_m = sqrt((s -+ m)(s +- m + 1)) e_{m+-1}.
//
//   so(2,1) = span{H3, F1, F2}: the discrete series pi^+_t / pi^-_t on
//            {e_n : n >= 0} and the third family pi_{c,mu} on {f_n : n in Z}:
//              pi^+-_t(H3) e_n   = +-(n + t) e_n
//              pi^+_t(F+) e_n    = sqrt((n+1)(n+2t)) e_{n+1}
//              pi^+_t(F-) e_n    = sqrt(n(n+2t-1)) e_{n-1}     (pi^- mirrored)
//              pi_{c,mu}(H3) f_n = (n - mu) f_n
//              pi_{c,mu}(F+) f_n = sqrt(P(n)) f_{n+1},  P(x) = x^2 + (1-2mu)x
//              pi_{c,mu}(F-) f_n = sqrt(P(n-1)) f_{n-1}        + mu(mu-1) - c
//
// Casimir: K = H3^2 - (F+F- + F-F+)/2.  Under these conventions K acts as
// t(t-1) on pi^+-_t and as c on pi_{c,mu}; the module reports the measured
// scalar rather than asserting a fixed constant.

#include "lorentz/irrep.hpp"

namespace lorentz {

// -------------------------------------------------------------- so(3) ------

inline TruncatedOperator so3_ladder(HalfInt s, LadderGen g) {
  if (s.twice < 0) throw std::invalid_argument("so3_ladder: s must be >= 0");
  if (g == LadderGen::F3 || g == LadderGen::Fp || g == LadderGen::Fm)
    throw std::invalid_argument("so3_ladder: boost generator outside so(3)");
  const int dim = s.twice + 1;
  const double sv = s.value();
  std::vector<Triplet> t;
  for (int twom = -s.twice; twom <= s.twice; twom += 2) {
    const double m = 0.5 * twom;
    const int col = (twom + s.twice) / 2;
    if (g == LadderGen::H3) {
      if (twom != 0) t.push_back({col, col, m});
    } else {
      const int sign = g == LadderGen::Hp ? +1 : -1;
      const double a = detail::lad(sv, m, sign);
      if (a != 0.0) t.push_back({col + sign, col, a});
    }
  }
  return TruncatedOperator{SparseMatrix::from_triplets(dim, dim, std::move(t)), 0};
}

inline TruncatedOperator so3_operator(HalfInt s, const LieElement& x) {
  if (x.has_boost_part())
    throw std::invalid_argument("so3_operator: element outside span{H1,H2,H3}");
  const int dim = s.twice + 1;
  SparseMatrix sum(dim, dim);
  const cplx half(0.5, 0.0), halfi(0.0, -0.5);
  if (x.coeff(Gen::H1) != 0.0) {
    sum = sum + (x.coeff(Gen::H1) * half) * so3_ladder(s, LadderGen::Hp).mat;
    sum = sum + (x.coeff(Gen::H1) * half) * so3_ladder(s, LadderGen::Hm).mat;
  }
  if (x.coeff(Gen::H2) != 0.0) {
    sum = sum + (x.coeff(Gen::H2) * halfi) * so3_ladder(s, LadderGen::Hp).mat;
    sum = sum - (x.coeff(Gen::H2) * halfi) * so3_ladder(s, LadderGen::Hm).mat;
  }
  if (x.coeff(Gen::H3) != 0.0)
    sum = sum + x.coeff(Gen::H3) * so3_ladder(s, LadderGen::H3).mat;
  return TruncatedOperator{std::move(sum), 0};
}

// ------------------------------------------------------------- so(2,1) -----

enum class So21Family { discrete_plus, discrete_minus, continuous };

struct So21RepSpec {
  So21Family family = So21Family::discrete_plus;
  double t = 1.0;    // discrete series weight, t > 0
  double c = -1.0;   // third-family Casimir parameter, c < mu(mu-1)
  double mu = 0.0;   // third-family twist, 0 <= mu < 1
  int nmax = 40;

  static So21RepSpec plus(double t, int nmax) {
    So21RepSpec s;
    s.family = So21Family::discrete_plus;
    s.t = t;
    s.nmax = nmax;
    s.validate();
    return s;
  }
  static So21RepSpec minus(double t, int nmax) {
    So21RepSpec s = plus(t, nmax);
    s.family = So21Family::discrete_minus;
    return s;
  }
  static So21RepSpec third(double c, double mu, int nmax) {
    So21RepSpec s;
    s.family = So21Family::continuous;
    s.c = c;
    s.mu = mu;
    s.nmax = nmax;
    s.validate();
    return s;
  }

  void validate() const {
    if (nmax < 0) throw std::invalid_argument("So21RepSpec: nmax must be >= 0");
    if (family == So21Family::continuous) {
      if (mu < 0.0 || mu >= 1.0)
        throw std::invalid_argument("So21RepSpec: need 0 <= mu < 1");
      if (!(c < mu * (mu - 1.0)))
        throw std::invalid_argument("So21RepSpec: need c < mu(mu-1)");
    } else if (!(t > 0.0)) {
      throw std::invalid_argument("So21RepSpec: need t > 0");
    }
  }

  // Continuous family lives on n = -nmax..nmax, discrete on n = 0..nmax.
  int dim() const {
    return family == So21Family::continuous ? 2 * nmax + 1 : nmax + 1;
  }
  int index(int n) const {
    return family == So21Family::continuous ? n + nmax : n;
  }
  int n_lo() const { return family == So21Family::continuous ? -nmax : 0; }

  std::vector<bool> interior_mask(int depth) const {
    std::vector<bool> keep(dim(), false);
    for (int n = n_lo(); n <= nmax; ++n)
      keep[index(n)] = std::abs(n) <= nmax - depth;
    return keep;
  }
};

inline TruncatedOperator so21_ladder(const So21RepSpec& spec, LadderGen g) {
  spec.validate();
  if (g == LadderGen::Hp || g == LadderGen::Hm)
    throw std::invalid_argument("so21_ladder: H+- outside span{H3,F+,F-}");
  const int dim = spec.dim();
  std::vector<Triplet> trips;
  auto P = [&](double x) {
    return x * x + (1.0 - 2.0 * spec.mu) * x + spec.mu * (spec.mu - 1.0) - spec.c;
  };
  for (int n = spec.n_lo(); n <= spec.nmax; ++n) {
    const int col = spec.index(n);
    switch (spec.family) {
      case So21Family::discrete_plus:
      case So21Family::discrete_minus: {
        const double sgn = spec.family == So21Family::discrete_plus ? 1.0 : -1.0;
        const bool raise_with_Fp = spec.family == So21Family::discrete_plus;
        if (g == LadderGen::H3) {
          trips.push_back({col, col, sgn * (n + spec.t)});
        } else {
          const bool raising = (g == LadderGen::Fp) == raise_with_Fp;
          if (raising) {
            if (n + 1 <= spec.nmax)
              trips.push_back({col + 1, col,
                               std::sqrt((n + 1.0) * (n + 2.0 * spec.t))});
          } else if (n >= 1) {
            trips.push_back({col - 1, col,
                             std::sqrt(n * (n + 2.0 * spec.t - 1.0))});
          }
        }
        break;
      }
      case So21Family::continuous: {
        if (g == LadderGen::H3) {
          if (n - spec.mu != 0.0) trips.push_back({col, col, n - spec.mu});
        } else if (g == LadderGen::Fp) {
          if (n + 1 <= spec.nmax)
            trips.push_back({col + 1, col, std::sqrt(P(n))});
        } else {
          if (n - 1 >= spec.n_lo())
            trips.push_back({col - 1, col, std::sqrt(P(n - 1.0))});
        }
        break;
      }
    }
  }
  TruncatedOperator op;
  op.mat = SparseMatrix::from_triplets(dim, dim, std::move(trips));
  op.interior_depth = g == LadderGen::H3 ? 0 : 1;
  return op;
}

inline TruncatedOperator so21_operator(const So21RepSpec& spec,
                                       const LieElement& x) {
  if (x.coeff(Gen::H1) != 0.0 || x.coeff(Gen::H2) != 0.0)
    throw std::invalid_argument("so21_operator: element outside span{H3,F1,F2}");
  if (x.coeff(Gen::F3) != 0.0)
    throw std::invalid_argument("so21_operator: element outside span{H3,F+,F-}");
  const int dim = spec.dim();
  SparseMatrix sum(dim, dim);
  bool boost = false;
  const cplx half(0.5, 0.0), halfi(0.0, -0.5);
  if (x.coeff(Gen::F1) != 0.0) {
    boost = true;
    sum = sum + (x.coeff(Gen::F1) * half) * so21_ladder(spec, LadderGen::Fp).mat;
    sum = sum + (x.coeff(Gen::F1) * half) * so21_ladder(spec, LadderGen::Fm).mat;
  }
  if (x.coeff(Gen::F2) != 0.0) {
    boost = true;
    sum = sum + (x.coeff(Gen::F2) * halfi) * so21_ladder(spec, LadderGen::Fp).mat;
    sum = sum - (x.coeff(Gen::F2) * halfi) * so21_ladder(spec, LadderGen::Fm).mat;
  }
  if (x.coeff(Gen::H3) != 0.0)
    sum = sum + x.coeff(Gen::H3) * so21_ladder(spec, LadderGen::H3).mat;
  return TruncatedOperator{std::move(sum), boost ? 1 : 0};
}

// K = H3^2 - (F+F- + F-F+)/2, assembled from operator products.
inline TruncatedOperator casimir_K(const So21RepSpec& spec) {
  if (spec.nmax < 2)
    throw std::invalid_argument("casimir_K: truncation too small (nmax < 2)");
  const SparseMatrix h3 = so21_ladder(spec, LadderGen::H3).mat;
  const SparseMatrix fp = so21_ladder(spec, LadderGen::Fp).mat;
  const SparseMatrix fm = so21_ladder(spec, LadderGen::Fm).mat;
  SparseMatrix k = h3 * h3 - cplx(0.5) * (fp * fm + fm * fp);
  return TruncatedOperator{std::move(k), 2};
}

struct MeasuredScalar {
  cplx value;        // mean interior diagonal entry
  double deviation;  // largest |K - value*id| entry on the interior
};

inline MeasuredScalar measured_scalar(const TruncatedOperator& op,
                                      const std::vector<bool>& keep) {
  cplx sum = 0.0;
  int count = 0;
  for (int i = 0; i < op.mat.rows(); ++i)
    if (keep[i]) {
      sum += op.mat.at(i, i);
      ++count;
    }
  MeasuredScalar ms;
  ms.value = count > 0 ? sum / static_cast<double>(count) : cplx(0.0);
  Vec d(op.mat.rows(), 0.0);
  for (int i = 0; i < op.mat.rows(); ++i)
    if (keep[i]) d[i] = ms.value;
  ms.deviation = (op.mat - SparseMatrix::diagonal(d)).max_abs_masked(keep);
  return ms;
}

}  // namespace lorentz
