#pragma once

// Truncated symmetric Fock space over (truncated D_{1,0}) x (finite mode
// space) and the realization
//
//   j_st(X) = Lambda_st(rho(X)) + A+_st(eta(X)) + A-_st(eta(X*))
//             + psi(X)(t-s) id.
//
// Mode-space model: every test function occurring here is an indicator
// 1_{[s,t]}, so L^2(R+) is replaced by a finite list of disjoint intervals
// with Gram diag(t-s); the union of adjacent intervals is the sum of the two
// mode vectors.
//
// States are stored over the occupation-number basis with unit-norm number
// states; the interval weights are folded into the operator coefficients:
//   a+(f)|mu>  = sum_q f_q sqrt((n_q+1) w_q) |mu+q>
//   a (f)|mu>  = sum_{p in mu} conj(f_p) sqrt(n_p w_p) |mu-p>
//   dG(M)|mu>  = sum_{p in mu} [ n_p M_pp |mu> +
//                 sum_{q != p} M_qp sqrt(n_p (n_q+1)) |mu-p+q> ]
// (conservation never mixes modes, so no weight ratios appear there).
//
// Creation above the particle cap is truncated and the dropped squared norm
// is accumulated in FockState::leakage2, never silently discarded.

#include <cstdint>
#include <map>

#include "lorentz/cocycle.hpp"

namespace lorentz {

class ModeSpace {
 public:
  // Registers [s,t); throws unless s < t and the interval is disjoint from
  // the registered ones.  Returns the mode index.
  int add(double s, double t) {
    if (!(s < t)) throw std::invalid_argument("ModeSpace: need s < t");
    for (const auto& [a, b] : iv_)
      if (std::max(a, s) < std::min(b, t))
        throw std::invalid_argument("ModeSpace: intervals must be disjoint");
    iv_.emplace_back(s, t);
    return static_cast<int>(iv_.size()) - 1;
  }

  int size() const { return static_cast<int>(iv_.size()); }
  std::pair<double, double> interval(int k) const { return iv_.at(k); }
  double weight(int k) const { return iv_.at(k).second - iv_.at(k).first; }
  double total_weight(const std::vector<int>& modes) const {
    double s = 0.0;
    for (int k : modes) s += weight(k);
    return s;
  }

 private:
  std::vector<std::pair<double, double>> iv_;
};

// Occupation key: sorted multiset of one-particle labels.
using OccKey = std::vector<std::uint32_t>;

struct FockState {
  std::map<OccKey, cplx> amp;
  double leakage2 = 0.0;  // squared norm truncated above the particle cap

  void prune(double eps = 0.0) {
    for (auto it = amp.begin(); it != amp.end();)
      it = std::abs(it->second) <= eps ? amp.erase(it) : std::next(it);
  }
};

struct OneParticle {
  std::vector<std::pair<std::uint32_t, cplx>> entries;
};

class FockSpace {
 public:
  FockSpace(int d_dim, std::vector<double> mode_weights, int nmax)
      : d_dim_(d_dim), w_(std::move(mode_weights)), nmax_(nmax) {
    if (nmax_ < 0) throw std::invalid_argument("FockSpace: nmax < 0");
  }

  int d_dim() const { return d_dim_; }
  int n_modes() const { return static_cast<int>(w_.size()); }
  int nmax() const { return nmax_; }

  std::uint32_t label(int d, int mode) const {
    if (d < 0 || d >= d_dim_ || mode < 0 || mode >= n_modes())
      throw std::out_of_range("FockSpace: basis or mode label out of range");
    return static_cast<std::uint32_t>(d) * n_modes() + mode;
  }
  int d_of(std::uint32_t lab) const { return static_cast<int>(lab) / n_modes(); }
  int mode_of(std::uint32_t lab) const {
    return static_cast<int>(lab) % n_modes();
  }
  double weight(std::uint32_t lab) const { return w_[mode_of(lab)]; }

  FockState vacuum() const {
    FockState s;
    s.amp[OccKey{}] = 1.0;
    return s;
  }

  static int count(const OccKey& k, std::uint32_t lab) {
    int n = 0;
    for (std::uint32_t x : k) n += (x == lab);
    return n;
  }

  static OccKey with(const OccKey& k, std::uint32_t lab) {
    OccKey out = k;
    out.insert(std::lower_bound(out.begin(), out.end(), lab), lab);
    return out;
  }

  static OccKey without(const OccKey& k, std::uint32_t lab) {
    OccKey out = k;
    out.erase(std::find(out.begin(), out.end(), lab));
    return out;
  }

  FockState create(const OneParticle& f, const FockState& in) const {
    FockState out;
    out.leakage2 = in.leakage2;
    std::map<OccKey, cplx> dropped;
    for (const auto& [key, a] : in.amp) {
      if (a == 0.0) continue;
      const bool at_cap = static_cast<int>(key.size()) >= nmax_;
      for (const auto& [lab, fq] : f.entries) {
        if (fq == 0.0) continue;
        const cplx coef =
            a * fq * std::sqrt((count(key, lab) + 1.0) * weight(lab));
        if (at_cap)
          dropped[with(key, lab)] += coef;
        else
          out.amp[with(key, lab)] += coef;
      }
    }
    for (const auto& [key, a] : dropped) out.leakage2 += std::norm(a);
    return out;
  }

  FockState annihilate(const OneParticle& f, const FockState& in) const {
    FockState out;
    out.leakage2 = in.leakage2;
    for (const auto& [key, a] : in.amp) {
      if (a == 0.0 || key.empty()) continue;
      std::uint32_t prev = ~0u;
      for (std::uint32_t lab : key) {
        if (lab == prev) continue;  // handle each distinct label once
        prev = lab;
        for (const auto& [flab, fp] : f.entries) {
          if (flab != lab || fp == 0.0) continue;
          const cplx coef =
              a * std::conj(fp) * std::sqrt(count(key, lab) * weight(lab));
          out.amp[without(key, lab)] += coef;
        }
      }
    }
    return out;
  }

  // dG(M x P_modes): columns[d] lists (d', M_{d'd}) over the D factor.
  FockState conserve(const std::vector<std::vector<std::pair<int, cplx>>>& cols,
                     const std::vector<bool>& mode_sel,
                     const FockState& in) const {
    FockState out;
    out.leakage2 = in.leakage2;
    for (const auto& [key, a] : in.amp) {
      if (a == 0.0) continue;
      std::uint32_t prev = ~0u;
      for (std::uint32_t lab : key) {
        if (lab == prev) continue;
        prev = lab;
        const int k = mode_of(lab);
        if (!mode_sel[k]) continue;
        const int d = d_of(lab);
        const int np = count(key, lab);
        for (const auto& [dprime, v] : cols[d]) {
          if (v == 0.0) continue;
          if (dprime == d) {
            out.amp[key] += a * v * static_cast<double>(np);
          } else {
            const std::uint32_t q = label(dprime, k);
            const OccKey moved = with(without(key, lab), q);
            out.amp[moved] += a * v *
                              std::sqrt(static_cast<double>(np) *
                                        (count(key, q) + 1.0));
          }
        }
      }
    }
    return out;
  }

  cplx inner(const FockState& x, const FockState& y) const {
    // iterate over the smaller support
    const FockState& a = x.amp.size() <= y.amp.size() ? x : y;
    const FockState& b = x.amp.size() <= y.amp.size() ? y : x;
    cplx s = 0.0;
    for (const auto& [key, av] : a.amp) {
      const auto it = b.amp.find(key);
      if (it == b.amp.end()) continue;
      s += (&a == &x) ? std::conj(av) * it->second
                      : std::conj(it->second) * av;
    }
    return s;
  }

  double norm(const FockState& s) const {
    double t = 0.0;
    for (const auto& [key, a] : s.amp) t += std::norm(a);
    return std::sqrt(t);
  }

 private:
  int d_dim_;
  std::vector<double> w_;
  int nmax_;
};

inline void add_scaled(FockState& dst, const FockState& src, cplx a) {
  for (const auto& [key, v] : src.amp) dst.amp[key] += a * v;
  dst.leakage2 += src.leakage2 * std::norm(a);
}

// ---------------------------------------------------------------------------

inline LieElement ladder_element(LadderGen g) {
  switch (g) {
    case LadderGen::H3: return LieElement::H(3);
    case LadderGen::Hp: return LieElement::H_plus();
    case LadderGen::Hm: return LieElement::H_minus();
    case LadderGen::F3: return LieElement::F(3);
    case LadderGen::Fp: return LieElement::F_plus();
    default: return LieElement::F_minus();
  }
}

class LevyRealization {
 public:
  LevyRealization(int lmax, ModeSpace modes, int nmax)
      : spec_(RepSpec::of(1.0, 0.0, lmax)),
        layout_(spec_),
        modes_(std::move(modes)),
        fock_(layout_.dim(), mode_weights(modes_), nmax),
        eta_(cocycle_c(lmax)) {
    for (int i = 0; i < 6; ++i) {
      const auto op =
          rep_operator(spec_, LieElement::unit(static_cast<Gen>(i)));
      rho_cols_[i] = to_columns(op.mat);
    }
  }

  const RepSpec& spec() const { return spec_; }
  const BasisLayout& layout() const { return layout_; }
  const ModeSpace& modes() const { return modes_; }
  const FockSpace& fock() const { return fock_; }
  const CocycleMap& eta() const { return eta_; }
  const PsiFunctional& psi() const { return psi_; }

  FockState vacuum() const { return fock_.vacuum(); }

  // The one-particle state v (x) 1_{mode}.
  FockState one_particle(const Vec& v, int mode) const {
    OneParticle f;
    for (int d = 0; d < layout_.dim(); ++d)
      if (v[d] != 0.0) f.entries.emplace_back(fock_.label(d, mode), v[d]);
    return fock_.create(f, fock_.vacuum());
  }

  // The symmetrization of (v1 (x) 1_{k1}) (x) (v2 (x) 1_{k2}), built directly
  // from the occupation-basis conversion (test oracle convenience).
  FockState symmetric_pair(const Vec& v1, int k1, const Vec& v2, int k2) const {
    FockState out;
    for (int d1 = 0; d1 < layout_.dim(); ++d1) {
      if (v1[d1] == 0.0) continue;
      const std::uint32_t p = fock_.label(d1, k1);
      for (int d2 = 0; d2 < layout_.dim(); ++d2) {
        if (v2[d2] == 0.0) continue;
        const std::uint32_t q = fock_.label(d2, k2);
        const cplx a = v1[d1] * v2[d2];
        const double wp = fock_.weight(p), wq = fock_.weight(q);
        OccKey key = FockSpace::with(FockSpace::with(OccKey{}, p), q);
        if (p == q)
          out.amp[key] += a * wp;
        else
          out.amp[key] += a * std::sqrt(wp * wq / 2.0);
      }
    }
    out.prune();
    return out;
  }

  FockState apply(const LieElement& x, const std::vector<int>& mode_ids,
                  const FockState& s) const {
    std::vector<bool> sel(fock_.n_modes(), false);
    for (int k : mode_ids) sel.at(k) = true;

    FockState out;
    out.leakage2 = s.leakage2;

    // conservation part
    const auto cols = combine_columns(x);
    {
      FockState part = fock_.conserve(cols, sel, strip(s));
      add_scaled(out, part, 1.0);  // add_scaled also carries part.leakage2
    }
    // creation part: eta(x) (x) chi_S
    {
      const OneParticle f = one_particle_vector(eta_(x), mode_ids);
      FockState part = fock_.create(f, strip(s));
      add_scaled(out, part, 1.0);
    }
    // annihilation part: eta(x*) (x) chi_S
    {
      const OneParticle f = one_particle_vector(eta_(involute(x)), mode_ids);
      FockState part = fock_.annihilate(f, strip(s));
      add_scaled(out, part, 1.0);
    }
    // scalar part: psi(x) * total length
    const cplx p = psi_(x) * modes_.total_weight(mode_ids);
    if (p != 0.0) add_scaled(out, strip(s), p);

    out.prune();
    return out;
  }

  FockState apply_quadratic(const std::vector<QuadTerm>& terms,
                            const std::vector<int>& mode_ids,
                            const FockState& s) const {
    FockState out;
    out.leakage2 = s.leakage2;
    for (const QuadTerm& term : terms) {
      const FockState inner = apply(ladder_element(term.right), mode_ids,
                                    strip(s));
      FockState outer = apply(ladder_element(term.left), mode_ids, inner);
      add_scaled(out, outer, term.coeff);
    }
    out.prune();
    return out;
  }

  // <Omega, j_st(x)^order Omega>; exact for order <= nmax.
  cplx vacuum_moment(const LieElement& x, const std::vector<int>& mode_ids,
                     int order) const {
    if (order > fock_.nmax())
      throw std::invalid_argument("vacuum_moment: order exceeds nmax");
    FockState s = vacuum();
    for (int i = 0; i < order; ++i) s = apply(x, mode_ids, s);
    const auto it = s.amp.find(OccKey{});
    return it == s.amp.end() ? cplx(0.0) : it->second;
  }

  double leakage_of_power(const LieElement& x,
                          const std::vector<int>& mode_ids, int order) const {
    FockState s = vacuum();
    for (int i = 0; i < order; ++i) s = apply(x, mode_ids, s);
    return std::sqrt(s.leakage2);
  }

 private:
  static std::vector<double> mode_weights(const ModeSpace& m) {
    std::vector<double> w(m.size());
    for (int k = 0; k < m.size(); ++k) w[k] = m.weight(k);
    return w;
  }

  static FockState strip(const FockState& s) {
    FockState out = s;
    out.leakage2 = 0.0;
    return out;
  }

  static std::vector<std::vector<std::pair<int, cplx>>> to_columns(
      const SparseMatrix& m) {
    std::vector<std::vector<std::pair<int, cplx>>> cols(m.cols());
    for (const Triplet& t : m.triplets()) cols[t.c].emplace_back(t.r, t.v);
    return cols;
  }

  std::vector<std::vector<std::pair<int, cplx>>> combine_columns(
      const LieElement& x) const {
    std::vector<std::vector<std::pair<int, cplx>>> cols(layout_.dim());
    for (int g = 0; g < 6; ++g) {
      const cplx c = x.coeff(static_cast<Gen>(g));
      if (c == 0.0) continue;
      for (int d = 0; d < layout_.dim(); ++d)
        for (const auto& [r, v] : rho_cols_[g][d])
          cols[d].emplace_back(r, c * v);
    }
    return cols;
  }

  OneParticle one_particle_vector(const Vec& v,
                                  const std::vector<int>& mode_ids) const {
    OneParticle f;
    for (int d = 0; d < layout_.dim(); ++d) {
      if (v[d] == 0.0) continue;
      for (int k : mode_ids) f.entries.emplace_back(fock_.label(d, k), v[d]);
    }
    return f;
  }

  RepSpec spec_;
  BasisLayout layout_;
  ModeSpace modes_;
  FockSpace fock_;
  CocycleMap eta_;
  PsiFunctional psi_;
  std::array<std::vector<std::vector<std::pair<int, cplx>>>, 6> rho_cols_;
};

// ---------------------------------------------------------------------------
// Levy-process axiom checks at truncation.

struct LevyAxiomReport {
  double increment_residual = 0.0;
  double disjoint_commutator_residual = 0.0;
  double factorization_residual = 0.0;
  double stationarity_residual = 0.0;
  double first_moment_max = 0.0;      // |<j(X)>| over generators (exact zero)
  double continuity_fit_residual = 0.0;  // zero-constant polynomial fit
  double moment_at_smallest_length = 0.0;
};

// Canonical interval set: [0,1/2) and [1/2,5/4) adjacent; [2,11/4) and
// [3,7/2) disjoint; [5,23/4) mirrors the length of interval 2 for the
// stationarity comparison.
inline LevyAxiomReport levy_axiom_checks(int lmax = 6, int nmax = 4) {
  if (nmax < 3)
    throw std::invalid_argument("levy_axiom_checks: need nmax >= 3");
  ModeSpace m;
  m.add(0.0, 0.5);
  m.add(0.5, 1.25);
  m.add(2.0, 2.75);
  m.add(3.0, 3.5);
  m.add(5.0, 5.75);
  const LevyRealization real(lmax, m, nmax);
  const FockSpace& fk = real.fock();

  const std::array<LieElement, 6> gens = {
      LieElement::H(3),      LieElement::H_plus(), LieElement::H_minus(),
      LieElement::F(3),      LieElement::F_plus(), LieElement::F_minus()};

  // a small basis of low-particle states
  std::vector<FockState> probes;
  probes.push_back(real.vacuum());
  probes.push_back(real.apply(LieElement::F_plus(), {0}, real.vacuum()));
  probes.push_back(real.apply(LieElement::F(3), {1}, probes[1]));
  probes.push_back(real.apply(LieElement::F_minus(), {2}, real.vacuum()));

  LevyAxiomReport rep;

  // (a) increments: j_su = j_st + j_tu with [s,u] the union of modes 0,1
  for (const LieElement& x : gens)
    for (const FockState& phi : probes) {
      FockState lhs = real.apply(x, {0, 1}, phi);
      FockState r1 = real.apply(x, {0}, phi);
      FockState r2 = real.apply(x, {1}, phi);
      add_scaled(lhs, r1, -1.0);
      add_scaled(lhs, r2, -1.0);
      rep.increment_residual = std::max(rep.increment_residual, fk.norm(lhs));
    }

  // (b) commutators across disjoint intervals, and mixed-moment
  // factorization <j_2(F3)^2 j_3(F3)^2> = <j_2(F3)^2><j_3(F3)^2>
  for (const LieElement& x : gens)
    for (const LieElement& y : gens)
      for (const FockState& phi : probes) {
        FockState xy = real.apply(x, {2}, real.apply(y, {3}, phi));
        const FockState yx = real.apply(y, {3}, real.apply(x, {2}, phi));
        add_scaled(xy, yx, -1.0);
        rep.disjoint_commutator_residual =
            std::max(rep.disjoint_commutator_residual, fk.norm(xy));
      }
  {
    const LieElement f3 = LieElement::F(3);
    FockState s = real.vacuum();
    s = real.apply(f3, {3}, s);
    s = real.apply(f3, {3}, s);
    s = real.apply(f3, {2}, s);
    s = real.apply(f3, {2}, s);
    const auto it = s.amp.find(OccKey{});
    const cplx mixed = it == s.amp.end() ? cplx(0.0) : it->second;
    const cplx prod = real.vacuum_moment(f3, {2}, 2) *
                      real.vacuum_moment(f3, {3}, 2);
    rep.factorization_residual = std::abs(mixed - prod);
  }

  // (c) stationarity: intervals 2 and 4 have equal length at different
  // positions; all moments agree
  for (const LieElement& x : gens)
    for (int n = 1; n <= nmax; ++n)
      rep.stationarity_residual =
          std::max(rep.stationarity_residual,
                   std::abs(real.vacuum_moment(x, {2}, n) -
                            real.vacuum_moment(x, {4}, n)));

  // (d) continuity: first moments vanish exactly; higher moments are
  // polynomials in the length with zero constant term, hence O(t-s)
  for (const LieElement& x : gens)
    rep.first_moment_max = std::max(
        rep.first_moment_max, std::abs(real.vacuum_moment(x, {0}, 1)));
  {
    const std::array<double, 3> lengths = {0.25, 0.5, 1.0};
    std::array<ModeSpace, 3> spaces;
    for (int i = 0; i < 3; ++i) spaces[i].add(0.0, lengths[i]);
    for (int n = 2; n <= std::min(nmax, 4); ++n) {
      std::array<double, 3> vals{};
      for (int i = 0; i < 3; ++i) {
        const LevyRealization r(lmax, spaces[i], nmax);
        vals[i] = r.vacuum_moment(LieElement::F(3), {0}, n).real();
      }
      // fit a1 t + a2 t^2 through the three samples
      double s11 = 0, s12 = 0, s22 = 0, b1 = 0, b2 = 0;
      for (int i = 0; i < 3; ++i) {
        const double t = lengths[i];
        s11 += t * t;
        s12 += t * t * t;
        s22 += t * t * t * t;
        b1 += t * vals[i];
        b2 += t * t * vals[i];
      }
      const double det = s11 * s22 - s12 * s12;
      const double a1 = (b1 * s22 - b2 * s12) / det;
      const double a2 = (s11 * b2 - s12 * b1) / det;
      for (int i = 0; i < 3; ++i) {
        const double t = lengths[i];
        rep.continuity_fit_residual =
            std::max(rep.continuity_fit_residual,
                     std::abs(vals[i] - a1 * t - a2 * t * t));
      }
      rep.moment_at_smallest_length =
          std::max(rep.moment_at_smallest_length, std::abs(vals[0]));
    }
  }
  return rep;
}

}  // namespace lorentz
