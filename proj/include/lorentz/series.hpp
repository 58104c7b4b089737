#pragma once

// Recurrence-sequence generators and the Raabe-Duhamel convergence
// classifier.  These establish, at desk scale:
//   - the preimage equation rho_10(F+) zeta = xi_{1,1} has no normalizable
//     solution (the candidate coefficient series diverges, alpha = 0),
//   - the weight vectors xi^+ (m0 = +1, killed by F-) and xi^- (m0 = -1,
//     killed by F+) are normalizable (alpha = 2 in the subsequence index),
//   - no other weight produces a normalizable kernel vector.
//
// Sequences are stored in log-modulus + phase form so that strongly divergent
// recurrences never overflow.

#include <functional>
#include <limits>

#include "lorentz/irrep.hpp"

namespace lorentz {

enum class Convergence { converges, diverges, inconclusive };

inline const char* name(Convergence c) {
  switch (c) {
    case Convergence::converges: return "converges";
    case Convergence::diverges: return "diverges";
    default: return "inconclusive";
  }
}

// ratio(k) = u_{k+1}/u_k in the classification index k.  For step-2
// recurrences k is the subsequence index (l = ell_start + 2k) and alpha-hat
// is the subsequence exponent; index_convention records this.
struct RatioSequence {
  std::function<double(long)> ratio;
  long start = 1;
  int step = 1;
  std::string index_convention = "n";
};

struct RaabeResult {
  Convergence classification = Convergence::inconclusive;
  double alpha_hat = 0.0;
  double fit_residual = 0.0;
  long window_lo = 0, window_hi = 0;
  std::string index_convention;
};

// Least-squares fit of k*(1 - ratio(k)) to alpha + b/k over the window.
inline RaabeResult raabe_classify(const RatioSequence& seq, long win_lo,
                                  long win_hi, double margin = 0.1) {
  win_lo = std::max(win_lo, seq.start);
  if (win_hi - win_lo + 1 < 10)
    throw std::invalid_argument("raabe_classify: window shorter than 10 points");
  double s11 = 0, s1k = 0, skk = 0, sf1 = 0, sfk = 0;
  double ss = 0;
  std::vector<double> fs;
  fs.reserve(win_hi - win_lo + 1);
  for (long k = win_lo; k <= win_hi; ++k) {
    const double r = seq.ratio(k);
    if (!(r > 0.0))
      throw std::domain_error("raabe_classify: nonpositive ratio in window");
    const double f = static_cast<double>(k) * (1.0 - r);
    const double ik = 1.0 / static_cast<double>(k);
    s11 += 1.0;
    s1k += ik;
    skk += ik * ik;
    sf1 += f;
    sfk += f * ik;
    fs.push_back(f);
  }
  const double det = s11 * skk - s1k * s1k;
  const double alpha = (sf1 * skk - sfk * s1k) / det;
  const double b = (s11 * sfk - s1k * sf1) / det;
  std::size_t i = 0;
  for (long k = win_lo; k <= win_hi; ++k, ++i) {
    const double pred = alpha + b / static_cast<double>(k);
    ss += (fs[i] - pred) * (fs[i] - pred);
  }
  RaabeResult res;
  res.alpha_hat = alpha;
  res.fit_residual = std::sqrt(ss / static_cast<double>(fs.size()));
  res.window_lo = win_lo;
  res.window_hi = win_hi;
  res.index_convention = seq.index_convention;
  if (alpha > 1.0 + margin)
    res.classification = Convergence::converges;
  else if (alpha < 1.0 - margin)
    res.classification = Convergence::diverges;
  else
    res.classification = Convergence::inconclusive;
  return res;
}

// ---------------------------------------------------------------------------
// Recurrence solutions over the shells of D_{1,0}.

// Coefficients x_l for l = ell_start, ell_start + step, ..., stored as
// log|x_l| plus a unit phase (phase 0 marks an exact zero).
class RecurrenceSolution {
 public:
  RecurrenceSolution(long ell_start, int step) : ell0_(ell_start), step_(step) {}

  long ell_start() const { return ell0_; }
  int step() const { return step_; }
  long size() const { return static_cast<long>(logmod_.size()); }
  long ell_at(long k) const { return ell0_ + step_ * k; }
  long last_ell() const { return ell_at(size() - 1); }

  void push(double logmod, cplx phase) {
    logmod_.push_back(logmod);
    phase_.push_back(phase);
  }
  void push_zero() { push(-std::numeric_limits<double>::infinity(), 0.0); }
  void push_value(cplx v) {
    if (v == 0.0)
      push_zero();
    else
      push(std::log(std::abs(v)), v / std::abs(v));
  }
  // x_{k} = r * x_{k-1} in the subsequence index
  void push_ratio_step(cplx r) {
    if (r == 0.0 || phase_.back() == 0.0) {
      push_zero();
      return;
    }
    push(logmod_.back() + std::log(std::abs(r)), phase_.back() * (r / std::abs(r)));
  }

  bool is_zero(long k) const { return phase_[k] == 0.0; }
  double logmod(long k) const { return logmod_[k]; }
  cplx phase(long k) const { return phase_[k]; }
  cplx value_at_ell(long ell) const {
    const long k = (ell - ell0_) / step_;
    if (k < 0 || k >= size() || ell_at(k) != ell) return 0.0;
    if (is_zero(k)) return 0.0;
    return std::exp(logmod_[k]) * phase_[k];
  }

  // |x_{k+1}|^2 / |x_k|^2 over nonzero entries
  double squared_ratio(long k) const {
    return std::exp(2.0 * (logmod_[k + 1] - logmod_[k]));
  }

  // Sum of |x_k|^2 over entries with ell <= ell_cap; +inf when the moduli
  // exceed the double range.
  double partial_sum_squares(long ell_cap) const {
    double s = 0.0;
    for (long k = 0; k < size() && ell_at(k) <= ell_cap; ++k) {
      if (is_zero(k)) continue;
      if (2.0 * logmod_[k] > 700.0)
        return std::numeric_limits<double>::infinity();
      s += std::exp(2.0 * logmod_[k]);
    }
    return s;
  }

  // ||tail beyond ell_split||^2 / ||x||^2, computed with a common rescaling
  // so that strongly divergent sequences do not overflow.
  double tail_fraction(long ell_split) const {
    double peak = -std::numeric_limits<double>::infinity();
    for (long k = 0; k < size(); ++k)
      if (!is_zero(k)) peak = std::max(peak, 2.0 * logmod_[k]);
    if (!std::isfinite(peak)) return 0.0;
    double head = 0.0, tail = 0.0;
    for (long k = 0; k < size(); ++k) {
      if (is_zero(k)) continue;
      const double t = std::exp(2.0 * logmod_[k] - peak);
      (ell_at(k) > ell_split ? tail : head) += t;
    }
    const double total = head + tail;
    return total > 0.0 ? tail / total : 0.0;
  }

  // Largest relative violation of x_{k+1} = r(ell) x_{k-1}-type generation,
  // recomputed from the stored ratio callback.
  double recurrence_fidelity(const std::function<cplx(long)>& step_ratio) const {
    double worst = 0.0;
    for (long k = 0; k + 1 < size(); ++k) {
      const cplx r = step_ratio(k);
      const cplx lhs = value_at_ell(ell_at(k + 1));
      const cplx rhs = r * value_at_ell(ell_at(k));
      const double scale = std::max({std::abs(lhs), std::abs(rhs), 1.0});
      if (std::isfinite(scale))
        worst = std::max(worst, std::abs(lhs - rhs) / scale);
    }
    return worst;
  }

  std::string note;  // metadata: seeds, forced zeros, obstructions

 private:
  long ell0_;
  int step_;
  std::vector<double> logmod_;
  std::vector<cplx> phase_;
};

// ---------------------------------------------------------------------------
// The coboundary preimage sequence: solving rho_10(F+) zeta = xi_{1,1} forces
// zeta = sum over even l of x_{l,0} xi_{l,0} with
//   x_{2,0} = -i sqrt(5/2),   x_{l,0} = -(C_{l-1}/C_l) x_{l-2,0}.

inline cplx coboundary_step_ratio(long ell) {  // x_ell / x_{ell-2}
  const RepSpec r10 = RepSpec::of(1.0, 0.0, static_cast<int>(ell) + 2);
  return -coeff_C(r10, HalfInt::whole(static_cast<int>(ell) - 1)) /
         coeff_C(r10, HalfInt::whole(static_cast<int>(ell)));
}

// |x_{l,0}|^2 / |x_{l-2,0}|^2 as the printed rational function of l.
inline double coboundary_squared_ratio(double l) {
  return ((l * l - 2.0 * l) * (4.0 * l * l - 1.0)) /
         ((l * l - 1.0) * (4.0 * l * l - 8.0 * l + 3.0));
}

inline RecurrenceSolution coboundary_preimage_sequence(long ell_max) {
  if (ell_max < 4)
    throw std::invalid_argument("coboundary_preimage_sequence: ell_max < 4");
  RecurrenceSolution s(2, 2);
  s.push_value(cplx(0, -std::sqrt(2.5)));
  for (long ell = 4; ell <= ell_max; ell += 2)
    s.push_ratio_step(coboundary_step_ratio(ell));
  s.note = "x_{2,0} = -i sqrt(5/2); even shells only";
  return s;
}

inline RatioSequence coboundary_ratio_sequence() {
  RatioSequence seq;
  seq.ratio = [](long k) {
    // subsequence index k maps to ell = 2k + 2
    return coboundary_squared_ratio(static_cast<double>(2 * k + 2));
  };
  seq.start = 1;
  seq.step = 2;
  seq.index_convention = "k with ell = 2k+2";
  return seq;
}

// ---------------------------------------------------------------------------
// Weight-vector recurrences: candidates xi = sum_l x_l xi_{l,m0} killed by
// F- (or F+).  Killed by F-:
//   x_{l+1} = - C_l sqrt((l-m0)(l-m0+1)) / (C_{l+1} sqrt((l+m0+1)(l+m0))) x_{l-1}
// Killed by F+ mirrors m0 -> -m0.

enum class KillDirection { killed_by_Fminus, killed_by_Fplus };

inline const char* name(KillDirection d) {
  return d == KillDirection::killed_by_Fminus ? "F-" : "F+";
}

namespace detail {

inline cplx weight_step_ratio(int m0, KillDirection dir, long ell) {
  const int m = dir == KillDirection::killed_by_Fminus ? m0 : -m0;
  const double l = static_cast<double>(ell);
  const double num = (l - m) * (l - m + 1.0);
  const double den = (l + m + 1.0) * (l + m);
  const RepSpec r10 = RepSpec::of(1.0, 0.0, static_cast<int>(ell) + 2);
  const cplx cl = coeff_C(r10, HalfInt::whole(static_cast<int>(ell)));
  const cplx cl1 = coeff_C(r10, HalfInt::whole(static_cast<int>(ell) + 1));
  if (den <= 0.0)
    throw std::domain_error("weight recurrence: vanishing ladder denominator");
  return -cl * std::sqrt(num) / (cl1 * std::sqrt(den));
}

}  // namespace detail

struct WeightSequence {
  RecurrenceSolution coeffs;       // over l = ell_min, ell_min+1, ..., step 1
  int m0 = 0;
  KillDirection direction = KillDirection::killed_by_Fminus;
  bool obstructed = false;         // bottom relations force everything to zero
  long ell_min = 1;
};

// The spec'd seeds: x_{ell_min} = 1, x_{ell_min+1} = 0; bottom relations can
// force the whole sequence to vanish (|m0| >= 2 toward the killing side).
inline WeightSequence weight_vector_sequence(int m0, KillDirection dir,
                                             long ell_max) {
  WeightSequence w{RecurrenceSolution(std::max(1L, std::labs(static_cast<long>(m0))), 1),
                   m0, dir, false, std::max(1L, std::labs(static_cast<long>(m0)))};
  const int ms = dir == KillDirection::killed_by_Fminus ? m0 : -m0;
  if (ms >= 2) {
    // the lowest two coefficients are forced to zero and the recurrence
    // propagates zero upward
    w.obstructed = true;
    for (long ell = w.ell_min; ell <= ell_max; ++ell) w.coeffs.push_zero();
    w.coeffs.note = "obstructed: bottom relations force x = 0";
    return w;
  }
  for (long ell = w.ell_min; ell <= ell_max; ++ell) {
    const long k = ell - w.ell_min;
    if (k == 0) {
      w.coeffs.push_value(1.0);
    } else if (k == 1) {
      w.coeffs.push_zero();
    } else if (w.coeffs.is_zero(k - 2)) {
      w.coeffs.push_zero();
    } else {
      // step in log space so divergent chains never overflow
      const cplx r = detail::weight_step_ratio(m0, dir, ell - 1);
      if (r == 0.0)
        w.coeffs.push_zero();
      else
        w.coeffs.push(w.coeffs.logmod(k - 2) + std::log(std::abs(r)),
                      w.coeffs.phase(k - 2) * (r / std::abs(r)));
    }
  }
  w.coeffs.note = "seeds x_min = 1, x_{min+1} = 0";
  return w;
}

// Classification ratio for the nonzero-parity subsequence of a weight vector.
inline RatioSequence weight_ratio_sequence(int m0, KillDirection dir) {
  const long ell_min = std::max(1L, std::labs(static_cast<long>(m0)));
  RatioSequence seq;
  seq.ratio = [m0, dir, ell_min](long k) {
    // subsequence l = ell_min + 2k; |x_{l+2}|^2/|x_l|^2 = |r(l+1)|^2
    const cplx r = detail::weight_step_ratio(m0, dir, ell_min + 2 * k + 1);
    return std::norm(r);
  };
  seq.start = 1;
  seq.step = 2;
  seq.index_convention = "k with ell = ell_min + 2k";
  return seq;
}

// ---------------------------------------------------------------------------
// Kernel scan: for each m0 report the dimension of normalizable solutions of
// rho_10(F-) xi = 0 (resp. F+) with H3-eigenvalue m0.

struct KernelScanRow {
  int m0 = 0;
  KillDirection direction = KillDirection::killed_by_Fminus;
  int kernel_dim = 0;
  bool obstructed = false;
  double alpha_hat = 0.0;
  Convergence classification = Convergence::inconclusive;
  double tail_fraction = 0.0;
  double kill_residual = 0.0;  // ||rho(F-+) xi|| / ||xi|| on the interior
};

// Builds the dense candidate over D_{1,0} at lmax and measures the kill
// residual on shells l <= lmax - 1.
inline double kernel_kill_residual(const WeightSequence& w, int lmax) {
  const RepSpec r10 = RepSpec::of(1.0, 0.0, lmax);
  const BasisLayout lay(r10);
  Vec xi(lay.dim(), 0.0);
  for (long ell = w.ell_min; ell <= lmax; ++ell)
    xi[lay.index(2 * static_cast<int>(ell), 2 * w.m0)] =
        w.coeffs.value_at_ell(ell);
  const double nx = norm2(xi);
  if (nx == 0.0) return 0.0;
  const LadderGen kill = w.direction == KillDirection::killed_by_Fminus
                             ? LadderGen::Fm
                             : LadderGen::Fp;
  const Vec img = rep_ladder(r10, kill).mat.apply(xi);
  return masked_norm2(img, lay.interior_mask(1)) / nx;
}

inline std::vector<KernelScanRow> kernel_scan(KillDirection dir, int m0_lo,
                                              int m0_hi, int lmax,
                                              long window_lo = 100,
                                              long window_hi = 10000) {
  if (lmax < 20) throw std::invalid_argument("kernel_scan: lmax < 20");
  std::vector<KernelScanRow> rows;
  for (int m0 = m0_lo; m0 <= m0_hi; ++m0) {
    KernelScanRow row;
    row.m0 = m0;
    row.direction = dir;
    const WeightSequence w = weight_vector_sequence(m0, dir, lmax);
    row.obstructed = w.obstructed;
    if (!w.obstructed) {
      const RatioSequence seq = weight_ratio_sequence(m0, dir);
      // the classifier window is given in ell; convert to the subsequence
      const long k_lo = std::max(1L, (window_lo - w.ell_min) / 2);
      const long k_hi = std::max(k_lo + 10, (window_hi - w.ell_min) / 2);
      const RaabeResult rr = raabe_classify(seq, k_lo, k_hi);
      row.alpha_hat = rr.alpha_hat;
      row.classification = rr.classification;
      row.tail_fraction = w.coeffs.tail_fraction(lmax / 2);
      if (rr.classification == Convergence::converges &&
          row.tail_fraction <= 0.01) {
        row.kill_residual = kernel_kill_residual(w, lmax);
        row.kernel_dim =
            row.kill_residual <= 1e-10 ? 1 : 0;
      }
    }
    rows.push_back(row);
  }
  return rows;
}

}  // namespace lorentz
