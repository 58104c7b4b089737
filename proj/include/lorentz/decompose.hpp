#pragma once

// Decomposition of the restriction of rho_{1,0} to so(3) and so(2,1) at
// finite truncation:
//
//   so(3):  each shell l carries pi_l exactly; multiplicities are counted
//           from the H3 eigenvalue profile.
//
//   so(2,1): the discrete-series chains are generated cyclically from the
//           weight witnesses xi^+ (H3 = +1, killed by F-) and xi^-
//           (H3 = -1, killed by F+).  K = H3^2 - (F+F- + F-F+)/2 commutes
//           with H3 and preserves the parity of l, so it is analyzed per
//           (m, parity) block, where it is real symmetric tridiagonal.
//
// Truncation behavior of the K blocks, which the report makes explicit: in
// each block of the chain parity the discrete-series member contributes an
// isolated top eigenvalue near t(t-1) = 0, separated from the continuum
// below roughly -1/4; the separation degrades as |m| approaches the shell
// cutoff (the window max(1,|m|) <= l <= lmax-2 becomes too short to resolve
// the chain).  Blocks are classified as resolved or unresolved accordingly,
// and in the head zone the spectral identification is validated against the
// cyclically generated chain vectors via eigenvector overlaps.

#include "lorentz/eigensolve.hpp"
#include "lorentz/series.hpp"
#include "lorentz/subalgebra.hpp"

namespace lorentz {

// ------------------------------------------------------------- so(3) ------

struct So3Report {
  int lmax = 0;
  std::vector<int> mult;       // multiplicity of pi_s for s = 0..lmax
  int computed_start = 0;      // smallest s with mult(s) > 0
  int reference_start = 3;     // stated starting spin, kept for comparison
  bool start_mismatch = false;
  double max_shell_residual = 0.0;  // entrywise shell match against pi_l
};

inline So3Report so3_multiplicities(int lmax) {
  if (lmax < 3) throw std::invalid_argument("so3_multiplicities: lmax < 3");
  const RepSpec spec = RepSpec::of(1.0, 0.0, lmax);
  const BasisLayout lay(spec);
  So3Report rep;
  rep.lmax = lmax;

  // eigenvalue counting on the H3 diagonal
  const SparseMatrix h3 = rep_ladder(spec, LadderGen::H3).mat;
  std::vector<int> count(lmax + 2, 0);
  for (int i = 0; i < lay.dim(); ++i) {
    const double m = h3.at(i, i).real();
    const int mi = static_cast<int>(std::lround(m));
    if (mi >= 0 && mi <= lmax + 1) ++count[mi];
  }
  rep.mult.assign(lmax + 1, 0);
  for (int s = 0; s <= lmax; ++s) rep.mult[s] = count[s] - count[s + 1];
  rep.computed_start = 0;
  while (rep.computed_start <= lmax && rep.mult[rep.computed_start] == 0)
    ++rep.computed_start;
  rep.start_mismatch = rep.computed_start != rep.reference_start;

  // each shell reproduces pi_l entrywise
  for (int l = 1; l <= lmax; ++l) {
    const std::vector<int> ids = lay.shell_indices(2 * l);
    for (LadderGen g : {LadderGen::H3, LadderGen::Hp, LadderGen::Hm}) {
      const SparseMatrix shell = rep_ladder(spec, g).mat.sub_block(ids, ids);
      const SparseMatrix ref = so3_ladder(HalfInt::whole(l), g).mat;
      rep.max_shell_residual =
          std::max(rep.max_shell_residual, (shell - ref).max_abs());
    }
  }
  return rep;
}

// ------------------------------------------------------------ so(2,1) -----

struct WeightWitness {
  Vec coeffs;  // over D_{1,0} at lmax, unit norm
  int m0 = 0;
  KillDirection direction = KillDirection::killed_by_Fminus;
  double h3_residual = 0.0;
  double kill_residual = 0.0;
  double tail_fraction = 0.0;
};

// m0 = +1 builds xi^+ (killed by F-), m0 = -1 builds xi^- (killed by F+).
inline WeightWitness so21_weight_witness(int lmax, int m0) {
  if (lmax < 20) throw std::invalid_argument("so21_weight_witness: lmax < 20");
  if (m0 != 1 && m0 != -1)
    throw std::invalid_argument("so21_weight_witness: m0 must be +-1");
  const KillDirection dir = m0 == 1 ? KillDirection::killed_by_Fminus
                                    : KillDirection::killed_by_Fplus;
  const WeightSequence w = weight_vector_sequence(m0, dir, lmax);
  if (w.obstructed)
    throw std::runtime_error("so21_weight_witness: unexpected obstruction");

  const RepSpec spec = RepSpec::of(1.0, 0.0, lmax);
  const BasisLayout lay(spec);
  WeightWitness wit;
  wit.m0 = m0;
  wit.direction = dir;
  wit.coeffs.assign(lay.dim(), 0.0);
  for (long ell = 1; ell <= lmax; ++ell)
    wit.coeffs[lay.index(2 * static_cast<int>(ell), 2 * m0)] =
        w.coeffs.value_at_ell(ell);
  const double n = norm2(wit.coeffs);
  scale(wit.coeffs, 1.0 / n);
  wit.tail_fraction = w.coeffs.tail_fraction(lmax / 2);

  const SparseMatrix h3 = rep_ladder(spec, LadderGen::H3).mat;
  Vec h3v = h3.apply(wit.coeffs);
  axpy(cplx(-m0), wit.coeffs, h3v);
  wit.h3_residual = norm2(h3v);

  const LadderGen kill =
      dir == KillDirection::killed_by_Fminus ? LadderGen::Fm : LadderGen::Fp;
  const Vec img = rep_ladder(spec, kill).mat.apply(wit.coeffs);
  wit.kill_residual = masked_norm2(img, lay.interior_mask(1));
  return wit;
}

namespace detail {

inline void mask_above_shell(const BasisLayout& lay, int twol_cap, Vec& v) {
  for (int i = 0; i < lay.dim(); ++i)
    if (lay.label(i).first > twol_cap) v[i] = 0.0;
}

// Solves (T - sigma) x = b for symmetric tridiagonal T with partial
// pivoting; bandwidth grows to 2 in the eliminated system.
inline std::vector<double> shifted_tridiagonal_solve(
    const std::vector<double>& diag, const std::vector<double>& off,
    double sigma, std::vector<double> b) {
  const int n = static_cast<int>(diag.size());
  std::vector<double> d(n), e(std::max(0, n - 1)), f(std::max(0, n - 2), 0.0);
  std::vector<double> sub(std::max(0, n - 1));
  for (int i = 0; i < n; ++i) d[i] = diag[i] - sigma;
  for (int i = 0; i + 1 < n; ++i) {
    e[i] = off[i];
    sub[i] = off[i];
  }
  for (int k = 0; k + 1 < n; ++k) {
    if (std::abs(sub[k]) > std::abs(d[k])) {
      std::swap(d[k], sub[k]);
      const double tmp_e = e[k];
      e[k] = d[k + 1];
      d[k + 1] = tmp_e;
      if (k + 2 < n) {
        f[k] = e[k + 1];
        e[k + 1] = 0.0;
      }
      std::swap(b[k], b[k + 1]);
    }
    if (d[k] == 0.0) d[k] = 1e-300;
    const double mult = sub[k] / d[k];
    d[k + 1] -= mult * e[k];
    if (k + 2 < n) e[k + 1] -= mult * (k < n - 2 ? f[k] : 0.0);
    b[k + 1] -= mult * b[k];
  }
  if (d[n - 1] == 0.0) d[n - 1] = 1e-300;
  std::vector<double> x(n);
  for (int i = n - 1; i >= 0; --i) {
    double s = b[i];
    if (i + 1 < n) s -= e[i] * x[i + 1];
    if (i + 2 < n) s -= f[i] * x[i + 2];
    x[i] = s / d[i];
  }
  return x;
}

// Eigenvector of a symmetric tridiagonal matrix for an isolated eigenvalue,
// by inverse iteration.
inline std::vector<double> tridiagonal_eigenvector(
    const std::vector<double>& diag, const std::vector<double>& off,
    double lambda) {
  const int n = static_cast<int>(diag.size());
  std::vector<double> v(n, 1.0 / std::sqrt(static_cast<double>(n)));
  const double shift = lambda + 1e-10 * (1.0 + std::abs(lambda));
  for (int it = 0; it < 4; ++it) {
    v = shifted_tridiagonal_solve(diag, off, shift, std::move(v));
    double nn = 0.0;
    for (double x : v) nn += x * x;
    nn = std::sqrt(nn);
    for (double& x : v) x /= nn;
  }
  return v;
}

}  // namespace detail

struct ChainMatchReport {
  int levels_requested = 0;
  int levels_built = 0;
  bool escaped = false;  // interior exhausted before the requested depth
  // max | <e_j, O e_n> - pi_1 reference | over built levels
  double max_entry_diff = 0.0;        // over O in {H3, F+, F-}
  double max_h3_entry_diff = 0.0;     // H3 elements alone (exact by grading)
  std::vector<double> per_level_diff;
  std::vector<Vec> chain;  // orthonormal chain vectors
};

// Generates e_{n+1} ~ raising e_n (F+ for the plus family, F- for the minus
// family), masking one boundary shell per application, and compares matrix
// elements against pi^{+-}_1.  The achievable agreement is limited by the
// truncated 1/l tail of the witness, i.e. O(1/lmax); the report carries the
// measured value.
inline ChainMatchReport so21_component_match(const WeightWitness& wit,
                                             int lmax, int levels) {
  const bool plus = wit.m0 == 1;
  const RepSpec spec = RepSpec::of(1.0, 0.0, lmax);
  const BasisLayout lay(spec);
  const SparseMatrix h3 = rep_ladder(spec, LadderGen::H3).mat;
  const SparseMatrix fp = rep_ladder(spec, LadderGen::Fp).mat;
  const SparseMatrix fm = rep_ladder(spec, LadderGen::Fm).mat;
  const SparseMatrix& raise = plus ? fp : fm;

  ChainMatchReport rep;
  rep.levels_requested = levels;
  rep.chain.push_back(wit.coeffs);
  for (int n = 0; n + 1 < levels; ++n) {
    if (lmax - n - 1 <= std::abs(wit.m0) + n + 2) {
      rep.escaped = true;
      break;
    }
    Vec next = raise.apply(rep.chain.back());
    detail::mask_above_shell(lay, 2 * (lmax - n - 1), next);
    for (const Vec& prev : rep.chain) axpy(-dot(prev, next), prev, next);
    const double nn = norm2(next);
    if (nn == 0.0) {
      rep.escaped = true;
      break;
    }
    scale(next, 1.0 / nn);
    rep.chain.push_back(std::move(next));
  }
  rep.levels_built = static_cast<int>(rep.chain.size());

  // pi^+-_1 reference elements: H3 e_n = +-(n+1) e_n,
  // raise e_n = sqrt((n+1)(n+2)) e_{n+1}, lower e_n = sqrt(n(n+1)) e_{n-1}.
  // The chain vectors are already interior-masked, so the images are used
  // unmasked: H3 is diagonal (exact), and the corrupted boundary shells of
  // the boost images overlap the chain tails only at O(1/lmax).
  const SparseMatrix& lower = plus ? fm : fp;
  rep.per_level_diff.assign(rep.levels_built, 0.0);
  for (int n = 0; n < rep.levels_built; ++n) {
    const Vec h3v = h3.apply(rep.chain[n]);
    const Vec up = raise.apply(rep.chain[n]);
    const Vec dn = lower.apply(rep.chain[n]);
    for (int j = 0; j < rep.levels_built; ++j) {
      const double sign = plus ? 1.0 : -1.0;
      const cplx h3_ref = j == n ? cplx(sign * (n + 1.0)) : cplx(0.0);
      const cplx up_ref =
          j == n + 1 ? cplx(std::sqrt((n + 1.0) * (n + 2.0))) : cplx(0.0);
      const cplx dn_ref =
          j == n - 1 ? cplx(std::sqrt(n * (n + 1.0))) : cplx(0.0);
      const double dh = std::abs(dot(rep.chain[j], h3v) - h3_ref);
      const double d = std::max({dh, std::abs(dot(rep.chain[j], up) - up_ref),
                                 std::abs(dot(rep.chain[j], dn) - dn_ref)});
      rep.max_h3_entry_diff = std::max(rep.max_h3_entry_diff, dh);
      rep.per_level_diff[n] = std::max(rep.per_level_diff[n], d);
      rep.max_entry_diff = std::max(rep.max_entry_diff, d);
    }
  }
  return rep;
}

// ---------------------------------------------------------------------------

struct ChainBlockEstimate {
  int m = 0;
  double eigenvalue = 0.0;  // section top of the chain-parity block
  bool resolved = false;    // separated above the continuum edge
};

struct RestClassifyReport {
  int lmax = 0;
  int window = 0;  // coverage claim over |m| <= window = lmax - 2
  // K-block quality: realness, symmetry, tridiagonality
  double k_hermiticity_residual = 0.0;
  // D_R spectrum on the interior blocks (chain tops removed), ascending
  std::vector<double> rest_eigenvalues;
  double rest_max_eigenvalue = 0.0;
  double continuum_edge_reference = -0.25;  // third family with mu = 0
  // chain identification per block
  std::vector<ChainBlockEstimate> chain_estimates;
  int resolved_chain_blocks = 0;
  int unresolved_chain_blocks = 0;
  double max_resolved_chain_deviation = 0.0;  // max |eigenvalue| if resolved
  // head-zone validation: spectral top vs cyclic chain vectors
  double chain_overlap_min = 1.0;
  double spectral_orthogonality_residual = 0.0;
  // H3 coverage of D_R over the full truncated space
  bool h3_covers_window = false;
  std::vector<int> h3_missing;
  // dimension bookkeeping
  long total_dim = 0, chain_dim = 0, rest_dim = 0;
  long interior_dim = 0, chain_blocks = 0;
  bool dims_consistent = false;
  // kernel scans over m0 in [-3,3], both directions
  std::vector<KernelScanRow> kernel_rows;
};

inline RestClassifyReport so21_rest_classify(int lmax, int head_m = 8) {
  if (lmax < 24) throw std::invalid_argument("so21_rest_classify: lmax < 24");
  const RepSpec spec = RepSpec::of(1.0, 0.0, lmax);
  const BasisLayout lay(spec);
  const SparseMatrix h3 = rep_ladder(spec, LadderGen::H3).mat;
  const SparseMatrix fp = rep_ladder(spec, LadderGen::Fp).mat;
  const SparseMatrix fm = rep_ladder(spec, LadderGen::Fm).mat;
  const SparseMatrix K = h3 * h3 - cplx(0.5) * (fp * fm + fm * fp);

  RestClassifyReport rep;
  rep.lmax = lmax;
  rep.window = lmax - 2;
  const int l_int = lmax - 2;

  // cyclic head-zone chains for the overlap validation
  const int head = std::min(head_m, lmax / 2 - 3);
  const WeightWitness plus = so21_weight_witness(lmax, +1);
  const WeightWitness minus = so21_weight_witness(lmax, -1);
  const ChainMatchReport chain_p = so21_component_match(plus, lmax, head);
  const ChainMatchReport chain_m = so21_component_match(minus, lmax, head);

  for (int m = -l_int; m <= l_int; ++m) {
    for (int parity = 0; parity <= 1; ++parity) {
      std::vector<int> ids;
      for (int l = std::max(1, std::abs(m)); l <= l_int; ++l)
        if (l % 2 == parity) ids.push_back(lay.index(2 * l, 2 * m));
      if (ids.empty()) continue;
      const int n = static_cast<int>(ids.size());

      const SparseMatrix block = K.sub_block(ids, ids);
      std::vector<double> diag(n), off(std::max(0, n - 1));
      for (int i = 0; i < n; ++i) {
        const cplx d = block.at(i, i);
        diag[i] = d.real();
        rep.k_hermiticity_residual =
            std::max(rep.k_hermiticity_residual, std::abs(d.imag()));
      }
      for (int i = 0; i + 1 < n; ++i) {
        const cplx a = block.at(i, i + 1);
        const cplx b = block.at(i + 1, i);
        off[i] = a.real();
        rep.k_hermiticity_residual =
            std::max({rep.k_hermiticity_residual, std::abs(a - std::conj(b)),
                      std::abs(a.imag())});
      }
      for (const Triplet& t : block.triplets())
        if (std::abs(t.r - t.c) > 1)
          rep.k_hermiticity_residual =
              std::max(rep.k_hermiticity_residual, std::abs(t.v));

      std::vector<double> ev = tridiagonal_eigenvalues(diag, off);

      rep.interior_dim += n;
      const bool chain_parity =
          std::abs(m) >= 1 && (std::abs(m) % 2 == parity);
      if (!chain_parity) {
        rep.rest_eigenvalues.insert(rep.rest_eigenvalues.end(), ev.begin(),
                                    ev.end());
        continue;
      }

      // the chain member contributes the section's top eigenvalue; one-shell
      // blocks at the window edge consist of the chain member alone
      rep.chain_blocks += 1;
      ChainBlockEstimate est;
      est.m = m;
      est.eigenvalue = ev.back();
      est.resolved = n >= 2 && est.eigenvalue > rep.continuum_edge_reference;
      (est.resolved ? rep.resolved_chain_blocks
                    : rep.unresolved_chain_blocks) += 1;
      if (est.resolved)
        rep.max_resolved_chain_deviation = std::max(
            rep.max_resolved_chain_deviation, std::abs(est.eigenvalue));
      rep.chain_estimates.push_back(est);
      if (n < 2) continue;

      if (std::abs(m) <= head &&
          std::abs(m) <=
              (m > 0 ? chain_p.levels_built : chain_m.levels_built)) {
        // overlap of the section's top eigenvector with the cyclic chain
        const std::vector<double> v =
            detail::tridiagonal_eigenvector(diag, off, ev.back());
        const Vec& e = m > 0 ? chain_p.chain[m - 1] : chain_m.chain[-m - 1];
        cplx ov = 0.0;
        double en = 0.0;
        for (int i = 0; i < n; ++i) {
          ov += v[i] * e[ids[i]];
          en += std::norm(e[ids[i]]);
        }
        if (en > 0.0) {
          rep.chain_overlap_min =
              std::min(rep.chain_overlap_min, std::abs(ov) / std::sqrt(en));
        }
        // spectral D_R directions are orthogonal to the section top; verify
        // on the next eigenvector down
        if (n >= 2) {
          const std::vector<double> v2 =
              detail::tridiagonal_eigenvector(diag, off, ev[n - 2]);
          double o12 = 0.0;
          for (int i = 0; i < n; ++i) o12 += v[i] * v2[i];
          rep.spectral_orthogonality_residual =
              std::max(rep.spectral_orthogonality_residual, std::abs(o12));
        }
      }

      rep.rest_eigenvalues.insert(rep.rest_eigenvalues.end(), ev.begin(),
                                  ev.end() - 1);
    }
  }

  std::sort(rep.rest_eigenvalues.begin(), rep.rest_eigenvalues.end());
  rep.rest_max_eigenvalue =
      rep.rest_eigenvalues.empty() ? 0.0 : rep.rest_eigenvalues.back();

  // H3 coverage from the matrix diagonal over the full truncated space
  std::vector<long> count(2 * lmax + 1, 0);
  for (int i = 0; i < lay.dim(); ++i) {
    const int m = static_cast<int>(std::lround(h3.at(i, i).real()));
    count[m + lmax] += 1;
  }
  rep.total_dim = lay.dim();
  rep.chain_dim = 2 * lmax;  // one chain vector at every level m != 0
  for (int m = -rep.window; m <= rep.window; ++m) {
    const long rest = count[m + lmax] - (m != 0 ? 1 : 0);
    if (rest < 1) rep.h3_missing.push_back(m);
  }
  rep.h3_covers_window = rep.h3_missing.empty();
  rep.rest_dim = rep.total_dim - rep.chain_dim;
  long recount = 0;
  for (long c : count) recount += c;
  rep.dims_consistent =
      recount == rep.total_dim &&
      rep.rest_dim + rep.chain_dim == rep.total_dim &&
      static_cast<long>(rep.rest_eigenvalues.size()) + rep.chain_blocks ==
          rep.interior_dim;

  // kernel scans
  for (KillDirection dir :
       {KillDirection::killed_by_Fminus, KillDirection::killed_by_Fplus}) {
    const auto rows = kernel_scan(dir, -3, 3, std::min(lmax, 200));
    rep.kernel_rows.insert(rep.kernel_rows.end(), rows.begin(), rows.end());
  }
  return rep;
}

}  // namespace lorentz
