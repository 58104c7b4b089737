// Acceptance suite: one pass/fail line per criterion, each pinned to its
// stated tolerance and time budget.  Exit code 0 iff every criterion passes.

#include <lorentz/suites.hpp>

#include <chrono>
#include <cstdio>
#include <functional>

#include "oracle_dense_fock.hpp"

using namespace lorentz;

namespace {

struct Outcome {
  bool pass = true;
  std::vector<std::string> details;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      details.push_back("FAILED: " + what);
    }
  }
  void note(const std::string& what) { details.push_back(what); }
};

std::vector<RepSpec> acceptance_specs(int lmax) {
  return {RepSpec::of(1.0, 0.0, lmax), RepSpec::of(0.0, cplx(0, 1), lmax),
          RepSpec::of(0.5, cplx(0, 2), lmax), RepSpec::of(0.0, 0.5, lmax)};
}

const std::array<LieElement, 6>& primitives() {
  static const std::array<LieElement, 6> p = {
      LieElement::H(1), LieElement::H(2), LieElement::H(3),
      LieElement::F(1), LieElement::F(2), LieElement::F(3)};
  return p;
}

std::string fmt(double v) { return format_double(v); }

// criterion 1 ---------------------------------------------------------------
Outcome structure_suite() {
  Outcome out;
  const double anti = antisymmetry_residual();
  const double jac = jacobi_residual();
  const double star = star_bracket_residual();
  out.require(anti == 0.0, "antisymmetry residual " + fmt(anti) + " != 0");
  out.require(jac == 0.0, "jacobi residual " + fmt(jac) + " != 0");
  out.require(star == 0.0, "star-compatibility residual " + fmt(star) + " != 0");
  return out;
}

// criterion 2 ---------------------------------------------------------------
Outcome representation_suite() {
  Outcome out;
  for (const RepSpec& spec : acceptance_specs(40)) {
    double comm = 0.0;
    const auto& prim = primitives();
    for (int a = 0; a < 6; ++a)
      for (int b = a + 1; b < 6; ++b)
        comm = std::max(comm,
                        commutator_closure_residual(spec, prim[a], prim[b]));
    out.require(comm <= 1e-10, "commutator closure " + fmt(comm) +
                                   " > 1e-10 for l0=" + spec.l0.to_string());
    double adj = 0.0;
    for (const LieElement& x :
         {LieElement::H_plus(), LieElement::F_plus(), LieElement::F(3),
          LieElement::H(3)})
      adj = std::max(adj, adjointness_residual(rep_operator(spec, x),
                                               rep_operator(spec, involute(x))));
    out.require(adj <= 1e-12, "adjointness " + fmt(adj) + " > 1e-12 for l0=" +
                                  spec.l0.to_string());
  }
  return out;
}

// criterion 3 ---------------------------------------------------------------
Outcome casimir_suite() {
  Outcome out;
  for (const RepSpec& spec : acceptance_specs(40)) {
    const BasisLayout lay(spec);
    for (CasimirKind k : {CasimirKind::J1, CasimirKind::J2}) {
      const cplx ref = casimir_reference_scalar(spec, k);
      const double res = scalar_action_residual(casimir(spec, k), lay, ref);
      out.require(res <= 1e-9,
                  std::string(k == CasimirKind::J1 ? "J1" : "J2") +
                      " scalar residual " + fmt(res) + " > 1e-9 for l0=" +
                      spec.l0.to_string());
    }
  }
  // rho_10 gives zero for both
  const RepSpec r10 = RepSpec::of(1.0, 0.0, 40);
  const BasisLayout lay(r10);
  for (CasimirKind k : {CasimirKind::J1, CasimirKind::J2}) {
    const cplx ref = casimir_reference_scalar(r10, k);
    out.require(std::abs(ref) == 0.0, "rho_10 reference scalar is not zero");
    out.require(scalar_action_residual(casimir(r10, k), lay, 0.0) <= 1e-9,
                "rho_10 Casimir does not vanish");
  }
  return out;
}

// criterion 4 ---------------------------------------------------------------
Outcome block_decomposition_suite() {
  Outcome out;
  const int lmax = 40;
  const RepSpec r01 = RepSpec::of(0.0, 1.0, lmax);
  const RepSpec r10 = RepSpec::of(1.0, 0.0, lmax);
  const BasisLayout lay01(r01);
  Vec xi00(lay01.dim(), 0.0);
  xi00[lay01.index(0, 0)] = 1.0;
  std::vector<int> ids;
  for (int i = 1; i < lay01.dim(); ++i) ids.push_back(i);
  double annih = 0.0, dist = 0.0;
  for (const LieElement& x : primitives()) {
    const SparseMatrix m01 = rep_operator(r01, x).mat;
    annih = std::max(annih, norm2(m01.apply(xi00)));
    dist = std::max(dist, (m01.sub_block(ids, ids) -
                           rep_operator(r10, x).mat)
                              .max_abs());
  }
  out.require(annih <= 1e-12,
              "xi_00 annihilation residual " + fmt(annih) + " > 1e-12");
  out.require(dist <= 1e-12,
              "complementary block distance " + fmt(dist) + " > 1e-12");
  return out;
}

// criterion 5 ---------------------------------------------------------------
Outcome cocycle_suite() {
  Outcome out;
  const int lmax = 40;
  const SchurmannTriple triple = canonical_triple(lmax);
  const CocycleReport coc = verify_cocycle_identity(triple);
  out.require(coc.max_residual <= 1e-12, "cocycle identity residual " +
                                             fmt(coc.max_residual) +
                                             " > 1e-12");
  const CocycleReport psi = verify_psi_relation(triple);
  out.require(psi.max_residual <= 1e-12,
              "psi relation residual " + fmt(psi.max_residual) + " > 1e-12");

  const BasisLayout lay(triple.spec);
  const std::vector<bool> support = lay.interior_mask(3);
  std::mt19937 rng(2024);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  double worst = 0.0;
  for (int trial = 0; trial < 20; ++trial) {
    Vec v(lay.dim(), 0.0);
    for (int i = 0; i < lay.dim(); ++i)
      if (support[i]) v[i] = cplx(u(rng), u(rng));
    scale(v, 1.0 / norm2(v));
    SchurmannTriple t;
    t.spec = triple.spec;
    t.eta = coboundary(triple.spec, v);
    worst = std::max(worst, verify_cocycle_identity(t).max_residual);
  }
  out.require(worst <= 1e-10, "random-coboundary cocycle residual " +
                                  fmt(worst) + " > 1e-10");
  return out;
}

// criterion 6 ---------------------------------------------------------------
Outcome noncoboundary_suite() {
  Outcome out;
  const RaabeResult r = raabe_classify(coboundary_ratio_sequence(), 49, 4999);
  out.require(r.classification == Convergence::diverges,
              "classifier did not report divergence");
  out.require(std::abs(r.alpha_hat) <= 0.05,
              "alpha-hat " + fmt(r.alpha_hat) + " outside [-0.05, 0.05]");
  const RecurrenceSolution s = coboundary_preimage_sequence(10000);
  const double first = std::norm(s.value_at_ell(2));
  const double sum = s.partial_sum_squares(10000);
  out.require(sum > 10.0 * first,
              "partial sums flatten out: " + fmt(sum) + " vs first term " +
                  fmt(first));
  out.note("alpha_hat = " + fmt(r.alpha_hat) + ", partial sum at l=1e4 is " +
           fmt(sum));
  return out;
}

// criterion 7 ---------------------------------------------------------------
Outcome remark_limit_suite() {
  Outcome out;
  const std::vector<double> seq = {0.9,    0.99,       0.999,     0.9999,
                                   1 - 1e-5, 1 - 1e-6, 1 - 1e-7};
  const RemarkLimitReport rep = remark_limit_check(seq, 40);
  for (const RemarkLimitRow& row : rep.rows)
    out.require(row.max_cocycle_distance <= 1e-12,
                "cocycle value mismatch " + fmt(row.max_cocycle_distance) +
                    " at l1 = " + fmt(row.l1));
  out.require(rep.rows.back().block_distance <= 1e-6,
              "operator block distance " + fmt(rep.rows.back().block_distance) +
                  " > 1e-6 at 1 - l1 = 1e-7");
  out.note("final block distance " + fmt(rep.rows.back().block_distance));
  return out;
}

// criterion 8 ---------------------------------------------------------------
Outcome fock_suite() {
  Outcome out;
  const int lmax = 10, nmax = 4;
  ModeSpace modes;
  modes.add(0.0, 1.0);  // length 1
  modes.add(2.0, 2.5);  // length 1/2
  const LevyRealization real(lmax, modes, nmax);
  const FockSpace& fk = real.fock();
  const BasisLayout& lay = real.layout();

  // first-order vacuum actions
  for (const LieElement& x :
       {LieElement::H(3), LieElement::H_plus(), LieElement::H_minus()}) {
    const double n = fk.norm(real.apply(x, {0}, real.vacuum()));
    out.require(n == 0.0, "j(H)Omega != 0 exactly, norm " + fmt(n));
  }
  for (int mode : {0, 1}) {
    Vec e3(lay.dim(), 0.0), ep(lay.dim(), 0.0), em(lay.dim(), 0.0);
    e3[lay.index(2, 0)] = -1.0 / std::sqrt(2.0);
    ep[lay.index(2, 2)] = 1.0;
    em[lay.index(2, -2)] = -1.0;
    const std::array<std::pair<LieElement, Vec>, 3> expected = {
        std::make_pair(LieElement::F(3), e3),
        std::make_pair(LieElement::F_plus(), ep),
        std::make_pair(LieElement::F_minus(), em)};
    for (const auto& [x, v] : expected) {
      FockState diff = real.one_particle(v, mode);
      add_scaled(diff, real.apply(x, {mode}, real.vacuum()), -1.0);
      out.require(fk.norm(diff) <= 1e-14,
                  "first-order boost display off by " + fmt(fk.norm(diff)));
    }
  }

  // j(J2) Omega = 0
  for (int mode : {0, 1}) {
    const double n = fk.norm(real.apply_quadratic(
        casimir_quadratic_terms(CasimirKind::J2), {mode}, real.vacuum()));
    out.require(n <= 1e-12, "j(J2)Omega norm " + fmt(n) + " > 1e-12");
  }

  // j(J1) Omega against the displayed coefficients (-(t-s), sqrt2, sqrt2,
  // -sqrt2)
  for (int mode : {0, 1}) {
    const double g = real.modes().weight(mode);
    const FockState got = real.apply_quadratic(
        casimir_quadratic_terms(CasimirKind::J1), {mode}, real.vacuum());
    Vec u(lay.dim(), 0.0), v(lay.dim(), 0.0), w(lay.dim(), 0.0);
    u[lay.index(2, 0)] = 1.0;
    v[lay.index(2, 2)] = 1.0;
    w[lay.index(2, -2)] = 1.0;
    FockState display;
    display.amp[OccKey{}] = -g;  // the displayed vacuum coefficient -(t-s)
    add_scaled(display, real.symmetric_pair(v, mode, w, mode),
               2.0 * std::sqrt(2.0));
    add_scaled(display, real.symmetric_pair(u, mode, u, mode),
               -std::sqrt(2.0));
    FockState diff = display;
    add_scaled(diff, got, -1.0);
    const double dn = fk.norm(diff);
    const auto it = got.amp.find(OccKey{});
    const cplx vac = it == got.amp.end() ? cplx(0.0) : it->second;
    out.require(dn <= 1e-12,
                "j(J1)Omega differs from the displayed vector by " + fmt(dn) +
                    " at t-s = " + fmt(g) + ": measured vacuum coefficient " +
                    fmt(vac.real()) + " vs displayed " + fmt(-g) +
                    " (two-particle parts agree)");
  }

  // second moment of F3 over [0,1] with the dense <=2-particle oracle
  const cplx m2 = real.vacuum_moment(LieElement::F(3), {0}, 2);
  out.require(std::abs(m2 - cplx(0.5)) <= 1e-12,
              "second moment " + fmt(m2.real()) + " != 0.5");
  {
    const int olmax = 2;
    const RepSpec ospec = RepSpec::of(1.0, 0.0, olmax);
    const BasisLayout olay(ospec);
    oracle::TupleFock tuple(olay.dim(), std::vector<double>(olay.dim(), 1.0),
                            2);
    std::vector<std::vector<cplx>> M(olay.dim(),
                                     std::vector<cplx>(olay.dim(), 0.0));
    for (const Triplet& t :
         rep_operator(ospec, LieElement::F(3)).mat.triplets())
      M[t.r][t.c] = t.v;
    const CocycleMap eta = cocycle_c(olmax);
    std::vector<cplx> f(olay.dim(), 0.0);
    const Vec ef = eta(LieElement::F(3));
    for (int d = 0; d < olay.dim(); ++d) f[d] = ef[d];
    auto j_apply = [&](const Vec& x) {
      Vec o = tuple.conserve(M, x);
      const Vec c = tuple.create(f, x);
      const Vec a = tuple.annihilate(f, x);
      for (long i = 0; i < tuple.dim(); ++i) o[i] += c[i] + a[i];
      return o;
    };
    const Vec m2v = j_apply(j_apply(tuple.vacuum()));
    const cplx oracle_m2 = tuple.inner(tuple.vacuum(), m2v);
    out.require(std::abs(oracle_m2 - m2) <= 1e-12,
                "dense oracle disagrees: " + fmt(oracle_m2.real()));
  }
  return out;
}

// criterion 9 ---------------------------------------------------------------
Outcome levy_axiom_suite() {
  Outcome out;
  const LevyAxiomReport rep = levy_axiom_checks(10, 4);
  out.require(rep.increment_residual <= 1e-12,
              "increment residual " + fmt(rep.increment_residual));
  out.require(rep.disjoint_commutator_residual <= 1e-12,
              "disjoint commutator residual " +
                  fmt(rep.disjoint_commutator_residual));
  out.require(rep.factorization_residual <= 1e-12,
              "factorization residual " + fmt(rep.factorization_residual));
  out.require(rep.stationarity_residual <= 1e-12,
              "stationarity residual " + fmt(rep.stationarity_residual));
  out.require(rep.first_moment_max == 0.0,
              "first moments not exactly zero: " + fmt(rep.first_moment_max));
  out.require(rep.continuity_fit_residual <= 1e-10,
              "moments are not O(t-s): fit residual " +
                  fmt(rep.continuity_fit_residual));
  return out;
}

// criterion 10 --------------------------------------------------------------
Outcome so3_suite() {
  Outcome out;
  const int lmax = 40;
  const So3Report rep = so3_multiplicities(lmax);
  for (int s = 0; s <= lmax; ++s) {
    const int expect = s >= 1 ? 1 : 0;
    out.require(rep.mult[s] == expect,
                "mult(" + std::to_string(s) + ") = " +
                    std::to_string(rep.mult[s]) + ", expected " +
                    std::to_string(expect));
  }
  out.require(rep.max_shell_residual <= 1e-12,
              "shell match residual " + fmt(rep.max_shell_residual));
  out.require(rep.start_mismatch,
              "expected the start-of-series discrepancy to be flagged");
  out.note("multiplicity table starts at s = " +
           std::to_string(rep.computed_start) +
           " while the stated decomposition begins at s = " +
           std::to_string(rep.reference_start) + " (flagged)");
  return out;
}

// criterion 11 --------------------------------------------------------------
Outcome so21_suite() {
  Outcome out;
  const int lmax = 200;
  const WeightWitness plus = so21_weight_witness(lmax, +1);
  const WeightWitness minus = so21_weight_witness(lmax, -1);
  out.require(plus.kill_residual <= 1e-10,
              "||F- xi+|| = " + fmt(plus.kill_residual) + " > 1e-10");
  out.require(plus.h3_residual <= 1e-12,
              "H3 eigenvalue residual " + fmt(plus.h3_residual));
  out.require(minus.kill_residual <= 1e-10,
              "||F+ xi-|| = " + fmt(minus.kill_residual) + " > 1e-10");

  const ChainMatchReport cp = so21_component_match(plus, lmax, 8);
  const ChainMatchReport cm = so21_component_match(minus, lmax, 8);
  out.require(cp.max_entry_diff <= 1e-8,
              "pi+_1 chain match " + fmt(cp.max_entry_diff) +
                  " > 1e-8 over 8 levels (truncation-limited: the witness "
                  "tail carries O(1/lmax) mass; H3 elements agree to " +
                  fmt(cp.max_h3_entry_diff) + ")");
  out.require(cm.max_entry_diff <= 1e-8,
              "pi-_1 chain match " + fmt(cm.max_entry_diff) + " > 1e-8");

  for (KillDirection dir :
       {KillDirection::killed_by_Fminus, KillDirection::killed_by_Fplus}) {
    const auto rows = kernel_scan(dir, -3, 3, lmax);
    for (const KernelScanRow& row : rows) {
      const bool expect_one =
          (dir == KillDirection::killed_by_Fminus && row.m0 == 1) ||
          (dir == KillDirection::killed_by_Fplus && row.m0 == -1);
      out.require(row.kernel_dim == (expect_one ? 1 : 0),
                  std::string("kernel dim at m0 = ") + std::to_string(row.m0) +
                      " (" + name(dir) + ") is " +
                      std::to_string(row.kernel_dim));
    }
  }

  const RestClassifyReport rest = so21_rest_classify(lmax);
  out.require(rest.h3_covers_window,
              "integer H3 levels missing from the rest");
  out.require(rest.k_hermiticity_residual <= 1e-9,
              "K blocks not real symmetric: " +
                  fmt(rest.k_hermiticity_residual));
  out.require(!rest.rest_eigenvalues.empty() && rest.rest_max_eigenvalue < 0.0,
              "rest K-spectrum reaches " + fmt(rest.rest_max_eigenvalue));
  out.note("rest K-spectrum in [" + fmt(rest.rest_eigenvalues.front()) + ", " +
           fmt(rest.rest_max_eigenvalue) + "], chain overlap >= " +
           fmt(rest.chain_overlap_min));
  return out;
}

struct Criterion {
  int id;
  const char* name;
  double budget_s;
  std::function<Outcome()> fn;
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {1, "structure suite", 0.1, structure_suite},
      {2, "representation suite", 2.0, representation_suite},
      {3, "casimir suite", 2.0, casimir_suite},
      {4, "rho_01 block decomposition", 10.0, block_decomposition_suite},
      {5, "cocycle suite", 10.0, cocycle_suite},
      {6, "non-coboundary evidence", 1.0, noncoboundary_suite},
      {7, "coboundary limit", 10.0, remark_limit_suite},
      {8, "fock suite", 2.0, fock_suite},
      {9, "levy axioms", 10.0, levy_axiom_suite},
      {10, "so(3) decomposition", 10.0, so3_suite},
      {11, "so(2,1) decomposition", 30.0, so21_suite},
  };

  int failures = 0;
  for (const Criterion& c : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome out;
    try {
      out = c.fn();
    } catch (const std::exception& e) {
      out.pass = false;
      out.details.push_back(std::string("exception: ") + e.what());
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
            .count();
    if (secs > c.budget_s) {
      out.pass = false;
      out.details.push_back("time budget exceeded: " + fmt(secs) + "s > " +
                            fmt(c.budget_s) + "s");
    }
    std::printf("[%2d] %s  %-28s (%.3fs, budget %.1fs)\n", c.id,
                out.pass ? "PASS" : "FAIL", c.name, secs, c.budget_s);
    for (const std::string& d : out.details)
      std::printf("      %s\n", d.c_str());
    if (!out.pass) ++failures;
  }
  if (failures > 0)
    std::printf("%d of %zu criteria failed\n", failures, criteria.size());
  else
    std::printf("all %zu criteria passed\n", criteria.size());
  return failures > 0 ? 1 : 0;
}
