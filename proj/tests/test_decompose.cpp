#include <lorentz/decompose.hpp>

#include "doctest.h"

using namespace lorentz;

TEST_CASE("so(3) multiplicities") {
  const So3Report rep = so3_multiplicities(5);
  REQUIRE(rep.mult.size() == 6);
  CHECK(rep.mult[0] == 0);
  for (int s = 1; s <= 5; ++s) CHECK(rep.mult[s] == 1);
  CHECK(rep.computed_start == 1);
  CHECK(rep.start_mismatch);  // stated start s = 3 disagrees with the count
  CHECK(rep.max_shell_residual <= 1e-12);
  CHECK_THROWS_AS((void)so3_multiplicities(2), std::invalid_argument);
}

TEST_CASE("so(3) multiplicities at the default truncation") {
  const So3Report rep = so3_multiplicities(40);
  for (int s = 1; s <= 40; ++s) CHECK(rep.mult[s] == 1);
  CHECK(rep.mult[0] == 0);
  CHECK(rep.max_shell_residual <= 1e-12);
}

TEST_CASE("weight witnesses") {
  const int lmax = 200;
  const WeightWitness wp = so21_weight_witness(lmax, +1);
  const WeightWitness wm = so21_weight_witness(lmax, -1);

  CHECK(wp.h3_residual <= 1e-12);
  CHECK(wm.h3_residual <= 1e-12);
  CHECK(wp.kill_residual <= 1e-10);
  CHECK(wm.kill_residual <= 1e-10);
  CHECK(wp.tail_fraction <= 0.01);
  CHECK(wm.tail_fraction <= 0.01);
  CHECK(std::abs(norm2(wp.coeffs) - 1.0) <= 1e-13);

  // different H3 eigenvalues force orthogonality
  CHECK(std::abs(dot(wp.coeffs, wm.coeffs)) == 0.0);

  // frozen ratio x3/x1 = -sqrt(7/3)/4
  const BasisLayout lay(HalfInt::whole(1), lmax);
  const cplx x1 = wp.coeffs[lay.index(2, 2)];
  const cplx x3 = wp.coeffs[lay.index(6, 2)];
  CHECK((x3 / x1).real() ==
        doctest::Approx(-std::sqrt(7.0 / 3.0) / 4.0).epsilon(1e-12));
  CHECK(std::abs((x3 / x1).imag()) <= 1e-15);

  CHECK_THROWS_AS((void)so21_weight_witness(10, 1), std::invalid_argument);
  CHECK_THROWS_AS((void)so21_weight_witness(lmax, 2), std::invalid_argument);
}

TEST_CASE("discrete-series chain match") {
  const int lmax = 200;
  const WeightWitness wp = so21_weight_witness(lmax, +1);
  const ChainMatchReport rep = so21_component_match(wp, lmax, 8);

  CHECK(rep.levels_built == 8);
  CHECK(!rep.escaped);
  // H3 elements are fixed by the weight grading: exact
  CHECK(rep.max_h3_entry_diff <= 1e-10);
  // F elements agree with pi^+_1 up to the truncated 1/l tail of xi^+;
  // measured ~1.5e-2 at lmax = 200 and shrinking like 1/lmax
  CHECK(rep.max_entry_diff <= 0.05);

  const WeightWitness w50 = so21_weight_witness(50, +1);
  const ChainMatchReport rep50 = so21_component_match(w50, 50, 8);
  CHECK(rep.max_entry_diff < rep50.max_entry_diff);

  // mirrored chain
  const WeightWitness wm = so21_weight_witness(lmax, -1);
  const ChainMatchReport repm = so21_component_match(wm, lmax, 8);
  CHECK(repm.max_h3_entry_diff <= 1e-10);
  CHECK(repm.max_entry_diff <= 0.05);

  // chain escape is reported when the interior runs out
  const WeightWitness small = so21_weight_witness(24, +1);
  const ChainMatchReport esc = so21_component_match(small, 24, 15);
  CHECK(esc.escaped);
  CHECK(esc.levels_built < 15);
}

TEST_CASE("commutator closure on the chain basis") {
  const int lmax = 120;
  const WeightWitness wp = so21_weight_witness(lmax, +1);
  const ChainMatchReport rep = so21_component_match(wp, lmax, 6);
  const RepSpec spec = RepSpec::of(1.0, 0.0, lmax);
  const BasisLayout lay(spec);
  const SparseMatrix h3 = rep_ladder(spec, LadderGen::H3).mat;
  const SparseMatrix fp = rep_ladder(spec, LadderGen::Fp).mat;
  const SparseMatrix fm = rep_ladder(spec, LadderGen::Fm).mat;
  const SparseMatrix comm = fp * fm - fm * fp + 2.0 * h3;
  const std::vector<bool> keep = lay.interior_mask(2);
  for (const Vec& e : rep.chain) {
    Vec img = comm.apply(e);
    for (int i = 0; i < lay.dim(); ++i)
      if (!keep[i]) img[i] = 0.0;
    // e is supported well inside the interior, where closure is exact
    CHECK(masked_norm2(img, keep) <= 1e-9);
  }
}

TEST_CASE("rest classification") {
  const RestClassifyReport rep = so21_rest_classify(60, 8);

  SUBCASE("K blocks are exactly real symmetric tridiagonal") {
    CHECK(rep.k_hermiticity_residual <= 1e-12);
  }
  SUBCASE("rest spectrum is real and strictly below zero") {
    CHECK(!rep.rest_eigenvalues.empty());
    CHECK(rep.rest_max_eigenvalue < 0.0);
    // below the mu(mu-1) = 0 threshold of the third family with mu = 0
    for (double ev : rep.rest_eigenvalues) CHECK(ev < 0.0);
  }
  SUBCASE("chain identification") {
    CHECK(rep.resolved_chain_blocks >= 20);
    // spectral tops sit near t(t-1) = 0 where resolved
    CHECK(rep.max_resolved_chain_deviation < 0.25);
    // and match the cyclically generated chain vectors in the head zone
    CHECK(rep.chain_overlap_min >= 0.97);
    CHECK(rep.spectral_orthogonality_residual <= 1e-10);
  }
  SUBCASE("H3 coverage and dimension bookkeeping") {
    CHECK(rep.h3_covers_window);
    CHECK(rep.h3_missing.empty());
    CHECK(rep.window == 58);
    CHECK(rep.dims_consistent);
    CHECK(rep.total_dim == rep.chain_dim + rep.rest_dim);
    CHECK(static_cast<long>(rep.rest_eigenvalues.size()) + rep.chain_blocks ==
          rep.interior_dim);
  }
  SUBCASE("kernel scan rows embedded in the report") {
    REQUIRE(rep.kernel_rows.size() == 14);
    for (const KernelScanRow& row : rep.kernel_rows) {
      const bool witness_row =
          (row.direction == KillDirection::killed_by_Fminus && row.m0 == 1) ||
          (row.direction == KillDirection::killed_by_Fplus && row.m0 == -1);
      if (witness_row) {
        // at lmax = 60 the tail-mass gate (1%) is not yet met, and the
        // report says so rather than promoting the dimension
        CHECK(row.classification == Convergence::converges);
        CHECK(row.tail_fraction > 0.01);
        CHECK(row.kernel_dim == 0);
      } else {
        CHECK(row.kernel_dim == 0);
        const bool expect_obstructed =
            (row.direction == KillDirection::killed_by_Fminus && row.m0 >= 2) ||
            (row.direction == KillDirection::killed_by_Fplus && row.m0 <= -2);
        CHECK(row.obstructed == expect_obstructed);
      }
    }
  }
  SUBCASE("kernel dimensions resolve at deeper truncation") {
    const auto rows = kernel_scan(KillDirection::killed_by_Fminus, 1, 1, 200);
    REQUIRE(rows.size() == 1);
    CHECK(rows[0].kernel_dim == 1);
    CHECK(rows[0].tail_fraction <= 0.01);
  }
  SUBCASE("lmax precondition") {
    CHECK_THROWS_AS((void)so21_rest_classify(20), std::invalid_argument);
  }
}
