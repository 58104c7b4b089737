#include <lorentz/irrep.hpp>

#include <random>

#include "doctest.h"

using namespace lorentz;

namespace {

const double kSqrt52 = std::sqrt(2.5);

Vec basis_vector(const BasisLayout& lay, int twol, int twom) {
  Vec v(lay.dim(), 0.0);
  v[lay.index(twol, twom)] = 1.0;
  return v;
}

std::vector<RepSpec> acceptance_specs(int lmax) {
  return {RepSpec::of(1.0, 0.0, lmax), RepSpec::of(0.0, cplx(0, 1), lmax),
          RepSpec::of(0.5, cplx(0, 2), lmax), RepSpec::of(0.0, 0.5, lmax)};
}

const std::array<LieElement, 6> kPrimitives = {
    LieElement::H(1), LieElement::H(2), LieElement::H(3),
    LieElement::F(1), LieElement::F(2), LieElement::F(3)};

}  // namespace

TEST_CASE("basis layout enumerates (l asc, m asc)") {
  const BasisLayout lay(HalfInt::whole(1), 3);
  CHECK(lay.dim() == 3 + 5 + 7);
  CHECK(lay.index(2, -2) == 0);
  CHECK(lay.index(2, 0) == 1);
  CHECK(lay.index(2, 2) == 2);
  CHECK(lay.index(4, -4) == 3);
  CHECK(lay.index(6, 6) == 14);
  CHECK(lay.label(3) == std::pair<int, int>(4, -4));
  CHECK(lay.label(14) == std::pair<int, int>(6, 6));
  CHECK_THROWS_AS((void)lay.index(0, 0), std::out_of_range);
  CHECK_THROWS_AS((void)lay.index(2, 1), std::out_of_range);

  const BasisLayout half(HalfInt::from_twice(1), 2);
  CHECK(half.dim() == 2 + 4);  // shells 1/2 and 3/2
  CHECK(half.index(1, -1) == 0);
  CHECK(half.index(3, 3) == 5);
}

TEST_CASE("unitary class flags") {
  CHECK(RepSpec::of(1.0, 0.0, 6).unitary_class() == UnitaryClass::principal);
  CHECK(RepSpec::of(0.5, cplx(0, 2), 6).unitary_class() ==
        UnitaryClass::principal);
  CHECK(RepSpec::of(0.0, 0.5, 6).unitary_class() ==
        UnitaryClass::supplementary);
  CHECK(RepSpec::of(0.0, 1.5, 6).unitary_class() == UnitaryClass::nonunitary);
  CHECK(RepSpec::of(1.0, cplx(1, 1), 6).unitary_class() ==
        UnitaryClass::nonunitary);
}

TEST_CASE("coefficient functions") {
  const RepSpec r10 = RepSpec::of(1.0, 0.0, 10);
  CHECK(std::abs(coeff_C(r10, HalfInt::whole(1))) == 0.0);
  // C_2(1,0) = i sqrt(3)/sqrt(15)
  const cplx c2 = coeff_C(r10, HalfInt::whole(2));
  CHECK(c2.real() == doctest::Approx(0.0));
  CHECK(c2.imag() == doctest::Approx(std::sqrt(3.0 / 15.0)).epsilon(1e-14));

  const RepSpec sup = RepSpec::of(0.0, 0.5, 10);
  const cplx c1 = coeff_C(sup, HalfInt::whole(1));
  CHECK(c1.imag() == doctest::Approx(std::sqrt(1.0 - 0.25) / std::sqrt(3.0)));

  // branch values at the bottom of the index range
  CHECK(coeff_C(RepSpec::of(0.0, cplx(0, 2), 10), HalfInt::whole(0)) == 0.0);
  CHECK(coeff_C(RepSpec::of(0.5, cplx(0, 2), 10), HalfInt::from_twice(1)) ==
        0.0);
  CHECK(coeff_A(RepSpec::of(0.0, cplx(0, 2), 10), HalfInt::whole(0)) == 0.0);

  // A_l vanishes whenever l0*l1 = 0
  CHECK(coeff_A(r10, HalfInt::whole(3)) == 0.0);
  CHECK(coeff_A(sup, HalfInt::whole(2)) == 0.0);
  // A_1(1, 2i) = i*(2i)/2 = -1
  CHECK(coeff_A(RepSpec::of(1.0, cplx(0, 2), 10), HalfInt::whole(1)).real() ==
        doctest::Approx(-1.0));

  CHECK_THROWS_AS((void)coeff_C(r10, HalfInt::whole(13)), std::out_of_range);
}

TEST_CASE("ladder actions on single basis vectors") {
  const RepSpec r10 = RepSpec::of(1.0, 0.0, 6);
  const BasisLayout lay(r10);

  SUBCASE("H3 is diagonal with eigenvalue m") {
    const auto h3 = rep_ladder(r10, LadderGen::H3);
    const Vec out = h3.mat.apply(basis_vector(lay, 4, -2));
    CHECK(out[lay.index(4, -2)] == cplx(-1.0));
    CHECK(norm2(out) == doctest::Approx(1.0));
  }

  SUBCASE("H+ annihilates the top of each shell") {
    const auto hp = rep_ladder(r10, LadderGen::Hp);
    CHECK(norm2(hp.mat.apply(basis_vector(lay, 2, 2))) == 0.0);
  }

  SUBCASE("F+ on xi_{1,1} reaches only the l+1 shell") {
    const auto fp = rep_ladder(r10, LadderGen::Fp);
    const Vec out = fp.mat.apply(basis_vector(lay, 2, 2));
    const cplx expect = coeff_C(r10, HalfInt::whole(2)) * std::sqrt(12.0);
    for (int i = 0; i < lay.dim(); ++i) {
      if (i == lay.index(4, 4))
        CHECK(std::abs(out[i] - expect) < 1e-15);
      else
        CHECK(out[i] == cplx(0.0));
    }
    CHECK(fp.interior_depth == 1);
  }
}

TEST_CASE("rep_operator is linear in the algebra element") {
  const RepSpec spec = RepSpec::of(0.5, cplx(0, 2), 8);
  const LieElement x = cplx(2, 1) * LieElement::F(1) - LieElement::H(3);
  const LieElement y = cplx(0, -1) * LieElement::H_plus();
  const auto both = rep_operator(spec, x + y);
  const auto xs = rep_operator(spec, x);
  const auto ys = rep_operator(spec, y);
  CHECK((both.mat - (xs.mat + ys.mat)).max_abs() < 1e-14);
  CHECK(xs.interior_depth == 1);
  CHECK(ys.interior_depth == 0);
}

TEST_CASE("commutator closure on the interior") {
  for (const RepSpec& spec : acceptance_specs(12)) {
    CAPTURE(spec.l0.twice);
    for (int a = 0; a < 6; ++a)
      for (int b = a + 1; b < 6; ++b) {
        const double r =
            commutator_closure_residual(spec, kPrimitives[a], kPrimitives[b]);
        CHECK(r <= 1e-10);
      }
  }
  // random elements, fixed seed
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  const RepSpec spec = RepSpec::of(1.0, 0.0, 10);
  for (int trial = 0; trial < 5; ++trial) {
    LieElement x, y;
    for (int g = 0; g < 6; ++g) {
      x.add(static_cast<Gen>(g), cplx(u(rng), u(rng)));
      y.add(static_cast<Gen>(g), cplx(u(rng), u(rng)));
    }
    CHECK(commutator_closure_residual(spec, x, y) <= 1e-10);
  }
}

TEST_CASE("star compatibility for unitary classes") {
  for (const RepSpec& spec : acceptance_specs(12)) {
    for (const LieElement& x :
         {LieElement::H_plus(), LieElement::F_plus(), LieElement::F(3),
          LieElement::H(2), LieElement::A(1)}) {
      const auto px = rep_operator(spec, x);
      const auto pxs = rep_operator(spec, involute(x));
      CHECK(adjointness_residual(px, pxs) <= 1e-12);
    }
  }
}

TEST_CASE("casimir operators act as the reference scalars on the interior") {
  SUBCASE("rho_10 gives zero for both") {
    const RepSpec r10 = RepSpec::of(1.0, 0.0, 12);
    const BasisLayout lay(r10);
    CHECK(scalar_action_residual(casimir(r10, CasimirKind::J1), lay, 0.0) <=
          1e-10);
    CHECK(scalar_action_residual(casimir(r10, CasimirKind::J2), lay, 0.0) <=
          1e-10);
  }
  SUBCASE("J1 on (0,2i) equals -5 on the interior") {
    const RepSpec spec = RepSpec::of(0.0, cplx(0, 2), 12);
    const BasisLayout lay(spec);
    CHECK(scalar_action_residual(casimir(spec, CasimirKind::J1), lay,
                                 cplx(-5.0)) <= 1e-9);
  }
  SUBCASE("full acceptance spec set") {
    for (const RepSpec& spec : acceptance_specs(12)) {
      const BasisLayout lay(spec);
      for (CasimirKind k : {CasimirKind::J1, CasimirKind::J2}) {
        const cplx ref = casimir_reference_scalar(spec, k);
        CHECK(scalar_action_residual(casimir(spec, k), lay, ref) <= 1e-9);
      }
    }
  }
  SUBCASE("truncation too small") {
    CHECK_THROWS_AS((void)casimir(RepSpec::of(1.0, 0.0, 2), CasimirKind::J1),
                    std::invalid_argument);
  }
}

TEST_CASE("rho_01 decomposes as the trivial rep plus rho_10") {
  const int lmax = 10;
  const RepSpec r01 = RepSpec::of(0.0, 1.0, lmax);
  const RepSpec r10 = RepSpec::of(1.0, 0.0, lmax);
  const BasisLayout lay01(r01);
  const BasisLayout lay10(r10);

  // xi_00 is annihilated by every generator
  for (const LieElement& x : kPrimitives) {
    const Vec img = rep_operator(r01, x).mat.apply(basis_vector(lay01, 0, 0));
    CHECK(norm2(img) <= 1e-12);
  }

  // the complementary block equals rho_10 entrywise
  std::vector<int> block_ids;
  for (int i = 1; i < lay01.dim(); ++i) block_ids.push_back(i);
  for (const LieElement& x : kPrimitives) {
    const SparseMatrix sub =
        rep_operator(r01, x).mat.sub_block(block_ids, block_ids);
    const SparseMatrix ref = rep_operator(r10, x).mat;
    CHECK((sub - ref).max_abs() <= 1e-12);
  }
}

TEST_CASE("csv export uses the fixed coordinate format") {
  const RepSpec spec = RepSpec::of(1.0, 0.0, 2);
  const auto h3 = rep_ladder(spec, LadderGen::H3);
  std::ostringstream os;
  h3.mat.write_csv(os);
  const std::string csv = os.str();
  CHECK(csv.rfind("row,col,re,im\n", 0) == 0);
  CHECK(csv.find("0,0,-1,0") != std::string::npos);   // xi_{1,-1}
  CHECK(csv.find("1,1,") == std::string::npos);       // exact zero dropped
  CHECK(csv.find("2,2,1,0") != std::string::npos);    // xi_{1,1}
}

TEST_CASE("operator composition adds interior depths") {
  const RepSpec spec = RepSpec::of(1.0, 0.0, 8);
  const auto f3 = rep_ladder(spec, LadderGen::F3);
  const auto h3 = rep_ladder(spec, LadderGen::H3);
  CHECK((f3 * f3).interior_depth == 2);
  CHECK((f3 * h3).interior_depth == 1);
  CHECK((h3 * h3).interior_depth == 0);
  CHECK((f3 + h3).interior_depth == 1);
  CHECK(casimir(spec, CasimirKind::J1).interior_depth == 2);
}

TEST_CASE("frozen coboundary seed value") {
  // x_{2,0} = 1 / (C_2(1,0) * sqrt(2)) = -i sqrt(5/2)
  const RepSpec r10 = RepSpec::of(1.0, 0.0, 10);
  const cplx x20 = 1.0 / (coeff_C(r10, HalfInt::whole(2)) * std::sqrt(2.0));
  CHECK(x20.real() == doctest::Approx(0.0));
  CHECK(x20.imag() == doctest::Approx(-kSqrt52).epsilon(1e-14));
}
