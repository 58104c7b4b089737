#include <lorentz/subalgebra.hpp>

#include "doctest.h"

using namespace lorentz;

namespace {

Vec unit_at(int dim, int idx) {
  Vec v(dim, 0.0);
  v[idx] = 1.0;
  return v;
}

}  // namespace

TEST_CASE("so(3) spin matrices") {
  SUBCASE("pi_1 examples") {
    const HalfInt s = HalfInt::whole(1);
    const auto h3 = so3_ladder(s, LadderGen::H3);
    const auto hp = so3_ladder(s, LadderGen::Hp);
    CHECK(h3.mat.at(2, 2) == cplx(1.0));                  // H3 e_1 = e_1
    CHECK(norm2(hp.mat.apply(unit_at(3, 2))) == 0.0);     // top of ladder
  }
  SUBCASE("pi_1/2 ladder coefficient") {
    const HalfInt s = HalfInt::from_twice(1);
    const auto hp = so3_ladder(s, LadderGen::Hp);
    const Vec out = hp.mat.apply(unit_at(2, 0));          // e_{-1/2}
    CHECK(out[1] == cplx(1.0));
  }
  SUBCASE("su(2) commutator closure") {
    for (int twos = 0; twos <= 7; ++twos) {
      const HalfInt s = HalfInt::from_twice(twos);
      const SparseMatrix h3 = so3_ladder(s, LadderGen::H3).mat;
      const SparseMatrix hp = so3_ladder(s, LadderGen::Hp).mat;
      const SparseMatrix hm = so3_ladder(s, LadderGen::Hm).mat;
      CHECK((hp * hm - hm * hp - 2.0 * h3).max_abs() <= 1e-12);
      CHECK((h3 * hp - hp * h3 - hp).max_abs() <= 1e-12);
      CHECK((h3 * hm - hm * h3 + hm).max_abs() <= 1e-12);
    }
  }
  SUBCASE("rejects boost generators") {
    CHECK_THROWS_AS((void)so3_operator(HalfInt::whole(1), LieElement::F(1)),
                    std::invalid_argument);
  }
}

TEST_CASE("so(2,1) discrete series") {
  const So21RepSpec plus = So21RepSpec::plus(1.0, 12);
  const auto h3 = so21_ladder(plus, LadderGen::H3);
  const auto fp = so21_ladder(plus, LadderGen::Fp);
  const auto fm = so21_ladder(plus, LadderGen::Fm);

  SUBCASE("cyclic vector characterization") {
    CHECK(norm2(fm.mat.apply(unit_at(plus.dim(), 0))) == 0.0);  // F- e_0 = 0
    CHECK(h3.mat.at(0, 0) == cplx(1.0));                        // H3 e_0 = t e_0
    CHECK(fp.mat.at(1, 0).real() ==
          doctest::Approx(std::sqrt(2.0)));                     // sqrt(1*2)
  }
  SUBCASE("commutator closure on the interior") {
    const SparseMatrix comm = fp.mat * fm.mat - fm.mat * fp.mat;
    const SparseMatrix ref = cplx(-2.0) * h3.mat;
    CHECK((comm - ref).max_abs_masked(plus.interior_mask(2)) <= 1e-12);
  }
  SUBCASE("minus family mirrors") {
    const So21RepSpec minus = So21RepSpec::minus(1.0, 12);
    const auto h3m = so21_ladder(minus, LadderGen::H3);
    const auto fpm = so21_ladder(minus, LadderGen::Fp);
    CHECK(h3m.mat.at(0, 0) == cplx(-1.0));
    CHECK(norm2(fpm.mat.apply(unit_at(minus.dim(), 0))) == 0.0);
  }
}

TEST_CASE("so(2,1) third family") {
  const So21RepSpec third = So21RepSpec::third(-2.0, 0.0, 10);
  const auto h3 = so21_ladder(third, LadderGen::H3);
  const auto fp = so21_ladder(third, LadderGen::Fp);

  SUBCASE("actions at n = 0") {
    const int i0 = third.index(0);
    CHECK(h3.mat.at(i0, i0) == cplx(0.0));
    CHECK(fp.mat.at(third.index(1), i0).real() ==
          doctest::Approx(std::sqrt(2.0)));  // sqrt(-c) with c = -2
  }
  SUBCASE("closure and hermiticity") {
    const auto fm = so21_ladder(third, LadderGen::Fm);
    const SparseMatrix comm = fp.mat * fm.mat - fm.mat * fp.mat;
    CHECK((comm - cplx(-2.0) * h3.mat).max_abs_masked(third.interior_mask(2)) <=
          1e-12);
    CHECK((fp.mat.adjoint() - fm.mat).max_abs() <= 1e-13);
  }
  SUBCASE("parameter constraints") {
    CHECK_THROWS_AS((void)So21RepSpec::third(0.5, 0.0, 8),
                    std::invalid_argument);
    CHECK_THROWS_AS((void)So21RepSpec::third(-1.0, 1.2, 8),
                    std::invalid_argument);
    CHECK_THROWS_AS((void)So21RepSpec::plus(0.0, 8), std::invalid_argument);
  }
}

TEST_CASE("so(2,1) casimir") {
  SUBCASE("scalar on the discrete series (measured, t(t-1))") {
    for (double t : {0.5, 1.0, 2.5}) {
      const So21RepSpec spec = So21RepSpec::plus(t, 16);
      const auto K = casimir_K(spec);
      const auto ms = measured_scalar(K, spec.interior_mask(2));
      CHECK(ms.deviation <= 1e-10);
      CHECK(ms.value.real() == doctest::Approx(t * (t - 1.0)).epsilon(1e-12));
      CHECK(ms.value.imag() == doctest::Approx(0.0));
    }
  }
  SUBCASE("scalar on the third family (measured, c)") {
    for (double c : {-0.5, -2.0}) {
      const So21RepSpec spec = So21RepSpec::third(c, 0.0, 16);
      const auto ms = measured_scalar(casimir_K(spec), spec.interior_mask(2));
      CHECK(ms.deviation <= 1e-10);
      CHECK(ms.value.real() == doctest::Approx(c).epsilon(1e-12));
    }
    const So21RepSpec twisted = So21RepSpec::third(-1.0, 0.25, 16);
    const auto ms = measured_scalar(casimir_K(twisted),
                                    twisted.interior_mask(2));
    CHECK(ms.deviation <= 1e-10);
    CHECK(ms.value.real() == doctest::Approx(-1.0).epsilon(1e-12));
  }
  SUBCASE("K commutes with H3") {
    const So21RepSpec spec = So21RepSpec::third(-1.5, 0.5, 12);
    const auto K = casimir_K(spec);
    const SparseMatrix h3 = so21_ladder(spec, LadderGen::H3).mat;
    const SparseMatrix comm = K.mat * h3 - h3 * K.mat;
    CHECK(comm.max_abs_masked(spec.interior_mask(3)) <= 1e-12);
  }
  SUBCASE("truncation too small") {
    CHECK_THROWS_AS((void)casimir_K(So21RepSpec::plus(1.0, 1)),
                    std::invalid_argument);
  }
}
