#include <lorentz/algebra.hpp>

#include "doctest.h"

using namespace lorentz;

namespace {

bool same(const LieElement& a, const LieElement& b, double tol = 0.0) {
  return element_distance(a, b) <= tol;
}

}  // namespace

TEST_CASE("levi-civita symbol is total") {
  CHECK(levi_civita(1, 2, 3) == 1);
  CHECK(levi_civita(2, 3, 1) == 1);
  CHECK(levi_civita(3, 1, 2) == 1);
  CHECK(levi_civita(2, 1, 3) == -1);
  CHECK(levi_civita(3, 2, 1) == -1);
  CHECK(levi_civita(1, 3, 2) == -1);
  CHECK(levi_civita(1, 1, 2) == 0);
  CHECK(levi_civita(0, 2, 3) == 0);
  CHECK(levi_civita(4, 2, 3) == 0);
}

TEST_CASE("derived symbols expand over the primitives") {
  CHECK(same(LieElement::H_plus(),
             LieElement::H(1) + cplx(0, 1) * LieElement::H(2)));
  CHECK(same(LieElement::F_minus(),
             LieElement::F(1) - cplx(0, 1) * LieElement::F(2)));
  CHECK(same(LieElement::A(2) + LieElement::B(2), LieElement::H(2)));
  CHECK(same(LieElement::A(2) - LieElement::B(2),
             cplx(0, 1) * LieElement::F(2)));
}

TEST_CASE("bracket reproduces the structure table") {
  CHECK(same(bracket(LieElement::H(1), LieElement::H(2)),
             cplx(0, 1) * LieElement::H(3)));
  CHECK(same(bracket(LieElement::F(1), LieElement::F(2)),
             cplx(0, -1) * LieElement::H(3)));
  CHECK(same(bracket(LieElement::F(1), LieElement::H(2)),
             cplx(0, 1) * LieElement::F(3)));
  CHECK(same(bracket(LieElement::H(1), LieElement::F(2)),
             cplx(0, 1) * LieElement::F(3)));

  // ladder-basis relations
  CHECK(same(bracket(LieElement::H_plus(), LieElement::H_minus()),
             2.0 * LieElement::H(3)));
  CHECK(same(bracket(LieElement::F_plus(), LieElement::F_minus()),
             -2.0 * LieElement::H(3)));
  CHECK(same(bracket(LieElement::H(3), LieElement::H_plus()),
             LieElement::H_plus()));
  CHECK(same(bracket(LieElement::H(3), LieElement::F_plus()),
             LieElement::F_plus()));
  CHECK(same(bracket(LieElement::F(3), LieElement::H_plus()),
             LieElement::F_plus()));
  CHECK(same(bracket(LieElement::F(3), LieElement::F_plus()),
             -LieElement::H_plus()));
  CHECK(same(bracket(LieElement::H_plus(), LieElement::F_plus()),
             LieElement::zero()));
  CHECK(same(bracket(LieElement::F(3), LieElement::H(3)), LieElement::zero()));
  // [H+-, F-+] = +-2 F3
  CHECK(same(bracket(LieElement::H_plus(), LieElement::F_minus()),
             2.0 * LieElement::F(3)));
  CHECK(same(bracket(LieElement::H_minus(), LieElement::F_plus()),
             -2.0 * LieElement::F(3)));

  // chiral halves commute with each other
  CHECK(same(bracket(LieElement::A(1), LieElement::A(2)),
             cplx(0, 1) * LieElement::A(3), 1e-15));
  CHECK(same(bracket(LieElement::B(1), LieElement::B(2)),
             cplx(0, 1) * LieElement::B(3), 1e-15));
  for (int j = 1; j <= 3; ++j)
    for (int k = 1; k <= 3; ++k)
      CHECK(bracket(LieElement::A(j), LieElement::B(k)).max_abs() == 0.0);
}

TEST_CASE("bracket is antisymmetric and bilinear") {
  CHECK(antisymmetry_residual() == 0.0);
  for (int a = 0; a < 6; ++a) {
    const LieElement X = LieElement::unit(static_cast<Gen>(a));
    CHECK(bracket(X, X).max_abs() == 0.0);
  }
  const LieElement x = cplx(2, -1) * LieElement::H(1) + LieElement::F(2);
  const LieElement y = cplx(0, 3) * LieElement::F(3) - LieElement::H(2);
  CHECK(same(bracket(x, y), -bracket(y, x), 1e-15));
  CHECK(same(bracket(cplx(0, 2) * x, y), cplx(0, 2) * bracket(x, y), 1e-15));
}

TEST_CASE("jacobi identity holds exactly on all primitive triples") {
  CHECK(jacobi_residual() == 0.0);
}

TEST_CASE("involution fixes hermitian generators and is antilinear") {
  CHECK(same(involute(LieElement::H(3)), LieElement::H(3)));
  CHECK(same(involute(cplx(0, 1) * LieElement::F(1)),
             cplx(0, -1) * LieElement::F(1)));
  CHECK(same(involute(LieElement::H_plus()), LieElement::H_minus()));
  CHECK(same(involute(LieElement::F_minus()), LieElement::F_plus()));
  CHECK(same(involute(LieElement::A(2)), LieElement::B(2)));
  CHECK(same(involute(LieElement::B(1)), LieElement::A(1)));

  const LieElement x = cplx(2, -1) * LieElement::H(1) +
                       cplx(0, 0.25) * LieElement::F(3);
  CHECK(same(involute(involute(x)), x));
}

TEST_CASE("involution is compatible with the bracket") {
  CHECK(star_bracket_residual() == 0.0);
}

TEST_CASE("resolved bracket table lines") {
  const auto lines = bracket_table_lines();
  CHECK(lines.size() == 15);
  // spot-check the boost-boost and mixed rows
  bool found_ff = false, found_hf = false;
  for (const auto& s : lines) {
    if (s.find("[F1,F2]") != std::string::npos) {
      found_ff = true;
      CHECK(s.find("H3") != std::string::npos);
    }
    if (s.find("[H1,F2]") != std::string::npos) {
      found_hf = true;
      CHECK(s.find("F3") != std::string::npos);
    }
  }
  CHECK(found_ff);
  CHECK(found_hf);
}
