#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "achcr/algebra.hpp"

using namespace achcr;

TEST_CASE("frame labels") {
  CHECK(frame_label(2, 1) == "T");
  CHECK(frame_label(2, 3) == "Z2");
  CHECK(frame_label(2, 4) == "Zb1");
  CHECK(parse_frame_label(2, "T") == 1);
  CHECK(parse_frame_label(2, "Z2") == 3);
  CHECK(parse_frame_label(2, "Zb2") == 5);
  CHECK_THROWS_AS(parse_frame_label(2, "Z3"), BadParameter);
  CHECK_THROWS_AS(parse_frame_label(2, "Q"), BadParameter);
}

TEST_CASE("make_algebra closes under antisymmetry and reality") {
  CRFrameAlgebra A = su2();
  CHECK(A.bracket(3, 2, 1) == Scalar::i());                          // antisym
  CHECK(A.bracket(1, 3, 3) == Scalar(Rational(0), Rational(2)));     // conj of [T,Z]=-2iZ
  CHECK_THROWS_AS(make_algebra(1, {{2, 3, 1, Scalar(1)}, {3, 2, 1, Scalar(1)}}),
                  BracketConflict);
}

TEST_CASE("validation of the builtins") {
  for (int n : {1, 2, 3}) CHECK(validate(heisenberg(n)).ok);
  CHECK(validate(su2()).ok);
  CHECK(validate(twisted_heisenberg(2, Scalar(1))).ok);
  CHECK(validate(twisted_heisenberg(2, Scalar::i())).ok);
  CHECK(validate(twisted_heisenberg(2, Scalar(Rational(1, 2)))).ok);
  CHECK(validate(rescale(su2(), Rational(4))).ok);
  CHECK_THROWS_AS(heisenberg(0), BadParameter);
  CHECK_THROWS_AS(twisted_heisenberg(1, Scalar(1)), BadParameter);
  CHECK_THROWS_AS(rescale(su2(), Rational(-1)), BadParameter);
}

TEST_CASE("violations are flagged with witnesses") {
  // [Z1, Z2] = T breaks partial integrability
  CRFrameAlgebra A = make_algebra(2, {{2, 4, 1, -Scalar::i()},
                                      {3, 5, 1, -Scalar::i()},
                                      {2, 3, 1, Scalar(1)}});
  ValidationReport rep = validate(A);
  CHECK_FALSE(rep.ok);
  bool found = false;
  for (const auto& v : rep.violations)
    if (v.find("partial integrability") != std::string::npos) found = true;
  CHECK(found);

  // degenerate Levi form: no [Z2, Zb2] bracket
  CRFrameAlgebra B = make_algebra(2, {{2, 4, 1, -Scalar::i()}});
  ValidationReport repB = validate(B);
  CHECK_FALSE(repB.ok);
  CHECK_THROWS_AS(levi_form(B), DegenerateLeviForm);
}

TEST_CASE("levi form extraction") {
  // heisenberg: [Z_a, Zb_a] = -iT gives h = delta
  CRFrameAlgebra A = heisenberg(2);
  InvariantTensor h = levi_form(A);
  CHECK(h.get({2, 4}) == Scalar(1));
  CHECK(h.get({3, 5}) == Scalar(1));
  CHECK(h.get({2, 5}).is_zero());
  CHECK(levi_form(su2()).get({2, 3}) == Scalar(1));
  // rescale T -> T/lambda scales h by lambda
  CHECK(levi_form(rescale(su2(), Rational(4))).get({2, 3}) == Scalar(4));
  CHECK(levi_form(rescale(heisenberg(1), Rational(4))).get({2, 3}) == Scalar(4));

  InvariantTensor hinv = levi_inverse(h);
  InvariantTensor d = contract(h, hinv, {{1, 1}});
  CHECK(d.get({2, 2}) == Scalar(1));
  CHECK(d.get({2, 3}).is_zero());
}

TEST_CASE("levi inverse respects both delta identities for non-diagonal h") {
  // hermitian non-diagonal Levi form via custom brackets
  // [Z1,Zb1] = -2iT, [Z1,Zb2] = (1-i)T... pick c so h = i c is hermitian
  CRFrameAlgebra A = make_algebra(
      2, {{2, 4, 1, Scalar(Rational(0), Rational(-2))},
          {2, 5, 1, Scalar(Rational(1), Rational(-1))},
          {3, 4, 1, Scalar(Rational(-1), Rational(-1))},
          {3, 5, 1, Scalar(Rational(0), Rational(-3))}});
  ValidationReport rep = validate(A);
  CHECK(rep.ok);
  InvariantTensor h = levi_form(A);
  // hermitian: h_{1 2bar} = conj(h_{2 1bar})
  CHECK(h.get({2, 5}) == h.get({3, 4}).conj());
  InvariantTensor hinv = levi_inverse(h);
  InvariantTensor d1 = contract(h, hinv, {{1, 1}});  // h_{ab} h^{gb} = delta_a^g
  InvariantTensor d2 = contract(h, hinv, {{0, 0}});  // h_{ab} h^{ad} = delta_b^d
  for (int a = 2; a <= 3; ++a)
    for (int g = 2; g <= 3; ++g)
      CHECK(d1.get({a, g}) == (a == g ? Scalar(1) : Scalar(0)));
  for (int b = 4; b <= 5; ++b)
    for (int d = 4; d <= 5; ++d)
      CHECK(d2.get({b, d}) == (b == d ? Scalar(1) : Scalar(0)));
}

TEST_CASE("deformation by mu") {
  const int n = 2;
  CRFrameAlgebra A = heisenberg(n);

  InvariantTensor zero_mu(n, {lo(K_H), up(K_A)});
  CRFrameAlgebra same = deform(A, zero_mu);
  CHECK(same.c == A.c);

  // constant symmetric mu: diagonal entries (h = delta so mu_{ab} = mu_a^{bbar})
  InvariantTensor mu(n, {lo(K_H), up(K_A)});
  mu.set({2, 4}, Scalar(Rational(1, 2)));
  mu.set({3, 5}, Scalar(Rational(1, 3)));
  mu.set({2, 5}, Scalar(Rational(1, 5)));
  mu.set({3, 4}, Scalar(Rational(1, 5)));
  CRFrameAlgebra D = deform(A, mu);
  CHECK(validate(D).ok);
  // [Zhat_a, Zhat_b] = 0: the -i mu_{ba} and +i mu_{ab} T-parts cancel
  for (int a = 2; a <= 3; ++a)
    for (int b = 2; b <= 3; ++b)
      for (int z = 1; z <= 5; ++z) CHECK(D.bracket(a, b, z).is_zero());

  // antisymmetric mu rejected
  InvariantTensor bad(n, {lo(K_H), up(K_A)});
  bad.set({2, 5}, Scalar(1));
  bad.set({3, 4}, Scalar(-1));
  CHECK_THROWS_AS(deform(A, bad), AsymmetricMu);

  // mu with |mu| = 1 on the diagonal kills the Levi form
  InvariantTensor unit(n, {lo(K_H), up(K_A)});
  unit.set({2, 4}, Scalar(1));
  unit.set({3, 5}, Scalar(1));
  CHECK_THROWS_AS(deform(A, unit), DegenerateDeformation);
}

TEST_CASE("twisted heisenberg bracket placement") {
  CRFrameAlgebra A = twisted_heisenberg(2, Scalar(Rational(1, 2)));
  CHECK(A.bracket(2, 3, 4) == Scalar(Rational(1, 2)));   // [Z1,Z2] = c Zb1
  CHECK(A.bracket(4, 5, 2) == Scalar(Rational(1, 2)));   // conjugate
  CHECK(A.bracket(3, 2, 4) == Scalar(Rational(-1, 2)));  // antisymmetry
  CHECK(A.bracket(2, 5, 4) == Scalar(Rational(1, 2)));   // Jacobi companion
  CHECK(levi_form(A).get({2, 4}) == Scalar(1));          // Levi form unchanged
}
