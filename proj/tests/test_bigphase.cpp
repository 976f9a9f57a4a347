#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "taut/bigphase.hpp"
#include "taut/integrals.hpp"

#include <stdexcept>
#include <vector>

using namespace taut;

TEST_CASE("T-operator expansion is finite and matches hand expansion") {
  CHECK(TExpr::tau(-1).terms.empty());
  CHECK(TExpr::tau(3).terms.size() == 1);

  // T(tau_m) = tau_{m+1} - <<tau_m phi>>_0 phi
  TExpr t1 = t_power(1, 4);
  REQUIRE(t1.terms.size() == 2);
  CHECK(t1.terms[0].c == Rat(1));
  CHECK(t1.terms[0].leaf == 5);
  CHECK(t1.terms[0].gs.empty());
  CHECK(t1.terms[1].c == Rat(-1));
  CHECK(t1.terms[1].leaf == 0);
  CHECK(t1.terms[1].gs == std::vector<int>{4});

  // depth 2: four branches with the expected correction factors
  TExpr t2 = t_power(2, 0);
  REQUIRE(t2.terms.size() == 4);
  CHECK(t2.terms[0].leaf == 2);
  CHECK(t2.terms[1].gs == std::vector<int>{1});
  CHECK(t2.terms[2].gs == std::vector<int>{0});
  CHECK(t2.terms[2].leaf == 1);
  CHECK(t2.terms[3].c == Rat(1));
  CHECK(t2.terms[3].gs == std::vector<int>{0, 0});

  // branch count stays tame: 2^k, well under the documented bound
  CHECK(t_power(3, 0).terms.size() == 8);
  CHECK(t_power(3, 0).terms.size() <= 16);
}

TEST_CASE("bracket evaluation reproduces point correlators") {
  // genus-1 recursion value
  CHECK(eval_bracket({1, {t_power(1, 0)}, {}}) == Rat(1, 24));
  // unstable two-point genus 0
  CHECK(eval_bracket({0, {TExpr::tau(0), TExpr::tau(0)}, {}}).is_zero());
  // plain correlators pass straight through
  CHECK(eval_bracket({2, {TExpr::tau(4)}, {}}) == psi_integral(2, {4}));
  CHECK(eval_bracket({0, {TExpr::tau(0), TExpr::tau(0), TExpr::tau(0)},
                      {1}}) == psi_integral(0, {0, 0, 0, 1}));

  // depth-2 expansion with one pending insertion, against an
  // independent hand expansion: only the shifted branch and the
  // three-point-activated correction survive
  Rat engine = eval_bracket({1, {t_power(2, 0)}, {0}});
  Rat hand = psi_integral(1, {2, 0}) -
             psi_integral(0, {0, 0, 0}) * psi_integral(1, {1});
  CHECK(engine == hand);
  CHECK(engine.is_zero());
}

TEST_CASE("twisted two-point brackets contract through boundary strata") {
  // single boundary term of the degree-1 class on two points
  CHECK(pixton_bracket(0, 1, 1, {}) == Rat(-1, 12));
  CHECK(pixton_bracket(0, 1, 1, {}) ==
        Rat(-1, 12) * psi_integral(0, {0, 1, 0, 0}));
  CHECK(pixton_bracket(0, 0, 1, {2}) == Rat(-1, 12));

  // dimension guard: mismatched psi degree vanishes
  CHECK(pixton_bracket(0, 2, 2, {}).is_zero());
  CHECK(pixton_bracket(1, 1, 2, {}).is_zero());
  CHECK(pixton_bracket(0, 0, 1, {}).is_zero());

  // the two slots are interchangeable for the point target
  for (int g = 1; g <= 2; ++g)
    for (int a = 0; a <= 3; ++a)
      for (int b = a + 1; b <= 3; ++b) {
        CAPTURE(g);
        CAPTURE(a);
        CAPTURE(b);
        CHECK(pixton_bracket(a, b, g, {}) == pixton_bracket(b, a, g, {}));
        CHECK(pixton_bracket(a, b, g, {0}) == pixton_bracket(b, a, g, {0}));
      }
}

TEST_CASE("universal equations hold at the origin") {
  std::vector<std::vector<int>> extra_sets = {{}, {0}, {0, 1}};

  for (int g = 1; g <= 2; ++g)
    for (const auto& E : extra_sets) {
      CAPTURE(g);
      CAPTURE(E.size());
      IdentityResult fp = check_identity("FP", g, g + 1, E);
      CHECK(fp.pass);
      CHECK(fp.lhs.is_zero());
      IdentityResult lx = check_identity("LiuXu", g, 0, E);
      CHECK(lx.pass);
      CHECK(lx.lhs.is_zero());
    }

  IdentityResult thm2 = check_identity("Thm1", 2, 0, {});
  CHECK(thm2.pass);
  CHECK(thm2.lhs == Rat(1, 48));
  CHECK(check_identity("Thm1", 2, 0, {0}).pass);
  CHECK(check_identity("Thm1", 2, 0, {1}).pass);

  IdentityResult thm3 = check_identity("Thm1", 3, 0, {});
  CHECK(thm3.pass);
  CHECK(check_identity("Thm1", 3, 0, {0}).pass);
  // a tau_2 insertion is the smallest one that makes genus 3 nonzero
  IdentityResult thm3t2 = check_identity("Thm1", 3, 0, {2});
  CHECK(thm3t2.pass);
  CHECK(thm3t2.lhs == Rat(1, 480));

  IdentityResult cor2 = check_identity("Cor", 2, 0, {});
  CHECK(cor2.pass);
  CHECK(cor2.lhs == Rat(1, 24));
  IdentityResult cor3 = check_identity("Cor", 3, 0, {2});
  CHECK(cor3.pass);
  CHECK(cor3.lhs == Rat(1, 240));

  IdentityResult trr = check_identity("TRR1", 1, 0, {});
  CHECK(trr.pass);
  CHECK(trr.lhs == Rat(1, 24));
  CHECK(check_identity("TRR1", 1, 1, {0}).pass);
  CHECK(check_identity("TRR1", 1, 2, {0, 1}).pass);

  IdentityResult g2 = check_identity("G2Example", 2, 0, {});
  CHECK(g2.pass);
  CHECK(g2.lhs == Rat(1, 24));
  CHECK(g2.rhs == Rat(1, 24));
}

TEST_CASE("the three l = g identities form a consistent triangle") {
  for (const std::vector<int>& E :
       std::vector<std::vector<int>>{{}, {1}, {0}}) {
    CAPTURE(E.size());
    IdentityResult a = check_identity("Thm1", 2, 0, E);
    IdentityResult b = check_identity("LiuXu", 2, 0, E);
    IdentityResult c = check_identity("Cor", 2, 0, E);
    CHECK(a.pass);
    CHECK(b.pass);
    CHECK(c.pass);
    // subtracting the vanishing disconnected part and doubling gives
    // the alternating two-point sum, which the swap turns into the
    // T-pair sum
    CHECK((a.lhs - b.lhs) * Rat(2) == c.lhs);
    CHECK(a.rhs * Rat(2) == c.rhs);
  }
}

TEST_CASE("alternating tau sums can swap tau powers for T powers") {
  for (int m = 0; m <= 4; ++m) {
    CAPTURE(m);
    CHECK(tensor_swap_check(m, 1, 1, {}));
  }
  CHECK(tensor_swap_check(2, 1, 1, {0}));
  CHECK(tensor_swap_check(2, 1, 2, {0}));
  CHECK(tensor_swap_check(3, 0, 1, {}));
}

TEST_CASE("invalid inputs are rejected") {
  CHECK_THROWS_AS(check_identity("NoSuch", 2, 0, {}),
                  std::invalid_argument);
  CHECK_THROWS_AS(check_identity("FP", 2, 2, {}), std::invalid_argument);
  CHECK_THROWS_AS(check_identity("Thm1", 1, 0, {}), std::invalid_argument);
  CHECK_THROWS_AS(check_identity("Cor", 1, 0, {}), std::invalid_argument);
  CHECK_THROWS_AS(pixton_bracket(0, 0, 0, {}), std::invalid_argument);
  CHECK_THROWS_AS(pixton_bracket(-1, 0, 1, {}), std::invalid_argument);
  CHECK_THROWS_AS(tensor_swap_check(-1, 1, 1, {}), std::invalid_argument);
}
