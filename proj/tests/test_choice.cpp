#include <doctest.h>

#include "barrec/choice.hpp"
#include "barrec/generators.hpp"

using namespace barrec;

using PF = PartialFn<Nat>;
using Seq = FiniteSeq<Nat>;

namespace {

// φ = 1, ε_n(p) = p(0) + n, q(α) = α(0) + α(1)
ChoiceParams<Nat, Nat> hand_params() {
  ChoiceParams<Nat, Nat> cp;
  cp.control = [](const InfSeq<Nat>&) -> Nat { return 1; };
  cp.eps = [](Nat n, const std::function<Nat(const Nat&)>& p) { return p(0) + n; };
  cp.q = [](const InfSeq<Nat>& a) { return a(0) + a(1); };
  return cp;
}

}  // namespace

TEST_CASE("phi and psi by hand") {
  auto cp = hand_params();
  EvalContext a, b;
  // Φ(⟨x⟩) = ⟨x, x+1⟩, so a_⟨⟩ = ε_0(λx. 2x+1) = 1
  CHECK(phi_spector(cp, Seq{}, a) == Seq{1, 2});
  CHECK(phi_spector(cp, Seq{5}, a) == Seq{5, 6});
  // Ψ({1↦x}) stops at once, so a_∅ = ε_1(λx. x) = 1
  CHECK(psi_symmetric(cp, PF{}, b) == PF{{1, 1}});
  CHECK(psi_symmetric(cp, PF{{1, 7}}, b) == PF{{1, 7}});
}

TEST_CASE("solutions of the hand example") {
  auto cp = hand_params();
  EvalContext a, b;
  auto s = solve_spector(cp, a);
  CHECK(s.n == 1);
  CHECK(s.f(0) == 1);
  CHECK(s.f(1) == 2);
  CHECK(s.p(4) == 5);  // q̂(Φ(⟨1, 4⟩)) and Φ stops at length 2
  CHECK(verify_equations(s, cp));
  CHECK(s.carrier_size() == 2);

  auto v = solve_symmetric(cp, b);
  CHECK(v.n == 1);
  CHECK(v.f(1) == 1);
  CHECK(v.p(3) == 3);
  CHECK(verify_equations(v, cp));
  CHECK(v.carrier_size() == 1);
}

TEST_CASE("equations hold on generated instances") {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    Generator g(seed);
    auto cp = make_choice(g.choice());
    CAPTURE(seed);
    EvalContext a, b, c, d;
    CHECK(verify_equations(solve_spector(cp, a), cp));
    CHECK(verify_equations(solve_symmetric(cp, b), cp));
    CHECK(check_spector_indexwise(cp, c));
    CHECK(check_symmetric_indexwise(cp, d));
  }
}

TEST_CASE("psi is a thread, a fixpoint along its thread, and agrees with its sbr definition") {
  for (std::uint64_t seed = 100; seed < 140; ++seed) {
    Generator g(seed);
    auto cp = make_choice(g.choice());
    CAPTURE(seed);
    EvalContext a, b, c;
    PF v = psi_symmetric(cp, PF{}, a);
    CHECK(is_thread(cp.control, v, Nat{0}));
    CHECK(v == psi_via_sbr(cp, PF{}, b));
    CHECK(check_psi_fixpoints(cp, c));
  }
}

TEST_CASE("memoized evaluation gives the same carriers with no more calls") {
  for (std::uint64_t seed = 200; seed < 230; ++seed) {
    Generator g(seed);
    auto cp = make_choice(g.choice());
    EvalContext a, b(kDefaultFuel, EvalMode::memoized);
    CHECK(phi_spector(cp, Seq{}, a) == phi_spector(cp, Seq{}, b));
    CHECK(b.metrics().calls <= a.metrics().calls);
  }
}

TEST_CASE("observation compares sequences on a window") {
  InfSeq<Nat> a([](const Nat& n) { return n < 100 ? Nat{0} : Nat{1}; }, 0);
  InfSeq<Nat> b(Nat{0});
  CHECK(observe_equal(a, b, Observation{}));
  CHECK_FALSE(observe_equal(a, b, Observation{64, {150}}));
  CHECK_FALSE(observe_equal(a, b, Observation{100, {}}));
}

TEST_CASE("fuel runs out") {
  ChoiceParams<Nat, Nat> cp;
  cp.control = [](const InfSeq<Nat>&) -> Nat { return 50; };
  cp.eps = [](Nat, const std::function<Nat(const Nat&)>& p) { return p(0); };
  cp.q = [](const InfSeq<Nat>& a) { return a(0); };
  EvalContext ctx(10);
  CHECK_THROWS_AS(phi_spector(cp, Seq{}, ctx), FuelExhausted);
}
