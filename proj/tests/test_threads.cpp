#include <doctest.h>

#include <algorithm>

#include "barrec/threads.hpp"

using namespace barrec;

using PF = PartialFn<Nat>;

namespace {
Nat max3(const InfSeq<Nat>& a) { return std::max({a(0), a(1), a(2)}); }
const Control<Nat> kMaxPlus1 = [](const InfSeq<Nat>& a) { return max3(a) + 1; };
const Control<Nat> kMax = [](const InfSeq<Nat>& a) { return max3(a); };
const Control<Nat> kZero = [](const InfSeq<Nat>&) -> Nat { return 0; };
const PF kIdentity123{{1, 1}, {2, 2}, {3, 3}};
InfSeq<Nat> seq(std::function<Nat(Nat)> f) {
  return InfSeq<Nat>([f](const Nat& n) { return f(n); }, 0);
}
}  // namespace

TEST_CASE("threads of a partial function") {
  CHECK(thread_of_partial(kMaxPlus1, kIdentity123, 1, Nat{0}) == PF{{1, 1}});
  CHECK(thread_of_partial(kMaxPlus1, kIdentity123, 2, Nat{0}) == PF{{1, 1}, {2, 2}});
  CHECK(thread_of_partial(kMaxPlus1, kIdentity123, 3, Nat{0}) == kIdentity123);
  for (Nat i = 0; i < 5; ++i) CHECK(thread_of_partial(kMax, kIdentity123, i, Nat{0}).empty());
  CHECK(thread_of_partial(kMaxPlus1, kIdentity123, 0, Nat{0}).empty());
}

TEST_CASE("threads of a total sequence") {
  auto id = seq([](Nat n) { return n; });
  CHECK(thread_of_total(kZero, id, 1, Nat{0}) == PF{{0, 0}});
  CHECK(thread_of_total(kZero, id, 2, Nat{0}) == PF{{0, 0}});
  Control<Nat> first = [](const InfSeq<Nat>& a) { return a(0); };
  CHECK(thread_of_total(first, seq([](Nat n) { return n + 1; }), 2, Nat{0}) == PF{{0, 1}, {1, 2}});
  CHECK(thread_of_total(first, id, 0, Nat{0}).empty());
}

TEST_CASE("thread predicate and decomposition") {
  CHECK(is_thread(kMaxPlus1, kIdentity123, Nat{0}));
  CHECK_FALSE(is_thread(kMax, kIdentity123, Nat{0}));
  CHECK(is_thread(kMax, PF{}, Nat{0}));
  auto d = thread_decomposition(kMaxPlus1, kIdentity123, Nat{0});
  REQUIRE(d);
  CHECK(*d == std::vector<std::pair<Nat, Nat>>{{1, 1}, {2, 2}, {3, 3}});
  CHECK(thread_decomposition(kMax, PF{}, Nat{0})->empty());
  CHECK_FALSE(thread_decomposition(kMax, kIdentity123, Nat{0}));
}

TEST_CASE("trace records stabilization") {
  auto t = trace_thread_of_partial(kMaxPlus1, kIdentity123, 10, Nat{0});
  CHECK(t.steps.size() == 4);
  CHECK(t.stabilized);
  CHECK(t.steps.back().index == 3);  // already in the thread
  CHECK(t.steps.back().defined);
  CHECK(json_of(t)["final"].dump() == R"({"1":1,"2":2,"3":3})");
  auto m = trace_thread_of_partial(kMax, kIdentity123, 10, Nat{0});
  CHECK(m.steps.size() == 1);
  CHECK(m.final.empty());
}

TEST_CASE("theta bound and witnesses") {
  auto ones = seq([](Nat) { return 1; });
  CHECK(theta_bound(kZero, ones, Nat{0}) == 1);
  Control<Nat> parity = [](const InfSeq<Nat>& a) { return a(0) % 2; };
  CHECK(theta_bound(parity, ones, Nat{0}) == 2);
  auto id = seq([](Nat n) { return n; });
  CHECK(theta_bound(kMaxPlus1, id, Nat{0}) == 3);

  CHECK(sspec_witness(kZero, ones, Nat{0}) == 1);
  CHECK(sspec_witness(kMaxPlus1, id, Nat{0}) == 3);
  Control<Nat> first = [](const InfSeq<Nat>& a) { return a(0); };
  auto succ = seq([](Nat n) { return n + 1; });
  Nat w = sspec_witness(first, succ, Nat{0});
  CHECK(w <= theta_bound(first, succ, Nat{0}));
  auto t = thread_of_total(first, succ, w, Nat{0});
  CHECK(t.contains(first(extend_hat(t, Nat{0}))));

  CHECK(spec_witness(kZero, ones, Nat{0}) == 1);
  CHECK(spec_witness(first, seq([](Nat) { return 5; }), Nat{0}) == 6);
  Control<Nat> sum2 = [](const InfSeq<Nat>& a) { return a(0) + a(1); };
  CHECK(spec_witness(sum2, ones, Nat{0}) == 3);
}

// Brute force: the least N with φ(ᾱN extended by zero) < N.
TEST_CASE("spec witness is the least Spector point") {
  for (Nat c = 0; c < 6; ++c) {
    for (Nat k = 1; k < 4; ++k) {
      auto alpha = seq([c](Nat n) { return (n * 3 + c) % 7; });
      Control<Nat> phi = [k](const InfSeq<Nat>& a) {
        Nat s = 0;
        for (Nat i = 0; i < k; ++i) s += a(i);
        return s % 9;
      };
      Nat brute = 0;
      while (!(phi(extend_hat(initial_segment(alpha, brute), Nat{0})) < brute)) ++brute;
      CHECK(spec_witness(phi, alpha, Nat{0}) == brute);
    }
  }
}

TEST_CASE("theta bound reports fuel exhaustion") {
  EvalContext ctx(50);
  Control<Nat> runaway = [](const InfSeq<Nat>& a) {
    Nat i = 0;
    while (a(i) != 0) ++i;
    return i;
  };
  auto ones = seq([](Nat) { return 1; });
  // the control keeps naming a fresh index, so θ never reaches its base case
  CHECK_THROWS_AS(theta_bound(runaway, ones, Nat{0}, &ctx), FuelExhausted);
}
