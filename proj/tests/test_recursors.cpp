#include <doctest.h>

#include <random>

#include "barrec/recursors.hpp"

using namespace barrec;

using PF = PartialFn<Nat>;
using Seq = FiniteSeq<Nat>;

TEST_CASE("br examples") {
  EvalContext ctx;
  SpectorParams<Nat, Nat> p;
  p.control = [](const InfSeq<Nat>&) -> Nat { return 0; };
  p.body = [](const Seq& t) { return t.empty() ? Nat{999} : t[0]; };
  p.step = [](const Seq&, const auto& k) { return k(9) + 1; };
  CHECK(br(p, Seq{4}, ctx) == 4);
  CHECK(br(p, Seq{}, ctx) == 10);

  SpectorParams<Nat, Nat> q;
  q.control = [](const InfSeq<Nat>& a) { return a(0); };
  q.step = [](const Seq&, const auto& k) { return k(0); };
  q.body = [](const Seq& t) { return Nat(t.size()); };
  CHECK(br(q, Seq{}, ctx) == 1);
}

TEST_CASE("sbr examples") {
  EvalContext ctx;
  SymmetricParams<Nat, Nat> p;
  p.control = [](const InfSeq<Nat>&) -> Nat { return 0; };
  p.body = [](const PF& v) { return v.contains(0) ? v.at(0) : Nat{999}; };
  p.step = [](const PF&, const auto& k) { return k(9) + 1; };
  CHECK(sbr(p, PF{{0, 3}}, ctx) == 3);
  CHECK(sbr(p, PF{}, ctx) == 10);

  SymmetricParams<Nat, Nat> q;
  q.control = [](const InfSeq<Nat>& a) { return a(0) % 2; };
  q.step = [](const PF&, const auto& k) { return k(1); };
  q.body = [](const PF& v) { return Nat(v.size()); };
  CHECK(sbr(q, PF{}, ctx) == 2);
}

TEST_CASE("theta restricts to threads") {
  EvalContext ctx;
  SymmetricParams<Nat, Nat> p;
  p.control = [](const InfSeq<Nat>&) -> Nat { return 0; };
  p.body = [](const PF& v) { return Nat(v.size()) + 100; };
  p.step = [](const PF&, const auto& k) { return k(2); };
  p.default_result = 77;
  CHECK(theta(p, PF{{5, 1}}, ctx) == 77);
  CHECK(theta(p, PF{}, ctx) == sbr(p, PF{}, ctx));
}

TEST_CASE("sbr over booleans and pairs of booleans") {
  EvalContext ctx;
  SymmetricParams<Nat, Nat, bool> p;
  p.control = [](const InfSeq<Nat, bool>&) { return false; };
  p.body = [](const PartialFn<Nat, bool>& v) { return v.at(false); };
  p.step = [](const PartialFn<Nat, bool>&, const auto& k) { return k(1); };
  CHECK(sbr_discrete(p, PartialFn<Nat, bool>{{false, 42}}, ctx) == 42);

  using D = std::pair<bool, bool>;
  SymmetricParams<Nat, Nat, D> q;
  // walks the four points of B×B in a data-dependent order
  q.control = [](const InfSeq<Nat, D>& a) -> D {
    bool f = a({false, false}) % 2 == 1;
    if (a({f, true}) == 0) return {f, true};
    if (a({!f, true}) == 0) return {!f, true};
    if (a({!f, false}) == 0) return {!f, false};
    return {f, false};
  };
  q.body = [](const PartialFn<Nat, D>& v) { return Nat(v.size()); };
  q.step = [](const PartialFn<Nat, D>& v, const auto& k) { return k(v.size() + 1); };
  EvalContext c2;
  Nat r = sbr_discrete(q, PartialFn<Nat, D>{}, c2);
  CHECK(r <= 4);
  CHECK(c2.metrics().calls <= 5);
}

namespace {
// finitely supported control g(α0..α(k-1)) mod m
struct Inst {
  Nat k, m, a, b;
  Nat control(const InfSeq<Nat>& al) const {
    Nat s = b;
    for (Nat i = 0; i < k; ++i) s = s * a + al(i) * (i + 1);
    return s % m;
  }
};
}  // namespace

TEST_CASE("call counts are deterministic and memoization only saves calls") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 60; ++trial) {
    Inst in{1 + rng() % 4, 1 + rng() % 8, rng() % 5, rng() % 5};
    SymmetricParams<Nat, Nat> p;
    p.control = [in](const InfSeq<Nat>& a) { return in.control(a); };
    p.body = [](const PF& v) {
      Nat s = 0;
      for (auto& [n, x] : v) s += (n + 1) * x;
      return s;
    };
    p.step = [](const PF& v, const auto& k) { return k(v.size() % 3) + 2 * k(1); };
    SpectorParams<Nat, Nat> sp;
    sp.control = p.control;
    sp.body = [](const Seq& t) {
      Nat s = 0;
      for (Nat x : t) s = s * 3 + x;
      return s;
    };
    sp.step = [](const Seq& t, const auto& k) { return k(t.size() % 2) + k(2); };

    EvalContext a, b, m(kDefaultFuel, EvalMode::memoized);
    Nat r1 = sbr(p, PF{}, a), r2 = sbr(p, PF{}, b), r3 = sbr(p, PF{}, m);
    CHECK(r1 == r2);
    CHECK(r1 == r3);
    CHECK(a.metrics().calls == b.metrics().calls);
    CHECK(m.metrics().calls <= a.metrics().calls);
    CHECK(a.metrics().max_domain <= in.m);

    EvalContext c, d(kDefaultFuel, EvalMode::memoized);
    CHECK(br(sp, Seq{}, c) == br(sp, Seq{}, d));
    CHECK(d.metrics().calls <= c.metrics().calls);
    CHECK(c.metrics().max_domain <= std::max(in.k, in.m));

    // Θ agrees with sBR on threads
    auto alpha = InfSeq<Nat>([&](const Nat& n) { return (n + trial) % 3; }, 0);
    for (Nat i = 0; i < 4; ++i) {
      auto u = thread_of_total(p.control, alpha, i, Nat{0});
      EvalContext e1, e2;
      CHECK(theta(p, u, e1) == sbr(p, u, e2));
    }
  }
}

TEST_CASE("one-entry evaluations stop exactly at the bar") {
  SpectorParams<Nat, Nat> p;
  p.control = [](const InfSeq<Nat>& a) { return a(0); };
  p.body = [](const Seq&) { return Nat{1}; };
  p.step = [](const Seq&, const auto& k) { return k(5); };
  EvalContext c1;
  br(p, Seq{0}, c1);  // 0 < 1 stops
  CHECK(c1.metrics().calls == 1);
  EvalContext c2;
  br(p, Seq{3}, c2);  // 3 ≥ 1, then ⟨3,5⟩, ⟨3,5,5⟩, ⟨3,5,5,5⟩ stops
  CHECK(c2.metrics().calls == 4);
  CHECK(c2.metrics().max_domain == 4);
}

TEST_CASE("fuel limit") {
  SymmetricParams<Nat, Nat> p;
  p.control = [](const InfSeq<Nat>& a) {
    Nat i = 0;
    while (a(i) != 0) ++i;
    return i;
  };
  p.body = [](const PF&) { return Nat{0}; };
  p.step = [](const PF&, const auto& k) { return k(1); };
  EvalContext ctx(100);
  try {
    sbr(p, PF{}, ctx);
    FAIL("expected fuel exhaustion");
  } catch (const FuelExhausted& e) {
    CHECK(e.metrics().calls == 100);
  }
}
