#include <doctest.h>

#include <random>

#include "barrec/canonical.hpp"
#include "barrec/pfun.hpp"

using namespace barrec;

using PF = PartialFn<Nat>;

TEST_CASE("update keeps existing values") {
  CHECK(update(PF{}, 3, 7) == PF{{3, 7}});
  CHECK(update(PF{{1, 1}}, 1, 2) == PF{{1, 1}});
  CHECK(update(PF{{1, 1}, {2, 2}}, 3, 3) == PF{{1, 1}, {2, 2}, {3, 3}});
  // the brace constructor reads left to right with the same priority
  CHECK(PF{{4, 1}, {4, 9}}.at(4) == 1);
}

TEST_CASE("merge prefers the left argument") {
  PF v{{0, 5}, {1, 6}};
  CHECK(merge(PF{}, v) == v);
  CHECK(merge(v, PF{}) == v);
  CHECK(merge(PF{{0, 1}}, PF{{0, 2}, {1, 3}}) == PF{{0, 1}, {1, 3}});
  CHECK(merge(FiniteSeq<Nat>{7}, FiniteSeq<Nat>{8, 9}) == FiniteSeq<Nat>{7, 9});
  CHECK(merge(FiniteSeq<Nat>{7, 8}, FiniteSeq<Nat>{1}) == FiniteSeq<Nat>{7, 8});
}

TEST_CASE("extension order") {
  CHECK(leq(PF{}, PF{{3, 3}}));
  CHECK(leq(PF{{1, 1}}, PF{{1, 1}, {2, 2}}));
  CHECK_FALSE(leq(PF{{1, 1}}, PF{{1, 2}}));
  CHECK(strictly_leq(PF{{1, 1}}, PF{{1, 1}, {2, 2}}));
  CHECK_FALSE(strictly_leq(PF{{1, 1}}, PF{{1, 1}}));
}

TEST_CASE("canonical extension") {
  auto z = extend_hat(PF{}, Nat{0});
  CHECK(z(0) == 0);
  CHECK(z(1000) == 0);
  auto h = extend_hat(PF{{2, 5}}, Nat{0});
  CHECK(h(0) == 0);
  CHECK(h(1) == 0);
  CHECK(h(2) == 5);
  CHECK(h(3) == 0);
  auto s = extend_hat(FiniteSeq<Nat>{4, 4}, Nat{0});
  CHECK(s(1) == 4);
  CHECK(s(2) == 0);
  CHECK(s.default_value() == 0);
}

TEST_CASE("bounded search returns the bound when nothing matches") {
  CHECK(bounded_search(5, [](Nat i) { return i == 3; }) == 3);
  CHECK(bounded_search(5, [](Nat) { return false; }) == 5);
  CHECK(bounded_search(0, [](Nat) { return true; }) == 0);
}

TEST_CASE("sequence helpers") {
  InfSeq<Nat> a([](const Nat& n) { return n * n; }, 0);
  CHECK(initial_segment(a, 4) == FiniteSeq<Nat>{0, 1, 4, 9});
  CHECK(as_partial(FiniteSeq<Nat>{3, 4}) == PF{{0, 3}, {1, 4}});
  auto o = overlay(PF{{1, 100}}, a);
  CHECK(o(1) == 100);
  CHECK(o(3) == 9);
  CHECK(FiniteSeq<Nat>{1, 2, 3}.prefix(2) == FiniteSeq<Nat>{1, 2});
}

TEST_CASE("memoized InfSeq answers repeat queries from cache") {
  int hits = 0;
  InfSeq<Nat> a(
      [&hits](const Nat& n) {
        ++hits;
        return n + 1;
      },
      0);
  auto m = a.memoized();
  CHECK(m(5) == 6);
  CHECK(m(5) == 6);
  CHECK(hits == 1);
  CHECK(a(5) == 6);
  CHECK(hits == 2);
}

TEST_CASE("json layout") {
  PF u{{10, 1}, {2, 7}};
  CHECK(json_of(u).dump() == R"({"2":7,"10":1})");
  CHECK(json_of(FiniteSeq<Nat>{1, 2}).dump() == "[1,2]");
  CHECK(partial_from_json<Nat>(json_of(u)) == u);
  CHECK_THROWS(partial_from_json<Nat>(nlohmann::ordered_json::parse(R"({"x":1})")));
}

TEST_CASE("canonical keys") {
  CHECK(canonical_key(PF{{1, 2}}) == canonical_key(update(PF{}, 1, Nat{2})));
  CHECK(canonical_key(PF{{1, 2}}) != canonical_key(PF{{1, 3}}));
  InfSeq<Nat> a;
  auto b = a;
  CHECK(canonical_key(a) == canonical_key(b));
  CHECK(canonical_key(a) != canonical_key(InfSeq<Nat>{}));
  struct Opaque {};
  CHECK_THROWS_AS(canonical_key(Opaque{}), NotKeyable);
}

// Properties against a std::map model.
TEST_CASE("properties on random partial functions") {
  std::mt19937_64 rng(7);
  auto gen = [&rng] {
    PF u;
    std::map<Nat, Nat> model;
    Nat k = rng() % 6;
    for (Nat j = 0; j < k; ++j) {
      Nat n = rng() % 8, x = rng() % 4;
      u = update(u, n, x);
      model.emplace(n, x);
    }
    return std::make_pair(u, model);
  };
  for (int trial = 0; trial < 300; ++trial) {
    auto [u, mu] = gen();
    auto [v, mv] = gen();
    auto [w, mw] = gen();
    Nat n = rng() % 8, x = rng() % 4;
    CHECK(update(u, n, x).size() == u.size() + (u.contains(n) ? 0 : 1));
    CHECK(extend_hat(update(u, n, x), Nat{0})(n) == (u.contains(n) ? u.at(n) : x));
    CHECK(merge(merge(u, v), w) == merge(u, merge(v, w)));
    CHECK(merge(u, u) == u);
    CHECK(leq(u, merge(u, v)));
    CHECK(leq(u, u));
    if (leq(u, v) && leq(v, u)) CHECK(u == v);
    if (leq(u, v) && leq(v, w)) CHECK(leq(u, w));
    std::map<Nat, Nat> mm = mu;
    mm.insert(mv.begin(), mv.end());
    PF expected;
    for (auto& [i, y] : mm) expected = update(expected, i, y);
    CHECK(merge(u, v) == expected);
    Nat prev = 0;
    bool first = true;
    for (auto& [i, y] : u) {
      if (!first) CHECK(i > prev);
      prev = i;
      first = false;
    }
  }
}
