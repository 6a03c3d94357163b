// Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any fail.
#include <chrono>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "barrec/bench.hpp"
#include "barrec/generators.hpp"
#include "barrec/hdsl.hpp"
#include "barrec/noinjection.hpp"
#include "barrec/suites.hpp"

using namespace barrec;

namespace {

using Clock = std::chrono::steady_clock;

struct Outcome {
  bool ok = true;
  std::string detail;
};

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

void fail(Outcome& o, const std::string& why) {
  if (o.ok) o.detail = why;
  o.ok = false;
}

Outcome suite_outcome(const SuiteResult& r) {
  Outcome o;
  for (const auto& t : r.tallies) {
    o.detail += (o.detail.empty() ? "" : ", ") + t.label + " " + std::to_string(t.passed) + "/" +
                std::to_string(t.passed + t.failed);
  }
  if (!r.ok()) {
    o.ok = false;
    if (!r.failures.empty()) o.detail = r.failures.front();
  }
  return o;
}

std::uint64_t count_label(const SuiteResult& r, const std::string& label) {
  for (const auto& t : r.tallies) {
    if (t.label == label) return t.passed + t.failed;
  }
  return 0;
}

Outcome closed_forms() {
  Outcome o;
  auto t0 = Clock::now();
  for (Nat n : {4, 5, 6}) {
    Functional H = builtin_h(HFamily::prod, n);
    const Nat top = Nat{1} << n;
    auto sym = counterexample(H, Recursor::symmetric);
    auto spe = counterexample(H, Recursor::spector);
    const std::string tag = "n=" + std::to_string(n) + ": ";
    if (sym.carrier_size != 1) fail(o, tag + "symmetric size " + std::to_string(sym.carrier_size));
    if (spe.carrier_size != top + 1) fail(o, tag + "spector size " + std::to_string(spe.carrier_size));
    for (const auto* c : {&sym, &spe}) {
      if (c->i != top) fail(o, tag + "i = " + std::to_string(c->i));
      for (Nat k = 0; k <= top + 16; ++k) {
        if (c->alpha(k) != (k == top ? 2u : 1u)) fail(o, tag + "alpha(" + std::to_string(k) + ")");
        if (c->beta(k) != 1) fail(o, tag + "beta(" + std::to_string(k) + ")");
      }
      if (!verify_counterexample(H, *c)) fail(o, tag + "invalid counterexample");
    }
  }
  double s = seconds_since(t0);
  if (s >= 30) fail(o, "took " + std::to_string(s) + " s");
  if (o.ok) o.detail = "sizes 1 and 17/33/65, i = 2^n, in " + std::to_string(s) + " s";
  return o;
}

Outcome leastinc_outputs() {
  Outcome o;
  Functional H = builtin_h(HFamily::leastinc, 3);
  using V = std::vector<Nat>;
  const std::vector<V> sym_expected{{1, 2, 2, 2}, {1, 1, 2, 2}, {1, 1, 1, 2}, {1, 1, 1, 1}};
  const std::vector<V> spe_expected{{1, 2, 1, 1}, {2, 1, 2, 1}, {2, 2, 1, 2}, {2, 2, 2, 1}};

  auto sym = counterexample(H, Recursor::symmetric);
  const auto& v = std::get<PartialFn<NatSeq>>(sym.carrier);
  if (v.domain() != V{0, 1, 2, 3}) {
    fail(o, "symmetric domain");
  } else {
    for (Nat j = 0; j < 4; ++j) {
      if (prefix_of(v.at(j), 4) != sym_expected[j]) fail(o, "symmetric entry " + std::to_string(j));
    }
  }
  auto spe = counterexample(H, Recursor::spector);
  const auto& t = std::get<FiniteSeq<NatSeq>>(spe.carrier);
  if (t.size() != 4) {
    fail(o, "spector length");
  } else {
    for (Nat j = 0; j < 4; ++j) {
      if (prefix_of(t[j], 4) != spe_expected[j]) fail(o, "spector entry " + std::to_string(j));
    }
  }
  for (Nat n : {3, 4, 5}) {
    Functional Hn = builtin_h(HFamily::leastinc, n);
    for (Recursor r : {Recursor::symmetric, Recursor::spector}) {
      auto c = counterexample(Hn, r);
      if (c.carrier_size != n + 1) {
        fail(o, std::string(to_string(r)) + " size " + std::to_string(c.carrier_size) + " at n=" + std::to_string(n));
      }
    }
  }
  if (o.ok) o.detail = "n=3 carriers exact, sizes 4/5/6 on both recursors";
  return o;
}

Outcome call_ordering() {
  Outcome o;
  BenchRequest req;
  req.families = all_families();
  auto cells = run_bench(req);
  auto find = [&](HFamily f, Nat n, Recursor r, EvalMode m) -> const BenchCell* {
    for (const auto& c : cells) {
      if (c.family == f && c.n == n && c.recursor == r && c.mode == m) return &c;
    }
    return nullptr;
  };
  std::string ratios;
  for (HFamily f : all_families()) {
    auto [lo, hi] = table_range(f);
    const bool contrived = f == HFamily::contrived;
    for (Nat n = lo; n <= hi; ++n) {
      for (EvalMode m : {EvalMode::plain, EvalMode::memoized}) {
        const BenchCell* sp = find(f, n, Recursor::spector, m);
        const BenchCell* sy = find(f, n, Recursor::symmetric, m);
        const std::string tag = std::string(to_string(f)) + " n=" + std::to_string(n) + " " + to_string(m);
        if (!sp || !sy || sp->fuel_exhausted || sy->fuel_exhausted || !sp->valid || !sy->valid) {
          fail(o, tag + ": missing or invalid cell");
          continue;
        }
        const BenchCell* fewer = contrived ? sp : sy;
        const BenchCell* more = contrived ? sy : sp;
        if (fewer->calls >= more->calls) {
          fail(o, tag + ": " + std::to_string(fewer->calls) + " vs " + std::to_string(more->calls));
        }
        if (n == hi && m == EvalMode::plain) {
          char buf[96];
          std::snprintf(buf, sizeof buf, "%s%s %llu/%llu", ratios.empty() ? "" : ", ", to_string(f),
                        static_cast<unsigned long long>(fewer->calls), static_cast<unsigned long long>(more->calls));
          ratios += buf;
        }
      }
    }
  }
  if (o.ok) o.detail = "plain calls at top of range (fewer/more): " + ratios;
  return o;
}

Outcome dsl_conformance() {
  Outcome o;
  std::size_t agreed = 0;
  for (HFamily f : all_families()) {
    auto [lo, hi] = table_range(f);
    Generator gen(2024 + static_cast<std::uint64_t>(f));
    for (int k = 0; k < 100; ++k) {
      Nat n = lo + k % (hi - lo + 1);
      Functional a = builtin_h(f, n);
      Functional b = hdsl::as_functional(hdsl::parse(hdsl::family_source(f, n)));
      NatSeq g = gen.sequence(n + 2, 4);
      if (a(g) == b(g)) {
        ++agreed;
      } else {
        fail(o, std::string(to_string(f)) + " disagrees at n=" + std::to_string(n));
      }
    }
  }
  std::size_t round_trips = 0;
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    Generator g(seed);
    auto e = g.expr(4);
    std::string text;
    try {
      text = hdsl::print(e);
      if (hdsl::equal(hdsl::parse(text), e)) {
        ++round_trips;
        continue;
      }
    } catch (const std::exception& ex) {
      text += std::string(" (") + ex.what() + ")";
    }
    fail(o, "round trip: " + text);
  }
  if (o.ok) {
    o.detail = std::to_string(agreed) + " family evaluations agree, " + std::to_string(round_trips) +
               " round trips";
  }
  return o;
}

}  // namespace

int main() {
  const std::uint64_t seed = 1;
  struct Criterion {
    const char* name;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria{
      {"product closed forms", closed_forms},
      {"least-increase carriers", leastinc_outputs},
      {"call-count ordering", call_ordering},
      {"equation suite", [&] {
         auto r = run_equations_suite(seed, 100);
         return suite_outcome(r);
       }},
      {"index-wise equations", [&] {
         auto r = run_indexwise_suite(seed, 50);
         return suite_outcome(r);
       }},
      {"interdefinability", [&] {
         auto t0 = Clock::now();
         auto r = run_interdef_suite(seed, 200);
         Outcome o = suite_outcome(r);
         if (count_label(r, "br from sbr") != 200 || count_label(r, "sbr from br") != 200) {
           fail(o, "wrong number of comparisons");
         }
         if (count_label(r, "diagonal of s_{u,i} is [u]_i") < 100) fail(o, "fewer than 100 thread inputs");
         double s = seconds_since(t0);
         if (s >= 300) fail(o, "took " + std::to_string(s) + " s");
         return o;
       }},
      {"thread laws", [&] { return suite_outcome(run_threads_suite(seed, 500)); }},
      {"counterexample validity", [&] { return suite_outcome(run_counterexample_suite(seed, 100)); }},
      {"dsl conformance", dsl_conformance},
  };

  int failed = 0;
  int index = 1;
  for (const auto& c : criteria) {
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.ok = false;
      o.detail = std::string("exception: ") + e.what();
    }
    std::printf("%s %d %s: %s\n", o.ok ? "PASS" : "FAIL", index++, c.name, o.detail.c_str());
    std::fflush(stdout);
    if (!o.ok) ++failed;
  }
  return failed == 0 ? 0 : 1;
}
