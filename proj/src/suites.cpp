#include "barrec/suites.hpp"

#include <chrono>
#include <functional>
#include <set>

#include "barrec/choice.hpp"
#include "barrec/generators.hpp"
#include "barrec/hdsl.hpp"
#include "barrec/interdef.hpp"
#include "barrec/noinjection.hpp"
#include "barrec/recursors.hpp"
#include "barrec/threads.hpp"

namespace barrec {

Tally& SuiteResult::tally(const std::string& label) {
  for (auto& t : tallies) {
    if (t.label == label) return t;
  }
  tallies.push_back(Tally{label, 0, 0});
  return tallies.back();
}

void SuiteResult::record(const std::string& label, bool ok, const std::string& what) {
  Tally& t = tally(label);
  if (ok) {
    ++t.passed;
    return;
  }
  ++t.failed;
  if (failures.size() < 10) failures.push_back(label + ": " + what);
}

std::uint64_t SuiteResult::passed() const {
  std::uint64_t n = 0;
  for (const auto& t : tallies) n += t.passed;
  return n;
}

std::uint64_t SuiteResult::failed() const {
  std::uint64_t n = 0;
  for (const auto& t : tallies) n += t.failed;
  return n;
}

nlohmann::ordered_json json_of(const SuiteResult& r) {
  nlohmann::ordered_json j;
  j["suite"] = r.name;
  j["passed"] = r.passed();
  j["failed"] = r.failed();
  nlohmann::ordered_json ts = nlohmann::ordered_json::array();
  for (const auto& t : r.tallies) ts.push_back({{"check", t.label}, {"passed", t.passed}, {"failed", t.failed}});
  j["checks"] = std::move(ts);
  j["failures"] = r.failures;
  return j;
}

const std::vector<FamilyRange>& table_ranges() {
  static const std::vector<FamilyRange> kRanges{
      {"prod", 4, 6}, {"prodpow", 3, 4}, {"leastinc", 3, 5}, {"contrived", 2, 7}};
  return kRanges;
}

namespace {

using Clock = std::chrono::steady_clock;

// Runs one check, turning exceptions into a recorded failure.
void guarded(SuiteResult& r, const std::string& label, const std::string& what, const std::function<bool()>& f) {
  bool ok = false;
  std::string why = what;
  try {
    ok = f();
  } catch (const std::exception& e) {
    why += " threw: ";
    why += e.what();
  }
  r.record(label, ok, why);
}

std::string case_name(std::uint64_t seed, std::uint64_t k) {
  return "seed " + std::to_string(seed) + " case " + std::to_string(k);
}

template <class F>
SuiteResult timed(const std::string& name, F&& body) {
  SuiteResult r;
  r.name = name;
  auto t0 = Clock::now();
  body(r);
  r.wall_ms = std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
  return r;
}

}  // namespace

SuiteResult run_threads_suite(std::uint64_t seed, std::uint64_t cases) {
  return timed("threads", [&](SuiteResult& r) {
    for (std::uint64_t k = 0; k < cases; ++k) {
      Generator g(seed * 1000003 + k);
      ControlSpec spec = g.control(7);
      Control<Nat> phi = spec;
      InfSeq<Nat> alpha = g.sequence(8, 4);
      PartialFn<Nat> u = g.coin() ? thread_of_total(phi, alpha, g.below(6), Nat{0}) : g.partial(7, 4, 5);
      const std::string name = case_name(seed, k) + " " + spec.describe();

      guarded(r, "decomposition equivalence", name, [&] {
        bool thread = is_thread(phi, u, Nat{0});
        auto dec = thread_decomposition(phi, u, Nat{0});
        bool shape = dec && dec->size() == u.size();
        if (shape) {
          std::set<Nat> seen;
          for (const auto& [n, x] : *dec) {
            if (!u.contains(n) || !seen.insert(n).second || u.at(n) != x) shape = false;
          }
        }
        return thread == shape;
      });

      guarded(r, "monotone", name, [&] {
        for (Nat i = 0; i <= u.size() + 2; ++i) {
          auto a = thread_of_partial(phi, u, i, Nat{0});
          auto b = thread_of_partial(phi, u, i + 1, Nat{0});
          if (!leq(a, b) || a.size() > i) return false;
          auto ta = thread_of_total(phi, alpha, i, Nat{0});
          if (!leq(ta, thread_of_total(phi, alpha, i + 1, Nat{0}))) return false;
        }
        return true;
      });

      guarded(r, "stabilization", name, [&] {
        for (Nat i = 0; i <= u.size() + 1; ++i) {
          auto ui = thread_of_partial(phi, u, i, Nat{0});
          Nat n = phi(extend_hat(ui, Nat{0}));
          if (!(ui.contains(n) || !u.contains(n))) continue;
          for (Nat j = i; j <= i + 3; ++j) {
            if (!(thread_of_partial(phi, u, j, Nat{0}) == ui)) return false;
          }
        }
        return true;
      });

      guarded(r, "sspec witness below theta", name, [&] {
        Nat w = sspec_witness(phi, alpha, Nat{0});
        auto t = thread_of_total(phi, alpha, w, Nat{0});
        return w <= theta_bound(phi, alpha, Nat{0}) && t.contains(phi(extend_hat(t, Nat{0})));
      });

      guarded(r, "spec witness", name, [&] {
        Nat N = spec_witness(phi, alpha, Nat{0});
        return phi(extend_hat(initial_segment(alpha, N), Nat{0})) < N;
      });
    }
  });
}

SuiteResult run_equations_suite(std::uint64_t seed, std::uint64_t cases) {
  return timed("equations", [&](SuiteResult& r) {
    for (std::uint64_t k = 0; k < cases; ++k) {
      Generator g(seed * 1000033 + k);
      ChoiceParams<Nat, Nat> cp = make_choice(g.choice());
      const std::string name = case_name(seed, k);
      guarded(r, "spector solution", name, [&] {
        EvalContext ctx;
        return verify_equations(solve_spector(cp, ctx), cp);
      });
      guarded(r, "symmetric solution", name, [&] {
        EvalContext ctx;
        return verify_equations(solve_symmetric(cp, ctx), cp);
      });
    }
    for (HFamily f : all_families()) {
      Nat n = f == HFamily::prod ? 4 : 3;
      NoInjectionParams cp = make_choice_params(builtin_h(f, n));
      const std::string name = std::string(to_string(f)) + ":" + std::to_string(n);
      guarded(r, "spector solution", name, [&] {
        EvalContext ctx;
        return verify_equations(solve_spector(cp, ctx), cp);
      });
      guarded(r, "symmetric solution", name, [&] {
        EvalContext ctx;
        return verify_equations(solve_symmetric(cp, ctx), cp);
      });
    }
  });
}

SuiteResult run_indexwise_suite(std::uint64_t seed, std::uint64_t cases) {
  return timed("indexwise", [&](SuiteResult& r) {
    for (std::uint64_t k = 0; k < cases; ++k) {
      Generator g(seed * 1000037 + k);
      ChoiceParams<Nat, Nat> cp = make_choice(g.choice());
      const std::string name = case_name(seed, k);
      guarded(r, "spector indexwise", name, [&] {
        EvalContext ctx;
        return check_spector_indexwise(cp, ctx);
      });
      guarded(r, "symmetric indexwise", name, [&] {
        EvalContext ctx;
        return check_symmetric_indexwise(cp, ctx);
      });
      guarded(r, "psi fixpoints", name, [&] {
        EvalContext ctx;
        return check_psi_fixpoints(cp, ctx);
      });
    }
  });
}

SuiteResult run_oracles_suite(std::uint64_t seed, std::uint64_t cases) {
  return timed("oracles", [&](SuiteResult& r) {
    for (std::uint64_t k = 0; k < cases; ++k) {
      Generator g(seed * 1000039 + k);
      RecursorSpec spec = g.recursor(6);
      auto sp = make_spector(spec);
      auto sy = make_symmetric(spec);
      FiniteSeq<Nat> s = g.finite(3, 4);
      InfSeq<Nat> alpha = g.sequence(8, 4);
      PartialFn<Nat> thread = thread_of_total(sy.control, alpha, g.below(5), Nat{0});
      PartialFn<Nat> u = g.partial(6, 4, 3);
      ChoiceParams<Nat, Nat> cp = make_choice(g.choice());
      const std::string name = case_name(seed, k) + " " + spec.control.describe();

      guarded(r, "theta agrees with sbr on threads", name, [&] {
        EvalContext a, b;
        return theta(sy, thread, a) == sbr(sy, thread, b);
      });
      guarded(r, "theta default off threads", name, [&] {
        EvalContext a;
        return is_thread(sy.control, u, Nat{0}) || theta(sy, u, a) == sy.default_result;
      });
      guarded(r, "memoized agrees with plain", name, [&] {
        EvalContext a, b(kDefaultFuel, EvalMode::memoized), c, d(kDefaultFuel, EvalMode::memoized);
        bool same = br(sp, s, a) == br(sp, s, b) && sbr(sy, u, c) == sbr(sy, u, d);
        return same && b.metrics().calls <= a.metrics().calls && d.metrics().calls <= c.metrics().calls;
      });
      guarded(r, "psi agrees with its sbr definition", name, [&] {
        EvalContext a, b;
        return psi_symmetric(cp, PartialFn<Nat>{}, a) == psi_via_sbr(cp, PartialFn<Nat>{}, b);
      });
      guarded(r, "psi result is a thread", name, [&] {
        EvalContext a;
        return is_thread(cp.control, psi_symmetric(cp, PartialFn<Nat>{}, a), Nat{0});
      });
    }
  });
}

std::vector<InterdefRecord> interdef_records(std::uint64_t seed, std::uint64_t cases) {
  std::vector<InterdefRecord> out;
  for (std::uint64_t k = 0; k < cases; ++k) {
    Generator g(seed * 1000081 + k);
    RecursorSpec spec = g.recursor(8);
    auto sp = make_spector(spec);
    auto sy = make_symmetric(spec);
    FiniteSeq<Nat> s = g.finite(3, 4);
    PartialFn<Nat> u = g.partial(8, 4, 2);
    auto compare = [&](const char* direction, auto oracle, auto translation) {
      InterdefRecord rec;
      rec.case_index = k;
      rec.direction = direction;
      rec.control = spec.control.describe();
      try {
        EvalContext a, b;
        rec.oracle = oracle(a);
        rec.translation = translation(b);
        rec.oracle_calls = a.metrics().calls;
        rec.translation_calls = b.metrics().calls;
        rec.agree = rec.oracle == rec.translation;
      } catch (const std::exception& e) {
        rec.error = e.what();
      }
      out.push_back(std::move(rec));
    };
    compare("br_from_sbr", [&](EvalContext& c) { return br(sp, s, c); },
            [&](EvalContext& c) { return br_from_sbr(sp, s, c); });
    compare("sbr_from_br", [&](EvalContext& c) { return sbr(sy, u, c); },
            [&](EvalContext& c) { return sbr_from_br(sy, u, c); });
  }
  return out;
}

SuiteResult run_interdef_suite(std::uint64_t seed, std::uint64_t cases) {
  return timed("interdef", [&](SuiteResult& r) {
    for (const auto& rec : interdef_records(seed, cases)) {
      std::string what = case_name(seed, rec.case_index) + " " + rec.control;
      if (!rec.error.empty()) what += " threw: " + rec.error;
      r.record(rec.direction == "br_from_sbr" ? "br from sbr" : "sbr from br", rec.agree, what);
    }
    // Thread inputs: half as many as instances per direction.
    for (std::uint64_t k = 0; k < (cases + 1) / 2; ++k) {
      Generator g(seed * 1000099 + k);
      RecursorSpec spec = g.recursor(8);
      auto sy = make_symmetric(spec);
      InfSeq<Nat> alpha = g.sequence(10, 4);
      PartialFn<Nat> u = thread_of_total(sy.control, alpha, g.below(7), Nat{0});
      const std::string name = case_name(seed, k) + " " + spec.control.describe();
      guarded(r, "theta from br", name, [&] {
        EvalContext a, b;
        return theta(sy, u, a) == theta_from_br(sy, u, b);
      });
      guarded(r, "diagonal of s_{u,i} is [u]_i", name, [&] {
        EvalContext ctx;
        ThetaFromBr<Nat, Nat> T(sy, ctx);
        auto dec = thread_decomposition(sy.control, u, Nat{0});
        if (!dec) return false;
        for (std::size_t i = 0; i <= u.size(); ++i) {
          auto si = T.sequence(u, i);
          if (!(diag_finite(si) == thread_of_partial(sy.control, u, i, Nat{0}))) return false;
          if (i > 0 && si.size() != (*dec)[i - 1].first + 1) return false;
        }
        return true;
      });
    }
  });
}

SuiteResult run_counterexample_suite(std::uint64_t seed, std::uint64_t cases) {
  return timed("counterexample", [&](SuiteResult& r) {
    for (const auto& range : table_ranges()) {
      HFamily f = parse_family(range.family);
      for (Nat n = range.lo; n <= range.hi; ++n) {
        Functional H = builtin_h(f, n);
        for (Recursor rec : {Recursor::spector, Recursor::symmetric}) {
          std::string name = std::string(range.family) + ":" + std::to_string(n) + " " + to_string(rec);
          guarded(r, "builtin", name, [&] { return verify_counterexample(H, counterexample(H, rec)); });
        }
      }
    }
    for (std::uint64_t k = 0; k < cases; ++k) {
      Generator g(seed * 1000117 + k);
      hdsl::ExprPtr e = g.bounded_functional(12);
      Functional H = hdsl::as_functional(e);
      for (Recursor rec : {Recursor::spector, Recursor::symmetric}) {
        std::string name = case_name(seed, k) + " " + to_string(rec) + " " + hdsl::print(e);
        guarded(r, "dsl", name, [&] { return verify_counterexample(H, counterexample(H, rec)); });
      }
    }
  });
}

SuiteResult run_dsl_suite(std::uint64_t seed, std::uint64_t cases) {
  return timed("dsl", [&](SuiteResult& r) {
    for (HFamily f : all_families()) {
      for (Nat n = 1; n <= 6; ++n) {
        Functional builtin = builtin_h(f, n);
        Functional dsl = hdsl::as_functional(hdsl::parse(hdsl::family_source(f, n)));
        Generator g(seed * 1000151 + static_cast<Nat>(f) * 100 + n);
        std::uint64_t points = (cases + 5) / 6;
        for (std::uint64_t k = 0; k < points; ++k) {
          InfSeq<Nat> gamma = g.sequence(n + 2, 4);
          std::string name = std::string(to_string(f)) + ":" + std::to_string(n) + " point " + std::to_string(k);
          guarded(r, std::string("family ") + to_string(f), name, [&] { return builtin(gamma) == dsl(gamma); });
        }
      }
    }
    for (std::uint64_t k = 0; k < 2 * cases; ++k) {
      Generator g(seed * 1000159 + k);
      hdsl::ExprPtr e = g.expr(4);
      guarded(r, "round trip", case_name(seed, k), [&] {
        std::string text = hdsl::print(e);
        hdsl::ExprPtr back = hdsl::parse(text);
        return hdsl::equal(back, e) && hdsl::print(back) == text;
      });
    }
  });
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> kNames{"threads",  "equations",      "indexwise", "oracles",
                                               "interdef", "counterexample", "dsl"};
  return kNames;
}

SuiteResult run_suite(const std::string& name, std::uint64_t seed, std::uint64_t cases) {
  auto pick = [cases](std::uint64_t def) { return cases ? cases : def; };
  if (name == "threads") return run_threads_suite(seed, pick(500));
  if (name == "equations") return run_equations_suite(seed, pick(100));
  if (name == "indexwise") return run_indexwise_suite(seed, pick(50));
  if (name == "oracles") return run_oracles_suite(seed, pick(100));
  if (name == "interdef") return run_interdef_suite(seed, pick(200));
  if (name == "counterexample") return run_counterexample_suite(seed, pick(100));
  if (name == "dsl") return run_dsl_suite(seed, pick(100));
  throw std::invalid_argument("unknown suite: " + name);
}

}  // namespace barrec
