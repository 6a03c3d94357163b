#pragma once

// φ-threads of finite partial functions and of total sequences, the thread
// predicate, and the termination bounds built from them.

#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include <json.hpp>

#include "barrec/context.hpp"
#include "barrec/pfun.hpp"
#include "barrec/tagged.hpp"

namespace barrec {

template <class X>
using Control = std::function<Nat(const InfSeq<X>&)>;

template <class X>
struct ThreadStep {
  Nat index = 0;
  bool defined = false;
  std::optional<X> value;
};

template <class X>
struct ThreadTrace {
  std::vector<ThreadStep<X>> steps;
  PartialFn<X> final;
  /// True when the trace stopped early because the thread can no longer grow.
  bool stabilized = false;
};

namespace detail {
inline void spend(EvalContext* ctx) {
  if (ctx) ctx->spend();
}
}  // namespace detail

/// Builds [u]_i step by step. Stops early once the thread is stable, in which
/// case every later step would repeat the last one.
template <class X>
ThreadTrace<X> trace_thread_of_partial(const Control<X>& control, const PartialFn<X>& u, Nat i, const X& zero,
                                       EvalContext* ctx = nullptr) {
  ThreadTrace<X> trace;
  PartialFn<X> cur;
  for (Nat k = 0; k < i; ++k) {
    detail::spend(ctx);
    Nat n = control(extend_hat(cur, zero));
    const X* x = u.find(n);
    ThreadStep<X> step{n, x != nullptr, std::nullopt};
    if (x) step.value = *x;
    trace.steps.push_back(std::move(step));
    if (!x || cur.contains(n)) {
      trace.stabilized = true;
      break;
    }
    cur = update(cur, n, *x);
  }
  trace.final = cur;
  return trace;
}

/// [u]^φ_i
template <class X>
PartialFn<X> thread_of_partial(const Control<X>& control, const PartialFn<X>& u, Nat i, const X& zero,
                               EvalContext* ctx = nullptr) {
  return trace_thread_of_partial(control, u, i, zero, ctx).final;
}

/// [α]^φ_i
template <class X>
PartialFn<X> thread_of_total(const Control<X>& control, const InfSeq<X>& alpha, Nat i, const X& zero,
                             EvalContext* ctx = nullptr) {
  PartialFn<X> cur;
  for (Nat k = 0; k < i; ++k) {
    detail::spend(ctx);
    Nat n = control(extend_hat(cur, zero));
    if (cur.contains(n)) break;  // ⊕ is a no-op from here on
    cur = update(cur, n, alpha(n));
  }
  return cur;
}

/// S_φ(u)
template <class X>
bool is_thread(const Control<X>& control, const PartialFn<X>& u, const X& zero, EvalContext* ctx = nullptr) {
  return thread_of_partial(control, u, u.size(), zero, ctx).size() == u.size();
}

/// The pairs (n_j, u(n_j)) with u = (n_0,x_0) ⊕ ... ⊕ (n_{l-1},x_{l-1}), or
/// nothing when u is not a thread.
template <class X>
std::optional<std::vector<std::pair<Nat, X>>> thread_decomposition(const Control<X>& control,
                                                                   const PartialFn<X>& u, const X& zero,
                                                                   EvalContext* ctx = nullptr) {
  auto trace = trace_thread_of_partial(control, u, u.size(), zero, ctx);
  if (trace.final.size() != u.size()) return std::nullopt;
  std::vector<std::pair<Nat, X>> out;
  out.reserve(u.size());
  for (const auto& s : trace.steps) out.emplace_back(s.index, *s.value);
  return out;
}

/// θ_{φ,α}(∅), unfolded iteratively.
template <class X>
Nat theta_bound(const Control<X>& control, const InfSeq<X>& alpha, const X& zero, EvalContext* ctx = nullptr) {
  EvalContext local;
  EvalContext& c = ctx ? *ctx : local;
  PartialFn<X> u;
  Nat count = 0;
  for (;;) {
    c.spend();
    Nat n = control(extend_hat(u, zero));
    if (u.contains(n)) return count;
    u = update(u, n, alpha(n));
    ++count;
  }
}

/// The least n with φ̂([α]_n) ∈ dom([α]_n), searched below the θ bound.
template <class X>
Nat sspec_witness(const Control<X>& control, const InfSeq<X>& alpha, const X& zero, EvalContext* ctx = nullptr) {
  Nat bound = theta_bound(control, alpha, zero, ctx);
  for (Nat n = 0; n <= bound; ++n) {
    PartialFn<X> t = thread_of_total(control, alpha, n, zero, ctx);
    detail::spend(ctx);
    if (t.contains(control(extend_hat(t, zero)))) return n;
  }
  throw InternalInvariantViolation("no symmetric witness below the theta bound");
}

/// An N with φ̂(ᾱN) < N, obtained from the symmetric witness of the lifted
/// control on ⟨α(n), 1⟩.
template <class X>
Nat spec_witness(const Control<X>& control, const InfSeq<X>& alpha, const X& zero, EvalContext* ctx = nullptr) {
  using T = TaggedValue<X>;
  InfSeq<T> lifted([alpha](const Nat& n) { return T{alpha(n), true}; }, tagged_zero(zero));
  Control<T> lifted_control = [control, zero](const InfSeq<T>& beta) -> Nat {
    InfSeq<X> values([beta](const Nat& k) { return beta(k).value; }, zero);
    return bounded_search(control(values), [&](Nat i) { return !beta(i).flag; });
  };
  return sspec_witness(lifted_control, lifted, tagged_zero(zero), ctx);
}

template <class X>
nlohmann::ordered_json json_of(const ThreadTrace<X>& trace) {
  nlohmann::ordered_json steps = nlohmann::ordered_json::array();
  for (const auto& s : trace.steps) {
    nlohmann::ordered_json j;
    j["n"] = s.index;
    j["defined"] = s.defined;
    j["value"] = s.value ? nlohmann::ordered_json(*s.value) : nlohmann::ordered_json(nullptr);
    steps.push_back(std::move(j));
  }
  nlohmann::ordered_json out;
  out["steps"] = std::move(steps);
  out["final"] = json_of(trace.final);
  return out;
}

}  // namespace barrec
