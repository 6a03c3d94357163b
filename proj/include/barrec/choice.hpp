#pragma once

// The special recursors Φ (over finite sequences) and Ψ (over finite partial
// functions), and solutions of
//
//   φ f = n,   f n = ε_n p,   q f = p(ε_n p).
//
// Φ and Ψ are evaluated on demand: a call Φ(s) is a node whose prefix s is
// known immediately, and whose continuation (stop, or Φ(s∗a_s)) is computed
// only when an element beyond the prefix is requested. Nodes live in the
// EvalContext arena, so any lazily defined value handed out stays valid for
// as long as that context does.

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <type_traits>
#include <unordered_map>
#include <variant>
#include <vector>

#include "barrec/canonical.hpp"
#include "barrec/context.hpp"
#include "barrec/pfun.hpp"
#include "barrec/recursors.hpp"
#include "barrec/threads.hpp"

namespace barrec {

template <class X, class Y>
struct ChoiceParams {
  using Pred = std::function<Y(const X&)>;
  std::function<X(Nat, const Pred&)> eps;
  std::function<Y(const InfSeq<X>&)> q;
  Control<X> control;
  X default_value{};
};

namespace detail {

template <class X, class Y, class Carrier>
class LazySession {
 public:
  static constexpr bool kSequential = std::is_same_v<Carrier, FiniteSeq<X>>;

  struct Node {
    enum class State { pending, forcing, stopped, extended };
    Carrier arg;
    State state = State::pending;
    Node* child = nullptr;
  };

  LazySession(ChoiceParams<X, Y> cp, EvalContext& ctx) : cp_(std::move(cp)), ctx_(ctx) {}

  static LazySession* open(const ChoiceParams<X, Y>& cp, EvalContext& ctx) {
    return ctx.retain(std::make_shared<LazySession>(cp, ctx));
  }

  Node* make(Carrier c) {
    std::string key;
    if (ctx_.memoized()) {
      key = canonical_key(c);
      if (auto it = shared_.find(key); it != shared_.end()) return it->second;
    }
    auto node = std::make_shared<Node>();
    node->arg = std::move(c);
    Node* raw = ctx_.retain(std::move(node));
    if (ctx_.memoized()) shared_.emplace(std::move(key), raw);
    return raw;
  }

  /// Decides whether the call stops and, if not, creates the recursive call.
  void force(Node* n) {
    using S = typename Node::State;
    if (n->state == S::forcing) throw InternalInvariantViolation("recursor call depends on its own result");
    if (n->state != S::pending) return;
    n->state = S::forcing;
    ctx_.enter(n->arg.size());
    const Carrier base = n->arg;
    Nat idx;
    bool stop;
    if constexpr (kSequential) {
      idx = base.size();
      stop = cp_.control(extend_hat(base, cp_.default_value)) < idx;
    } else {
      idx = cp_.control(extend_hat(base, cp_.default_value));
      stop = base.contains(idx);
    }
    if (stop) {
      n->state = S::stopped;
      return;
    }
    X a = cp_.eps(idx, [this, base, idx](const X& x) { return cp_.q(hat(make(extend(base, idx, x)))); });
    n->child = make(extend(base, idx, std::move(a)));
    n->state = S::extended;
  }

  /// The value of the call's result at j, or null where it is undefined.
  const X* element(Node* n, Nat j) {
    for (;;) {
      if (const X* x = find(n->arg, j)) return x;
      force(n);
      if (n->state == Node::State::stopped) return nullptr;
      n = n->child;
    }
  }

  InfSeq<X> hat(Node* n) {
    return InfSeq<X>(
        [this, n](const Nat& j) {
          const X* x = element(n, j);
          return x ? *x : cp_.default_value;
        },
        cp_.default_value);
  }

  Carrier result(Node* n) {
    for (;;) {
      force(n);
      if (n->state == Node::State::stopped) return n->arg;
      n = n->child;
    }
  }

  const ChoiceParams<X, Y>& params() const { return cp_; }

 private:
  static Carrier extend(const Carrier& c, Nat idx, X x) {
    if constexpr (kSequential) {
      (void)idx;
      return append(c, std::move(x));
    } else {
      return update(c, idx, std::move(x));
    }
  }
  static const X* find(const Carrier& c, Nat j) {
    if constexpr (kSequential) {
      return j < c.size() ? &c[j] : nullptr;
    } else {
      return c.find(j);
    }
  }

  ChoiceParams<X, Y> cp_;
  EvalContext& ctx_;
  std::unordered_map<std::string, Node*> shared_;
};

/// Owns one fresh context per invocation of an extracted functional p.
class ContextPool {
 public:
  ContextPool(std::uint64_t fuel, EvalMode mode) : fuel_(fuel), mode_(mode) {}
  EvalContext& fresh() {
    std::lock_guard<std::mutex> lock(mutex_);
    contexts_.push_back(std::make_unique<EvalContext>(fuel_, mode_));
    return *contexts_.back();
  }

 private:
  std::uint64_t fuel_;
  EvalMode mode_;
  std::mutex mutex_;
  std::vector<std::unique_ptr<EvalContext>> contexts_;
};

}  // namespace detail

template <class X, class Y>
using SpectorSession = detail::LazySession<X, Y, FiniteSeq<X>>;
template <class X, class Y>
using SymmetricSession = detail::LazySession<X, Y, PartialFn<X>>;

/// Φ(s) = s @ (⟨⟩ if φ(ŝ) < |s| else Φ(s∗a_s)), a_s = ε_|s|(λx. q̂(Φ(s∗x))).
template <class X, class Y>
FiniteSeq<X> phi_spector(const ChoiceParams<X, Y>& cp, const FiniteSeq<X>& s, EvalContext& ctx) {
  auto* session = SpectorSession<X, Y>::open(cp, ctx);
  return session->result(session->make(s));
}

/// Ψ(u) = u @ (∅ if n_u ∈ dom u else Ψ(u ⊕ (n_u, a_u))), a_u = ε_{n_u}(λx. q̂(Ψ(u ⊕ (n_u, x)))).
template <class X, class Y>
PartialFn<X> psi_symmetric(const ChoiceParams<X, Y>& cp, const PartialFn<X>& u, EvalContext& ctx) {
  auto* session = SymmetricSession<X, Y>::open(cp, ctx);
  return session->result(session->make(u));
}

/// Ψ as an instance of the strict symmetric recursor with body = identity.
template <class X, class Y>
PartialFn<X> psi_via_sbr(const ChoiceParams<X, Y>& cp, const PartialFn<X>& u, EvalContext& ctx) {
  using U = PartialFn<X>;
  SymmetricParams<X, U> p;
  p.control = cp.control;
  p.default_value = cp.default_value;
  p.body = [](const U& v) { return v; };
  p.step = [cp](const U& v, const std::function<U(const X&)>& k) {
    Nat n = cp.control(extend_hat(v, cp.default_value));
    X a = cp.eps(n, [&](const X& x) { return cp.q(extend_hat(k(x), cp.default_value)); });
    return merge(v, k(a));
  };
  return sbr(p, u, ctx);
}

template <class X, class Y>
struct SpectorSolution {
  InfSeq<X> f;
  Nat n = 0;
  std::function<Y(const X&)> p;
  std::variant<FiniteSeq<X>, PartialFn<X>> witness;

  std::size_t carrier_size() const {
    return std::visit([](const auto& w) { return w.size(); }, witness);
  }
};

namespace detail {

template <class X, class Y>
std::function<Y(const X&)> spector_p(const ChoiceParams<X, Y>& cp, FiniteSeq<X> prefix, const EvalContext& ctx) {
  auto pool = std::make_shared<ContextPool>(ctx.fuel(), ctx.mode());
  return [cp, prefix, pool](const X& x) {
    auto* s = SpectorSession<X, Y>::open(cp, pool->fresh());
    return cp.q(s->hat(s->make(append(prefix, x))));
  };
}

template <class X, class Y>
std::function<Y(const X&)> symmetric_p(const ChoiceParams<X, Y>& cp, PartialFn<X> thread, Nat n,
                                       const EvalContext& ctx) {
  auto pool = std::make_shared<ContextPool>(ctx.fuel(), ctx.mode());
  return [cp, thread, n, pool](const X& x) {
    auto* s = SymmetricSession<X, Y>::open(cp, pool->fresh());
    return cp.q(s->hat(s->make(update(thread, n, x))));
  };
}

template <class X>
PartialFn<X> thread_prefix(const std::vector<std::pair<Nat, X>>& decomposition, std::size_t i) {
  PartialFn<X> u;
  for (std::size_t j = 0; j < i; ++j) u = update(u, decomposition[j].first, decomposition[j].second);
  return u;
}

}  // namespace detail

/// t = Φ(⟨⟩), f = t̂, n = φ(f), p = λx. q̂(Φ(t̄n ∗ x)).
template <class X, class Y>
SpectorSolution<X, Y> solve_spector(const ChoiceParams<X, Y>& cp, EvalContext& ctx) {
  FiniteSeq<X> t = phi_spector(cp, FiniteSeq<X>{}, ctx);
  SpectorSolution<X, Y> sol;
  sol.f = extend_hat(t, cp.default_value);
  sol.n = cp.control(sol.f);
  if (sol.n >= t.size()) throw InternalInvariantViolation("control of the Phi carrier is not below its length");
  sol.p = detail::spector_p(cp, t.prefix(sol.n), ctx);
  sol.witness = t;
  return sol;
}

/// v = Ψ(∅), f = v̂, n = n_k = φ(f) along the thread decomposition of v, p = p_k.
template <class X, class Y>
SpectorSolution<X, Y> solve_symmetric(const ChoiceParams<X, Y>& cp, EvalContext& ctx) {
  PartialFn<X> v = psi_symmetric(cp, PartialFn<X>{}, ctx);
  SpectorSolution<X, Y> sol;
  sol.f = extend_hat(v, cp.default_value);
  sol.n = cp.control(sol.f);
  if (!v.contains(sol.n)) throw InternalInvariantViolation("control of the Psi carrier lies outside its domain");
  auto decomposition = thread_decomposition(cp.control, v, cp.default_value);
  if (!decomposition) throw InternalInvariantViolation("Psi carrier is not a thread");
  std::optional<std::size_t> k;
  for (std::size_t j = 0; j < decomposition->size(); ++j) {
    if ((*decomposition)[j].first != sol.n) continue;
    if (k) throw InternalInvariantViolation("thread decomposition repeats an index");
    k = j;
  }
  sol.p = detail::symmetric_p(cp, detail::thread_prefix(*decomposition, *k), sol.n, ctx);
  sol.witness = v;
  return sol;
}

// ---------------------------------------------------------------------------
// Verification

/// Function-typed values are compared at indices 0..window and at extra_points.
struct Observation {
  Nat window = 64;
  std::vector<Nat> extra_points;
};

template <class T>
bool observe_equal(const T& a, const T& b, const Observation& obs);

namespace detail {
template <class T>
struct is_infseq : std::false_type {};
template <class Z, class I>
struct is_infseq<InfSeq<Z, I>> : std::true_type {};
template <class T>
struct is_partial : std::false_type {};
template <class Z, class I, class C>
struct is_partial<PartialFn<Z, I, C>> : std::true_type {};
template <class T>
struct is_seq : std::false_type {};
template <class Z>
struct is_seq<FiniteSeq<Z>> : std::true_type {};
}  // namespace detail

template <class T>
bool observe_equal(const T& a, const T& b, const Observation& obs) {
  if constexpr (detail::is_infseq<T>::value) {
    for (Nat k = 0; k <= obs.window; ++k) {
      if (!observe_equal(a(k), b(k), obs)) return false;
    }
    for (Nat k : obs.extra_points) {
      if (!observe_equal(a(k), b(k), obs)) return false;
    }
    return true;
  } else if constexpr (detail::is_partial<T>::value) {
    if (a.size() != b.size()) return false;
    for (auto ia = a.begin(), ib = b.begin(); ia != a.end(); ++ia, ++ib) {
      if (ia->first != ib->first || !observe_equal(ia->second, ib->second, obs)) return false;
    }
    return true;
  } else if constexpr (detail::is_seq<T>::value) {
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (!observe_equal(a[i], b[i], obs)) return false;
    }
    return true;
  } else {
    return a == b;
  }
}

/// Checks the three equations; n itself is always among the observed points.
template <class X, class Y>
bool verify_equations(const SpectorSolution<X, Y>& sol, const ChoiceParams<X, Y>& cp, Observation obs = {}) {
  obs.extra_points.push_back(sol.n);
  if (cp.control(sol.f) != sol.n) return false;
  X chosen = cp.eps(sol.n, sol.p);
  if (!observe_equal(sol.f(sol.n), chosen, obs)) return false;
  return observe_equal(cp.q(sol.f), sol.p(chosen), obs);
}

/// With t = Φ(⟨⟩) and p_i = λx. q̂(Φ(t̄i ∗ x)): t_i = ε_i p_i and q̂(t) = p_i(ε_i p_i) for all i < |t|.
template <class X, class Y>
bool check_spector_indexwise(const ChoiceParams<X, Y>& cp, EvalContext& ctx, const Observation& obs = {}) {
  FiniteSeq<X> t = phi_spector(cp, FiniteSeq<X>{}, ctx);
  Y qt = cp.q(extend_hat(t, cp.default_value));
  for (std::size_t i = 0; i < t.size(); ++i) {
    auto p = detail::spector_p(cp, t.prefix(i), ctx);
    X chosen = cp.eps(i, p);
    if (!observe_equal(t[i], chosen, obs)) return false;
    if (!observe_equal(qt, p(chosen), obs)) return false;
  }
  return true;
}

/// With v = Ψ(∅), n_i and p_i from its thread decomposition:
/// v(n_i) = ε_{n_i} p_i and q̂(v) = p_i(ε_{n_i} p_i) for all i < |dom v|.
template <class X, class Y>
bool check_symmetric_indexwise(const ChoiceParams<X, Y>& cp, EvalContext& ctx, const Observation& obs = {}) {
  PartialFn<X> v = psi_symmetric(cp, PartialFn<X>{}, ctx);
  auto decomposition = thread_decomposition(cp.control, v, cp.default_value);
  if (!decomposition) return false;
  Y qv = cp.q(extend_hat(v, cp.default_value));
  for (std::size_t i = 0; i < decomposition->size(); ++i) {
    Nat n = (*decomposition)[i].first;
    auto p = detail::symmetric_p(cp, detail::thread_prefix(*decomposition, i), n, ctx);
    X chosen = cp.eps(n, p);
    if (!observe_equal(v.at(n), chosen, obs)) return false;
    if (!observe_equal(qv, p(chosen), obs)) return false;
  }
  return true;
}

/// v = Ψ([v]_i) for every i ≤ |dom v|, starting from v = Ψ(∅).
template <class X, class Y>
bool check_psi_fixpoints(const ChoiceParams<X, Y>& cp, EvalContext& ctx, const Observation& obs = {}) {
  PartialFn<X> v = psi_symmetric(cp, PartialFn<X>{}, ctx);
  for (std::size_t i = 0; i <= v.size(); ++i) {
    auto ui = thread_of_partial(cp.control, v, i, cp.default_value);
    if (!observe_equal(psi_symmetric(cp, ui, ctx), v, obs)) return false;
  }
  return true;
}

}  // namespace barrec
