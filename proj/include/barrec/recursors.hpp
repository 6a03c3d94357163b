#pragma once

// Spector's bar recursor over finite sequences, the symmetric recursor over
// finite partial functions, and the thread-restricted variant Θ.
//
// These are strict: every continuation call re-enters the recursor. With
// EvalMode::memoized, results are cached per evaluation by canonical key and
// cache hits are not counted as calls.

#include <functional>
#include <memory>
#include <string>
#include <unordered_map>

#include "barrec/canonical.hpp"
#include "barrec/context.hpp"
#include "barrec/pfun.hpp"
#include "barrec/threads.hpp"

namespace barrec {

template <class Carrier, class R>
struct RecursorParams {
  using carrier_type = Carrier;
  using value_type = typename Carrier::mapped_type;
  using index_type = typename Carrier::index_type;
  using result_type = R;
  using Cont = std::function<R(const value_type&)>;

  std::function<R(const Carrier&, const Cont&)> step;
  std::function<R(const Carrier&)> body;
  std::function<index_type(const InfSeq<value_type, index_type>&)> control;
  value_type default_value{};
  R default_result{};
};

template <class X, class R>
using SpectorParams = RecursorParams<FiniteSeq<X>, R>;

template <class X, class R, class I = Nat, class C = std::less<I>>
using SymmetricParams = RecursorParams<PartialFn<X, I, C>, R>;

namespace detail {

template <class Carrier, class R>
class Recursion {
 public:
  using Params = RecursorParams<Carrier, R>;
  using X = typename Params::value_type;
  // Stop test and successor state; returns false when the recursion stops.
  using Advance = std::function<bool(const Carrier&, std::function<Carrier(const X&)>&)>;

  Recursion(const Params& p, EvalContext& ctx, Advance advance, std::function<bool(const Carrier&)> guard = {})
      : p_(p), ctx_(ctx), advance_(std::move(advance)), guard_(std::move(guard)) {}

  R operator()(const Carrier& c) {
    std::string key;
    if (ctx_.memoized()) {
      key = canonical_key(c);
      if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    }
    ctx_.enter(c.size());
    R r = eval(c);
    if (ctx_.memoized()) memo_.emplace(std::move(key), r);
    return r;
  }

 private:
  R eval(const Carrier& c) {
    if (guard_ && !guard_(c)) return p_.default_result;
    std::function<Carrier(const X&)> next;
    if (!advance_(c, next)) return p_.body(c);
    return p_.step(c, [this, next](const X& x) { return (*this)(next(x)); });
  }

  const Params& p_;
  EvalContext& ctx_;
  Advance advance_;
  std::function<bool(const Carrier&)> guard_;
  std::unordered_map<std::string, R> memo_;
};

}  // namespace detail

/// BR(s) = body(s) if control(ŝ) < |s|, else step_s(λx. BR(s∗x)).
template <class X, class R>
R br(const SpectorParams<X, R>& p, const FiniteSeq<X>& s, EvalContext& ctx) {
  detail::Recursion<FiniteSeq<X>, R> rec(
      p, ctx, [&p](const FiniteSeq<X>& t, std::function<FiniteSeq<X>(const X&)>& next) {
        if (p.control(extend_hat(t, p.default_value)) < t.size()) return false;
        next = [t](const X& x) { return append(t, x); };
        return true;
      });
  return rec(s);
}

/// sBR(u) = body(u) if control(û) ∈ dom(u), else step_u(λx. sBR(u ⊕ (control(û), x))).
/// Works over any ordered discrete index type.
template <class X, class R, class I, class C>
R sbr(const SymmetricParams<X, R, I, C>& p, const PartialFn<X, I, C>& u, EvalContext& ctx) {
  using U = PartialFn<X, I, C>;
  detail::Recursion<U, R> rec(p, ctx, [&p](const U& v, std::function<U(const X&)>& next) {
    I n = p.control(extend_hat(v, p.default_value));
    if (v.contains(n)) return false;
    next = [v, n](const X& x) { return update(v, n, x); };
    return true;
  });
  return rec(u);
}

/// sBR[D] for a discrete index domain D; the same recursion as sbr.
template <class X, class R, class I, class C>
R sbr_discrete(const SymmetricParams<X, R, I, C>& p, const PartialFn<X, I, C>& u, EvalContext& ctx) {
  return sbr(p, u, ctx);
}

/// Θ(u): default_result unless u is a control-thread, otherwise the sBR clauses.
template <class X, class R>
R theta(const SymmetricParams<X, R>& p, const PartialFn<X>& u, EvalContext& ctx) {
  using U = PartialFn<X>;
  Control<X> control = p.control;
  detail::Recursion<U, R> rec(
      p, ctx,
      [&p](const U& v, std::function<U(const X&)>& next) {
        Nat n = p.control(extend_hat(v, p.default_value));
        if (v.contains(n)) return false;
        next = [v, n](const X& x) { return update(v, n, x); };
        return true;
      },
      [control, &p, &ctx](const U& v) { return is_thread(control, v, p.default_value, &ctx); });
  return rec(u);
}

}  // namespace barrec
