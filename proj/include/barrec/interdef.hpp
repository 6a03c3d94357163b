#pragma once

// Each recursor defined from the other.
//
// br_from_sbr runs the symmetric recursor over X×B on the tagged image of the
// sequence. theta_from_br runs Spector's recursor over
//   Y = X† × (X† → (X → R))
// on a sequence s_u built from the thread decomposition of u, and
// sbr_from_br relativizes the parameters to u and starts theta_from_br at ∅.
//
// The continuation component of Y has no canonical key, so theta_from_br and
// sbr_from_br need a plain-mode context.

#include <functional>
#include <map>
#include <memory>
#include <stdexcept>
#include <vector>

#include "barrec/recursors.hpp"
#include "barrec/tagged.hpp"
#include "barrec/threads.hpp"

namespace barrec {

// ---------------------------------------------------------------------------
// Sequences through the symmetric recursor

/// η s = {i ↦ ⟨s_i, 1⟩ | i < |s|}
template <class X>
PartialFn<TaggedValue<X>> eta(const FiniteSeq<X>& s) {
  typename PartialFn<TaggedValue<X>>::Storage out;
  out.reserve(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) out.emplace_back(i, TaggedValue<X>{s[i], true});
  return PartialFn<TaggedValue<X>>::from_sorted(std::move(out));
}

/// η′u has length max dom(u)+1 with 0_X in the gaps; η′∅ = ⟨⟩.
template <class X>
FiniteSeq<X> eta_prime(const PartialFn<TaggedValue<X>>& u, const X& zero) {
  auto top = u.max_index();
  if (!top) return {};
  typename FiniteSeq<X>::Storage out(*top + 1, zero);
  for (const auto& [i, t] : u) out[i] = t.value;
  return FiniteSeq<X>(std::move(out));
}

template <class X, class R>
SymmetricParams<TaggedValue<X>, R> lift_to_tagged(const SpectorParams<X, R>& p) {
  using T = TaggedValue<X>;
  SymmetricParams<T, R> lp;
  lp.default_value = tagged_zero(p.default_value);
  lp.default_result = p.default_result;
  auto control = p.control;
  X zero = p.default_value;
  auto lifted_control = [control, zero](const InfSeq<T>& alpha) -> Nat {
    InfSeq<X> values([alpha](const Nat& k) { return alpha(k).value; }, zero);
    return bounded_search(control(values), [&](Nat i) { return !alpha(i).flag; });
  };
  lp.control = lifted_control;
  lp.body = [body = p.body, zero](const PartialFn<T>& u) { return body(eta_prime(u, zero)); };
  lp.step = [step = p.step, lifted_control, zero](const PartialFn<T>& u,
                                                  const std::function<R(const T&)>& k) {
    InfSeq<T> hat = extend_hat(u, tagged_zero(zero));
    Nat len = lifted_control(hat);
    typename FiniteSeq<X>::Storage seg;
    seg.reserve(len);
    for (Nat i = 0; i < len; ++i) seg.push_back(hat(i).value);
    return step(FiniteSeq<X>(std::move(seg)), [&k](const X& x) { return k(T{x, true}); });
  };
  return lp;
}

/// BR(s) computed as sBR_{X×B}(η s).
template <class X, class R>
R br_from_sbr(const SpectorParams<X, R>& p, const FiniteSeq<X>& s, EvalContext& ctx) {
  auto lp = lift_to_tagged(p);
  return sbr(lp, eta(s), ctx);
}

// ---------------------------------------------------------------------------
// The symmetric recursor through Spector's

template <class X, class R>
struct YPair {
  using Cont = std::function<R(const X&)>;
  using Lifted = std::function<Cont(const PartialFn<X>&)>;

  PartialFn<X> snapshot;
  Lifted cont;

  static YPair zero(R r) {
    return YPair{{}, [r](const PartialFn<X>&) -> Cont { return [r](const X&) { return r; }; }};
  }
};

/// d(s)(j) = (π₀ s_i)(j) for the least i ≤ j, i < |s|, with j ∈ dom(π₀ s_i).
template <class X, class R>
PartialFn<X> diag_finite(const FiniteSeq<YPair<X, R>>& s) {
  std::map<Nat, X> out;
  for (std::size_t i = 0; i < s.size(); ++i) {
    for (const auto& [j, x] : s[i].snapshot) {
      if (j >= i) out.emplace(j, x);  // earlier i already won
    }
  }
  typename PartialFn<X>::Storage items(out.begin(), out.end());
  return PartialFn<X>::from_sorted(std::move(items));
}

/// d∞(α)(j) = (π₀ α_i)(j) for the least i ≤ j with j ∈ dom(π₀ α_i), else 0_X.
template <class X, class R>
InfSeq<X> diag_infinite(const InfSeq<YPair<X, R>>& alpha, const X& zero) {
  return InfSeq<X>(
      [alpha, zero](const Nat& j) {
        for (Nat i = 0; i <= j; ++i) {
          const YPair<X, R> y = alpha(i);
          if (const X* x = y.snapshot.find(j)) return *x;
        }
        return zero;
      },
      zero);
}

/// (ū_n ∗ x @ v): u below n, x at n, v above n.
template <class X>
PartialFn<X> splice(const PartialFn<X>& u, Nat n, const X& x, const PartialFn<X>& v) {
  typename PartialFn<X>::Storage out;
  for (const auto& e : u) {
    if (e.first < n) out.push_back(e);
  }
  out.emplace_back(n, x);
  for (const auto& e : v) {
    if (e.first > n) out.push_back(e);
  }
  return PartialFn<X>::from_sorted(std::move(out));
}

/// Θ computed through BR over Y. Keeps the lifted parameters alive for the
/// continuations stored in the sequences it builds.
template <class X, class R>
class ThetaFromBr {
 public:
  using Y = YPair<X, R>;
  using Seq = FiniteSeq<Y>;
  using Cont = std::function<R(const X&)>;

  ThetaFromBr(SymmetricParams<X, R> p, EvalContext& ctx)
      : state_(std::make_shared<State>(State{std::move(p), {}, ctx})) {
    if (ctx.memoized()) throw std::invalid_argument("theta_from_br needs a plain-mode context");
    build_lifted();
  }

  const SpectorParams<Y, R>& lifted() const { return state_->lifted; }

  R operator()(const PartialFn<X>& u) const {
    State& st = *state_;
    if (!is_thread(st.p.control, u, st.p.default_value, &st.ctx)) return st.p.default_result;
    return run(sequence(u, u.size()));
  }

  /// s_{u,i}; u must be a thread and i ≤ |dom u|.
  Seq sequence(const PartialFn<X>& u, std::size_t i) const {
    State& st = *state_;
    auto dec = thread_decomposition(st.p.control, u, st.p.default_value, &st.ctx);
    if (!dec || i > dec->size()) throw InternalInvariantViolation("sequence of a non-thread");
    const R r0 = st.p.default_result;
    Seq s;
    PartialFn<X> thread;  // [u]_k
    for (std::size_t k = 0; k < i; ++k) {
      const Nat n = (*dec)[k].first;
      PartialFn<X> next_thread = update(thread, n, (*dec)[k].second);
      std::vector<Y> items(s.begin(), s.end());
      if (n < s.size()) {
        items.resize(n);
      } else {
        const PartialFn<X> d = diag_finite(s);
        for (Nat m = s.size(); m < n; ++m) {
          Y y{d, {}};
          if (d.contains(m)) {
            y.cont = Y::zero(r0).cont;
          } else {
            Seq before(items);
            std::shared_ptr<State> hold = state_;
            y.cont = [hold, before, d, m, r0](const PartialFn<X>& w) -> Cont {
              return [hold, before, d, m, r0, w](const X& x) {
                Seq t = append(before, Y{splice(d, m, x, w), Y::zero(r0).cont});
                return br(hold->lifted, t, hold->ctx);
              };
            };
          }
          items.push_back(std::move(y));
        }
      }
      items.push_back(Y{next_thread, Y::zero(r0).cont});
      s = Seq(std::move(items));
      thread = std::move(next_thread);
    }
    return s;
  }

  R run(const Seq& s) const { return br(state_->lifted, s, state_->ctx); }

 private:
  struct State {
    SymmetricParams<X, R> p;
    SpectorParams<Y, R> lifted;
    EvalContext& ctx;
  };

  void build_lifted() {
    State& st = *state_;
    const X zero = st.p.default_value;
    const R r0 = st.p.default_result;
    SpectorParams<Y, R>& lp = st.lifted;
    lp.default_value = Y::zero(r0);
    lp.default_result = r0;
    auto control = st.p.control;
    lp.control = [control, zero](const InfSeq<Y>& alpha) { return control(diag_infinite(alpha, zero)); };
    lp.step = [r0](const Seq& s, const std::function<R(const Y&)>& k) {
      PartialFn<X> w = diag_finite(s);
      Nat len = s.size();
      if (w.contains(len)) return k(Y{w, Y::zero(r0).cont});
      std::function<R(const Y&)> kk = k;
      Y y{w, [kk, w, len, r0](const PartialFn<X>& v) -> Cont {
            return [kk, w, len, r0, v](const X& x) { return kk(Y{splice(w, len, x, v), Y::zero(r0).cont}); };
          }};
      return k(y);
    };
    lp.body = [p = st.p, zero, r0](const Seq& s) {
      PartialFn<X> w = diag_finite(s);
      Nat n = p.control(extend_hat(w, zero));
      if (w.contains(n)) return p.body(w);
      typename Y::Lifted cont = n < s.size() ? s[n].cont : Y::zero(r0).cont;
      return p.step(w, cont(w));
    };
  }

  std::shared_ptr<State> state_;
};

template <class X, class R>
R theta_from_br(const SymmetricParams<X, R>& p, const PartialFn<X>& u, EvalContext& ctx) {
  return ThetaFromBr<X, R>(p, ctx)(u);
}

/// Parameters relativized to v, so that Θ of them at ∅ is sBR at v.
template <class X, class R>
SymmetricParams<X, R> relativize(const SymmetricParams<X, R>& p, const PartialFn<X>& v) {
  SymmetricParams<X, R> r;
  r.default_value = p.default_value;
  r.default_result = p.default_result;
  r.control = [control = p.control, v](const InfSeq<X>& alpha) { return control(overlay(v, alpha)); };
  r.body = [body = p.body, v](const PartialFn<X>& w) { return body(merge(v, w)); };
  r.step = [p, v](const PartialFn<X>& w, const std::function<R(const X&)>& k) {
    PartialFn<X> vw = merge(v, w);
    if (v.contains(p.control(overlay(v, extend_hat(w, p.default_value))))) return p.body(vw);
    return p.step(vw, k);
  };
  return r;
}

template <class X, class R>
R sbr_from_br(const SymmetricParams<X, R>& p, const PartialFn<X>& u, EvalContext& ctx) {
  return theta_from_br(relativize(p, u), PartialFn<X>{}, ctx);
}

}  // namespace barrec
