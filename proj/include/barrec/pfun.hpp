#pragma once

// Finite partial functions, finite sequences and total sequences, with the
// overlay/update/ordering combinators the recursors are written in.
//
// All three containers are immutable values backed by shared storage, so
// copying is O(1) and every "modifying" operation returns a new value.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <type_traits>
#include <utility>
#include <vector>

#include <json.hpp>

namespace barrec {

using Nat = std::uint64_t;

template <class X, class I = Nat>
class InfSeq;

/// A finite partial function from an ordered index domain I to X.
///
/// Entries are kept sorted by index, so structural equality coincides with
/// extensional equality.
template <class X, class I = Nat, class Compare = std::less<I>>
class PartialFn {
 public:
  using mapped_type = X;
  using index_type = I;
  using value_type = std::pair<I, X>;
  using Storage = std::vector<value_type>;
  using const_iterator = typename Storage::const_iterator;

  PartialFn() = default;

  /// Builds (n0,x0) ⊕ (n1,x1) ⊕ ... : on a repeated index the first value wins.
  PartialFn(std::initializer_list<value_type> entries) {
    Storage items;
    for (const auto& e : entries) {
      if (!find_in(items, e.first)) {
        items.insert(lower_bound_in(items, e.first), e);
      }
    }
    if (!items.empty()) entries_ = std::make_shared<const Storage>(std::move(items));
  }

  static PartialFn singleton(I n, X x) {
    PartialFn r;
    r.entries_ = std::make_shared<const Storage>(Storage{{std::move(n), std::move(x)}});
    return r;
  }

  /// Adopts entries that are already sorted and duplicate free.
  static PartialFn from_sorted(Storage items) {
    PartialFn r;
    if (!items.empty()) r.entries_ = std::make_shared<const Storage>(std::move(items));
    return r;
  }

  std::size_t size() const { return entries_ ? entries_->size() : 0; }
  bool empty() const { return size() == 0; }

  const_iterator begin() const { return storage().begin(); }
  const_iterator end() const { return storage().end(); }

  bool contains(const I& n) const { return find(n) != nullptr; }

  const X* find(const I& n) const { return entries_ ? find_in(*entries_, n) : nullptr; }

  const X& at(const I& n) const {
    if (const X* x = find(n)) return *x;
    throw std::out_of_range("partial function undefined at index");
  }

  std::vector<I> domain() const {
    std::vector<I> out;
    out.reserve(size());
    for (const auto& e : *this) out.push_back(e.first);
    return out;
  }

  std::optional<I> max_index() const {
    if (empty()) return std::nullopt;
    return entries_->back().first;
  }

  const Storage& storage() const {
    static const Storage kEmpty;
    return entries_ ? *entries_ : kEmpty;
  }

  friend bool operator==(const PartialFn& a, const PartialFn& b)
    requires std::equality_comparable<X>
  {
    if (a.entries_ == b.entries_) return true;
    if (a.size() != b.size()) return false;
    return std::equal(a.begin(), a.end(), b.begin(), [](const value_type& l, const value_type& r) {
      return !Compare{}(l.first, r.first) && !Compare{}(r.first, l.first) && l.second == r.second;
    });
  }

  static typename Storage::const_iterator lower_bound_in(const Storage& items, const I& n) {
    return std::lower_bound(items.begin(), items.end(), n,
                            [](const value_type& e, const I& key) { return Compare{}(e.first, key); });
  }

 private:
  static const X* find_in(const Storage& items, const I& n) {
    auto it = lower_bound_in(items, n);
    if (it != items.end() && !Compare{}(n, it->first)) return &it->second;
    return nullptr;
  }

  std::shared_ptr<const Storage> entries_;
};

/// A finite sequence ⟨x0, ..., x_{k-1}⟩; as a partial function its domain is {0..k-1}.
template <class X>
class FiniteSeq {
 public:
  using mapped_type = X;
  using index_type = Nat;
  using Storage = std::vector<X>;
  using const_iterator = typename Storage::const_iterator;

  FiniteSeq() = default;
  FiniteSeq(std::initializer_list<X> items)
      : items_(items.size() ? std::make_shared<const Storage>(items) : nullptr) {}
  explicit FiniteSeq(Storage items)
      : items_(items.empty() ? nullptr : std::make_shared<const Storage>(std::move(items))) {}

  std::size_t size() const { return items_ ? items_->size() : 0; }
  bool empty() const { return size() == 0; }
  const X& operator[](std::size_t i) const { return (*items_)[i]; }
  const X& at(std::size_t i) const {
    if (i >= size()) throw std::out_of_range("sequence index out of range");
    return (*items_)[i];
  }
  bool contains(Nat i) const { return i < size(); }

  const_iterator begin() const { return storage().begin(); }
  const_iterator end() const { return storage().end(); }

  const Storage& storage() const {
    static const Storage kEmpty;
    return items_ ? *items_ : kEmpty;
  }

  /// The initial segment of length min(n, size()).
  FiniteSeq prefix(std::size_t n) const {
    if (n >= size()) return *this;
    return FiniteSeq(Storage(begin(), begin() + static_cast<std::ptrdiff_t>(n)));
  }

  friend bool operator==(const FiniteSeq& a, const FiniteSeq& b)
    requires std::equality_comparable<X>
  {
    return a.items_ == b.items_ || a.storage() == b.storage();
  }

 private:
  std::shared_ptr<const Storage> items_;
};

/// A total sequence I → X held as a callable, together with its canonical
/// zero. Optionally caches every answered query.
template <class X, class I>
class InfSeq {
 public:
  using mapped_type = X;
  using index_type = I;
  using Fn = std::function<X(const I&)>;

  InfSeq() : InfSeq(X{}) {}
  explicit InfSeq(X value) : InfSeq([value](const I&) { return value; }, value) {}
  InfSeq(Fn fn, X default_value)
      : impl_(std::make_shared<Impl>(std::move(fn), std::move(default_value), false)) {}

  static InfSeq constant(X value) { return InfSeq(std::move(value)); }

  X operator()(const I& n) const {
    const Impl& impl = *impl_;
    if (!impl.memoize) return impl.fn(n);
    {
      std::lock_guard<std::mutex> lock(impl.mutex);
      auto it = impl.cache.find(n);
      if (it != impl.cache.end()) return it->second;
    }
    X value = impl.fn(n);
    std::lock_guard<std::mutex> lock(impl.mutex);
    return impl.cache.emplace(n, std::move(value)).first->second;
  }

  const X& default_value() const { return impl_->default_value; }

  /// A view of the same sequence that caches answers; safe under concurrent queries.
  InfSeq memoized() const {
    if (impl_->memoize) return *this;
    InfSeq r;
    r.impl_ = std::make_shared<Impl>(impl_->fn, impl_->default_value, true);
    return r;
  }
  bool is_memoized() const { return impl_->memoize; }

  /// Object identity; two copies of one InfSeq share it.
  const void* identity() const { return impl_.get(); }

 private:
  struct Impl {
    Impl(Fn f, X d, bool m) : fn(std::move(f)), default_value(std::move(d)), memoize(m) {}
    Fn fn;
    X default_value;
    bool memoize;
    mutable std::mutex mutex;
    mutable std::map<I, X> cache;
  };
  std::shared_ptr<const Impl> impl_;
};

// ---------------------------------------------------------------------------
// Combinators

/// u ⊕ (n, x): defined at n with value x unless u already is (left priority).
template <class X, class I, class C>
PartialFn<X, I, C> update(const PartialFn<X, I, C>& u, std::type_identity_t<I> n, std::type_identity_t<X> x) {
  using Fn = PartialFn<X, I, C>;
  const auto& items = u.storage();
  auto it = Fn::lower_bound_in(items, n);
  if (it != items.end() && !C{}(n, it->first)) return u;
  typename Fn::Storage out;
  out.reserve(items.size() + 1);
  out.insert(out.end(), items.begin(), it);
  out.emplace_back(std::move(n), std::move(x));
  out.insert(out.end(), it, items.end());
  return Fn::from_sorted(std::move(out));
}

/// s ∗ x
template <class X>
FiniteSeq<X> append(const FiniteSeq<X>& s, std::type_identity_t<X> x) {
  typename FiniteSeq<X>::Storage out;
  out.reserve(s.size() + 1);
  out.insert(out.end(), s.begin(), s.end());
  out.push_back(std::move(x));
  return FiniteSeq<X>(std::move(out));
}

/// u @ v: union giving priority to the values of u.
template <class X, class I, class C>
PartialFn<X, I, C> merge(const PartialFn<X, I, C>& u, const PartialFn<X, I, C>& v) {
  if (v.empty()) return u;
  if (u.empty()) return v;
  typename PartialFn<X, I, C>::Storage out;
  out.reserve(u.size() + v.size());
  auto a = u.begin(), b = v.begin();
  while (a != u.end() || b != v.end()) {
    if (b == v.end() || (a != u.end() && C{}(a->first, b->first))) {
      out.push_back(*a++);
    } else if (a == u.end() || C{}(b->first, a->first)) {
      out.push_back(*b++);
    } else {
      out.push_back(*a++);
      ++b;
    }
  }
  return PartialFn<X, I, C>::from_sorted(std::move(out));
}

/// Sequence overlay: length max(|s|,|t|), s's items on its domain.
template <class X>
FiniteSeq<X> merge(const FiniteSeq<X>& s, const FiniteSeq<X>& t) {
  if (t.size() <= s.size()) return s;
  typename FiniteSeq<X>::Storage out(s.begin(), s.end());
  out.insert(out.end(), t.begin() + static_cast<std::ptrdiff_t>(s.size()), t.end());
  return FiniteSeq<X>(std::move(out));
}

/// u ⊑ v
template <class X, class I, class C>
  requires std::equality_comparable<X>
bool leq(const PartialFn<X, I, C>& u, const PartialFn<X, I, C>& v) {
  if (u.size() > v.size()) return false;
  for (const auto& [n, x] : u) {
    const X* y = v.find(n);
    if (!y || !(*y == x)) return false;
  }
  return true;
}

/// u ⊏ v
template <class X, class I, class C>
  requires std::equality_comparable<X>
bool strictly_leq(const PartialFn<X, I, C>& u, const PartialFn<X, I, C>& v) {
  return u.size() < v.size() && leq(u, v);
}

/// The canonical extension û: u on its domain, `zero` elsewhere.
template <class X, class I, class C>
InfSeq<X, I> extend_hat(const PartialFn<X, I, C>& u, X zero) {
  return InfSeq<X, I>(
      [u, zero](const I& n) {
        const X* x = u.find(n);
        return x ? *x : zero;
      },
      zero);
}

template <class X>
InfSeq<X> extend_hat(const FiniteSeq<X>& s, X zero) {
  return InfSeq<X>([s, zero](const Nat& n) { return n < s.size() ? s[n] : zero; }, zero);
}

/// ᾱn = ⟨α(0), ..., α(n-1)⟩
template <class X>
FiniteSeq<X> initial_segment(const InfSeq<X>& alpha, std::size_t n) {
  typename FiniteSeq<X>::Storage out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) out.push_back(alpha(i));
  return FiniteSeq<X>(std::move(out));
}

/// The sequence s viewed as a partial function with domain {0..|s|-1}.
template <class X>
PartialFn<X> as_partial(const FiniteSeq<X>& s) {
  typename PartialFn<X>::Storage out;
  out.reserve(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) out.emplace_back(i, s[i]);
  return PartialFn<X>::from_sorted(std::move(out));
}

/// v @ α: v where defined, α elsewhere.
template <class X, class I, class C>
InfSeq<X, I> overlay(const PartialFn<X, I, C>& v, const InfSeq<X, I>& alpha) {
  if (v.empty()) return alpha;
  return InfSeq<X, I>(
      [v, alpha](const I& n) {
        const X* x = v.find(n);
        return x ? *x : alpha(n);
      },
      alpha.default_value());
}

/// μ i ≤ n . P(i): the least i ≤ n satisfying P, or n when there is none.
template <class Pred>
Nat bounded_search(Nat n, Pred&& pred) {
  for (Nat i = 0; i < n; ++i) {
    if (pred(i)) return i;
  }
  return n;
}

// ---------------------------------------------------------------------------
// JSON

/// {"n": value, ...} with keys in increasing index order.
template <class X, class C>
nlohmann::ordered_json json_of(const PartialFn<X, Nat, C>& u) {
  nlohmann::ordered_json out = nlohmann::ordered_json::object();
  for (const auto& [n, x] : u) out[std::to_string(n)] = x;
  return out;
}

template <class X>
nlohmann::ordered_json json_of(const FiniteSeq<X>& s) {
  nlohmann::ordered_json out = nlohmann::ordered_json::array();
  for (const auto& x : s) out.push_back(x);
  return out;
}

/// Inverse of json_of for partial functions; throws on non-numeric keys.
template <class X>
PartialFn<X> partial_from_json(const nlohmann::ordered_json& j) {
  if (!j.is_object()) throw std::invalid_argument("partial function must be a JSON object");
  PartialFn<X> u;
  for (const auto& [key, value] : j.items()) {
    std::size_t used = 0;
    Nat n = std::stoull(key, &used);
    if (used != key.size()) throw std::invalid_argument("partial function key is not a number: " + key);
    if (u.contains(n)) throw std::invalid_argument("duplicate index " + key);
    u = update(u, n, value.template get<X>());
  }
  return u;
}

}  // namespace barrec
