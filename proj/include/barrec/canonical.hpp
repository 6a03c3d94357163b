#pragma once

// String keys identifying values up to the equality the memo tables rely on.
// Ground values are keyed by content; total sequences by object identity.

#include <cstdio>
#include <stdexcept>
#include <string>
#include <type_traits>
#include <utility>

#include "barrec/pfun.hpp"
#include "barrec/tagged.hpp"

namespace barrec {

class NotKeyable : public std::invalid_argument {
 public:
  NotKeyable() : std::invalid_argument("value type has no canonical key; memoized mode unavailable") {}
};

inline void append_key(std::string& out, Nat n) { out += std::to_string(n); }
inline void append_key(std::string& out, bool b) { out += b ? 'T' : 'F'; }

template <class X, class I>
void append_key(std::string& out, const InfSeq<X, I>& a) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "@%p", a.identity());
  out += buf;
}

template <class A, class B>
void append_key(std::string& out, const std::pair<A, B>& p);
template <class X>
void append_key(std::string& out, const TaggedValue<X>& t);
template <class X>
void append_key(std::string& out, const FiniteSeq<X>& s);
template <class X, class I, class C>
void append_key(std::string& out, const PartialFn<X, I, C>& u);

template <class A, class B>
void append_key(std::string& out, const std::pair<A, B>& p) {
  out += '(';
  append_key(out, p.first);
  out += ',';
  append_key(out, p.second);
  out += ')';
}

template <class X>
void append_key(std::string& out, const TaggedValue<X>& t) {
  out += '<';
  append_key(out, t.value);
  out += t.flag ? ",1>" : ",0>";
}

template <class X>
void append_key(std::string& out, const FiniteSeq<X>& s) {
  out += '[';
  for (const auto& x : s) {
    append_key(out, x);
    out += ';';
  }
  out += ']';
}

template <class X, class I, class C>
void append_key(std::string& out, const PartialFn<X, I, C>& u) {
  out += '{';
  for (const auto& [n, x] : u) {
    append_key(out, n);
    out += ':';
    append_key(out, x);
    out += ';';
  }
  out += '}';
}

// Containers are keyable exactly when their contents are.
template <class T>
struct has_key : std::false_type {};
template <>
struct has_key<Nat> : std::true_type {};
template <>
struct has_key<bool> : std::true_type {};
template <class X, class I>
struct has_key<InfSeq<X, I>> : std::true_type {};
template <class A, class B>
struct has_key<std::pair<A, B>> : std::bool_constant<has_key<A>::value && has_key<B>::value> {};
template <class X>
struct has_key<TaggedValue<X>> : has_key<X> {};
template <class X>
struct has_key<FiniteSeq<X>> : has_key<X> {};
template <class X, class I, class C>
struct has_key<PartialFn<X, I, C>> : std::bool_constant<has_key<X>::value && has_key<I>::value> {};

template <class T>
concept Keyable = has_key<T>::value;

/// The canonical key of v; throws NotKeyable for types without one.
template <class T>
std::string canonical_key(const T& v) {
  if constexpr (Keyable<T>) {
    std::string out;
    append_key(out, v);
    return out;
  } else {
    throw NotKeyable();
  }
}

}  // namespace barrec
