#pragma once

#include <ostream>

namespace barrec {

/// An element of X×B: a value plus the "defined" flag used by the lifting
/// constructions. The canonical zero is ⟨0_X, false⟩.
template <class X>
struct TaggedValue {
  X value{};
  bool flag = false;

  friend bool operator==(const TaggedValue& a, const TaggedValue& b)
    requires std::equality_comparable<X>
  {
    return a.flag == b.flag && a.value == b.value;
  }
};

template <class X>
TaggedValue<X> tagged_zero(X zero) {
  return TaggedValue<X>{std::move(zero), false};
}

}  // namespace barrec
