#pragma once

#include <algorithm>
#include <cstdint>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

namespace barrec {

enum class EvalMode { plain, memoized };

inline const char* to_string(EvalMode m) { return m == EvalMode::plain ? "plain" : "memoized"; }

struct Metrics {
  std::uint64_t calls = 0;
  std::uint64_t max_domain = 0;
  EvalMode mode = EvalMode::plain;
};

class FuelExhausted : public std::runtime_error {
 public:
  explicit FuelExhausted(Metrics m)
      : std::runtime_error("fuel exhausted after " + std::to_string(m.calls) + " calls"), metrics_(m) {}
  const Metrics& metrics() const { return metrics_; }

 private:
  Metrics metrics_;
};

class InternalInvariantViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

inline constexpr std::uint64_t kDefaultFuel = 10'000'000;

/// Per-evaluation bookkeeping: fuel, call counter, and an arena that keeps
/// lazily evaluated structures alive for as long as the context exists.
class EvalContext {
 public:
  explicit EvalContext(std::uint64_t fuel = kDefaultFuel, EvalMode mode = EvalMode::plain) : fuel_(fuel) {
    metrics_.mode = mode;
  }
  EvalContext(const EvalContext&) = delete;
  EvalContext& operator=(const EvalContext&) = delete;

  /// Records one entry into a recursor body whose argument has the given size.
  void enter(std::uint64_t domain_size) {
    if (metrics_.calls >= fuel_) throw FuelExhausted(metrics_);
    ++metrics_.calls;
    metrics_.max_domain = std::max(metrics_.max_domain, domain_size);
  }

  /// Counts against the budget without counting as a recursor call.
  void spend() {
    if (++spent_ > fuel_) throw FuelExhausted(metrics_);
  }

  const Metrics& metrics() const { return metrics_; }
  EvalMode mode() const { return metrics_.mode; }
  bool memoized() const { return metrics_.mode == EvalMode::memoized; }
  std::uint64_t fuel() const { return fuel_; }

  template <class T>
  T* retain(std::shared_ptr<T> obj) {
    T* raw = obj.get();
    arena_.emplace_back(std::move(obj));
    return raw;
  }

 private:
  std::uint64_t fuel_;
  std::uint64_t spent_ = 0;
  Metrics metrics_;
  std::vector<std::shared_ptr<void>> arena_;
};

}  // namespace barrec
