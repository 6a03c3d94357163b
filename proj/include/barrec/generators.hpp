#pragma once

// Seeded random instances over X = R = N for the property suites.
//
// Controls read finitely many positions and are reduced mod a small bound, so
// every generated recursion terminates after few steps.

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "barrec/choice.hpp"
#include "barrec/hdsl.hpp"
#include "barrec/recursors.hpp"

namespace barrec {

/// A control g(α(0..k-1)) mod m, in one of a few shapes.
struct ControlSpec {
  enum class Kind { constant, linear, max_plus, indirect, first_zero } kind = Kind::constant;
  std::vector<Nat> coeffs;  // one per read position
  Nat offset = 0;
  Nat modulus = 1;

  Nat operator()(const InfSeq<Nat>& alpha) const;
  std::string describe() const;
};

/// Step and body shapes shared by both carriers.
struct RecursorSpec {
  ControlSpec control;
  std::vector<Nat> probes;  // 1 or 2 points the step queries its continuation at
  bool nonzero_probes = false;
  Nat step_mix = 0;
  Nat body_mix = 0;
  Nat modulus = 97;
};

struct ChoiceSpec {
  ControlSpec control;
  std::vector<Nat> q_coeffs;
  Nat q_offset = 0;
  Nat eps_probe = 0;
  Nat eps_mix = 0;
  Nat modulus = 7;
};

class Generator {
 public:
  explicit Generator(std::uint64_t seed) : rng_(seed) {}

  Nat below(Nat n) { return n == 0 ? 0 : rng_() % n; }
  Nat between(Nat lo, Nat hi) { return lo + below(hi - lo + 1); }
  bool coin() { return rng_() & 1; }

  ControlSpec control(Nat max_value, Nat max_reads = 3);
  RecursorSpec recursor(Nat max_control = 5);
  ChoiceSpec choice();

  /// A total sequence with small values, zero beyond `length`.
  InfSeq<Nat> sequence(Nat length, Nat range);
  PartialFn<Nat> partial(Nat max_index, Nat range, Nat max_size);
  FiniteSeq<Nat> finite(Nat max_length, Nat range);

  /// A random expression tree. Only trees the grammar can spell are produced.
  hdsl::ExprPtr expr(int depth);
  /// A functional reading γ whose values stay at or below `cap`, built as e - (e - cap).
  hdsl::ExprPtr bounded_functional(Nat cap);

 private:
  hdsl::ExprPtr expr_in(int depth, std::vector<std::string>& scope);
  hdsl::CondPtr cond_in(int depth, std::vector<std::string>& scope);
  hdsl::CondPtr chain_in(int depth, std::vector<std::string>& scope);
  hdsl::ExprPtr visible_var(const std::vector<std::string>& scope);
  std::string fresh_name(const std::vector<std::string>& scope);

  std::mt19937_64 rng_;
};

SpectorParams<Nat, Nat> make_spector(const RecursorSpec& spec);
SymmetricParams<Nat, Nat> make_symmetric(const RecursorSpec& spec);
ChoiceParams<Nat, Nat> make_choice(const ChoiceSpec& spec);

}  // namespace barrec
