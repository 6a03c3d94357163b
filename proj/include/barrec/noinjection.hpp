#pragma once

// Refuting injectivity of H : (N→N) → N. From a solution f of Spector's
// equations for the parameters below, α = q(f), i = φ(f) and β = f(i) satisfy
// α(i) ≠ β(i) and H(α) = H(β).

#include <functional>
#include <memory>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "barrec/choice.hpp"

namespace barrec {

using NatSeq = InfSeq<Nat>;
using Functional = std::function<Nat(const NatSeq&)>;
using NoInjectionParams = ChoiceParams<NatSeq, NatSeq>;

enum class Recursor { spector, symmetric };
enum class HFamily { prod, prodpow, leastinc, contrived };

const char* to_string(Recursor r);
const char* to_string(HFamily f);
Recursor parse_recursor(const std::string& s);
HFamily parse_family(const std::string& s);
const std::vector<HFamily>& all_families();

/// The constant-0 sequence shared by every parameter set, so that it has a
/// single identity under memoization.
const NatSeq& zero_seq();

/// ε_n(p) = 0 if H(p(0)) ≠ n else p(0);  q(f) = λn. f(n)(n)+1;  φ(f) = H(q(f)).
NoInjectionParams make_choice_params(Functional H);

/// prod:      Π_{i<n} (1+γi)
/// prodpow:   Π_{i<n} (1+i)^(1+γi)
/// leastinc:  least i ≤ n with γi < γ(i+1), else n
/// contrived: if γ0 = γ1 = 2, the greatest i ≤ n with γi = 1, else n;
///            0 if {γ0, γ1} = {1, 2}; 1 otherwise
Functional builtin_h(HFamily family, Nat n);

struct Counterexample {
  NatSeq alpha;
  NatSeq beta;
  Nat i = 0;
  /// Counters after computing i and the prefixes of α and β up to i.
  Metrics metrics;
  std::size_t carrier_size = 0;
  std::variant<FiniteSeq<NatSeq>, PartialFn<NatSeq>> carrier;
  std::vector<Nat> alpha_prefix;
  std::vector<Nat> beta_prefix;
  /// Keeps the lazily evaluated carrier alive.
  std::shared_ptr<EvalContext> ctx;
};

Counterexample counterexample(const Functional& H, Recursor recursor, std::shared_ptr<EvalContext> ctx);

Counterexample counterexample(const Functional& H, Recursor recursor, std::uint64_t fuel = kDefaultFuel,
                              EvalMode mode = EvalMode::plain);

bool verify_counterexample(const Functional& H, const Counterexample& c);

/// Report row in the layout used by the CLI.
nlohmann::ordered_json report_json(const std::string& family, Nat n, Recursor recursor, const Counterexample& c,
                                   bool valid);

/// First k values of a sequence.
std::vector<Nat> prefix_of(const NatSeq& s, std::size_t k);

}  // namespace barrec
