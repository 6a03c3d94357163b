#include "barrec/noinjection.hpp"

#include <algorithm>
#include <stdexcept>

#include "barrec/arith.hpp"

namespace barrec {

const char* to_string(Recursor r) { return r == Recursor::spector ? "spector" : "symmetric"; }

const char* to_string(HFamily f) {
  switch (f) {
    case HFamily::prod: return "prod";
    case HFamily::prodpow: return "prodpow";
    case HFamily::leastinc: return "leastinc";
    case HFamily::contrived: return "contrived";
  }
  return "?";
}

Recursor parse_recursor(const std::string& s) {
  if (s == "spector") return Recursor::spector;
  if (s == "symmetric") return Recursor::symmetric;
  throw std::invalid_argument("unknown recursor: " + s);
}

HFamily parse_family(const std::string& s) {
  for (HFamily f : all_families()) {
    if (s == to_string(f)) return f;
  }
  throw std::invalid_argument("unknown family: " + s);
}

const std::vector<HFamily>& all_families() {
  static const std::vector<HFamily> kAll{HFamily::prod, HFamily::prodpow, HFamily::leastinc, HFamily::contrived};
  return kAll;
}

const NatSeq& zero_seq() {
  static const NatSeq kZero = NatSeq::constant(0);
  return kZero;
}

NoInjectionParams make_choice_params(Functional H) {
  NoInjectionParams cp;
  const NatSeq zero = zero_seq();
  cp.default_value = zero;
  cp.eps = [H, zero](Nat n, const NoInjectionParams::Pred& p) {
    NatSeq y = p(zero);
    return H(y) == n ? y : zero;
  };
  cp.q = [](const InfSeq<NatSeq>& f) {
    return NatSeq([f](const Nat& n) { return sat_add(f(n)(n), 1); }, 0).memoized();
  };
  cp.control = [H, q = cp.q](const InfSeq<NatSeq>& f) { return H(q(f)); };
  return cp;
}

Functional builtin_h(HFamily family, Nat n) {
  switch (family) {
    case HFamily::prod:
      return [n](const NatSeq& g) {
        Nat r = 1;
        for (Nat i = 0; i < n; ++i) r = sat_mul(r, sat_add(1, g(i)));
        return r;
      };
    case HFamily::prodpow:
      return [n](const NatSeq& g) {
        Nat r = 1;
        for (Nat i = 0; i < n; ++i) r = sat_mul(r, sat_pow(i + 1, sat_add(1, g(i))));
        return r;
      };
    case HFamily::leastinc:
      return [n](const NatSeq& g) {
        for (Nat i = 0; i <= n; ++i) {
          if (g(i) < g(i + 1)) return i;
        }
        return n;
      };
    case HFamily::contrived:
      return [n](const NatSeq& g) -> Nat {
        Nat g0 = g(0), g1 = g(1);
        if (g0 == 2 && g1 == 2) {
          for (Nat i = n + 1; i-- > 0;) {
            if (g(i) == 1) return i;
          }
          return n;
        }
        if ((g0 == 1 && g1 == 2) || (g0 == 2 && g1 == 1)) return 0;
        return 1;
      };
  }
  throw std::invalid_argument("unknown family");
}

std::vector<Nat> prefix_of(const NatSeq& s, std::size_t k) {
  std::vector<Nat> out;
  out.reserve(k);
  for (std::size_t j = 0; j < k; ++j) out.push_back(s(j));
  return out;
}

namespace {

template <class Session>
Counterexample run(const Functional& H, const std::shared_ptr<EvalContext>& ctx) {
  NoInjectionParams cp = make_choice_params(H);
  auto* session = Session::open(cp, *ctx);
  auto* root = session->make({});
  Counterexample c;
  c.ctx = ctx;
  InfSeq<NatSeq> f = session->hat(root);
  c.alpha = cp.q(f);
  c.i = H(c.alpha);
  c.beta = f(c.i);
  for (Nat k = 0; k <= c.i; ++k) {
    c.alpha(k);
    c.beta(k);
  }
  c.metrics = ctx->metrics();

  auto carrier = session->result(root);
  c.carrier_size = carrier.size();
  c.carrier = carrier;
  if constexpr (std::is_same_v<decltype(carrier), FiniteSeq<NatSeq>>) {
    if (c.i >= carrier.size()) throw InternalInvariantViolation("control of the Phi carrier is not below its length");
  } else {
    if (!carrier.contains(c.i)) throw InternalInvariantViolation("control of the Psi carrier lies outside its domain");
  }
  std::size_t k = std::max<Nat>(c.i, 8) + 1;
  c.alpha_prefix = prefix_of(c.alpha, k);
  c.beta_prefix = prefix_of(c.beta, k);
  return c;
}

}  // namespace

Counterexample counterexample(const Functional& H, Recursor recursor, std::shared_ptr<EvalContext> ctx) {
  if (recursor == Recursor::spector) return run<SpectorSession<NatSeq, NatSeq>>(H, ctx);
  return run<SymmetricSession<NatSeq, NatSeq>>(H, ctx);
}

Counterexample counterexample(const Functional& H, Recursor recursor, std::uint64_t fuel, EvalMode mode) {
  return counterexample(H, recursor, std::make_shared<EvalContext>(fuel, mode));
}

bool verify_counterexample(const Functional& H, const Counterexample& c) {
  return c.alpha(c.i) != c.beta(c.i) && H(c.alpha) == H(c.beta);
}

nlohmann::ordered_json report_json(const std::string& family, Nat n, Recursor recursor, const Counterexample& c,
                                   bool valid) {
  nlohmann::ordered_json j;
  j["family"] = family;
  j["n"] = n;
  j["recursor"] = to_string(recursor);
  j["domain_size"] = c.carrier_size;
  j["calls"] = c.metrics.calls;
  j["i"] = c.i;
  j["alpha_prefix"] = c.alpha_prefix;
  j["beta_prefix"] = c.beta_prefix;
  j["valid"] = valid;
  return j;
}

}  // namespace barrec
