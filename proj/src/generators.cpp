#include "barrec/generators.hpp"

#include <algorithm>
#include <sstream>

#include "barrec/arith.hpp"

namespace barrec {

Nat ControlSpec::operator()(const InfSeq<Nat>& alpha) const {
  const Nat m = std::max<Nat>(modulus, 1);
  switch (kind) {
    case Kind::constant: return offset % m;
    case Kind::linear: {
      Nat r = offset % m;
      for (std::size_t i = 0; i < coeffs.size(); ++i) r = (r + (coeffs[i] % m) * (alpha(i) % m)) % m;
      return r;
    }
    case Kind::max_plus: {
      Nat r = 0;
      for (std::size_t i = 0; i < coeffs.size(); ++i) r = std::max(r, alpha(i) % m);
      return (r + offset) % m;
    }
    case Kind::indirect: {
      Nat k = std::max<std::size_t>(coeffs.size(), 1);
      return (offset + alpha(alpha(0) % k) % m) % m;
    }
    case Kind::first_zero: {
      for (Nat i = 0; i + 1 < m; ++i) {
        if (alpha(i) == 0) return i;
      }
      return m - 1;
    }
  }
  return 0;
}

std::string ControlSpec::describe() const {
  std::ostringstream os;
  const char* names[] = {"constant", "linear", "max_plus", "indirect", "first_zero"};
  os << names[static_cast<int>(kind)] << "[";
  for (std::size_t i = 0; i < coeffs.size(); ++i) os << (i ? "," : "") << coeffs[i];
  os << "]+" << offset << " mod " << modulus;
  return os.str();
}

ControlSpec Generator::control(Nat max_value, Nat max_reads) {
  ControlSpec c;
  c.kind = static_cast<ControlSpec::Kind>(below(5));
  c.modulus = between(1, std::max<Nat>(max_value, 1));
  c.offset = below(c.modulus + 2);
  Nat reads = between(1, std::max<Nat>(max_reads, 1));
  for (Nat i = 0; i < reads; ++i) c.coeffs.push_back(below(4));
  return c;
}

RecursorSpec Generator::recursor(Nat max_control) {
  RecursorSpec r;
  r.control = control(max_control);
  Nat probes = between(1, 2);
  for (Nat i = 0; i < probes; ++i) r.probes.push_back(below(4));
  r.nonzero_probes = coin();
  r.step_mix = below(5);
  r.body_mix = below(11);
  return r;
}

ChoiceSpec Generator::choice() {
  ChoiceSpec c;
  c.control = control(5);
  c.modulus = between(2, 7);
  Nat reads = between(1, 4);
  for (Nat i = 0; i < reads; ++i) c.q_coeffs.push_back(below(4));
  c.q_offset = below(5);
  c.eps_probe = below(4);
  c.eps_mix = below(3);
  return c;
}

InfSeq<Nat> Generator::sequence(Nat length, Nat range) {
  std::vector<Nat> values;
  for (Nat i = 0; i < length; ++i) values.push_back(below(range));
  return InfSeq<Nat>([values](const Nat& n) { return n < values.size() ? values[n] : Nat{0}; }, 0);
}

PartialFn<Nat> Generator::partial(Nat max_index, Nat range, Nat max_size) {
  PartialFn<Nat> u;
  Nat size = below(max_size + 1);
  for (Nat i = 0; i < size; ++i) u = update(u, below(max_index + 1), below(range));
  return u;
}

FiniteSeq<Nat> Generator::finite(Nat max_length, Nat range) {
  std::vector<Nat> out;
  Nat len = below(max_length + 1);
  for (Nat i = 0; i < len; ++i) out.push_back(below(range));
  return FiniteSeq<Nat>(std::move(out));
}

std::string Generator::fresh_name(const std::vector<std::string>& scope) {
  static const char* pool[] = {"i", "j", "k", "x1", "n"};
  // Shadowing is allowed; reuse an outer name now and then.
  if (!scope.empty() && below(4) == 0) return scope[below(scope.size())];
  return pool[below(5)];
}

// A variable as the parser would resolve it: the innermost binder of its name.
hdsl::ExprPtr Generator::visible_var(const std::vector<std::string>& scope) {
  const std::string& name = scope[below(scope.size())];
  std::size_t slot = scope.size();
  while (scope[--slot] != name) {
  }
  return hdsl::var(name, slot);
}

hdsl::ExprPtr Generator::expr(int depth) {
  std::vector<std::string> scope;
  return expr_in(depth, scope);
}

hdsl::ExprPtr Generator::expr_in(int depth, std::vector<std::string>& scope) {
  using namespace hdsl;
  auto leaf = [&]() -> ExprPtr {
    Nat pick = below(scope.empty() ? 2 : 3);
    if (pick == 0) return lit(below(6));
    if (pick == 1) return gamma(lit(below(5)));
    return visible_var(scope);
  };
  if (depth <= 0) return leaf();
  auto bound = [&]() { return lit(below(4)); };
  switch (below(9)) {
    case 0: return leaf();
    case 1: {
      auto op = static_cast<BinOpKind>(below(3));
      return binop(op, expr_in(depth - 1, scope), expr_in(depth - 1, scope));
    }
    case 2: return binop(BinOpKind::pow, expr_in(depth - 1, scope), lit(below(3)));
    case 3: {
      // small γ arguments keep generated functionals cheap to run
      if (!scope.empty() && coin()) {
        return gamma(binop(BinOpKind::add, visible_var(scope), lit(below(3))));
      }
      return gamma(lit(below(5)));
    }
    case 4:
    case 5: {
      ExprPtr b = bound();
      std::string v = fresh_name(scope);
      scope.push_back(v);
      ExprPtr body = expr_in(depth - 1, scope);
      scope.pop_back();
      return below(2) ? prod(v, b, body) : sum(v, b, body);
    }
    case 6:
    case 7: {
      ExprPtr b = bound();
      std::string v = fresh_name(scope);
      scope.push_back(v);
      CondPtr c = cond_in(depth - 1, scope);
      scope.pop_back();
      ExprPtr other = expr_in(depth - 1, scope);
      return coin() ? least(v, b, c, other) : greatest(v, b, c, other);
    }
    default: {
      CondPtr c = cond_in(depth - 1, scope);
      ExprPtr a = expr_in(depth - 1, scope);
      return if_then_else(c, a, expr_in(depth - 1, scope));
    }
  }
}

hdsl::CondPtr Generator::cond_in(int depth, std::vector<std::string>& scope) {
  if (below(5) == 0) return hdsl::not_(cond_in(depth, scope));
  return chain_in(depth, scope);
}

hdsl::CondPtr Generator::chain_in(int depth, std::vector<std::string>& scope) {
  using namespace hdsl;
  auto atom = [&]() {
    auto op = static_cast<CmpKind>(below(4));
    return cmp(op, expr_in(depth - 1, scope), expr_in(depth - 1, scope));
  };
  CondPtr c = atom();
  Nat links = below(3);
  for (Nat i = 0; i < links; ++i) c = coin() ? and_(c, atom()) : or_(c, atom());
  return c;
}

hdsl::ExprPtr Generator::bounded_functional(Nat cap) {
  // the extra γ term makes sure the functional reads its argument
  hdsl::ExprPtr e = hdsl::binop(hdsl::BinOpKind::add, expr(3), hdsl::gamma(hdsl::lit(below(4))));
  return hdsl::binop(hdsl::BinOpKind::sub, e, hdsl::binop(hdsl::BinOpKind::sub, e, hdsl::lit(cap)));
}

namespace {

template <class Carrier>
Nat summary(const Carrier& c, Nat m) {
  Nat r = c.size() % m;
  if constexpr (std::is_same_v<Carrier, FiniteSeq<Nat>>) {
    for (std::size_t i = 0; i < c.size(); ++i) r = (r + (i + 1) * (c[i] % m + 1)) % m;
  } else {
    for (const auto& [i, x] : c) r = (r + (i % m + 1) * (x % m + 1)) % m;
  }
  return r;
}

template <class Params>
Params make_params(const RecursorSpec& spec) {
  using Carrier = typename Params::carrier_type;
  Params p;
  p.default_value = 0;
  p.default_result = 0;
  p.control = spec.control;
  const Nat m = spec.modulus;
  p.body = [spec, m](const Carrier& c) { return (spec.body_mix + summary(c, m) * (spec.body_mix + 1)) % m; };
  p.step = [spec, m](const Carrier& c, const std::function<Nat(const Nat&)>& k) {
    Nat h = summary(c, m);
    const Nat shift = spec.nonzero_probes ? 1 : 0;
    Nat r = k((spec.probes[0] + h) % 4 + shift);
    if (spec.probes.size() > 1) r = (r + spec.step_mix * k(spec.probes[1] + shift)) % m;
    return (r + h * spec.step_mix + 1) % m;
  };
  return p;
}

}  // namespace

SpectorParams<Nat, Nat> make_spector(const RecursorSpec& spec) { return make_params<SpectorParams<Nat, Nat>>(spec); }

SymmetricParams<Nat, Nat> make_symmetric(const RecursorSpec& spec) {
  return make_params<SymmetricParams<Nat, Nat>>(spec);
}

ChoiceParams<Nat, Nat> make_choice(const ChoiceSpec& spec) {
  ChoiceParams<Nat, Nat> cp;
  cp.default_value = 0;
  const Nat m = spec.modulus;
  cp.control = spec.control;
  cp.q = [spec, m](const InfSeq<Nat>& a) {
    Nat r = spec.q_offset % m;
    for (std::size_t i = 0; i < spec.q_coeffs.size(); ++i) r = (r + spec.q_coeffs[i] * (a(i) % m)) % m;
    return r;
  };
  cp.eps = [spec, m](Nat n, const std::function<Nat(const Nat&)>& p) {
    return (p(spec.eps_probe) + spec.eps_mix * n) % m;
  };
  return cp;
}

}  // namespace barrec
