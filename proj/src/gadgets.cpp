#include "tritcert/gadgets.hpp"

#include <algorithm>
#include <array>

#include "tritcert/error.hpp"

namespace tritcert {

namespace {

std::vector<Predicate> parameterizations(PredicateKind kind) {
  std::vector<Predicate> out;
  switch (kind) {
    case PredicateKind::FourNAT:
      for (int k = 0; k < 81; ++k) out.push_back(Predicate::four_nat({k % 3, k / 3 % 3, k / 9 % 3, k / 27 % 3}));
      break;
    case PredicateKind::TwoNLin:
      for (int a = 0; a < 3; ++a) out.push_back(Predicate::two_nlin(a));
      break;
    case PredicateKind::ThreeColoring:
      out.push_back(Predicate::three_coloring());
      break;
    default:
      throw ContractError("no enumerable parameterization for " + std::string(kind_name(kind)));
  }
  return out;
}

}  // namespace

bool GadgetSpec::accepts(PredicateKind kind) const {
  if (kind == source) return true;
  return source == PredicateKind::TwoNLin && kind == PredicateKind::ThreeColoring;
}

GadgetOutput gadget_4nat_to_2nlin(const Predicate& source) {
  if (source.kind != PredicateKind::FourNAT) throw ContractError("4nat->2nlin gadget needs a 4nat source");
  GadgetOutput out;
  out.source_arity = 4;
  out.aux_domains = {3};
  for (int i = 0; i < 4; ++i) {
    // v_i + k_i != y  <=>  v_i - y != -k_i
    out.constraints.push_back({Predicate::two_nlin(-source.params[i]), {i, 4}, make_rational(1, 4)});
  }
  return out;
}

GadgetOutput gadget_2nlin_to_labelcover(const Predicate& source) {
  int rhs = 0;
  if (source.kind == PredicateKind::TwoNLin) {
    rhs = source.params.at(0);
  } else if (source.kind != PredicateKind::ThreeColoring) {
    throw ContractError("2nlin->labelcover gadget needs a 2nlin source");
  }
  std::vector<int> first, second;
  for (int a = 0; a < 3; ++a) {
    for (int b = 0; b < 3; ++b) {
      if (((a - b) % 3 + 3) % 3 != rhs) {
        first.push_back(a);
        second.push_back(b);
      }
    }
  }
  GadgetOutput out;
  out.source_arity = 2;
  out.aux_domains = {static_cast<int>(first.size())};
  out.constraints.push_back({Predicate::d_to_one(first), {0, 2}, make_rational(1, 2)});
  out.constraints.push_back({Predicate::d_to_one(second), {1, 2}, make_rational(1, 2)});
  return out;
}

GadgetOutput compose_gadgets(const GadgetOutput& outer, const std::function<GadgetOutput(const Predicate&)>& inner) {
  GadgetOutput out;
  out.source_arity = outer.source_arity;
  out.aux_domains = outer.aux_domains;
  for (const auto& c : outer.constraints) {
    const GadgetOutput part = inner(c.predicate);
    const int base = out.num_locals();
    out.aux_domains.insert(out.aux_domains.end(), part.aux_domains.begin(), part.aux_domains.end());
    for (const auto& pc : part.constraints) {
      LocalConstraint mapped{pc.predicate, {}, c.weight * pc.weight};
      for (int v : pc.vars) mapped.vars.push_back(v < part.source_arity ? c.vars[v] : base + (v - part.source_arity));
      out.constraints.push_back(std::move(mapped));
    }
  }
  return out;
}

GadgetSpec fournat_to_2nlin_gadget() {
  return {"4nat-2nlin", PredicateKind::FourNAT, PredicateKind::TwoNLin, make_rational(3, 4), gadget_4nat_to_2nlin};
}

GadgetSpec twonlin_to_labelcover_gadget() {
  return {"2nlin-labelcover", PredicateKind::TwoNLin, PredicateKind::DToOne, make_rational(1, 2),
          gadget_2nlin_to_labelcover};
}

GadgetSpec fournat_to_labelcover_gadget() {
  return {"4nat-labelcover", PredicateKind::FourNAT, PredicateKind::DToOne, make_rational(7, 8),
          [](const Predicate& p) { return compose_gadgets(gadget_4nat_to_2nlin(p), gadget_2nlin_to_labelcover); }};
}

GammaVerification verify_gamma(const GadgetSpec& spec, const Predicate& source) {
  if (!spec.accepts(source.kind)) throw ContractError("gadget " + spec.name + " does not accept this source");
  const GadgetOutput g = spec.build(source);
  const int arity = source.arity();

  std::uint64_t aux_space = 1;
  for (int d : g.aux_domains) {
    aux_space *= static_cast<std::uint64_t>(d);
    if (aux_space > kMaxOptimumAssignments) throw CapacityError("gadget auxiliary space too large");
  }
  std::vector<Rational> weights;
  for (const auto& c : g.constraints) weights.push_back(c.weight);
  const ScaledWeights scaled = scale_to_common_denominator(weights);

  GammaVerification res;
  res.completeness = true;
  bool any_unsat = false;
  std::int64_t lo = 0, hi = 0;
  std::vector<int> locals(g.num_locals(), 0);
  std::array<int, 4> labels{};
  int source_space = 1;
  for (int s = 0; s < arity; ++s) source_space *= 3;

  for (int k = 0; k < source_space; ++k) {
    for (int s = 0, r = k; s < arity; ++s, r /= 3) locals[s] = r % 3;
    const bool satisfied = source.holds(std::span<const int>(locals.data(), arity));
    std::int64_t best = -1;
    std::fill(locals.begin() + arity, locals.end(), 0);
    for (std::uint64_t a = 0; a < aux_space; ++a) {
      std::int64_t score = 0;
      for (std::size_t i = 0; i < g.constraints.size(); ++i) {
        const auto& c = g.constraints[i];
        for (std::size_t s = 0; s < c.vars.size(); ++s) labels[s] = locals[c.vars[s]];
        if (c.predicate.holds(std::span<const int>(labels.data(), c.vars.size()))) score += scaled.numerators[i];
      }
      best = std::max(best, score);
      for (int v = g.num_locals() - 1; v >= arity; --v) {
        if (++locals[v] < g.aux_domains[v - arity]) break;
        locals[v] = 0;
      }
    }
    if (satisfied) {
      res.completeness = res.completeness && best == scaled.denominator;
    } else if (!any_unsat) {
      any_unsat = true;
      lo = hi = best;
    } else {
      lo = std::min(lo, best);
      hi = std::max(hi, best);
    }
  }
  res.gamma_observed = any_unsat ? scaled.value(lo) : Rational(1);
  res.gamma_max = any_unsat ? scaled.value(hi) : Rational(1);
  res.pass = res.completeness && any_unsat && lo == hi && res.gamma_observed == spec.gamma;
  return res;
}

GammaVerification verify_gamma(const GadgetSpec& spec) {
  GammaVerification total;
  bool first = true;
  for (const auto& p : parameterizations(spec.source)) {
    const auto r = verify_gamma(spec, p);
    if (first) {
      total = r;
      first = false;
      continue;
    }
    total.completeness = total.completeness && r.completeness;
    total.gamma_observed = std::min(total.gamma_observed, r.gamma_observed);
    total.gamma_max = std::max(total.gamma_max, r.gamma_max);
    total.pass = total.pass && r.pass;
  }
  total.pass = total.pass && total.gamma_observed == total.gamma_max;
  return total;
}

DecisionThresholds::DecisionThresholds(Rational c_, Rational s_) : c(std::move(c_)), s(std::move(s_)) {
  if (!(0 <= s && s < c && c <= 1)) throw ContractError("thresholds need 0 <= s < c <= 1");
}

DecisionThresholds compose_thresholds(const DecisionThresholds& t, const Rational& gamma) {
  if (gamma < 0 || gamma >= 1) throw ContractError("gamma must lie in [0, 1)");
  return DecisionThresholds(t.c + (1 - t.c) * gamma, t.s + (1 - t.s) * gamma);
}

namespace {

// "aux<c>_<k>", or "aux<r>.<c>_<k>" for the least round r whose names are all
// free in the source instance.
std::string aux_tag(const CspInstance& instance, const std::vector<GadgetOutput>& outputs) {
  for (int round = 1;; ++round) {
    const std::string tag = round == 1 ? "aux" : "aux" + std::to_string(round) + ".";
    bool free = true;
    for (std::size_t ci = 0; ci < outputs.size() && free; ++ci) {
      for (std::size_t k = 0; k < outputs[ci].aux_domains.size() && free; ++k) {
        free = instance.find_variable(tag + std::to_string(ci) + "_" + std::to_string(k)) < 0;
      }
    }
    if (free) return tag;
  }
}

}  // namespace

CspInstance apply_gadget_to_instance(const CspInstance& instance, const GadgetSpec& spec) {
  std::vector<Variable> vars = instance.variables();
  std::vector<Constraint> out;
  const auto& cons = instance.constraints();
  std::vector<GadgetOutput> outputs;
  outputs.reserve(cons.size());
  for (std::size_t ci = 0; ci < cons.size(); ++ci) {
    const auto& c = cons[ci];
    if (!spec.accepts(c.predicate.kind)) {
      throw ContractError("constraint " + std::to_string(ci) + " is " + std::string(kind_name(c.predicate.kind)) +
                          ", gadget " + spec.name + " needs " + std::string(kind_name(spec.source)));
    }
    outputs.push_back(spec.build(c.predicate));
  }
  const std::string tag = aux_tag(instance, outputs);
  for (std::size_t ci = 0; ci < cons.size(); ++ci) {
    const auto& c = cons[ci];
    const GadgetOutput& g = outputs[ci];
    std::vector<int> global(c.vars.begin(), c.vars.end());
    for (std::size_t k = 0; k < g.aux_domains.size(); ++k) {
      std::string name = tag + std::to_string(ci) + "_" + std::to_string(k);
      global.push_back(static_cast<int>(vars.size()));
      vars.push_back({std::move(name), g.aux_domains[k]});
    }
    for (const auto& lc : g.constraints) {
      Constraint mapped{lc.predicate, {}, c.weight * lc.weight};
      for (int v : lc.vars) mapped.vars.push_back(global[v]);
      out.push_back(std::move(mapped));
    }
  }
  return CspInstance(std::move(vars), std::move(out));
}

}  // namespace tritcert
