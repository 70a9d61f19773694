#include "tritcert/csp.hpp"

#include <algorithm>
#include <array>
#include <numeric>

#include "tritcert/error.hpp"

namespace tritcert {

namespace {

constexpr std::array<std::pair<PredicateKind, std::string_view>, 5> kNames = {{
    {PredicateKind::ThreeColoring, "3coloring"},
    {PredicateKind::TwoNLin, "2nlin"},
    {PredicateKind::FourNAT, "4nat"},
    {PredicateKind::TwoPair, "twopair"},
    {PredicateKind::DToOne, "dto1"},
}};

int mod3(int v) { return ((v % 3) + 3) % 3; }

// Fraction of the constraint's label space, with the labels of already
// fixed variables pinned, on which it holds.
Rational conditional_fraction(const Constraint& c, const CspInstance& inst, const std::vector<int>& partial) {
  const int arity = static_cast<int>(c.vars.size());
  std::vector<int> labels(arity), free_slots;
  std::int64_t total = 1;
  for (int s = 0; s < arity; ++s) {
    const int v = c.vars[s];
    if (partial[v] >= 0) {
      labels[s] = partial[v];
    } else if (std::find_if(free_slots.begin(), free_slots.end(), [&](int t) { return c.vars[t] == v; }) ==
               free_slots.end()) {
      free_slots.push_back(s);
      total *= inst.variables()[v].domain;
    }
  }
  std::int64_t good = 0;
  std::vector<int> digits(free_slots.size(), 0);
  for (std::int64_t k = 0; k < total; ++k) {
    std::int64_t rest = k;
    for (std::size_t f = 0; f < free_slots.size(); ++f) {
      const int dom = inst.variables()[c.vars[free_slots[f]]].domain;
      digits[f] = static_cast<int>(rest % dom);
      rest /= dom;
    }
    for (int s = 0; s < arity; ++s) {
      const int v = c.vars[s];
      if (partial[v] >= 0) continue;
      for (std::size_t f = 0; f < free_slots.size(); ++f) {
        if (c.vars[free_slots[f]] == v) labels[s] = digits[f];
      }
    }
    good += c.predicate.holds(labels);
  }
  return make_rational(good, total);
}

}  // namespace

std::string_view kind_name(PredicateKind kind) {
  for (const auto& [k, n] : kNames) {
    if (k == kind) return n;
  }
  return "unknown";
}

PredicateKind parse_kind(std::string_view name) {
  for (const auto& [k, n] : kNames) {
    if (n == name) return k;
  }
  throw ParseError("unknown predicate kind '" + std::string(name) + "'");
}

Predicate Predicate::three_coloring() { return {PredicateKind::ThreeColoring, {}}; }
Predicate Predicate::two_nlin(int rhs) { return {PredicateKind::TwoNLin, {mod3(rhs)}}; }
Predicate Predicate::four_nat(std::array<int, 4> shifts) {
  return {PredicateKind::FourNAT, {mod3(shifts[0]), mod3(shifts[1]), mod3(shifts[2]), mod3(shifts[3])}};
}
Predicate Predicate::two_pair() { return {PredicateKind::TwoPair, {}}; }
Predicate Predicate::d_to_one(std::vector<int> projection) { return {PredicateKind::DToOne, std::move(projection)}; }

int Predicate::arity() const {
  switch (kind) {
    case PredicateKind::ThreeColoring:
    case PredicateKind::TwoNLin:
    case PredicateKind::DToOne:
      return 2;
    case PredicateKind::FourNAT:
    case PredicateKind::TwoPair:
      return 4;
  }
  return 0;
}

int Predicate::slot_domain(int slot) const {
  if (kind != PredicateKind::DToOne) return 3;
  if (slot == 1) return static_cast<int>(params.size());
  return params.empty() ? 0 : *std::max_element(params.begin(), params.end()) + 1;
}

bool four_nat(int a, int b, int c, int d) {
  const int seen = (1 << a) | (1 << b) | (1 << c) | (1 << d);
  return seen != 0b111;
}

bool two_pair(int a, int b, int c, int d) {
  std::array<int, 3> count{};
  ++count[a];
  ++count[b];
  ++count[c];
  ++count[d];
  int pairs = 0;
  for (int k : count) pairs += (k == 2);
  return pairs == 2;
}

bool Predicate::holds(std::span<const int> l) const {
  switch (kind) {
    case PredicateKind::ThreeColoring:
      return l[0] != l[1];
    case PredicateKind::TwoNLin:
      return mod3(l[0] - l[1]) != params[0];
    case PredicateKind::FourNAT:
      return tritcert::four_nat(mod3(l[0] + params[0]), mod3(l[1] + params[1]), mod3(l[2] + params[2]),
                      mod3(l[3] + params[3]));
    case PredicateKind::TwoPair:
      return tritcert::two_pair(l[0], l[1], l[2], l[3]);
    case PredicateKind::DToOne:
      return params[l[1]] == l[0];
  }
  return false;
}

bool eval_predicate(const Predicate& p, std::span<const int> labels) {
  if (static_cast<int>(labels.size()) != p.arity()) {
    throw ShapeError(std::string(kind_name(p.kind)) + " expects " + std::to_string(p.arity()) + " labels, got " +
                     std::to_string(labels.size()));
  }
  for (int s = 0; s < p.arity(); ++s) {
    if (labels[s] < 0 || labels[s] >= p.slot_domain(s)) throw ContractError("label out of range");
  }
  return p.holds(labels);
}

CspInstance::CspInstance(std::vector<Variable> variables, std::vector<Constraint> constraints)
    : variables_(std::move(variables)), constraints_(std::move(constraints)) {
  for (const auto& v : variables_) {
    if (v.domain < 1) throw ContractError("variable '" + v.name + "' has empty domain");
  }
  Rational total = 0;
  for (const auto& c : constraints_) {
    const auto& p = c.predicate;
    if (static_cast<int>(c.vars.size()) != p.arity()) throw ShapeError("constraint arity does not match predicate");
    switch (p.kind) {
      case PredicateKind::TwoNLin:
        if (p.params.size() != 1) throw ContractError("2nlin takes one parameter");
        break;
      case PredicateKind::FourNAT:
        if (p.params.size() != 4) throw ContractError("4nat takes four shifts");
        break;
      case PredicateKind::DToOne:
        if (p.params.empty()) throw ContractError("dto1 needs a projection table");
        break;
      default:
        if (!p.params.empty()) throw ContractError(std::string(kind_name(p.kind)) + " takes no parameters");
    }
    for (std::size_t s = 0; s < c.vars.size(); ++s) {
      const int v = c.vars[s];
      if (v < 0 || v >= static_cast<int>(variables_.size())) throw ContractError("constraint references unknown variable");
      if (p.kind == PredicateKind::DToOne) {
        if (s == 1 && variables_[v].domain != static_cast<int>(p.params.size())) {
          throw ContractError("dto1 projection size does not match variable domain");
        }
        if (s == 0) {
          for (int m : p.params) {
            if (m < 0 || m >= variables_[v].domain) throw ContractError("dto1 projection leaves target domain");
          }
        }
      } else if (variables_[v].domain != 3) {
        throw ContractError(std::string(kind_name(p.kind)) + " needs Z_3 variables");
      }
    }
    if (c.weight < 0) throw ContractError("negative constraint weight");
    total += c.weight;
  }
  if (total != 1) throw ContractError("constraint weights sum to " + to_string(total) + ", not 1");
}

int CspInstance::find_variable(std::string_view name) const {
  for (int i = 0; i < num_variables(); ++i) {
    if (variables_[i].name == name) return i;
  }
  return -1;
}

Rational instance_value(const CspInstance& instance, const Assignment& assignment) {
  if (static_cast<int>(assignment.size()) != instance.num_variables()) {
    throw ContractError("assignment covers " + std::to_string(assignment.size()) + " of " +
                        std::to_string(instance.num_variables()) + " variables");
  }
  for (int v = 0; v < instance.num_variables(); ++v) {
    if (assignment[v] < 0 || assignment[v] >= instance.variables()[v].domain) {
      throw ContractError("label out of domain for '" + instance.variables()[v].name + "'");
    }
  }
  Rational value = 0;
  std::array<int, 4> labels{};
  for (const auto& c : instance.constraints()) {
    for (std::size_t s = 0; s < c.vars.size(); ++s) labels[s] = assignment[c.vars[s]];
    if (c.predicate.holds(std::span<const int>(labels.data(), c.vars.size()))) value += c.weight;
  }
  return value;
}

Optimum exact_optimum(const CspInstance& instance) {
  const int n = instance.num_variables();
  std::uint64_t space = 1;
  for (const auto& v : instance.variables()) {
    space *= static_cast<std::uint64_t>(v.domain);
    if (space > kMaxOptimumAssignments) throw CapacityError("assignment space exceeds 3^12");
  }
  std::vector<Rational> weights;
  for (const auto& c : instance.constraints()) weights.push_back(c.weight);
  const ScaledWeights scaled = scale_to_common_denominator(weights);

  Assignment current(n, 0), best(n, 0);
  std::int64_t best_score = -1;
  std::array<int, 4> labels{};
  const auto& cons = instance.constraints();
  // Lexicographic odometer: the last variable moves fastest.
  for (std::uint64_t k = 0; k < space; ++k) {
    std::int64_t score = 0;
    for (std::size_t i = 0; i < cons.size(); ++i) {
      const auto& c = cons[i];
      for (std::size_t s = 0; s < c.vars.size(); ++s) labels[s] = current[c.vars[s]];
      if (c.predicate.holds(std::span<const int>(labels.data(), c.vars.size()))) score += scaled.numerators[i];
    }
    if (score > best_score) {
      best_score = score;
      best = current;
    }
    for (int v = n - 1; v >= 0; --v) {
      if (++current[v] < instance.variables()[v].domain) break;
      current[v] = 0;
    }
  }
  return {scaled.value(best_score), best};
}

Rational random_assignment_expectation(const CspInstance& instance) {
  const std::vector<int> none(instance.num_variables(), -1);
  Rational e = 0;
  for (const auto& c : instance.constraints()) e += c.weight * conditional_fraction(c, instance, none);
  return e;
}

Assignment conditional_expectation_assignment(const CspInstance& instance) {
  const int n = instance.num_variables();
  std::vector<int> partial(n, -1);
  std::vector<std::vector<int>> touching(n);
  for (std::size_t i = 0; i < instance.constraints().size(); ++i) {
    for (int v : instance.constraints()[i].vars) {
      if (touching[v].empty() || touching[v].back() != static_cast<int>(i)) touching[v].push_back(static_cast<int>(i));
    }
  }
  for (int v = 0; v < n; ++v) {
    // Only constraints touching v change with its label.
    int best_label = 0;
    Rational best = -1;
    for (int label = 0; label < instance.variables()[v].domain; ++label) {
      partial[v] = label;
      Rational e = 0;
      for (int ci : touching[v]) {
        const auto& c = instance.constraints()[ci];
        e += c.weight * conditional_fraction(c, instance, partial);
      }
      if (e > best) {
        best = e;
        best_label = label;
      }
    }
    partial[v] = best_label;
  }
  return partial;
}

}  // namespace tritcert
