#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "tritcert/rational.hpp"

namespace tritcert {

enum class PredicateKind { ThreeColoring, TwoNLin, FourNAT, TwoPair, DToOne };

std::string_view kind_name(PredicateKind kind);
PredicateKind parse_kind(std::string_view name);

// Parameters by kind:
//   ThreeColoring  none                  v1 != v2
//   TwoNLin        {a}                   v1 - v2 != a (mod 3)
//   FourNAT        {k1, k2, k3, k4}      4NAT(v1 + k1, ..., v4 + k4)
//   TwoPair        none
//   DToOne         projection table      map[label(v2)] == label(v1); v1 is the
//                                        small side, v2 ranges over map.size()
struct Predicate {
  PredicateKind kind = PredicateKind::FourNAT;
  std::vector<int> params;

  static Predicate three_coloring();
  static Predicate two_nlin(int rhs);
  static Predicate four_nat(std::array<int, 4> shifts = {0, 0, 0, 0});
  static Predicate two_pair();
  static Predicate d_to_one(std::vector<int> projection);

  int arity() const;
  /// Label range of each slot for a Z_3 CSP; DToOne uses the map's shape.
  int slot_domain(int slot) const;
  /// Unchecked; callers guarantee arity.
  bool holds(std::span<const int> labels) const;

  bool operator==(const Predicate&) const = default;
};

bool four_nat(int a, int b, int c, int d);
bool two_pair(int a, int b, int c, int d);

/// Throws ShapeError on arity mismatch, ContractError on out-of-range labels.
bool eval_predicate(const Predicate& p, std::span<const int> labels);

struct Variable {
  std::string name;
  int domain = 3;
};

struct Constraint {
  Predicate predicate;
  std::vector<int> vars;
  Rational weight;
};

using Assignment = std::vector<int>;

class CspInstance {
 public:
  CspInstance() = default;
  /// Validates arities, variable references, domains and that the weights
  /// are nonnegative and sum to exactly 1.
  CspInstance(std::vector<Variable> variables, std::vector<Constraint> constraints);

  const std::vector<Variable>& variables() const { return variables_; }
  const std::vector<Constraint>& constraints() const { return constraints_; }
  int num_variables() const { return static_cast<int>(variables_.size()); }
  int find_variable(std::string_view name) const;  // -1 when absent

 private:
  std::vector<Variable> variables_;
  std::vector<Constraint> constraints_;
};

/// Weighted satisfied fraction; exact.
Rational instance_value(const CspInstance& instance, const Assignment& assignment);

/// Number of assignments exact_optimum will visit at most.
inline constexpr std::uint64_t kMaxOptimumAssignments = 531441;  // 3^12

struct Optimum {
  Rational value;
  Assignment witness;
};

/// Brute force; ties broken by the lexicographically least assignment
/// (variable 0 most significant).
Optimum exact_optimum(const CspInstance& instance);

/// Expected value under independent uniform labels.
Rational random_assignment_expectation(const CspInstance& instance);

/// Greedy derandomization: fixes variables in order, each to the least label
/// maximizing the exact conditional expectation.
Assignment conditional_expectation_assignment(const CspInstance& instance);

}  // namespace tritcert
