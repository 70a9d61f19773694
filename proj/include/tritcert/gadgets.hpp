#pragma once

#include <functional>
#include <string>
#include <vector>

#include "tritcert/csp.hpp"
#include "tritcert/rational.hpp"

namespace tritcert {

// Constraint over gadget-local variables: ids [0, source arity) are the
// source constraint's variables, later ids are the gadget's auxiliaries.
struct LocalConstraint {
  Predicate predicate;
  std::vector<int> vars;
  Rational weight;
};

struct GadgetOutput {
  int source_arity = 0;
  std::vector<int> aux_domains;
  std::vector<LocalConstraint> constraints;  // weights sum to 1

  int num_locals() const { return source_arity + static_cast<int>(aux_domains.size()); }
};

struct GadgetSpec {
  std::string name;
  PredicateKind source = PredicateKind::FourNAT;
  PredicateKind target = PredicateKind::TwoNLin;
  Rational gamma;
  std::function<GadgetOutput(const Predicate&)> build;

  bool accepts(PredicateKind kind) const;
};

/// 4NAT(v_i + k_i) -> {v_i + k_i != y_C : i = 1..4}, weights 1/4.
GadgetOutput gadget_4nat_to_2nlin(const Predicate& source);

/// v1 - v2 != a -> y_C over the six satisfying maps g: {v1, v2} -> Z_3
/// (listed in increasing (g(v1), g(v2)) order), constraints y_C(v1) = v1 and
/// y_C(v2) = v2 with weights 1/2. 3-Coloring sources are taken as a = 0.
GadgetOutput gadget_2nlin_to_labelcover(const Predicate& source);

/// Applies inner to every constraint of outer's output; weights multiply.
GadgetOutput compose_gadgets(const GadgetOutput& outer, const std::function<GadgetOutput(const Predicate&)>& inner);

GadgetSpec fournat_to_2nlin_gadget();
GadgetSpec twonlin_to_labelcover_gadget();
/// The two gadgets above, composed.
GadgetSpec fournat_to_labelcover_gadget();

struct GammaVerification {
  Rational gamma_observed;  // least optimum over non-satisfying sources
  Rational gamma_max;       // greatest; equals gamma_observed when exact
  bool completeness = false;
  bool pass = false;
};

/// Enumerates every source assignment and every auxiliary labeling for one
/// source constraint.
GammaVerification verify_gamma(const GadgetSpec& spec, const Predicate& source);
/// As above, over every parameterization of the source kind (81 shift
/// vectors for 4NAT, three right-hand sides for 2-NLin).
GammaVerification verify_gamma(const GadgetSpec& spec);

struct DecisionThresholds {
  Rational c;
  Rational s;

  DecisionThresholds() = default;
  /// Requires 0 <= s < c <= 1.
  DecisionThresholds(Rational c, Rational s);
};

/// (c + (1-c) gamma, s + (1-s) gamma). Requires 0 <= gamma < 1.
DecisionThresholds compose_thresholds(const DecisionThresholds& t, const Rational& gamma);

/// Replaces every constraint by the gadget, with fresh auxiliaries named
/// "aux<constraint>_<k>" and weights scaled by the source weight.
CspInstance apply_gadget_to_instance(const CspInstance& instance, const GadgetSpec& spec);

}  // namespace tritcert
