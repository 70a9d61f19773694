#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <functional>
#include <random>

#include "oracles.hpp"
#include "tritcert/csp.hpp"
#include "tritcert/error.hpp"

using namespace tritcert;

namespace {

CspInstance random_instance(std::mt19937_64& rng, int vars, int cons) {
  std::vector<Variable> vs;
  for (int i = 0; i < vars; ++i) vs.push_back({"x" + std::to_string(i), 3});
  std::vector<Constraint> cs;
  for (int c = 0; c < cons; ++c) {
    const int kind = static_cast<int>(rng() % 3);
    std::vector<int> refs;
    Predicate p;
    if (kind == 0) {
      p = Predicate::four_nat({random_trit(rng), random_trit(rng), random_trit(rng), random_trit(rng)});
      for (int s = 0; s < 4; ++s) refs.push_back(static_cast<int>(rng() % vars));
    } else if (kind == 1) {
      p = Predicate::two_nlin(random_trit(rng));
      refs = {static_cast<int>(rng() % vars), static_cast<int>(rng() % vars)};
    } else {
      p = Predicate::three_coloring();
      refs = {static_cast<int>(rng() % vars), static_cast<int>(rng() % vars)};
    }
    cs.push_back({p, refs, make_rational(1, cons)});
  }
  return CspInstance(vs, cs);
}

// Recursive search, independent of the library's odometer.
Rational oracle_optimum(const CspInstance& inst) {
  Assignment a(inst.num_variables(), 0);
  Rational best = -1;
  std::function<void(int)> rec = [&](int v) {
    if (v == inst.num_variables()) {
      Rational val = 0;
      for (const auto& c : inst.constraints()) {
        std::vector<int> l;
        for (int r : c.vars) l.push_back(a[r]);
        if (eval_predicate(c.predicate, l)) val += c.weight;
      }
      if (val > best) best = val;
      return;
    }
    for (int x = 0; x < inst.variables()[v].domain; ++x) {
      a[v] = x;
      rec(v + 1);
    }
  };
  rec(0);
  return best;
}

// Steepest-ascent local search; a lower bound on the optimum.
Rational local_search(const CspInstance& inst, std::mt19937_64& rng) {
  Assignment a(inst.num_variables());
  for (auto& v : a) v = random_trit(rng);
  Rational cur = instance_value(inst, a);
  bool improved = true;
  while (improved) {
    improved = false;
    for (int v = 0; v < inst.num_variables(); ++v) {
      for (int x = 0; x < 3; ++x) {
        const int old = a[v];
        a[v] = x;
        const Rational val = instance_value(inst, a);
        if (val > cur) {
          cur = val;
          improved = true;
        } else {
          a[v] = old;
        }
      }
    }
  }
  return cur;
}

}  // namespace

TEST_CASE("predicates against their definitions") {
  int fournat_count = 0, twopair_count = 0;
  for (int k = 0; k < 81; ++k) {
    const int a = k % 3, b = k / 3 % 3, c = k / 9 % 3, d = k / 27;
    CHECK(four_nat(a, b, c, d) == oracle::fournat(a, b, c, d));
    int counts[3] = {0, 0, 0};
    ++counts[a], ++counts[b], ++counts[c], ++counts[d];
    const bool tp = (counts[0] == 2) + (counts[1] == 2) + (counts[2] == 2) == 2;
    CHECK(two_pair(a, b, c, d) == tp);
    if (tp) CHECK(four_nat(a, b, c, d));
    fournat_count += four_nat(a, b, c, d);
    twopair_count += tp;
  }
  CHECK(fournat_count == 45);
  CHECK(twopair_count == 18);
}

TEST_CASE("predicate evaluation") {
  CHECK(eval_predicate(Predicate::three_coloring(), std::vector<int>{0, 1}));
  CHECK_FALSE(eval_predicate(Predicate::three_coloring(), std::vector<int>{2, 2}));
  CHECK(eval_predicate(Predicate::two_nlin(1), std::vector<int>{0, 0}));
  CHECK_FALSE(eval_predicate(Predicate::two_nlin(1), std::vector<int>{2, 1}));
  CHECK(eval_predicate(Predicate::two_nlin(-1), std::vector<int>{2, 1}));
  CHECK(eval_predicate(Predicate::four_nat({0, 1, 2, 0}), std::vector<int>{0, 0, 0, 0}) == false);
  CHECK(eval_predicate(Predicate::four_nat({0, 1, 1, 0}), std::vector<int>{0, 0, 0, 0}));
  CHECK(eval_predicate(Predicate::d_to_one({0, 0, 1, 1}), std::vector<int>{1, 3}));
  CHECK_FALSE(eval_predicate(Predicate::d_to_one({0, 0, 1, 1}), std::vector<int>{0, 3}));
  CHECK_THROWS_AS(eval_predicate(Predicate::three_coloring(), std::vector<int>{0}), ShapeError);
  CHECK_THROWS_AS(eval_predicate(Predicate::three_coloring(), std::vector<int>{0, 3}), ContractError);
  CHECK_THROWS_AS(eval_predicate(Predicate::d_to_one({0, 1}), std::vector<int>{0, 2}), ContractError);
}

TEST_CASE("kind names") {
  for (auto k : {PredicateKind::ThreeColoring, PredicateKind::TwoNLin, PredicateKind::FourNAT, PredicateKind::TwoPair,
                 PredicateKind::DToOne}) {
    CHECK(parse_kind(kind_name(k)) == k);
  }
  CHECK_THROWS_AS(parse_kind("5nat"), ParseError);
}

TEST_CASE("instance validation") {
  const std::vector<Variable> vs = {{"a", 3}, {"b", 3}};
  CHECK_NOTHROW(CspInstance(vs, {{Predicate::three_coloring(), {0, 1}, 1}}));
  CHECK_THROWS_AS(CspInstance(vs, {{Predicate::three_coloring(), {0, 1}, make_rational(1, 2)}}), ContractError);
  CHECK_THROWS_AS(CspInstance(vs, {{Predicate::three_coloring(), {0, 2}, 1}}), ContractError);
  CHECK_THROWS_AS(CspInstance(vs, {{Predicate::three_coloring(), {0}, 1}}), ShapeError);
  CHECK_THROWS_AS(CspInstance(vs, {{Predicate::three_coloring(), {0, 1}, 2}, {Predicate::three_coloring(), {0, 1}, -1}}),
                  ContractError);
  CHECK_THROWS_AS(CspInstance(vs, {{Predicate{PredicateKind::TwoNLin, {}}, {0, 1}, 1}}), ContractError);
  const CspInstance inst(vs, {{Predicate::three_coloring(), {0, 1}, 1}});
  CHECK(inst.find_variable("b") == 1);
  CHECK(inst.find_variable("zz") == -1);
  CHECK_THROWS_AS(instance_value(inst, {0}), ContractError);
  CHECK_THROWS_AS(instance_value(inst, {0, 5}), ContractError);
}

TEST_CASE("exact optimum against recursion and local search") {
  std::mt19937_64 rng(1);
  for (int t = 0; t < 30; ++t) {
    const auto inst = random_instance(rng, 5, 6);
    const auto opt = exact_optimum(inst);
    CHECK(opt.value == oracle_optimum(inst));
    CHECK(instance_value(inst, opt.witness) == opt.value);
    CHECK(local_search(inst, rng) <= opt.value);
  }
}

TEST_CASE("optimum ties go to the least assignment") {
  const std::vector<Variable> vs = {{"a", 3}, {"b", 3}};
  const CspInstance inst(vs, {{Predicate::three_coloring(), {0, 1}, 1}});
  const auto opt = exact_optimum(inst);
  CHECK(opt.value == 1);
  CHECK(opt.witness == Assignment{0, 1});
}

TEST_CASE("optimum capacity") {
  std::vector<Variable> vs;
  for (int i = 0; i < 13; ++i) vs.push_back({"v" + std::to_string(i), 3});
  const CspInstance inst(vs, {{Predicate::three_coloring(), {0, 1}, 1}});
  CHECK_THROWS_AS(exact_optimum(inst), CapacityError);
}

TEST_CASE("random assignment expectation") {
  std::mt19937_64 rng(2);
  for (int t = 0; t < 10; ++t) {
    const auto inst = random_instance(rng, 4, 5);
    Rational avg = 0;
    for (int k = 0; k < 81; ++k) avg += instance_value(inst, {k % 3, k / 3 % 3, k / 9 % 3, k / 27});
    CHECK(random_assignment_expectation(inst) == avg / 81);
  }
  // Pure 4NAT on distinct variables.
  std::vector<Variable> vs;
  for (int i = 0; i < 6; ++i) vs.push_back({"v" + std::to_string(i), 3});
  const CspInstance pure(vs, {{Predicate::four_nat({0, 1, 2, 0}), {0, 1, 2, 3}, make_rational(1, 2)},
                              {Predicate::four_nat({2, 2, 1, 0}), {5, 4, 1, 0}, make_rational(1, 2)}});
  CHECK(random_assignment_expectation(pure) == make_rational(5, 9));
  const CspInstance coloring({{"a", 3}, {"b", 3}}, {{Predicate::three_coloring(), {0, 1}, 1}});
  CHECK(random_assignment_expectation(coloring) == make_rational(2, 3));
}

TEST_CASE("conditional expectation never falls below the random value") {
  std::mt19937_64 rng(3);
  for (int t = 0; t < 20; ++t) {
    const auto inst = random_instance(rng, 5, 6);
    const auto a = conditional_expectation_assignment(inst);
    CHECK(instance_value(inst, a) >= random_assignment_expectation(inst));
  }
}
