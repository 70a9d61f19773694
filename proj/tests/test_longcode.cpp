#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "oracles.hpp"
#include "tritcert/dictator.hpp"
#include "tritcert/error.hpp"
#include "tritcert/longcode.hpp"
#include "tritcert/suites.hpp"

using namespace tritcert;

namespace {

LabelCoverInstance single_edge(int K, int d, std::vector<std::vector<int>> pi) {
  return LabelCoverInstance(K, d, {"u"}, {"v"}, {{0, 0, 1, std::move(pi)}});
}

// |U| = 1, |V| = 2, K = 2, d = 2, weights 1/2.
LabelCoverInstance two_edges() {
  return LabelCoverInstance(2, 2, {"u"}, {"v", "w"},
                            {{0, 0, make_rational(1, 2), {{0, 2}, {1, 3}}}, {0, 1, make_rational(1, 2), {{3, 0}, {1, 2}}}});
}

}  // namespace

TEST_CASE("label cover validation") {
  CHECK_NOTHROW(single_edge(1, 2, {{0, 1}}));
  CHECK_THROWS_AS(single_edge(2, 2, {{0, 1}, {1, 2}}), ContractError);
  CHECK_THROWS_AS(single_edge(2, 2, {{0, 1, 2}, {3}}), ContractError);
  CHECK_THROWS_AS(single_edge(2, 2, {{0, 1}, {2, 4}}), ContractError);
  CHECK_THROWS_AS(LabelCoverInstance(1, 2, {"u"}, {"v"}, {}), ContractError);
  CHECK_THROWS_AS(LabelCoverInstance(1, 2, {"u"}, {"v"}, {{0, 0, make_rational(1, 2), {{0, 1}}}}), ContractError);
  CHECK_THROWS_AS(LabelCoverInstance(1, 2, {"u"}, {"v"}, {{0, 1, 1, {{0, 1}}}}), ContractError);
  const auto lc = two_edges();
  CHECK(lc.edges()[1].projection() == std::vector<int>{0, 1, 1, 0});
  CHECK(labeling_value(lc, {{0}, {0, 3}}) == 1);
  CHECK(labeling_value(lc, {{0}, {0, 1}}) == make_rational(1, 2));
  CHECK(labelcover_optimum(lc) == 1);
}

TEST_CASE("single edge with K = 1, d = 2") {
  const auto lc = single_edge(1, 2, {{0, 1}});
  const auto inst = build_4nat_instance(lc);
  // 3^0 orbits for f, 3^1 for g; 3 + 9 unfolded points.
  CHECK(inst.csp.num_variables() == 4);
  CHECK(inst.csp.constraints().size() == 3 * 36);
  Rational total = 0;
  for (const auto& c : inst.csp.constraints()) {
    total += c.weight;
    CHECK(c.predicate.kind == PredicateKind::FourNAT);
  }
  CHECK(total == 1);
  CHECK(completeness_certificate(lc, {{0}, {1}}).matches_one);
}

TEST_CASE("orbits") {
  for (int n = 1; n <= 3; ++n) {
    for (Index x = 0; x < kPow3[n]; ++x) {
      const auto o = orbit_of(x, n);
      CHECK(o.representative < kPow3[n - 1]);
      CHECK(shift_index(3 * o.representative, n, o.shift) == x);
    }
  }
}

TEST_CASE("reordering follows the preimage lists") {
  const LabelCoverEdge e{0, 0, 1, {{3, 0}, {1, 2}}};
  const auto g = FunctionTable::dictator(4, 3);
  // Canonical coordinate 0 reads original coordinate 3.
  CHECK(reorder_for_edge(g, e, 2) == FunctionTable::dictator(4, 0));
  CHECK(reorder_for_edge(FunctionTable::dictator(4, 2), e, 2) == FunctionTable::dictator(4, 3));
  CHECK_THROWS_AS(reorder_for_edge(FunctionTable::dictator(3, 0), e, 2), ShapeError);
}

TEST_CASE("completeness and per-edge identity") {
  const auto lc = two_edges();
  const auto inst = build_4nat_instance(lc);
  CHECK(inst.csp.num_variables() == 3 + 2 * 27);
  const auto cert = completeness_certificate(lc, {{0}, {2, 3}});
  CHECK(cert.value == 1);
  CHECK(cert.matches_one);
  const auto broken = completeness_certificate(lc, {{0}, {2, 1}});
  CHECK(broken.value == make_rational(5, 6));
  CHECK_FALSE(broken.matches_one);

  std::mt19937_64 rng(31);
  for (int t = 0; t < 5; ++t) {
    LongCodeAssignment tables{{random_folded_table(2, rng)}, {random_folded_table(4, rng), random_folded_table(4, rng)}};
    const Rational direct = instance_value(inst.csp, inst.assignment_for(tables));
    CHECK(direct == per_edge_4nat_value(lc, tables));
    // Oracle: walk the test outcomes with the edge's own coordinates.
    double oracle_value = 0;
    for (const auto& e : lc.edges()) {
      const auto proj = e.projection();
      double pass = 0, n = 0;
      oracle::each_4nat(2, 2, [&](Index x, Index y, Index z, Index w) {
        auto to_orig = [&](Index canon) {
          const auto cd = oracle::digits(canon, 4);
          std::vector<int> od(4);
          for (int k = 0; k < 2; ++k) {
            for (int j = 0; j < 2; ++j) od[e.preimages[k][j]] = cd[2 * k + j];
          }
          return oracle::index_of(od);
        };
        const auto& g = tables.g[e.v];
        pass += oracle::fournat(tables.f[e.u](x), g(to_orig(y)), g(to_orig(z)), g(to_orig(w)));
        n += 1;
      });
      oracle_value += to_double(e.weight) * pass / n;
    }
    CHECK(to_double(direct) == doctest::Approx(oracle_value));
  }
  CHECK_THROWS_AS(inst.assignment_for({{FunctionTable::constant(2, 0)}, {random_folded_table(4, rng), random_folded_table(4, rng)}}),
                  ContractError);
}

TEST_CASE("capacity") {
  std::vector<std::vector<int>> pi(7);
  for (int k = 0; k < 7; ++k) pi[k] = {k};
  CHECK_THROWS_AS(build_4nat_instance(single_edge(7, 1, pi)), CapacityError);
}

TEST_CASE("decoding") {
  SUBCASE("dictator gives a point mass") {
    const auto p = decode_spectrum(transform(FunctionTable::dictator(6, 5)));
    for (int j = 0; j < 6; ++j) CHECK(p[j] == doctest::Approx(j == 5 ? 1.0 : 0.0));
  }
  SUBCASE("y1 + y2 + 2 y3 is uniform over three coordinates") {
    std::vector<Trit> v(kPow3[4]);
    for (Index y = 0; y < v.size(); ++y) {
      const auto d = oracle::digits(y, 4);
      v[y] = static_cast<Trit>((d[0] + d[1] + 2 * d[2]) % 3);
    }
    const FunctionTable g(4, v, true);
    const auto p = decode_spectrum(transform(g));
    CHECK(p[0] == doctest::Approx(1.0 / 3));
    CHECK(p[1] == doctest::Approx(1.0 / 3));
    CHECK(p[2] == doctest::Approx(1.0 / 3));
    CHECK(p[3] == doctest::Approx(0.0));
  }
  SUBCASE("random folded tables give distributions") {
    std::mt19937_64 rng(32);
    for (int t = 0; t < 20; ++t) {
      const auto p = decode_spectrum(transform(random_folded_table(4, rng)));
      for (double v : p) CHECK(v >= 0);
      CHECK(std::accumulate(p.begin(), p.end(), 0.0) == doctest::Approx(1.0).epsilon(1e-9));
    }
  }
  SUBCASE("unfolded sources are rejected") {
    CHECK_THROWS_AS(decode_spectrum(transform(FunctionTable::constant(2, 0))), ContractError);
  }
  SUBCASE("sampling is seeded") {
    const auto lc = two_edges();
    std::mt19937_64 rng(33);
    LongCodeAssignment tables{{random_folded_table(2, rng)}, {random_folded_table(4, rng), random_folded_table(4, rng)}};
    std::mt19937_64 a(5), b(5);
    const auto la = sample_labeling(lc, tables, a);
    const auto lb = sample_labeling(lc, tables, b);
    CHECK(la.left == lb.left);
    CHECK(la.right == lb.right);
    // Empirical frequencies follow decode_spectrum.
    const auto spec = transform(tables.g[0]);
    const auto p = decode_spectrum(spec);
    std::vector<int> counts(4, 0);
    const int n = 200000;
    for (int t = 0; t < n; ++t) ++counts[sample_decoded_label(spec, a)];
    for (int j = 0; j < 4; ++j) {
      const double sigma = std::sqrt(p[j] * (1 - p[j]) / n);
      CHECK(std::abs(static_cast<double>(counts[j]) / n - p[j]) <= 4 * sigma + 1e-12);
    }
  }
}

TEST_CASE("expected decoded value") {
  const auto lc = two_edges();
  CHECK(expected_decoded_value(lc, dictator_assignment(lc, {{0}, {2, 3}})) == doctest::Approx(1.0));
  CHECK(expected_decoded_value(lc, dictator_assignment(lc, {{0}, {2, 1}})) == doctest::Approx(0.5));
  const auto one = single_edge(2, 1, {{0}, {1}});
  CHECK(expected_decoded_value(one, dictator_assignment(one, {{0}, {1}})) == doctest::Approx(0.0));
  std::mt19937_64 rng(34);
  for (int t = 0; t < 10; ++t) {
    LongCodeAssignment tables{{random_folded_table(2, rng)}, {random_folded_table(4, rng), random_folded_table(4, rng)}};
    const double v = expected_decoded_value(lc, tables);
    CHECK(v >= 0);
    CHECK(v <= 1);
    // Brute-force expectation over the product of decoded distributions.
    const auto pu = decode_spectrum(transform(tables.f[0]));
    const auto pv = decode_spectrum(transform(tables.g[0]));
    const auto pw = decode_spectrum(transform(tables.g[1]));
    double brute = 0;
    for (int i = 0; i < 2; ++i) {
      for (int a = 0; a < 4; ++a) {
        for (int b = 0; b < 4; ++b) {
          brute += pu[i] * pv[a] * pw[b] * to_double(labeling_value(lc, {{i}, {a, b}}));
        }
      }
    }
    CHECK(v == doctest::Approx(brute));
  }
}

TEST_CASE("GOOD alpha filter") {
  const BlockMap b(2, 2);
  const auto f = FunctionTable::dictator(2, 1);
  const auto g = FunctionTable::dictator(4, 3);
  const auto good = good_alpha_filter(transform(f), transform(g), 0.5, b);
  // Only f^ at e_1 is nonzero: pi3(alpha) = e_1 with at most two nonzero digits.
  std::vector<Index> expected;
  for (Index a = 0; a < kPow3[4]; ++a) {
    const auto d = oracle::digits(a, 4);
    const int nz = (d[0] != 0) + (d[1] != 0) + (d[2] != 0) + (d[3] != 0);
    if ((d[0] + d[1]) % 3 == 0 && (d[2] + d[3]) % 3 == 1 && std::ldexp(1.0, -nz) >= 3.0 * 0.5 / 8.0) expected.push_back(a);
  }
  std::vector<Index> got;
  for (const auto& m : good.members) got.push_back(m.alpha);
  std::sort(got.begin(), got.end());
  CHECK(got == expected);
  CHECK(expected.size() == 3);
  CHECK(good.consequences_hold());
  // f^ supported at 0 only.
  CHECK(good_alpha_filter(transform(FunctionTable::constant(2, 0)), transform(g), 0.5, b).members.empty());
  CHECK_THROWS_AS(good_alpha_filter(transform(f), transform(g), 0.0, b), ContractError);
  std::mt19937_64 rng(35);
  for (int t = 0; t < 30; ++t) {
    const auto ff = random_folded_table(2, rng);
    const auto gg = random_folded_table(4, rng);
    for (double eps : {0.01, 0.1, 0.3, 0.9}) {
      const auto set = good_alpha_filter(transform(ff), transform(gg), eps, b);
      CHECK(set.consequences_hold());
      for (const auto& m : set.members) CHECK(m.support <= std::log2(8.0 / (3.0 * eps)) + 1e-12);
    }
  }
}

TEST_CASE("per-edge decoding chain") {
  CHECK(per_edge_decoding_floor(0.5) == doctest::Approx(27.0 * 0.125 / (512.0 * std::log2(16.0 / 3.0))));
  const auto f = FunctionTable::dictator(2, 0);
  const auto g = FunctionTable::dictator(4, 1);
  for (double eps : {0.1, 0.5, 0.6}) {
    const auto c = edge_decoding_check(f, g, eps);
    CHECK(c.premise);
    CHECK(c.holds());
    CHECK(c.success == doctest::Approx(1.0));
  }
  // 2/3 + eps/2 > 1: the chain holds vacuously.
  CHECK_FALSE(edge_decoding_check(f, g, 0.9).premise);
  CHECK(edge_decoding_check(f, g, 0.9).holds());
  std::mt19937_64 rng(36);
  for (int t = 0; t < 30; ++t) {
    const auto c = edge_decoding_check(random_folded_table(2, rng), random_folded_table(4, rng), 0.2);
    CHECK(c.holds());
  }
}

TEST_CASE("planted instances are satisfiable") {
  std::mt19937_64 rng(37);
  for (int K = 1; K <= 2; ++K) {
    const auto p = planted_label_cover(K, 2, rng);
    CHECK(labeling_value(p.instance, p.labeling) == 1);
    CHECK(completeness_certificate(p.instance, p.labeling).matches_one);
  }
}
