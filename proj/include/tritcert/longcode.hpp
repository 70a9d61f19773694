#pragma once

// Label Cover to 4NAT via Long Codes: instance construction, the dictator
// completeness certificate and the spectral decoder.

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "tritcert/csp.hpp"
#include "tritcert/fourier.hpp"
#include "tritcert/rational.hpp"
#include "tritcert/ternary.hpp"

namespace tritcert {

inline constexpr int kMaxLongCodeArity = 6;

struct LabelCoverEdge {
  int u = 0;
  int v = 0;
  Rational weight;
  // preimages[k] lists the d right-side labels mapping to left label k.
  std::vector<std::vector<int>> preimages;

  /// pi_e as a table over [dK].
  std::vector<int> projection() const;
};

class LabelCoverInstance {
 public:
  LabelCoverInstance() = default;
  /// Validates that every map is exactly d-to-1, that vertex references are
  /// in range, that there is at least one edge and that weights sum to 1.
  LabelCoverInstance(int K, int d, std::vector<std::string> left, std::vector<std::string> right,
                     std::vector<LabelCoverEdge> edges);

  int K() const { return K_; }
  int d() const { return d_; }
  BlockMap blocks() const { return BlockMap(K_, d_); }
  const std::vector<std::string>& left() const { return left_; }
  const std::vector<std::string>& right() const { return right_; }
  const std::vector<LabelCoverEdge>& edges() const { return edges_; }

 private:
  int K_ = 1;
  int d_ = 1;
  std::vector<std::string> left_;
  std::vector<std::string> right_;
  std::vector<LabelCoverEdge> edges_;
};

struct Labeling {
  std::vector<int> left;   // in [K]
  std::vector<int> right;  // in [dK]
};

/// Weighted fraction of edges with pi_e(right[v]) == left[u].
Rational labeling_value(const LabelCoverInstance& lc, const Labeling& labeling);

/// Brute force over all labelings; CapacityError beyond kMaxOptimumAssignments.
Rational labelcover_optimum(const LabelCoverInstance& lc);

struct LongCodeAssignment {
  std::vector<FunctionTable> f;  // per left vertex, arity K
  std::vector<FunctionTable> g;  // per right vertex, arity dK
};

/// g reindexed so canonical coordinate k*d + j reads coordinate
/// preimages[k][j] of the original.
FunctionTable reorder_for_edge(const FunctionTable& g, const LabelCoverEdge& edge, int d);

struct LongCodeInstance {
  CspInstance csp;
  // First variable of each vertex's orbit block.
  std::vector<int> left_offset;
  std::vector<int> right_offset;
  int K = 1;
  int d = 1;

  /// Reads folded tables into orbit variables (ContractError if unfolded).
  Assignment assignment_for(const LongCodeAssignment& tables) const;
};

/// Orbit variable of point x within a vertex block, and its shift.
struct OrbitRef {
  Index representative;  // 0 .. 3^(n-1) - 1
  Trit shift;
};
OrbitRef orbit_of(Index x, int n);

LongCodeInstance build_4nat_instance(const LabelCoverInstance& lc);

LongCodeAssignment dictator_assignment(const LabelCoverInstance& lc, const Labeling& labeling);

struct CompletenessCertificate {
  Rational value;
  bool matches_one = false;
};

CompletenessCertificate completeness_certificate(const LabelCoverInstance& lc, const Labeling& labeling);

/// sum_e w_e * pass_probability_4nat(f_u, reorder(g_v)).
Rational per_edge_4nat_value(const LabelCoverInstance& lc, const LongCodeAssignment& tables);

/// P(j) = sum_{alpha_j != 0} |g^(alpha)|^2 / #alpha; requires a folded source.
std::vector<double> decode_spectrum(const FourierSpectrum& spec);

/// One draw: alpha with probability |g^(alpha)|^2, then a uniform nonzero
/// coordinate of alpha.
int sample_decoded_label(const FourierSpectrum& spec, std::mt19937_64& rng);
Labeling sample_labeling(const LabelCoverInstance& lc, const LongCodeAssignment& tables, std::mt19937_64& rng);

/// Exact expected Label Cover value of independent per-vertex decodings.
double expected_decoded_value(const LabelCoverInstance& lc, const LongCodeAssignment& tables);

struct GoodAlpha {
  Index alpha;
  double coefficient;  // |f^(pi3 alpha)|
  int support;         // #alpha
  bool squared_bound;  // |f^(pi3 alpha)|^2 >= 9 eps^2 / 64
  bool support_bound;  // #alpha <= log2(8 / (3 eps))
  bool nonzero_projection;
};

struct GoodAlphaSet {
  std::vector<GoodAlpha> members;
  bool consequences_hold() const;
};

/// All alpha with pi3(alpha) != 0 and |f^(pi3 alpha)| 2^-#alpha >= 3 eps / 8.
GoodAlphaSet good_alpha_filter(const FourierSpectrum& f_spec, const FourierSpectrum& g_spec, double eps,
                               const BlockMap& blocks);

/// 27 eps^3 / (512 log2(8 / (3 eps))).
double per_edge_decoding_floor(double eps);

struct DecodingCheck {
  double pass_probability = 0.0;
  bool premise = false;           // pass >= 2/3 + eps/2
  double dec = 0.0;
  double good_probability = 0.0;  // Pr_{alpha ~ g^}[GOOD_alpha]
  double pair_probability = 0.0;  // sum over GOOD of |f^(pi3 alpha)|^2 |g^(alpha)|^2
  double success = 0.0;           // exact probability the decoded labels match
  double floor = 0.0;
  // Each implication is vacuously true when the premise fails.
  bool dec_bound = false;      // Dec >= 3 eps / 4
  bool good_bound = false;     // good_probability >= 3 eps / 8
  bool pair_bound = false;     // pair_probability >= 27 eps^3 / 512
  bool success_bound = false;  // success >= floor
  bool members_ok = false;     // every GOOD alpha meets its three consequences

  bool holds() const { return dec_bound && good_bound && pair_bound && success_bound && members_ok; }
};

/// Checks the soundness chain for one edge's folded pair, given eps.
DecodingCheck edge_decoding_check(const FunctionTable& f, const FunctionTable& g_reordered, double eps,
                                  double tolerance = kIdentityTolerance);

}  // namespace tritcert
