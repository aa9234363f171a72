#pragma once

#include <memory>
#include <vector>

#include "khspace/grid.hpp"

namespace kh {

/// Certificate (C, N) for the moderateness bound k(xi+eta) <= C <xi>^N k(eta).
struct GrowthCertificate {
  double C = 1.0;
  double N = 0.0;
  double submult_constant() const { return std::pow(2.0, N / 2.0) / C; }
};

enum class WeightKind { jbpow, constant, add, mul, sup, inf, pow, reflect };

struct WeightNode {
  WeightKind kind;
  double param = 0.0;  // s for jbpow, c for constant, t for pow
  std::shared_ptr<const WeightNode> a;
  std::shared_ptr<const WeightNode> b;
};

/// A positive weight of polynomial growth as a closed expression tree, so the
/// certificate is computed compositionally and exactly.
class Weight {
 public:
  Weight() = default;

  static Weight jbracket_power(int dim, double s);
  static Weight constant(int dim, double c);

  friend Weight add(const Weight& a, const Weight& b);
  friend Weight mul(const Weight& a, const Weight& b);
  friend Weight sup_of(const Weight& a, const Weight& b);
  friend Weight inf_of(const Weight& a, const Weight& b);
  Weight pow(double t) const;
  Weight reflect() const;

  /// <.>^{-1} k, written underline-k in the gradient decomposition.
  Weight lowered() const;

  double eval(const double* xi, int dim) const;
  double eval(const std::vector<double>& xi) const;
  double eval1(double xi) const;  // dim-1 convenience

  int dim() const { return dim_; }
  GrowthCertificate certificate() const;

  const std::shared_ptr<const WeightNode>& root() const { return root_; }
  bool valid() const { return static_cast<bool>(root_); }

 private:
  Weight(int dim, std::shared_ptr<const WeightNode> r) : dim_(dim), root_(std::move(r)) {}
  int dim_ = 0;
  std::shared_ptr<const WeightNode> root_;
};

Weight add(const Weight& a, const Weight& b);
Weight mul(const Weight& a, const Weight& b);
Weight sup_of(const Weight& a, const Weight& b);
Weight inf_of(const Weight& a, const Weight& b);

struct ModerateReport {
  bool pass = true;
  double worst_ratio = 0.0;  // max of k(xi+eta) / (C <xi>^N k(eta))
  std::vector<double> worst_xi;
  std::vector<double> worst_eta;
};

ModerateReport verify_moderate(const Weight& w, const GrowthCertificate& cert,
                               const std::vector<std::pair<std::vector<double>, std::vector<double>>>& probes);

struct AlgebraCheckReport {
  double estimated_constant = 0.0;  // best C with k^2 (k^{-2} * k^{-2}) <= C^2 on the probe grid
  double refined_constant = 0.0;    // same on the extent-doubled grid
  double growth = 0.0;              // ratio of the squared sup under doubling
  std::vector<double> max_ratio_location;
  GridSpec probe;
  bool divergence = false;          // growth >= 1.10 or non-finite (heuristic)
  bool pass = false;
};

/// Checks 1/k1^2 * 1/k2^2 <= C^2/k^2 by direct summation over the probe
/// frequency box, sup over the inner half of the grid. Divergence detection:
/// the squared sup grows >= 10% when the box extent doubles (M -> 2M, same
/// spacing); flagged as a heuristic.
AlgebraCheckReport verify_product_condition(const Weight& k1, const Weight& k2, const Weight& k,
                                            const GridSpec& probe);
AlgebraCheckReport verify_algebra_condition(const Weight& w, const GridSpec& probe);

struct WlReport {
  AlgebraCheckReport ka;          // (i) k^delta in K_a
  double l2_value = 0.0;          // (ii) squared grid L2 norm of k^{-delta}
  double l2_growth = 0.0;
  bool l2_ok = false;
  double mixed_constant = 0.0;    // (iii) sup kbar^2 (k^{-2 delta} * kbar^{-2}), square-rooted
  double mixed_growth = 0.0;
  bool mixed_ok = false;
  bool delta_above_threshold = false;  // delta > (N-1)/N for kbar <= C k^delta
  bool pass = false;
};

WlReport verify_wl_condition(const Weight& w, double delta, const GridSpec& probe);

}  // namespace kh
