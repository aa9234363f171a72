#include "khspace/weights.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace kh {

namespace {

double jbracket(const double* xi, int dim) {
  double r2 = 0.0;
  for (int a = 0; a < dim; ++a) r2 += xi[a] * xi[a];
  return std::sqrt(1.0 + r2);
}

double eval_node(const WeightNode* n, const double* xi, int dim, bool flip) {
  switch (n->kind) {
    case WeightKind::jbpow: {
      return std::pow(jbracket(xi, dim), n->param);
    }
    case WeightKind::constant:
      return n->param;
    case WeightKind::add:
      return eval_node(n->a.get(), xi, dim, flip) + eval_node(n->b.get(), xi, dim, flip);
    case WeightKind::mul:
      return eval_node(n->a.get(), xi, dim, flip) * eval_node(n->b.get(), xi, dim, flip);
    case WeightKind::sup:
      return std::max(eval_node(n->a.get(), xi, dim, flip), eval_node(n->b.get(), xi, dim, flip));
    case WeightKind::inf:
      return std::min(eval_node(n->a.get(), xi, dim, flip), eval_node(n->b.get(), xi, dim, flip));
    case WeightKind::pow:
      return std::pow(eval_node(n->a.get(), xi, dim, flip), n->param);
    case WeightKind::reflect: {
      double neg[max_dim];
      for (int a = 0; a < dim; ++a) neg[a] = -xi[a];
      return eval_node(n->a.get(), neg, dim, !flip);
    }
  }
  throw std::logic_error("unreachable weight kind");
}

GrowthCertificate cert_node(const WeightNode* n) {
  switch (n->kind) {
    case WeightKind::jbpow: {
      double s = std::abs(n->param);
      return {std::pow(2.0, s / 2.0), s};
    }
    case WeightKind::constant:
      return {1.0, 0.0};
    case WeightKind::mul: {
      auto ca = cert_node(n->a.get());
      auto cb = cert_node(n->b.get());
      return {ca.C * cb.C, ca.N + cb.N};
    }
    case WeightKind::add:
    case WeightKind::sup:
    case WeightKind::inf: {
      auto ca = cert_node(n->a.get());
      auto cb = cert_node(n->b.get());
      return {std::max(ca.C, cb.C), std::max(ca.N, cb.N)};
    }
    case WeightKind::pow: {
      auto ca = cert_node(n->a.get());
      double t = std::abs(n->param);
      return {std::pow(ca.C, t), ca.N * t};
    }
    case WeightKind::reflect:
      return cert_node(n->a.get());
  }
  throw std::logic_error("unreachable weight kind");
}

std::shared_ptr<const WeightNode> leaf(WeightKind k, double p) {
  auto n = std::make_shared<WeightNode>();
  n->kind = k;
  n->param = p;
  return n;
}

std::shared_ptr<const WeightNode> node2(WeightKind k, std::shared_ptr<const WeightNode> a,
                                        std::shared_ptr<const WeightNode> b, double p = 0.0) {
  auto n = std::make_shared<WeightNode>();
  n->kind = k;
  n->param = p;
  n->a = std::move(a);
  n->b = std::move(b);
  return n;
}

void require_same_dim(const Weight& a, const Weight& b) {
  if (a.dim() != b.dim()) throw std::invalid_argument("weight dimensions differ");
}

}  // namespace

Weight Weight::jbracket_power(int dim, double s) {
  if (dim < 1 || dim > max_dim) throw std::invalid_argument("weight dimension must be 1..4");
  if (!std::isfinite(s)) throw std::invalid_argument("jbracket exponent must be finite");
  return Weight(dim, leaf(WeightKind::jbpow, s));
}

Weight Weight::constant(int dim, double c) {
  if (dim < 1 || dim > max_dim) throw std::invalid_argument("weight dimension must be 1..4");
  if (!(c > 0.0) || !std::isfinite(c)) throw std::invalid_argument("constant weight must be positive");
  return Weight(dim, leaf(WeightKind::constant, c));
}

Weight add(const Weight& a, const Weight& b) {
  require_same_dim(a, b);
  return Weight(a.dim(), node2(WeightKind::add, a.root(), b.root()));
}

Weight mul(const Weight& a, const Weight& b) {
  require_same_dim(a, b);
  return Weight(a.dim(), node2(WeightKind::mul, a.root(), b.root()));
}

Weight sup_of(const Weight& a, const Weight& b) {
  require_same_dim(a, b);
  return Weight(a.dim(), node2(WeightKind::sup, a.root(), b.root()));
}

Weight inf_of(const Weight& a, const Weight& b) {
  require_same_dim(a, b);
  return Weight(a.dim(), node2(WeightKind::inf, a.root(), b.root()));
}

Weight Weight::pow(double t) const {
  if (!std::isfinite(t)) throw std::invalid_argument("pow exponent must be finite");
  return Weight(dim_, node2(WeightKind::pow, root_, nullptr, t));
}

Weight Weight::reflect() const { return Weight(dim_, node2(WeightKind::reflect, root_, nullptr)); }

Weight Weight::lowered() const { return mul(jbracket_power(dim_, -1.0), *this); }

double Weight::eval(const double* xi, int dim) const {
  if (!root_) throw std::logic_error("empty weight");
  if (dim != dim_) throw std::invalid_argument("weight argument dimension mismatch");
  double v = eval_node(root_.get(), xi, dim, false);
  if (!(v > 0.0) || !std::isfinite(v)) throw std::domain_error("weight evaluated non-positive or non-finite");
  return v;
}

double Weight::eval(const std::vector<double>& xi) const {
  return eval(xi.data(), static_cast<int>(xi.size()));
}

double Weight::eval1(double xi) const { return eval(&xi, 1); }

GrowthCertificate Weight::certificate() const {
  if (!root_) throw std::logic_error("empty weight");
  return cert_node(root_.get());
}

ModerateReport verify_moderate(const Weight& w, const GrowthCertificate& cert,
                               const std::vector<std::pair<std::vector<double>, std::vector<double>>>& probes) {
  ModerateReport rep;
  const int d = w.dim();
  double sum[max_dim];
  for (const auto& pr : probes) {
    const auto& xi = pr.first;
    const auto& eta = pr.second;
    if (static_cast<int>(xi.size()) != d || static_cast<int>(eta.size()) != d)
      throw std::invalid_argument("probe dimension mismatch");
    for (int a = 0; a < d; ++a) sum[a] = xi[a] + eta[a];
    double lhs = w.eval(sum, d);
    double rhs = cert.C * std::pow(jbracket(xi.data(), d), cert.N) * w.eval(eta.data(), d);
    double ratio = lhs / rhs;
    if (ratio > rep.worst_ratio) {
      rep.worst_ratio = ratio;
      rep.worst_xi = xi;
      rep.worst_eta = eta;
    }
    if (lhs > rhs) rep.pass = false;
  }
  return rep;
}

namespace {

// Direct-summation sup of w^2(xi) * sum_eta f(eta) g(xi - eta) d^n over the
// inner half of the frequency box. f, g are given as 1/k^2 style weights
// already (callers pass Pow(k,-2) trees). Differences xi - eta are true
// vectors, evaluated on an extended table (no periodization).
struct ConvSup {
  double sup_sq = 0.0;
  std::vector<double> arg;
  bool finite = true;
};

ConvSup conv_sup(const Weight& finv, const Weight& ginv, const Weight& w, double L, int M, int n) {
  const double step = two_pi / L;
  const int half = M / 2;     // eta index range [-half, half)
  const int inner = M / 4;    // xi index range [-inner, inner]
  const int ext = half + inner;

  // Per-axis table offsets: index i in [-ext, ext] stored at i + ext.
  const int tab = 2 * ext + 1;

  ConvSup out;
  out.arg.assign(static_cast<std::size_t>(n), 0.0);

  if (n == 1) {
    std::vector<double> F(static_cast<std::size_t>(M));
    std::vector<double> G(static_cast<std::size_t>(tab));
    for (int j = -half; j < half; ++j) {
      double x = step * j;
      F[static_cast<std::size_t>(j + half)] = finv.eval(&x, 1);
    }
    for (int j = -ext; j <= ext; ++j) {
      double x = step * j;
      G[static_cast<std::size_t>(j + ext)] = ginv.eval(&x, 1);
    }
    for (int s = -inner; s <= inner; ++s) {
      double acc = 0.0;
      for (int j = -half; j < half; ++j) acc += F[static_cast<std::size_t>(j + half)] * G[static_cast<std::size_t>(s - j + ext)];
      acc *= step;
      double x = step * s;
      double val = w.eval(&x, 1);
      double q = val * val * acc;
      if (!std::isfinite(q)) out.finite = false;
      if (q > out.sup_sq) {
        out.sup_sq = q;
        out.arg[0] = x;
      }
    }
  } else if (n == 2) {
    std::vector<double> F(static_cast<std::size_t>(M) * M);
    std::vector<double> G(static_cast<std::size_t>(tab) * tab);
    for (int i = -half; i < half; ++i)
      for (int j = -half; j < half; ++j) {
        double x[2] = {step * i, step * j};
        F[static_cast<std::size_t>(i + half) * M + (j + half)] = finv.eval(x, 2);
      }
    for (int i = -ext; i <= ext; ++i)
      for (int j = -ext; j <= ext; ++j) {
        double x[2] = {step * i, step * j};
        G[static_cast<std::size_t>(i + ext) * tab + (j + ext)] = ginv.eval(x, 2);
      }
    for (int s0 = -inner; s0 <= inner; ++s0)
      for (int s1 = -inner; s1 <= inner; ++s1) {
        double acc = 0.0;
        for (int i = -half; i < half; ++i) {
          const double* Fi = &F[static_cast<std::size_t>(i + half) * M];
          const double* Gi = &G[static_cast<std::size_t>(s0 - i + ext) * tab];
          for (int j = -half; j < half; ++j) acc += Fi[j + half] * Gi[s1 - j + ext];
        }
        acc *= step * step;
        double x[2] = {step * s0, step * s1};
        double val = w.eval(x, 2);
        double q = val * val * acc;
        if (!std::isfinite(q)) out.finite = false;
        if (q > out.sup_sq) {
          out.sup_sq = q;
          out.arg[0] = x[0];
          out.arg[1] = x[1];
        }
      }
  } else {
    throw std::invalid_argument("convolution condition supports n <= 2");
  }
  return out;
}

}  // namespace

AlgebraCheckReport verify_product_condition(const Weight& k1, const Weight& k2, const Weight& k,
                                            const GridSpec& probe) {
  const int n = probe.n;
  if (n > 2) throw std::invalid_argument("convolution condition supports n <= 2");
  if ((n == 1 && probe.M > 2048) || (n == 2 && probe.M > 128))
    throw std::invalid_argument("probe grid too large for direct summation");
  if (k1.dim() != n || k2.dim() != n || k.dim() != n)
    throw std::invalid_argument("weight dimension must match probe grid");

  Weight f = k1.pow(-2.0);
  Weight g = k2.pow(-2.0);

  ConvSup base = conv_sup(f, g, k, probe.L, probe.M, n);
  ConvSup refined = conv_sup(f, g, k, probe.L, 2 * probe.M, n);

  AlgebraCheckReport rep;
  rep.probe = probe;
  rep.estimated_constant = std::sqrt(base.sup_sq);
  rep.refined_constant = std::sqrt(refined.sup_sq);
  rep.growth = base.sup_sq > 0.0 ? refined.sup_sq / base.sup_sq : INFINITY;
  rep.max_ratio_location = refined.arg;
  rep.divergence = !base.finite || !refined.finite || !(rep.growth < 1.10);
  rep.pass = !rep.divergence;
  return rep;
}

AlgebraCheckReport verify_algebra_condition(const Weight& w, const GridSpec& probe) {
  return verify_product_condition(w, w, w, probe);
}

namespace {

double l2_sum_sq(const Weight& w, double L, int M, int n) {
  const double step = two_pi / L;
  const int half = M / 2;
  double acc = 0.0;
  if (n == 1) {
    for (int j = -half; j < half; ++j) {
      double x = step * j;
      double v = w.eval(&x, 1);
      acc += v * v;
    }
    acc *= step;
  } else {
    for (int i = -half; i < half; ++i)
      for (int j = -half; j < half; ++j) {
        double x[2] = {step * i, step * j};
        double v = w.eval(x, 2);
        acc += v * v;
      }
    acc *= step * step;
  }
  return acc;
}

}  // namespace

WlReport verify_wl_condition(const Weight& w, double delta, const GridSpec& probe) {
  if (!(delta > 0.0 && delta < 1.0)) throw std::invalid_argument("delta must be in (0,1)");
  WlReport rep;

  Weight kdelta = w.pow(delta);
  rep.ka = verify_algebra_condition(kdelta, probe);

  Weight kminusdelta = w.pow(-delta);
  double base = l2_sum_sq(kminusdelta, probe.L, probe.M, probe.n);
  double doubled = l2_sum_sq(kminusdelta, probe.L, 2 * probe.M, probe.n);
  rep.l2_value = doubled;
  rep.l2_growth = base > 0.0 ? doubled / base : INFINITY;
  rep.l2_ok = std::isfinite(doubled) && rep.l2_growth < 1.10;

  Weight kbar = w.lowered();
  AlgebraCheckReport mixed = verify_product_condition(kdelta, kbar, kbar, probe);
  rep.mixed_constant = mixed.refined_constant;
  rep.mixed_growth = mixed.growth;
  rep.mixed_ok = mixed.pass;

  GrowthCertificate cert = w.certificate();
  rep.delta_above_threshold = cert.N > 0.0 ? delta > (cert.N - 1.0) / cert.N : true;

  rep.pass = rep.ka.pass && rep.l2_ok && rep.mixed_ok;
  return rep;
}

}  // namespace kh
