#include "khspace/psido.hpp"

#include <fftw3.h>

#include <cmath>
#include <stdexcept>

namespace kh {

namespace {

void check_symbol_size(const GridSpec& base) {
  if (base.n > 2) throw std::invalid_argument("quantization supports n <= 2");
  std::size_t rows = base.size();
  if (rows > 4096) throw std::invalid_argument("operator matrix exceeds the 4096-row guard");
  if (rows * rows > (std::size_t{1} << 24)) throw std::invalid_argument("symbol grid too large");
}

GridSpec doubled_dim(const GridSpec& base) { return GridSpec(2 * base.n, base.L, base.M); }

}  // namespace

Symbol2n Symbol2n::sample(const GridSpec& base,
                          const std::function<cplx(const double*, const double*)>& f) {
  check_symbol_size(base);
  Symbol2n a;
  a.base = base;
  a.values.resize(base.size() * base.size());
  const std::size_t nx = base.size();
  double x[max_dim];
  double eta[max_dim];
  for (std::size_t i = 0; i < nx; ++i) {
    base.coords(i, x);
    for (std::size_t j = 0; j < nx; ++j) {
      base.freqs(j, eta);
      a.values[i * nx + j] = f(x, eta);
    }
  }
  return a;
}

double Symbol2n::spatial_tail_fraction(double inner_fraction) const {
  const std::size_t nx = base.size();
  double total = 0.0;
  double outer = 0.0;
  double x[max_dim];
  const double mid = base.L / 2.0;
  const double cutoff = inner_fraction * base.L / 2.0;
  for (std::size_t i = 0; i < nx; ++i) {
    base.coords(i, x);
    double dist = 0.0;
    for (int a = 0; a < base.n; ++a) dist = std::max(dist, std::abs(base.torus_delta(x[a], mid)));
    double m = 0.0;
    for (std::size_t j = 0; j < nx; ++j) m += std::norm(values[i * nx + j]);
    total += m;
    if (dist > cutoff) outer += m;
  }
  return total > 0.0 ? std::sqrt(outer / total) : 0.0;
}

OperatorMatrix kernel_from_symbol(const Symbol2n& a, const Quantization& q) {
  const GridSpec& base = a.base;
  check_symbol_size(base);
  const int n = base.n;
  if (q.tau.rows() != n || q.tau.cols() != n) throw std::invalid_argument("tau must be n x n");
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (!std::isfinite(q.tau(i, j))) throw std::invalid_argument("tau entries must be finite");

  const std::size_t nx = base.size();
  const GridSpec g2 = doubled_dim(base);

  // b(x, z) = (2pi)^{-n} dEta^n sum_eta e^{i z eta} a(x, eta): raw backward
  // FFT along the eta axes with the L^{-n} convention factor.
  std::vector<cplx> b = a.values;
  for (int ax = n; ax < 2 * n; ++ax) detail::fft_axis(b.data(), g2, ax, FFTW_BACKWARD);
  const double Ln = std::pow(base.L, n);
  for (auto& z : b) z /= Ln;

  // B(xi_s, z): forward transform along the spatial axes (h^n factor).
  for (int ax = 0; ax < n; ++ax) detail::fft_axis(b.data(), g2, ax, FFTW_FORWARD);
  const double hn = base.cell_volume();
  for (auto& z : b) z *= hn;

  // For each z strip (signed representative), modulate the s-spectrum by
  // e^{-i <tau z, xi_s>} and invert: g_z(x) = b(x - tau z, z).
  OperatorMatrix K(nx, nx);
  std::vector<cplx> column(nx);
  std::vector<cplx> strip(nx);
  GridSpec gs(n, base.L, base.M);
  int zx[max_dim];
  int ix[max_dim];
  int jx[max_dim];
  double tz[max_dim];
  double xi[max_dim];
  const double h = base.spacing();
  for (std::size_t zf = 0; zf < nx; ++zf) {
    base.unflatten(zf, zx);
    // physical tau * z with z the signed displacement
    for (int r = 0; r < n; ++r) {
      double acc = 0.0;
      for (int c = 0; c < n; ++c) acc += q.tau(r, c) * h * base.signed_index(zx[c]);
      tz[r] = acc;
    }
    for (std::size_t s = 0; s < nx; ++s) column[s] = b[s * nx + zf];
    for (std::size_t s = 0; s < nx; ++s) {
      gs.freqs(s, xi);
      double phase = 0.0;
      for (int r = 0; r < n; ++r) phase -= tz[r] * xi[r];
      strip[s] = column[s] * cplx{std::cos(phase), std::sin(phase)};
    }
    detail::fft_all(strip.data(), gs, FFTW_BACKWARD);
    for (auto& z : strip) z /= Ln;

    // Scatter: pairs (i, j) with (i - j) mod M == zx per axis.
    for (std::size_t i = 0; i < nx; ++i) {
      base.unflatten(i, ix);
      for (int axq = 0; axq < n; ++axq) jx[axq] = base.wrap_index(ix[axq] - static_cast<long long>(zx[axq]));
      K(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(base.flatten(jx))) = strip[i];
    }
  }
  return K;
}

OperatorMatrix op_matrix(const Symbol2n& a, const Quantization& q) {
  OperatorMatrix K = kernel_from_symbol(a, q);
  return K * a.base.cell_volume();
}

std::vector<double> singular_values(const OperatorMatrix& A) {
  Eigen::BDCSVD<OperatorMatrix> svd(A);
  if (svd.info() != Eigen::Success) throw std::runtime_error("SVD failed to converge");
  const auto& s = svd.singularValues();
  return std::vector<double>(s.data(), s.data() + s.size());
}

double schatten_norm(const std::vector<double>& sv, double p) {
  if (!(p >= 1.0)) throw std::invalid_argument("p must be in [1, inf]");
  if (std::isinf(p)) {
    double m = 0.0;
    for (double s : sv) m = std::max(m, s);
    return m;
  }
  if (p == 2.0) {
    double acc = 0.0;
    for (double s : sv) acc += s * s;
    return std::sqrt(acc);
  }
  double acc = 0.0;
  for (double s : sv) acc += std::pow(s, p);
  return std::pow(acc, 1.0 / p);
}

double schatten_norm(const OperatorMatrix& A, double p) {
  if (p == 2.0) return A.norm();  // Frobenius
  return schatten_norm(singular_values(A), p);
}

double symbol_l2_norm(const Symbol2n& a) {
  double acc = 0.0;
  for (const auto& z : a.values) acc += std::norm(z);
  const double cell = a.base.cell_volume() * a.base.freq_cell_volume();
  return std::sqrt(acc * cell);
}

double hs_identity_residual(const Symbol2n& a, const Quantization& q) {
  double s2 = op_matrix(a, q).norm();
  double ref = std::pow(two_pi, -a.base.n / 2.0) * symbol_l2_norm(a);
  if (ref == 0.0) return s2;
  return std::abs(s2 - ref) / ref;
}

double tau_path_max_step(const Symbol2n& a, const std::vector<Quantization>& path, double p) {
  if (path.size() < 2) throw std::invalid_argument("path needs at least two points");
  double worst = 0.0;
  OperatorMatrix prev = op_matrix(a, path[0]);
  for (std::size_t i = 1; i < path.size(); ++i) {
    OperatorMatrix cur = op_matrix(a, path[i]);
    worst = std::max(worst, schatten_norm(OperatorMatrix(cur - prev), p));
    prev = std::move(cur);
  }
  return worst;
}

Amplitude3 Amplitude3::sample(const GridSpec& base,
                              const std::function<cplx(double, double, double)>& f) {
  if (base.n != 1) throw std::invalid_argument("amplitude operators support n = 1");
  if (base.M > 64) throw std::invalid_argument("amplitude grid capped at M = 64");
  Amplitude3 a;
  a.base = base;
  const std::size_t M = base.size();
  a.values.resize(M * M * M);
  for (std::size_t i = 0; i < M; ++i)
    for (std::size_t j = 0; j < M; ++j)
      for (std::size_t t = 0; t < M; ++t)
        a.values[(i * M + j) * M + t] =
            f(base.coord1(static_cast<int>(i)), base.coord1(static_cast<int>(j)),
              base.freq1(static_cast<int>(t)));
  return a;
}

OperatorMatrix amplitude_op(const Amplitude3& a3) {
  const GridSpec& base = a3.base;
  const std::size_t M = base.size();
  const double h = base.spacing();
  const double dtheta = base.freq_step();
  OperatorMatrix A(M, M);
  for (std::size_t i = 0; i < M; ++i) {
    for (std::size_t j = 0; j < M; ++j) {
      const double dx = base.coord1(static_cast<int>(i)) - base.coord1(static_cast<int>(j));
      cplx acc{0.0, 0.0};
      for (std::size_t t = 0; t < M; ++t) {
        double theta = base.freq1(static_cast<int>(t));
        acc += a3.values[(i * M + j) * M + t] * cplx{std::cos(dx * theta), std::sin(dx * theta)};
      }
      A(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = acc * h * dtheta;
    }
  }
  return A;
}

namespace {

// Windowed B_k norm on the anisotropic 2n product grid: spatial axes have
// spacing h, frequency axes spacing dEta; the spectrum of a windowed piece
// lives on (freq_step along x-duals, spacing h along eta-duals).
double symbol_piece_bk_norm(const Symbol2n& a, const std::vector<double>& window,
                            const std::vector<double>& kgrid2n, const int* center,
                            std::vector<cplx>& scratch) {
  const GridSpec& base = a.base;
  const GridSpec g2 = GridSpec(2 * base.n, base.L, base.M);

  // shifted window times symbol
  int ix[max_dim];
  int jx[max_dim];
  for (std::size_t f = 0; f < a.values.size(); ++f) {
    g2.unflatten(f, ix);
    for (int axq = 0; axq < g2.n; ++axq) jx[axq] = g2.wrap_index(ix[axq] - center[axq]);
    scratch[f] = a.values[f] * window[g2.flatten(jx)];
  }
  detail::fft_all(scratch.data(), g2, FFTW_FORWARD);
  const double cell = base.cell_volume() * base.freq_cell_volume();
  double acc = 0.0;
  for (std::size_t f = 0; f < scratch.size(); ++f) {
    double t = kgrid2n[f];
    acc += t * t * std::norm(scratch[f]) ;
  }
  // quadrature factor cell^2 from the forward transform, times the dual cell
  // volume (2pi)^{2n} / (L^n * (M dEta)^n) of the 2n spectrum
  const double dual_cell = std::pow(base.freq_step(), base.n) * std::pow(base.spacing(), base.n);
  return std::sqrt(acc * cell * cell * dual_cell);
}

}  // namespace

double symbol_amalgam_norm(const Symbol2n& a, const Weight& k2n, double p, const SymbolWindow& win,
                           int x_step_samples, int eta_step_samples) {
  const GridSpec& base = a.base;
  const int n = base.n;
  if (k2n.dim() != 2 * n) throw std::invalid_argument("weight must have dimension 2n");
  if (x_step_samples < 1 || eta_step_samples < 1 || base.M % x_step_samples != 0 ||
      base.M % eta_step_samples != 0)
    throw std::invalid_argument("lattice steps must divide M");

  const GridSpec g2 = GridSpec(2 * n, base.L, base.M);
  const double h = base.spacing();
  const double deta = base.freq_step();

  // Product bump window: radius win.x_radius in space, win.eta_radius in
  // frequency, both measured in physical units on the product torus.
  std::vector<double> window(g2.size());
  {
    int ix[max_dim];
    const double mid = base.L / 2.0;
    const double eta_period = base.M * deta;
    for (std::size_t f = 0; f < window.size(); ++f) {
      g2.unflatten(f, ix);
      double r2 = 0.0;
      for (int axq = 0; axq < n; ++axq) {
        double d = base.torus_delta(h * ix[axq], mid) / win.x_radius;
        r2 += d * d;
      }
      for (int axq = n; axq < 2 * n; ++axq) {
        double ev = deta * base.signed_index(ix[axq]);
        double d = std::fmod(ev, eta_period) / win.eta_radius;
        r2 += d * d;
      }
      window[f] = r2 < 1.0 ? std::exp(-1.0 / (1.0 - r2)) : 0.0;
    }
  }

  // Weight on the dual lattice of the product grid.
  std::vector<double> kgrid(g2.size());
  {
    int ix[max_dim];
    double arg[max_dim];
    for (std::size_t f = 0; f < kgrid.size(); ++f) {
      g2.unflatten(f, ix);
      for (int axq = 0; axq < n; ++axq) arg[axq] = base.freq1(ix[axq]);
      for (int axq = n; axq < 2 * n; ++axq) arg[axq] = h * base.signed_index(ix[axq]);
      kgrid[f] = k2n.eval(arg, 2 * n);
    }
  }

  std::vector<cplx> scratch(a.values.size());
  std::vector<double> norms;
  int center[max_dim] = {0, 0, 0, 0};
  std::vector<int> steps(static_cast<std::size_t>(2 * n));
  for (int axq = 0; axq < n; ++axq) steps[static_cast<std::size_t>(axq)] = x_step_samples;
  for (int axq = n; axq < 2 * n; ++axq) steps[static_cast<std::size_t>(axq)] = eta_step_samples;

  std::vector<int> pos(static_cast<std::size_t>(2 * n), 0);
  while (true) {
    for (int axq = 0; axq < 2 * n; ++axq) center[axq] = pos[static_cast<std::size_t>(axq)];
    norms.push_back(symbol_piece_bk_norm(a, window, kgrid, center, scratch));
    int axq = 2 * n - 1;
    while (axq >= 0) {
      pos[static_cast<std::size_t>(axq)] += steps[static_cast<std::size_t>(axq)];
      if (pos[static_cast<std::size_t>(axq)] < base.M) break;
      pos[static_cast<std::size_t>(axq)] = 0;
      --axq;
    }
    if (axq < 0) break;
  }

  if (std::isinf(p)) {
    double m = 0.0;
    for (double v : norms) m = std::max(m, v);
    return m;
  }
  double acc = 0.0;
  for (double v : norms) acc += std::pow(v, p);
  return std::pow(acc, 1.0 / p);
}

SchattenReport schatten_report(const Symbol2n& a, const Quantization& q, const Weight& k2n,
                               const std::vector<double>& p_list, const SymbolWindow& win,
                               int x_step_samples, int eta_step_samples) {
  SchattenReport rep;
  rep.p_list = p_list;
  OperatorMatrix A = op_matrix(a, q);
  rep.singular_values = singular_values(A);
  for (double p : p_list) {
    rep.schatten.push_back(schatten_norm(rep.singular_values, p));
    double sn = symbol_amalgam_norm(a, k2n, p, win, x_step_samples, eta_step_samples);
    rep.symbol_norm.push_back(sn);
    double expo = std::abs(1.0 - (std::isinf(p) ? 0.0 : 2.0 / p));
    double sharp = symbol_amalgam_norm(a, k2n.pow(expo), p, win, x_step_samples, eta_step_samples);
    rep.sharpened_norm.push_back(sharp);
    rep.ratio.push_back(sn > 0.0 ? rep.schatten.back() / sn : 0.0);
    rep.sharpened_ratio.push_back(sharp > 0.0 ? rep.schatten.back() / sharp : 0.0);
  }
  return rep;
}

}  // namespace kh
