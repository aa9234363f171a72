#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace kh {

inline constexpr double pi = 3.14159265358979323846;
inline constexpr double two_pi = 2.0 * pi;

using cplx = std::complex<double>;

enum class Domain { space, frequency };

inline constexpr int max_dim = 4;

/// Uniform periodic grid: period L per axis, M samples per axis.
/// Sample points x = h*m, m in {0..M-1}; frequency lattice (2pi/L)*j for
/// j in {-M/2,..,M/2-1}. Storage is row-major with raw bin index i per axis,
/// where i >= M/2 represents the negative frequency i-M.
struct GridSpec {
  int n = 1;
  double L = two_pi;
  int M = 16;

  GridSpec() = default;
  GridSpec(int n_, double L_, int M_) : n(n_), L(L_), M(M_) {
    if (n < 1 || n > max_dim) throw std::invalid_argument("GridSpec: dimension must be 1..4");
    if (!(L > 0.0) || !std::isfinite(L)) throw std::invalid_argument("GridSpec: period must be positive");
    if (M < 16 || (M & (M - 1)) != 0) throw std::invalid_argument("GridSpec: M must be a power of two >= 16");
  }

  double spacing() const { return L / M; }          // h
  double freq_step() const { return two_pi / L; }   // delta xi
  double cell_volume() const { return std::pow(spacing(), n); }
  double freq_cell_volume() const { return std::pow(freq_step(), n); }

  std::size_t size() const {
    std::size_t s = 1;
    for (int a = 0; a < n; ++a) s *= static_cast<std::size_t>(M);
    return s;
  }

  int signed_index(int i) const { return i < M / 2 ? i : i - M; }
  int wrap_index(long long i) const {
    long long r = i % M;
    return static_cast<int>(r < 0 ? r + M : r);
  }

  double coord1(int i) const { return spacing() * i; }
  double freq1(int i) const { return freq_step() * signed_index(i); }

  void unflatten(std::size_t idx, int* out) const {
    for (int a = n - 1; a >= 0; --a) {
      out[a] = static_cast<int>(idx % M);
      idx /= M;
    }
  }
  std::size_t flatten(const int* ix) const {
    std::size_t idx = 0;
    for (int a = 0; a < n; ++a) idx = idx * M + static_cast<std::size_t>(wrap_index(ix[a]));
    return idx;
  }

  void coords(std::size_t idx, double* out) const {
    int ix[max_dim];
    unflatten(idx, ix);
    for (int a = 0; a < n; ++a) out[a] = coord1(ix[a]);
  }
  void freqs(std::size_t idx, double* out) const {
    int ix[max_dim];
    unflatten(idx, ix);
    for (int a = 0; a < n; ++a) out[a] = freq1(ix[a]);
  }

  /// Torus displacement x - c reduced to [-L/2, L/2) per axis.
  double torus_delta(double x, double c) const {
    double d = std::fmod(x - c, L);
    if (d < -L / 2) d += L;
    if (d >= L / 2) d -= L;
    return d;
  }

  bool operator==(const GridSpec&) const = default;
};

}  // namespace kh
