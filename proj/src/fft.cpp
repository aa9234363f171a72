#include <fftw3.h>

#include <map>
#include <mutex>
#include <vector>

#include "khspace/field.hpp"

namespace kh::detail {

namespace {

// One cached 1-d plan per (length, sign). Planned with FFTW_UNALIGNED so it
// can execute on any buffer; plan creation is serialized (FFTW requirement).
struct PlanCache {
  std::mutex mu;
  std::map<std::pair<int, int>, fftw_plan> plans;

  fftw_plan get(int len, int sign) {
    std::lock_guard<std::mutex> lock(mu);
    auto key = std::make_pair(len, sign);
    auto it = plans.find(key);
    if (it != plans.end()) return it->second;
    std::vector<cplx> scratch(static_cast<std::size_t>(len));
    fftw_plan p = fftw_plan_dft_1d(len, reinterpret_cast<fftw_complex*>(scratch.data()),
                                   reinterpret_cast<fftw_complex*>(scratch.data()), sign,
                                   FFTW_ESTIMATE | FFTW_UNALIGNED);
    plans.emplace(key, p);
    return p;
  }
};

PlanCache& cache() {
  static PlanCache c;
  return c;
}

}  // namespace

void fft_axis(cplx* data, const GridSpec& g, int axis, int sign) {
  const int M = g.M;
  fftw_plan plan = cache().get(M, sign);

  // Lines along `axis`: stride between consecutive elements, and enumeration
  // of line start offsets in the row-major layout.
  std::size_t stride = 1;
  for (int a = g.n - 1; a > axis; --a) stride *= static_cast<std::size_t>(M);
  const std::size_t total = g.size();
  const std::size_t lines = total / static_cast<std::size_t>(M);
  const std::size_t block = stride * static_cast<std::size_t>(M);

  std::vector<cplx> line(static_cast<std::size_t>(M));
  for (std::size_t l = 0; l < lines; ++l) {
    const std::size_t outer = l / stride;
    const std::size_t inner = l % stride;
    const std::size_t base = outer * block + inner;
    for (int m = 0; m < M; ++m) line[static_cast<std::size_t>(m)] = data[base + stride * m];
    fftw_execute_dft(plan, reinterpret_cast<fftw_complex*>(line.data()),
                     reinterpret_cast<fftw_complex*>(line.data()));
    for (int m = 0; m < M; ++m) data[base + stride * m] = line[static_cast<std::size_t>(m)];
  }
}

void fft_all(cplx* data, const GridSpec& g, int sign) {
  for (int a = 0; a < g.n; ++a) fft_axis(data, g, a, sign);
}

}  // namespace kh::detail
