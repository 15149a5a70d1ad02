#include "ell/fft.hpp"

#include <fftw3.h>

#include <cstring>
#include <map>
#include <mutex>
#include <tuple>

namespace ell::fft {

namespace {

// Plans are made with FFTW_ESTIMATE so that the algorithm (and therefore the
// rounding) never depends on timing measurements.
class PlanCache {
public:
  fftw_plan get(const GridSpec& g, int sign) {
    std::lock_guard<std::mutex> lock(mu_);
    const auto key = std::make_tuple(g.dim(), g.n(), sign);
    auto it = plans_.find(key);
    if (it != plans_.end()) return it->second;
    int dims[3] = {g.n(), g.n(), g.n()};
    auto* a = fftw_alloc_complex(g.size());
    auto* b = fftw_alloc_complex(g.size());
    fftw_plan p = fftw_plan_dft(g.dim(), dims, a, b, sign, FFTW_ESTIMATE);
    fftw_free(a);
    fftw_free(b);
    plans_.emplace(key, p);
    return p;
  }

private:
  std::mutex mu_;
  std::map<std::tuple<int, int, int>, fftw_plan> plans_;
};

PlanCache& cache() {
  static PlanCache c;
  return c;
}

void run(const GridSpec& g, int sign, const cplx* in, cplx* out) {
  fftw_plan p = cache().get(g, sign);
  // Plans are out-of-place; aliasing callers get a scratch copy.
  AlignedVector<cplx> scratch;
  const cplx* src = in;
  if (in == out) {
    scratch.assign(in, in + g.size());
    src = scratch.data();
  }
  fftw_execute_dft(p, reinterpret_cast<fftw_complex*>(const_cast<cplx*>(src)),
                   reinterpret_cast<fftw_complex*>(out));
}

}  // namespace

void forward(const GridSpec& g, const cplx* in, cplx* out) {
  run(g, FFTW_FORWARD, in, out);
  const double s = 1.0 / double(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) out[i] *= s;
}

void backward(const GridSpec& g, const cplx* in, cplx* out) { run(g, FFTW_BACKWARD, in, out); }

}  // namespace ell::fft
