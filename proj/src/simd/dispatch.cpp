#include "ell/simd.hpp"

#include <atomic>
#include <cstdlib>
#include <cstring>

#include "ell/error.hpp"
#include "kernels.hpp"

namespace ell::simd {

namespace {

const KernelTable kScalar{
    Isa::Scalar,
    "scalar",
    scalar_impl::cmul,
    scalar_impl::rmul,
    scalar_impl::accumulate_abs2,
    scalar_impl::sum_abs2,
    scalar_impl::cdot,
    scalar_impl::cdot_weighted,
};

const KernelTable kAvx2{
    Isa::Avx2,
    "avx2",
    avx2_impl::cmul,
    avx2_impl::rmul,
    avx2_impl::accumulate_abs2,
    avx2_impl::sum_abs2,
    avx2_impl::cdot,
    avx2_impl::cdot_weighted,
};

bool cpu_has_avx2() {
#if defined(__x86_64__) || defined(__i386__)
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2");
#else
  return false;
#endif
}

const KernelTable* initial() {
  const char* env = std::getenv("ELL_SIMD");
  if (env && std::strcmp(env, "scalar") == 0) return &kScalar;
  if (supported(Isa::Avx2)) return &kAvx2;
  return &kScalar;
}

std::atomic<const KernelTable*>& current() {
  static std::atomic<const KernelTable*> table{initial()};
  return table;
}

}  // namespace

const KernelTable& scalar_kernels() { return kScalar; }

const KernelTable* avx2_kernels() { return supported(Isa::Avx2) ? &kAvx2 : nullptr; }

bool supported(Isa isa) {
  switch (isa) {
    case Isa::Scalar:
      return true;
    case Isa::Avx2: {
      static const bool ok = avx2_impl::compiled() && cpu_has_avx2();
      return ok;
    }
  }
  return false;
}

const KernelTable& active() { return *current().load(std::memory_order_relaxed); }

void select(Isa isa) {
  if (!supported(isa))
    throw Error(ErrorKind::InvalidArgument, std::string("SIMD ISA not supported: ") +
                                                std::string(isa_name(isa)));
  current().store(isa == Isa::Avx2 ? &kAvx2 : &kScalar, std::memory_order_relaxed);
}

std::string_view isa_name(Isa isa) { return isa == Isa::Avx2 ? "avx2" : "scalar"; }

void cmul(std::span<std::complex<double>> a, std::span<const std::complex<double>> b) {
  if (a.size() != b.size()) throw Error(ErrorKind::GridMismatch, "cmul size mismatch");
  active().cmul(detail::raw(a), detail::raw(b), a.size());
}

void rmul(std::span<std::complex<double>> a, std::span<const double> m) {
  if (a.size() != m.size()) throw Error(ErrorKind::GridMismatch, "rmul size mismatch");
  active().rmul(detail::raw(a), m.data(), a.size());
}

void accumulate_abs2(std::span<double> acc, std::span<const std::complex<double>> a, double w) {
  if (acc.size() != a.size())
    throw Error(ErrorKind::GridMismatch, "accumulate_abs2 size mismatch");
  active().accumulate_abs2(acc.data(), detail::raw(a), w, a.size());
}

double sum_abs2(std::span<const std::complex<double>> a) {
  return active().sum_abs2(detail::raw(a), a.size());
}

std::complex<double> cdot(std::span<const std::complex<double>> a,
                          std::span<const std::complex<double>> b) {
  if (a.size() != b.size()) throw Error(ErrorKind::GridMismatch, "cdot size mismatch");
  double out[2];
  active().cdot(detail::raw(a), detail::raw(b), a.size(), out);
  return {out[0], out[1]};
}

std::complex<double> cdot_weighted(std::span<const std::complex<double>> a,
                                   std::span<const std::complex<double>> b,
                                   std::span<const double> w) {
  if (a.size() != b.size() || a.size() != w.size())
    throw Error(ErrorKind::GridMismatch, "cdot_weighted size mismatch");
  double out[2];
  active().cdot_weighted(detail::raw(a), detail::raw(b), w.data(), a.size(), out);
  return {out[0], out[1]};
}

}  // namespace ell::simd
