#pragma once

// Dense double-precision vector kernels used by the embedding arithmetic.
//
// Every kernel has a scalar reference implementation and, where the target
// supports it, an AVX2+FMA (x86-64) or NEON (aarch64) variant. The variant is
// picked once at runtime from CPU features; ALIGNKIT_SIMD=scalar|avx2|neon
// overrides the choice. Variants agree with the scalar reference to rounding
// (summation order differs), which tests/kernels_test.cpp pins down.

#include <cassert>
#include <cstddef>
#include <span>
#include <string_view>

namespace alignkit::kernels {

enum class Isa { Scalar, Avx2, Neon };

struct KernelTable {
  Isa isa;
  double (*dot)(const double* a, const double* b, std::size_t n);
  double (*squared_distance)(const double* a, const double* b, std::size_t n);
  /// y += alpha * x
  void (*axpy)(double alpha, const double* x, double* y, std::size_t n);
  /// x *= alpha
  void (*scale)(double alpha, double* x, std::size_t n);
};

bool available(Isa isa);
/// Throws std::invalid_argument when the ISA is not compiled in or not supported by this CPU.
const KernelTable& table_for(Isa isa);
const KernelTable& active();
/// Switches the process-wide variant. Intended for tests and benchmarks.
void select(Isa isa);
std::string_view isa_name(Isa isa);

inline double dot(std::span<const double> a, std::span<const double> b) {
  assert(a.size() == b.size());
  return active().dot(a.data(), b.data(), a.size());
}

inline double squared_norm(std::span<const double> a) { return dot(a, a); }

inline double squared_distance(std::span<const double> a, std::span<const double> b) {
  assert(a.size() == b.size());
  return active().squared_distance(a.data(), b.data(), a.size());
}

inline void axpy(double alpha, std::span<const double> x, std::span<double> y) {
  assert(x.size() == y.size());
  active().axpy(alpha, x.data(), y.data(), x.size());
}

inline void scale(double alpha, std::span<double> x) { active().scale(alpha, x.data(), x.size()); }

namespace detail {
extern const KernelTable kScalarTable;
#if defined(ALIGNKIT_HAVE_AVX2)
extern const KernelTable kAvx2Table;
#endif
#if defined(ALIGNKIT_HAVE_NEON)
extern const KernelTable kNeonTable;
#endif
}  // namespace detail

}  // namespace alignkit::kernels
