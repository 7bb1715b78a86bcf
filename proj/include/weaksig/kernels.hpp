#pragma once

#include <cstddef>
#include <cstdint>

// Hot-loop primitives used by the Monte Carlo harness and the oracle runs.
// Each kernel has a scalar reference implementation and, where the build
// target supports it, a SIMD variant (AVX2+FMA on x86-64, NEON on aarch64)
// selected once at startup by runtime CPU detection. All variants are
// equivalence-tested against the scalar reference.
namespace weaksig::kernels {

enum class Isa { Scalar, Avx2, Neon };

// The instruction set the dispatcher picked for this process.
Isa active_isa();

// Force a specific ISA (used by the equivalence tests). Requesting an ISA
// the CPU lacks falls back to Scalar and returns the ISA actually set.
Isa force_isa(Isa isa);

double dot(const double* a, const double* b, std::size_t n);
double sum_squares(const double* a, std::size_t n);
void axpy(double alpha, const double* x, double* y, std::size_t n);

// Counts entries with |a[i] - center| < radius. Tally loop of the interval
// coverage oracles.
std::uint64_t count_within(const double* a, std::size_t n, double center, double radius);

// Counts entries with |a[i]| > threshold. Tally loop of the selection and
// false-positive-rate oracles.
std::uint64_t count_above(const double* a, std::size_t n, double threshold);

// Joint tally for conditional coverage: among entries with |a[i]| > select_thr,
// counts how many satisfy |a[i] - center| < radius. Returns selected count via
// out-parameter.
std::uint64_t count_joint(const double* a, std::size_t n, double select_thr,
                          double center, double radius, std::uint64_t& selected);

}  // namespace weaksig::kernels
