#include "weaksig/kernels.hpp"

#include <cmath>

#if defined(__x86_64__) || defined(_M_X64)
#define WEAKSIG_X86 1
#include <immintrin.h>
#elif defined(__aarch64__) || defined(_M_ARM64)
#define WEAKSIG_NEON 1
#include <arm_neon.h>
#endif

namespace weaksig::kernels {

namespace {

// ---- scalar reference implementations ----

double dot_scalar(const double* a, const double* b, std::size_t n) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += a[i] * b[i];
    return s;
}

double sum_squares_scalar(const double* a, std::size_t n) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += a[i] * a[i];
    return s;
}

void axpy_scalar(double alpha, const double* x, double* y, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) y[i] += alpha * x[i];
}

std::uint64_t count_within_scalar(const double* a, std::size_t n, double center, double radius) {
    std::uint64_t c = 0;
    for (std::size_t i = 0; i < n; ++i) c += std::fabs(a[i] - center) < radius;
    return c;
}

std::uint64_t count_above_scalar(const double* a, std::size_t n, double threshold) {
    std::uint64_t c = 0;
    for (std::size_t i = 0; i < n; ++i) c += std::fabs(a[i]) > threshold;
    return c;
}

std::uint64_t count_joint_scalar(const double* a, std::size_t n, double select_thr,
                                 double center, double radius, std::uint64_t& selected) {
    std::uint64_t sel = 0, cov = 0;
    for (std::size_t i = 0; i < n; ++i) {
        if (std::fabs(a[i]) > select_thr) {
            ++sel;
            cov += std::fabs(a[i] - center) < radius;
        }
    }
    selected = sel;
    return cov;
}

#ifdef WEAKSIG_X86

// ---- AVX2+FMA variants ----
// Reductions keep 4 independent accumulator lanes and fold once at the end,
// so the summation order differs from the scalar loop; equivalence tests use
// a relative tolerance for the float reductions and exact equality for tallies.

__attribute__((target("avx2,fma")))
double dot_avx2(const double* a, const double* b, std::size_t n) {
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        acc = _mm256_fmadd_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i), acc);
    }
    alignas(32) double lane[4];
    _mm256_store_pd(lane, acc);
    double s = lane[0] + lane[1] + lane[2] + lane[3];
    for (; i < n; ++i) s += a[i] * b[i];
    return s;
}

__attribute__((target("avx2,fma")))
double sum_squares_avx2(const double* a, std::size_t n) {
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d v = _mm256_loadu_pd(a + i);
        acc = _mm256_fmadd_pd(v, v, acc);
    }
    alignas(32) double lane[4];
    _mm256_store_pd(lane, acc);
    double s = lane[0] + lane[1] + lane[2] + lane[3];
    for (; i < n; ++i) s += a[i] * a[i];
    return s;
}

__attribute__((target("avx2,fma")))
void axpy_avx2(double alpha, const double* x, double* y, std::size_t n) {
    const __m256d va = _mm256_set1_pd(alpha);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d vy = _mm256_loadu_pd(y + i);
        vy = _mm256_fmadd_pd(va, _mm256_loadu_pd(x + i), vy);
        _mm256_storeu_pd(y + i, vy);
    }
    for (; i < n; ++i) y[i] += alpha * x[i];
}

__attribute__((target("avx2,fma")))
std::uint64_t count_within_avx2(const double* a, std::size_t n, double center, double radius) {
    const __m256d vc = _mm256_set1_pd(center);
    const __m256d vr = _mm256_set1_pd(radius);
    const __m256d sign_mask = _mm256_set1_pd(-0.0);
    std::uint64_t c = 0;
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d d = _mm256_sub_pd(_mm256_loadu_pd(a + i), vc);
        d = _mm256_andnot_pd(sign_mask, d);
        __m256d m = _mm256_cmp_pd(d, vr, _CMP_LT_OQ);
        c += static_cast<std::uint64_t>(_mm_popcnt_u32(static_cast<unsigned>(_mm256_movemask_pd(m))));
    }
    for (; i < n; ++i) c += std::fabs(a[i] - center) < radius;
    return c;
}

__attribute__((target("avx2,fma")))
std::uint64_t count_above_avx2(const double* a, std::size_t n, double threshold) {
    const __m256d vt = _mm256_set1_pd(threshold);
    const __m256d sign_mask = _mm256_set1_pd(-0.0);
    std::uint64_t c = 0;
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d v = _mm256_andnot_pd(sign_mask, _mm256_loadu_pd(a + i));
        __m256d m = _mm256_cmp_pd(v, vt, _CMP_GT_OQ);
        c += static_cast<std::uint64_t>(_mm_popcnt_u32(static_cast<unsigned>(_mm256_movemask_pd(m))));
    }
    for (; i < n; ++i) c += std::fabs(a[i]) > threshold;
    return c;
}

__attribute__((target("avx2,fma")))
std::uint64_t count_joint_avx2(const double* a, std::size_t n, double select_thr,
                               double center, double radius, std::uint64_t& selected) {
    const __m256d vt = _mm256_set1_pd(select_thr);
    const __m256d vc = _mm256_set1_pd(center);
    const __m256d vr = _mm256_set1_pd(radius);
    const __m256d sign_mask = _mm256_set1_pd(-0.0);
    std::uint64_t sel = 0, cov = 0;
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d v = _mm256_loadu_pd(a + i);
        __m256d av = _mm256_andnot_pd(sign_mask, v);
        __m256d msel = _mm256_cmp_pd(av, vt, _CMP_GT_OQ);
        __m256d d = _mm256_andnot_pd(sign_mask, _mm256_sub_pd(v, vc));
        __m256d mcov = _mm256_and_pd(msel, _mm256_cmp_pd(d, vr, _CMP_LT_OQ));
        sel += static_cast<std::uint64_t>(_mm_popcnt_u32(static_cast<unsigned>(_mm256_movemask_pd(msel))));
        cov += static_cast<std::uint64_t>(_mm_popcnt_u32(static_cast<unsigned>(_mm256_movemask_pd(mcov))));
    }
    for (; i < n; ++i) {
        if (std::fabs(a[i]) > select_thr) {
            ++sel;
            cov += std::fabs(a[i] - center) < radius;
        }
    }
    selected = sel;
    return cov;
}

bool cpu_has_avx2() {
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
}

#endif  // WEAKSIG_X86

#ifdef WEAKSIG_NEON

double dot_neon(const double* a, const double* b, std::size_t n) {
    float64x2_t acc = vdupq_n_f64(0.0);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        acc = vfmaq_f64(acc, vld1q_f64(a + i), vld1q_f64(b + i));
    }
    double s = vaddvq_f64(acc);
    for (; i < n; ++i) s += a[i] * b[i];
    return s;
}

double sum_squares_neon(const double* a, std::size_t n) {
    float64x2_t acc = vdupq_n_f64(0.0);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        float64x2_t v = vld1q_f64(a + i);
        acc = vfmaq_f64(acc, v, v);
    }
    double s = vaddvq_f64(acc);
    for (; i < n; ++i) s += a[i] * a[i];
    return s;
}

void axpy_neon(double alpha, const double* x, double* y, std::size_t n) {
    const float64x2_t va = vdupq_n_f64(alpha);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        float64x2_t vy = vld1q_f64(y + i);
        vy = vfmaq_f64(vy, va, vld1q_f64(x + i));
        vst1q_f64(y + i, vy);
    }
    for (; i < n; ++i) y[i] += alpha * x[i];
}

std::uint64_t count_within_neon(const double* a, std::size_t n, double center, double radius) {
    const float64x2_t vc = vdupq_n_f64(center);
    const float64x2_t vr = vdupq_n_f64(radius);
    std::uint64_t c = 0;
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        float64x2_t d = vabsq_f64(vsubq_f64(vld1q_f64(a + i), vc));
        uint64x2_t m = vcltq_f64(d, vr);
        c += (vgetq_lane_u64(m, 0) & 1u) + (vgetq_lane_u64(m, 1) & 1u);
    }
    for (; i < n; ++i) c += std::fabs(a[i] - center) < radius;
    return c;
}

std::uint64_t count_above_neon(const double* a, std::size_t n, double threshold) {
    const float64x2_t vt = vdupq_n_f64(threshold);
    std::uint64_t c = 0;
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        uint64x2_t m = vcgtq_f64(vabsq_f64(vld1q_f64(a + i)), vt);
        c += (vgetq_lane_u64(m, 0) & 1u) + (vgetq_lane_u64(m, 1) & 1u);
    }
    for (; i < n; ++i) c += std::fabs(a[i]) > threshold;
    return c;
}

std::uint64_t count_joint_neon(const double* a, std::size_t n, double select_thr,
                               double center, double radius, std::uint64_t& selected) {
    const float64x2_t vt = vdupq_n_f64(select_thr);
    const float64x2_t vc = vdupq_n_f64(center);
    const float64x2_t vr = vdupq_n_f64(radius);
    std::uint64_t sel = 0, cov = 0;
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        float64x2_t v = vld1q_f64(a + i);
        uint64x2_t msel = vcgtq_f64(vabsq_f64(v), vt);
        uint64x2_t mcov = vandq_u64(msel, vcltq_f64(vabsq_f64(vsubq_f64(v, vc)), vr));
        sel += (vgetq_lane_u64(msel, 0) & 1u) + (vgetq_lane_u64(msel, 1) & 1u);
        cov += (vgetq_lane_u64(mcov, 0) & 1u) + (vgetq_lane_u64(mcov, 1) & 1u);
    }
    for (; i < n; ++i) {
        if (std::fabs(a[i]) > select_thr) {
            ++sel;
            cov += std::fabs(a[i] - center) < radius;
        }
    }
    selected = sel;
    return cov;
}

#endif  // WEAKSIG_NEON

struct Dispatch {
    Isa isa;
    double (*dot)(const double*, const double*, std::size_t);
    double (*sum_squares)(const double*, std::size_t);
    void (*axpy)(double, const double*, double*, std::size_t);
    std::uint64_t (*count_within)(const double*, std::size_t, double, double);
    std::uint64_t (*count_above)(const double*, std::size_t, double);
    std::uint64_t (*count_joint)(const double*, std::size_t, double, double, double, std::uint64_t&);
};

constexpr Dispatch kScalar{Isa::Scalar, dot_scalar,      sum_squares_scalar,
                           axpy_scalar, count_within_scalar, count_above_scalar,
                           count_joint_scalar};

Dispatch pick(Isa wanted) {
#ifdef WEAKSIG_X86
    if (wanted == Isa::Avx2 && cpu_has_avx2()) {
        return {Isa::Avx2,      dot_avx2,        sum_squares_avx2, axpy_avx2,
                count_within_avx2, count_above_avx2, count_joint_avx2};
    }
#endif
#ifdef WEAKSIG_NEON
    if (wanted == Isa::Neon) {
        return {Isa::Neon,      dot_neon,        sum_squares_neon, axpy_neon,
                count_within_neon, count_above_neon, count_joint_neon};
    }
#endif
    (void)wanted;
    return kScalar;
}

Isa best_isa() {
#ifdef WEAKSIG_X86
    if (cpu_has_avx2()) return Isa::Avx2;
#endif
#ifdef WEAKSIG_NEON
    return Isa::Neon;
#endif
    return Isa::Scalar;
}

Dispatch& table() {
    static Dispatch d = pick(best_isa());
    return d;
}

}  // namespace

Isa active_isa() { return table().isa; }

Isa force_isa(Isa isa) {
    table() = pick(isa);
    return table().isa;
}

double dot(const double* a, const double* b, std::size_t n) { return table().dot(a, b, n); }
double sum_squares(const double* a, std::size_t n) { return table().sum_squares(a, n); }
void axpy(double alpha, const double* x, double* y, std::size_t n) { table().axpy(alpha, x, y, n); }

std::uint64_t count_within(const double* a, std::size_t n, double center, double radius) {
    return table().count_within(a, n, center, radius);
}

std::uint64_t count_above(const double* a, std::size_t n, double threshold) {
    return table().count_above(a, n, threshold);
}

std::uint64_t count_joint(const double* a, std::size_t n, double select_thr,
                          double center, double radius, std::uint64_t& selected) {
    return table().count_joint(a, n, select_thr, center, radius, selected);
}

}  // namespace weaksig::kernels
