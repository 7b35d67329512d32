// AVX2 kernel variants. This translation unit is compiled with -mavx2 -mfma;
// it must only be entered after the runtime CPU check in kernels.cpp.
#include "clab/kernels.hpp"

#if CLAB_X86_64

#include <immintrin.h>

namespace clab::kern::avx2 {

namespace {

// Lanes are combined in a fixed order so results are reproducible run to run.
inline double hadd(__m256d v)
{
    alignas(32) double lane[4];
    _mm256_store_pd(lane, v);
    return (lane[0] + lane[1]) + (lane[2] + lane[3]);
}

} // namespace

double sum(const double* x, std::size_t n)
{
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) acc = _mm256_add_pd(acc, _mm256_loadu_pd(x + i));
    double total = hadd(acc);
    for (; i < n; ++i) total += x[i];
    return total;
}

double dot(const double* x, const double* y, std::size_t n)
{
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4)
        acc = _mm256_fmadd_pd(_mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i), acc);
    double total = hadd(acc);
    for (; i < n; ++i) total += x[i] * y[i];
    return total;
}

double dot3(const double* x, const double* y, const double* z, std::size_t n)
{
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d xy = _mm256_mul_pd(_mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i));
        acc = _mm256_fmadd_pd(xy, _mm256_loadu_pd(z + i), acc);
    }
    double total = hadd(acc);
    for (; i < n; ++i) total += x[i] * y[i] * z[i];
    return total;
}

void harmonic_step(double* c, double* s, const double* rc, const double* rs,
                   int k, double a, double b,
                   double* val, double* dval, double* ddval, std::size_t n)
{
    const double kd = static_cast<double>(k);
    const double k2 = kd * kd;
    const __m256d va = _mm256_set1_pd(a);
    const __m256d vb = _mm256_set1_pd(b);
    const __m256d vka = _mm256_set1_pd(kd * a);
    const __m256d vkb = _mm256_set1_pd(kd * b);
    const __m256d vk2 = _mm256_set1_pd(k2);

    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d ci = _mm256_loadu_pd(c + i);
        const __m256d si = _mm256_loadu_pd(s + i);
        const __m256d even = _mm256_fmadd_pd(va, ci, _mm256_mul_pd(vb, si));
        _mm256_storeu_pd(val + i, _mm256_add_pd(_mm256_loadu_pd(val + i), even));
        const __m256d odd = _mm256_fmsub_pd(vkb, ci, _mm256_mul_pd(vka, si));
        _mm256_storeu_pd(dval + i, _mm256_add_pd(_mm256_loadu_pd(dval + i), odd));
        _mm256_storeu_pd(ddval + i, _mm256_fnmadd_pd(vk2, even, _mm256_loadu_pd(ddval + i)));

        const __m256d rci = _mm256_loadu_pd(rc + i);
        const __m256d rsi = _mm256_loadu_pd(rs + i);
        _mm256_storeu_pd(c + i, _mm256_fmsub_pd(ci, rci, _mm256_mul_pd(si, rsi)));
        _mm256_storeu_pd(s + i, _mm256_fmadd_pd(si, rci, _mm256_mul_pd(ci, rsi)));
    }
    for (; i < n; ++i) {
        const double ci = c[i];
        const double si = s[i];
        const double even = a * ci + b * si;
        val[i] += even;
        dval[i] += kd * (b * ci - a * si);
        ddval[i] -= k2 * even;
        c[i] = ci * rc[i] - si * rs[i];
        s[i] = si * rc[i] + ci * rs[i];
    }
}

} // namespace clab::kern::avx2

#endif // CLAB_X86_64
