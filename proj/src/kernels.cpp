#include "clab/kernels.hpp"

namespace clab::kern {

namespace scalar {

double sum(const double* x, std::size_t n)
{
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) acc += x[i];
    return acc;
}

double dot(const double* x, const double* y, std::size_t n)
{
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) acc += x[i] * y[i];
    return acc;
}

double dot3(const double* x, const double* y, const double* z, std::size_t n)
{
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) acc += x[i] * y[i] * z[i];
    return acc;
}

void harmonic_step(double* c, double* s, const double* rc, const double* rs,
                   int k, double a, double b,
                   double* val, double* dval, double* ddval, std::size_t n)
{
    const double kd = static_cast<double>(k);
    const double k2 = kd * kd;
    for (std::size_t i = 0; i < n; ++i) {
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

} // namespace scalar

#if CLAB_X86_64
static bool detect_avx2()
{
#if defined(__GNUC__) || defined(__clang__)
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
    return false;
#endif
}
#endif

bool avx2_active()
{
#if CLAB_X86_64
    static const bool active = detect_avx2();
    return active;
#else
    return false;
#endif
}

const char* backend_name()
{
    return avx2_active() ? "avx2" : "scalar";
}

double sum(const double* x, std::size_t n)
{
#if CLAB_X86_64
    if (avx2_active()) return avx2::sum(x, n);
#endif
    return scalar::sum(x, n);
}

double dot(const double* x, const double* y, std::size_t n)
{
#if CLAB_X86_64
    if (avx2_active()) return avx2::dot(x, y, n);
#endif
    return scalar::dot(x, y, n);
}

double dot3(const double* x, const double* y, const double* z, std::size_t n)
{
#if CLAB_X86_64
    if (avx2_active()) return avx2::dot3(x, y, z, n);
#endif
    return scalar::dot3(x, y, z, n);
}

void harmonic_step(double* c, double* s, const double* rc, const double* rs,
                   int k, double a, double b,
                   double* val, double* dval, double* ddval, std::size_t n)
{
#if CLAB_X86_64
    if (avx2_active()) {
        avx2::harmonic_step(c, s, rc, rs, k, a, b, val, dval, ddval, n);
        return;
    }
#endif
    scalar::harmonic_step(c, s, rc, rs, k, a, b, val, dval, ddval, n);
}

} // namespace clab::kern
