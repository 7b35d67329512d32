#include "clab/quad.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>

#include "clab/kernels.hpp"

namespace clab {

void validate(const QuadratureSpec& spec)
{
    if (spec.M < 16 || spec.M % 2 != 0)
        throw std::invalid_argument("QuadratureSpec: M must be even and >= 16");
    if (spec.S < 16) throw std::invalid_argument("QuadratureSpec: S must be >= 16");
}

namespace {

GaussLegendre compute_gauss_legendre(int S)
{
    // Nodes of P_S by Newton from the Chebyshev estimate, then mapped to [0,1].
    GaussLegendre g;
    g.nodes.resize(S);
    g.weights.resize(S);
    for (int i = 0; i < S; ++i) {
        double x = std::cos(M_PI * (i + 0.75) / (S + 0.5));
        double dp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= S; ++k) {
                const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = S * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        g.nodes[S - 1 - i] = 0.5 * (x + 1.0);
        g.weights[S - 1 - i] = 1.0 / ((1.0 - x * x) * dp * dp);
    }
    return g;
}

} // namespace

const GaussLegendre& gauss_legendre(int S)
{
    static std::mutex mtx;
    static std::map<int, GaussLegendre> cache;
    std::lock_guard<std::mutex> lock(mtx);
    auto it = cache.find(S);
    if (it == cache.end()) it = cache.emplace(S, compute_gauss_legendre(S)).first;
    return it->second;
}

namespace {

template <typename Weight>
double interior_chart(const Body2D& K, const std::function<double(Vec2)>& f,
                      const QuadratureSpec& spec, Weight&& weight)
{
    validate(spec);
    const int M = spec.M;
    if (M < std::max(8, 4 * K.max_order()))
        throw std::invalid_argument("interior_integral: M too small for the body's harmonic order");

    std::vector<double> h(M), hp(M), hpp(M);
    K.support_series().eval_grid(M, h, hp, hpp);

    std::vector<double> bx1(M), bx2(M), hr(M);
    for (int j = 0; j < M; ++j) {
        const double r = h[j] + hpp[j];
        const double th = 2.0 * M_PI * j / M;
        const double c = std::cos(th), s = std::sin(th);
        bx1[j] = h[j] * c - hp[j] * s;
        bx2[j] = h[j] * s + hp[j] * c;
        hr[j] = h[j] * r;
    }

    const GaussLegendre& gl = gauss_legendre(spec.S);
    const double dtheta = 2.0 * M_PI / M;
    std::vector<double> ring(M);
    double total = 0.0;
    for (int i = 0; i < spec.S; ++i) {
        const double s = gl.nodes[i];
        for (int j = 0; j < M; ++j) {
            const Vec2 y{s * bx1[j], s * bx2[j]};
            ring[j] = f(y) * weight(y) * hr[j];
        }
        total += gl.weights[i] * s * kern::sum(ring.data(), ring.size());
    }
    return total * dtheta;
}

} // namespace

double interior_integral(const MeasureModel& m, const Body2D& K,
                         const std::function<double(Vec2)>& f, const QuadratureSpec& spec)
{
    return interior_chart(K, f, spec, [&m](Vec2 y) { return std::exp(-m.u(y)); });
}

double interior_integral_lebesgue(const Body2D& K, const std::function<double(Vec2)>& f,
                                  const QuadratureSpec& spec)
{
    return interior_chart(K, f, spec, [](Vec2) { return 1.0; });
}

double boundary_integral(const BoundaryFrame& f, std::span<const double> g)
{
    if (g.size() != f.w.size())
        throw std::invalid_argument("boundary_integral: nodal data size mismatch");
    return kern::dot(g.data(), f.w.data(), g.size());
}

double boundary_integral(const BoundaryFrame& f,
                         const std::function<double(std::size_t, const BoundaryFrame&)>& g)
{
    std::vector<double> vals(f.w.size());
    for (std::size_t j = 0; j < vals.size(); ++j) vals[j] = g(j, f);
    return boundary_integral(f, vals);
}

MomentSet moments(const MeasureModel& m, const Body2D& K, const QuadratureSpec& spec)
{
    MomentSet ms;
    ms.mu_K = interior_integral(m, K, [](Vec2) { return 1.0; }, spec);
    ms.m1 = interior_integral(m, K, [&m](Vec2 x) { return dot(m.grad_u(x), x); }, spec);
    ms.m2 = interior_integral(m, K, [&m](Vec2 x) {
        const double t = dot(m.grad_u(x), x);
        return t * t;
    }, spec);
    ms.q = interior_integral(m, K, [&m](Vec2 x) { return m.hess_u(x).quad(x); }, spec);

    const BoundaryFrame f = boundary_frame(K, m, spec.M);
    ms.bh = boundary_integral(f, std::span<const double>(f.h));
    ms.bp = f.weighted_perimeter;
    return ms;
}

} // namespace clab
