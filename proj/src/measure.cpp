#include "clab/measure.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>
#include <stdexcept>

#include "clab/rng.hpp"

namespace clab {

std::string MeasureModel::descriptor() const
{
    std::ostringstream os;
    os << kind << "(";
    for (std::size_t i = 0; i < params.size(); ++i) {
        if (i) os << ",";
        os << params[i];
    }
    os << ")";
    return os.str();
}

MeasureModel make_gaussian(double sigma)
{
    if (!(sigma > 0.0)) throw std::invalid_argument("make_gaussian: sigma must be positive");
    const double inv_s2 = 1.0 / (sigma * sigma);
    MeasureModel m;
    m.kind = "gaussian";
    m.params = {sigma};
    m.even = true;
    m.u = [inv_s2](Vec2 x) { return 0.5 * inv_s2 * dot(x, x); };
    m.grad_u = [inv_s2](Vec2 x) { return x * inv_s2; };
    m.hess_u = [inv_s2](Vec2) { return Sym2::diag(inv_s2, inv_s2); };
    return m;
}

MeasureModel make_quadratic(const Sym2& A)
{
    if (A.eig_min() <= 0.0) {
        std::ostringstream os;
        os << "make_quadratic: A is not positive definite (smallest eigenvalue "
           << A.eig_min() << ")";
        throw std::invalid_argument(os.str());
    }
    MeasureModel m;
    m.kind = "quadratic";
    m.params = {A.xx, A.xy, A.yy};
    m.even = true;
    m.u = [A](Vec2 x) { return 0.5 * A.quad(x); };
    m.grad_u = [A](Vec2 x) { return A.apply(x); };
    m.hess_u = [A](Vec2) { return A; };
    return m;
}

MeasureModel make_radial(const std::vector<double>& g_coeffs)
{
    if (g_coeffs.size() < 2 || !(g_coeffs[1] > 0.0))
        throw std::invalid_argument("make_radial: c_1 must be positive");
    for (double c : g_coeffs)
        if (c < 0.0) throw std::invalid_argument("make_radial: coefficients must be nonnegative");

    const std::vector<double> c = g_coeffs;
    MeasureModel m;
    m.kind = "radial";
    m.params = c;
    m.even = true;
    m.u = [c](Vec2 x) {
        const double t = 0.5 * dot(x, x);
        double g = 0.0;
        for (std::size_t i = c.size(); i-- > 0;) g = g * t + c[i];
        return g;
    };
    m.grad_u = [c](Vec2 x) {
        const double t = 0.5 * dot(x, x);
        double gp = 0.0;
        for (std::size_t i = c.size(); i-- > 1;)
            gp = gp * t + static_cast<double>(i) * c[i];
        return x * gp;
    };
    m.hess_u = [c](Vec2 x) {
        const double t = 0.5 * dot(x, x);
        double gp = 0.0, gpp = 0.0;
        for (std::size_t i = c.size(); i-- > 2;)
            gpp = gpp * t + static_cast<double>(i) * static_cast<double>(i - 1) * c[i];
        for (std::size_t i = c.size(); i-- > 1;)
            gp = gp * t + static_cast<double>(i) * c[i];
        return Sym2{gp + gpp * x.x * x.x, gpp * x.x * x.y, gp + gpp * x.y * x.y};
    };
    return m;
}

MeasureModel make_even_power(double epsilon, double p)
{
    if (!(epsilon > 0.0))
        throw std::invalid_argument("make_even_power: epsilon must be positive "
                                    "(Hessian singular on the axes otherwise)");
    if (!(p >= 2.0)) throw std::invalid_argument("make_even_power: p must be >= 2");

    MeasureModel m;
    m.kind = "evenpower";
    m.params = {epsilon, p};
    m.even = true;
    m.u = [epsilon, p](Vec2 x) {
        return 0.5 * epsilon * dot(x, x) +
               (std::pow(std::abs(x.x), p) + std::pow(std::abs(x.y), p)) / p;
    };
    m.grad_u = [epsilon, p](Vec2 x) {
        auto d = [p](double t) {
            return t == 0.0 ? 0.0 : std::copysign(std::pow(std::abs(t), p - 1.0), t);
        };
        return Vec2{epsilon * x.x + d(x.x), epsilon * x.y + d(x.y)};
    };
    m.hess_u = [epsilon, p](Vec2 x) {
        auto dd = [p](double t) { return (p - 1.0) * std::pow(std::abs(t), p - 2.0); };
        return Sym2::diag(epsilon + dd(x.x), epsilon + dd(x.y));
    };
    return m;
}

CheckReport validate_measure(const MeasureModel& m, int sample_count, std::uint64_t seed)
{
    if (sample_count < 1) throw std::invalid_argument("validate_measure: sample_count must be >= 1");

    constexpr double kRadius = 5.0;       // bodies in the test corpus stay inside radius 4
    constexpr double kDerivTol = 1e-6;    // well above the h^2 truncation floor
    constexpr double kEvenTol = 1e-12;

    std::mt19937_64 rng(seed);
    double even_defect = 0.0;
    double min_eig = std::numeric_limits<double>::infinity();
    double grad_res = 0.0;
    double hess_res = 0.0;

    for (int i = 0; i < sample_count; ++i) {
        const double r = kRadius * std::sqrt(rng_uniform01(rng));
        const double ang = 2.0 * M_PI * rng_uniform01(rng);
        const Vec2 x{r * std::cos(ang), r * std::sin(ang)};

        const double ux = m.u(x);
        if (m.even) even_defect = std::max(even_defect, std::abs(ux - m.u(-x)));

        const Sym2 H = m.hess_u(x);
        min_eig = std::min(min_eig, H.eig_min());

        const Vec2 g = m.grad_u(x);
        const double h = 1e-5 * (1.0 + norm(x));
        const Vec2 ex{h, 0.0}, ey{0.0, h};
        const Vec2 g_fd{(m.u(x + ex) - m.u(x - ex)) / (2.0 * h),
                        (m.u(x + ey) - m.u(x - ey)) / (2.0 * h)};
        grad_res = std::max(grad_res, norm(g - g_fd) / (1.0 + norm(g)));

        const Vec2 gxp = m.grad_u(x + ex), gxm = m.grad_u(x - ex);
        const Vec2 gyp = m.grad_u(x + ey), gym = m.grad_u(x - ey);
        const Sym2 H_fd{(gxp.x - gxm.x) / (2.0 * h),
                        0.5 * ((gxp.y - gxm.y) + (gyp.x - gym.x)) / (2.0 * h),
                        (gyp.y - gym.y) / (2.0 * h)};
        const Sym2 dH{H.xx - H_fd.xx, H.xy - H_fd.xy, H.yy - H_fd.yy};
        hess_res = std::max(hess_res, std::sqrt(dH.frobenius_sq()) / (1.0 + std::sqrt(H.frobenius_sq())));
    }

    CheckReport rep;
    rep.name = "measure_validation(" + m.descriptor() + ")";
    rep.lhs = even_defect;
    rep.rhs = min_eig;
    rep.margin = min_eig;
    rep.residual = std::max(grad_res, hess_res);
    rep.relative_scale = 1.0;
    rep.tolerance = kDerivTol;
    rep.identity = false;
    rep.aux = {{"evenness_defect", even_defect},
               {"min_hessian_eigenvalue", min_eig},
               {"grad_consistency", grad_res},
               {"hess_consistency", hess_res}};
    const bool ok = (!m.even || even_defect <= kEvenTol) && min_eig > 0.0 &&
                    grad_res <= kDerivTol && hess_res <= kDerivTol;
    rep.verdict = ok ? Verdict::holds : Verdict::violated;
    if (!m.even) rep.flags.push_back("measure not even: hypotheses violated");
    return rep;
}

} // namespace clab
