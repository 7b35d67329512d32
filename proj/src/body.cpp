#include "clab/body.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <sstream>
#include <stdexcept>

#include "clab/kernels.hpp"

namespace clab {

int TrigSeries::max_order() const
{
    return harmonics.empty() ? 0 : harmonics.back().k;
}

double TrigSeries::eval(double theta) const
{
    double v = a0;
    for (const auto& h : harmonics)
        v += h.a * std::cos(h.k * theta) + h.b * std::sin(h.k * theta);
    return v;
}

double TrigSeries::eval_d(double theta) const
{
    double v = 0.0;
    for (const auto& h : harmonics)
        v += h.k * (h.b * std::cos(h.k * theta) - h.a * std::sin(h.k * theta));
    return v;
}

double TrigSeries::eval_dd(double theta) const
{
    double v = 0.0;
    for (const auto& h : harmonics)
        v -= double(h.k) * h.k * (h.a * std::cos(h.k * theta) + h.b * std::sin(h.k * theta));
    return v;
}

void TrigSeries::eval_grid(int M, std::span<double> val, std::span<double> dval,
                           std::span<double> ddval) const
{
    if (M < 1) throw std::invalid_argument("TrigSeries::eval_grid: M must be >= 1");
    const std::size_t n = static_cast<std::size_t>(M);
    if (val.size() != n || dval.size() != n || ddval.size() != n)
        throw std::invalid_argument("TrigSeries::eval_grid: span size mismatch");

    std::fill(val.begin(), val.end(), a0);
    std::fill(dval.begin(), dval.end(), 0.0);
    std::fill(ddval.begin(), ddval.end(), 0.0);
    if (harmonics.empty()) return;

    // Per-node rotation recurrence over the harmonic order; the base angle
    // tables double as the k = 1 state.
    std::vector<double> rc(n), rs(n), c(n), s(n);
    for (std::size_t j = 0; j < n; ++j) {
        const double th = 2.0 * M_PI * double(j) / double(M);
        rc[j] = std::cos(th);
        rs[j] = std::sin(th);
        c[j] = rc[j];
        s[j] = rs[j];
    }

    int k = 1;
    for (const auto& h : harmonics) {
        while (k < h.k) {
            kern::harmonic_step(c.data(), s.data(), rc.data(), rs.data(), k, 0.0, 0.0,
                                val.data(), dval.data(), ddval.data(), n);
            ++k;
        }
        kern::harmonic_step(c.data(), s.data(), rc.data(), rs.data(), k, h.a, h.b,
                            val.data(), dval.data(), ddval.data(), n);
        ++k;
    }
}

TrigSeries TrigSeries::scaled(double sfac) const
{
    TrigSeries out;
    out.a0 = sfac * a0;
    out.harmonics.reserve(harmonics.size());
    for (const auto& h : harmonics) out.harmonics.push_back({h.k, sfac * h.a, sfac * h.b});
    return out;
}

TrigSeries TrigSeries::combine(const TrigSeries& A, double ca, const TrigSeries& B, double cb)
{
    std::map<int, Harmonic> merged;
    for (const auto& h : A.harmonics) {
        auto& e = merged[h.k];
        e.k = h.k;
        e.a += ca * h.a;
        e.b += ca * h.b;
    }
    for (const auto& h : B.harmonics) {
        auto& e = merged[h.k];
        e.k = h.k;
        e.a += cb * h.a;
        e.b += cb * h.b;
    }
    TrigSeries out;
    out.a0 = ca * A.a0 + cb * B.a0;
    for (auto& [k, h] : merged) out.harmonics.push_back(h);
    return out;
}

namespace {

void normalize_harmonics(std::vector<Harmonic>& hs)
{
    std::map<int, Harmonic> merged;
    for (const auto& h : hs) {
        if (h.k < 1) throw std::invalid_argument("harmonic order must be >= 1");
        auto& e = merged[h.k];
        e.k = h.k;
        e.a += h.a;
        e.b += h.b;
    }
    hs.clear();
    for (auto& [k, h] : merged)
        if (h.a != 0.0 || h.b != 0.0) hs.push_back(h);
}

} // namespace

Body2D Body2D::validated(TrigSeries h, bool symmetric)
{
    normalize_harmonics(h.harmonics);

    if (symmetric) {
        for (const auto& hh : h.harmonics)
            if (hh.k % 2 == 1) {
                std::ostringstream os;
                os << "body marked symmetric has nonzero odd harmonic k=" << hh.k;
                throw std::invalid_argument(os.str());
            }
    }

    // 4x oversampling relative to the top harmonic order.
    const int Mv = std::max(256, 4 * h.max_order());
    std::vector<double> val(Mv), dval(Mv), ddval(Mv);
    h.eval_grid(Mv, val, dval, ddval);

    double min_r = std::numeric_limits<double>::infinity();
    int arg_r = 0;
    double min_h = std::numeric_limits<double>::infinity();
    for (int j = 0; j < Mv; ++j) {
        const double r = val[j] + ddval[j];
        if (r < min_r) {
            min_r = r;
            arg_r = j;
        }
        min_h = std::min(min_h, val[j]);
    }
    if (!(min_r > 0.0)) {
        std::ostringstream os;
        os << "body is not of class C2+: curvature radius " << min_r
           << " at theta = " << 2.0 * M_PI * arg_r / Mv;
        throw std::invalid_argument(os.str());
    }
    if (!(min_h > 0.0))
        throw std::invalid_argument("support function is not positive: origin not interior");

    Body2D K;
    K.h_ = std::move(h);
    K.symmetric_ = symmetric;
    K.min_r_ = min_r;
    return K;
}

std::string Body2D::descriptor() const
{
    std::ostringstream os;
    os << "body(a0=" << h_.a0;
    for (const auto& h : h_.harmonics) os << ",k" << h.k << "=(" << h.a << "," << h.b << ")";
    os << (symmetric_ ? ",symmetric" : ",asymmetric") << ")";
    return os.str();
}

Body2D make_disk(double R)
{
    if (!(R > 0.0)) throw std::invalid_argument("make_disk: R must be positive");
    TrigSeries h;
    h.a0 = R;
    return Body2D::validated(std::move(h), true);
}

Body2D make_ellipse(double a, double b, int fourier_degree, double* projection_error)
{
    if (!(a > 0.0) || !(b > 0.0)) throw std::invalid_argument("make_ellipse: axes must be positive");
    if (fourier_degree < 8) throw std::invalid_argument("make_ellipse: degree must be >= 8");

    // Plain trapezoid projection; spectrally accurate for this analytic h.
    const int Mp = std::max(8192, 16 * fourier_degree);
    std::vector<double> hex(Mp), cth(Mp), sth(Mp);
    for (int j = 0; j < Mp; ++j) {
        const double th = 2.0 * M_PI * j / Mp;
        cth[j] = std::cos(th);
        sth[j] = std::sin(th);
        hex[j] = std::sqrt(a * a * cth[j] * cth[j] + b * b * sth[j] * sth[j]);
    }

    TrigSeries h;
    h.a0 = kern::sum(hex.data(), hex.size()) / Mp;
    for (int k = 2; k <= fourier_degree; k += 2) {
        std::vector<double> ck(Mp);
        for (int j = 0; j < Mp; ++j) ck[j] = std::cos(double(k) * 2.0 * M_PI * j / Mp);
        const double ak = 2.0 * kern::dot(hex.data(), ck.data(), Mp) / Mp;
        h.harmonics.push_back({k, ak, 0.0});
    }

    std::vector<double> val(Mp), dval(Mp), ddval(Mp);
    h.eval_grid(Mp, val, dval, ddval);
    double err = 0.0;
    for (int j = 0; j < Mp; ++j) err = std::max(err, std::abs(val[j] - hex[j]));
    if (projection_error) *projection_error = err;

    return Body2D::validated(std::move(h), true);
}

Body2D make_fourier(double a0, std::vector<Harmonic> harmonics, bool symmetric)
{
    TrigSeries h;
    h.a0 = a0;
    h.harmonics = std::move(harmonics);
    return Body2D::validated(std::move(h), symmetric);
}

Body2D minkowski_mix(const Body2D& K, const Body2D& L, double t)
{
    if (!(t >= 0.0 && t <= 1.0)) throw std::invalid_argument("minkowski_mix: t must be in [0,1]");
    TrigSeries h = TrigSeries::combine(K.support_series(), 1.0 - t, L.support_series(), t);
    return Body2D::validated(std::move(h), K.symmetric() && L.symmetric());
}

Body2D dilate(const Body2D& K, double s)
{
    if (!(s > 0.0)) throw std::invalid_argument("dilate: scale must be positive");
    return Body2D::validated(K.support_series().scaled(s), K.symmetric());
}

BoundaryFrame boundary_frame(const Body2D& K, const MeasureModel& m, int M)
{
    const int min_M = std::max(8, 4 * K.max_order());
    if (M < min_M || M % 2 != 0) {
        std::ostringstream os;
        os << "boundary_frame: M=" << M << " must be even and >= " << min_M
           << " for harmonic order " << K.max_order();
        throw std::invalid_argument(os.str());
    }

    BoundaryFrame f;
    f.M = M;
    f.dtheta = 2.0 * M_PI / M;
    f.theta.resize(M);
    f.h.resize(M);
    f.hp.resize(M);
    f.hpp.resize(M);
    f.r.resize(M);
    f.x1.resize(M);
    f.x2.resize(M);
    f.nu1.resize(M);
    f.nu2.resize(M);
    f.u_val.resize(M);
    f.e_u.resize(M);
    f.gu_nu.resize(M);
    f.gu_tau.resize(M);
    f.gu_x.resize(M);
    f.Hmu.resize(M);
    f.w.resize(M);

    K.support_series().eval_grid(M, f.h, f.hp, f.hpp);

    for (int j = 0; j < M; ++j) {
        f.theta[j] = f.dtheta * j;
        f.r[j] = f.h[j] + f.hpp[j];
        if (!(f.r[j] > 0.0)) {
            std::ostringstream os;
            os << "boundary_frame: curvature radius " << f.r[j] << " at node " << j;
            throw std::runtime_error(os.str());
        }
        f.nu1[j] = std::cos(f.theta[j]);
        f.nu2[j] = std::sin(f.theta[j]);
        const double t1 = -f.nu2[j], t2 = f.nu1[j];
        f.x1[j] = f.h[j] * f.nu1[j] + f.hp[j] * t1;
        f.x2[j] = f.h[j] * f.nu2[j] + f.hp[j] * t2;

        const Vec2 x{f.x1[j], f.x2[j]};
        f.u_val[j] = m.u(x);
        f.e_u[j] = std::exp(-f.u_val[j]);
        const Vec2 g = m.grad_u(x);
        f.gu_nu[j] = g.x * f.nu1[j] + g.y * f.nu2[j];
        f.gu_tau[j] = g.x * t1 + g.y * t2;
        f.gu_x[j] = g.x * x.x + g.y * x.y;
        f.Hmu[j] = 1.0 / f.r[j] - f.gu_nu[j];
        f.w[j] = f.e_u[j] * f.r[j] * f.dtheta;
    }
    f.weighted_perimeter = kern::sum(f.w.data(), f.w.size());
    return f;
}

} // namespace clab
