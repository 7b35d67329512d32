#include "clab/verify.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "clab/kernels.hpp"

namespace clab {

const std::vector<TestFunction>& test_function_catalog()
{
    static const std::vector<TestFunction> catalog = [] {
        std::vector<TestFunction> v;
        v.push_back({"psi1", true,
                     [](Vec2 x) { return 0.5 * dot(x, x); },
                     [](Vec2 x) { return x; },
                     [](Vec2) { return Sym2::identity(); }});
        v.push_back({"psi2", true,
                     [](Vec2 x) { return 0.5 * (x.x * x.x + 3.0 * x.y * x.y); },
                     [](Vec2 x) { return Vec2{x.x, 3.0 * x.y}; },
                     [](Vec2) { return Sym2::diag(1.0, 3.0); }});
        v.push_back({"psi3", true,
                     [](Vec2 x) { const double t = dot(x, x); return 0.25 * t * t; },
                     [](Vec2 x) { return dot(x, x) * x; },
                     [](Vec2 x) {
                         const double t = dot(x, x);
                         return Sym2{t + 2.0 * x.x * x.x, 2.0 * x.x * x.y, t + 2.0 * x.y * x.y};
                     }});
        v.push_back({"psi4", true,
                     [](Vec2 x) { return x.x * x.x * x.x * x.x / 12.0 + 0.5 * x.y * x.y; },
                     [](Vec2 x) { return Vec2{x.x * x.x * x.x / 3.0, x.y}; },
                     [](Vec2 x) { return Sym2::diag(x.x * x.x, 1.0); }});
        return v;
    }();
    return catalog;
}

double laplacian_mu(const MeasureModel& m, const TestFunction& psi, Vec2 x)
{
    return psi.hess(x).trace() - dot(m.grad_u(x), psi.grad(x));
}

namespace {

std::vector<std::string> hypothesis_flags(const MeasureModel& m, const Body2D& K)
{
    std::vector<std::string> flags;
    if (!K.symmetric()) flags.push_back("body not origin-symmetric: hypotheses violated");
    if (!m.even) flags.push_back("measure not even: hypotheses violated");
    return flags;
}

void stamp(CheckReport& r, const QuadratureSpec& spec, int N = 0)
{
    r.M = spec.M;
    r.S = spec.S;
    r.N = N;
}

} // namespace

CheckReport check_strong_dimbm(const MeasureModel& m, const Body2D& K,
                               const RhoBarSolution& sol, const QuadratureSpec& spec,
                               double tolerance)
{
    const BoundaryFrame f = boundary_frame(K, m, spec.M);
    const double bh = boundary_integral(f, std::span<const double>(f.h));
    const double mu_K = sol.p_value * sol.integral_rho;

    CheckReport r = CheckReport::inequality("strong_dim_bm", sol.integral_rho, bh, tolerance);
    r.aux = {{"p", sol.p_value},
             {"mu_over_bh", mu_K / bh},
             {"power_form_margin", sol.p_value - mu_K / bh}};
    r.flags = hypothesis_flags(m, K);
    stamp(r, spec);
    return r;
}

std::pair<CheckReport, CheckReport> check_chain(const MeasureModel& m, const Body2D& K,
                                                const RhoBarSolution& sol,
                                                const MomentSet& ms, double tolerance)
{
    const double n = 2.0;
    const double mean1 = ms.m1 / ms.mu_K;
    const double inv_moment = 1.0 / (n - mean1);

    CheckReport link1 =
        CheckReport::inequality("chain_power_vs_moment", inv_moment, sol.p_value, tolerance);
    link1.aux = {{"m1_over_muK", mean1}};
    CheckReport link2 =
        CheckReport::inequality("chain_moment_vs_half", 1.0 / n, inv_moment, tolerance);
    link2.aux = {{"m1", ms.m1}};
    const auto flags = hypothesis_flags(m, K);
    link1.flags = flags;
    link2.flags = flags;
    return {link1, link2};
}

CheckReport check_local_b(const MeasureModel& m, const Body2D& K, const MomentSet& ms,
                          double tolerance)
{
    const double mean1 = ms.m1 / ms.mu_K;
    const double variance = ms.m2 / ms.mu_K - mean1 * mean1;
    const double rhs = ms.q / ms.mu_K + mean1;

    CheckReport r = CheckReport::inequality("local_b", variance, rhs, tolerance);
    r.aux = {{"variance", variance}, {"mean", mean1}, {"q_over_muK", ms.q / ms.mu_K}};
    r.flags = hypothesis_flags(m, K);
    return r;
}

CheckReport check_action_support(const MeasureModel& m, const Body2D& K,
                                 const QuadratureSpec& spec, double tolerance)
{
    const BoundaryFrame f = boundary_frame(K, m, spec.M);
    const double mu_K = interior_integral(m, K, [](Vec2) { return 1.0; }, spec);
    const double m1 = interior_integral(m, K, [&m](Vec2 x) { return dot(m.grad_u(x), x); }, spec);
    const double mean1 = m1 / mu_K;

    const std::vector<double> Eh = apply_operator_strong(m, K, K.support_series(), spec);
    double worst = 0.0;
    double wl = 0.0, wr = 0.0;
    for (int j = 0; j < f.M; ++j) {
        const double rhs = 1.0 + f.gu_x[j] - mean1;
        const double res = std::abs(Eh[j] - rhs);
        if (res >= worst) {
            worst = res;
            wl = Eh[j];
            wr = rhs;
        }
    }

    CheckReport r;
    r.name = "action_on_support";
    r.lhs = wl;
    r.rhs = wr;
    r.margin = wr - wl;
    r.residual = worst;
    r.relative_scale = 1.0 + std::abs(mean1);
    r.tolerance = tolerance;
    r.identity = true;
    r.verdict = worst <= tolerance * r.relative_scale ? Verdict::holds : Verdict::violated;
    r.aux = {{"m1_over_muK", mean1}};
    r.flags = hypothesis_flags(m, K);
    stamp(r, spec);
    return r;
}

CheckReport check_reilly(const MeasureModel& m, const Body2D& K, const TestFunction& psi,
                         const QuadratureSpec& spec, double tolerance)
{
    const double lhs = interior_integral(m, K, [&](Vec2 x) {
        const double L = laplacian_mu(m, psi, x);
        return L * L;
    }, spec);

    const double interior = interior_integral(m, K, [&](Vec2 x) {
        const Vec2 g = psi.grad(x);
        return psi.hess(x).frobenius_sq() + m.hess_u(x).quad(g);
    }, spec);

    // Boundary terms with rho = <grad psi, nu>: the tangential derivative of
    // rho along arclength is <hess psi tau, nu> + psi_s / r.
    const BoundaryFrame f = boundary_frame(K, m, spec.M);
    std::vector<double> bterm(f.M);
    for (int j = 0; j < f.M; ++j) {
        const Vec2 x{f.x1[j], f.x2[j]};
        const Vec2 nu{f.nu1[j], f.nu2[j]};
        const Vec2 tau{-f.nu2[j], f.nu1[j]};
        const Vec2 g = psi.grad(x);
        const Sym2 H = psi.hess(x);
        const double rho = dot(g, nu);
        const double psi_s = dot(g, tau);
        const double rho_s = dot(H.apply(tau), nu) + psi_s / f.r[j];
        bterm[j] = f.Hmu[j] * rho * rho + psi_s * psi_s / f.r[j] - 2.0 * psi_s * rho_s;
    }
    const double boundary = boundary_integral(f, bterm);
    const double rhs = interior + boundary;

    CheckReport r = CheckReport::identity_check("reilly", lhs, rhs, tolerance);
    r.aux = {{"interior", interior}, {"boundary", boundary}};
    r.flags = hypothesis_flags(m, K);
    stamp(r, spec);
    return r;
}

CheckReport check_integration_by_parts(const MeasureModel& m, const Body2D& K,
                                       const TestFunction& phi, const TestFunction& psi,
                                       const QuadratureSpec& spec, double tolerance)
{
    const double t1 = interior_integral(m, K, [&](Vec2 x) {
        return phi.value(x) * laplacian_mu(m, psi, x);
    }, spec);
    const double t2 = interior_integral(m, K, [&](Vec2 x) {
        return dot(phi.grad(x), psi.grad(x));
    }, spec);

    const BoundaryFrame f = boundary_frame(K, m, spec.M);
    std::vector<double> bvals(f.M);
    for (int j = 0; j < f.M; ++j) {
        const Vec2 x{f.x1[j], f.x2[j]};
        bvals[j] = phi.value(x) * (psi.grad(x).x * f.nu1[j] + psi.grad(x).y * f.nu2[j]);
    }
    const double t3 = boundary_integral(f, bvals);

    CheckReport r;
    r.name = "integration_by_parts";
    r.lhs = t1;
    r.rhs = t3 - t2;
    r.margin = r.rhs - r.lhs;
    r.residual = std::abs(t1 + t2 - t3);
    r.relative_scale = std::max({std::abs(t1), std::abs(t2), std::abs(t3), 1.0});
    r.tolerance = tolerance;
    r.identity = true;
    r.verdict = r.residual <= tolerance * r.relative_scale ? Verdict::holds : Verdict::violated;
    r.flags = hypothesis_flags(m, K);
    stamp(r, spec);
    return r;
}

CheckReport check_moment_identity(const MeasureModel& m, const Body2D& K,
                                  const QuadratureSpec& spec, double tolerance)
{
    const MomentSet ms = moments(m, K, spec);
    CheckReport r = CheckReport::identity_check("boundary_interior_identity", ms.bh,
                                                2.0 * ms.mu_K - ms.m1, tolerance);
    r.aux = {{"mu_K", ms.mu_K}, {"m1", ms.m1}, {"bh", ms.bh}};
    r.flags = hypothesis_flags(m, K);
    stamp(r, spec);
    return r;
}

CheckReport check_hereditary_functional(const MeasureModel& m, const Body2D& K,
                                        const TestFunction& psi, const QuadratureSpec& spec,
                                        double tolerance)
{
    const double mu_K = interior_integral(m, K, [](Vec2) { return 1.0; }, spec);
    const double lhs = interior_integral(m, K, [&](Vec2 x) {
        const Vec2 g = psi.grad(x);
        return psi.hess(x).frobenius_sq() + m.hess_u(x).quad(g);
    }, spec) / mu_K;
    const double num = interior_integral(m, K, [&](Vec2 x) {
        return laplacian_mu(m, psi, x);
    }, spec) / mu_K;
    const double den = interior_integral(m, K, [&](Vec2 x) {
        return 2.0 - dot(m.grad_u(x), x);
    }, spec) / mu_K;

    // Positivity of the denominator is guaranteed by the boundary/interior
    // identity (it equals int h dmu / mu_K); a breach means broken hypotheses.
    const BoundaryFrame f = boundary_frame(K, m, spec.M);
    const double bh_over_mu = boundary_integral(f, std::span<const double>(f.h)) / mu_K;
    if (!(den > 0.0)) {
        std::ostringstream os;
        os << "hereditary functional: denominator " << den
           << " not positive (boundary route gives " << bh_over_mu << ")";
        throw std::runtime_error(os.str());
    }

    const double rhs = num * num / den;
    CheckReport r;
    r.name = "hereditary_functional";
    r.lhs = lhs;
    r.rhs = rhs;
    r.margin = lhs - rhs;
    r.relative_scale = std::max({std::abs(lhs), std::abs(rhs), 1.0});
    r.tolerance = tolerance;
    r.verdict = r.margin >= -tolerance * r.relative_scale ? Verdict::holds : Verdict::violated;
    r.aux = {{"numerator", num}, {"denominator", den}, {"denominator_boundary_route", bh_over_mu}};
    r.flags = hypothesis_flags(m, K);
    if (!psi.even) r.flags.push_back("test function not even: hypotheses violated");
    stamp(r, spec);
    return r;
}

std::vector<CheckReport> check_proof_decomposition(const MeasureModel& m, const Body2D& K,
                                                   const RhoBarSolution& sol,
                                                   const QuadratureSpec& spec, double tolerance)
{
    const BoundaryFrame f = boundary_frame(K, m, spec.M);
    const MomentSet ms = moments(m, K, spec);
    const double mu_K = ms.mu_K;
    const double mean1 = ms.m1 / mu_K;

    if (static_cast<int>(sol.nodal.size()) != f.M)
        throw std::invalid_argument("check_proof_decomposition: solution grid mismatch");

    std::vector<double> fvals(f.M);
    for (int j = 0; j < f.M; ++j) fvals[j] = sol.nodal[j] - f.h[j];

    std::vector<double> fgux(f.M), hgux(f.M);
    for (int j = 0; j < f.M; ++j) {
        fgux[j] = fvals[j] * f.gu_x[j];
        hgux[j] = f.h[j] * f.gu_x[j];
    }

    const double int_f = boundary_integral(f, fvals) / mu_K;
    const double term_a1 = boundary_integral(f, fgux) / mu_K;
    const double term_a = term_a1 - int_f * mean1;

    const double term_b_boundary = boundary_integral(f, hgux) / mu_K - (ms.bh / mu_K) * mean1;
    const double term_b_moment =
        ms.q / mu_K + mean1 - ms.m2 / mu_K + mean1 * mean1;

    const double sum_direct = (ms.bh - sol.integral_rho) / mu_K;

    const auto flags = hypothesis_flags(m, K);

    CheckReport a = CheckReport::inequality("proof_term_a_nonpositive", term_a, 0.0, tolerance,
                                            std::max(std::abs(term_a1), 1.0));
    a.aux = {{"term_a", term_a}};
    a.flags = flags;
    stamp(a, spec);

    CheckReport sum = CheckReport::identity_check("proof_sum_consistency",
                                                  term_a + term_b_boundary, sum_direct, tolerance);
    sum.aux = {{"term_a", term_a}, {"term_b", term_b_boundary}};
    sum.flags = flags;
    stamp(sum, spec);

    CheckReport b = CheckReport::identity_check("proof_term_b_routes", term_b_boundary,
                                                term_b_moment, tolerance);
    b.aux = {{"boundary_route", term_b_boundary}, {"moment_route", term_b_moment}};
    b.flags = flags;
    stamp(b, spec);

    return {a, sum, b};
}

std::vector<CheckReport> run_all_checks(const MeasureModel& m, const Body2D& K, int N,
                                        const QuadratureSpec& spec, double tolerance)
{
    const PowerResult pr = concavity_power(m, K, N, spec);
    const MomentSet ms = moments(m, K, spec);
    const auto& catalog = test_function_catalog();

    std::vector<CheckReport> out;
    out.push_back(check_strong_dimbm(m, K, pr.sol, spec, tolerance));
    auto [link1, link2] = check_chain(m, K, pr.sol, ms, tolerance);
    out.push_back(link1);
    out.push_back(link2);
    out.push_back(check_local_b(m, K, ms, tolerance));
    out.push_back(check_action_support(m, K, spec, tolerance));

    // Worst case over the catalog: largest residual for the identities,
    // smallest margin for the functional inequality.
    CheckReport worst_reilly;
    for (std::size_t i = 0; i < catalog.size(); ++i) {
        CheckReport r = check_reilly(m, K, catalog[i], spec, tolerance);
        r.aux.push_back({"psi", static_cast<double>(i + 1)});
        if (i == 0 || r.residual / r.relative_scale >
                          worst_reilly.residual / worst_reilly.relative_scale)
            worst_reilly = r;
    }
    out.push_back(worst_reilly);

    CheckReport worst_ibp;
    bool first = true;
    for (std::size_t i = 0; i < catalog.size(); ++i) {
        for (std::size_t j = 0; j < catalog.size(); ++j) {
            CheckReport r =
                check_integration_by_parts(m, K, catalog[i], catalog[j], spec, tolerance);
            r.aux.push_back({"phi", static_cast<double>(i + 1)});
            r.aux.push_back({"psi", static_cast<double>(j + 1)});
            if (first || r.residual / r.relative_scale >
                             worst_ibp.residual / worst_ibp.relative_scale) {
                worst_ibp = r;
                first = false;
            }
        }
    }
    out.push_back(worst_ibp);

    CheckReport worst_hered;
    for (std::size_t i = 0; i < catalog.size(); ++i) {
        CheckReport r = check_hereditary_functional(m, K, catalog[i], spec, tolerance);
        r.aux.push_back({"psi", static_cast<double>(i + 1)});
        if (i == 0 || r.margin / r.relative_scale < worst_hered.margin / worst_hered.relative_scale)
            worst_hered = r;
    }
    out.push_back(worst_hered);

    for (CheckReport& r : check_proof_decomposition(m, K, pr.sol, spec, tolerance))
        out.push_back(std::move(r));
    out.push_back(check_moment_identity(m, K, spec, tolerance));

    for (CheckReport& r : out) {
        r.N = N;
        r.M = spec.M;
        r.S = spec.S;
        for (const std::string& fl : pr.flags)
            if (std::find(r.flags.begin(), r.flags.end(), fl) == r.flags.end())
                r.flags.push_back(fl);
    }
    std::sort(out.begin(), out.end(),
              [](const CheckReport& x, const CheckReport& y) { return x.name < y.name; });
    return out;
}

} // namespace clab
