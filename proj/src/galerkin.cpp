#include "clab/galerkin.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "clab/kernels.hpp"

namespace clab {

namespace {

// Basis value and derivative tables on the frame grid: row i holds phi_i
// (phi_0 = 1, phi_{2k-1} = cos k th, phi_{2k} = sin k th).
struct BasisTables {
    int N = 0;
    int M = 0;
    std::vector<std::vector<double>> phi, dphi;
};

BasisTables basis_tables(int N, int M)
{
    BasisTables t;
    t.N = N;
    t.M = M;
    const int nb = 2 * N + 1;
    t.phi.assign(nb, std::vector<double>(M));
    t.dphi.assign(nb, std::vector<double>(M));
    for (int j = 0; j < M; ++j) {
        t.phi[0][j] = 1.0;
        t.dphi[0][j] = 0.0;
    }
    for (int k = 1; k <= N; ++k) {
        for (int j = 0; j < M; ++j) {
            const double th = 2.0 * M_PI * j / M;
            const double c = std::cos(k * th), s = std::sin(k * th);
            t.phi[2 * k - 1][j] = c;
            t.dphi[2 * k - 1][j] = -k * s;
            t.phi[2 * k][j] = s;
            t.dphi[2 * k][j] = k * c;
        }
    }
    return t;
}

} // namespace

GalerkinSystem assemble(const MeasureModel& m, const Body2D& K, int N,
                        const QuadratureSpec& spec)
{
    if (N < 1) throw std::invalid_argument("assemble: N must be >= 1");
    validate(spec);
    if (spec.M < 8 * N) {
        std::ostringstream os;
        os << "assemble: resolution mismatch, M=" << spec.M << " < 8N=" << 8 * N;
        throw std::invalid_argument(os.str());
    }

    const BoundaryFrame f = boundary_frame(K, m, spec.M);
    const int M = spec.M;
    const int nb = 2 * N + 1;

    GalerkinSystem sys;
    sys.N = N;
    sys.M = M;
    sys.S = spec.S;
    sys.mu_K = interior_integral(m, K, [](Vec2) { return 1.0; }, spec);

    const BasisTables t = basis_tables(N, M);

    // Quadrature weights of the two boundary terms.
    std::vector<double> w_eu(M), w_H(M);
    for (int j = 0; j < M; ++j) {
        w_eu[j] = f.e_u[j] * f.dtheta;
        w_H[j] = f.Hmu[j] * f.w[j];
    }

    sys.load.resize(nb);
    for (int i = 0; i < nb; ++i)
        sys.load(i) = kern::dot(t.phi[i].data(), f.w.data(), M);

    sys.B.resize(nb, nb);
    for (int i = 0; i < nb; ++i) {
        for (int j = i; j < nb; ++j) {
            const double grad_term = kern::dot3(t.dphi[i].data(), t.dphi[j].data(), w_eu.data(), M);
            const double curv_term = kern::dot3(t.phi[i].data(), t.phi[j].data(), w_H.data(), M);
            const double v = grad_term - curv_term + sys.load(i) * sys.load(j) / sys.mu_K;
            sys.B(i, j) = v;
            sys.B(j, i) = v;
        }
    }
    return sys;
}

namespace {

TrigSeries series_from_coeffs(const Eigen::VectorXd& c)
{
    TrigSeries s;
    s.a0 = c(0);
    const int N = (static_cast<int>(c.size()) - 1) / 2;
    for (int k = 1; k <= N; ++k) s.harmonics.push_back({k, c(2 * k - 1), c(2 * k)});
    return s;
}

} // namespace

RhoBarSolution solve_rho_bar(const GalerkinSystem& sys)
{
    const int nb = static_cast<int>(sys.B.rows());

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(sys.B, Eigen::EigenvaluesOnly);
    const double ev_min = es.eigenvalues()(0);
    const double ev_max_abs = std::max(std::abs(es.eigenvalues()(0)),
                                       std::abs(es.eigenvalues()(nb - 1)));
    if (!(ev_min > 0.0)) {
        std::ostringstream os;
        os << "solve_rho_bar: bilinear form not positive definite, smallest eigenvalue "
           << ev_min << " (hypothesis violation or under-resolution)";
        throw std::runtime_error(os.str());
    }

    RhoBarSolution sol;
    sol.min_eigenvalue = ev_min;
    sol.norm_B = ev_max_abs;

    Eigen::LLT<Eigen::MatrixXd> llt(sys.B);
    if (llt.info() != Eigen::Success)
        throw std::runtime_error("solve_rho_bar: Cholesky factorization failed");
    sol.coeffs = llt.solve(sys.load);
    sol.weak_residual = (sys.B * sol.coeffs - sys.load).norm() / sys.load.norm();

    sol.rho = series_from_coeffs(sol.coeffs);
    sol.nodal.resize(sys.M);
    std::vector<double> d1(sys.M), d2(sys.M);
    sol.rho.eval_grid(sys.M, sol.nodal, d1, d2);

    sol.integral_rho = sol.coeffs.dot(sys.load);
    if (!(sol.integral_rho > 0.0)) {
        std::ostringstream os;
        os << "solve_rho_bar: int rho dmu = " << sol.integral_rho << " is not positive";
        throw std::runtime_error(os.str());
    }
    sol.p_value = sys.mu_K / sol.integral_rho;

    double odd_sq = 0.0, total_sq = sol.coeffs(0) * sol.coeffs(0);
    for (int k = 1; 2 * k < static_cast<int>(sol.coeffs.size()); ++k) {
        const double mass = sol.coeffs(2 * k - 1) * sol.coeffs(2 * k - 1) +
                            sol.coeffs(2 * k) * sol.coeffs(2 * k);
        total_sq += mass;
        if (k % 2 == 1) odd_sq += mass;
    }
    sol.odd_mass = total_sq > 0.0 ? std::sqrt(odd_sq / total_sq) : 0.0;
    sol.strong_residual = std::numeric_limits<double>::quiet_NaN();
    return sol;
}

std::vector<double> apply_operator_strong(const MeasureModel& m, const Body2D& K,
                                          const TrigSeries& rho, const QuadratureSpec& spec)
{
    validate(spec);
    const BoundaryFrame f = boundary_frame(K, m, spec.M);
    const int M = f.M;

    std::vector<double> rv(M), rd(M), rdd(M);
    rho.eval_grid(M, rv, rd, rdd);

    const double mu_K = interior_integral(m, K, [](Vec2) { return 1.0; }, spec);
    const double mean_term = kern::dot(rv.data(), f.w.data(), M) / mu_K;

    // E(rho) = -(rho'' - U' rho')/r - H_mu rho + mean term, with
    // U(theta) = u(x(theta)) and U' = r <grad u, tau>.
    std::vector<double> out(M);
    for (int j = 0; j < M; ++j) {
        const double Up = f.r[j] * f.gu_tau[j];
        out[j] = -(rdd[j] - Up * rd[j]) / f.r[j] - f.Hmu[j] * rv[j] + mean_term;
    }
    return out;
}

TrigSeries trig_interpolate(std::span<const double> nodal)
{
    const int M = static_cast<int>(nodal.size());
    if (M < 4 || M % 2 != 0)
        throw std::invalid_argument("trig_interpolate: need an even number of nodes");

    TrigSeries s;
    s.a0 = kern::sum(nodal.data(), nodal.size()) / M;
    for (int k = 1; k < M / 2; ++k) {
        double ca = 0.0, cb = 0.0;
        for (int j = 0; j < M; ++j) {
            const double th = 2.0 * M_PI * j / M;
            ca += nodal[j] * std::cos(k * th);
            cb += nodal[j] * std::sin(k * th);
        }
        ca *= 2.0 / M;
        cb *= 2.0 / M;
        if (ca != 0.0 || cb != 0.0) s.harmonics.push_back({k, ca, cb});
    }
    return s;
}

std::vector<double> apply_operator_strong(const MeasureModel& m, const Body2D& K,
                                          std::span<const double> rho_nodes,
                                          const QuadratureSpec& spec)
{
    if (static_cast<int>(rho_nodes.size()) != spec.M)
        throw std::invalid_argument("apply_operator_strong: nodal data must match spec.M");
    return apply_operator_strong(m, K, trig_interpolate(rho_nodes), spec);
}

PowerResult concavity_power(const MeasureModel& m, const Body2D& K, int N,
                            const QuadratureSpec& spec)
{
    PowerResult res;
    if (!K.symmetric()) res.flags.push_back("body not origin-symmetric: hypotheses violated");
    if (!m.even) res.flags.push_back("measure not even: hypotheses violated");

    res.sys = assemble(m, K, N, spec);
    res.sol = solve_rho_bar(res.sys);

    const std::vector<double> Erho = apply_operator_strong(m, K, res.sol.rho, spec);
    double sr = 0.0;
    for (double v : Erho) sr = std::max(sr, std::abs(v - 1.0));
    res.sol.strong_residual = sr;

    res.p = res.sol.p_value;
    return res;
}

} // namespace clab
