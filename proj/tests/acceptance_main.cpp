// Acceptance suite: runs every acceptance criterion at its stated tolerance
// and prints one [PASS]/[FAIL] line per criterion. Exit 0 iff all pass.
//
// Usage: acceptance_suite [clab-binary] [corpus-dir]
// The two arguments feed the determinism/runtime criterion; when omitted it
// runs the suite in-process instead of through the CLI binary.

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "clab/cli.hpp"
#include "clab/report.hpp"
#include "clab/scan.hpp"
#include "clab/verify.hpp"
#include "support/closed_forms.hpp"

using namespace clab;

namespace {

int g_failures = 0;

void criterion(int n, const std::string& name, bool pass, const std::string& detail = "")
{
    std::cout << (pass ? "[PASS]" : "[FAIL]") << " criterion " << n << ": " << name;
    if (!pass && !detail.empty()) std::cout << "  (" << detail << ")";
    std::cout << "\n";
    if (!pass) ++g_failures;
}

struct NamedBody {
    std::string name;
    Body2D K;
};

std::vector<NamedBody> gaussian_corpus()
{
    double err = 0.0;
    return {{"disk(0.5)", make_disk(0.5)},
            {"disk(1)", make_disk(1.0)},
            {"disk(2)", make_disk(2.0)},
            {"ellipse(1,2)", make_ellipse(1.0, 2.0, 48, &err)},
            {"ellipse(1,3)", make_ellipse(1.0, 3.0, 64, &err)},
            {"fourier(2,0.1,0)", make_fourier(1.0, {{2, 0.1, 0.0}}, true)},
            {"fourier(4,0.04,0.04)", make_fourier(1.0, {{4, 0.04, 0.04}}, true)}};
}

struct NamedMeasure {
    std::string name;
    MeasureModel m;
};

std::vector<NamedMeasure> corpus_measures()
{
    return {{"gaussian", make_gaussian(1.0)},
            {"quadratic(diag(1,4))", make_quadratic(Sym2::diag(1.0, 4.0))}};
}

const QuadratureSpec kSpec{256, 128};
const QuadratureSpec kDouble{512, 256};
constexpr int kN = 32;

double identity_rel(const CheckReport& r) { return r.residual / r.relative_scale; }

bool shrinks(double coarse, double fine) { return fine <= coarse / 10.0 || fine <= 1e-9; }

} // namespace

static void criterion_1()
{
    const MeasureModel g = make_gaussian(1.0);
    bool pass = true;
    std::ostringstream detail;
    for (double R : {1.0, 2.0, 0.1}) {
        const auto t0 = std::chrono::steady_clock::now();
        const double p = concavity_power(g, make_disk(R), kN, kSpec).p;
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        const double p_ref = oracle::p_disk(R);
        const double rel = std::abs(p - p_ref) / std::abs(p_ref);
        if (rel > 1e-6 || secs >= 1.0) {
            pass = false;
            detail << "R=" << R << " rel=" << rel << " time=" << secs << "s ";
        }
    }
    // frozen evaluations of the same formula
    pass = pass && std::abs(oracle::p_disk(2.0) - oracle::kPDisk2) < 1e-12 &&
           std::abs(oracle::p_disk(0.1) - oracle::kPDisk01) < 1e-12;
    criterion(1, "closed-form concavity power on gaussian disks", pass, detail.str());
}

static void criterion_2()
{
    const MeasureModel g = make_gaussian(1.0);
    bool pass = true;
    std::ostringstream detail;
    double prev = std::numeric_limits<double>::infinity();
    for (double R : {0.4, 0.2, 0.1, 0.05}) {
        const double p = concavity_power(g, make_disk(R), kN, kSpec).p;
        if (p > prev + 1e-6 || p < 0.5 - 1e-6) {
            pass = false;
            detail << "R=" << R << " p=" << p << " prev=" << prev << " ";
        }
        prev = p;
    }
    criterion(2, "small-body limit: p decreases to 1/2 from above", pass, detail.str());
}

static void criterion_3()
{
    bool pass = true;
    std::ostringstream detail;
    for (const auto& [mname, m] : corpus_measures()) {
        for (const auto& [kname, K] : gaussian_corpus()) {
            const double p = concavity_power(m, K, kN, kSpec).p;
            if (p < 0.5 - 1e-6) {
                pass = false;
                detail << mname << "/" << kname << " p=" << p << " ";
            }
        }
    }
    criterion(3, "p >= 1/2 across the corpus under both even measures", pass, detail.str());
}

static void criterion_4()
{
    const auto& catalog = test_function_catalog();
    bool pass = true;
    std::ostringstream detail;
    auto check_pair = [&](const std::string& where, const CheckReport& coarse,
                          const CheckReport& fine) {
        const double rc = identity_rel(coarse), rf = identity_rel(fine);
        if (rc > 1e-6 || !shrinks(rc, rf)) {
            pass = false;
            detail << where << " coarse=" << rc << " fine=" << rf << " ";
        }
    };

    for (const auto& [mname, m] : corpus_measures()) {
        for (const auto& [kname, K] : gaussian_corpus()) {
            const std::string tag = mname + "/" + kname;
            check_pair(tag + "/eq18", check_action_support(m, K, kSpec, 1e-6),
                       check_action_support(m, K, kDouble, 1e-6));
            check_pair(tag + "/eq23", check_moment_identity(m, K, kSpec, 1e-6),
                       check_moment_identity(m, K, kDouble, 1e-6));
            for (const TestFunction& psi : catalog) {
                check_pair(tag + "/eq20/" + psi.name, check_reilly(m, K, psi, kSpec, 1e-6),
                           check_reilly(m, K, psi, kDouble, 1e-6));
                for (const TestFunction& phi : catalog)
                    check_pair(tag + "/eq19/" + phi.name + "," + psi.name,
                               check_integration_by_parts(m, K, phi, psi, kSpec, 1e-6),
                               check_integration_by_parts(m, K, phi, psi, kDouble, 1e-6));
            }
        }
    }
    criterion(4, "identity residuals <= 1e-6 and shrink 10x under refinement", pass,
              detail.str());
}

static void criterion_5()
{
    const MeasureModel g = make_gaussian(1.0);
    const auto& catalog = test_function_catalog();
    bool pass = true;
    std::ostringstream detail;
    auto need = [&](const std::string& where, bool ok) {
        if (!ok) {
            pass = false;
            detail << where << " ";
        }
    };

    for (const auto& [kname, K] : gaussian_corpus()) {
        const PowerResult pr = concavity_power(g, K, kN, kSpec);
        const MomentSet ms = moments(g, K, kSpec);

        const CheckReport sd = check_strong_dimbm(g, K, pr.sol, kSpec, 1e-8);
        need(kname + "/strong-dimbm", sd.margin >= -1e-8 * sd.relative_scale);

        const auto [l1, l2] = check_chain(g, K, pr.sol, ms, 1e-8);
        need(kname + "/chain", l1.verdict == Verdict::holds && l2.verdict == Verdict::holds);

        const CheckReport lb = check_local_b(g, K, ms, 1e-8);
        need(kname + "/local-b", lb.margin >= -1e-8 * lb.relative_scale);

        for (const TestFunction& psi : catalog) {
            const CheckReport h = check_hereditary_functional(g, K, psi, kSpec, 1e-8);
            need(kname + "/hereditary/" + psi.name, h.margin >= -1e-8 * h.relative_scale);
        }

        const auto proof = check_proof_decomposition(g, K, pr.sol, kSpec, 1e-7);
        need(kname + "/proof-A", proof[0].lhs <= 1e-8 * proof[0].relative_scale);
        need(kname + "/proof-sum", identity_rel(proof[1]) <= 1e-7);
    }
    criterion(5, "inequality suite holds on the gaussian corpus", pass, detail.str());
}

static void criterion_6()
{
    bool pass = true;
    std::ostringstream detail;
    for (const auto& [mname, m] : corpus_measures()) {
        for (const auto& [kname, K] : gaussian_corpus()) {
            const RhoBarSolution sol = solve_rho_bar(assemble(m, K, kN, kSpec));
            if (sol.min_eigenvalue < -1e-9 * sol.norm_B) {
                pass = false;
                detail << mname << "/" << kname << " lambda_min=" << sol.min_eigenvalue << " ";
            }
        }
    }
    criterion(6, "Galerkin form PSD for every corpus pair", pass, detail.str());
}

static void criterion_7()
{
    bool pass = true;
    std::ostringstream detail;
    for (const auto& [mname, m] : corpus_measures()) {
        for (const auto& [kname, K] : gaussian_corpus()) {
            const RhoBarSolution sol = solve_rho_bar(assemble(m, K, kN, kSpec));
            if (sol.odd_mass > 1e-8) {
                pass = false;
                detail << mname << "/" << kname << " odd_mass=" << sol.odd_mass << " ";
            }
        }
    }
    criterion(7, "rho_bar even: odd-coefficient mass <= 1e-8", pass, detail.str());
}

static void criterion_8()
{
    const MeasureModel g = make_gaussian(1.0);
    double err = 0.0;
    const std::vector<NamedBody> bodies = {{"disk(1)", make_disk(1.0)},
                                           {"disk(2)", make_disk(2.0)},
                                           {"ellipse(1,2)", make_ellipse(1.0, 2.0, 48, &err)}};
    bool pass = true;
    std::ostringstream detail;
    for (const auto& [kname, K] : bodies) {
        const OracleResult r = oracle_power(g, K, 200, 6, 0.02, 42, kN, kSpec);
        if (r.p_hat < r.p_pde - 5e-3 || std::abs(r.p_rho_bar - r.p_pde) > 5e-3) {
            pass = false;
            detail << kname << " p_hat=" << r.p_hat << " p_pde=" << r.p_pde
                   << " p_rho_bar=" << r.p_rho_bar << " ";
        }
    }
    criterion(8, "perturbation oracle agrees with the PDE power", pass, detail.str());
}

static void criterion_9()
{
    const MeasureModel g = make_gaussian(1.0);
    bool pass = true;
    std::ostringstream detail;
    for (const auto& [kname, K] : gaussian_corpus()) {
        const ScanCurve c = scan_b(g, K, -1.0, 1.0, 41, kSpec);
        if (!c.concave) {
            pass = false;
            detail << "scan_b/" << kname << " margin=" << c.min_margin << " ";
        }
    }
    double err = 0.0;
    const ScanCurve dbm =
        scan_dim_bm(g, make_disk(1.0), make_ellipse(1.0, 2.0, 48, &err), 41, kSpec);
    if (!dbm.concave) {
        pass = false;
        detail << "scan_dim_bm margin=" << dbm.min_margin << " ";
    }
    const Body2D asym = make_fourier(1.0, {{1, 0.05, 0.0}, {3, 0.03, 0.02}}, false);
    const ScanCurve lc = scan_logc(g, asym, make_disk(1.0), 41, kSpec);
    if (!lc.concave) {
        pass = false;
        detail << "scan_logc margin=" << lc.min_margin << " ";
    }
    criterion(9, "concavity scanners hold on the corpus", pass, detail.str());
}

static void criterion_10(const std::string& clab_bin, const std::string& corpus_dir)
{
    bool pass = true;
    std::ostringstream detail;
    const auto t0 = std::chrono::steady_clock::now();
    std::string rep1, rep2;
    if (!clab_bin.empty()) {
        const auto tmp = std::filesystem::temp_directory_path();
        const std::string out1 = (tmp / "clab_acc_suite1.json").string();
        const std::string out2 = (tmp / "clab_acc_suite2.json").string();
        const std::string base = "CONCAVITY_LAB_THREADS=1 \"" + clab_bin +
                                 "\" suite --config-dir \"" + corpus_dir + "\" --out ";
        const int rc1 = std::system((base + "\"" + out1 + "\" > /dev/null").c_str());
        const int rc2 = std::system((base + "\"" + out2 + "\" > /dev/null").c_str());
        if (rc1 != 0 || rc2 != 0) {
            pass = false;
            detail << "suite exit codes " << rc1 << "," << rc2 << " ";
        } else {
            rep1 = read_text_file(out1);
            rep2 = read_text_file(out2);
        }
    } else {
        rep1 = run_suite(corpus_dir).report;
        rep2 = run_suite(corpus_dir).report;
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (rep1.empty() || rep1 != rep2) {
        pass = false;
        detail << "reports differ ";
    }
    if (secs >= 60.0) {
        pass = false;
        detail << "runtime " << secs << "s ";
    }
    criterion(10, "suite reproduces byte-identical reports in under 60 s", pass, detail.str());
}

int main(int argc, char** argv)
{
    // keep in-process runs single-threaded before any pool spins up
    setenv("CONCAVITY_LAB_THREADS", "1", 0);

    const std::string clab_bin = argc > 1 ? argv[1] : "";
    std::string corpus_dir = argc > 2 ? argv[2] : "";
    if (corpus_dir.empty()) {
        corpus_dir = "configs/corpus";
        if (!std::filesystem::is_directory(corpus_dir)) corpus_dir = "../configs/corpus";
        if (!std::filesystem::is_directory(corpus_dir)) corpus_dir = "../../configs/corpus";
    }

    criterion_1();
    criterion_2();
    criterion_3();
    criterion_4();
    criterion_5();
    criterion_6();
    criterion_7();
    criterion_8();
    criterion_9();
    criterion_10(clab_bin, corpus_dir);

    if (g_failures > 0) {
        std::cout << g_failures << " criterion(s) failed\n";
        return 1;
    }
    std::cout << "all acceptance criteria passed\n";
    return 0;
}
