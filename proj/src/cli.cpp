#include "clab/cli.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <iostream>
#include <stdexcept>

#include "clab/report.hpp"
#include "clab/verify.hpp"
#include "clab/version.hpp"

namespace clab {

namespace {

void write_header(JsonWriter& w, const RunConfig& cfg, const char* command)
{
    w.key("version").value(std::string(kToolkitName) + " " + kToolkitVersion);
    w.key("command").value(command);
    w.key("config_hash").value(cfg.config_hash);
    w.key("measure").value(cfg.measure.descriptor());
    w.key("body").value(cfg.body.descriptor());
    w.key("N").value(cfg.resolution.N);
    w.key("M").value(cfg.resolution.M);
    w.key("S").value(cfg.resolution.S);
    w.key("tolerance").value(cfg.tolerance);
}

void write_flags(JsonWriter& w, const std::vector<std::string>& a,
                 const std::vector<std::string>& b)
{
    w.key("flags").begin_array();
    for (const auto& f : a) w.value(f);
    for (const auto& f : b) w.value(f);
    w.end_array();
}

int flags_exit(const std::vector<std::string>& a, const std::vector<std::string>& b,
               bool pass)
{
    if (!pass) return 1;
    return (a.empty() && b.empty()) ? 0 : 2;
}

} // namespace

RunOutcome run_power(const RunConfig& cfg)
{
    const QuadratureSpec spec = cfg.resolution.quadrature();
    const PowerResult pr = concavity_power(cfg.measure, cfg.body, cfg.resolution.N, spec);

    RunOutcome out;
    JsonWriter w;
    w.begin_object();
    write_header(w, cfg, "power");
    w.key("p").value(pr.p);
    w.key("integral_rho").value(pr.sol.integral_rho);
    w.key("mu_K").value(pr.sys.mu_K);
    w.key("weak_residual").value(pr.sol.weak_residual);
    w.key("strong_residual").value(pr.sol.strong_residual);
    w.key("min_eigenvalue").value(pr.sol.min_eigenvalue);
    w.key("odd_mass").value(pr.sol.odd_mass);
    write_flags(w, cfg.flags, pr.flags);
    w.end_object();
    out.report = w.str() + "\n";

    if (!cfg.rho_out.empty()) {
        std::string csv = "theta,rho\n";
        for (int j = 0; j < pr.sys.M; ++j) {
            csv += format_double(2.0 * M_PI * j / pr.sys.M);
            csv.push_back(',');
            csv += format_double(pr.sol.nodal[j]);
            csv.push_back('\n');
        }
        out.rho_csv = csv;
    }
    out.exit_code = flags_exit(cfg.flags, pr.flags, true);
    return out;
}

RunOutcome run_verify(const RunConfig& cfg)
{
    const QuadratureSpec spec = cfg.resolution.quadrature();
    const std::vector<CheckReport> checks =
        run_all_checks(cfg.measure, cfg.body, cfg.resolution.N, spec, cfg.tolerance);

    bool all_hold = true;
    bool any_flag = !cfg.flags.empty();
    for (const CheckReport& c : checks) {
        all_hold = all_hold && c.verdict == Verdict::holds;
        any_flag = any_flag || !c.flags.empty();
    }

    RunOutcome out;
    JsonWriter w;
    w.begin_object();
    write_header(w, cfg, "verify");
    w.key("all_hold").value(all_hold);
    write_flags(w, cfg.flags, {});
    w.key("checks").begin_array();
    for (const CheckReport& c : checks) write_check(w, c);
    w.end_array();
    w.end_object();
    out.report = w.str() + "\n";
    out.exit_code = !all_hold ? 1 : (any_flag ? 2 : 0);
    return out;
}

RunOutcome run_scan(const RunConfig& cfg, const std::string& mode)
{
    const QuadratureSpec spec = cfg.resolution.quadrature();
    ScanCurve curve;
    if (mode == "b") {
        curve = scan_b(cfg.measure, cfg.body, cfg.t_min, cfg.t_max, cfg.resolution.points, spec);
    } else if (mode == "dim-bm" || mode == "logc") {
        if (!cfg.body2)
            throw std::invalid_argument("scan mode " + mode + " needs a second body (body2)");
        curve = mode == "dim-bm"
                    ? scan_dim_bm(cfg.measure, cfg.body, *cfg.body2, cfg.resolution.points, spec)
                    : scan_logc(cfg.measure, cfg.body, *cfg.body2, cfg.resolution.points, spec);
    } else {
        throw std::invalid_argument("unknown scan mode \"" + mode + "\" (b | dim-bm | logc)");
    }

    RunOutcome out;
    JsonWriter w;
    w.begin_object();
    write_header(w, cfg, "scan");
    w.key("mode").value(mode);
    w.key("points").value(static_cast<int>(curve.t.size()));
    w.key("step").value(curve.step);
    w.key("concavity_tolerance").value(curve.tolerance);
    w.key("min_margin").value(curve.min_margin);
    w.key("concave").value(curve.concave);
    write_flags(w, cfg.flags, curve.flags);
    w.end_object();
    out.report = w.str() + "\n";
    out.curve = curve_csv(curve);
    out.exit_code = flags_exit(cfg.flags, curve.flags, curve.concave);
    return out;
}

RunOutcome run_oracle(const RunConfig& cfg)
{
    const QuadratureSpec spec = cfg.resolution.quadrature();
    const OracleResult r = oracle_power(cfg.measure, cfg.body, cfg.samples, cfg.degree,
                                        cfg.t_step, cfg.seed, cfg.resolution.N, spec);
    const bool pass = r.p_hat >= r.p_pde - 5e-3;

    RunOutcome out;
    JsonWriter w;
    w.begin_object();
    write_header(w, cfg, "oracle");
    w.key("p_hat").value(r.p_hat);
    w.key("p_pde").value(r.p_pde);
    w.key("p_rho_bar").value(r.p_rho_bar);
    w.key("worst_seed").value(r.worst.seed);
    w.key("indeterminate_count").value(r.indeterminate_count);
    w.key("samples").value(r.sample_count);
    w.key("degree").value(cfg.degree);
    w.key("t_step").value(cfg.t_step);
    w.key("seed").value(r.master_seed);
    w.key("prng").value("mt19937_64");
    w.key("pass").value(pass);
    write_flags(w, cfg.flags, {});
    w.end_object();
    out.report = w.str() + "\n";
    out.exit_code = flags_exit(cfg.flags, {}, pass);
    return out;
}

namespace {

RunOutcome dispatch(const RunConfig& cfg)
{
    if (cfg.command == "power") return run_power(cfg);
    if (cfg.command == "verify") return run_verify(cfg);
    if (cfg.command == "scan") return run_scan(cfg, cfg.mode);
    if (cfg.command == "oracle") return run_oracle(cfg);
    throw std::invalid_argument("config has no runnable \"command\" field");
}

} // namespace

RunOutcome run_suite(const std::string& config_dir)
{
    namespace fs = std::filesystem;
    if (!fs::is_directory(config_dir))
        throw std::invalid_argument("suite: corpus directory missing: " + config_dir);

    std::vector<std::string> names;
    for (const auto& e : fs::directory_iterator(config_dir))
        if (e.is_regular_file() && e.path().extension() == ".json")
            names.push_back(e.path().filename().string());
    std::sort(names.begin(), names.end());
    if (names.empty()) throw std::invalid_argument("suite: no configs in " + config_dir);

    RunOutcome out;
    bool all_pass = true;
    JsonWriter w;
    w.begin_object();
    w.key("version").value(std::string(kToolkitName) + " " + kToolkitVersion);
    w.key("command").value("suite");
    w.key("runs").begin_array();
    for (const std::string& name : names) {
        w.begin_object();
        w.key("config").value(name);
        try {
            const RunConfig cfg = load_config((fs::path(config_dir) / name).string());
            w.key("command").value(cfg.command);
            const RunOutcome r = dispatch(cfg);
            w.key("exit").value(r.exit_code);
            w.key("pass").value(r.exit_code == 0);
            w.key("report").raw_value(r.report.substr(0, r.report.size() - 1));
            all_pass = all_pass && r.exit_code == 0;
        } catch (const std::exception& e) {
            w.key("exit").value(1);
            w.key("pass").value(false);
            w.key("error").value(e.what());
            all_pass = false;
        }
        w.end_object();
    }
    w.end_array();
    w.key("pass").value(all_pass);
    w.end_object();
    out.report = w.str() + "\n";
    out.exit_code = all_pass ? 0 : 1;
    return out;
}

namespace {

int finish(const RunConfig& cfg, const RunOutcome& out, const std::string& curve_out)
{
    if (cfg.out.empty()) {
        std::cout << out.report;
    } else {
        write_text_file(cfg.out, out.report);
        std::cout << "report written to " << cfg.out << "\n";
    }
    if (!out.curve.empty() && !curve_out.empty()) write_text_file(curve_out, out.curve);
    if (!out.rho_csv.empty() && !cfg.rho_out.empty()) write_text_file(cfg.rho_out, out.rho_csv);
    return out.exit_code;
}

} // namespace

int cmd_power(const RunConfig& cfg) { return finish(cfg, run_power(cfg), ""); }

int cmd_verify(const RunConfig& cfg) { return finish(cfg, run_verify(cfg), ""); }

int cmd_scan(const RunConfig& cfg, const std::string& mode)
{
    const RunOutcome out = run_scan(cfg, mode.empty() ? cfg.mode : mode);
    return finish(cfg, out, cfg.curve_out);
}

int cmd_oracle(const RunConfig& cfg) { return finish(cfg, run_oracle(cfg), ""); }

int cmd_suite(const std::string& config_dir, const std::string& out_path)
{
    const RunOutcome out = run_suite(config_dir);
    if (out_path.empty()) {
        std::cout << out.report;
    } else {
        write_text_file(out_path, out.report);
        std::cout << "aggregate written to " << out_path << "\n";
    }
    return out.exit_code;
}

} // namespace clab
