#include <CLI11.hpp>
#include <iostream>
#include <optional>

#include "clab/cli.hpp"
#include "clab/kernels.hpp"
#include "clab/version.hpp"

namespace {

struct CommonOpts {
    std::string config_path;
    std::string out;
    std::string resolution;
    std::optional<std::uint64_t> seed;
};

void add_common(CLI::App* sub, CommonOpts& o)
{
    sub->add_option("--config", o.config_path, "run config (JSON)")->required();
    sub->add_option("--out", o.out, "report path (default: stdout)");
    sub->add_option("--resolution", o.resolution, "override, e.g. N=32,M=256,S=128");
    sub->add_option("--seed", o.seed, "override the config seed");
}

clab::RunConfig load(const CommonOpts& o)
{
    clab::RunConfig cfg = clab::load_config(o.config_path);
    if (!o.out.empty()) cfg.out = o.out;
    if (!o.resolution.empty()) clab::apply_resolution_override(cfg.resolution, o.resolution);
    if (o.seed) cfg.seed = *o.seed;
    return cfg;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{std::string(clab::kToolkitName) + " " + clab::kToolkitVersion +
                 ": concavity powers, Brunn-Minkowski checks and scans for even "
                 "log-concave measures on planar convex bodies"};
    app.require_subcommand(1);

    CommonOpts o;
    std::string mode;
    std::string curve_out;
    std::string rho_out;
    std::string config_dir;

    CLI::App* power = app.add_subcommand("power", "solve for rho_bar and p(mu, K)");
    add_common(power, o);
    power->add_option("--rho-out", rho_out, "CSV of (theta, rho_bar)");

    CLI::App* verify = app.add_subcommand("verify", "run the full inequality/identity battery");
    add_common(verify, o);

    CLI::App* scan = app.add_subcommand("scan", "concavity scans along t grids");
    add_common(scan, o);
    scan->add_option("--mode", mode, "b | dim-bm | logc");
    scan->add_option("--curve-out", curve_out, "curve CSV path");

    CLI::App* oracle = app.add_subcommand("oracle", "perturbation oracle vs the PDE power");
    add_common(oracle, o);

    CLI::App* suite = app.add_subcommand("suite", "run a corpus of configs");
    suite->add_option("--config-dir", config_dir, "directory of *.json configs")->required();
    suite->add_option("--out", o.out, "aggregate report path (default: stdout)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (suite->parsed()) return clab::cmd_suite(config_dir, o.out);
        clab::RunConfig cfg = load(o);
        if (power->parsed()) {
            if (!rho_out.empty()) cfg.rho_out = rho_out;
            return clab::cmd_power(cfg);
        }
        if (verify->parsed()) return clab::cmd_verify(cfg);
        if (scan->parsed()) {
            if (!curve_out.empty()) cfg.curve_out = curve_out;
            return clab::cmd_scan(cfg, mode);
        }
        if (oracle->parsed()) return clab::cmd_oracle(cfg);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
