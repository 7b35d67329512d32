#include "clab/config.hpp"

#include <json.hpp>
#include <sstream>
#include <stdexcept>

#include "clab/report.hpp"

namespace clab {

using nlohmann::json;

namespace {

[[noreturn]] void fail(const std::string& origin, const std::string& what)
{
    throw std::invalid_argument(origin + ": " + what);
}

const json& require(const json& j, const char* field, const std::string& origin)
{
    auto it = j.find(field);
    if (it == j.end()) fail(origin, std::string("missing field \"") + field + "\"");
    return *it;
}

MeasureModel measure_from_json(const json& j, const std::string& origin)
{
    const std::string kind = require(j, "kind", origin).get<std::string>();
    const json& p = require(j, "params", origin);
    if (kind == "gaussian") return make_gaussian(require(p, "sigma", origin).get<double>());
    if (kind == "quadratic") {
        Sym2 A;
        A.xx = require(p, "a11", origin).get<double>();
        A.xy = p.value("a12", 0.0);
        A.yy = require(p, "a22", origin).get<double>();
        return make_quadratic(A);
    }
    if (kind == "radial")
        return make_radial(require(p, "coeffs", origin).get<std::vector<double>>());
    if (kind == "evenpower")
        return make_even_power(require(p, "epsilon", origin).get<double>(),
                               require(p, "p", origin).get<double>());
    fail(origin, "unknown measure kind \"" + kind + "\"");
}

Body2D body_from_json(const json& j, const std::string& origin, std::vector<std::string>* flags)
{
    const std::string kind = require(j, "kind", origin).get<std::string>();
    const json& p = require(j, "params", origin);
    if (kind == "disk") return make_disk(require(p, "R", origin).get<double>());
    if (kind == "ellipse") {
        double err = 0.0;
        Body2D K = make_ellipse(require(p, "a", origin).get<double>(),
                                require(p, "b", origin).get<double>(),
                                require(p, "degree", origin).get<int>(), &err);
        if (err > 1e-10 && flags) {
            std::ostringstream os;
            os << "ellipse projection error " << err << " above 1e-10: degree insufficient";
            flags->push_back(os.str());
        }
        return K;
    }
    if (kind == "fourier") {
        std::vector<Harmonic> hs;
        for (const json& row : require(p, "harmonics", origin)) {
            if (!row.is_array() || row.size() != 3)
                fail(origin, "fourier harmonics must be [k, a, b] triples");
            hs.push_back({row[0].get<int>(), row[1].get<double>(), row[2].get<double>()});
        }
        return make_fourier(require(p, "a0", origin).get<double>(), std::move(hs),
                            p.value("symmetric", true));
    }
    fail(origin, "unknown body kind \"" + kind + "\"");
}

void check_bounds(const ResolutionSpec& r, const std::string& origin)
{
    if (r.N < 1 || r.N > 128) fail(origin, "resolution out of bounds: N must be in [1,128]");
    if (r.M < 16 || r.M > 8192 || r.M % 2 != 0)
        fail(origin, "resolution out of bounds: M must be even and in [16,8192]");
    if (r.S < 16 || r.S > 4096) fail(origin, "resolution out of bounds: S must be in [16,4096]");
    if (r.points < 5 || r.points > 100000)
        fail(origin, "resolution out of bounds: points must be in [5,100000]");
}

} // namespace

MeasureModel measure_from_json_text(const std::string& text)
{
    return measure_from_json(json::parse(text), "measure");
}

Body2D body_from_json_text(const std::string& text, std::vector<std::string>* flags)
{
    return body_from_json(json::parse(text), "body", flags);
}

RunConfig parse_config(const std::string& json_text, const std::string& origin)
{
    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::parse_error& e) {
        fail(origin, std::string("JSON parse error: ") + e.what());
    }

    RunConfig cfg;
    cfg.config_hash = fnv1a_hex(json_text);
    cfg.command = j.value("command", "");
    cfg.mode = j.value("mode", "");
    cfg.measure = measure_from_json(require(j, "measure", origin + "/measure"),
                                    origin + "/measure");
    cfg.body = body_from_json(require(j, "body", origin + "/body"), origin + "/body", &cfg.flags);
    if (j.contains("body2"))
        cfg.body2 = body_from_json(j["body2"], origin + "/body2", &cfg.flags);

    if (j.contains("resolution")) {
        const json& r = j["resolution"];
        cfg.resolution.N = r.value("N", cfg.resolution.N);
        cfg.resolution.M = r.value("M", cfg.resolution.M);
        cfg.resolution.S = r.value("S", cfg.resolution.S);
        cfg.resolution.points = r.value("points", cfg.resolution.points);
    }
    check_bounds(cfg.resolution, origin + "/resolution");

    cfg.tolerance = j.value("tolerance", cfg.tolerance);
    if (!(cfg.tolerance > 0.0)) fail(origin, "tolerance must be positive");
    if (j.contains("seed")) cfg.seed = j["seed"].get<std::uint64_t>();
    cfg.samples = j.value("samples", cfg.samples);
    cfg.degree = j.value("degree", cfg.degree);
    cfg.t_step = j.value("t_step", cfg.t_step);
    cfg.t_min = j.value("t_min", cfg.t_min);
    cfg.t_max = j.value("t_max", cfg.t_max);
    cfg.out = j.value("out", "");
    cfg.curve_out = j.value("curve_out", "");
    cfg.rho_out = j.value("rho_out", "");
    return cfg;
}

RunConfig load_config(const std::string& path)
{
    return parse_config(read_text_file(path), path);
}

void apply_resolution_override(ResolutionSpec& r, const std::string& text)
{
    std::istringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        const auto eq = item.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("resolution override must look like N=32,M=256,S=128");
        const std::string key = item.substr(0, eq);
        const int v = std::stoi(item.substr(eq + 1));
        if (key == "N") r.N = v;
        else if (key == "M") r.M = v;
        else if (key == "S") r.S = v;
        else if (key == "points") r.points = v;
        else throw std::invalid_argument("unknown resolution key \"" + key + "\"");
    }
}

} // namespace clab
