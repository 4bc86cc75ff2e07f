#include "tiling/cli.hpp"

#include "tiling/interp.hpp"
#include "tiling/io.hpp"
#include "tiling/kargaev.hpp"
#include "tiling/verify.hpp"

#include <CLI11.hpp>

#include <charconv>
#include <cmath>
#include <filesystem>
#include <functional>
#include <map>
#include <ostream>
#include <random>

namespace tiling::cli {

namespace {

namespace fs = std::filesystem;
using io::json;

enum class Kind { Number, Integer, String, Flag };

struct Param {
    std::string name;
    Kind kind;
    json def;
    std::string help;
    bool required = false;
};

// Config errors are reported as usage errors.
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Command {
    std::string name;
    std::string help;
    std::vector<Param> params;
    std::function<void(const json&, std::ostream&)> run;
};

json convert(const Param& p, const std::string& text) {
    switch (p.kind) {
        case Kind::Number:
            if (text == "auto" && p.def.is_null()) return nullptr;
            try {
                return io::parse_double(text);
            } catch (const DomainError&) {
                throw ConfigError("--" + p.name + " expects a number, got '" + text + "'");
            }
        case Kind::Integer: {
            long long v = 0;
            const auto res = std::from_chars(text.data(), text.data() + text.size(), v);
            if (res.ec != std::errc() || res.ptr != text.data() + text.size()) {
                throw ConfigError("--" + p.name + " expects an integer, got '" + text + "'");
            }
            return v;
        }
        case Kind::String:
            return text;
        case Kind::Flag:
            return true;
    }
    return nullptr;
}

bool matches_kind(const Param& p, const json& v) {
    switch (p.kind) {
        case Kind::Number:
            return v.is_number() || (v.is_null() && p.def.is_null());
        case Kind::Integer:
            return v.is_number_integer();
        case Kind::String:
            return v.is_string();
        case Kind::Flag:
            return v.is_boolean();
    }
    return false;
}

json load_config_file(const std::string& path, const std::vector<Param>& params) {
    json file;
    try {
        file = json::parse(io::read_file(path));
    } catch (const json::exception& e) {
        throw ConfigError("malformed config " + path + ": " + e.what());
    } catch (const DomainError& e) {
        throw ConfigError(e.what());
    }
    if (!file.is_object()) throw ConfigError("config " + path + " must be a JSON object");
    for (auto it = file.begin(); it != file.end(); ++it) {
        const auto p = std::find_if(params.begin(), params.end(),
                                    [&](const Param& q) { return q.name == it.key(); });
        if (p == params.end()) throw ConfigError("config " + path + ": unknown key '" + it.key() + "'");
        if (!matches_kind(*p, it.value())) {
            throw ConfigError("config " + path + ": key '" + it.key() + "' has the wrong type");
        }
    }
    return file;
}

// ---------------------------------------------------------------------------
// Helpers shared by commands

double num(const json& cfg, const char* key) { return cfg.at(key).get<double>(); }
long long integer(const json& cfg, const char* key) { return cfg.at(key).get<long long>(); }
std::string str(const json& cfg, const char* key) { return cfg.at(key).get<std::string>(); }

std::size_t positive_count(const json& cfg, const char* key) {
    const long long v = integer(cfg, key);
    if (v < 1) throw DomainError("invalid-parameter", std::string(key) + " must be >= 1");
    return static_cast<std::size_t>(v);
}

std::vector<double> parse_list(const std::string& text, char sep) {
    std::vector<double> out;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        auto end = text.find(sep, pos);
        if (end == std::string::npos) end = text.size();
        const std::string item = text.substr(pos, end - pos);
        if (item.find_first_not_of(" \t") != std::string::npos) out.push_back(io::parse_double(item));
        pos = end + 1;
    }
    return out;
}

std::optional<Interval> window_of(const json& cfg) {
    const std::string w = str(cfg, "window");
    if (w.empty()) return std::nullopt;
    const auto v = parse_list(w, ',');
    if (v.size() != 2 || !(v[0] < v[1])) {
        throw DomainError("invalid-parameter", "--window expects 'lo,hi' with lo < hi");
    }
    return Interval{v[0], v[1]};
}

PointSet load_lambda(const json& cfg) {
    return io::point_set_from_csv(io::read_file(str(cfg, "lambda")), window_of(cfg));
}

fs::path sibling(const fs::path& output, const std::string& explicitPath, const char* defaultName) {
    if (!explicitPath.empty()) return explicitPath;
    return output.parent_path() / defaultName;
}

json envelope(const json& cfg) {
    json j;
    j["config"] = cfg;
    j["seed"] = cfg.at("seed");
    return j;
}

Param seed_param() { return {"seed", Kind::Integer, 0, "Seed for randomized inputs"}; }
Param window_param() { return {"window", Kind::String, "", "Window 'lo,hi' of the point set (default [-max|p|, max|p|])"}; }

// ---------------------------------------------------------------------------
// Commands

void construct_lambda(const json& cfg, std::ostream& out) {
    kargaev::SolveOptions opts;
    opts.tol = num(cfg, "tol");
    opts.eps = num(cfg, "eps");
    opts.maxIter = static_cast<int>(integer(cfg, "maxIter"));
    const int N = static_cast<int>(integer(cfg, "N"));
    const kargaev::SolveReport report =
        cfg.at("r").is_null() ? kargaev::solve_alpha_auto(N, opts) : kargaev::solve_alpha(num(cfg, "r"), N, opts);
    const PointSet lambda = kargaev::build_lambda(report.alpha);

    const fs::path output = str(cfg, "output");
    io::write_file_atomic(output, io::point_set_to_csv(lambda));
    json j = envelope(cfg);
    j["report"] = io::to_json(report);
    j["points"] = lambda.size();
    const fs::path reportPath = sibling(output, str(cfg, "report"), "solve_report.json");
    io::write_file_atomic(reportPath, io::dump(j));
    out << "r=" << io::format_double(report.r) << " iterations=" << report.iterations
        << " residual=" << io::format_double(report.finalResidual) << " points=" << lambda.size() << '\n';
}

void build_tiler(const json& cfg, std::ostream& out) {
    kargaev::TilerOptions opts;
    opts.sharpness = num(cfg, "sharpness");
    opts.samples = positive_count(cfg, "samples");
    const BandlimitedFunction f = kargaev::build_schwartz_tiler(num(cfg, "w"), num(cfg, "a"), opts);
    json j = envelope(cfg);
    j.update(io::to_json(f));
    io::write_file_atomic(str(cfg, "output"), io::dump(j));
    out << "tiler band=" << io::format_double(f.band_radius()) << " integral=" << io::format_double(std::abs(f.transform(0.0)))
        << '\n';
}

void verify_tiling(const json& cfg, std::ostream& out) {
    const PointSet lambda = load_lambda(cfg);
    const BandlimitedFunction f = io::bandlimited_from_json(json::parse(io::read_file(str(cfg, "tiler"))));
    const double xmin = num(cfg, "xmin");
    const double xmax = num(cfg, "xmax");
    if (!(xmin < xmax)) throw DomainError("invalid-parameter", "xmin must be < xmax");
    const GridFunction xs(Interval{xmin, xmax}, positive_count(cfg, "samples"));
    verify::TilingSumOptions opts;
    opts.marginFraction = num(cfg, "margin");
    const auto result = verify::tiling_sum(f, lambda, xs, opts);

    const fs::path output = str(cfg, "output");
    io::write_file_atomic(output, io::grid_to_csv(result.sums));
    json j = envelope(cfg);
    j["result"] = io::to_json(result);
    const cplx integral = f.transform(0.0);
    j["integral"] = json{{"re", integral.real()}, {"im", integral.imag()}};
    io::write_file_atomic(sibling(output, str(cfg, "verdict"), "verdict.json"), io::dump(j));
    out << "level=" << io::format_double(result.level.real()) << " maxDeviation="
        << io::format_double(result.maxDeviation) << '\n';
}

std::vector<Interval> parse_intervals(const std::string& text) {
    std::vector<Interval> out;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        auto end = text.find(';', pos);
        if (end == std::string::npos) end = text.size();
        const auto v = parse_list(text.substr(pos, end - pos), ',');
        if (v.size() == 2) {
            out.push_back({v[0], v[1]});
        } else if (!v.empty()) {
            throw DomainError("invalid-parameter", "--omega expects 'lo,hi;lo,hi;...'");
        }
        pos = end + 1;
    }
    return out;
}

void interpolate(const json& cfg, std::ostream& out) {
    std::vector<double> nodes;
    std::vector<cplx> values;
    const std::string nodesPath = str(cfg, "nodes");
    if (nodesPath.empty()) {
        for (int k = -10; k <= 9; ++k) {
            nodes.push_back((k > 0 ? 2.0 : (k < 0 ? -2.0 : 0.0)) * std::sqrt(std::abs(static_cast<double>(k))));
        }
    } else {
        const std::string text = io::read_file(nodesPath);
        std::size_t pos = 0;
        while (pos < text.size()) {
            auto end = text.find('\n', pos);
            if (end == std::string::npos) end = text.size();
            const auto row = parse_list(text.substr(pos, end - pos), ',');
            pos = end + 1;
            if (row.empty()) continue;
            if (row.size() != 1 && row.size() != 3) {
                throw DomainError("malformed-input", "node rows must be 's' or 's,re,im'");
            }
            nodes.push_back(row[0]);
            if (row.size() == 3) values.emplace_back(row[1], row[2]);
        }
        if (!values.empty() && values.size() != nodes.size()) {
            throw DomainError("malformed-input", "either all node rows carry values or none do");
        }
    }
    if (values.empty()) {
        std::mt19937_64 rng(static_cast<std::uint64_t>(integer(cfg, "seed")));
        std::uniform_real_distribution<double> u(-1.0, 1.0);
        double l1 = 0.0;
        for (std::size_t i = 0; i < nodes.size(); ++i) {
            const double re = u(rng);
            const double im = u(rng);
            values.emplace_back(re, im);
            l1 += std::abs(values.back());
        }
        if (l1 > 0.0) {
            for (auto& v : values) v /= l1;
        }
    }

    const interp::OmegaSpec omega(parse_intervals(str(cfg, "omega")));
    const interp::BumpTransform phi;
    const auto system = interp::build_system(nodes, values, omega, phi, num(cfg, "eps"),
                                             static_cast<int>(integer(cfg, "p")));
    interp::NeumannOptions opts;
    opts.tol = num(cfg, "tol");
    const auto solution = interp::solve_coeffs(system, phi, opts);
    json j = envelope(cfg);
    j.update(io::to_json(system, solution));
    io::write_file_atomic(str(cfg, "output"), io::dump(j));
    out << "M=" << io::format_double(system.rowSumBound) << " iterations=" << solution.iterations
        << " residual=" << io::format_double(solution.residual) << '\n';
}

void density(const json& cfg, std::ostream& out) {
    const auto report = verify::density_report(load_lambda(cfg));
    json j = envelope(cfg);
    j["report"] = io::to_json(report);
    io::write_file_atomic(str(cfg, "output"), io::dump(j));
    out << "density=" << io::format_double(report.density) << " maxPerUnit=" << report.maxPerUnit
        << " growthExponent=" << io::format_double(report.growthExponent) << '\n';
}

void pair_test(const json& cfg, std::ostream& out) {
    const PointSet lambda = load_lambda(cfg);
    verify::TestFunctionSpec spec;
    spec.width = num(cfg, "width");
    spec.shift = num(cfg, "shift");
    spec.sharpness = num(cfg, "sharpness");
    spec.slope = num(cfg, "slope");
    spec.frequency = num(cfg, "frequency");
    spec.amplitude = num(cfg, "amplitude");
    const verify::TestFunction psi(spec, positive_count(cfg, "samples"));
    const auto pairing = verify::pair_with_test_function(lambda, psi);
    const double target = psi.value(0.0) - psi.second_derivative(0.0) / (4.0 * kPi * kPi);
    json j = envelope(cfg);
    j["value"] = json{{"re", pairing.value.real()}, {"im", pairing.value.imag()}};
    j["tailBound"] = pairing.tailBound;
    j["target"] = target;
    j["error"] = std::abs(pairing.value - target);
    io::write_file_atomic(str(cfg, "output"), io::dump(j));
    out << "pairing=" << io::format_double(pairing.value.real()) << " target=" << io::format_double(target)
        << '\n';
}

PeriodicStructure parse_structure(const std::string& text) {
    std::vector<Progression> progs;
    for (const auto& item : parse_intervals(text)) progs.push_back({item.lo, item.hi});
    if (progs.empty()) throw DomainError("invalid-parameter", "--progressions expects 'a,b;a,b;...'");
    return PeriodicStructure(progs);
}

void spectrum(const json& cfg, std::ostream& out) {
    const auto ps = parse_structure(str(cfg, "progressions"));
    const auto measure = verify::periodic_spectrum(ps, num(cfg, "tmax"));
    json j = envelope(cfg);
    j["structure"] = io::to_json(ps);
    j["spectrum"] = io::to_json(measure);
    io::write_file_atomic(str(cfg, "output"), io::dump(j));
    out << "atoms=" << measure.size() << '\n';
}

void detect_structure(const json& cfg, std::ostream& out) {
    const auto found = verify::detect_periodic_structure(
        load_lambda(cfg), static_cast<int>(integer(cfg, "maxProgressions")), num(cfg, "tol"));
    json j = envelope(cfg);
    j["found"] = found.has_value();
    j["structure"] = found ? io::to_json(*found) : json(nullptr);
    io::write_file_atomic(str(cfg, "output"), io::dump(j));
    out << (found ? "structure with " + std::to_string(found->size()) + " progressions" : std::string("none found"))
        << '\n';
}

std::vector<int> parse_int_list(const std::string& text) {
    std::vector<int> out;
    for (double v : parse_list(text, ',')) {
        if (v != std::floor(v)) throw DomainError("invalid-parameter", "expected integers");
        out.push_back(static_cast<int>(v));
    }
    return out;
}

void cyclic_check(const json& cfg, std::ostream& out) {
    const int N = static_cast<int>(integer(cfg, "N"));
    json j = envelope(cfg);
    if (cfg.at("exhaustive").get<bool>()) {
        const auto census = verify::cyclic_census(N, static_cast<int>(integer(cfg, "maxF")),
                                                  static_cast<int>(integer(cfg, "maxL")));
        j["census"] = io::to_json(census);
        const std::string output = str(cfg, "output").empty() ? "census.json" : str(cfg, "output");
        io::write_file_atomic(output, io::dump(j));
        out << "pairs=" << census.pairs << " agreements=" << census.agreements
            << " disagreements=" << census.disagreements << '\n';
        return;
    }
    verify::CyclicInstance inst;
    inst.modulus = N;
    for (double v : parse_list(str(cfg, "f"), ',')) inst.f.emplace_back(v, 0.0);
    inst.lambda = parse_int_list(str(cfg, "lambda"));
    const auto verdict = verify::cyclic_tiling_check(inst);
    j["verdict"] = io::to_json(verdict);
    const std::string output = str(cfg, "output").empty() ? "cyclic.json" : str(cfg, "output");
    io::write_file_atomic(output, io::dump(j));
    out << "direct=" << verdict.directTiles << " spectral=" << verdict.spectralTiles << '\n';
}

std::vector<Command> commands() {
    std::vector<Command> cmds;
    cmds.push_back({"construct-lambda",
                    "Solve for alpha and write the translation set",
                    {{"r", Kind::Number, nullptr, "Base perturbation size (default: auto)"},
                     {"N", Kind::Integer, 32, "Window |n| <= N"},
                     {"tol", Kind::Number, 1e-12, "Step tolerance"},
                     {"eps", Kind::Number, 0.5, "Relative band for |alpha_n|"},
                     {"maxIter", Kind::Integer, 200, "Iteration cap"},
                     {"output", Kind::String, "lambda.csv", "Point set CSV"},
                     {"report", Kind::String, "", "Solve report JSON (default: solve_report.json beside output)"},
                     seed_param()},
                    construct_lambda});
    cmds.push_back({"build-tiler",
                    "Build the band-limited tiler",
                    {{"w", Kind::Number, 1.0, "Tiling level"},
                     {"a", Kind::Number, 0.4, "Band radius, in (0, 1/2)"},
                     {"sharpness", Kind::Number, 8.0, "Bump sharpness"},
                     {"samples", Kind::Integer, 4097, "Fourier-side samples"},
                     {"output", Kind::String, "tiler.json", "Tiler JSON"},
                     seed_param()},
                    build_tiler});
    cmds.push_back({"verify-tiling",
                    "Sample the tiling sum of a tiler over a point set",
                    {{"lambda", Kind::String, "", "Point set CSV", true},
                     {"tiler", Kind::String, "", "Tiler JSON", true},
                     {"xmin", Kind::Number, -4.0, "Left end of the evaluation interval"},
                     {"xmax", Kind::Number, 4.0, "Right end of the evaluation interval"},
                     {"samples", Kind::Integer, 65, "Evaluation nodes"},
                     {"margin", Kind::Number, 0.25, "Required edge margin, fraction of the window half-width"},
                     window_param(),
                     {"output", Kind::String, "sum.csv", "Tiling-sum CSV"},
                     {"verdict", Kind::String, "", "Verdict JSON (default: verdict.json beside output)"},
                     seed_param()},
                    verify_tiling});
    cmds.push_back({"interpolate",
                    "Solve the interpolation system",
                    {{"nodes", Kind::String, "", "CSV rows 's' or 's,re,im' (default: built-in 20-node set)"},
                     {"omega", Kind::String, "0,1000", "Omega as 'lo,hi;lo,hi;...'"},
                     {"eps", Kind::Number, 0.5, "Row-sum bound"},
                     {"p", Kind::Integer, 4, "Growth exponent bound"},
                     {"tol", Kind::Number, 1e-13, "Neumann step tolerance"},
                     {"output", Kind::String, "interpolation.json", "System and solution JSON"},
                     seed_param()},
                    interpolate});
    cmds.push_back({"density",
                    "Density statistics of a point set",
                    {{"lambda", Kind::String, "", "Point set CSV", true},
                     window_param(),
                     {"output", Kind::String, "density.json", "Density report JSON"},
                     seed_param()},
                    density});
    cmds.push_back({"pair-test",
                    "Pair the Dirac comb transform with a test function",
                    {{"lambda", Kind::String, "", "Point set CSV", true},
                     {"width", Kind::Number, 0.39, "Half-width of the support"},
                     {"shift", Kind::Number, 0.0, "Center of the support"},
                     {"sharpness", Kind::Number, 8.0, "Bump sharpness"},
                     {"slope", Kind::Number, 0.0, "Linear factor"},
                     {"frequency", Kind::Number, 0.0, "Cosine modulation frequency"},
                     {"amplitude", Kind::Number, 1.0, "Amplitude"},
                     {"samples", Kind::Integer, 4097, "Quadrature samples"},
                     window_param(),
                     {"output", Kind::String, "pairing.json", "Pairing JSON"},
                     seed_param()},
                    pair_test});
    cmds.push_back({"spectrum",
                    "Spectrum of a union of progressions",
                    {{"progressions", Kind::String, "1,0", "Progressions as 'a,b;a,b;...'"},
                     {"tmax", Kind::Number, 4.0, "Spectral cutoff"},
                     {"output", Kind::String, "spectrum.json", "Spectrum JSON"},
                     seed_param()},
                    spectrum});
    cmds.push_back({"detect-structure",
                    "Search for a periodic structure",
                    {{"lambda", Kind::String, "", "Point set CSV", true},
                     {"maxProgressions", Kind::Integer, 3, "Largest number of progressions tried"},
                     {"tol", Kind::Number, 1e-9, "Residual tolerance"},
                     window_param(),
                     {"output", Kind::String, "structure.json", "Structure JSON"},
                     seed_param()},
                    detect_structure});
    cmds.push_back({"cyclic-check",
                    "Tiling checks in Z_N",
                    {{"N", Kind::Integer, 12, "Modulus"},
                     {"exhaustive", Kind::Flag, false, "Run the census over small indicator pairs"},
                     {"maxF", Kind::Integer, 3, "Census: largest support of f"},
                     {"maxL", Kind::Integer, 4, "Census: largest size of lambda"},
                     {"f", Kind::String, "", "Values of f, comma separated"},
                     {"lambda", Kind::String, "", "Elements of lambda, comma separated"},
                     {"output", Kind::String, "", "Output JSON (default: census.json or cyclic.json)"},
                     seed_param()},
                    cyclic_check});
    return cmds;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    auto cmds = commands();
    CLI::App app{"Tiling constructions and checks", "tiletool"};
    app.require_subcommand(1);

    struct Bound {
        CLI::App* sub = nullptr;
        std::string configPath;
        std::map<std::string, std::string> text;
        std::map<std::string, bool> flags;
        std::map<std::string, CLI::Option*> options;
    };
    std::vector<Bound> bound(cmds.size());
    for (std::size_t c = 0; c < cmds.size(); ++c) {
        auto& b = bound[c];
        b.sub = app.add_subcommand(cmds[c].name, cmds[c].help);
        b.sub->add_option("--config", b.configPath, "JSON config; flags override its values");
        for (const auto& p : cmds[c].params) {
            std::string flag = "--" + p.name;
            if (p.name == "output") flag = "-o,--output";
            if (p.kind == Kind::Flag) {
                b.options[p.name] = b.sub->add_flag(flag, b.flags[p.name], p.help);
            } else {
                b.options[p.name] = b.sub->add_option(flag, b.text[p.name], p.help);
            }
        }
    }

    std::vector<const char*> argv{"tiletool"};
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err) == 0 ? kExitOk : kExitUsage;
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e, out, err) == 0 ? kExitOk : kExitUsage;
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return kExitUsage;
    }

    for (std::size_t c = 0; c < cmds.size(); ++c) {
        auto& b = bound[c];
        if (!b.sub->parsed()) continue;
        const Command& cmd = cmds[c];
        json cfg;
        try {
            cfg["command"] = cmd.name;
            for (const auto& p : cmd.params) cfg[p.name] = p.def;
            if (!b.configPath.empty()) {
                const json file = load_config_file(b.configPath, cmd.params);
                for (auto it = file.begin(); it != file.end(); ++it) cfg[it.key()] = it.value();
            }
            for (const auto& p : cmd.params) {
                if (b.options[p.name]->count() > 0) cfg[p.name] = convert(p, b.text[p.name]);
            }
            for (const auto& p : cmd.params) {
                if (p.required && cfg[p.name].get<std::string>().empty()) {
                    throw ConfigError("--" + p.name + " is required");
                }
            }
        } catch (const ConfigError& e) {
            err << "usage error: " << e.what() << '\n';
            return kExitUsage;
        }
        try {
            cmd.run(cfg, out);
        } catch (const DomainError& e) {
            err << "error [" << e.kind() << "] in " << cmd.name << ": " << e.what() << '\n';
            return kExitDomainError;
        } catch (const json::exception& e) {
            err << "error [malformed-input] in " << cmd.name << ": " << e.what() << '\n';
            return kExitDomainError;
        }
        return kExitOk;
    }
    return kExitUsage;
}

}  // namespace tiling::cli
