#include "tiling/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <system_error>

namespace tiling::io {

namespace {

json complex_parts(const std::vector<cplx>& v, const char* re, const char* im, json& into) {
    json r = json::array();
    json i = json::array();
    for (const cplx& z : v) {
        r.push_back(z.real());
        i.push_back(z.imag());
    }
    into[re] = std::move(r);
    into[im] = std::move(i);
    return into;
}

std::vector<cplx> complex_from_parts(const json& j, const char* re, const char* im) {
    const auto& r = j.at(re);
    const auto& i = j.at(im);
    if (!r.is_array() || !i.is_array() || r.size() != i.size()) {
        throw DomainError("malformed-input", std::string("arrays ") + re + "/" + im + " must have equal length");
    }
    std::vector<cplx> out(r.size());
    for (std::size_t k = 0; k < r.size(); ++k) out[k] = cplx(r[k].get<double>(), i[k].get<double>());
    return out;
}

json complex_value(cplx z) { return json{{"re", z.real()}, {"im", z.imag()}}; }

}  // namespace

std::string format_double(double x) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), x, std::chars_format::general, 17);
    return std::string(buf, res.ptr);
}

double parse_double(std::string_view text) {
    while (!text.empty() && (text.front() == ' ' || text.front() == '\t')) text.remove_prefix(1);
    while (!text.empty() && (text.back() == ' ' || text.back() == '\t' || text.back() == '\r')) {
        text.remove_suffix(1);
    }
    if (!text.empty() && text.front() == '+') text.remove_prefix(1);
    double v = 0.0;
    const auto res = std::from_chars(text.data(), text.data() + text.size(), v);
    if (res.ec != std::errc() || res.ptr != text.data() + text.size()) {
        throw DomainError("malformed-input", "not a number: '" + std::string(text) + "'");
    }
    return v;
}

void write_file_atomic(const std::filesystem::path& path, const std::string& contents) {
    auto tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw DomainError("io-error", "cannot open " + tmp.string() + " for writing");
        out << contents;
        if (!out.flush()) throw DomainError("io-error", "write failed for " + tmp.string());
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) throw DomainError("io-error", "cannot rename " + tmp.string() + ": " + ec.message());
}

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DomainError("io-error", "cannot open " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::string point_set_to_csv(const PointSet& set) {
    std::string out;
    out.reserve(set.size() * 24);
    for (double p : set.points()) {
        out += format_double(p);
        out += '\n';
    }
    return out;
}

PointSet point_set_from_csv(const std::string& text, std::optional<Interval> window) {
    std::vector<double> pts;
    std::size_t pos = 0;
    while (pos < text.size()) {
        auto end = text.find('\n', pos);
        if (end == std::string::npos) end = text.size();
        std::string_view line(text.data() + pos, end - pos);
        pos = end + 1;
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        if (line.find_first_not_of(" \t") == std::string_view::npos) continue;
        pts.push_back(parse_double(line));
    }
    if (!window) {
        double m = 0.0;
        for (double p : pts) m = std::max(m, std::abs(p));
        window = Interval{-m, m};
    }
    return validate_point_set(pts, *window).set;
}

std::string grid_to_csv(const GridFunction& grid) {
    std::string out;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        out += format_double(grid.node(i));
        out += ',';
        out += format_double(grid[i].real());
        out += ',';
        out += format_double(grid[i].imag());
        out += '\n';
    }
    return out;
}

json to_json(const BandlimitedFunction& f) {
    json j;
    j["bandRadius"] = f.band_radius();
    j["derivOrder"] = f.deriv_order();
    j["factorRe"] = f.factor().real();
    j["factorIm"] = f.factor().imag();
    complex_parts(f.ft_samples(), "ftSamplesRe", "ftSamplesIm", j);
    return j;
}

BandlimitedFunction bandlimited_from_json(const json& j) {
    try {
        return BandlimitedFunction(j.at("bandRadius").get<double>(),
                                   complex_from_parts(j, "ftSamplesRe", "ftSamplesIm"),
                                   j.at("derivOrder").get<int>(),
                                   cplx(j.at("factorRe").get<double>(), j.at("factorIm").get<double>()));
    } catch (const json::exception& e) {
        throw DomainError("malformed-input", std::string("bandlimited function: ") + e.what());
    }
}

json to_json(const kargaev::SolveReport& report) {
    json j;
    j["r"] = report.r;
    j["N"] = report.alpha.N();
    j["iterations"] = report.iterations;
    j["residual"] = report.finalResidual;
    j["ratios"] = report.contractionRatios;
    j["alpha"] = report.alpha.values();
    return j;
}

kargaev::SolveReport solve_report_from_json(const json& j) {
    try {
        kargaev::SolveReport r;
        r.r = j.at("r").get<double>();
        r.iterations = j.at("iterations").get<int>();
        r.finalResidual = j.at("residual").get<double>();
        r.contractionRatios = j.at("ratios").get<std::vector<double>>();
        r.alpha = SeqWindow(j.at("N").get<int>(), j.at("alpha").get<std::vector<double>>());
        return r;
    } catch (const json::exception& e) {
        throw DomainError("malformed-input", std::string("solve report: ") + e.what());
    }
}

json to_json(const interp::InterpolationSystem& system, const interp::CoefficientSolution& solution) {
    json j;
    j["nodes"] = system.nodes;
    j["radii"] = system.radii;
    j["centers"] = system.centers;
    complex_parts(system.values, "cRe", "cIm", j);
    complex_parts(solution.b, "bRe", "bIm", j);
    j["M"] = system.rowSumBound;
    j["residual"] = solution.residual;
    j["iterations"] = solution.iterations;
    return j;
}

json to_json(const verify::DensityReport& report) {
    json j;
    j["maxPerUnit"] = report.maxPerUnit;
    json est = json::array();
    for (const auto& e : report.uniformDensityEstimates) {
        est.push_back(json{{"r", e.r}, {"minDensity", e.minDensity}, {"maxDensity", e.maxDensity}});
    }
    j["uniformDensityEstimates"] = std::move(est);
    j["density"] = report.density;
    j["densityResidual"] = report.densityResidual;
    j["maxGap"] = report.maxGap;
    j["minGap"] = report.minGap;
    j["growthExponent"] = report.growthExponent;
    return j;
}

json to_json(const verify::TilingSumResult& result) {
    json j;
    j["level"] = complex_value(result.level);
    j["measuredDeviation"] = result.measuredDeviation;
    j["tailBound"] = result.tailBound;
    j["maxDeviation"] = result.maxDeviation;
    j["xmin"] = result.sums.interval().lo;
    j["xmax"] = result.sums.interval().hi;
    j["samples"] = result.sums.size();
    return j;
}

json to_json(const verify::TilingVerdict& verdict) {
    json j;
    j["tiles"] = verdict.tiles;
    j["level"] = complex_value(verdict.level);
    if (verdict.firstFailure) {
        j["firstFailure"] = json{{"location", verdict.firstFailure->location},
                                 {"weight", complex_value(verdict.firstFailure->weight)},
                                 {"value", verdict.firstFailureValue}};
    } else {
        j["firstFailure"] = nullptr;
    }
    return j;
}

json to_json(const verify::CyclicVerdict& verdict) {
    json j;
    j["directTiles"] = verdict.directTiles;
    j["spectralTiles"] = verdict.spectralTiles;
    j["directLevel"] = verdict.directLevel ? complex_value(*verdict.directLevel) : json(nullptr);
    j["spectralLevel"] = complex_value(verdict.spectralLevel);
    return j;
}

json to_json(const verify::CyclicCensus& census) {
    json j;
    j["modulus"] = census.modulus;
    j["maxF"] = census.maxF;
    j["maxL"] = census.maxL;
    j["pairs"] = census.pairs;
    j["agreements"] = census.agreements;
    j["disagreements"] = census.disagreements;
    j["tilings"] = census.tilings;
    return j;
}

json to_json(const PeriodicStructure& ps) {
    json arr = json::array();
    for (const auto& p : ps.progressions()) arr.push_back(json{{"period", p.period}, {"offset", p.offset}});
    return json{{"progressions", std::move(arr)}, {"density", ps.density()}};
}

json to_json(const SpectrumMeasure& measure) {
    json arr = json::array();
    for (const auto& a : measure.atoms()) {
        arr.push_back(json{{"location", a.location},
                           {"weightRe", a.weight.real()},
                           {"weightIm", a.weight.imag()},
                           {"derivativeOrder", a.derivativeOrder}});
    }
    return json{{"atoms", std::move(arr)}};
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

}  // namespace tiling::io
