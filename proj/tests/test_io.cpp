#include <doctest.h>

#include "tiling/io.hpp"

#include <clocale>
#include <cstring>
#include <random>

using namespace tiling;
namespace fs = std::filesystem;

TEST_CASE("doubles round-trip through 17 significant digits") {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int i = 0; i < 2000; ++i) {
        const double x = u(rng) * std::pow(10.0, (i % 41) - 20);
        CHECK(io::parse_double(io::format_double(x)) == x);
    }
    CHECK(io::format_double(0.1) == "0.10000000000000001");
    CHECK(io::format_double(-2.0) == "-2");
    CHECK_THROWS_AS(io::parse_double("1.5x"), DomainError);
    CHECK_THROWS_AS(io::parse_double(""), DomainError);
}

TEST_CASE("number formatting ignores the C locale") {
    const char* old = std::setlocale(LC_NUMERIC, nullptr);
    const std::string saved = old ? old : "C";
    if (std::setlocale(LC_NUMERIC, "de_DE.UTF-8") != nullptr) {
        CHECK(io::format_double(1.25) == "1.25");
        CHECK(io::parse_double("1.25") == 1.25);
    }
    std::setlocale(LC_NUMERIC, saved.c_str());
}

TEST_CASE("point set CSV round-trip") {
    const std::vector<double> pts{-3.25, 0.1, 1.0 / 3.0, 2.0e-9, 7.5};
    const auto set = validate_point_set(pts, Interval{-10.0, 10.0}).set;
    const std::string csv = io::point_set_to_csv(set);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 5);
    const auto back = io::point_set_from_csv(csv, Interval{-10.0, 10.0});
    CHECK(back.points() == set.points());
    const auto inferred = io::point_set_from_csv(csv);
    CHECK(inferred.window().lo == -7.5);
    CHECK(inferred.window().hi == 7.5);
    CHECK(io::point_set_from_csv("1\r\n\n2\n").size() == 2);
    CHECK_THROWS_AS(io::point_set_from_csv("1\nabc\n"), DomainError);
}

TEST_CASE("bandlimited JSON round-trip") {
    const SmoothBump g{2.0};
    const auto f = BandlimitedFunction::from_profile(0.4, [&](double t) { return cplx(g(t / 0.4)); }, 257, 2, cplx(0.5, 0.0));
    const auto j = io::to_json(f);
    for (const char* key : {"bandRadius", "derivOrder", "factorRe", "factorIm", "ftSamplesRe", "ftSamplesIm"}) {
        CHECK(j.contains(key));
    }
    const auto back = io::bandlimited_from_json(io::json::parse(io::dump(j)));
    CHECK(back.ft_samples() == f.ft_samples());
    CHECK(back.deriv_order() == 2);
    for (double x : {0.0, 1.3, -7.0}) CHECK(back(x) == f(x));
    io::json broken = j;
    broken.erase("bandRadius");
    CHECK_THROWS_AS(io::bandlimited_from_json(broken), DomainError);
}

TEST_CASE("solve report JSON round-trip") {
    kargaev::SolveReport rep;
    rep.r = 0.1;
    rep.alpha = SeqWindow(2, std::vector<double>{0.1, -0.09, 0.11, -0.1, 0.1});
    rep.iterations = 7;
    rep.finalResidual = 3e-14;
    rep.contractionRatios = {0.1, 0.09};
    const auto back = io::solve_report_from_json(io::json::parse(io::dump(io::to_json(rep))));
    CHECK(back.alpha.values() == rep.alpha.values());
    CHECK(back.iterations == 7);
    CHECK(back.finalResidual == rep.finalResidual);
    CHECK(back.contractionRatios == rep.contractionRatios);
}

TEST_CASE("grid CSV and atomic writes") {
    const auto g = GridFunction::sample(Interval{0.0, 1.0}, 3, [](double x) { return cplx(x, -x); });
    CHECK(io::grid_to_csv(g) == "0,0,-0\n0.5,0.5,-0.5\n1,1,-1\n");

    const fs::path dir = fs::temp_directory_path() / ("tiling_io_test_" + std::to_string(::getpid()));
    fs::create_directories(dir);
    const fs::path file = dir / "out.txt";
    io::write_file_atomic(file, "first");
    io::write_file_atomic(file, "second");
    CHECK(io::read_file(file) == "second");
    CHECK_FALSE(fs::exists(dir / "out.txt.tmp"));
    CHECK_THROWS_AS(io::read_file(dir / "missing"), DomainError);
    CHECK_THROWS_AS(io::write_file_atomic(dir / "no" / "such" / "dir.txt", "x"), DomainError);
    fs::remove_all(dir);
}

TEST_CASE("verdict JSON fields") {
    verify::TilingVerdict v;
    v.tiles = false;
    v.level = 2.0;
    v.firstFailure = SpectrumAtom{0.5, 0.5, 0};
    v.firstFailureValue = 0.6;
    const auto j = io::to_json(v);
    CHECK(j["tiles"] == false);
    CHECK(j["firstFailure"]["location"] == 0.5);
    verify::CyclicCensus c{12, 3, 4, 10, 10, 0, 3};
    CHECK(io::to_json(c)["disagreements"] == 0);
}
