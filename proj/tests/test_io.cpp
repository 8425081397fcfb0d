#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "catch_amalgamated.hpp"

#include "beltrami/io.hpp"

using namespace beltrami;

namespace {

std::vector<std::string> lines(const std::string& s)
{
    std::vector<std::string> out;
    std::istringstream is(s);
    for (std::string l; std::getline(is, l);) {
        out.push_back(l);
    }
    return out;
}

scenarios::ScenarioResult small_result()
{
    auto p = scenarios::default_parameters(1.0, 5);
    p.n = 400;
    p.k = 3;
    return scenarios::run_single("R1_l5", p);
}

} // namespace

TEST_CASE("profile CSV layout", "[io]")
{
    ProfileTable t;
    t.name = "demo";
    t.u = {-1.0, 0.5, 2.0};
    t.add_column("a", [](double u) { return 2.0 * u; });
    t.add_column("b", [](double u) { return u / 3.0; });
    t.metadata = {{"figure", "x"}};
    const std::string csv = io::render([&](std::ostream& os) { io::write_profile_csv(os, t, {{"R", "1"}}); });
    const auto l = lines(csv);
    REQUIRE(l.size() == 6);
    CHECK(l[0] == "# R = 1");
    CHECK(l[1] == "# figure = x");
    CHECK(l[2] == "u,a,b");
    CHECK(l[3] == "-1,-2,-0.33333333333333331");
    CHECK(l[5] == "2,4,0.66666666666666663");
}

TEST_CASE("spectrum CSV", "[io]")
{
    const auto r = small_result();
    const auto l = lines(io::render([&](std::ostream& os) { io::write_spectrum_csv(os, r.spectrum, {{"k", "3"}}); }));
    REQUIRE(l.size() == 5);
    CHECK(l[0] == "# k = 3");
    CHECK(l[1] == "index,energy,class,doublet_splitting");
    CHECK(l[2].rfind("0,", 0) == 0);
    CHECK(l[4].back() == ','); // unpaired last state

    Spectrum empty;
    const auto e = lines(io::render([&](std::ostream& os) { io::write_spectrum_csv(os, empty); }));
    REQUIRE(e.size() == 1);
    CHECK(e[0] == "index,energy,class,doublet_splitting");
}

TEST_CASE("eigenfunction CSV", "[io]")
{
    const auto r = small_result();
    const RadialGrid grid = scenarios::make_grid(r.parameters);
    const std::size_t half = grid.positive_begin();
    const std::vector<double> nodes(grid.nodes().begin() + static_cast<std::ptrdiff_t>(half), grid.nodes().end());
    const std::vector<double> X(r.spectrum.eigenvectors[0].begin() + static_cast<std::ptrdiff_t>(half),
                                r.spectrum.eigenvectors[0].end());
    const auto l = lines(io::render([&](std::ostream& os) {
        io::write_eigenfunction_csv(os, nodes, X, r.parameters.surface);
    }));
    REQUIRE(l.size() == nodes.size() + 1);
    CHECK(l[0] == "u,X,psi_logmag,psi_sign,surface_density");
}

TEST_CASE("JSON round trip", "[io]")
{
    auto r = small_result();
    const auto j = io::to_json(r, true);
    const auto back = io::result_from_json(io::json::parse(io::dump(j)));
    CHECK(back == r);
    CHECK(back.spectrum.eigenvectors == r.spectrum.eigenvectors);

    const auto lean = io::result_from_json(io::to_json(r));
    CHECK(lean.spectrum.eigenvectors.empty());
    CHECK(lean.spectrum.eigenvalues == r.spectrum.eigenvalues);
    CHECK(io::parameters_from_json(io::to_json(r.parameters)) == r.parameters);
}

TEST_CASE("NaN statistics serialize as null", "[io]")
{
    scenarios::ScenarioStatistics s;
    const auto j = io::to_json(s);
    CHECK(j.at("lowest_splitting_over_gap").is_null());
    CHECK(std::isnan(io::statistics_from_json(j).lowest_splitting_over_gap));
}

TEST_CASE("file writes", "[io]")
{
    const auto dir = std::filesystem::temp_directory_path() / "beltrami_io_test" / "nested";
    std::filesystem::remove_all(dir.parent_path());
    io::write_file(dir / "a.txt", "hello\n");
    std::ifstream f(dir / "a.txt");
    std::string s;
    std::getline(f, s);
    CHECK(s == "hello");
    std::filesystem::remove_all(dir.parent_path());
}
