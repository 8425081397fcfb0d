#pragma once

#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "beltrami/model.hpp"
#include "beltrami/profile.hpp"
#include "beltrami/scenarios.hpp"
#include "beltrami/spectrum.hpp"

namespace beltrami::io {

using KeyValues = std::vector<std::pair<std::string, std::string>>;

class io_error : public std::runtime_error {
public:
    io_error(const std::filesystem::path& path, const std::string& what)
        : std::runtime_error(path.string() + ": " + what) {}
};

inline void write_comment_header(std::ostream& os, const KeyValues& config)
{
    for (const auto& [k, v] : config) {
        os << "# " << k << " = " << v << '\n';
    }
}

inline void write_profile_csv(std::ostream& os, const ProfileTable& t, const KeyValues& config = {})
{
    write_comment_header(os, config);
    write_comment_header(os, t.metadata);
    os << 'u';
    for (const auto& l : t.labels) {
        os << ',' << l;
    }
    os << '\n';
    for (std::size_t i = 0; i < t.rows(); ++i) {
        os << format_number(t.u[i]);
        for (const auto& c : t.columns) {
            os << ',' << format_number(c[i]);
        }
        os << '\n';
    }
}

/// index,energy,class,doublet_splitting; the splitting column repeats
/// E_{2j+1} - E_{2j} on both members of pair j and is empty for an unpaired last state.
inline void write_spectrum_csv(std::ostream& os, const Spectrum& s, const KeyValues& config = {})
{
    write_comment_header(os, config);
    os << "index,energy,class,doublet_splitting\n";
    for (std::size_t j = 0; j < s.size(); ++j) {
        os << j << ',' << format_number(s.eigenvalues[j]) << ','
           << (j < s.classifications.size() ? to_string(s.classifications[j].state) : "unclassified") << ',';
        const std::size_t first = j - j % 2;
        if (first + 1 < s.size()) {
            os << format_number(s.eigenvalues[first + 1] - s.eigenvalues[first]);
        }
        os << '\n';
    }
}

/// u,X,psi_logmag,psi_sign,surface_density for one eigenvector of the flux form.
inline void write_eigenfunction_csv(std::ostream& os, const std::vector<double>& nodes, const std::vector<double>& X,
                                    const SurfaceParams& p, const KeyValues& config = {})
{
    write_comment_header(os, config);
    const auto rec = model::reconstruct_wavefunction(X, nodes, p);
    os << "u,X,psi_logmag,psi_sign,surface_density\n";
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        os << format_number(nodes[i]) << ',' << format_number(X[i]) << ',' << format_number(rec.psi_logmag[i]) << ','
           << rec.psi_sign[i] << ',' << format_number(rec.surface_density[i]) << '\n';
    }
}

/// Writes `content` to `path` in one piece, creating parent directories.
inline void write_file(const std::filesystem::path& path, const std::string& content)
{
    std::error_code ec;
    if (path.has_parent_path()) {
        std::filesystem::create_directories(path.parent_path(), ec);
        if (ec) {
            throw io_error(path.parent_path(), "cannot create directory: " + ec.message());
        }
    }
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f) {
        throw io_error(path, "cannot open for writing");
    }
    f << content;
    if (!f) {
        throw io_error(path, "write failed");
    }
}

template <class Writer>
std::string render(Writer&& w)
{
    std::ostringstream os;
    w(os);
    return os.str();
}

// ---------------------------------------------------------------------------
// JSON. NaN statistics are stored as null.

using nlohmann::json;

inline json number_or_null(double x) { return std::isfinite(x) ? json(x) : json(nullptr); }

inline double number_from(const json& j)
{
    return j.is_null() ? std::numeric_limits<double>::quiet_NaN() : j.get<double>();
}

inline json to_json(const scenarios::ScenarioParameters& p)
{
    return {{"R", p.surface.radius}, {"hbar", p.surface.hbar}, {"mass", p.surface.mass_star},
            {"ell", p.ell},          {"umax", p.u_max},         {"n", p.n},
            {"mode", to_string(p.mode)}, {"k", p.k},           {"tol", p.tol}};
}

inline scenarios::ScenarioParameters parameters_from_json(const json& j)
{
    scenarios::ScenarioParameters p;
    p.surface.radius = j.at("R").get<double>();
    p.surface.hbar = j.at("hbar").get<double>();
    p.surface.mass_star = j.at("mass").get<double>();
    p.ell = j.at("ell").get<int>();
    p.u_max = j.at("umax").get<double>();
    p.n = j.at("n").get<std::size_t>();
    p.mode = grid_mode_from_string(j.at("mode").get<std::string>());
    p.k = j.at("k").get<std::size_t>();
    p.tol = j.at("tol").get<double>();
    return p;
}

inline json to_json(const scenarios::ScenarioStatistics& s)
{
    json levels = json::array();
    for (std::size_t i = 0; i < s.gaps.levels.size(); ++i) {
        levels.push_back({{"energy", s.gaps.levels[i]}, {"doublet", static_cast<bool>(s.gaps.level_is_doublet[i])}});
    }
    return {{"levels", levels},
            {"delta1", number_or_null(s.gaps.delta1)},
            {"delta2", number_or_null(s.gaps.delta2)},
            {"anharmonicity", number_or_null(s.gaps.anharmonicity)},
            {"doublet_splittings", s.doublet_splittings},
            {"bound_count", s.bound_count},
            {"lowest_inner_probability", s.lowest_inner_probability},
            {"lowest_splitting_over_gap", number_or_null(s.lowest_splitting_over_gap)}};
}

inline scenarios::ScenarioStatistics statistics_from_json(const json& j)
{
    scenarios::ScenarioStatistics s;
    for (const auto& l : j.at("levels")) {
        s.gaps.levels.push_back(l.at("energy").get<double>());
        s.gaps.level_is_doublet.push_back(l.at("doublet").get<bool>());
    }
    s.gaps.delta1 = number_from(j.at("delta1"));
    s.gaps.delta2 = number_from(j.at("delta2"));
    s.gaps.anharmonicity = number_from(j.at("anharmonicity"));
    s.doublet_splittings = j.at("doublet_splittings").get<std::vector<double>>();
    s.bound_count = j.at("bound_count").get<std::size_t>();
    s.lowest_inner_probability = j.at("lowest_inner_probability").get<double>();
    s.lowest_splitting_over_gap = number_from(j.at("lowest_splitting_over_gap"));
    return s;
}

inline json to_json(const scenarios::ScenarioResult& r, bool include_vectors = false)
{
    json classes = json::array();
    for (const auto& c : r.spectrum.classifications) {
        classes.push_back({{"class", to_string(c.state)},
                           {"inner_probability", c.inner_probability},
                           {"enlarged_overlap", c.enlarged_overlap},
                           {"window_states", c.window_states}});
    }
    json j = {{"id", r.id},
              {"parameters", to_json(r.parameters)},
              {"eigenvalues", r.spectrum.eigenvalues},
              {"classifications", classes},
              {"statistics", to_json(r.statistics)},
              {"profile_files", r.profile_files}};
    if (include_vectors) {
        j["eigenvectors"] = r.spectrum.eigenvectors;
    }
    return j;
}

inline scenarios::ScenarioResult result_from_json(const json& j)
{
    scenarios::ScenarioResult r;
    r.id = j.at("id").get<std::string>();
    r.parameters = parameters_from_json(j.at("parameters"));
    r.spectrum.eigenvalues = j.at("eigenvalues").get<std::vector<double>>();
    for (const auto& c : j.at("classifications")) {
        ClassificationDetail d;
        d.state = state_class_from_string(c.at("class").get<std::string>());
        d.inner_probability = c.at("inner_probability").get<double>();
        d.enlarged_overlap = c.at("enlarged_overlap").get<double>();
        d.window_states = c.at("window_states").get<std::size_t>();
        r.spectrum.classifications.push_back(d);
    }
    if (j.contains("eigenvectors")) {
        r.spectrum.eigenvectors = j.at("eigenvectors").get<std::vector<std::vector<double>>>();
    }
    r.statistics = statistics_from_json(j.at("statistics"));
    r.profile_files = j.at("profile_files").get<std::vector<std::string>>();
    return r;
}

/// Pretty-printed JSON; nlohmann emits the shortest round-tripping decimal for doubles.
inline std::string dump(const json& j) { return j.dump(2) + "\n"; }

} // namespace beltrami::io
