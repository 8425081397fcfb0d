#pragma once

#include <cstdio>
#include <string>
#include <utility>
#include <vector>

namespace beltrami {

/// Shortest decimal form that reads back to the same double (%.17g).
inline std::string format_number(double x)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

/// Column-oriented table of u-indexed quantities, one label per column.
struct ProfileTable {
    std::string name;
    std::vector<double> u;
    std::vector<std::string> labels;
    std::vector<std::vector<double>> columns;
    std::vector<std::pair<std::string, std::string>> metadata;

    template <class F>
    void add_column(std::string label, F&& f)
    {
        std::vector<double> values;
        values.reserve(u.size());
        for (double x : u) {
            values.push_back(f(x));
        }
        labels.push_back(std::move(label));
        columns.push_back(std::move(values));
    }

    std::size_t rows() const noexcept { return u.size(); }

    bool operator==(const ProfileTable&) const = default;
};

} // namespace beltrami
