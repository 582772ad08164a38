// Per-record time series: t, sup, inf, mean, probe values, named extra columns.
#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace graphflow {

struct TimeSeries {
    std::vector<std::string> columns; // column 0 is always "t"
    std::vector<std::vector<double>> rows;

    std::size_t column_index(const std::string& name) const; // throws if missing
    bool has_column(const std::string& name) const;
    std::vector<double> column(const std::string& name) const;
    std::vector<double> times() const { return column("t"); }
    std::size_t size() const { return rows.size(); }

    // Rows with t in [t_lo, t_hi], as (times, values of the named column).
    std::pair<std::vector<double>, std::vector<double>>
    window(const std::string& name, double t_lo, double t_hi) const;
};

} // namespace graphflow
