#include "graphflow/series.hpp"

#include <stdexcept>

namespace graphflow {

std::size_t TimeSeries::column_index(const std::string& name) const {
    for (std::size_t i = 0; i < columns.size(); ++i)
        if (columns[i] == name) return i;
    throw std::out_of_range("TimeSeries: no column named '" + name + "'");
}

bool TimeSeries::has_column(const std::string& name) const {
    for (const auto& c : columns)
        if (c == name) return true;
    return false;
}

std::vector<double> TimeSeries::column(const std::string& name) const {
    const std::size_t k = column_index(name);
    std::vector<double> out;
    out.reserve(rows.size());
    for (const auto& r : rows) out.push_back(r[k]);
    return out;
}

std::pair<std::vector<double>, std::vector<double>>
TimeSeries::window(const std::string& name, double t_lo, double t_hi) const {
    const std::size_t k = column_index(name);
    std::vector<double> ts, vs;
    for (const auto& r : rows) {
        if (r[0] >= t_lo && r[0] <= t_hi) {
            ts.push_back(r[0]);
            vs.push_back(r[k]);
        }
    }
    return {ts, vs};
}

} // namespace graphflow
