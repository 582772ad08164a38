// Plain-text persistence: grid snapshots, time-series CSV, profile CSV with
// key=value metadata sidecars, and flat key=value configs.
#pragma once

#include <istream>
#include <string>
#include <utility>
#include <vector>

#include "graphflow/grid.hpp"
#include "graphflow/profile.hpp"
#include "graphflow/series.hpp"

namespace graphflow {

// Round-trip-exact decimal formatting for doubles.
std::string format_double(double v);

// Flat key=value configuration with '#' comments. Insertion order is kept so
// saved files are deterministic.
class KeyValueConfig {
public:
    static KeyValueConfig load(const std::string& path);
    static KeyValueConfig parse(std::istream& in);

    bool contains(const std::string& key) const;
    std::string get(const std::string& key, const std::string& fallback) const;
    double get_num(const std::string& key, double fallback) const;
    int get_int(const std::string& key, int fallback) const;
    bool get_bool(const std::string& key, bool fallback) const;

    void set(const std::string& key, const std::string& value);
    void set_num(const std::string& key, double value);
    void set_int(const std::string& key, int value);
    void set_bool(const std::string& key, bool value);

    void save(const std::string& path) const;
    std::string to_string() const;

    const std::vector<std::pair<std::string, std::string>>& items() const { return items_; }

private:
    std::vector<std::pair<std::string, std::string>> items_;
};

// Snapshot: header lines (dim, extents, counts, origin, t) then row-major CSV
// of node values.
void write_snapshot(const std::string& path, const ScalarField& field, double t);
std::pair<ScalarField, double> read_snapshot(const std::string& path);

void write_series_csv(const std::string& path, const TimeSeries& series);

// Profile CSV with header s,r,z,theta plus a key=value metadata sidecar.
void write_profile_csv(const std::string& path, const ProfileCurve& curve);
void write_profile_meta(const std::string& path, const ProfileCurve& curve, double tol);
ProfileCurve read_profile_csv(const std::string& csv_path, const std::string& meta_path);

} // namespace graphflow
