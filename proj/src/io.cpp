#include "graphflow/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace graphflow {

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

namespace {

std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    const auto b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    return out;
}

std::ifstream open_in(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot read " + path);
    return in;
}

} // namespace

KeyValueConfig KeyValueConfig::load(const std::string& path) {
    auto in = open_in(path);
    return parse(in);
}

KeyValueConfig KeyValueConfig::parse(std::istream& in) {
    KeyValueConfig cfg;
    std::string line;
    while (std::getline(in, line)) {
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw std::runtime_error("config line without '=': " + line);
        cfg.set(trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
    }
    return cfg;
}

bool KeyValueConfig::contains(const std::string& key) const {
    for (const auto& [k, v] : items_)
        if (k == key) return true;
    return false;
}

std::string KeyValueConfig::get(const std::string& key, const std::string& fallback) const {
    for (const auto& [k, v] : items_)
        if (k == key) return v;
    return fallback;
}

double KeyValueConfig::get_num(const std::string& key, double fallback) const {
    for (const auto& [k, v] : items_)
        if (k == key) return std::stod(v);
    return fallback;
}

int KeyValueConfig::get_int(const std::string& key, int fallback) const {
    for (const auto& [k, v] : items_)
        if (k == key) return std::stoi(v);
    return fallback;
}

bool KeyValueConfig::get_bool(const std::string& key, bool fallback) const {
    for (const auto& [k, v] : items_) {
        if (k != key) continue;
        if (v == "true" || v == "1" || v == "yes") return true;
        if (v == "false" || v == "0" || v == "no") return false;
        throw std::runtime_error("config key '" + key + "' is not a boolean: " + v);
    }
    return fallback;
}

void KeyValueConfig::set(const std::string& key, const std::string& value) {
    for (auto& [k, v] : items_) {
        if (k == key) {
            v = value;
            return;
        }
    }
    items_.emplace_back(key, value);
}

void KeyValueConfig::set_num(const std::string& key, double value) {
    set(key, format_double(value));
}
void KeyValueConfig::set_int(const std::string& key, int value) {
    set(key, std::to_string(value));
}
void KeyValueConfig::set_bool(const std::string& key, bool value) {
    set(key, value ? "true" : "false");
}

void KeyValueConfig::save(const std::string& path) const {
    auto out = open_out(path);
    out << to_string();
}

std::string KeyValueConfig::to_string() const {
    std::ostringstream os;
    for (const auto& [k, v] : items_) os << k << "=" << v << "\n";
    return os.str();
}

void write_snapshot(const std::string& path, const ScalarField& field, double t) {
    auto out = open_out(path);
    const auto& g = field.grid();
    out << "dim " << g.dim() << "\n";
    out << "extents " << format_double(g.extent(0));
    if (g.dim() == 2) out << " " << format_double(g.extent(1));
    out << "\n";
    out << "counts " << g.count(0);
    if (g.dim() == 2) out << " " << g.count(1);
    out << "\n";
    out << "origin " << format_double(g.origin(0));
    if (g.dim() == 2) out << " " << format_double(g.origin(1));
    out << "\n";
    out << "t " << format_double(t) << "\n";
    for (int i = 0; i < g.count(0); ++i) {
        for (int j = 0; j < g.count(1); ++j) {
            if (j) out << ",";
            out << format_double(field.at(i, j));
        }
        out << "\n";
    }
}

std::pair<ScalarField, double> read_snapshot(const std::string& path) {
    auto in = open_in(path);
    std::string key;
    int dim = 0;
    std::array<double, 2> extents{0.0, 0.0}, origin{0.0, 0.0};
    std::array<int, 2> counts{0, 1};
    double t = 0.0;
    in >> key >> dim;
    if (key != "dim") throw std::runtime_error("snapshot: expected 'dim'");
    in >> key >> extents[0];
    if (dim == 2) in >> extents[1];
    in >> key >> counts[0];
    if (dim == 2) in >> counts[1];
    in >> key >> origin[0];
    if (dim == 2) in >> origin[1];
    in >> key >> t;
    PeriodicGrid grid(dim, extents, counts, origin);
    ScalarField field(grid);
    std::stringstream blob;
    blob << in.rdbuf();
    std::string values = blob.str();
    for (char& ch : values)
        if (ch == ',') ch = ' ';
    std::istringstream vs(values);
    for (int i = 0; i < counts[0]; ++i)
        for (int j = 0; j < counts[1]; ++j)
            if (!(vs >> field.at(i, j)))
                throw std::runtime_error("snapshot: truncated value table");
    return {std::move(field), t};
}

void write_series_csv(const std::string& path, const TimeSeries& series) {
    auto out = open_out(path);
    for (std::size_t k = 0; k < series.columns.size(); ++k) {
        if (k) out << ",";
        out << series.columns[k];
    }
    out << "\n";
    for (const auto& row : series.rows) {
        for (std::size_t k = 0; k < row.size(); ++k) {
            if (k) out << ",";
            out << format_double(row[k]);
        }
        out << "\n";
    }
}

void write_profile_csv(const std::string& path, const ProfileCurve& curve) {
    auto out = open_out(path);
    out << "s,r,z,theta\n";
    for (const auto& p : curve.samples)
        out << format_double(p.s) << "," << format_double(p.state.r) << ","
            << format_double(p.state.z) << "," << format_double(p.state.theta) << "\n";
}

void write_profile_meta(const std::string& path, const ProfileCurve& curve, double tol) {
    KeyValueConfig meta;
    meta.set_int("n", curve.n);
    meta.set_num("ell", curve.inner_radius);
    meta.set_num("r_out", curve.outer_radius);
    meta.set_num("delta", curve.max_height);
    meta.set_num("t_star", curve.extinction_time);
    meta.set_num("step", curve.step);
    meta.set_num("tol", tol);
    meta.set_num("miss", curve.miss);
    meta.set_int("upper_count", static_cast<int>(curve.upper_count));
    meta.save(path);
}

ProfileCurve read_profile_csv(const std::string& csv_path, const std::string& meta_path) {
    ProfileCurve curve;
    const auto meta = KeyValueConfig::load(meta_path);
    curve.n = meta.get_int("n", 2);
    curve.inner_radius = meta.get_num("ell", 0.0);
    curve.outer_radius = meta.get_num("r_out", 0.0);
    curve.max_height = meta.get_num("delta", 0.0);
    curve.extinction_time = meta.get_num("t_star", 1.0);
    curve.step = meta.get_num("step", 1e-4);
    curve.miss = meta.get_num("miss", 0.0);
    curve.upper_count = static_cast<std::size_t>(meta.get_int("upper_count", 0));

    auto in = open_in(csv_path);
    std::string line;
    if (!std::getline(in, line) || line.rfind("s,r,z,theta", 0) != 0)
        throw std::runtime_error("profile csv: bad header");
    while (std::getline(in, line)) {
        if (trim(line).empty()) continue;
        ProfileSample p;
        std::istringstream ls(line);
        std::string cell;
        std::getline(ls, cell, ',');
        p.s = std::stod(cell);
        std::getline(ls, cell, ',');
        p.state.r = std::stod(cell);
        std::getline(ls, cell, ',');
        p.state.z = std::stod(cell);
        std::getline(ls, cell, ',');
        p.state.theta = std::stod(cell);
        curve.samples.push_back(p);
    }
    if (curve.upper_count == 0 || curve.upper_count > curve.samples.size())
        throw std::runtime_error("profile csv: inconsistent upper_count");
    return curve;
}

} // namespace graphflow
