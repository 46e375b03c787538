#include "czkit/io.hpp"

#include <array>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace czkit {

using nlohmann::json;

namespace {

std::vector<double> metric_from_json(const json& m, int n) {
    const std::string type = m.at("type").get<std::string>();
    if (type == "matrix") {
        const auto& data = m.at("data");
        std::vector<double> flat;
        flat.reserve(static_cast<std::size_t>(n) * n);
        for (const auto& row : data) {
            for (const auto& v : row) flat.push_back(v.get<double>());
        }
        if (flat.size() != static_cast<std::size_t>(n) * n) {
            throw std::invalid_argument("space file: matrix is not n x n");
        }
        return flat;
    }
    if (type == "euclidean") {
        const auto coords = m.at("coords").get<std::vector<std::vector<double>>>();
        const double p = m.contains("p") ? m.at("p").get<double>() : 2.0;
        if (static_cast<int>(coords.size()) != n) {
            throw std::invalid_argument("space file: coords count != n");
        }
        if (!(p >= 1.0)) throw std::invalid_argument("space file: euclidean p must be >= 1");
        std::vector<double> flat(static_cast<std::size_t>(n) * n, 0.0);
        for (int i = 0; i < n; ++i) {
            for (int j2 = i + 1; j2 < n; ++j2) {
                double d = 0.0;
                if (std::isinf(p)) {
                    for (std::size_t c = 0; c < coords[i].size(); ++c) {
                        d = std::max(d, std::fabs(coords[i][c] - coords[j2][c]));
                    }
                } else if (p == 2.0) {
                    for (std::size_t c = 0; c < coords[i].size(); ++c) {
                        const double t = coords[i][c] - coords[j2][c];
                        d += t * t;
                    }
                    d = std::sqrt(d);
                } else {
                    for (std::size_t c = 0; c < coords[i].size(); ++c) {
                        d += std::pow(std::fabs(coords[i][c] - coords[j2][c]), p);
                    }
                    d = std::pow(d, 1.0 / p);
                }
                flat[static_cast<std::size_t>(i) * n + j2] = d;
                flat[static_cast<std::size_t>(j2) * n + i] = d;
            }
        }
        return flat;
    }
    if (type == "graph") {
        std::vector<std::array<double, 3>> edges;
        for (const auto& e : m.at("edges")) {
            edges.push_back({e.at(0).get<double>(), e.at(1).get<double>(), e.at(2).get<double>()});
        }
        const MetricMeasureSpace g = make_graph(n, edges);
        return std::vector<double>(g.dist_row(0),
                                   g.dist_row(0) + static_cast<std::size_t>(n) * n);
    }
    if (type == "snowflake") {
        const double alpha = m.at("alpha").get<double>();
        if (!(alpha > 0.0) || !(alpha < 1.0)) {
            throw std::invalid_argument("space file: snowflake alpha must lie in (0,1)");
        }
        std::vector<double> inner = metric_from_json(m.at("inner"), n);
        for (double& v : inner) {
            if (v != 0.0) v = std::pow(v, alpha);
        }
        return inner;
    }
    throw std::invalid_argument("space file: unknown metric type '" + type + "'");
}

}  // namespace

MetricMeasureSpace space_from_json(const json& j) {
    const int n = j.at("n").get<int>();
    if (n < 1) throw std::invalid_argument("space file: n must be positive");
    std::vector<double> weights;
    if (j.contains("weights")) {
        weights = j.at("weights").get<std::vector<double>>();
        if (static_cast<int>(weights.size()) != n) {
            throw std::invalid_argument("space file: weights count != n");
        }
    } else {
        weights.assign(n, 1.0);
    }
    return MetricMeasureSpace::build(metric_from_json(j.at("metric"), n), std::move(weights));
}

MetricMeasureSpace load_space(const std::string& path) {
    return space_from_json(load_json_file(path));
}

FunctionOnSpace function_from_json(const json& j) {
    const auto values = j.at("values").get<std::vector<std::vector<double>>>();
    const int n = static_cast<int>(values.size());
    if (n == 0) throw std::invalid_argument("function file: empty values");
    const int m = static_cast<int>(values[0].size());
    std::vector<double> flat;
    flat.reserve(static_cast<std::size_t>(n) * m);
    for (const auto& row : values) {
        if (static_cast<int>(row.size()) != m) {
            throw std::invalid_argument("function file: ragged rows");
        }
        flat.insert(flat.end(), row.begin(), row.end());
    }
    const double q = j.contains("vec_norm") && j.at("vec_norm").is_string()
                         ? std::numeric_limits<double>::infinity()
                     : j.contains("vec_norm") ? j.at("vec_norm").get<double>()
                                              : 2.0;
    return FunctionOnSpace(n, m, std::move(flat), q);
}

FunctionOnSpace load_function(const std::string& path) {
    if (path.size() > 4 && path.substr(path.size() - 4) == ".csv") {
        std::ifstream in(path);
        if (!in) throw std::invalid_argument("cannot read " + path);
        std::vector<double> flat;
        int m = -1, n = 0;
        std::string line;
        while (std::getline(in, line)) {
            if (line.empty()) continue;
            std::stringstream ss(line);
            std::string cell;
            int cols = 0;
            while (std::getline(ss, cell, ',')) {
                flat.push_back(std::stod(cell));
                ++cols;
            }
            if (m < 0) m = cols;
            if (cols != m) throw std::invalid_argument("function csv: ragged rows");
            ++n;
        }
        if (n == 0) throw std::invalid_argument("function csv: empty");
        return FunctionOnSpace(n, m, std::move(flat));
    }
    return function_from_json(load_json_file(path));
}

void save_function_csv(const std::string& path, const FunctionOnSpace& f) {
    std::ofstream out(path);
    if (!out) throw std::invalid_argument("cannot write " + path);
    for (int x = 0; x < f.points(); ++x) {
        for (int c = 0; c < f.coords(); ++c) {
            if (c) out << ',';
            out << format_double(f.value(x, c));
        }
        out << '\n';
    }
}

std::vector<double> load_kernel_csv(const std::string& path, int n) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot read " + path);
    std::vector<double> K;
    K.reserve(static_cast<std::size_t>(n) * n);
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) K.push_back(std::stod(cell));
    }
    if (K.size() != static_cast<std::size_t>(n) * n) {
        throw std::invalid_argument("kernel csv: expected " + std::to_string(n) + "x" +
                                    std::to_string(n) + " entries");
    }
    return K;
}

void save_kernel_csv(const std::string& path, const std::vector<double>& K, int n) {
    std::ofstream out(path);
    if (!out) throw std::invalid_argument("cannot write " + path);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            if (j) out << ',';
            out << format_double(K[static_cast<std::size_t>(i) * n + j]);
        }
        out << '\n';
    }
}

MixedNormTensor tensor_from_json(const json& j) {
    MixedNormTensor t;
    t.axes = j.at("axes").get<std::vector<int>>();
    t.weights = j.at("weights").get<std::vector<std::vector<double>>>();
    t.exponents = j.at("exponents").get<std::vector<double>>();
    t.values = j.at("values").get<std::vector<double>>();
    return t;
}

MixedNormTensor load_tensor(const std::string& path) {
    return tensor_from_json(load_json_file(path));
}

json report_to_json(const BoundReport& r) {
    json j;
    j["name"] = r.name;
    j["claimed_constant"] = r.claimed_constant;
    j["measured_lhs"] = r.measured_lhs;
    j["measured_rhs"] = r.measured_rhs;
    j["ratio"] = std::isfinite(r.ratio) ? r.ratio : -1.0;
    j["pass"] = r.pass;
    if (!r.witness.empty()) j["witness"] = r.witness;
    return j;
}

void save_profile_csv(const std::string& path, const DoublingProfile& p) {
    std::ofstream out(path);
    if (!out) throw std::invalid_argument("cannot write " + path);
    out << "r_upper,D\n";
    for (std::size_t i = 0; i < p.values.size(); ++i) {
        const double upper = i < p.breakpoints.size() ? p.breakpoints[i] : p.r_max;
        out << format_double(upper) << ',' << format_double(p.values[i]) << '\n';
    }
}

json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot read " + path);
    json j;
    in >> j;
    return j;
}

void save_json_file(const std::string& path, const json& j) {
    std::ofstream out(path);
    if (!out) throw std::invalid_argument("cannot write " + path);
    out << j.dump(2) << '\n';
}

void save_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw std::invalid_argument("cannot write " + path);
    out << text;
}

std::string format_double(double v) {
    std::array<char, 32> buf{};
    std::snprintf(buf.data(), buf.size(), "%.17g", v);
    return buf.data();
}

}  // namespace czkit
