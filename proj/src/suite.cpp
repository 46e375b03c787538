#include "czkit/suite.hpp"

#include <chrono>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "czkit/bounds.hpp"
#include "czkit/covering.hpp"
#include "czkit/czd.hpp"
#include "czkit/function.hpp"
#include "czkit/interp.hpp"
#include "czkit/io.hpp"
#include "czkit/maximal.hpp"
#include "czkit/rng.hpp"
#include "czkit/smoothing.hpp"

namespace czkit {

using nlohmann::json;

const char* kVersion = "0.1.0";

SuiteConfig SuiteConfig::from_json(const json& j) {
    SuiteConfig c;
    if (j.contains("seed")) c.seed = j.at("seed").get<std::uint64_t>();
    if (j.contains("spaces")) c.spaces = j.at("spaces");
    if (j.contains("R")) c.radii = j.at("R").get<std::vector<double>>();
    if (j.contains("p")) c.exponents = j.at("p").get<std::vector<double>>();
    if (j.contains("kappa")) c.kappa = j.at("kappa").get<double>();
    if (j.contains("trials")) c.trials = j.at("trials").get<int>();
    if (j.contains("checks")) c.checks = j.at("checks").get<std::vector<std::string>>();
    if (j.contains("out")) c.out_dir = j.at("out").get<std::string>();
    return c;
}

json RunReport::full() const {
    json j;
    j["timestamp"] = timestamp;
    j["body"] = body;
    return j;
}

MetricMeasureSpace space_from_descriptor(const json& desc, std::uint64_t seed) {
    MetricMeasureSpace s = [&]() -> MetricMeasureSpace {
        if (desc.contains("file")) return load_space(desc.at("file").get<std::string>());
        const std::string kind = desc.at("generator").get<std::string>();
        if (kind == "line") {
            return make_line(desc.at("n").get<int>(),
                             desc.contains("spacing") ? desc.at("spacing").get<double>() : 1.0);
        }
        if (kind == "grid") return make_grid(desc.at("nx").get<int>(), desc.at("ny").get<int>());
        if (kind == "dyadic") {
            return make_dyadic(desc.at("depth").get<int>(),
                               desc.contains("scale") ? desc.at("scale").get<double>() : 1.0);
        }
        if (kind == "snowflake") {
            return make_snowflake(space_from_descriptor(desc.at("inner"), seed),
                                  desc.at("alpha").get<double>());
        }
        if (kind == "random_points") {
            return make_random_points(desc.at("n").get<int>(), desc.at("dim").get<int>(), seed,
                                      desc.contains("p") ? desc.at("p").get<double>() : 2.0);
        }
        if (kind == "graph_shortest_path") {
            std::vector<std::array<double, 3>> edges;
            for (const auto& e : desc.at("edges")) {
                edges.push_back(
                    {e.at(0).get<double>(), e.at(1).get<double>(), e.at(2).get<double>()});
            }
            return make_graph(desc.at("n").get<int>(), edges);
        }
        throw std::invalid_argument("unknown generator '" + kind + "'");
    }();
    if (desc.contains("weights") && desc.at("weights").get<std::string>() == "random") {
        return with_random_weights(s, seed ^ 0x9e3779b97f4a7c15ULL);
    }
    return s;
}

namespace {

struct Section {
    json j;
    bool pass = true;

    explicit Section(std::string name, bool guaranteed) {
        j["name"] = std::move(name);
        j["guaranteed"] = guaranteed;
        j["reports"] = json::array();
        j["data"] = json::object();
    }

    void add(const BoundReport& r) {
        j["reports"].push_back(report_to_json(r));
        pass = pass && r.pass;
    }

    json finish() {
        j["pass"] = pass;
        return j;
    }
};

// subsets usable as E: an open ball around a seeded center, clipped so the
// diameter stays below the given cap
std::vector<int> seeded_subset(const MetricMeasureSpace& s, Rng& rng, double diam_cap) {
    const int center = rng.index(s.n());
    std::vector<int> out{center};
    const auto& ord = s.sorted_order(center);
    const auto& sd = s.sorted_dist(center);
    for (int k = 1; k < s.n(); ++k) {
        if (sd[k] >= diam_cap / 2.0) break;
        out.push_back(ord[k]);
    }
    std::sort(out.begin(), out.end());
    return out;
}

FunctionOnSpace seeded_function(const MetricMeasureSpace& s, const std::vector<int>& supp,
                                Rng& rng, int coords) {
    FunctionOnSpace f(s.n(), coords);
    for (int x : supp) {
        for (int c = 0; c < coords; ++c) f.set(x, c, rng.uniform(-1.0, 1.0));
    }
    return f;
}

void check_doubling(Section& sec, const MetricMeasureSpace& s, int space_idx) {
    const double r_max = s.n() > 1 ? s.diameter() + 1.0 : 1.0;
    const DoublingProfile prof = doubling_profile(s, r_max);
    json rows = json::array();
    for (std::size_t i = 0; i < prof.values.size(); ++i) {
        const double upper = i < prof.breakpoints.size() ? prof.breakpoints[i] : prof.r_max;
        rows.push_back({space_idx, upper, prof.values[i]});
    }
    sec.j["data"]["profile_rows"].push_back(rows);

    bool monotone = true;
    for (std::size_t i = 1; i < prof.values.size(); ++i) {
        monotone = monotone && prof.values[i] >= prof.values[i - 1];
    }
    BoundReport r;
    r.name = "doubling profile space " + std::to_string(space_idx);
    r.claimed_constant = prof.values.back();
    r.measured_lhs = doubling_constant(s, r_max);
    r.measured_rhs = 1.0;
    r.pass = monotone && r.measured_lhs == prof.at(r_max) && prof.exact;
    r.ratio = r.pass ? 1.0 : 0.0;
    sec.add(r);
}

void check_covering(Section& sec, const MetricMeasureSpace& s, double R, Rng& rng,
                    int space_idx) {
    // vitali on a seeded subset with seeded radii
    const auto E = seeded_subset(s, rng, 2.0 * R * 0.9);
    std::vector<double> radii(E.size());
    for (double& r : radii) r = rng.dyadic(0.25, 1.0, 8) * R;
    const VitaliCover vc = vitali_cover(s, E, radii, R);

    bool disjoint = true;
    for (std::size_t a = 0; a < vc.centers.size() && disjoint; ++a) {
        const auto ball_a = s.ball_members(vc.centers[a], vc.radii[a]);
        for (std::size_t b = a + 1; b < vc.centers.size() && disjoint; ++b) {
            const auto ball_b = s.ball_members(vc.centers[b], vc.radii[b]);
            for (int y : ball_b) {
                if (std::binary_search(ball_a.begin(), ball_a.end(), y)) {
                    disjoint = false;
                    break;
                }
            }
        }
    }
    bool covered = true;
    for (int e : E) {
        bool hit = false;
        for (std::size_t a = 0; a < vc.centers.size() && !hit; ++a) {
            hit = s.dist(vc.centers[a], e) < 3.0 * vc.radii[a];
        }
        covered = covered && hit;
    }
    BoundReport r;
    r.name = "vitali cover space " + std::to_string(space_idx);
    r.pass = disjoint && covered;
    r.claimed_constant = 3.0;
    r.measured_lhs = static_cast<double>(vc.centers.size());
    r.measured_rhs = static_cast<double>(E.size());
    r.ratio = r.pass ? 1.0 : 0.0;
    sec.add(r);

    // whitney on a seeded ball, when it is proper and within reach of the
    // complement
    const auto U = seeded_subset(s, rng, R * 0.9);
    if (static_cast<int>(U.size()) < s.n()) {
        bool reachable = true;
        std::vector<char> in_u(s.n(), 0);
        for (int x : U) in_u[x] = 1;
        std::vector<int> comp;
        for (int x = 0; x < s.n(); ++x) {
            if (!in_u[x]) comp.push_back(x);
        }
        for (int x : U) reachable = reachable && s.dist_to_set(x, comp) <= R;
        if (reachable) {
            const WhitneyCover wc = whitney_cover(s, U, R);
            const auto counts = overlap_counts(s, wc.centers, wc.radii);
            bool ok = true;
            int worst = 0;
            for (int x = 0; x < s.n(); ++x) {
                if (in_u[x]) {
                    ok = ok && counts[x] >= 1 &&
                         static_cast<double>(counts[x]) <= wc.overlap_bound * (1.0 + 1e-9);
                    worst = std::max(worst, counts[x]);
                } else {
                    ok = ok && counts[x] == 0;
                }
            }
            const double kappa = 2.0 + std::ldexp(1.0, -20);
            for (std::size_t i = 0; i < wc.centers.size() && ok; ++i) {
                bool escapes = false;
                const double* row = s.dist_row(wc.centers[i]);
                for (int y : comp) {
                    if (row[y] < kappa * wc.radii[i]) {
                        escapes = true;
                        break;
                    }
                }
                ok = ok && escapes && wc.radii[i] > 0.0 && wc.radii[i] <= R / 2.0;
            }
            BoundReport w;
            w.name = "whitney cover space " + std::to_string(space_idx);
            w.pass = ok;
            w.claimed_constant = wc.overlap_bound;
            w.measured_lhs = static_cast<double>(worst);
            w.measured_rhs = 1.0;
            w.ratio = wc.overlap_bound > 0 ? worst / wc.overlap_bound : 0.0;
            sec.add(w);
            json hist = json::object();
            for (int x = 0; x < s.n(); ++x) {
                if (in_u[x]) {
                    const std::string key = std::to_string(counts[x]);
                    hist[key] = hist.contains(key) ? hist[key].get<int>() + 1 : 1;
                }
            }
            sec.j["data"]["overlap_hist"].push_back(hist);
        }
    }
}

void check_maximal(Section& sec, const MetricMeasureSpace& s, double R,
                   const std::vector<double>& ps, Rng& rng, int space_idx) {
    const auto E = seeded_subset(s, rng, 5.9 * R);
    const auto f = seeded_function(s, E, rng, 1);
    sec.add(check_comparison(s, f, R));
    sec.add(check_weak11(s, f, E, R));
    for (double p : ps) {
        BoundReport r = check_lp_bound(s, f, E, R, p);
        sec.j["data"]["ratio_vs_p"].push_back(
            {r.name, p, r.ratio, r.claimed_constant});
        sec.add(r);
    }
    sec.add(check_lebesgue_points(s, f));
    (void)space_idx;
}

void check_czd_section(Section& sec, const MetricMeasureSpace& s, double R, double kappa,
                       Rng& rng, int space_idx) {
    const auto E = seeded_subset(s, rng, 0.9 * R);
    const auto f = seeded_function(s, E, rng, 1);
    const double threshold = czd_admissibility_threshold(s, f, E, R, kappa);
    const double alpha = threshold > 0.0 ? 2.0 * threshold : 1.0;
    const auto dec = cz_decompose(s, f, E, R, kappa, alpha);
    for (auto& r : certify_czd(s, f, dec)) {
        r.name += " space " + std::to_string(space_idx);
        sec.add(r);
    }
}

void check_phi(Section& sec) {
    bool ok = true;
    for (int i = 1; i <= 32; ++i) {
        const double p = 1.0 + i * 0.25;
        const double expect = std::pow(p / (p - 1.0), 1.0 / p);
        ok = ok && std::fabs(phi(std::numeric_limits<double>::infinity(), p) - expect) <=
                       1e-12 * expect;
        ok = ok && phi(p + 1.0, p + 1.0) == 1.0;
    }
    BoundReport closed;
    closed.name = "phi closed forms";
    closed.pass = ok;
    closed.ratio = ok ? 1.0 : 0.0;
    sec.add(closed);

    const double sup = phi_region_sup(2.0, 2.0, 64);
    BoundReport region;
    region.name = "phi region sup (c1=c2=2)";
    region.measured_lhs = sup;
    region.measured_rhs = 1.0;
    region.claimed_constant = std::numeric_limits<double>::infinity();
    region.pass = std::isfinite(sup);
    sec.add(region);

    json rows = json::array();
    for (double r : {2.0, 4.0, std::numeric_limits<double>::infinity()}) {
        for (int i = 1; i <= 16; ++i) {
            const double p = 1.0 + 0.125 * i;
            if (!std::isinf(r) && p > r) continue;
            rows.push_back({std::isinf(r) ? -1.0 : r, p, phi(r, p)});
        }
    }
    sec.j["data"]["phi_surface"] = rows;
}

void check_kernel_section(Section& sec, const MetricMeasureSpace& s, double R, int space_idx) {
    const BumpProfile h = BumpProfile::make(7.0 / 6.0);
    const double r = std::min(R, std::max(s.min_positive_distance(), R / 4.0));
    const SmoothKernel k = build_kernel(s, h, r, R);
    for (auto& rep : certify_kernel(s, k)) {
        rep.name += " space " + std::to_string(space_idx);
        sec.add(rep);
    }
    const auto u = t_r_one(s, h, r);
    bool sandwich = true;
    for (int x = 0; x < s.n(); ++x) {
        const double lo = s.ball_measure(x, r);
        const double hi = s.ball_measure(x, h.eta * r);
        sandwich = sandwich && u[x] >= lo * (1.0 - 1e-9) && u[x] <= hi * (1.0 + 1e-9);
    }
    BoundReport sw;
    sw.name = "t_r sandwich space " + std::to_string(space_idx);
    sw.pass = sandwich;
    sw.ratio = sandwich ? 1.0 : 0.0;
    sec.add(sw);
}

void check_czo_section(Section& sec, const MetricMeasureSpace& s, double R, double kappa,
                       const std::vector<double>& ps, int trials, std::uint64_t seed,
                       int space_idx) {
    const BumpProfile h = BumpProfile::make(7.0 / 6.0);
    const double r = R / 8.0;
    const SmoothKernel kern = build_kernel(s, h, r, R);
    Rng rng(seed);
    const auto E = seeded_subset(s, rng, 0.9 * R);
    for (auto& rep : check_czo_bound(s, kern.S, E, R, kappa, 2.0, ps, trials, seed)) {
        rep.name += " space " + std::to_string(space_idx);
        sec.j["data"]["ratio_vs_p"].push_back({rep.name, 0.0, rep.ratio, rep.claimed_constant});
        sec.add(rep);
    }
}

void check_mixed_section(Section& sec, const MetricMeasureSpace& s, double R, Rng& rng,
                         int space_idx) {
    MixedNormTensor t;
    t.axes = {3, s.n()};
    t.weights = {{1.0, 0.5, 2.0}, s.weights()};
    t.exponents = {2.0, 3.0};
    t.values.resize(static_cast<std::size_t>(3) * s.n());
    for (double& v : t.values) v = rng.uniform(-1.0, 1.0);
    BoundReport r = check_mixed_maximal(s, t, R);
    r.name += " space " + std::to_string(space_idx);
    sec.add(r);
    BoundReport schur = check_schur_rowsum(s, R);
    schur.name += " space " + std::to_string(space_idx);
    sec.add(schur);
}

}  // namespace

RunReport run_suite(const SuiteConfig& config) {
    RunReport report;
    {
        const auto now = std::chrono::system_clock::now().time_since_epoch();
        report.timestamp =
            std::to_string(std::chrono::duration_cast<std::chrono::seconds>(now).count());
    }
    report.body["tool_version"] = kVersion;
    report.body["config"] = {{"seed", config.seed},
                             {"R", config.radii},
                             {"p", config.exponents},
                             {"kappa", config.kappa},
                             {"trials", config.trials},
                             {"checks", config.checks},
                             {"spaces", config.spaces}};
    report.body["checks"] = json::array();

    std::vector<MetricMeasureSpace> spaces;
    for (std::size_t i = 0; i < config.spaces.size(); ++i) {
        spaces.push_back(space_from_descriptor(config.spaces[i], config.seed + i));
    }

    int executed = 0;
    for (const std::string& name : config.checks) {
        Section sec(name, name != "doubling" && name != "phi");
        try {
            if (name == "phi") {
                check_phi(sec);
            } else {
                for (std::size_t i = 0; i < spaces.size(); ++i) {
                    Rng rng(config.seed * 1000003ULL + i);
                    for (double R : config.radii) {
                        if (name == "doubling") {
                            check_doubling(sec, spaces[i], static_cast<int>(i));
                            break;  // radius-independent
                        } else if (name == "covering") {
                            check_covering(sec, spaces[i], R, rng, static_cast<int>(i));
                        } else if (name == "maximal") {
                            check_maximal(sec, spaces[i], R, config.exponents, rng,
                                          static_cast<int>(i));
                        } else if (name == "czd") {
                            check_czd_section(sec, spaces[i], R, config.kappa, rng,
                                              static_cast<int>(i));
                        } else if (name == "kernel") {
                            check_kernel_section(sec, spaces[i], R, static_cast<int>(i));
                        } else if (name == "czo") {
                            check_czo_section(sec, spaces[i], R, config.kappa,
                                              config.exponents, config.trials,
                                              config.seed + 77 * i, static_cast<int>(i));
                        } else if (name == "mixed") {
                            check_mixed_section(sec, spaces[i], R, rng, static_cast<int>(i));
                        } else {
                            throw std::invalid_argument("unknown check '" + name + "'");
                        }
                    }
                }
            }
        } catch (const std::invalid_argument& e) {
            // infeasible preconditions are reported per-check, not fatally
            BoundReport r;
            r.name = "skipped: " + std::string(e.what());
            r.pass = true;
            sec.add(r);
        }
        report.all_pass = report.all_pass && sec.pass;
        report.body["checks"].push_back(sec.finish());
        ++executed;
    }
    json summary;
    summary["sections"] = executed;
    summary["pass"] = report.all_pass;
    report.body["summary"] = summary;
    return report;
}

void emit_plot_data(const RunReport& report, const std::string& kind, const std::string& path) {
    std::ostringstream out;
    if (kind == "phi_surface") {
        out << "r,p,phi\n";
        for (const auto& sec : report.body.at("checks")) {
            if (!sec.at("data").contains("phi_surface")) continue;
            for (const auto& row : sec.at("data").at("phi_surface")) {
                out << format_double(row.at(0).get<double>()) << ','
                    << format_double(row.at(1).get<double>()) << ','
                    << format_double(row.at(2).get<double>()) << '\n';
            }
        }
    } else if (kind == "ratio_vs_p") {
        out << "check,p,ratio,bound\n";
        for (const auto& sec : report.body.at("checks")) {
            if (!sec.at("data").contains("ratio_vs_p")) continue;
            for (const auto& row : sec.at("data").at("ratio_vs_p")) {
                out << row.at(0).get<std::string>() << ','
                    << format_double(row.at(1).get<double>()) << ','
                    << format_double(row.at(2).get<double>()) << ','
                    << format_double(row.at(3).get<double>()) << '\n';
            }
        }
    } else if (kind == "overlap_hist") {
        out << "overlap,count\n";
        for (const auto& sec : report.body.at("checks")) {
            if (!sec.at("data").contains("overlap_hist")) continue;
            for (const auto& hist : sec.at("data").at("overlap_hist")) {
                for (const auto& [key, value] : hist.items()) {
                    out << key << ',' << value.get<int>() << '\n';
                }
            }
        }
    } else if (kind == "profile") {
        out << "space,r_upper,D\n";
        for (const auto& sec : report.body.at("checks")) {
            if (!sec.at("data").contains("profile_rows")) continue;
            for (const auto& rows : sec.at("data").at("profile_rows")) {
                for (const auto& row : rows) {
                    out << row.at(0).get<int>() << ','
                        << format_double(row.at(1).get<double>()) << ','
                        << format_double(row.at(2).get<double>()) << '\n';
                }
            }
        }
    } else {
        throw std::invalid_argument("emit_plot_data: unknown kind '" + kind + "'");
    }
    save_text_file(path, out.str());
}

}  // namespace czkit
