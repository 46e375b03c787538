#include <cmath>
#include <filesystem>
#include <iostream>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "czkit/bounds.hpp"
#include "czkit/covering.hpp"
#include "czkit/czd.hpp"
#include "czkit/interp.hpp"
#include "czkit/io.hpp"
#include "czkit/maximal.hpp"
#include "czkit/smoothing.hpp"
#include "czkit/suite.hpp"

namespace {

using czkit::BoundReport;
using nlohmann::json;

std::vector<int> parse_ids(const std::string& csv) {
    std::vector<int> out;
    std::stringstream ss(csv);
    std::string cell;
    while (std::getline(ss, cell, ',')) {
        if (!cell.empty()) out.push_back(std::stoi(cell));
    }
    return out;
}

double parse_exponent(const std::string& v) {
    if (v == "inf" || v == "infinity") return std::numeric_limits<double>::infinity();
    return std::stod(v);
}

std::vector<double> parse_exponents(const std::string& csv) {
    std::vector<double> out;
    std::stringstream ss(csv);
    std::string cell;
    while (std::getline(ss, cell, ',')) {
        if (!cell.empty()) out.push_back(parse_exponent(cell));
    }
    return out;
}

int print_reports(const std::vector<BoundReport>& reports, bool guaranteed) {
    bool ok = true;
    for (const auto& r : reports) {
        std::cout << (r.pass ? "[PASS] " : "[FAIL] ") << r.name
                  << "  lhs=" << r.measured_lhs << " bound=" << r.claimed_constant * r.measured_rhs
                  << " ratio=" << r.ratio;
        if (!r.witness.empty()) std::cout << "  (" << r.witness << ")";
        std::cout << "\n";
        ok = ok && r.pass;
    }
    if (!ok && guaranteed) {
        std::cout << "*** IMPLEMENTATION BUG SUSPECTED: a proved inequality failed ***\n";
    }
    return ok ? 0 : 1;
}

json reports_to_json(const std::vector<BoundReport>& reports) {
    json arr = json::array();
    for (const auto& r : reports) arr.push_back(czkit::report_to_json(r));
    return arr;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"czkit: certified covering, maximal-function, Calderon-Zygmund "
                 "decomposition and operator-bound computations on finite metric "
                 "measure spaces"};
    app.set_version_flag("--version", std::string("czkit ") + czkit::kVersion);
    app.require_subcommand(1);

    try {
        // space
        auto* space_cmd = app.add_subcommand("space", "space utilities");
        space_cmd->require_subcommand(1);
        std::string space_file;
        auto* validate = space_cmd->add_subcommand("validate", "validate a space file");
        validate->add_option("file", space_file)->required();
        validate->callback([&] {
            const auto s = czkit::load_space(space_file);
            std::cout << "valid space: n=" << s.n() << " diameter=" << s.diameter()
                      << " mass=" << s.total_mass() << "\n";
        });

        std::string doubling_file, doubling_out;
        double rmax = 1.0;
        auto* doubling = space_cmd->add_subcommand("doubling", "exact doubling profile");
        doubling->add_option("file", doubling_file)->required();
        doubling->add_option("--rmax", rmax)->required();
        doubling->add_option("--out", doubling_out);
        doubling->callback([&] {
            const auto s = czkit::load_space(doubling_file);
            const auto prof = czkit::doubling_profile(s, rmax);
            std::cout << "D_" << rmax << " = " << prof.at(rmax)
                      << (prof.exact ? " (profile exact)" : " (profile truncated)") << "\n";
            if (!doubling_out.empty()) czkit::save_profile_csv(doubling_out, prof);
        });

        // cover
        auto* cover_cmd = app.add_subcommand("cover", "covering lemmas");
        cover_cmd->require_subcommand(1);
        std::string cov_space, cov_set, cov_radii;
        double cov_R = 1.0, cov_radius_const = 0.0;
        auto* vitali = cover_cmd->add_subcommand("vitali", "greedy disjoint 3r-cover");
        vitali->add_option("space", cov_space)->required();
        vitali->add_option("--set", cov_set)->required();
        vitali->add_option("--radii", cov_radii, "JSON array aligned with --set");
        vitali->add_option("--radii-const", cov_radius_const);
        vitali->add_option("--R", cov_R)->required();
        vitali->callback([&] {
            const auto s = czkit::load_space(cov_space);
            const auto E = parse_ids(cov_set);
            std::vector<double> radii;
            if (!cov_radii.empty()) {
                radii = czkit::load_json_file(cov_radii).get<std::vector<double>>();
            } else if (cov_radius_const > 0.0) {
                radii.assign(E.size(), cov_radius_const);
            } else {
                throw CLI::ValidationError("--radii or --radii-const required");
            }
            const auto vc = czkit::vitali_cover(s, E, radii, cov_R);
            json out;
            out["centers"] = vc.centers;
            out["radii"] = vc.radii;
            out["step_sup"] = vc.step_sup;
            std::cout << out.dump(2) << "\n";
        });

        auto* whitney = cover_cmd->add_subcommand("whitney", "bounded-overlap cover of U");
        whitney->add_option("space", cov_space)->required();
        whitney->add_option("--set", cov_set)->required();
        whitney->add_option("--R", cov_R)->required();
        whitney->callback([&] {
            const auto s = czkit::load_space(cov_space);
            const auto U = parse_ids(cov_set);
            const auto wc = czkit::whitney_cover(s, U, cov_R);
            const auto counts = czkit::overlap_counts(s, wc.centers, wc.radii);
            int worst = 0;
            for (int x : U) worst = std::max(worst, counts[x]);
            json out;
            out["centers"] = wc.centers;
            out["radii"] = wc.radii;
            out["verification"] = {{"overlap_max", worst},
                                   {"overlap_bound", wc.overlap_bound},
                                   {"pass", worst >= 1 && worst <= wc.overlap_bound}};
            std::cout << out.dump(2) << "\n";
        });

        // maximal
        std::string max_space, max_fn, max_out, max_ps = "2";
        double max_R = 1.0;
        bool centred = false;
        auto* maximal = app.add_subcommand("maximal", "truncated maximal function");
        maximal->add_option("space", max_space)->required();
        maximal->add_option("fn", max_fn)->required();
        maximal->add_option("--R", max_R)->required();
        maximal->add_flag("--centred", centred);
        maximal->add_option("--out", max_out);
        maximal->callback([&] {
            const auto s = czkit::load_space(max_space);
            const auto f = czkit::load_function(max_fn);
            const auto m = centred ? czkit::maximal_centred(s, f, max_R)
                                   : czkit::maximal_uncentred(s, f, max_R);
            std::ostringstream csv;
            csv << "point,value\n";
            for (int x = 0; x < s.n(); ++x) {
                csv << x << ',' << czkit::format_double(m[x]) << '\n';
            }
            if (max_out.empty()) {
                std::cout << csv.str();
            } else {
                czkit::save_text_file(max_out, csv.str());
            }
        });

        // verify
        auto* verify_cmd = app.add_subcommand("verify", "quantitative checks");
        verify_cmd->require_subcommand(1);
        auto* vmax = verify_cmd->add_subcommand("maximal", "comparison, weak (1,1), L^p");
        vmax->add_option("space", max_space)->required();
        vmax->add_option("fn", max_fn)->required();
        vmax->add_option("--R", max_R)->required();
        vmax->add_option("--p", max_ps);
        vmax->callback([&] {
            const auto s = czkit::load_space(max_space);
            const auto f = czkit::load_function(max_fn);
            std::vector<int> all(s.n());
            for (int x = 0; x < s.n(); ++x) all[x] = x;
            std::vector<BoundReport> reports;
            reports.push_back(czkit::check_comparison(s, f, max_R));
            reports.push_back(czkit::check_weak11(s, f, all, max_R));
            for (double p : parse_exponents(max_ps)) {
                reports.push_back(czkit::check_lp_bound(s, f, all, max_R, p));
            }
            reports.push_back(czkit::check_lebesgue_points(s, f));
            std::exit(print_reports(reports, true));
        });

        // czd
        std::string czd_space, czd_fn, czd_E, czd_out;
        double czd_R = 1.0, czd_kappa = 2.5, czd_alpha = 0.0;
        auto* czd = app.add_subcommand("czd", "local Calderon-Zygmund decomposition");
        czd->add_option("space", czd_space)->required();
        czd->add_option("fn", czd_fn)->required();
        czd->add_option("--E", czd_E)->required();
        czd->add_option("--R", czd_R)->required();
        czd->add_option("--kappa", czd_kappa);
        czd->add_option("--alpha", czd_alpha)->required();
        czd->add_option("--out", czd_out);
        czd->callback([&] {
            const auto s = czkit::load_space(czd_space);
            const auto f = czkit::load_function(czd_fn);
            const auto E = parse_ids(czd_E);
            const auto dec = czkit::cz_decompose(s, f, E, czd_R, czd_kappa, czd_alpha);
            const auto reports = czkit::certify_czd(s, f, dec);
            json out;
            out["alpha"] = dec.alpha;
            out["kappa"] = dec.kappa;
            out["R"] = dec.R;
            out["admissibility_threshold"] = dec.admissibility_threshold;
            out["bad_set"] = dec.bad_set;
            out["centers"] = dec.centers;
            out["radii"] = dec.radii;
            out["g"] = dec.g.values();
            out["reports"] = reports_to_json(reports);
            if (!czd_out.empty()) czkit::save_json_file(czd_out, out);
            std::exit(print_reports(reports, true));
        });

        // phi
        std::string phi_r = "inf";
        double phi_p = 2.0, phi_c1 = 2.0, phi_c2 = 2.0;
        int phi_grid = 64;
        auto* phi_cmd = app.add_subcommand("phi", "interpolation constant");
        phi_cmd->add_option("--r", phi_r);
        phi_cmd->add_option("--p", phi_p);
        auto* phi_region = phi_cmd->add_subcommand("region", "sampled sup over a region");
        phi_region->add_option("--c1", phi_c1);
        phi_region->add_option("--c2", phi_c2);
        phi_region->add_option("--grid", phi_grid);
        phi_region->callback([&] {
            std::cout << "sup phi = " << czkit::phi_region_sup(phi_c1, phi_c2, phi_grid) << "\n";
        });
        phi_cmd->callback([&] {
            if (phi_cmd->get_subcommands().empty()) {
                const auto q = czkit::phi_query(parse_exponent(phi_r), phi_p);
                std::cout << "phi(" << phi_r << "," << phi_p << ") = " << q.value;
                if (q.method == czkit::PhiQuery::Method::minimized) {
                    std::cout << "  (q* = " << q.minimizer_q << ")";
                }
                std::cout << "\n";
            }
        });

        // kernel
        std::string ker_space, ker_out, ker_report;
        double ker_r = 0.25, ker_R = 1.0;
        auto* kernel = app.add_subcommand("kernel", "smooth normalized kernel S_r");
        kernel->add_option("space", ker_space)->required();
        kernel->add_option("--r", ker_r)->required();
        kernel->add_option("--R", ker_R)->required();
        kernel->add_option("--out", ker_out);
        kernel->add_option("--report", ker_report);
        kernel->callback([&] {
            const auto s = czkit::load_space(ker_space);
            const auto k = czkit::build_kernel(s, czkit::BumpProfile::make(7.0 / 6.0), ker_r,
                                               ker_R);
            const auto reports = czkit::certify_kernel(s, k);
            if (!ker_out.empty()) czkit::save_kernel_csv(ker_out, k.S, k.n);
            if (!ker_report.empty()) {
                json j;
                j["r"] = k.r;
                j["R"] = k.R;
                j["eta"] = k.eta;
                j["D_4R"] = k.d4r;
                j["empirical_c6"] = k.empirical_c6;
                j["reports"] = reports_to_json(reports);
                czkit::save_json_file(ker_report, j);
            }
            std::exit(print_reports(reports, true));
        });

        // czo
        auto* czo_cmd = app.add_subcommand("czo", "Calderon-Zygmund operator bounds");
        czo_cmd->require_subcommand(1);
        std::string czo_space, czo_kernel, czo_E, czo_ps = "2", czo_r = "inf";
        double czo_R = 1.0, czo_kappa = 2.5;
        int czo_trials = 200;
        std::uint64_t czo_seed = 1;

        auto add_common = [&](CLI::App* cmd, bool with_E) {
            cmd->add_option("space", czo_space)->required();
            cmd->add_option("--kernel", czo_kernel)->required();
            if (with_E) cmd->add_option("--E", czo_E)->required();
            cmd->add_option("--R", czo_R)->required();
            cmd->add_option("--kappa", czo_kappa);
            cmd->add_option("--r", czo_r);
            cmd->add_option("--p", czo_ps);
            cmd->add_option("--trials", czo_trials);
            cmd->add_option("--seed", czo_seed);
        };
        auto* czo_check = czo_cmd->add_subcommand("check", "localized bound");
        add_common(czo_check, true);
        czo_check->callback([&] {
            const auto s = czkit::load_space(czo_space);
            const auto K = czkit::load_kernel_csv(czo_kernel, s.n());
            const auto reports =
                czkit::check_czo_bound(s, K, parse_ids(czo_E), czo_R, czo_kappa,
                                       parse_exponent(czo_r), parse_exponents(czo_ps),
                                       czo_trials, czo_seed);
            std::exit(print_reports(reports, true));
        });
        auto* czo_patched = czo_cmd->add_subcommand("patched", "patched global bound");
        add_common(czo_patched, false);
        czo_patched->callback([&] {
            const auto s = czkit::load_space(czo_space);
            const auto K = czkit::load_kernel_csv(czo_kernel, s.n());
            const auto reports =
                czkit::check_patched_bound(s, K, czo_R, czo_kappa, parse_exponent(czo_r),
                                           parse_exponents(czo_ps), czo_trials, czo_seed);
            std::exit(print_reports(reports, true));
        });

        // mixed
        auto* mixed_cmd = app.add_subcommand("mixed", "mixed-norm maximal bound");
        mixed_cmd->require_subcommand(1);
        std::string mix_space, mix_tensor;
        double mix_R = 1.0;
        auto* mixed_check = mixed_cmd->add_subcommand("check", "teo-style mixed bound");
        mixed_check->add_option("space", mix_space)->required();
        mixed_check->add_option("tensor", mix_tensor)->required();
        mixed_check->add_option("--R", mix_R)->required();
        mixed_check->callback([&] {
            const auto s = czkit::load_space(mix_space);
            const auto t = czkit::load_tensor(mix_tensor);
            std::vector<BoundReport> reports{czkit::check_mixed_maximal(s, t, mix_R),
                                             czkit::check_schur_rowsum(s, mix_R)};
            std::exit(print_reports(reports, true));
        });

        // run
        std::string run_config, run_out;
        auto* run = app.add_subcommand("run", "execute a verification suite");
        run->add_option("--config", run_config)->required();
        run->add_option("--out", run_out);
        run->callback([&] {
            auto config = czkit::SuiteConfig::from_json(czkit::load_json_file(run_config));
            if (!run_out.empty()) config.out_dir = run_out;
            const auto report = czkit::run_suite(config);
            if (!config.out_dir.empty()) {
                std::filesystem::create_directories(config.out_dir);
                czkit::save_json_file(config.out_dir + "/report.json", report.full());
                for (const char* kind :
                     {"phi_surface", "ratio_vs_p", "overlap_hist", "profile"}) {
                    czkit::emit_plot_data(report, kind,
                                          config.out_dir + "/" + kind + ".csv");
                }
            }
            int pass = 0, fail = 0;
            for (const auto& sec : report.body.at("checks")) {
                const bool ok = sec.at("pass").get<bool>();
                std::cout << (ok ? "[PASS] " : "[FAIL] ") << sec.at("name").get<std::string>()
                          << "\n";
                if (!ok && sec.at("guaranteed").get<bool>()) {
                    std::cout
                        << "*** IMPLEMENTATION BUG SUSPECTED: a proved inequality failed ***\n";
                }
                ok ? ++pass : ++fail;
            }
            std::cout << "sections: " << pass << " passed, " << fail << " failed\n";
            std::exit(report.all_pass ? 0 : 1);
        });

        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
