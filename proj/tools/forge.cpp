// forge: command-line front end for the secular-forge verification suites.
//
// Subcommands: verify-chart, verify-secular, birkhoff, reduce, steepness,
// integrate, emit-goldens.  All randomness is seeded and recorded; identical
// config + seed produce byte-identical artifacts.  Exit status is 0 iff every
// asserted criterion of the invoked suite passes.

#include <CLI11.hpp>
#include <json.hpp>

#include "sforge/charts.hpp"
#include "sforge/dynamics.hpp"
#include "sforge/kepler.hpp"
#include "sforge/nf.hpp"
#include "sforge/parallel.hpp"
#include "sforge/random.hpp"
#include "sforge/sampling.hpp"
#include "sforge/secular.hpp"
#include "sforge/steepness.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

using nlohmann::json;
using namespace sforge;

namespace {

constexpr int kSchemaVersion = 1;

struct Options {
    std::string config_path;
    std::string out_dir = ".";
    std::uint64_t seed = 12345;
    int threads = 0;
    int order = 6;
    int nodes = 256;
    int draws = 100;
    bool dump = false;
    bool spatial = false;
    bool mutate = false;
    json config;  // tolerances and overrides
};

json default_config() {
    return json{
        {"schema_version", kSchemaVersion},
        {"masses", {{"mbar0", 1.0}, {"mbar1", 1.0}, {"mbar2", 1.0}, {"mu", 1e-3}}},
        {"tolerances",
         {{"symplectic", 1e-6},
          {"roundtrip", 1e-9},
          {"dipole", 1e-10},
          {"single_average", 1e-8},
          {"double_average", 1e-8},
          {"ring", 1e-10},
          {"steepness_tol_factor", 1e-6},
          {"energy", 1e-8},
          {"angmom", 1e-9}}},
        {"secular", {{"e_max", 0.5}, {"alpha_max", 0.3}}},
        {"integrate",
         {{"a1", 0.2},
          {"e1", 0.02},
          {"a2", 1.0},
          {"e2", 0.02},
          {"periods", 1000.0},
          {"steps_per_period", 100},
          {"sample_stride", 100},
          {"order", 4}}},
    };
}

// Recursive overlay: user values win, defaults fill the gaps.
void merge_into(json& base, const json& user) {
    for (auto it = user.begin(); it != user.end(); ++it) {
        if (it.value().is_object() && base.contains(it.key()) && base[it.key()].is_object()) {
            merge_into(base[it.key()], it.value());
        } else {
            base[it.key()] = it.value();
        }
    }
}

void load_config(Options& opt) {
    opt.config = default_config();
    if (opt.config_path.empty()) return;
    std::ifstream in(opt.config_path);
    if (!in) throw CLI::ValidationError("--config", "cannot open " + opt.config_path);
    json user;
    try {
        in >> user;
    } catch (const std::exception& ex) {
        throw CLI::ValidationError("--config", std::string("invalid JSON: ") + ex.what());
    }
    if (!user.contains("schema_version") ||
        user["schema_version"].get<int>() != kSchemaVersion) {
        throw CLI::ValidationError("--config", "schema_version must be 1");
    }
    merge_into(opt.config, user);
}

std::string fmt(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

void write_file(const std::string& dir, const std::string& name, const std::string& text) {
    std::filesystem::create_directories(dir);
    std::ofstream out(dir + "/" + name, std::ios::binary);
    out << text;
    if (!out) throw std::runtime_error("cannot write " + dir + "/" + name);
}

void write_summary(const Options& opt, const std::string& name, json summary) {
    summary["schema_version"] = kSchemaVersion;
    summary["seed"] = opt.seed;
    write_file(opt.out_dir, name, summary.dump(2) + "\n");
    std::cout << summary.dump(2) << "\n";
}

kepler::MassParameters masses_from(const json& cfg) {
    kepler::MassParameters mp;
    mp.mbar0 = cfg["masses"]["mbar0"].get<double>();
    mp.mbar1 = cfg["masses"]["mbar1"].get<double>();
    mp.mbar2 = cfg["masses"]["mbar2"].get<double>();
    mp.mu = cfg["masses"]["mu"].get<double>();
    return mp;
}

// ---------------------------------------------------------------------------

int run_verify_chart(const Options& opt) {
    const double tol_symp = opt.config["tolerances"]["symplectic"].get<double>();
    const double tol_rt = opt.config["tolerances"]["roundtrip"].get<double>();
    const int n = opt.draws;
    std::vector<double> symp(n), rt(n);
    std::vector<charts::Chart12Point> pts(n);
    {
        Rng rng(opt.seed);
        for (auto& p : pts) p = sampling::random_chart_point(rng);
    }
    parallel_for(
        static_cast<std::size_t>(n),
        [&](std::size_t i) {
            symp[i] = charts::check_symplectic(pts[i]);
            const auto back = charts::chart_inverse(charts::chart_forward(pts[i]));
            const auto a = pts[i].as_array(), b = back.as_array();
            double worst = 0.0;
            for (int k = 0; k < 12; ++k) {
                worst = std::max(worst,
                                 std::abs(a[k] - b[k]) / std::max(1.0, std::abs(a[k])));
            }
            rt[i] = worst;
        },
        opt.threads);
    double max_symp = 0.0, max_rt = 0.0;
    for (int i = 0; i < n; ++i) {
        max_symp = std::max(max_symp, symp[i]);
        max_rt = std::max(max_rt, rt[i]);
    }
    const bool pass = max_symp < tol_symp && max_rt < tol_rt;
    write_summary(opt, "verify_chart_summary.json",
                  json{{"command", "verify-chart"},
                       {"draws", n},
                       {"max_symplectic_deviation", fmt(max_symp)},
                       {"max_roundtrip_error", fmt(max_rt)},
                       {"tolerances", {{"symplectic", tol_symp}, {"roundtrip", tol_rt}}},
                       {"pass", pass}});
    return pass ? 0 : 1;
}

int run_verify_secular(const Options& opt) {
    const double tol_single = opt.config["tolerances"]["single_average"].get<double>();
    const double tol_double = opt.config["tolerances"]["double_average"].get<double>();
    const double tol_ring = opt.config["tolerances"]["ring"].get<double>();
    const double e_max = opt.config["secular"]["e_max"].get<double>();
    const double alpha_max = opt.config["secular"]["alpha_max"].get<double>();
    const auto mp = masses_from(opt.config);
    const int n = opt.draws;

    std::vector<secular::SecularPoint> pts;
    std::vector<double> ell1s;
    {
        Rng rng(opt.seed);
        for (int i = 0; i < n; ++i) {
            pts.push_back(sampling::random_secular_point(rng, mp, e_max, alpha_max));
            ell1s.push_back(rng.uniform(-M_PI, M_PI));
        }
    }
    std::vector<double> err_single(n), err_double(n);
    parallel_for(
        static_cast<std::size_t>(n),
        [&](std::size_t i) {
            const auto orbits = secular::embed(pts[i], mp);
            const double q1 = secular::p1_single_average(orbits, ell1s[i], opt.nodes);
            const double c1 = secular::p1_closed_form(orbits, ell1s[i]);
            err_single[i] = std::abs(q1 - c1) / std::max(1.0, std::abs(c1));
            const double q2 = secular::double_average_f2(pts[i], mp, opt.nodes);
            const auto split = secular::planar_vertical_split(pts[i], mp);
            const double total = -mp.mbar1 * mp.mbar2 * q2;
            err_double[i] = std::abs(split.planar + split.vertical - total) /
                            std::max(1.0, std::abs(total));
        },
        opt.threads);
    double max_single = 0.0, max_double = 0.0;
    for (int i = 0; i < n; ++i) {
        max_single = std::max(max_single, err_single[i]);
        max_double = std::max(max_double, err_double[i]);
    }
    double max_ring = 0.0;
    for (int k = 0; k <= 9; ++k) {
        const double e = 0.1 * k;
        const auto ra = secular::appendix_b_averages(e);
        max_ring = std::max({max_ring, std::abs(ra.s0 - (1.0 + 1.5 * e * e)),
                             std::abs(ra.s2 - 2.5 * e * e), std::abs(ra.cross)});
    }
    const bool pass = max_single < tol_single && max_double < tol_double && max_ring < tol_ring;
    write_summary(
        opt, "verify_secular_summary.json",
        json{{"command", "verify-secular"},
             {"draws", n},
             {"nodes", opt.nodes},
             {"max_single_average_error", fmt(max_single)},
             {"max_double_average_error", fmt(max_double)},
             {"max_ring_average_error", fmt(max_ring)},
             {"tolerances",
              {{"single_average", tol_single}, {"double_average", tol_double}, {"ring", tol_ring}}},
             {"pass", pass}});
    return pass ? 0 : 1;
}

std::string leading_table_text(const std::vector<nf::LeadingEntry>& table) {
    std::string text;
    for (const auto& e : table) {
        text += std::to_string(e.t[0]) + " " + std::to_string(e.t[1]) + " " +
                std::to_string(e.t[2]) + " x1^" + std::to_string(e.a1) + " x2^" +
                std::to_string(e.a2) + " " + e.value.str() + "\n";
    }
    return text;
}

int run_birkhoff(const Options& opt) {
    if (opt.order != 4 && opt.order != 6) {
        throw CLI::ValidationError("--order", "must be 4 or 6");
    }
    const auto S = nf::build_secular_input(opt.order, 12);
    const auto res = nf::birkhoff_normalize(S, opt.order);
    if (opt.dump) {
        write_file(opt.out_dir, "birkhoff_series.txt", res.normal_part.dump());
        write_file(opt.out_dir, "birkhoff_action_form.txt", res.action_form.dump());
    }
    const auto table = nf::leading_table(res.action_form, 2, opt.order / 2);
    write_file(opt.out_dir, "birkhoff_leading_table.txt", leading_table_text(table));
    write_summary(opt, "birkhoff_summary.json",
                  json{{"command", "birkhoff"},
                       {"order", opt.order},
                       {"invariant_u1", res.invariant1.dump()},
                       {"invariant_u2", res.invariant2.dump()},
                       {"invariant_v", res.invariant3.dump()},
                       {"leading_entries", table.size()},
                       {"pass", true}});
    return 0;
}

int run_reduce(const Options& opt) {
    const auto S = nf::build_secular_input(6, 12);
    const auto res = nf::birkhoff_normalize(S, 6);
    const auto red = nf::so3_reduce(res.action_form);
    write_file(opt.out_dir, "reduced_form.txt", red.dump());
    const auto table = nf::reduced_leading_table(red, 1, 3);
    write_file(opt.out_dir, "reduced_leading_table.txt", leading_table_text(table));
    write_summary(opt, "reduce_summary.json",
                  json{{"command", "reduce"},
                       {"reduced_entries", table.size()},
                       {"pass", true}});
    return 0;
}

int run_steepness(const Options& opt) {
    const int n = opt.draws;
    const double base_tol = opt.config["tolerances"]["steepness_tol_factor"].get<double>();
    std::vector<steepness::RescaledParams> params(n);
    {
        Rng rng(opt.seed);
        for (auto& p : params) p = sampling::random_steepness_params(rng);
    }
    std::vector<steepness::Verdict> verdicts(n);
    std::vector<double> resultants(n, 0.0);
    parallel_for(
        static_cast<std::size_t>(n),
        [&](std::size_t i) {
            const auto& p = params[i];
            const auto jet = opt.spatial ? steepness::spatial_jet(p) : steepness::planar_jet(p);
            // The verdict threshold degenerates with the system's steepness
            // moduli (min(sqrt(alpha*), eps1^2)); base factor from config.
            const double tol =
                base_tol / 1e-6 * steepness::verdict_tolerance_factor(p);
            verdicts[i] = steepness::check_three_jet(jet, opt.spatial ? 20000 : 10000, tol);
            if (!opt.spatial) resultants[i] = steepness::planar_elimination_resultant(p);
        },
        opt.threads);

    // RFC-4180 report: one record per draw, CRLF line ends.
    std::string csv =
        "draw,alpha_star,eps1,mu,m1_over_m2,m2_over_m0,a_ratio,min_residual,"
        "eta1,eta2,eta3,eta4,resultant,verdict\r\n";
    bool all_trivial = true;
    for (int i = 0; i < n; ++i) {
        const auto& p = params[i];
        const auto& v = verdicts[i];
        all_trivial = all_trivial && v.only_trivial;
        csv += std::to_string(i) + "," + fmt(p.alpha_star) + "," + fmt(p.eps1) + "," +
               fmt(p.mu) + "," + fmt(p.m1_over_m2) + "," + fmt(p.m2_over_m0) + "," +
               fmt(p.a_ratio) + "," + fmt(v.residual);
        for (int k = 0; k < 4; ++k) {
            csv += ",";
            csv += (k < static_cast<int>(v.eta.size())) ? fmt(v.eta[k]) : "";
        }
        csv += "," + (opt.spatial ? std::string() : fmt(resultants[i]));
        csv += v.only_trivial ? ",only_trivial\r\n" : ",candidate\r\n";
    }
    const std::string name =
        opt.spatial ? "steepness_spatial_report.csv" : "steepness_planar_report.csv";
    write_file(opt.out_dir, name, csv);
    // The planar suite asserts the verdicts; the spatial sweep only reports.
    const bool pass = opt.spatial || all_trivial;
    write_summary(opt, "steepness_summary.json",
                  json{{"command", "steepness"},
                       {"spatial", opt.spatial},
                       {"draws", n},
                       {"all_only_trivial", all_trivial},
                       {"tolerance_base_factor", base_tol},
                       {"report", name},
                       {"pass", pass}});
    return pass ? 0 : 1;
}

int run_integrate(const Options& opt) {
    const auto& icfg = opt.config["integrate"];
    dynamics::SystemConfig cfg;
    cfg.masses = masses_from(opt.config);
    cfg.a1 = icfg["a1"].get<double>();
    cfg.e1 = icfg["e1"].get<double>();
    cfg.a2 = icfg["a2"].get<double>();
    cfg.e2 = icfg["e2"].get<double>();
    cfg.periods = icfg["periods"].get<double>();
    cfg.steps_per_period = icfg["steps_per_period"].get<int>();
    cfg.sample_stride = icfg["sample_stride"].get<int>();
    cfg.order = icfg["order"].get<int>();
    const auto traj = dynamics::integrate(cfg);
    const auto rep = dynamics::track_elements(traj, cfg.masses);
    write_file(opt.out_dir, "drift_report.json", dynamics::drift_report_to_json(rep));
    const double tol_e = opt.config["tolerances"]["energy"].get<double>();
    const double tol_c = opt.config["tolerances"]["angmom"].get<double>();
    const bool pass = !traj.aborted && !rep.close_encounter &&
                      rep.energy_rel_error < tol_e && rep.angmom_rel_error < tol_c;
    write_summary(opt, "integrate_summary.json",
                  json{{"command", "integrate"},
                       {"periods", cfg.periods},
                       {"energy_rel_error", fmt(rep.energy_rel_error)},
                       {"angmom_rel_error", fmt(rep.angmom_rel_error)},
                       {"max_dLambda1", fmt(rep.max_dLambda1)},
                       {"max_de1", fmt(rep.max_de1)},
                       {"close_encounter", rep.close_encounter},
                       {"aborted", traj.aborted},
                       {"tolerances", {{"energy", tol_e}, {"angmom", tol_c}}},
                       {"pass", pass}});
    return pass ? 0 : 1;
}

int run_emit_goldens(const Options& opt) {
    const auto S = nf::build_secular_input(6, 12);
    const auto res = nf::birkhoff_normalize(S, 6);
    auto table = nf::leading_table(res.action_form, 2, 3);
    if (opt.mutate && !table.empty()) {
        // Deliberately perturb one entry so golden comparison must fail:
        // used to prove the comparison has teeth.
        table.front().value += 1;
    }
    write_file(opt.out_dir, "leading_order6.txt", leading_table_text(table));
    write_file(opt.out_dir, "normal_form_order6.txt", res.action_form.dump());
    const auto red = nf::so3_reduce(res.action_form);
    write_file(opt.out_dir, "reduced_order6.txt",
               leading_table_text(nf::reduced_leading_table(red, 1, 3)));
    write_file(opt.out_dir, "invariants.txt",
               res.invariant1.dump() + "--\n" + res.invariant2.dump() + "--\n" +
                   res.invariant3.dump());
    write_summary(opt, "emit_goldens_summary.json",
                  json{{"command", "emit-goldens"},
                       {"mutated", opt.mutate},
                       {"files",
                        {"leading_order6.txt", "normal_form_order6.txt",
                         "reduced_order6.txt", "invariants.txt"}},
                       {"pass", true}});
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"secular-forge verification suites"};
    app.require_subcommand(1);
    Options opt;
    app.add_option("--config", opt.config_path, "JSON config file (schema_version 1)");
    app.add_option("--out", opt.out_dir, "output directory for artifacts");
    app.add_option("--seed", opt.seed, "random seed (recorded in summaries)");
    app.add_option("--threads", opt.threads,
                   "worker count (0: SECULAR_FORGE_THREADS or hardware)");
    app.add_option("--order", opt.order, "Birkhoff order (4 or 6)");
    app.add_option("--nodes", opt.nodes, "quadrature nodes");
    app.add_option("--draws", opt.draws, "number of random draws");

    auto* chart = app.add_subcommand("verify-chart", "symplecticity and roundtrip suite");
    auto* secular = app.add_subcommand("verify-secular", "averaging identity suite");
    auto* birkhoff = app.add_subcommand("birkhoff", "normal form computation");
    birkhoff->add_flag("--dump", opt.dump, "write full series dumps");
    auto* reduce = app.add_subcommand("reduce", "rotation-reduced polynomial");
    auto* steep = app.add_subcommand("steepness", "three-jet sweep");
    steep->add_flag("--spatial", opt.spatial, "four-variable spatial system");
    auto* integ = app.add_subcommand("integrate", "splitting integrator run");
    auto* emit = app.add_subcommand("emit-goldens", "write canonical rational tables");
    emit->add_flag("--mutate", opt.mutate, "perturb one coefficient (mutation test)");

    CLI11_PARSE(app, argc, argv);

    try {
        load_config(opt);
        const auto t0 = std::chrono::steady_clock::now();
        int rc = 1;
        if (chart->parsed()) rc = run_verify_chart(opt);
        if (secular->parsed()) rc = run_verify_secular(opt);
        if (birkhoff->parsed()) rc = run_birkhoff(opt);
        if (reduce->parsed()) rc = run_reduce(opt);
        if (steep->parsed()) rc = run_steepness(opt);
        if (integ->parsed()) rc = run_integrate(opt);
        if (emit->parsed()) rc = run_emit_goldens(opt);
        const auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                            std::chrono::steady_clock::now() - t0)
                            .count();
        std::cerr << "elapsed_ms " << ms << "\n";
        return rc;
    } catch (const CLI::Error& e) {
        return app.exit(e);
    } catch (const std::exception& ex) {
        std::cerr << "error: " << ex.what() << "\n";
        return 2;
    }
}
