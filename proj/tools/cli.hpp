#pragma once

// Command-line driver: sweep, plot, episode, couple.
//
// Exit statuses: 0 success / PASS, 1 coupling FAIL, 2 usage or configuration
// error, 3 I/O or input-file error.

#include <cstdint>
#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "bucb/bucb.hpp"

namespace bucb::cli {

enum ExitCode : int { kOk = 0, kFail = 1, kUsage = 2, kIo = 3 };

namespace detail {

inline std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string item;
    std::istringstream is(s);
    while (std::getline(is, item, sep)) out.push_back(item);
    if (!s.empty() && s.back() == sep) out.emplace_back();
    return out;
}

inline double to_real(const std::string& s) {
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(s, &used);
    } catch (const std::exception&) {
        throw ConfigError("not a number: '" + s + "'");
    }
    if (used != s.size()) throw ConfigError("not a number: '" + s + "'");
    return v;
}

inline std::size_t to_count(const std::string& s) {
    if (s.empty() || s[0] == '-') throw ConfigError("not a nonnegative integer: '" + s + "'");
    std::size_t used = 0;
    unsigned long long v = 0;
    try {
        v = std::stoull(s, &used);
    } catch (const std::exception&) {
        throw ConfigError("not a nonnegative integer: '" + s + "'");
    }
    if (used != s.size()) throw ConfigError("not a nonnegative integer: '" + s + "'");
    return static_cast<std::size_t>(v);
}

/// "1.75,-1.75" -> {1.75, -1.75}
inline std::vector<double> parse_vector(const std::string& s) {
    std::vector<double> v;
    for (const auto& f : split(s, ',')) v.push_back(to_real(f));
    return v;
}

/// "1:1:0,10:0.25:5" -> settings (M:D:m)
inline std::vector<ConcreteSetting> parse_settings(const std::string& s) {
    std::vector<ConcreteSetting> out;
    for (const auto& item : split(s, ',')) {
        const auto parts = split(item, ':');
        if (parts.size() != 3) throw ConfigError("setting '" + item + "' is not of the form M:D:m");
        out.push_back({to_count(parts[0]), to_real(parts[1]), to_real(parts[2]), std::nullopt});
    }
    return out;
}

inline BatchGrid grid_from(std::size_t arms, std::size_t batch_size, const std::optional<std::size_t>& horizon,
                           const std::optional<std::size_t>& batches) {
    if (batches) return BatchGrid::from_batches(arms, batch_size, *batches);
    return BatchGrid::from_horizon(arms, batch_size, horizon.value_or(1500));
}

inline void warn_if_greedy(double a, std::ostream& err) {
    if (a == 0.0) err << "warning: a = 0 disables the exploration term; the rule is greedy\n";
}

}  // namespace detail

inline int cli_main(const std::vector<std::string>& args, std::ostream& out = std::cout,
                    std::ostream& err = std::cerr) {
    CLI::App app{"Monte-Carlo simulator for the Gaussian bandit under the randomized batch UCB rule", "bucb"};
    app.require_subcommand(1);

    // sweep
    SweepConfig sw;
    std::optional<std::size_t> sw_horizon, sw_batches;
    std::string sw_drifts;
    auto* sweep = app.add_subcommand("sweep", "Estimate the scaled loss l(d) over a drift grid and write CSV");
    sweep->add_option("--a", sw.a, "Exploration coefficient a")->capture_default_str();
    sweep->add_option("--arms", sw.J, "Number of arms J")->capture_default_str();
    sweep->add_option("--batch-size", sw.M, "Items per batch M")->capture_default_str();
    auto* h = sweep->add_option("--horizon", sw_horizon, "Total horizon N = M*K (default 1500 when --batches is absent)");
    auto* k = sweep->add_option("--batches", sw_batches, "Batch count K");
    h->excludes(k);
    auto* dmin = sweep->add_option("--d-min", std::get<GapGrid>(sw.drifts).d_min, "Smallest gap d")->capture_default_str();
    auto* dmax = sweep->add_option("--d-max", std::get<GapGrid>(sw.drifts).d_max, "Largest gap d")->capture_default_str();
    auto* dstep = sweep->add_option("--d-step", std::get<GapGrid>(sw.drifts).d_step, "Gap grid step")->capture_default_str();
    sweep->add_option("--drifts", sw_drifts,
                      "Explicit drift vectors 'd1,...,dJ;d1,...,dJ;...' (replaces the symmetric gap grid; "
                      "rows ordered by increasing spread)")
        ->excludes(dmin)
        ->excludes(dmax)
        ->excludes(dstep);
    sweep->add_option("--reps", sw.reps, "Replications per grid point")->capture_default_str();
    sweep->add_option("--seed", sw.master_seed, "Master seed")->capture_default_str();
    sweep->add_option("--workers", sw.workers, "Worker threads (0 = available parallelism)")->capture_default_str();
    sweep->add_option("--out", sw.out_path, "Output CSV path")->required();

    // plot
    std::vector<std::string> plot_inputs;
    std::string plot_out;
    auto* plot = app.add_subcommand("plot", "Render one or more sweep CSVs as an SVG plot");
    plot->add_option("--in,inputs", plot_inputs, "Sweep CSV file(s), one series each")->required();
    plot->add_option("--out", plot_out, "Output SVG path")->required();

    // episode
    double ep_a = 1.0 / 3.0, ep_mean = 0.0, ep_var = 1.0;
    std::size_t ep_M = 1;
    std::optional<std::size_t> ep_horizon, ep_batches;
    std::string ep_d, ep_out;
    std::uint64_t ep_seed = 1;
    auto* episode = app.add_subcommand("episode", "Trace one replication: chosen arm and all bounds per batch (CSV)");
    episode->add_option("--a", ep_a, "Exploration coefficient a")->capture_default_str();
    episode->add_option("--d", ep_d, "Drift vector d1,...,dJ")->required();
    episode->add_option("--batch-size", ep_M, "Items per batch M")->capture_default_str();
    auto* eh = episode->add_option("--horizon", ep_horizon, "Total horizon N (default 1500 when --batches is absent)");
    auto* ek = episode->add_option("--batches", ep_batches, "Batch count K");
    eh->excludes(ek);
    episode->add_option("--mean", ep_mean, "Baseline mean m")->capture_default_str();
    episode->add_option("--variance", ep_var, "Per-step variance D")->capture_default_str();
    episode->add_option("--seed", ep_seed, "Replication seed")->capture_default_str();
    episode->add_option("--out", ep_out, "Output CSV path (stdout when absent)");

    // couple
    double cp_a = 1.0 / 3.0;
    std::size_t cp_K = 0, cp_seeds = 1;
    std::string cp_d, cp_settings;
    std::uint64_t cp_seed = 1;
    auto* couple = app.add_subcommand("couple", "Check that concrete runs and the unit-horizon run coincide");
    couple->add_option("--batches", cp_K, "Batch count K")->required();
    couple->add_option("--a", cp_a, "Exploration coefficient a")->capture_default_str();
    couple->add_option("--d", cp_d, "Drift vector d1,...,dJ")->required();
    couple->add_option("--settings", cp_settings, "Concrete settings M:D:m,M:D:m,...")->required();
    couple->add_option("--seed", cp_seed, "Master seed (first of the range)")->capture_default_str();
    couple->add_option("--seeds", cp_seeds, "Number of consecutive seeds to check")->capture_default_str();

    std::vector<const char*> argv;
    argv.push_back("bucb");
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return kUsage;
    }

    try {
        if (*sweep) {
            if (!sw_drifts.empty()) {
                DriftList list;
                for (const auto& row : detail::split(sw_drifts, ';')) list.vectors.push_back(detail::parse_vector(row));
                sw.drifts = list;
            }
            if (sw_batches) {
                sw.K = sw_batches;
            } else {
                sw.N = sw_horizon.value_or(1500);
            }
            detail::warn_if_greedy(sw.a, err);
            const LossCurve curve = run_sweep(sw);
            emit_csv(curve, sw, sw.out_path);
            out << "wrote " << curve.points.size() << " point(s) to " << sw.out_path << '\n';
            return kOk;
        }
        if (*plot) {
            std::vector<std::filesystem::path> paths(plot_inputs.begin(), plot_inputs.end());
            emit_plot(paths, plot_out);
            out << "wrote " << plot_out << '\n';
            return kOk;
        }
        if (*episode) {
            ThetaParams theta{ep_mean, ep_var, detail::parse_vector(ep_d)};
            theta.validate();
            const BatchGrid grid = detail::grid_from(theta.arms(), ep_M, ep_horizon, ep_batches);
            const PolicyConfig config = policy_for(ep_a, theta, grid);
            config.validate();
            detail::warn_if_greedy(ep_a, err);

            std::ostringstream csv;
            csv << "batch,arm";
            for (std::size_t l = 0; l < grid.arms(); ++l) csv << ",U" << l + 1;
            csv << '\n';
            SeededStreams streams(ep_seed);
            simulate_concrete(theta, grid, config, streams,
                              [&](std::size_t b, std::size_t arm, std::span<const double> bounds) {
                                  csv << b + 1 << ',' << arm + 1;
                                  for (std::size_t l = 0; l < grid.arms(); ++l) {
                                      csv << ',';
                                      if (!bounds.empty()) csv << format_real(bounds[l]);
                                  }
                                  csv << '\n';
                              });
            if (ep_out.empty()) {
                out << csv.str();
            } else {
                write_text_file(ep_out, csv.str());
            }
            return kOk;
        }
        if (*couple) {
            const std::vector<double> d = detail::parse_vector(cp_d);
            const std::vector<ConcreteSetting> settings = detail::parse_settings(cp_settings);
            if (cp_seeds < 1) throw ConfigError("--seeds must be >= 1");
            detail::warn_if_greedy(cp_a, err);
            std::size_t passed = 0;
            double worst = 0.0;
            for (std::size_t i = 0; i < cp_seeds; ++i) {
                const std::uint64_t seed = cp_seed + i;
                const CoupleReport report = couple_check(d, cp_a, cp_K, settings, seed);
                worst = std::max(worst, report.max_deviation);
                if (report.pass) {
                    ++passed;
                } else {
                    out << "seed " << seed << ": " << report.summary() << '\n';
                }
            }
            out << (passed == cp_seeds ? "PASS" : "FAIL") << ": " << passed << '/' << cp_seeds
                << " seed(s) coupled, max transformed-bound deviation " << worst << '\n';
            return passed == cp_seeds ? kOk : kFail;
        }
    } catch (const ConfigError& e) {
        err << "configuration error: " << e.what() << '\n';
        return kUsage;
    } catch (const InputError& e) {
        err << "input error: " << e.what() << '\n';
        return kUsage;
    } catch (const ParseError& e) {
        err << "parse error: " << e.what() << '\n';
        return kIo;
    } catch (const IoError& e) {
        err << "I/O error: " << e.what() << '\n';
        return kIo;
    }
    return kUsage;
}

}  // namespace bucb::cli
