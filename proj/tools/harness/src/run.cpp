#include "lolab/harness/run.hpp"

#include "lolab/errors.hpp"
#include "lolab/harness/report.hpp"
#include "lolab/lcd.hpp"
#include "lolab/randmat.hpp"
#include "lolab/rng.hpp"
#include "lolab/smallball.hpp"
#include "lolab/stats.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <optional>
#include <ostream>
#include <system_error>

namespace lolab::harness {

namespace {

struct Outcome {
    Table report;
    std::optional<Table> plot;
    Json results = Json::object();
};

Json summary_json(const Summary& s) {
    return Json{{"mean", s.mean}, {"median", s.median}, {"q01", s.q01}, {"q05", s.q05}, {"q25", s.q25},
                {"q75", s.q75},   {"q95", s.q95},       {"min", s.min}, {"max", s.max}};
}

Json band_json(const WilsonInterval& w) { return Json::array({w.lo, w.hi}); }

CoefficientVector coefficients(const ExperimentConfig& cfg) {
    if (cfg.has("a")) return CoefficientVector(cfg.reals("a"));
    return CoefficientVector(std::vector<double>(cfg.integer("n"), 1.0));
}

Outcome run_lcd(const ExperimentConfig& cfg) {
    const CoefficientVector a(cfg.reals("a"));
    const double alpha = cfg.real("alpha"), kappa = cfg.real("kappa"), y = cfg.real("y");
    const auto d = lcd::essential_lcd(a, {alpha, kappa, cfg.real("t-max")});
    const auto set = lcd::recurrence_set(a, alpha, kappa, y);

    Outcome out{Table({"interval", "lo", "hi", "length"}), Table({"y", "density"}), {}};
    std::uint64_t idx = 0;
    for (const auto& iv : set.intervals()) out.report.add_row({idx++, iv.lo, iv.hi, iv.hi - iv.lo});

    const auto steps = cfg.integer("grid-res");
    for (std::uint64_t i = 1; i <= steps; ++i) {
        const double yy = y * static_cast<double>(i) / static_cast<double>(steps);
        out.plot->add_row({yy, lcd::density(set, yy)});
    }
    out.results = {{"lcd", d ? Json(*d) : Json(nullptr)},
                   {"lcd_status", d ? "found" : "not_found"},
                   {"intervals", set.size()},
                   {"measure", set.measure()},
                   {"density", lcd::density(set, y)}};
    return out;
}

Outcome run_smallball(const ExperimentConfig& cfg) {
    const auto a = coefficients(cfg);
    const auto dist = make_distribution(cfg);
    const bool exact = cfg.text("method") == "exact";
    Outcome out{Table({"eps", "method", "p", "center", "error_band", "samples"}),
                Table({"eps", "p", "lo", "hi"}),
                {}};
    double pmax = 0.0;
    for (const double eps : cfg.reals("eps")) {
        const auto est = exact ? smallball::exact_small_ball(a, eps, dist, cfg.integer("budget"))
                               : smallball::monte_carlo_small_ball(a, eps, dist, cfg.integer("trials"), cfg.master_seed);
        out.report.add_row({eps, std::string(exact ? "exact" : "monte-carlo"), est.value, est.center, est.error_band,
                            est.samples ? Cell{static_cast<std::uint64_t>(*est.samples)} : Cell{NA{}}});
        out.plot->add_row({eps, est.value, std::max(0.0, est.value - est.error_band),
                           std::min(1.0, est.value + est.error_band)});
        pmax = std::max(pmax, est.value);
    }
    out.results = {{"rows", out.report.rows().size()}, {"p_max", pmax}, {"distribution", dist.name()}};
    return out;
}

Outcome run_bounds_compare(const ExperimentConfig& cfg) {
    const auto a = coefficients(cfg);
    const auto dist = make_distribution(cfg);
    const double B = cfg.has("B") ? cfg.real("B") : dist.third_moment_bound();
    const bool with_theorem = cfg.has("alpha");
    Outcome out{Table({"eps", "exact", "clt_bound", "clt_ratio", "esseen_integral", "esseen_error", "theorem_bound",
                       "theorem_ratio", "theorem_flags"}),
                Table({"eps", "exact", "clt_bound", "esseen_integral", "theorem_bound"}),
                {}};
    std::size_t clt_ok = 0, theorem_ok = 0;
    for (const double eps : cfg.reals("eps")) {
        const double p = smallball::exact_small_ball(a, eps, dist, cfg.integer("budget")).value;
        const auto clt = smallball::clt_bound(a, eps, B, cfg.real("C1"));
        std::optional<smallball::BoundReport> ess;
        if (eps > 0.0) ess = smallball::esseen_integral(a, eps, dist, cfg.integer("quad-points"));
        std::optional<smallball::BoundReport> thm;
        if (with_theorem) {
            smallball::TheoremParams tp;
            tp.eps = eps;
            tp.alpha = cfg.real("alpha");
            tp.kappa = cfg.real("kappa");
            tp.B = B;
            tp.K = cfg.has("K") ? cfg.real("K") : a.norms().linf;
            tp.C = cfg.real("C");
            tp.c = cfg.real("c");
            tp.t_max = cfg.real("t-max");
            thm = smallball::theorem_bound(a, tp);
        }
        std::string flags;
        if (thm)
            for (const auto& f : thm->flags) flags += (flags.empty() ? "" : ";") + f;
        clt_ok += p <= clt.value ? 1 : 0;
        theorem_ok += thm && p <= thm->value ? 1 : 0;
        out.report.add_row({eps, p, clt.value, p / clt.value, ess ? Cell{ess->value} : Cell{NA{}},
                            ess ? Cell{ess->error_estimate} : Cell{NA{}}, thm ? Cell{thm->value} : Cell{NA{}},
                            thm ? Cell{p / thm->value} : Cell{NA{}}, thm ? Cell{flags} : Cell{NA{}}});
        out.plot->add_row({eps, p, clt.value, ess ? Cell{ess->value} : Cell{NA{}}, thm ? Cell{thm->value} : Cell{NA{}}});
    }
    out.results = {{"rows", out.report.rows().size()},
                   {"B", B},
                   {"clt_dominates", clt_ok},
                   {"theorem_dominates", with_theorem ? Json(theorem_ok) : Json(nullptr)}};
    return out;
}

Outcome run_matrix_tail(const ExperimentConfig& cfg) {
    const auto n = cfg.integer("n");
    const auto tail =
        randmat::smallest_singular_tail(n, make_distribution(cfg), cfg.reals("eps"), cfg.integer("trials"), cfg.master_seed);
    const double root_n = std::sqrt(static_cast<double>(n));
    Outcome out{Table({"trial", "seed", "s_min", "s_min_scaled"}), Table({"eps", "fraction", "wilson_lo", "wilson_hi"}),
                {}};
    std::vector<double> scaled;
    for (std::size_t i = 0; i < tail.trials; ++i) {
        scaled.push_back(tail.smallest[i] * root_n);
        out.report.add_row({static_cast<std::uint64_t>(i), tail.trial_seeds[i], tail.smallest[i], scaled.back()});
    }
    Json fractions = Json::array();
    std::vector<double> fr;
    for (std::size_t j = 0; j < tail.eps_grid.size(); ++j) {
        fr.push_back(tail.fraction(j));
        out.plot->add_row({tail.eps_grid[j], fr.back(), tail.bands[j].lo, tail.bands[j].hi});
        fractions.push_back({{"eps", tail.eps_grid[j]},
                             {"count", tail.counts[j]},
                             {"fraction", fr.back()},
                             {"wilson", band_json(tail.bands[j])}});
    }
    out.results = {{"trials", tail.trials},
                   {"tail", fractions},
                   {"slope_through_origin", slope_through_origin(tail.eps_grid, fr)},
                   {"s_min_scaled", summary_json(summarize(scaled))}};
    return out;
}

Outcome run_largest_sv(const ExperimentConfig& cfg) {
    const auto st = randmat::largest_singular_stats(cfg.integer("n"), make_distribution(cfg), cfg.integer("trials"),
                                                    cfg.master_seed);
    Outcome out{Table({"trial", "seed", "s_max", "s_max_scaled"}), std::nullopt, {}};
    for (std::size_t i = 0; i < st.largest.size(); ++i)
        out.report.add_row({static_cast<std::uint64_t>(i), st.trial_seeds[i], st.largest[i], st.scaled[i]});
    out.results = {{"trials", st.largest.size()}, {"s_max_scaled", summary_json(st.summary)}};
    return out;
}

Outcome run_singularity(const ExperimentConfig& cfg) {
    const auto n = cfg.integer("n");
    const auto dist = make_distribution(cfg);
    if (cfg.text("method") == "exact") {
        const auto p = randmat::exact_singularity_probability(n, dist, cfg.integer("budget"));
        Outcome out{Table({"n", "numerator", "denominator", "probability"}), std::nullopt, {}};
        out.report.add_row({static_cast<std::uint64_t>(n), p.numerator.str(), p.denominator.str(), p.value()});
        out.results = {{"numerator", p.numerator.str()}, {"denominator", p.denominator.str()}, {"probability", p.value()}};
        return out;
    }
    const auto est = randmat::monte_carlo_singularity(n, dist, cfg.integer("trials"), cfg.master_seed);
    Outcome out{Table({"trial", "seed", "singular"}), std::nullopt, {}};
    for (std::size_t i = 0; i < est.trials; ++i)
        out.report.add_row({static_cast<std::uint64_t>(i), est.trial_seeds[i],
                            static_cast<std::uint64_t>(est.is_singular[i])});
    out.results = {{"trials", est.trials},
                   {"singular", est.singular},
                   {"fraction", est.fraction},
                   {"wilson", band_json(est.band)}};
    return out;
}

Outcome run_distance(const ExperimentConfig& cfg) {
    const auto rep =
        randmat::distance_experiment(cfg.integer("n"), make_distribution(cfg), cfg.integer("trials"), cfg.master_seed);
    Outcome out{Table({"trial", "seed", "distance", "inner_product", "discrepancy", "degenerate"}),
                Table({"eps", "ecdf"}),
                {}};
    double worst = 0.0;
    std::size_t degenerate = 0;
    for (std::size_t i = 0; i < rep.trials.size(); ++i) {
        const auto& t = rep.trials[i];
        out.report.add_row({static_cast<std::uint64_t>(i), t.seed, t.distance, t.inner_product,
                            t.degenerate ? Cell{NA{}} : Cell{t.discrepancy}, static_cast<std::uint64_t>(t.degenerate)});
        if (t.degenerate) ++degenerate;
        else worst = std::max(worst, t.discrepancy);
    }
    Json curve = Json::array();
    for (const double eps : cfg.reals("eps")) {
        out.plot->add_row({eps, rep.ecdf(eps)});
        curve.push_back({{"eps", eps}, {"ecdf", rep.ecdf(eps)}});
    }
    out.results = {{"trials", rep.trials.size()},
                   {"degenerate", degenerate},
                   {"max_discrepancy", worst},
                   {"ecdf", curve}};
    return out;
}

std::string status_name(randmat::LcdStatus s) {
    switch (s) {
    case randmat::LcdStatus::found: return "found";
    case randmat::LcdStatus::not_found: return "not_found";
    case randmat::LcdStatus::not_defined: return "not_defined";
    }
    return "unknown";
}

Outcome run_normal_lcd(const ExperimentConfig& cfg) {
    randmat::NormalLcdParams p;
    p.n = cfg.integer("n");
    p.k1 = cfg.real("K1");
    p.k2 = cfg.real("K2");
    p.alpha = cfg.real("alpha");
    p.beta = cfg.real("beta");
    p.trials = cfg.integer("trials");
    p.seed = cfg.master_seed;
    p.t_max = cfg.real("t-max");
    p.delta = cfg.real("delta");
    p.rho = cfg.real("rho");
    const auto rep = randmat::normal_lcd_experiment(p, make_distribution(cfg));
    Outcome out{Table({"trial", "seed", "spread_size", "status", "lcd", "censored_lcd", "compressible", "degenerate"}),
                std::nullopt,
                {}};
    for (std::size_t i = 0; i < rep.trials.size(); ++i) {
        const auto& t = rep.trials[i];
        out.report.add_row({static_cast<std::uint64_t>(i), t.seed, static_cast<std::uint64_t>(t.spread_size),
                            status_name(t.status),
                            t.status == randmat::LcdStatus::found ? Cell{t.lcd} : Cell{NA{}}, t.censored_lcd,
                            static_cast<std::uint64_t>(t.compressible), static_cast<std::uint64_t>(t.degenerate)});
    }
    out.results = {{"trials", rep.trials.size()},
                   {"not_found", rep.not_found},
                   {"not_defined", rep.not_defined},
                   {"compressible", rep.compressible},
                   {"compressible_fraction", rep.compressible_fraction()},
                   {"censored_lcd", summary_json(rep.censored)}};
    return out;
}

Outcome run_rectangular(const ExperimentConfig& cfg) {
    const auto n = cfg.integer("n"), k = cfg.integer("k");
    const auto rep = randmat::rectangular_smin_experiment(n, k, make_distribution(cfg), cfg.integer("trials"),
                                                          cfg.master_seed);
    Outcome out{Table({"trial", "seed", "s_min", "s_min_scaled"}), std::nullopt, {}};
    for (std::size_t i = 0; i < rep.smallest.size(); ++i)
        out.report.add_row({static_cast<std::uint64_t>(i), rep.trial_seeds[i], rep.smallest[i], rep.scaled[i]});
    out.results = {{"trials", rep.smallest.size()},
                   {"s_min_scaled", summary_json(rep.summary)},
                   {"edge_reference", 1.0 - std::sqrt(static_cast<double>(k) / static_cast<double>(n))}};
    return out;
}

Outcome dispatch(const ExperimentConfig& cfg) {
    const auto& c = cfg.command;
    if (c == "lcd") return run_lcd(cfg);
    if (c == "smallball") return run_smallball(cfg);
    if (c == "bounds-compare") return run_bounds_compare(cfg);
    if (c == "matrix-tail") return run_matrix_tail(cfg);
    if (c == "largest-sv") return run_largest_sv(cfg);
    if (c == "singularity") return run_singularity(cfg);
    if (c == "distance") return run_distance(cfg);
    if (c == "normal-lcd") return run_normal_lcd(cfg);
    if (c == "rectangular") return run_rectangular(cfg);
    throw ArgumentError("unknown command '" + c + "'");
}

Json config_echo(const ExperimentConfig& cfg) { return Json{{"command", cfg.command}, {"params", cfg.params}}; }

bool write_file(const std::filesystem::path& path, const auto& writer) {
    std::ofstream os(path, std::ios::binary | std::ios::trunc);
    if (!os) return false;
    writer(os);
    os.flush();
    return static_cast<bool>(os);
}

} // namespace

int run(const ExperimentConfig& config, std::ostream& err) {
    std::error_code ec;
    std::filesystem::create_directories(config.output, ec);
    if (ec || !std::filesystem::is_directory(config.output)) {
        err << "error: cannot create output directory " << config.output << '\n';
        return exit_output;
    }

    const auto started = std::chrono::steady_clock::now();
    Outcome outcome{Table({}), std::nullopt, {}};
    try {
        outcome = dispatch(config);
    } catch (const CapacityError& e) {
        err << "capacity error: " << e.what() << '\n';
        return exit_capacity;
    } catch (const ArgumentError& e) {
        err << "validation error: " << e.what() << '\n';
        return exit_validation;
    } catch (const PreconditionError& e) {
        err << "precondition error: " << e.what() << '\n';
        return exit_validation;
    } catch (const CapabilityError& e) {
        err << "validation error: " << e.what() << '\n';
        return exit_validation;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return exit_internal;
    }
    const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();

    const auto echo = config_echo(config);
    const std::string preamble = "config " + echo.dump();
    Json summary = {{"tool", "lolab"},
                    {"version", tool_version},
                    {"command", config.command},
                    {"config", echo["params"]},
                    {"wall_time_seconds", wall},
                    {"results", outcome.results}};

    bool ok = write_file(config.output / "report.csv", [&](std::ostream& os) { outcome.report.write_csv(os, preamble); });
    ok = ok && write_file(config.output / "summary.json", [&](std::ostream& os) { os << summary.dump(2) << '\n'; });
    if (outcome.plot)
        ok = ok && write_file(config.output / "plot.dat",
                              [&](std::ostream& os) { outcome.plot->write_plot(os, preamble); });
    if (!ok) {
        err << "error: cannot write output files in " << config.output << '\n';
        return exit_output;
    }
    return exit_ok;
}

} // namespace lolab::harness
