#include "cli.hpp"

#include "report.hpp"
#include "svg.hpp"

#include "regaudit/diagnostics.hpp"
#include "regaudit/errors.hpp"
#include "regaudit/importance.hpp"
#include "regaudit/io.hpp"
#include "regaudit/model.hpp"
#include "regaudit/scoring.hpp"

#include <CLI11.hpp>
#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <numeric>
#include <optional>

#ifndef REGAUDIT_DEFAULT_ASSETS
#define REGAUDIT_DEFAULT_ASSETS "assets"
#endif

namespace fs = std::filesystem;

namespace regaudit::cli {

fs::path assets_dir() {
    if (const char* env = std::getenv("REGAUDIT_ASSETS"); env != nullptr && *env != '\0') {
        return env;
    }
    return REGAUDIT_DEFAULT_ASSETS;
}

namespace {

// "@name" is shorthand for a bundled asset: <assets>/<subdir>/<name>.json
fs::path resolve(const std::string& arg, const std::string& subdir) {
    if (arg.size() > 1 && arg.front() == '@') {
        fs::path p = assets_dir() / subdir / arg.substr(1);
        if (!p.has_extension()) {
            p += ".json";
        }
        return p;
    }
    return arg;
}

void write_file(const fs::path& path, const std::string& content) {
    std::ofstream f(path, std::ios::binary);
    if (!f) {
        throw input_error(fmt::format("{}: cannot open for writing", path.string()));
    }
    f << content;
    if (!f) {
        throw input_error(fmt::format("{}: write failed", path.string()));
    }
}

std::string odds_text(double p) {
    if (p <= 0.0) return "1:inf";
    if (p >= 1.0) return "inf:1";
    return odds(p).label();
}

Cell opt_cell(const std::optional<double>& v, int decimals) {
    return v ? Cell(*v, decimals) : Cell("-");
}

struct Outcome {
    Report report;
    int code = kExitClean;
};

// ---------------------------------------------------------------- check

struct CheckArgs {
    std::string model;
    double mean_tol = 0.05;
    double sd_slack = 0.20;
    std::string data;
    std::string outcome;
    std::vector<std::string> rules;
};

std::pair<std::string, ValidationRule> parse_rule(const std::string& spec) {
    // column:min:max[:iqr], empty fields skipped
    std::vector<std::string> parts{""};
    for (char ch : spec) {
        if (ch == ':') {
            parts.emplace_back();
        } else {
            parts.back() += ch;
        }
    }
    if (parts.size() < 3 || parts.size() > 4 || parts[0].empty()) {
        throw input_error(fmt::format("rule '{}': expected column:min:max[:iqr]", spec));
    }
    auto number = [&](const std::string& s) {
        try {
            std::size_t used = 0;
            double v = std::stod(s, &used);
            if (used != s.size()) throw std::invalid_argument(s);
            return v;
        } catch (const std::exception&) {
            throw input_error(fmt::format("rule '{}': '{}' is not a number", spec, s));
        }
    };
    ValidationRule rule;
    if (!parts[1].empty()) rule.min = number(parts[1]);
    if (!parts[2].empty()) rule.max = number(parts[2]);
    if (parts.size() == 4 && !parts[3].empty()) rule.iqr_multiplier = number(parts[3]);
    return {parts[0], rule};
}

Outcome cmd_check(const CheckArgs& a) {
    const auto model = io::load_model(resolve(a.model, "models"));
    const auto c = consistency_check(model, {a.mean_tol, a.sd_slack});
    Outcome o;
    auto& r = o.report;
    r.title = fmt::format("consistency check: {}", model.label);
    r.field("predictors", Cell::integer(static_cast<long>(model.predictors.size())));
    r.field("predicted_mean", Cell(c.predicted_mean, 2));
    r.field("reported_mean", opt_cell(c.reported_mean, 2));
    r.field("mean_abs_dev", opt_cell(c.mean_abs_dev, 2));
    r.field("sd_l1", Cell(c.sd_l1, 2));
    r.field("sd_l2", Cell(c.sd_l2, 2));
    r.field("reported_sd", opt_cell(c.reported_sd, 2));
    r.flags = c.flags;

    if (!a.data.empty()) {
        std::optional<std::string> outcome;
        if (!a.outcome.empty()) outcome = a.outcome;
        const auto data = io::load_observations(a.data, outcome);
        if (outcome) {
            const auto cv = cross_validate(model, data);
            r.field("holdout_rows", Cell::integer(static_cast<long>(cv.rows)));
            r.field("holdout_mse", Cell(cv.mse, 4));
            r.field("holdout_r2", Cell(cv.r2_holdout, 4));
        }
        std::map<std::string, ValidationRule> rules;
        for (const auto& spec : a.rules) {
            auto [column, rule] = parse_rule(spec);
            rules[column] = rule;
        }
        if (!rules.empty()) {
            const auto v = validate_observations(data, rules);
            Table t{"violations", {"row", "column", "value", "rule"}, {}};
            for (const auto& viol : v.violations) {
                // rows are reported 1-based, as they appear below the header
                t.rows.push_back({Cell::integer(static_cast<long>(viol.row + 1)), viol.column, Cell(viol.value, 4),
                                  viol.rule});
                r.flags.push_back(fmt::format("row {} column '{}' = {}: {}", viol.row + 1, viol.column,
                                              Cell(viol.value, 4).text, viol.rule));
            }
            r.field("violations", Cell::integer(static_cast<long>(v.violations.size())));
            r.tables.push_back(std::move(t));
        }
    } else if (!a.rules.empty() || !a.outcome.empty()) {
        throw input_error("--rule and --outcome need --data");
    }
    o.code = r.flags.empty() ? kExitClean : kExitFlagged;
    return o;
}

// ----------------------------------------------------------- importance

struct ImportanceArgs {
    std::string model;
    double p = 1.3;
    bool calibrate = false;
    std::string plot;
    std::string cov;
};

Outcome cmd_importance(const ImportanceArgs& a) {
    const auto model = io::load_model(resolve(a.model, "models"));
    double p = a.p;
    if (!(p >= 1.0 && p <= 2.0)) {
        throw input_error(fmt::format("--p {} outside [1, 2]", p));
    }
    Outcome o;
    auto& r = o.report;
    r.title = fmt::format("relative importance: {}", model.label);
    if (a.calibrate) {
        p = calibrate_p(model);
        r.field("calibrated_p", Cell(p, 2));
    }
    const auto rep = ri_bounds(model, p);
    r.field("p_point", Cell(rep.p_point, 2));
    r.field("sd_l1", Cell(lp_aggregate(model, 1.0), 2));
    r.field("sd_l2", Cell(lp_aggregate(model, 2.0), 2));
    r.field("sd_lp", Cell(lp_aggregate(model, rep.p_point), 2));
    if (model.reported.r2 && model.reported.sd) {
        r.field("explained_sd_target", Cell(std::sqrt(*model.reported.r2) * *model.reported.sd, 2));
    }
    // without covariances the L1/L2 bracket is a heuristic and can fail for anticorrelated predictors
    r.field("bracket", a.cov.empty() ? "heuristic" : "heuristic; exact variance below");
    if (!a.cov.empty()) {
        const auto cov = io::load_covariance(a.cov);
        const double var = explained_variance(model, cov);
        r.field("explained_sd_exact", Cell(std::sqrt(var), 2));
        if (model.reported.sd && *model.reported.sd > 0.0) {
            r.field("implied_r2", Cell(var / (*model.reported.sd * *model.reported.sd), 4));
        }
    }

    std::vector<std::size_t> order(rep.rows.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
        return rep.rows[i].share_point > rep.rows[j].share_point;
    });
    std::vector<long> rank(rep.rows.size());
    for (std::size_t k = 0; k < order.size(); ++k) {
        rank[order[k]] = static_cast<long>(k + 1);
    }
    Table t{"importance", {"predictor", "lower", "point", "upper", "rank", "sign"}, {}};
    for (std::size_t i = 0; i < rep.rows.size(); ++i) {
        const auto& row = rep.rows[i];
        t.rows.push_back({row.name, Cell(row.share_lower, 4), Cell(row.share_point, 4), Cell(row.share_upper, 4),
                          Cell::integer(rank[i]), row.negative_coefficient ? "-" : "+"});
    }
    r.tables.push_back(std::move(t));
    if (!a.plot.empty()) {
        write_file(a.plot, importance_svg(model.label, rep));
        r.notes.push_back(fmt::format("plot written to {}", a.plot));
    }
    return o;
}

// --------------------------------------------------------------- effect

struct EffectArgs {
    std::string a;
    std::string b;
    std::string method = "both";
    std::size_t samples = 1000;
    std::optional<std::uint64_t> seed;
    bool linear = false;
};

Outcome cmd_effect(const EffectArgs& args) {
    const bool want_normal = args.method == "normal" || args.method == "both";
    const bool want_mc = args.method == "mc" || args.method == "both";
    if (!want_normal && !want_mc) {
        throw input_error(fmt::format("--method '{}' (normal|mc|both)", args.method));
    }
    if (want_mc && !args.seed) {
        throw input_error("--seed is required for Monte Carlo effect sizes");
    }
    if (args.samples < 1) {
        throw input_error("--samples must be at least 1");
    }
    const auto interp = args.linear ? Interpolation::linear : Interpolation::monotone_cubic;
    const auto pa = io::load_profile(resolve(args.a, "profiles"), interp);
    const auto pb = io::load_profile(resolve(args.b, "profiles"), interp);
    if (pa.direction() != pb.direction()) {
        throw input_error(fmt::format("'{}' is {} but '{}' is {}", pa.label(), to_string(pa.direction()),
                                      pb.label(), to_string(pb.direction())));
    }

    Outcome o;
    auto& r = o.report;
    r.title = fmt::format("effect size: {} vs {}", pa.label(), pb.label());
    r.field("direction", to_string(pa.direction()));
    r.field("interpolation", args.linear ? "linear" : "monotone_cubic");
    const auto ma = profile_moments(pa);
    const auto mb = profile_moments(pb);
    r.field("mean_a", Cell(ma.mean, 3));
    r.field("sd_a", Cell(ma.sd, 3));
    r.field("mean_b", Cell(mb.mean, 3));
    r.field("sd_b", Cell(mb.sd, 3));

    if (want_normal) {
        // without group sizes the SDs pool with equal weight
        const double na = pa.sample_size().value_or(1);
        const double nb = pb.sample_size().value_or(1);
        if (!pa.sample_size() || !pb.sample_size()) {
            r.notes.push_back("group size missing; SDs pooled with equal weight");
        }
        double d = cohen_d(ma.mean, ma.sd, na, mb.mean, mb.sd, nb);
        if (pa.direction() == Direction::lower_is_better) {
            d = -d;
        }
        const double p = cles_normal(d);
        r.field("d", Cell(d, 4));
        r.field("cles_normal", Cell(p, 4));
        r.field("odds_normal", odds_text(p));
    }
    if (want_mc) {
        const double p = cles_mc(pa, pb, args.samples, *args.seed);
        r.field("samples", Cell::integer(static_cast<long>(args.samples)));
        r.field("seed", Cell(fmt::format("{}", *args.seed)));
        r.field("cles_mc", Cell(p, 4));
        r.field("odds_mc", odds_text(p));
    }
    r.notes.push_back("cles is the probability that a random draw from a outperforms one from b");
    return o;
}

// ---------------------------------------------------------- reconstruct

struct ReconstructArgs {
    std::string profile;
    std::size_t samples = 1000;
    std::optional<std::uint64_t> seed;
    std::optional<double> bandwidth;
    bool linear = false;
    std::string svg;
};

Outcome cmd_reconstruct(const ReconstructArgs& a) {
    if (!a.seed) {
        throw input_error("--seed is required");
    }
    if (a.samples < 1) {
        throw input_error("--samples must be at least 1");
    }
    if (a.bandwidth && !(*a.bandwidth > 0.0)) {
        throw input_error("--bandwidth must be positive");
    }
    const auto profile =
        io::load_profile(resolve(a.profile, "profiles"), a.linear ? Interpolation::linear : Interpolation::monotone_cubic);
    const auto samples = sample(profile, a.samples, *a.seed);
    const auto curve = density(samples, a.bandwidth);

    Outcome o;
    auto& r = o.report;
    r.title = fmt::format("reconstructed density: {}", profile.label());
    r.field("samples", Cell::integer(static_cast<long>(a.samples)));
    r.field("seed", Cell(fmt::format("{}", *a.seed)));
    r.field("bandwidth", Cell(curve.bandwidth, 6));
    r.field("integral", Cell(curve.integral(), 6));
    Table t{"density", {"grid", "density"}, {}};
    for (std::size_t i = 0; i < curve.grid.size(); ++i) {
        t.rows.push_back({Cell(curve.grid[i], 6), Cell::scientific(curve.density[i], 9)});
    }
    r.tables.push_back(std::move(t));
    if (!a.svg.empty()) {
        write_file(a.svg, density_svg(profile.label(), curve));
        r.notes.push_back(fmt::format("plot written to {}", a.svg));
    }
    return o;
}

// ---------------------------------------------------------------- score

struct ScoreArgs {
    std::string standard;
    std::string cohort;
    std::string tier = "gold";
    std::string group_by = "gender";
};

void add_impact(Report& r, const ImpactReport& imp) {
    r.field("impact_ratio", Cell(imp.ratio, 3));
    r.field("lowest_group", imp.lowest_group);
    r.field("highest_group", imp.highest_group);
    r.field("four_fifths", imp.flagged ? "fail" : "pass");
    if (imp.flagged) {
        r.flags.push_back(fmt::format("impact ratio {} ({} / {}) is below 0.8", Cell(imp.ratio, 3).text,
                                      imp.lowest_group, imp.highest_group));
    }
}

Outcome cmd_score(const ScoreArgs& a) {
    const auto standard = io::load_standard(resolve(a.standard, "standards"));
    const auto cohort = io::load_cohort(a.cohort);
    const auto rates = pass_rates(cohort, standard, a.tier, a.group_by);

    Outcome o;
    auto& r = o.report;
    r.title = fmt::format("pass rates: tier {} by {}", a.tier, a.group_by);
    r.field("tier", a.tier);
    r.field("tier_minimum", Cell::integer(standard.tier_minimum(a.tier)));
    Table t{"pass_rates", {"group", "n"}, {}};
    for (const auto& e : standard.events) {
        t.columns.push_back(e.name);
    }
    t.columns.push_back("overall");
    std::map<std::string, double> overall;
    for (const auto& g : rates.groups) {
        std::vector<Cell> row{g.group, Cell::integer(static_cast<long>(g.total))};
        for (const auto& e : standard.events) {
            row.emplace_back(g.event_rates.at(e.name), 3);
        }
        row.emplace_back(g.overall, 3);
        t.rows.push_back(std::move(row));
        overall[g.group] = g.overall;
    }
    r.tables.push_back(std::move(t));
    r.notes = rates.warnings;
    if (overall.size() >= 2) {
        add_impact(r, impact_ratio(overall));
    } else {
        r.notes.push_back("fewer than two groups; impact ratio not computed");
    }
    o.code = r.flags.empty() ? kExitClean : kExitFlagged;
    return o;
}

// --------------------------------------------------------------- impact

struct ImpactArgs {
    std::string rates;
    std::vector<std::string> rate;
    std::string counts;
};

Outcome cmd_impact(const ImpactArgs& a) {
    if (a.rates.empty() && a.rate.empty() && a.counts.empty()) {
        throw input_error("give a rates file, --rate group=value, or --counts");
    }
    if (!a.rates.empty() && !a.rate.empty()) {
        throw input_error("use either a rates file or --rate, not both");
    }
    Outcome o;
    auto& r = o.report;
    r.title = "adverse impact";

    std::optional<io::RateFile> file;
    if (!a.rates.empty()) {
        file = io::load_rates(resolve(a.rates, "rates"));
    } else if (!a.rate.empty()) {
        io::RateFile f;
        f.label = "command line";
        for (const auto& spec : a.rate) {
            const auto eq = spec.find('=');
            if (eq == std::string::npos || eq == 0) {
                throw input_error(fmt::format("--rate '{}': expected group=value", spec));
            }
            const std::string value = spec.substr(eq + 1);
            double v = 0.0;
            try {
                std::size_t used = 0;
                v = std::stod(value, &used);
                if (used != value.size()) throw std::invalid_argument(value);
            } catch (const std::exception&) {
                throw input_error(fmt::format("--rate '{}': '{}' is not a number", spec, value));
            }
            if (!f.rates.emplace(spec.substr(0, eq), v).second) {
                throw input_error(fmt::format("--rate: group '{}' given twice", spec.substr(0, eq)));
            }
        }
        file = std::move(f);
    }

    if (file) {
        r.title = fmt::format("adverse impact: {}", file->label);
        Table rates{"selection_rates", {"group", "rate"}, {}};
        for (const auto& [g, v] : file->rates) {
            rates.rows.push_back({g, Cell(v, 3)});
        }
        r.tables.push_back(std::move(rates));
        add_impact(r, impact_ratio(file->rates));
        if (!file->series.empty()) {
            Table s{"series", {"period", "lowest", "highest", "ratio", "four_fifths"}, {}};
            for (const auto& point : file->series) {
                const auto imp = impact_ratio(point.rates);
                s.rows.push_back({point.period, imp.lowest_group, imp.highest_group, Cell(imp.ratio, 3),
                                  imp.flagged ? "fail" : "pass"});
            }
            r.tables.push_back(std::move(s));
        }
    }

    if (!a.counts.empty()) {
        const auto c = io::load_counts(resolve(a.counts, "rates"));
        auto tally = [&](const std::string& test) -> const std::map<std::string, io::PassFail>& {
            auto it = c.counts.find(test);
            if (it == c.counts.end()) {
                throw input_error(fmt::format("counts file has no test '{}'", test));
            }
            return it->second;
        };
        const auto& base = tally(c.baseline);
        const auto& comp = tally(c.comparison);
        Table t{"relative_difficulty",
                {"group", c.baseline + "_fail_rate", c.comparison + "_fail_rate", "ratio"},
                {}};
        for (const auto& [group, b] : base) {
            auto it = comp.find(group);
            if (it == comp.end()) {
                throw input_error(fmt::format("group '{}' missing from {} counts", group, c.comparison));
            }
            const FailCount fb{b.fail, b.pass + b.fail};
            const FailCount fc{it->second.fail, it->second.pass + it->second.fail};
            const double ratio = difficulty_ratio(fb, fc);
            t.rows.push_back({group, Cell(static_cast<double>(fb.fails) / static_cast<double>(fb.total), 3),
                              Cell(static_cast<double>(fc.fails) / static_cast<double>(fc.total), 3),
                              Cell(ratio, 2)});
        }
        r.tables.push_back(std::move(t));
        r.notes.push_back(fmt::format("ratio = {} fail rate / {} fail rate ({})", c.baseline, c.comparison, c.label));
    }
    o.code = r.flags.empty() ? kExitClean : kExitFlagged;
    return o;
}

// ------------------------------------------------------------- anscombe

Outcome cmd_anscombe() {
    const auto rep = anscombe_demo();
    Outcome o;
    auto& r = o.report;
    r.title = "Anscombe's quartet: one regression line, four data sets";
    r.field("max_spread", Cell(rep.max_spread, 4));
    Table t{"fits", {"set", "intercept", "slope", "r2", "y_mean", "y_variance"}, {}};
    for (std::size_t s = 0; s < 4; ++s) {
        const auto& f = rep.fits[s];
        t.rows.push_back({Cell::integer(static_cast<long>(s + 1)), Cell(f.coefficients[0], 4),
                          Cell(f.coefficients[1], 4), Cell(f.r2, 4), Cell(rep.y_mean[s], 4),
                          Cell(rep.y_variance[s], 4)});
    }
    r.tables.push_back(std::move(t));
    return o;
}

// --------------------------------------------------------------- r2null

Outcome cmd_r2null(const NullSpec& spec) {
    const double p = r2_null_pvalue(spec);
    Outcome o;
    auto& r = o.report;
    r.title = "R^2 under the null hypothesis (all slopes zero)";
    r.field("n", Cell::integer(spec.n));
    r.field("k", Cell::integer(spec.k));
    r.field("r2", Cell(spec.r2, 4));
    r.field("null_mean_r2", Cell(static_cast<double>(spec.k - 1) / static_cast<double>(spec.n - 1), 4));
    r.field("p_value", Cell::scientific(p, 3));
    r.field("significance", p < 1e-3 ? "< 1e-3" : fmt::format("{:.4f}", p));
    return o;
}

// --------------------------------------------------------------- wathen

Outcome cmd_wathen(double weight, int reps) {
    const double orm = wathen_1rm(weight, reps);
    Outcome o;
    auto& r = o.report;
    r.title = "one-repetition maximum (Wathen)";
    r.field("weight", Cell(weight, 1));
    r.field("reps", Cell::integer(reps));
    r.field("one_rep_max", Cell(orm, 1));
    return o;
}

// ------------------------------------------------------------ composite

struct CompositeArgs {
    std::string model;
    std::vector<std::string> sources;
    std::string name;
    double coefficient = 0.0;
    std::string output;
};

Outcome cmd_composite(const CompositeArgs& a) {
    const auto model = io::load_model(resolve(a.model, "models"));
    const auto folded = zfold(model, a.sources, a.name, a.coefficient);
    const auto& f = folded.predictors[*folded.find(a.name)];

    Outcome o;
    auto& r = o.report;
    r.title = fmt::format("z-score composite: {}", folded.label);
    std::string joined;
    for (const auto& s : a.sources) {
        joined += (joined.empty() ? "" : ",") + s;
    }
    r.field("sources", joined);
    r.field("mu_star", Cell(f.mean, 3));
    r.field("sigma_star", Cell(f.sd, 3));
    r.field("predicted_mean", Cell(predict_at_means(folded), 2));
    r.field("sd_l1", Cell(lp_aggregate(folded, 1.0), 2));
    Table t{"predictors", {"name", "coefficient", "mean", "sd"}, {}};
    for (const auto& p : folded.predictors) {
        t.rows.push_back({p.name, Cell(p.coefficient, 4), Cell(p.mean, 3), Cell(p.sd, 3)});
    }
    r.tables.push_back(std::move(t));
    if (!a.output.empty()) {
        write_file(a.output, io::model_to_json(folded));
        r.notes.push_back(fmt::format("model written to {}", a.output));
    }
    return o;
}

} // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Audit published linear regression models from their summary statistics.", "regaudit"};
    app.require_subcommand(1, 1);
    app.fallthrough();
    std::string format_text = "table";
    app.add_option("--format", format_text, "table | csv | structured")->capture_default_str();

    std::function<Outcome()> action;

    CheckArgs check;
    auto* c = app.add_subcommand("check", "Compare a model's implied mean and SD with the reported outcome");
    c->add_option("model", check.model, "model file, or @name for a bundled model")->required();
    c->add_option("--mean-tol", check.mean_tol, "relative tolerance on the mean")->capture_default_str();
    c->add_option("--sd-slack", check.sd_slack, "slack on the [L2, L1] SD band")->capture_default_str();
    c->add_option("--data", check.data, "observation CSV (holdout rows and/or rule checks)");
    c->add_option("--outcome", check.outcome, "outcome column in --data; enables cross-validation");
    c->add_option("--rule", check.rules, "column:min:max[:iqr] sanity rule on --data (repeatable)");
    c->callback([&] { action = [&] { return cmd_check(check); }; });

    ImportanceArgs imp;
    auto* i = app.add_subcommand("importance", "Relative importance bands of a model's predictors");
    i->add_option("model", imp.model, "model file, or @name")->required();
    i->add_option("--p", imp.p, "exponent for the point estimate, in [1, 2]")->capture_default_str();
    i->add_flag("--calibrate", imp.calibrate, "fit p to the reported R^2 and SD");
    i->add_option("--plot", imp.plot, "write an SVG band chart");
    i->add_option("--cov", imp.cov, "predictor covariance CSV for the exact explained variance");
    i->callback([&] { action = [&] { return cmd_importance(imp); }; });

    EffectArgs eff;
    auto* e = app.add_subcommand("effect", "Cohen's d, common-language effect size and odds between two profiles");
    e->add_option("profile_a", eff.a, "percentile profile, or @name")->required();
    e->add_option("profile_b", eff.b, "percentile profile, or @name")->required();
    e->add_option("--method", eff.method, "normal | mc | both")->capture_default_str();
    e->add_option("--samples", eff.samples, "Monte Carlo draws")->capture_default_str();
    e->add_option("--seed", eff.seed, "random seed (required for mc)");
    e->add_flag("--linear", eff.linear, "piecewise-linear quantile interpolation");
    e->callback([&] { action = [&] { return cmd_effect(eff); }; });

    ReconstructArgs rec;
    auto* rc = app.add_subcommand("reconstruct", "Sample a percentile profile and smooth it into a density");
    rc->add_option("profile", rec.profile, "percentile profile, or @name")->required();
    rc->add_option("--samples", rec.samples, "Monte Carlo draws")->capture_default_str();
    rc->add_option("--seed", rec.seed, "random seed (required)");
    rc->add_option("--bandwidth", rec.bandwidth, "kernel bandwidth (default: Silverman)");
    rc->add_flag("--linear", rec.linear, "piecewise-linear quantile interpolation");
    rc->add_option("--svg", rec.svg, "write an SVG plot");
    rc->callback([&] { action = [&] { return cmd_reconstruct(rec); }; });

    ScoreArgs sc;
    auto* s = app.add_subcommand("score", "Pass rates of a cohort under a tiered standard, with impact ratio");
    s->add_option("standard", sc.standard, "standard file, or @name")->required();
    s->add_option("cohort", sc.cohort, "cohort CSV; group columns are named group:<label>")->required();
    s->add_option("--tier", sc.tier, "tier name")->capture_default_str();
    s->add_option("--group-by", sc.group_by, "group column (without the group: prefix)")->capture_default_str();
    s->callback([&] { action = [&] { return cmd_score(sc); }; });

    ImpactArgs ia;
    auto* im = app.add_subcommand("impact", "Four-fifths impact ratio and relative difficulty");
    im->add_option("rates", ia.rates, "rate file, or @name");
    im->add_option("--rate", ia.rate, "group=rate (repeatable)");
    im->add_option("--counts", ia.counts, "pass/fail count file, or @name");
    im->callback([&] { action = [&] { return cmd_impact(ia); }; });

    auto* an = app.add_subcommand("anscombe", "Fit Anscombe's quartet");
    an->callback([&] { action = [&] { return cmd_anscombe(); }; });

    NullSpec ns;
    auto* rn = app.add_subcommand("r2null", "p-value of R^2 when every slope is zero");
    rn->add_option("--n", ns.n, "observations")->required();
    rn->add_option("--k", ns.k, "coefficients, counting the constant")->required();
    rn->add_option("--r2", ns.r2, "observed R^2")->required();
    rn->callback([&] { action = [&] { return cmd_r2null(ns); }; });

    double weight = 0.0;
    int reps = 0;
    auto* w = app.add_subcommand("wathen", "One-repetition maximum from a multi-rep lift");
    w->add_option("--weight", weight, "lifted weight")->required();
    w->add_option("--reps", reps, "repetitions")->required();
    w->callback([&] { action = [&] { return cmd_wathen(weight, reps); }; });

    CompositeArgs comp;
    auto* cp = app.add_subcommand("composite", "Fold predictors into one weighted z-score composite");
    cp->add_option("model", comp.model, "model file, or @name")->required();
    cp->add_option("--sources", comp.sources, "predictors to fold")->required()->delimiter(',');
    cp->add_option("--name", comp.name, "name of the composite")->required();
    cp->add_option("--coefficient", comp.coefficient, "coefficient of the composite")->required();
    cp->add_option("--output", comp.output, "write the folded model JSON");
    cp->callback([&] { action = [&] { return cmd_composite(comp); }; });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& ex) {
        app.exit(ex, out, err);
        return kExitClean;
    } catch (const CLI::CallForAllHelp& ex) {
        app.exit(ex, out, err);
        return kExitClean;
    } catch (const CLI::ParseError& ex) {
        err << "regaudit: " << ex.what() << '\n';
        return kExitInput;
    }

    try {
        const Format format = parse_format(format_text);
        Outcome o = action();
        render(o.report, format, out);
        return o.code;
    } catch (const internal_error& ex) {
        err << "regaudit: internal error: " << ex.what() << '\n';
        return kExitInput;
    } catch (const std::exception& ex) {
        err << "regaudit: " << ex.what() << '\n';
        return kExitInput;
    }
}

} // namespace regaudit::cli
