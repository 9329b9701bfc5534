#pragma once

// Command-line front end: density grids, exact samples, walk records and
// verification reports. Exit codes: 0 ok/pass, 1 verification failed,
// 2 usage error, 3 internal error.

#include <charconv>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <ostream>
#include <string>
#include <system_error>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "skewbm/density.hpp"
#include "skewbm/errors.hpp"
#include "skewbm/path_sim.hpp"
#include "skewbm/sampler.hpp"
#include "skewbm/verify.hpp"
#include "skewbm/version.hpp"

namespace skewbm::cli {

enum ExitCode : int { kOk = 0, kVerifyFailed = 1, kUsage = 2, kInternal = 3 };

struct RunConfig {
    std::string subcommand;
    double alpha = 0.5;
    double x = 0.0;
    double t = 1.0;
    double v = 0.0;
    double y_min = -3.0;
    double y_max = 3.0;
    int y_steps = 61;
    double ell_min = 0.0;
    double ell_max = 3.0;
    int ell_steps = 31;
    std::string side = "above";
    std::size_t samples = 1000;  // --N
    int steps = 10'000;          // --n
    std::uint64_t seed = 12345;
    std::string out;
    std::string format;  ///< empty: csv for data tables, json for verify
    std::string tie_rule = "alpha";
    std::string checks_file;
    std::vector<std::string> only;
    bool list_checks = false;
};

/// Shortest decimal that reparses to the same double.
inline std::string format_double(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

namespace detail {

class UsageError : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

inline void usage_if(bool bad, const std::string& what) {
    if (bad) throw UsageError(what);
}

inline std::vector<double> grid(double lo, double hi, int steps) {
    std::vector<double> g;
    for (int i = 0; i < steps; ++i) g.push_back(steps == 1 ? lo : lo + (hi - lo) * i / (steps - 1));
    return g;
}

/// Emits a table as CSV with a header row or as {"columns": [...], "rows": [[...]]}.
class TableWriter {
  public:
    TableWriter(std::ostream& os, std::vector<std::string> columns, bool json)
        : os_(os), columns_(std::move(columns)), json_(json) {
        if (!json_) {
            for (std::size_t i = 0; i < columns_.size(); ++i) os_ << (i ? "," : "") << columns_[i];
            os_ << '\n';
        }
    }

    void row(const std::vector<double>& values) {
        if (json_) {
            rows_.push_back(values);
            return;
        }
        for (std::size_t i = 0; i < values.size(); ++i) os_ << (i ? "," : "") << format_double(values[i]);
        os_ << '\n';
    }

    void finish() {
        if (!json_) return;
        nlohmann::ordered_json doc;
        doc["columns"] = columns_;
        doc["rows"] = rows_;
        os_ << doc.dump() << '\n';
    }

  private:
    std::ostream& os_;
    std::vector<std::string> columns_;
    bool json_;
    std::vector<std::vector<double>> rows_;
};

inline void validate_common(const RunConfig& c) {
    usage_if(!(c.t > 0.0), "--t must be > 0");
    usage_if(!c.format.empty() && c.format != "csv" && c.format != "json", "--format must be csv or json");
}

inline SkewParams strict_alpha(const RunConfig& c) {
    usage_if(!(c.alpha > 0.0 && c.alpha < 1.0), "--alpha must lie in (0, 1)");
    return SkewParams(c.alpha);
}

inline int cmd_density(const RunConfig& c, std::ostream& os) {
    validate_common(c);
    const SkewParams s = strict_alpha(c);
    usage_if(c.y_steps < 1 || c.ell_steps < 1, "grid steps must be >= 1");
    usage_if(!(c.y_min <= c.y_max), "--y-min must not exceed --y-max");
    usage_if(!(c.ell_min >= 0.0 && c.ell_min <= c.ell_max), "need 0 <= --ell-min <= --ell-max");
    usage_if(c.side != "above" && c.side != "below" && c.side != "avg", "--side must be above, below or avg");

    TableWriter w(os, {"y", "ell", "continuous", "atom"}, c.format == "json");
    for (double y : grid(c.y_min, c.y_max, c.y_steps)) {
        for (double ell : grid(c.ell_min, c.ell_max, c.ell_steps)) {
            const QueryPoint p{c.x, c.t, y, ell};
            const double cont = c.side == "avg" ? joint_density_averaged(p, s)
                                                : joint_density_continuous(p, s, c.side == "above" ? Side::above : Side::below);
            w.row({y, ell, cont, atom_weight(c.x, y, c.t)});
        }
    }
    w.finish();
    return kOk;
}

inline int cmd_sample(const RunConfig& c, std::ostream& os) {
    validate_common(c);
    const SkewParams s = strict_alpha(c);
    usage_if(c.samples < 1, "--N must be >= 1");
    RngStream rng(c.seed, fnv1a("cli-sample"));
    TableWriter w(os, {"y", "ell", "hit"}, c.format == "json");
    for (std::size_t i = 0; i < c.samples; ++i) {
        const auto j = sample_joint(c.x, c.t, s, rng);
        w.row({j.y, j.ell, j.hit ? 1.0 : 0.0});
    }
    w.finish();
    return kOk;
}

inline int cmd_simulate(const RunConfig& c, std::ostream& os) {
    validate_common(c);
    usage_if(!(c.alpha >= 0.0 && c.alpha <= 1.0), "--alpha must lie in [0, 1] for simulate");
    usage_if(c.steps < 100, "--n must be >= 100");
    usage_if(c.samples < 1, "--N must be >= 1");
    usage_if(c.tie_rule != "alpha" && c.tie_rule != "strict", "--tie-rule must be alpha or strict");
    const WalkGrid g(c.t, c.steps);
    usage_if(!(std::abs(c.v) * g.h < 1.0), "drift too large for this --n (need |v| h < 1)");

    BatchSpec b;
    b.x = c.x;
    b.t = c.t;
    b.alpha = c.alpha;
    b.v = c.v;
    b.steps_per_unit_time = c.steps;
    b.paths = c.samples;
    b.seed = c.seed;
    b.base_stream = fnv1a("cli-simulate");
    b.options.tie_rule = c.tie_rule == "alpha" ? OccupationTieRule::alpha_weighted : OccupationTieRule::strictly_positive;
    const auto records = simulate_batch(b);

    TableWriter w(os, {"terminal", "local_time", "occupation_pos"}, c.format == "json");
    for (const auto& r : records) w.row({r.terminal, r.local_time, r.occupation_pos});
    w.finish();
    return kOk;
}

inline std::vector<CheckSpec> select_checks(const RunConfig& c) {
    std::vector<CheckSpec> specs;
    if (!c.checks_file.empty()) {
        std::ifstream in(c.checks_file);
        usage_if(!in, "cannot open checks file " + c.checks_file);
        nlohmann::json doc;
        try {
            in >> doc;
        } catch (const nlohmann::json::exception& e) {
            throw ConfigError(std::string("checks file is not valid JSON: ") + e.what());
        }
        specs = parse_check_specs(doc, c.seed);
    } else {
        specs = default_suite(c.seed);
    }
    if (c.only.empty()) return specs;
    std::vector<CheckSpec> picked;
    for (const auto& name : c.only) {
        auto it = std::find_if(specs.begin(), specs.end(), [&](const CheckSpec& s) { return s.name == name; });
        usage_if(it == specs.end(), "no check named '" + name + "'");
        picked.push_back(*it);
    }
    return picked;
}

inline void write_report_csv(const VerificationReport& r, std::ostream& os) {
    os << "name,kind,statistic,threshold,pass,n_samples,millis\n";
    for (const auto& c : r.checks)
        os << c.name << ',' << to_string(c.kind) << ',' << format_double(c.statistic) << ','
           << format_double(c.threshold) << ',' << (c.pass ? "true" : "false") << ',' << c.n_samples << ','
           << format_double(c.millis) << '\n';
}

inline int cmd_verify(const RunConfig& c, std::ostream& os) {
    usage_if(!c.format.empty() && c.format != "csv" && c.format != "json", "--format must be csv or json");
    if (c.list_checks) {
        for (const auto& s : select_checks(c)) os << s.name << '\n';
        return kOk;
    }
    const auto report = run_checks(select_checks(c));
    if (c.format == "csv")
        write_report_csv(report, os);
    else
        os << to_json(report).dump(2) << '\n';
    return report.overall_pass ? kOk : kVerifyFailed;
}

}  // namespace detail

/// Parses argv and runs the selected subcommand, writing data to `out`
/// (or the --out file) and diagnostics to `err`.
inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    RunConfig c;
    CLI::App app{"Skew Brownian motion: joint law of position and local time at the interface", "skewbm"};
    app.set_version_flag("--version", std::string(kVersion));
    app.set_config("--config", "", "flat key = value file; command-line flags take precedence");
    app.require_subcommand(1);

    app.add_option("--alpha", c.alpha, "skewness alpha");
    app.add_option("--x", c.x, "start position");
    app.add_option("--t", c.t, "elapsed time");
    app.add_option("--v", c.v, "drift off the interface (simulate)");
    app.add_option("--seed", c.seed, "random seed")->envname("SKEWBM_SEED");
    app.add_option("--out", c.out, "output file (default stdout)");
    app.add_option("--format", c.format, "csv or json");
    app.add_option("--y-min", c.y_min);
    app.add_option("--y-max", c.y_max);
    app.add_option("--y-steps", c.y_steps, "number of y grid points");
    app.add_option("--ell-min", c.ell_min);
    app.add_option("--ell-max", c.ell_max);
    app.add_option("--ell-steps", c.ell_steps, "number of ell grid points");
    app.add_option("--side", c.side, "limit taken at y = 0: above, below or avg");
    app.add_option("--N", c.samples, "samples, paths");
    app.add_option("--n", c.steps, "walk steps per unit time");
    app.add_option("--tie-rule", c.tie_rule, "occupation at site 0: alpha or strict");
    app.add_option("--checks", c.checks_file, "JSON array of check specs (verify)");
    app.add_option("--check", c.only, "run only the named built-in check (repeatable)");
    app.add_flag("--list-checks", c.list_checks, "print check names and exit");

    for (const char* name : {"density", "sample", "simulate", "verify"}) app.add_subcommand(name)->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kOk;
    } catch (const CLI::CallForVersion&) {
        out << kVersion << '\n';
        return kOk;
    } catch (const CLI::ParseError& e) {
        err << "usage error: " << e.what() << '\n';
        return kUsage;
    }
    c.subcommand = app.get_subcommands().front()->get_name();

    std::unique_ptr<std::ofstream> file;
    std::ostream* sink = &out;
    try {
        if (!c.out.empty()) {
            file = std::make_unique<std::ofstream>(c.out, std::ios::binary);
            if (!*file) throw detail::UsageError("cannot open output file " + c.out);
            sink = file.get();
        }
        if (c.subcommand == "density") return detail::cmd_density(c, *sink);
        if (c.subcommand == "sample") return detail::cmd_sample(c, *sink);
        if (c.subcommand == "simulate") return detail::cmd_simulate(c, *sink);
        return detail::cmd_verify(c, *sink);
    } catch (const detail::UsageError& e) {
        err << "usage error: " << e.what() << '\n';
        return kUsage;
    } catch (const ConfigError& e) {
        err << "configuration error: " << e.what() << '\n';
        return kUsage;
    } catch (const DomainError& e) {
        err << "usage error: " << e.what() << '\n';
        return kUsage;
    } catch (const ParameterError& e) {
        err << "usage error: " << e.what() << '\n';
        return kUsage;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << '\n';
        return kInternal;
    }
}

}  // namespace skewbm::cli
