// Command-line frontend: evaluates the entropy bound on the growth rate,
// runs growth-rate / tail-probability simulations, and reports path counts.
//
// Exit codes: 0 success, 1 runtime failure, 2 config or validation error.
// Output files are reproducible byte-for-byte from (config, seed, build):
// wall-clock timings go to stderr only, and the thread count never affects
// file contents.

#include "lpp/bound.hpp"
#include "lpp/format.hpp"
#include "lpp/lattice.hpp"
#include "lpp/lpp_dp.hpp"
#include "lpp/montecarlo.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

using nlohmann::json;

namespace {

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// ---------------------------------------------------------------------------
// parsing helpers

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> parts;
    std::string cur;
    for (char c : s) {
        if (c == sep) {
            parts.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    parts.push_back(cur);
    return parts;
}

double parse_double(const std::string& s, const std::string& field) {
    try {
        std::size_t pos = 0;
        const double v = std::stod(s, &pos);
        if (pos != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw ConfigError(field + ": '" + s + "' is not a number");
    }
}

std::int64_t parse_int(const std::string& s, const std::string& field) {
    try {
        std::size_t pos = 0;
        const long long v = std::stoll(s, &pos);
        if (pos != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw ConfigError(field + ": '" + s + "' is not an integer");
    }
}

std::vector<double> parse_double_list(const std::string& s, const std::string& field) {
    std::vector<double> out;
    for (const std::string& part : split(s, ',')) out.push_back(parse_double(part, field));
    return out;
}

std::vector<std::int64_t> parse_int_list(const std::string& s, const std::string& field) {
    std::vector<std::int64_t> out;
    for (const std::string& part : split(s, ',')) out.push_back(parse_int(part, field));
    return out;
}

// "exponential:1", "gaussian:0,1", "bernoulli:0.5", "geometric:0.5", "uniform:0,2"
lpp::WeightDistribution parse_dist_spec(const std::string& spec) {
    const auto colon = spec.find(':');
    if (colon == std::string::npos)
        throw ConfigError("dist: expected '<family>:<params>', got '" + spec + "'");
    const std::string family = spec.substr(0, colon);
    const std::vector<double> params = parse_double_list(spec.substr(colon + 1), "dist");

    auto need = [&](std::size_t n) {
        if (params.size() != n)
            throw ConfigError("dist: family '" + family + "' takes " + std::to_string(n) +
                              " parameter(s), got " + std::to_string(params.size()));
    };
    try {
        if (family == "exponential") {
            need(1);
            return lpp::WeightDistribution::exponential(params[0]);
        }
        if (family == "gaussian") {
            need(2);
            return lpp::WeightDistribution::gaussian(params[0], params[1]);
        }
        if (family == "bernoulli") {
            need(1);
            return lpp::WeightDistribution::bernoulli(params[0]);
        }
        if (family == "geometric") {
            need(1);
            return lpp::WeightDistribution::geometric(params[0]);
        }
        if (family == "uniform" || family == "uniform_continuous") {
            need(2);
            return lpp::WeightDistribution::uniform(params[0], params[1]);
        }
    } catch (const std::invalid_argument& e) {
        throw ConfigError(std::string("dist: ") + e.what());
    }
    throw ConfigError("dist: unknown family '" + family + "' (expected exponential, gaussian, "
                      "bernoulli, geometric or uniform)");
}

// {"family":"exponential","rate":1.0} and friends; field names per family.
lpp::WeightDistribution parse_dist_json(const json& j) {
    if (!j.is_object() || !j.contains("family") || !j["family"].is_string())
        throw ConfigError("dist: expected an object with a 'family' string");
    const std::string family = j["family"].get<std::string>();

    auto get_num = [&](const char* key) {
        if (!j.contains(key) || !j[key].is_number())
            throw ConfigError("dist: family '" + family + "' requires numeric field '" + key + "'");
        return j[key].get<double>();
    };
    auto check_keys = [&](std::initializer_list<const char*> allowed) {
        for (const auto& [key, value] : j.items()) {
            if (key == "family") continue;
            bool ok = false;
            for (const char* a : allowed) ok = ok || key == a;
            if (!ok) throw ConfigError("dist: unknown field '" + key + "' for family '" + family + "'");
        }
    };
    try {
        if (family == "exponential") {
            check_keys({"rate"});
            return lpp::WeightDistribution::exponential(get_num("rate"));
        }
        if (family == "gaussian") {
            check_keys({"mean", "stddev"});
            return lpp::WeightDistribution::gaussian(get_num("mean"), get_num("stddev"));
        }
        if (family == "bernoulli") {
            check_keys({"prob"});
            return lpp::WeightDistribution::bernoulli(get_num("prob"));
        }
        if (family == "geometric") {
            check_keys({"prob"});
            return lpp::WeightDistribution::geometric(get_num("prob"));
        }
        if (family == "uniform" || family == "uniform_continuous") {
            check_keys({"lo", "hi"});
            return lpp::WeightDistribution::uniform(get_num("lo"), get_num("hi"));
        }
    } catch (const std::invalid_argument& e) {
        throw ConfigError(std::string("dist: ") + e.what());
    }
    throw ConfigError("dist: unknown family '" + family + "'");
}

json dist_to_json(const lpp::WeightDistribution& d) {
    switch (d.family()) {
        case lpp::Family::exponential: return {{"family", "exponential"}, {"rate", d.param_a()}};
        case lpp::Family::gaussian:
            return {{"family", "gaussian"}, {"mean", d.param_a()}, {"stddev", d.param_b()}};
        case lpp::Family::bernoulli: return {{"family", "bernoulli"}, {"prob", d.param_a()}};
        case lpp::Family::geometric: return {{"family", "geometric"}, {"prob", d.param_a()}};
        case lpp::Family::uniform:
            return {{"family", "uniform"}, {"lo", d.param_a()}, {"hi", d.param_b()}};
    }
    return {};
}

// ---------------------------------------------------------------------------
// config file plumbing

json load_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("config: cannot open '" + path + "'");
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw ConfigError("config: " + std::string(e.what()));
    }
}

void reject_unknown_keys(const json& config, std::initializer_list<const char*> allowed) {
    for (const auto& [key, value] : config.items()) {
        bool ok = false;
        for (const char* a : allowed) ok = ok || key == a;
        if (!ok) throw ConfigError("config: unknown field '" + key + "'");
    }
}

template <typename T>
void fill_from_config(const CLI::Option* opt, const json& config, const char* key, T& value) {
    if (opt != nullptr && opt->count() > 0) return;  // flags override config
    if (!config.contains(key)) return;
    try {
        value = config[key].get<T>();
    } catch (const json::exception&) {
        throw ConfigError(std::string("config: field '") + key + "' has the wrong type");
    }
}

// ---------------------------------------------------------------------------
// output plumbing

class OutputTarget {
public:
    explicit OutputTarget(const std::string& path) {
        if (!path.empty()) {
            file_.open(path, std::ios::binary);  // LF line endings everywhere
            if (!file_) throw std::runtime_error("cannot open output file '" + path + "'");
        }
    }
    std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }

private:
    std::ofstream file_;
};

std::string csv_quote(const std::vector<double>& values) {
    std::string s = "\"";
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i) s += ',';
        s += lpp::fmt_g12(values[i]);
    }
    return s + "\"";
}

json json_doubles(const std::vector<double>& values) {
    json arr = json::array();
    for (double v : values) arr.push_back(lpp::round_12sig(v));
    return arr;
}

// One row of the shared results schema (simulate / tail / compare).
struct ResultRow {
    std::string kind;
    std::int64_t n_or_l;
    std::vector<double> direction;
    double estimate_or_prob;
    std::vector<double> stderr_or_ci;  // [stderr] or [ci_low, ci_high]
    double bound;
    std::uint64_t seed;
    std::int64_t replicates;
};

constexpr const char* results_header =
    "kind,n_or_l,direction,estimate_or_prob,stderr_or_ci,bound,seed,replicates";

void write_results(std::ostream& out, const std::string& format, const json& config_echo,
                   const std::vector<ResultRow>& rows) {
    if (format == "json") {
        json doc;
        doc["config"] = config_echo;
        doc["rows"] = json::array();
        for (const ResultRow& r : rows) {
            doc["rows"].push_back({{"kind", r.kind},
                                   {"n_or_l", r.n_or_l},
                                   {"direction", json_doubles(r.direction)},
                                   {"estimate_or_prob", lpp::round_12sig(r.estimate_or_prob)},
                                   {"stderr_or_ci", json_doubles(r.stderr_or_ci)},
                                   {"bound", lpp::round_12sig(r.bound)},
                                   {"seed", r.seed},
                                   {"replicates", r.replicates}});
        }
        out << doc.dump(2) << '\n';
        return;
    }
    out << "# config: " << config_echo.dump() << '\n' << results_header << '\n';
    for (const ResultRow& r : rows) {
        out << r.kind << ',' << r.n_or_l << ',' << csv_quote(r.direction) << ','
            << lpp::fmt_g12(r.estimate_or_prob) << ',';
        if (r.stderr_or_ci.size() == 1)
            out << lpp::fmt_g12(r.stderr_or_ci[0]);
        else
            out << csv_quote(r.stderr_or_ci);
        out << ',' << lpp::fmt_g12(r.bound) << ',' << r.seed << ',' << r.replicates << '\n';
    }
}

// ---------------------------------------------------------------------------
// per-command option blocks

struct CommonOptions {
    std::string dist_spec;
    std::uint64_t seed = 0;
    std::string out_path;
    std::string format = "csv";
    int threads = 1;
    std::string config_path;

    CLI::Option* dist_opt = nullptr;
    CLI::Option* seed_opt = nullptr;
    CLI::Option* out_opt = nullptr;
    CLI::Option* format_opt = nullptr;
    CLI::Option* threads_opt = nullptr;

    bool have_dist_json = false;
    json dist_json;

    void attach(CLI::App* cmd, bool needs_dist) {
        if (needs_dist)
            dist_opt = cmd->add_option("--dist", dist_spec,
                                       "weight distribution, e.g. exponential:1, gaussian:0,1, "
                                       "bernoulli:0.5, geometric:0.5, uniform:0,2");
        seed_opt = cmd->add_option("--seed", seed, "master seed (required; no wall-clock default)");
        out_opt = cmd->add_option("--out", out_path, "output path (default stdout)");
        format_opt = cmd->add_option("--format", format, "csv or json")
                         ->check(CLI::IsMember({"csv", "json"}));
        threads_opt = cmd->add_option("--threads", threads, "worker pool size (default 1)");
        cmd->add_option("--config", config_path, "JSON config file; flags override its values");
    }

    // called after CLI11 parsing, with the loaded config
    void finish(const json& config, bool require_seed = true) {
        fill_from_config(seed_opt, config, "seed", seed);
        fill_from_config(out_opt, config, "out", out_path);
        fill_from_config(format_opt, config, "format", format);
        fill_from_config(threads_opt, config, "threads", threads);
        if (dist_opt != nullptr && dist_opt->count() == 0 && config.contains("dist")) {
            have_dist_json = true;
            dist_json = config["dist"];
        }
        if (require_seed && seed_opt->count() == 0 && !config.contains("seed"))
            throw ConfigError("seed: required (pass --seed or a 'seed' config field)");
        if (threads < 1) throw ConfigError("threads: must be >= 1");
    }

    lpp::WeightDistribution distribution() const {
        if (!dist_spec.empty()) return parse_dist_spec(dist_spec);
        if (have_dist_json) return parse_dist_json(dist_json);
        throw ConfigError("dist: required (pass --dist or a 'dist' config field)");
    }
};

json base_echo(const CommonOptions& common, const lpp::WeightDistribution* dist) {
    json echo;
    echo["seed"] = common.seed;
    echo["format"] = common.format;
    if (dist != nullptr) echo["dist"] = dist_to_json(*dist);
    return echo;
}

double elapsed_seconds(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

// ---------------------------------------------------------------------------
// bound

struct BoundCmd {
    CommonOptions common;
    std::string direction_spec;
    int d = 2;
    int resolution = 0;
    bool bits = false;
    CLI::Option *direction_opt = nullptr, *d_opt = nullptr, *resolution_opt = nullptr;

    void attach(CLI::App* cmd) {
        common.attach(cmd, true);
        direction_opt = cmd->add_option("--direction", direction_spec,
                                        "direction vector, e.g. 1,1 (single-report mode)");
        d_opt = cmd->add_option("--d", d, "simplex dimension for surface mode (2 or 3)");
        resolution_opt =
            cmd->add_option("--resolution", resolution, "simplex grid resolution (surface mode)");
        cmd->add_flag("--bits", bits, "also report the entropy in bits on stderr");
    }

    int run(const json& config) {
        reject_unknown_keys(config, {"dist", "seed", "out", "format", "threads", "direction", "d",
                                     "resolution", "bits"});
        common.finish(config, /*require_seed=*/false);  // bound draws nothing
        std::vector<double> direction;
        if (direction_opt->count() > 0) {
            direction = parse_double_list(direction_spec, "direction");
        } else if (config.contains("direction")) {
            fill_from_config<std::vector<double>>(nullptr, config, "direction", direction);
        }
        fill_from_config(d_opt, config, "d", d);
        fill_from_config(resolution_opt, config, "resolution", resolution);
        if (!bits && config.contains("bits")) bits = config["bits"].get<bool>();

        const bool surface = direction.empty();
        if (surface && resolution == 0)
            throw ConfigError("direction: required unless surface mode (--d/--resolution) is used");

        const lpp::WeightDistribution dist = common.distribution();
        json echo = base_echo(common, &dist);

        std::vector<lpp::BoundSurfaceRow> rows;
        if (surface) {
            if (d != 2 && d != 3) throw ConfigError("d: surface mode supports d in {2,3}");
            if (resolution < 2) throw ConfigError("resolution: must be >= 2");
            echo["d"] = d;
            echo["resolution"] = resolution;
            rows = lpp::bound_on_simplex_grid(dist, d, resolution);
        } else {
            for (double v : direction)
                if (!std::isfinite(v) || v < 0.0)
                    throw ConfigError("direction: entries must be finite and >= 0");
            bool nonzero = false;
            for (double v : direction) nonzero = nonzero || v > 0.0;
            if (!nonzero) throw ConfigError("direction: must be nonzero");
            echo["direction"] = json_doubles(direction);
            lpp::BoundReport report = lpp::evaluate_bound(dist, direction);
            if (bits)
                std::cerr << "# entropy: " << lpp::fmt_g12(report.entropy_nats) << " nats ("
                          << lpp::fmt_g12(report.entropy_nats / std::log(2.0)) << " bits)\n";
            rows.push_back(lpp::BoundSurfaceRow{report.p, report.entropy_nats, report.bound_on_g,
                                                report.degenerate});
        }

        OutputTarget target(common.out_path);
        std::ostream& out = target.stream();
        const std::size_t dim = rows.front().p.dim();
        if (common.format == "json") {
            json doc;
            doc["config"] = echo;
            doc["rows"] = json::array();
            for (const auto& row : rows)
                doc["rows"].push_back({{"p", json_doubles(row.p.entries())},
                                       {"entropy_nats", lpp::round_12sig(row.entropy_nats)},
                                       {"bound", lpp::round_12sig(row.bound)},
                                       {"degenerate", row.degenerate}});
            out << doc.dump(2) << '\n';
        } else {
            out << "# config: " << echo.dump() << '\n';
            for (std::size_t i = 1; i <= dim; ++i) out << "p_" << i << ',';
            out << "entropy_nats,bound,degenerate\n";
            for (const auto& row : rows) {
                for (std::size_t i = 0; i < dim; ++i) out << lpp::fmt_g12(row.p[i]) << ',';
                out << lpp::fmt_g12(row.entropy_nats) << ',' << lpp::fmt_g12(row.bound) << ','
                    << (row.degenerate ? "true" : "false") << '\n';
            }
        }
        return 0;
    }
};

// ---------------------------------------------------------------------------
// simulate

struct SimulateCmd {
    CommonOptions common;
    std::string direction_spec;
    std::string schedule_spec;
    std::int64_t replicates = 0;
    std::string dump_field_path;
    CLI::Option *direction_opt = nullptr, *schedule_opt = nullptr, *replicates_opt = nullptr,
                *dump_opt = nullptr;

    void attach(CLI::App* cmd) {
        common.attach(cmd, true);
        direction_opt = cmd->add_option("--direction", direction_spec, "direction vector, e.g. 1,1");
        schedule_opt = cmd->add_option("--n-schedule", schedule_spec,
                                       "strictly increasing scales, e.g. 50,100,200,400");
        replicates_opt = cmd->add_option("--replicates", replicates, "independent fields per n");
        dump_opt = cmd->add_option("--dump-field", dump_field_path,
                                   "debug: dump replicate 0's weight field at the first n as CSV");
    }

    int run(const json& config) {
        reject_unknown_keys(config, {"dist", "seed", "out", "format", "threads", "direction",
                                     "n_schedule", "replicates", "dump_field"});
        common.finish(config);
        std::vector<double> direction;
        std::vector<std::int64_t> schedule;
        if (direction_opt->count() > 0)
            direction = parse_double_list(direction_spec, "direction");
        else
            fill_from_config<std::vector<double>>(nullptr, config, "direction", direction);
        if (schedule_opt->count() > 0)
            schedule = parse_int_list(schedule_spec, "n_schedule");
        else
            fill_from_config<std::vector<std::int64_t>>(nullptr, config, "n_schedule", schedule);
        fill_from_config(replicates_opt, config, "replicates", replicates);
        fill_from_config(dump_opt, config, "dump_field", dump_field_path);

        if (direction.empty()) throw ConfigError("direction: required");
        if (schedule.empty()) throw ConfigError("n_schedule: required");
        if (replicates < 1) throw ConfigError("replicates: must be >= 1");
        validate_growth_config(direction, schedule);

        const lpp::WeightDistribution dist = common.distribution();
        json echo = base_echo(common, &dist);
        echo["direction"] = json_doubles(direction);
        echo["n_schedule"] = schedule;
        echo["replicates"] = replicates;

        const double bound = lpp::evaluate_bound(dist, direction).bound_on_g;

        if (!dump_field_path.empty()) dump_first_field(dist, direction, schedule.front());

        std::vector<ResultRow> rows;
        for (std::int64_t n : schedule) {
            const auto start = std::chrono::steady_clock::now();
            // one call per n: rows are identical to a full-schedule call since
            // replicate streams do not depend on the schedule position
            const lpp::Estimate est =
                lpp::estimate_growth_rate(dist, direction, {n}, static_cast<int>(replicates),
                                          common.seed, common.threads)
                    .front();
            std::cerr << "# n=" << n << ": " << lpp::fmt_g12(elapsed_seconds(start)) << " s\n";
            rows.push_back(ResultRow{"growth", n, direction, est.value,
                                     {est.stderr_value}, bound, common.seed, replicates});
        }

        OutputTarget target(common.out_path);
        write_results(target.stream(), common.format, echo, rows);
        warn_if_not_converged(rows);
        return 0;
    }

    static void validate_growth_config(const std::vector<double>& direction,
                                       const std::vector<std::int64_t>& schedule) {
        for (double v : direction)
            if (!std::isfinite(v) || v < 0.0)
                throw ConfigError("direction: entries must be finite and >= 0");
        bool nonzero = false;
        for (double v : direction) nonzero = nonzero || v > 0.0;
        if (!nonzero) throw ConfigError("direction: must be nonzero");
        for (std::size_t i = 0; i < schedule.size(); ++i) {
            if (schedule[i] < 1) throw ConfigError("n_schedule: entries must be >= 1");
            if (i > 0 && schedule[i] <= schedule[i - 1])
                throw ConfigError("n_schedule: must be strictly increasing");
        }
        for (std::int64_t n : schedule) {
            try {
                lpp::checked_cell_count(lpp::floor_scaled(direction, n));
            } catch (const lpp::MemoryCapExceeded& e) {
                throw ConfigError("n_schedule: n=" + std::to_string(n) + " " + e.what());
            }
        }
    }

    void dump_first_field(const lpp::WeightDistribution& dist, const std::vector<double>& direction,
                          std::int64_t n) const {
        const lpp::LatticePoint box = lpp::floor_scaled(direction, n);
        constexpr std::uint64_t dump_cap = 1'000'000;
        try {
            lpp::checked_cell_count(box, dump_cap);
        } catch (const lpp::MemoryCapExceeded&) {
            throw ConfigError("dump_field: box " + box.to_string() + " exceeds the dump cap of " +
                              std::to_string(dump_cap) + " cells");
        }
        lpp::RandomStream stream(common.seed, 0);
        const lpp::WeightField field = lpp::WeightField::sample(dist, box, stream);
        std::ofstream out(dump_field_path, std::ios::binary);
        if (!out) throw std::runtime_error("cannot open dump file '" + dump_field_path + "'");
        field.dump_csv(out);
    }

    static void warn_if_not_converged(const std::vector<ResultRow>& rows) {
        if (rows.size() < 2) return;
        const ResultRow& a = rows[rows.size() - 2];
        const ResultRow& b = rows.back();
        const double pooled = std::sqrt(a.stderr_or_ci[0] * a.stderr_or_ci[0] +
                                        b.stderr_or_ci[0] * b.stderr_or_ci[0]);
        if (std::abs(b.estimate_or_prob - a.estimate_or_prob) > 2.0 * pooled)
            std::cerr << "# warning: last two estimates differ by more than 2 pooled stderr; "
                         "the schedule has not converged\n";
    }
};

// ---------------------------------------------------------------------------
// tail

struct TailCmd {
    CommonOptions common;
    std::string p_spec;
    double alpha = 0.0;
    std::string schedule_spec;
    std::int64_t replicates = 0;
    std::int64_t max_denominator = 64;
    CLI::Option *p_opt = nullptr, *alpha_opt = nullptr, *schedule_opt = nullptr,
                *replicates_opt = nullptr, *maxden_opt = nullptr;

    void attach(CLI::App* cmd) {
        common.attach(cmd, true);
        p_opt = cmd->add_option("--p", p_spec, "probability vector, e.g. 0.5,0.5");
        alpha_opt = cmd->add_option("--alpha", alpha, "exceedance threshold");
        schedule_opt =
            cmd->add_option("--l-schedule", schedule_spec, "path lengths, multiples of the scale m");
        replicates_opt = cmd->add_option("--replicates", replicates, "fields per l");
        maxden_opt = cmd->add_option("--max-denominator", max_denominator,
                                     "rationalization denominator cap (default 64)");
    }

    int run(const json& config) {
        reject_unknown_keys(config, {"dist", "seed", "out", "format", "threads", "p", "alpha",
                                     "l_schedule", "replicates", "max_denominator"});
        common.finish(config);
        std::vector<double> p;
        std::vector<std::int64_t> schedule;
        if (p_opt->count() > 0)
            p = parse_double_list(p_spec, "p");
        else
            fill_from_config<std::vector<double>>(nullptr, config, "p", p);
        if (schedule_opt->count() > 0)
            schedule = parse_int_list(schedule_spec, "l_schedule");
        else
            fill_from_config<std::vector<std::int64_t>>(nullptr, config, "l_schedule", schedule);
        fill_from_config(alpha_opt, config, "alpha", alpha);
        fill_from_config(replicates_opt, config, "replicates", replicates);
        fill_from_config(maxden_opt, config, "max_denominator", max_denominator);

        if (p.empty()) throw ConfigError("p: required");
        if (alpha_opt->count() == 0 && !config.contains("alpha"))
            throw ConfigError("alpha: required");
        if (schedule.empty()) throw ConfigError("l_schedule: required");
        if (replicates < 1) throw ConfigError("replicates: must be >= 1");
        if (max_denominator < 1) throw ConfigError("max_denominator: must be >= 1");

        const lpp::WeightDistribution dist = common.distribution();

        lpp::RationalDirection direction = [&] {
            try {
                return lpp::rationalize(lpp::ProbabilityVector(p), max_denominator);
            } catch (const std::invalid_argument& e) {
                throw ConfigError(std::string("p: ") + e.what());
            }
        }();
        for (std::int64_t l : schedule) {
            if (l < 1) throw ConfigError("l_schedule: entries must be >= 1");
            if (l % direction.m != 0)
                throw ConfigError("l_schedule: l=" + std::to_string(l) +
                                  " is not a multiple of the rationalization scale m=" +
                                  std::to_string(direction.m) + " of p");
        }

        const lpp::RateFunctionHandle handle(dist);
        const double threshold = handle.rate_inverse_plus(lpp::entropy(direction.p));
        if (alpha <= dist.mean())
            std::cerr << "# warning: alpha=" << lpp::fmt_g12(alpha)
                      << " is at or below the mean; no decay, chernoff_bound column is 1\n";
        else if (alpha <= threshold)
            std::cerr << "# warning: alpha=" << lpp::fmt_g12(alpha)
                      << " does not exceed the growth-rate bound "
                      << lpp::fmt_g12(threshold) << "; no decay guarantee applies\n";

        json echo = base_echo(common, &dist);
        echo["p"] = json_doubles(p);
        echo["alpha"] = lpp::round_12sig(alpha);
        echo["l_schedule"] = schedule;
        echo["replicates"] = replicates;
        echo["max_denominator"] = max_denominator;

        const auto results = lpp::tail_probability_experiment(
            dist, direction, alpha, schedule, static_cast<int>(replicates), common.seed,
            common.threads);

        std::vector<ResultRow> rows;
        rows.reserve(results.size());
        for (const auto& r : results)
            rows.push_back(ResultRow{"tail", r.l, p, r.empirical_prob,
                                     {r.ci_low, r.ci_high}, r.chernoff_bound, common.seed,
                                     replicates});

        OutputTarget target(common.out_path);
        write_results(target.stream(), common.format, echo, rows);
        return 0;
    }
};

// ---------------------------------------------------------------------------
// compare

struct CompareCmd {
    CommonOptions common;
    std::string directions_spec;
    std::int64_t n = 0;
    std::int64_t replicates = 0;
    CLI::Option *directions_opt = nullptr, *n_opt = nullptr, *replicates_opt = nullptr;

    void attach(CLI::App* cmd) {
        common.attach(cmd, true);
        directions_opt = cmd->add_option(
            "--directions", directions_spec,
            "semicolon-separated direction list, e.g. '1,0;3,1;1,1'");
        n_opt = cmd->add_option("--n", n, "simulation scale");
        replicates_opt = cmd->add_option("--replicates", replicates, "fields per direction");
    }

    int run(const json& config) {
        reject_unknown_keys(config, {"dist", "seed", "out", "format", "threads", "directions", "n",
                                     "replicates"});
        common.finish(config);
        std::vector<std::vector<double>> directions;
        if (directions_opt->count() > 0) {
            for (const std::string& one : split(directions_spec, ';'))
                directions.push_back(parse_double_list(one, "directions"));
        } else if (config.contains("directions")) {
            fill_from_config<std::vector<std::vector<double>>>(nullptr, config, "directions",
                                                               directions);
        }
        fill_from_config(n_opt, config, "n", n);
        fill_from_config(replicates_opt, config, "replicates", replicates);

        if (directions.empty()) throw ConfigError("directions: required");
        if (n < 1) throw ConfigError("n: must be >= 1");
        if (replicates < 1) throw ConfigError("replicates: must be >= 1");
        for (const auto& x : directions)
            SimulateCmd::validate_growth_config(x, {n});

        const lpp::WeightDistribution dist = common.distribution();
        json echo = base_echo(common, &dist);
        echo["directions"] = json::array();
        for (const auto& x : directions) echo["directions"].push_back(json_doubles(x));
        echo["n"] = n;
        echo["replicates"] = replicates;

        const auto results = lpp::compare_bound_to_simulation(
            dist, directions, n, static_cast<int>(replicates), common.seed, common.threads);

        std::vector<ResultRow> rows;
        rows.reserve(results.size());
        for (const auto& r : results)
            rows.push_back(ResultRow{"compare", n, r.direction, r.estimate.value,
                                     {r.estimate.stderr_value}, r.bound, common.seed, replicates});

        OutputTarget target(common.out_path);
        write_results(target.stream(), common.format, echo, rows);
        return 0;
    }
};

// ---------------------------------------------------------------------------
// paths

struct PathsCmd {
    CommonOptions common;
    std::string z_spec;
    bool list = false;
    std::int64_t step_cap = 16;
    CLI::Option *z_opt = nullptr, *cap_opt = nullptr;

    void attach(CLI::App* cmd) {
        common.attach(cmd, false);
        z_opt = cmd->add_option("--z", z_spec, "lattice target, e.g. 2,2");
        cmd->add_flag("--list", list, "also emit the full path enumeration");
        cap_opt = cmd->add_option("--step-cap", step_cap,
                                  "enumeration cap on total steps (default 16)");
    }

    int run(const json& config) {
        reject_unknown_keys(config,
                            {"seed", "out", "format", "threads", "z", "list", "step_cap"});
        common.finish(config, /*require_seed=*/false);  // paths draws nothing
        std::vector<std::int64_t> coords;
        if (z_opt->count() > 0)
            coords = parse_int_list(z_spec, "z");
        else
            fill_from_config<std::vector<std::int64_t>>(nullptr, config, "z", coords);
        if (config.contains("list") && !list) list = config["list"].get<bool>();
        fill_from_config(cap_opt, config, "step_cap", step_cap);

        if (coords.empty()) throw ConfigError("z: required");
        for (std::int64_t c : coords)
            if (c < 0) throw ConfigError("z: entries must be >= 0");
        const lpp::LatticePoint z(coords);
        if (z.l1() < 1) throw ConfigError("z: must have at least one step");

        json echo;
        echo["seed"] = common.seed;
        echo["format"] = common.format;
        echo["z"] = coords;
        echo["list"] = list;

        const lpp::BigInt count = lpp::count_paths(z);
        const double entropy_bound = lpp::entropy_count_bound(z);

        std::vector<lpp::DirectedPath> enumerated;
        std::string enumeration_error;
        if (list) {
            try {
                enumerated = lpp::enumerate_paths(z, step_cap);
            } catch (const lpp::PathCapExceeded& e) {
                enumeration_error = e.what();
            }
        }

        OutputTarget target(common.out_path);
        std::ostream& out = target.stream();
        if (common.format == "json") {
            json doc;
            doc["config"] = echo;
            doc["z"] = coords;
            doc["total_steps"] = z.l1();
            doc["count"] = count.str();
            doc["entropy_bound"] = lpp::round_12sig(entropy_bound);
            if (list && enumeration_error.empty()) {
                doc["paths"] = json::array();
                for (const auto& path : enumerated) {
                    json steps = json::array();
                    for (int s : path) steps.push_back(s + 1);  // 1-based dims for display
                    doc["paths"].push_back(steps);
                }
            }
            out << doc.dump(2) << '\n';
        } else {
            out << "# config: " << echo.dump() << '\n';
            for (std::size_t i = 1; i <= z.dim(); ++i) out << "z_" << i << ',';
            out << "total_steps,count,entropy_bound\n";
            for (std::size_t i = 0; i < z.dim(); ++i) out << z[i] << ',';
            out << z.l1() << ',' << count.str() << ',' << lpp::fmt_g12(entropy_bound) << '\n';
            if (list && enumeration_error.empty()) {
                for (const auto& path : enumerated) {
                    out << "# path:";
                    for (std::size_t i = 0; i < path.size(); ++i)
                        out << (i ? "," : " ") << (path[i] + 1);
                    out << '\n';
                }
            }
        }
        if (!enumeration_error.empty()) {
            std::cerr << "error: " << enumeration_error << '\n';
            return 2;
        }
        return 0;
    }
};

std::string find_config_path(int argc, char** argv) {
    for (int i = 1; i + 1 < argc; ++i)
        if (std::string(argv[i]) == "--config") return argv[i + 1];
    for (int i = 1; i < argc; ++i) {
        const std::string arg = argv[i];
        if (arg.rfind("--config=", 0) == 0) return arg.substr(9);
    }
    return {};
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"entropy bounds and Monte Carlo estimation for directed last-passage growth rates"};
    app.require_subcommand(1);

    BoundCmd bound_cmd;
    SimulateCmd simulate_cmd;
    TailCmd tail_cmd;
    CompareCmd compare_cmd;
    PathsCmd paths_cmd;

    CLI::App* bound_app = app.add_subcommand("bound", "evaluate the growth-rate bound");
    bound_cmd.attach(bound_app);
    CLI::App* simulate_app =
        app.add_subcommand("simulate", "estimate the growth rate along an n schedule");
    simulate_cmd.attach(simulate_app);
    CLI::App* tail_app =
        app.add_subcommand("tail", "tail exceedance probabilities vs the decay estimate");
    tail_cmd.attach(tail_app);
    CLI::App* compare_app =
        app.add_subcommand("compare", "bound vs simulation across directions");
    compare_cmd.attach(compare_app);
    CLI::App* paths_app = app.add_subcommand("paths", "path counts and the entropy estimate");
    paths_cmd.attach(paths_app);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        json config;
        const std::string config_path = find_config_path(argc, argv);
        if (!config_path.empty()) config = load_config_file(config_path);
        if (!config.is_object() && !config.is_null())
            throw ConfigError("config: top level must be a JSON object");

        if (bound_app->parsed()) return bound_cmd.run(config);
        if (simulate_app->parsed()) return simulate_cmd.run(config);
        if (tail_app->parsed()) return tail_cmd.run(config);
        if (compare_app->parsed()) return compare_cmd.run(config);
        if (paths_app->parsed()) return paths_cmd.run(config);
        return 2;
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}
