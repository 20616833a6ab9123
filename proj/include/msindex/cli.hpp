#pragma once

// Command-line front end. Every subcommand writes a JSON run report; the
// exit code is 0 on success, 1 when some result carries a violation or
// alarm, and 2 on usage, parse or configuration errors.

#include <chrono>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "msindex/bounds.hpp"
#include "msindex/conjecture.hpp"
#include "msindex/errors.hpp"
#include "msindex/hypergraph.hpp"
#include "msindex/optimize.hpp"
#include "msindex/report.hpp"
#include "msindex/sampling.hpp"
#include "msindex/symfun.hpp"

namespace msindex::cli {

inline constexpr const char* kVersion = "1.0.0";

enum ExitCode : int { kOk = 0, kViolation = 1, kUsage = 2 };

struct Options {
    std::string input;
    std::string out;
    std::uint64_t seed = 0;
    unsigned threads = 1;
    bool normalize = false;
    std::size_t restarts = 64;
    std::uint64_t max_iters = 100000;
    double tol = 1e-14;
    double kkt_tol = 1e-8;
    std::string bound;
    std::optional<std::size_t> k;
    std::string n;
    std::uint64_t samples = 10000;
    std::string cap_policy;
    std::size_t r = 3;
    std::optional<std::uint64_t> m;
    std::string mode = "colex";
    std::size_t n_max = 0;
    std::uint64_t count = 100;
    std::uint64_t budget = 1000000;
    bool experimental = false;
    bool relaxed = false;

    OptimizerOptions optimizer() const {
        return OptimizerOptions{.restarts = restarts,
                                .max_iters = max_iters,
                                .tol = tol,
                                .kkt_tol = kkt_tol,
                                .seed = seed,
                                .threads = threads};
    }
};

namespace detail {

// The thread count is left out: results never depend on it, and reports
// from different thread counts must compare equal byte for byte.
inline Json echo(const std::string& command, const Options& o) {
    return Json{{"command", command},
                {"input", o.input},
                {"seed", o.seed},
                {"normalize", o.normalize},
                {"restarts", o.restarts},
                {"max_iters", o.max_iters},
                {"tol", o.tol},
                {"kkt_tol", o.kkt_tol},
                {"bound", o.bound},
                {"k", o.k ? Json(*o.k) : Json(nullptr)},
                {"n", o.n},
                {"samples", o.samples},
                {"cap_policy", o.cap_policy},
                {"r", o.r},
                {"m", o.m ? Json(*o.m) : Json(nullptr)},
                {"mode", o.mode},
                {"n_max", o.n_max},
                {"count", o.count},
                {"budget", o.budget},
                {"experimental", o.experimental},
                {"relaxed", o.relaxed}};
}

inline std::ifstream open_input(const std::string& path) {
    if (path.empty()) throw ConfigError("--input is required");
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open input file '" + path + "'");
    return in;
}

inline std::size_t require_k(const Options& o) {
    if (!o.k) throw ConfigError("--k is required");
    return *o.k;
}

/// "5" or "2..8".
inline std::pair<std::size_t, std::size_t> parse_n_range(const std::string& text) {
    if (text.empty()) throw ConfigError("--n is required for sweeps");
    try {
        const auto dots = text.find("..");
        if (dots == std::string::npos) {
            const auto n = static_cast<std::size_t>(std::stoull(text));
            return {n, n};
        }
        return {static_cast<std::size_t>(std::stoull(text.substr(0, dots))),
                static_cast<std::size_t>(std::stoull(text.substr(dots + 2)))};
    } catch (const std::exception&) {
        throw ConfigError("--n must be an integer or a range a..b, got '" + text + "'");
    }
}

inline BoundId parse_bound(const std::string& name) {
    if (name.empty()) throw ConfigError("--bound is required");
    const auto b = bound_from_string(name);
    if (!b) throw ConfigError("unknown bound '" + name + "'");
    return *b;
}

inline CapPolicy default_policy(BoundId bound, std::size_t k, bool relaxed) {
    return precondition_threshold(bound, k, relaxed) ? CapPolicy::threshold : CapPolicy::none;
}

inline CapPolicy resolve_policy(const std::string& text, BoundId bound, std::size_t k,
                                bool relaxed) {
    if (text.empty()) return default_policy(bound, k, relaxed);
    const auto p = cap_policy_from_string(text);
    if (!p) throw ConfigError("unknown cap policy '" + text + "'");
    return *p;
}

inline bool is_sweep_config(const std::string& path) {
    return path.size() >= 5 && path.compare(path.size() - 5, 5, ".json") == 0;
}

/// {"sweeps": [{"bound": ..., "k": ..., "n": 5 | [2, 8], "samples": ...,
///              "cap_policy": ..., "cap": ..., "seed": ..., "relaxed": ...,
///              "experimental": ...}, ...]}
/// Missing fields fall back to the command-line values.
inline std::vector<SweepSpec> parse_sweep_config(std::istream& in, const Options& o) {
    Json doc;
    try {
        doc = Json::parse(in);
    } catch (const Json::exception& e) {
        throw ConfigError(std::string("sweep configuration: ") + e.what());
    }
    if (!doc.contains("sweeps") || !doc["sweeps"].is_array())
        throw ConfigError("sweep configuration needs a 'sweeps' array");
    std::vector<SweepSpec> specs;
    try {
        for (const auto& e : doc["sweeps"]) {
            SweepSpec s;
            s.bound = parse_bound(e.value("bound", o.bound));
            if (e.contains("k")) s.k = e["k"].get<std::size_t>();
            else if (s.bound == BoundId::prop1_chain) s.k = o.k.value_or(0);
            else s.k = require_k(o);
            if (e.contains("n")) {
                if (e["n"].is_array()) {
                    s.n_min = e["n"].at(0).get<std::size_t>();
                    s.n_max = e["n"].at(1).get<std::size_t>();
                } else {
                    s.n_min = s.n_max = e["n"].get<std::size_t>();
                }
            } else {
                std::tie(s.n_min, s.n_max) = parse_n_range(o.n);
            }
            s.samples = e.value("samples", o.samples);
            s.relaxed = e.value("relaxed", o.relaxed);
            s.experimental = e.value("experimental", o.experimental);
            s.cap_policy = resolve_policy(e.value("cap_policy", o.cap_policy), s.bound, s.k,
                                          s.relaxed);
            if (e.contains("cap")) s.cap = e["cap"].get<double>();
            s.seed = e.value("seed", o.seed);
            specs.push_back(s);
        }
    } catch (const Json::exception& e) {
        throw ConfigError(std::string("sweep configuration: ") + e.what());
    }
    return specs;
}

struct Outcome {
    Json results = Json::array();
    bool violation = false;
};

inline Outcome sweep_outcome(const std::vector<SweepSpec>& specs, unsigned threads) {
    Outcome out;
    for (const SweepReport& r : run_bound_sweep(specs, threads)) {
        if (r.violations > 0 && !r.experimental) out.violation = true;
        out.results.push_back(to_json(r));
    }
    return out;
}

inline Outcome reports_outcome(const std::vector<BoundReport>& reports) {
    Outcome out;
    for (const BoundReport& r : reports) {
        out.violation = out.violation || r.violated();
        out.results.push_back(to_json(r));
    }
    return out;
}

inline Outcome run_compute(const Options& o) {
    auto in = open_input(o.input);
    const Hypergraph g = parse_hypergraph(in);
    Outcome out;
    out.results.push_back(to_json(ms_index(g, o.optimizer())));
    return out;
}

inline Outcome run_symfun(const Options& o) {
    auto in = open_input(o.input);
    const SimplexVector x = parse_vector(in, o.normalize ? Normalize::yes : Normalize::no);
    const std::size_t K = o.k.value_or(x.size());
    Json j{{"entries", to_json(x)}, {"stats", to_json(compute_stats(x, K))}};
    if (o.k && *o.k >= 1) j["gradient"] = esp_gradient(x, *o.k);
    j["prop1_chain"] = to_json(check_prop1_chain(x));
    Outcome out;
    out.results.push_back(std::move(j));
    return out;
}

inline Outcome run_bounds(const Options& o) {
    if (!o.input.empty() && is_sweep_config(o.input)) {
        auto in = open_input(o.input);
        return sweep_outcome(parse_sweep_config(in, o), o.threads);
    }
    const BoundId bound = parse_bound(o.bound);
    const std::size_t k = bound == BoundId::prop1_chain ? o.k.value_or(0) : require_k(o);
    if (!o.input.empty()) {
        auto in = open_input(o.input);
        const SimplexVector x = parse_vector(in, o.normalize ? Normalize::yes : Normalize::no);
        SweepSpec probe{.bound = bound, .k = k, .n_min = x.size(), .n_max = x.size(),
                        .relaxed = o.relaxed, .experimental = o.experimental};
        validate(probe);
        return reports_outcome(evaluate_bound(bound, k, x, o.relaxed, o.experimental));
    }
    SweepSpec s;
    s.bound = bound;
    s.k = k;
    std::tie(s.n_min, s.n_max) = parse_n_range(o.n);
    s.samples = o.samples;
    s.relaxed = o.relaxed;
    s.experimental = o.experimental;
    s.cap_policy = resolve_policy(o.cap_policy, bound, k, o.relaxed);
    s.seed = o.seed;
    return sweep_outcome({s}, o.threads);
}

inline Outcome run_proof_claims(const Options& o) {
    const std::size_t k = require_k(o);
    if (!o.input.empty()) {
        auto in = open_input(o.input);
        const SimplexVector x = parse_vector(in, o.normalize ? Normalize::yes : Normalize::no);
        return reports_outcome(check_proof_claims(x, k));
    }
    const auto [n_min, n_max] = parse_n_range(o.n);
    std::vector<SweepSpec> specs;
    for (BoundId b : {BoundId::claim_moment, BoundId::claim_sigma_rec, BoundId::claim_insig}) {
        SweepSpec s;
        s.bound = b;
        s.k = k;
        s.n_min = n_min;
        s.n_max = n_max;
        s.samples = o.samples;
        s.cap_policy = resolve_policy(o.cap_policy, b, k, false);
        s.seed = o.seed;
        specs.push_back(s);
    }
    return sweep_outcome(specs, o.threads);
}

inline Outcome run_conjecture(const Options& o) {
    std::vector<ConjectureVerdict> verdicts;
    if (!o.input.empty()) {
        auto in = open_input(o.input);
        verdicts.push_back(check_conjecture(parse_hypergraph(in), o.optimizer()));
    } else {
        if (!o.m) throw ConfigError("--m is required unless --input names a graph");
        const auto mode = search_mode_from_string(o.mode);
        if (!mode) throw ConfigError("unknown mode '" + o.mode + "'");
        const SearchLimits limits{.n_max = o.n_max, .count = o.count, .budget = o.budget};
        verdicts = search(o.r, *o.m, *mode, limits, o.optimizer());
    }
    Outcome out;
    for (const auto& v : verdicts) {
        out.violation = out.violation || v.flagged();
        out.results.push_back(to_json(v));
    }
    return out;
}

inline void emit(const Options& o, const std::string& text, std::ostream& out) {
    if (o.out.empty()) {
        out << text;
        return;
    }
    std::ofstream file(o.out, std::ios::binary);
    if (!file) throw ConfigError("cannot open output file '" + o.out + "'");
    file << text;
}

}  // namespace detail

/// Parses argv, runs the subcommand and writes its report to `out` (or --out).
inline int dispatch(int argc, const char* const* argv, std::ostream& out = std::cout,
                    std::ostream& err = std::cerr) {
    CLI::App app{"MS-index computation and symmetric-function bound verification", "msindex"};
    app.require_subcommand(1);
    app.set_version_flag("--version", kVersion);
    Options o;

    auto add_io = [&](CLI::App* sc) {
        sc->add_option("--input", o.input, "input file");
        sc->add_option("--out", o.out, "write the report to this file");
    };
    auto add_optimizer = [&](CLI::App* sc) {
        sc->add_option("--restarts", o.restarts, "optimizer restarts")->check(CLI::PositiveNumber);
        sc->add_option("--max-iters", o.max_iters, "iterations per restart");
        sc->add_option("--tol", o.tol, "relative objective stall tolerance");
        sc->add_option("--kkt-tol", o.kkt_tol, "KKT residual certification tolerance");
    };
    auto add_run = [&](CLI::App* sc) {
        sc->add_option("--seed", o.seed, "master seed");
        sc->add_option("--threads", o.threads, "worker threads")->check(CLI::PositiveNumber);
    };
    auto add_sweep = [&](CLI::App* sc) {
        sc->add_option("--n", o.n, "vector length, or range a..b");
        sc->add_option("--samples", o.samples, "samples per sweep");
        sc->add_option("--cap-policy", o.cap_policy, "none | threshold | boundary");
        sc->add_flag("--normalize", o.normalize, "rescale the input vector by its sum");
    };

    auto* compute = app.add_subcommand("compute", "MS-index of a hypergraph file");
    add_io(compute);
    add_run(compute);
    add_optimizer(compute);

    auto* symfun = app.add_subcommand("symfun", "statistics and S_k of a vector file");
    add_io(symfun);
    symfun->add_flag("--normalize", o.normalize, "rescale the input vector by its sum");
    symfun->add_option("--k", o.k, "highest order S_k");

    auto* bounds = app.add_subcommand("bounds", "check one vector or sweep random vectors");
    add_io(bounds);
    add_run(bounds);
    add_sweep(bounds);
    bounds->add_option("--bound", o.bound, "bound identifier");
    bounds->add_option("--k", o.k, "order k");
    bounds->add_flag("--relaxed", o.relaxed, "relaxed thm1_upper threshold (k = 3, 4)");
    bounds->add_flag("--experimental", o.experimental, "allow thm3_partial at k = 6");

    auto* claims = app.add_subcommand("proof-claims", "intermediate proof inequalities");
    add_io(claims);
    add_run(claims);
    add_sweep(claims);
    claims->add_option("--k", o.k, "order k");

    auto* conj = app.add_subcommand("conjecture", "verdict for a graph or a family of graphs");
    add_io(conj);
    add_run(conj);
    add_optimizer(conj);
    conj->add_option("--r", o.r, "uniformity");
    conj->add_option("--m", o.m, "edge count");
    conj->add_option("--mode", o.mode, "colex | random | exhaustive");
    conj->add_option("--n-max", o.n_max, "vertex count for random / exhaustive");
    conj->add_option("--count", o.count, "graphs drawn in random mode");
    conj->add_option("--budget", o.budget, "exhaustive mode limit");

    auto* colex = app.add_subcommand("colex", "emit a colex initial segment as a graph file");
    colex->add_option("--out", o.out, "output file");
    colex->add_option("--r", o.r, "uniformity");
    colex->add_option("--m", o.m, "edge count")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return kOk;
    } catch (const CLI::CallForVersion&) {
        out << kVersion << '\n';
        return kOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n\n" << app.help();
        return kUsage;
    }

    const auto start = std::chrono::steady_clock::now();
    try {
        if (colex->parsed()) {
            detail::emit(o, serialize(colex_segment(o.r, *o.m)), out);
            return kOk;
        }
        std::string command;
        detail::Outcome result;
        if (compute->parsed()) {
            command = "compute";
            result = detail::run_compute(o);
        } else if (symfun->parsed()) {
            command = "symfun";
            result = detail::run_symfun(o);
        } else if (bounds->parsed()) {
            command = "bounds";
            result = detail::run_bounds(o);
        } else if (claims->parsed()) {
            command = "proof-claims";
            result = detail::run_proof_claims(o);
        } else {
            command = "conjecture";
            result = detail::run_conjecture(o);
        }
        const auto elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(
            std::chrono::steady_clock::now() - start);
        Json report{{"command", command},
                    {"config", detail::echo(command, o)},
                    {"results", std::move(result.results)},
                    {"status", result.violation ? "violation" : "ok"},
                    {"wall_time_ms", elapsed.count()},
                    {"version", kVersion}};
        detail::emit(o, report.dump(2) + "\n", out);
        return result.violation ? kViolation : kOk;
    } catch (const ParseError& e) {
        err << "parse error: " << e.what() << '\n';
    } catch (const BudgetExceededError& e) {
        err << "refused: " << e.what() << '\n';
    } catch (const std::invalid_argument& e) {
        err << "configuration error: " << e.what() << '\n';
    } catch (const std::domain_error& e) {
        err << "domain error: " << e.what() << '\n';
    }
    return kUsage;
}

}  // namespace msindex::cli
