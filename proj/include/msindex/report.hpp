#pragma once

// JSON encodings of result types. Field names follow the domain types;
// key order is fixed so identical runs serialize to identical bytes.

#include <cmath>
#include <string>

#include "json.hpp"
#include "msindex/bounds.hpp"
#include "msindex/conjecture.hpp"
#include "msindex/hypergraph.hpp"
#include "msindex/optimize.hpp"
#include "msindex/sampling.hpp"
#include "msindex/symfun.hpp"

namespace msindex {

using Json = nlohmann::ordered_json;

inline Json to_json(const SimplexVector& x) {
    Json a = Json::array();
    for (double v : x.entries()) a.push_back(v);
    return a;
}

inline Json to_json(const VertexWeights& x) {
    Json a = Json::array();
    for (double v : x.values()) a.push_back(v);
    return a;
}

inline Json to_json(const Hypergraph& g) {
    Json edges = Json::array();
    for (std::size_t j = 0; j < g.m(); ++j) {
        Json e = Json::array();
        for (Vertex v : g.edge(j)) e.push_back(v + 1);
        edges.push_back(std::move(e));
    }
    return Json{{"r", g.r()}, {"n", g.n()}, {"m", g.m()}, {"edges", std::move(edges)}};
}

inline Json to_json(const StatBundle& s) {
    return Json{{"sigma", s.sigma}, {"q", s.q},         {"p", s.p},
                {"t4", s.t4},       {"x_max", s.x_max}, {"n_prime", s.n_prime},
                {"esp", s.esp}};
}

inline Json to_json(const BoundReport& r) {
    return Json{{"bound_id", to_string(r.bound_id)},
                {"k", r.k},
                {"applicable", r.applicable},
                {"lhs", r.lhs},
                {"rhs", r.rhs},
                {"margin", r.margin},
                {"equality_case", r.equality_case},
                {"constraint_slack", r.constraint_slack},
                {"experimental", r.experimental},
                {"violation", r.violated()}};
}

inline Json to_json(const SweepReport& r) {
    return Json{{"bound_id", to_string(r.bound_id)},
                {"k", r.k},
                {"n_min", r.n_min},
                {"n_max", r.n_max},
                {"cap_policy", to_string(r.cap_policy)},
                {"cap", r.cap},
                {"samples_total", r.samples_total},
                {"samples_applicable", r.samples_applicable},
                {"equality_samples", r.equality_samples},
                {"min_margin", std::isfinite(r.min_margin) ? Json(r.min_margin) : Json(nullptr)},
                {"argmin_index", r.argmin_index},
                {"argmin_vector", r.samples_applicable ? to_json(r.argmin_vector) : Json::array()},
                {"violations", r.violations},
                {"seed", r.seed},
                {"experimental", r.experimental}};
}

inline Json to_json(const OptimizationResult& r) {
    return Json{{"best_x", to_json(r.best_x)},
                {"mu", r.mu},
                {"kkt_residual", r.kkt_residual},
                {"support_size", r.support_size},
                {"restarts_used", r.restarts_used},
                {"iterations_total", r.iterations_total},
                {"converged", r.converged}};
}

inline Json to_json(const ConjectureVerdict& v) {
    Json j{{"r", v.r},
           {"m", v.m},
           {"t", v.t},
           {"bound", v.bound},
           {"mu_estimate", v.mu_estimate},
           {"slack", v.slack},
           {"tight", v.tight},
           {"theorem_branch", to_string(v.theorem_branch)},
           {"alarm", v.alarm},
           {"evidence_only", v.evidence_only},
           {"converged", v.converged},
           {"kkt_residual", v.kkt_residual},
           {"x_max", v.x_max},
           {"vertex_weight_ok", v.vertex_weight_ok}};
    if (v.lemma) {
        j["lemma"] = Json::array({to_json(v.lemma->sigma_form), to_json(v.lemma->q_form)});
    } else {
        j["lemma"] = nullptr;
    }
    Json support = Json::array();
    for (Vertex s : v.best_x.support()) support.push_back(s + 1);
    j["support"] = std::move(support);
    j["best_x"] = to_json(v.best_x);
    j["graph"] = to_json(v.graph);
    return j;
}

}  // namespace msindex
