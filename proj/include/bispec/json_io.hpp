#pragma once

#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "bispec/classify.hpp"
#include "bispec/errors.hpp"
#include "bispec/family.hpp"
#include "bispec/laurent.hpp"
#include "bispec/moments.hpp"
#include "bispec/operator_algebra.hpp"
#include "bispec/rational.hpp"

namespace bispec {

using json = nlohmann::json;

inline json to_json(const Rational& r) { return r.str(); }

inline Rational rational_from_json(const json& j) {
    if (j.is_string()) return Rational::from_string(j.get<std::string>());
    if (j.is_number_integer()) return Rational(static_cast<long>(j.get<long long>()));
    throw parse_error("expected a rational string, got: " + j.dump());
}

/// {"terms": [[exponent, "p/q"], ...]} sorted by ascending exponent.
inline json to_json(const Laurent& p) {
    json terms = json::array();
    for (const auto& [k, c] : p.terms()) terms.push_back(json::array({k, c.str()}));
    return json{{"terms", std::move(terms)}};
}

inline Laurent laurent_from_json(const json& j) {
    if (!j.is_object() || !j.contains("terms") || !j["terms"].is_array())
        throw parse_error("polynomial JSON must be an object with a 'terms' array");
    Laurent p;
    for (const auto& t : j["terms"]) {
        if (!t.is_array() || t.size() != 2 || !t[0].is_number_integer())
            throw parse_error("polynomial term must be [exponent, rational]");
        p.add_term(t[0].get<long>(), rational_from_json(t[1]));
    }
    return p;
}

inline json to_json(const FamilySpec& s) {
    json j{{"kind", kind_name(s.kind)},
           {"b", s.b.str()},
           {"rho", s.rho.str()},
           {"eps0", s.eps0.str()},
           {"eps1", s.eps1.str()}};
    if (s.has_q()) j["q"] = s.q.str();
    if (s.has_a()) j["a"] = s.a.str();
    return j;
}

inline FamilySpec family_from_json(const json& j) {
    if (!j.is_object() || !j.contains("kind"))
        throw parse_error("family JSON must be an object with a 'kind'");
    const auto kind = kind_from_name(j["kind"].get<std::string>());
    if (!kind) throw parse_error("unknown family kind: " + j["kind"].dump());
    const auto field = [&](const char* name) -> std::optional<Rational> {
        if (!j.contains(name)) return std::nullopt;
        return rational_from_json(j[name]);
    };
    FamilySpec probe;
    probe.kind = *kind;
    if (probe.has_q() && !j.contains("q")) throw parse_error("family needs a 'q' parameter");
    if (probe.has_a() && !j.contains("a")) throw parse_error("family needs an 'a' parameter");
    if (!j.contains("b")) throw parse_error("family needs a 'b' parameter");
    return make_family(*kind, field("q").value_or(Rational(0)), field("a").value_or(Rational(0)),
                       field("b").value_or(Rational(0)), field("rho"), field("eps0"),
                       field("eps1"));
}

inline std::pair<std::vector<Rational>, std::vector<Rational>> sequences_from_json(const json& j) {
    if (!j.is_object() || !j.contains("lambda") || !j.contains("nu"))
        throw parse_error("sequence JSON must contain 'lambda' and 'nu' arrays");
    std::vector<Rational> lambda, nu;
    for (const auto& v : j["lambda"]) lambda.push_back(rational_from_json(v));
    for (const auto& v : j["nu"]) nu.push_back(rational_from_json(v));
    return {std::move(lambda), std::move(nu)};
}

inline json to_json(const CheckReport& r) {
    json j{{"name", r.name}, {"passed", r.passed}, {"checks", r.checks}};
    if (!r.passed) {
        json f{{"indices", r.failure_indices}};
        if (r.failure_lhs) f["lhs"] = r.failure_lhs->str();
        if (r.failure_rhs) f["rhs"] = r.failure_rhs->str();
        j["first_failure"] = std::move(f);
    } else {
        j["first_failure"] = nullptr;
    }
    return j;
}

inline json to_json(const OrthogonalityReport& r) {
    json norms = json::array();
    for (const auto& h : r.norms) norms.push_back(h.str());
    json j{{"name", "orthogonality"},
           {"max_index", r.max_index},
           {"passed", r.passed},
           {"norms", std::move(norms)}};
    if (r.first_failure) {
        const auto& [n, m, v] = *r.first_failure;
        j["first_failure"] = json{{"indices", {n, m}}, {"value", v.str()}};
    } else {
        j["first_failure"] = nullptr;
    }
    return j;
}

inline json to_json(const RelationReport& r) {
    json rel = json::array();
    for (const auto& c : r.relations) rel.push_back(to_json(c));
    json j{{"family", r.family},
           {"applicable", r.applicable},
           {"passed", r.passed()},
           {"relations", std::move(rel)}};
    if (!r.note.empty()) j["note"] = r.note;
    return j;
}

inline json to_json(const FitResult& r) {
    json coeffs = json::object();
    for (const auto& [name, value] : r.coefficients) coeffs[name] = value.str();
    json j{{"consistent", r.consistent}, {"coefficients", std::move(coeffs)}};
    if (!r.note.empty()) j["note"] = r.note;
    return j;
}

inline json to_json(const FamilyAdmissibility& r) {
    json j{{"lambdas_distinct", r.lambdas_distinct},
           {"nu_pattern_ok", r.nu_pattern_ok},
           {"positive_definite", r.positive_definite}};
    if (r.lambda_collision)
        j["lambda_collision"] = {r.lambda_collision->first, r.lambda_collision->second};
    if (r.nu_violation) j["nu_violation"] = *r.nu_violation;
    if (r.first_nonpositive_u) j["first_nonpositive_u"] = *r.first_nonpositive_u;
    return j;
}

inline json to_json(const ClassifyResult& r) {
    json j{{"class", omega_class_name(r.cls)}, {"compatible", r.compatible}};
    if (r.cls != OmegaClass::inadmissible) j["omega"] = r.omega.str();
    if (r.q) j["q"] = r.q->str();
    if (r.q_irrational) j["q_irrational"] = true;
    if (!r.alpha.empty()) {
        json a = json::array(), b = json::array();
        for (const auto& v : r.alpha) a.push_back(v.str());
        for (const auto& v : r.beta) b.push_back(v.str());
        j["alpha"] = std::move(a);
        j["beta"] = std::move(b);
    }
    if (!r.detail.empty()) j["detail"] = r.detail;
    return j;
}

}  // namespace bispec
