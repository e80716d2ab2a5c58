#pragma once

#include <optional>
#include <string>
#include <utility>

#include <json.hpp>

#include "phase_sentinel/core/errors.hpp"
#include "phase_sentinel/core/system.hpp"

namespace phase_sentinel {

using json = nlohmann::ordered_json;

/// Result of parsing a system-definition document.  Cubic-family documents
/// carry both the raw parameters and a materialized PlanarSystem.
struct ParsedSystem {
    PlanarSystem system;
    std::optional<CubicParams> cubic;
};

namespace detail {

inline double json_extended_number(const json& v, const std::string& where) {
    if (v.is_number()) return v.get<double>();
    if (v.is_string()) {
        std::string s = v.get<std::string>();
        if (s == "inf" || s == "+inf") return kInf;
        if (s == "-inf") return -kInf;
    }
    throw ParseError(where + ": expected a number or \"inf\"/\"-inf\"");
}

inline double require_number(const json& doc, const std::string& key) {
    if (!doc.contains(key)) throw ParseError("missing field \"" + key + "\"");
    if (!doc[key].is_number()) throw ParseError("field \"" + key + "\" must be a number");
    return doc[key].get<double>();
}

inline CubicParams parse_cubic(const json& doc) {
    CubicParams p;
    std::string fam = doc["family"].get<std::string>();
    if (fam == "sys61") p.family = Family::sys61;
    else if (fam == "sys71") p.family = Family::sys71;
    else if (fam == "general") p.family = Family::general;
    else throw ParseError("unknown family \"" + fam + "\"");

    p.mu = require_number(doc, "mu");
    p.a = require_number(doc, "a");
    p.b = require_number(doc, "b");
    p.c = require_number(doc, "c");
    if (p.family == Family::sys61) {
        p.lambda = require_number(doc, "lambda");
        p.kappa = 1.0;
    } else if (p.family == Family::sys71) {
        p.lambda = 1.0;
        p.kappa = 0.0;
    } else {
        p.lambda = require_number(doc, "lambda");
        p.kappa = require_number(doc, "kappa");
    }

    auto nonneg = [](double v, const char* name) {
        if (v < 0.0) throw ParseError(std::string("parameter ") + name + " must be non-negative");
    };
    nonneg(p.lambda, "lambda");
    nonneg(p.mu, "mu");
    nonneg(p.a, "a");
    nonneg(p.c, "c");
    if (p.family != Family::general) {
        if (p.b == 0.0) throw ParseError("parameter b must be nonzero for sys61/sys71");
    } else {
        nonneg(p.kappa, "kappa");
    }
    return p;
}

inline ScalarField1D parse_field1d(const json& doc, double alpha, double beta) {
    if (doc.contains("poly")) {
        if (!doc["poly"].is_array()) throw ParseError("\"poly\" must be an array");
        Poly1 p;
        // coefficients start at degree 1: [c1, c2, ...] = c1 x + c2 x^2 + ...
        int deg = 1;
        for (const auto& v : doc["poly"]) {
            if (!v.is_number()) throw ParseError("\"poly\" entries must be numbers");
            p.set_coeff(deg++, v.get<double>());
        }
        return ScalarField1D(p, alpha, beta);
    }
    if (doc.contains("piecewise")) {
        PiecewiseLinear pw;
        for (const auto& seg : doc["piecewise"]) {
            if (!seg.is_array() || seg.size() != 4)
                throw ParseError("piecewise segments must be [x_lo, x_hi, slope, intercept]");
            PiecewiseLinear::Segment s;
            s.lo = json_extended_number(seg[0], "piecewise x_lo");
            s.hi = json_extended_number(seg[1], "piecewise x_hi");
            s.slope = seg[2].get<double>();
            s.intercept = seg[3].get<double>();
            if (!(s.lo < s.hi)) throw ParseError("piecewise segment must have x_lo < x_hi");
            pw.segments.push_back(s);
        }
        if (pw.segments.empty()) throw ParseError("piecewise needs at least one segment");
        if (!pw.contiguous()) throw ParseError("piecewise segments must be contiguous and continuous");
        return ScalarField1D(pw, alpha, beta);
    }
    throw ParseError("field must provide \"poly\" or \"piecewise\"");
}

inline ScalarField2D parse_field2d(const json& doc) {
    if (!doc.contains("poly2d")) throw ParseError("f must provide \"poly2d\"");
    Poly2 p;
    for (const auto& [key, v] : doc["poly2d"].items()) {
        auto comma = key.find(',');
        if (comma == std::string::npos) throw ParseError("poly2d keys are \"i,j\"");
        int i = 0, j = 0;
        try {
            i = std::stoi(key.substr(0, comma));
            j = std::stoi(key.substr(comma + 1));
        } catch (...) {
            throw ParseError("poly2d key \"" + key + "\" is not \"i,j\"");
        }
        if (i < 0 || j < 0) throw ParseError("poly2d powers must be non-negative");
        if (!v.is_number()) throw ParseError("poly2d values must be numbers");
        p.add_term(i, j, v.get<double>());
    }
    return ScalarField2D(p);
}

}  // namespace detail

/// Parse a system-definition document (already-parsed JSON).
inline ParsedSystem parse_system(const json& doc) {
    if (!doc.is_object()) throw ParseError("document must be a JSON object");
    ParsedSystem out;
    if (doc.contains("family")) {
        out.cubic = detail::parse_cubic(doc);
        out.system = to_system(*out.cubic);
        return out;
    }
    if (!doc.contains("g") || !doc.contains("f"))
        throw ParseError("document must provide \"family\" or both \"g\" and \"f\"");
    double alpha = doc.contains("alpha") ? detail::json_extended_number(doc["alpha"], "alpha") : -kInf;
    double beta = doc.contains("beta") ? detail::json_extended_number(doc["beta"], "beta") : kInf;
    if (!(alpha < 0.0 && beta > 0.0)) throw ParseError("need alpha < 0 < beta");
    out.system.g = detail::parse_field1d(doc["g"], alpha, beta);
    out.system.f = detail::parse_field2d(doc["f"]);
    out.system.alpha = alpha;
    out.system.beta = beta;
    return out;
}

inline ParsedSystem parse_system(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("invalid JSON: ") + e.what());
    }
    return parse_system(doc);
}

namespace detail {

inline json extended_to_json(double v) {
    if (v == kInf) return json("inf");
    if (v == -kInf) return json("-inf");
    return json(v);
}

}  // namespace detail

/// Serialize back to the document schema; round-trips coefficients.
inline json serialize_system(const ParsedSystem& ps) {
    json doc;
    if (ps.cubic) {
        const CubicParams& p = *ps.cubic;
        doc["family"] = family_name(p.family);
        if (p.family != Family::sys71) doc["lambda"] = p.lambda;
        if (p.family == Family::general) doc["kappa"] = p.kappa;
        doc["mu"] = p.mu;
        doc["a"] = p.a;
        doc["b"] = p.b;
        doc["c"] = p.c;
        return doc;
    }
    const PlanarSystem& s = ps.system;
    json g;
    if (const Poly1* gp = s.g.poly()) {
        json arr = json::array();
        for (int i = 1; i <= gp->degree(); ++i) arr.push_back(gp->coeff(i));
        g["poly"] = arr;
    } else if (const PiecewiseLinear* pw = s.g.piecewise()) {
        json arr = json::array();
        for (const auto& seg : pw->segments)
            arr.push_back(json::array({detail::extended_to_json(seg.lo), detail::extended_to_json(seg.hi),
                                       seg.slope, seg.intercept}));
        g["piecewise"] = arr;
    }
    json f;
    if (const Poly2* fp = s.f.poly()) {
        json terms = json::object();
        for (const auto& [ij, v] : fp->m)
            terms[std::to_string(ij.first) + "," + std::to_string(ij.second)] = v;
        f["poly2d"] = terms;
    }
    doc["g"] = g;
    doc["f"] = f;
    doc["alpha"] = detail::extended_to_json(s.alpha);
    doc["beta"] = detail::extended_to_json(s.beta);
    return doc;
}

}  // namespace phase_sentinel
