// Problem files: a differential module (operator L), the t-action on the
// class of 1 (U), a global integral basis W, a local integral basis at
// infinity, and an optional integrand, all as JSON with expression strings.
// Loading is split into field-level parsing (collects every bad entry) and
// pipeline construction (first structural failure wins, with the library's
// own diagnostics).
#pragma once

#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "ftel/expr.hpp"
#include "ftel/polyred.hpp"

namespace ftel {

struct Problem {
    std::string name;
    std::string notes;
    OreOp L;
    AModule mod;
    AModule::Vec U;
    std::vector<AModule::Vec> W;   // rows of power-basis coordinates
    std::vector<AModule::Vec> Nu;  // local basis at infinity, same shape
    std::optional<AModule::Vec> f;

    explicit Problem(OreOp op) : L(op), mod(std::move(op)) {}
};

struct ParseOutcome {
    std::optional<Problem> problem;
    std::vector<std::string> errors;
    bool ok() const { return errors.empty() && problem.has_value(); }
};

namespace detail {

inline bool parse_vec(const nlohmann::json& arr, const std::string& path,
                      std::vector<XRat>& dst, std::vector<std::string>& errors) {
    if (!arr.is_array()) {
        errors.push_back(path + ": expected an array of expression strings");
        return false;
    }
    bool ok = true;
    dst.clear();
    for (size_t i = 0; i < arr.size(); ++i) {
        const std::string at = path + "[" + std::to_string(i) + "]";
        if (!arr[i].is_string()) {
            errors.push_back(at + ": expected a string");
            ok = false;
            dst.emplace_back();
            continue;
        }
        try {
            dst.push_back(parse_xrat(arr[i].get<std::string>()));
        } catch (const ParseError& ex) {
            errors.push_back(at + ": " + ex.what());
            ok = false;
            dst.emplace_back();
        }
    }
    return ok;
}

inline void expect_length(const std::vector<XRat>& v, size_t n, const std::string& path,
                          std::vector<std::string>& errors) {
    if (v.size() != n)
        errors.push_back(path + ": expected " + std::to_string(n) + " entries, got " +
                         std::to_string(v.size()));
}

}  // namespace detail

inline ParseOutcome parse_problem(const std::string& text) {
    ParseOutcome out;
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& ex) {
        out.errors.emplace_back(ex.what());
        return out;
    }
    if (!j.is_object()) {
        out.errors.emplace_back("problem: top level must be an object");
        return out;
    }
    for (const char* field : {"L", "U", "W", "Vinf"})
        if (!j.contains(field)) out.errors.push_back(std::string(field) + ": missing field");
    if (!out.errors.empty()) return out;

    std::vector<XRat> Lc;
    detail::parse_vec(j["L"], "L", Lc, out.errors);
    if (Lc.size() < 2)
        out.errors.emplace_back("L: order must be at least one");
    else if (Lc.back().is_zero())
        out.errors.emplace_back("L: leading coefficient is zero");
    if (!out.errors.empty()) return out;
    const size_t n = Lc.size() - 1;

    auto parse_rows = [&](const char* field) {
        std::vector<AModule::Vec> rows;
        const nlohmann::json& arr = j[field];
        if (!arr.is_array()) {
            out.errors.push_back(std::string(field) + ": expected an array of rows");
            return rows;
        }
        if (arr.size() != n)
            out.errors.push_back(std::string(field) + ": expected " + std::to_string(n) +
                                 " rows, got " + std::to_string(arr.size()));
        for (size_t i = 0; i < arr.size(); ++i) {
            AModule::Vec row;
            const std::string path = std::string(field) + "[" + std::to_string(i) + "]";
            detail::parse_vec(arr[i], path, row, out.errors);
            detail::expect_length(row, n, path, out.errors);
            rows.push_back(std::move(row));
        }
        return rows;
    };

    Problem p{OreOp(Lc)};
    detail::parse_vec(j["U"], "U", p.U, out.errors);
    detail::expect_length(p.U, n, "U", out.errors);
    p.W = parse_rows("W");
    p.Nu = parse_rows("Vinf");
    if (j.contains("f")) {
        AModule::Vec f;
        detail::parse_vec(j["f"], "f", f, out.errors);
        detail::expect_length(f, n, "f", out.errors);
        p.f = std::move(f);
    }
    if (j.contains("name")) p.name = j["name"].get<std::string>();
    if (j.contains("notes")) p.notes = j["notes"].get<std::string>();
    if (!out.errors.empty()) return out;
    out.problem = std::move(p);
    return out;
}

inline Problem require_problem(const std::string& text) {
    ParseOutcome out = parse_problem(text);
    if (out.ok()) return std::move(*out.problem);
    std::string msg = "invalid problem file:";
    for (const auto& e : out.errors) msg += "\n  " + e;
    throw std::runtime_error(msg);
}

inline std::string serialize_problem(const Problem& p) {
    nlohmann::ordered_json j;
    if (!p.name.empty()) j["name"] = p.name;
    if (!p.notes.empty()) j["notes"] = p.notes;
    auto vec_json = [](const AModule::Vec& v) {
        nlohmann::ordered_json arr = nlohmann::ordered_json::array();
        for (const XRat& c : v) arr.push_back(str(c));
        return arr;
    };
    auto rows_json = [&](const std::vector<AModule::Vec>& rows) {
        nlohmann::ordered_json arr = nlohmann::ordered_json::array();
        for (const auto& r : rows) arr.push_back(vec_json(r));
        return arr;
    };
    j["L"] = vec_json(p.L.coeffs());
    j["U"] = vec_json(p.U);
    j["W"] = rows_json(p.W);
    j["Vinf"] = rows_json(p.Nu);
    if (p.f) j["f"] = vec_json(*p.f);
    return j.dump(2) + "\n";
}

/**
 * Everything the algorithms need, built once from a problem: the two
 * frames, normalization at infinity, differentiation and t-matrices, the
 * everywhere-integral space V, and the local frame with its phi context.
 * Construction throws with the first structural defect (dependent rows,
 * incompatible t-action, non-squarefree e, degree-bound violations).
 * Frames keep pointers into the module, so the object is pinned; create
 * through build_pipeline.
 */
struct Pipeline {
    Problem prob;
    BasisFrame Winput;
    BasisFrame Nuframe;
    TAction act;
    NormalizedFrame norm;
    DiffData d;
    std::vector<std::vector<XPoly>> tmat;
    VSpaceData V;
    LocalFrameData lf;
    PhiContext ctx;

    explicit Pipeline(Problem p, unsigned seed = 20240914u)
        : prob(std::move(p)),
          Winput(prob.mod, prob.W),
          Nuframe(prob.mod, prob.Nu),
          act(prob.mod, prob.U),
          norm(normalize_at_infinity(Winput, Nuframe)),
          d(checked_diff(diff_matrix(norm.frame))),
          tmat(t_matrix(norm.frame, act, d.e)),
          V(v_space(norm.frame, norm.taus)),
          lf(build_local_frame(norm.frame, norm.taus, d.e)),
          ctx(make_phi_context(lf, d.e, seed)) {}

    Pipeline(const Pipeline&) = delete;
    Pipeline& operator=(const Pipeline&) = delete;

    const BasisFrame& frame() const { return norm.frame; }

private:
    static DiffData checked_diff(DiffData dd) {
        if (poly_gcd(dd.e, dd.e.derivative()).degree() > 0)
            throw std::domain_error(
                "problem: differentiation denominator e = " + str(dd.e) +
                " is not squarefree; the supplied global basis is not integral");
        return dd;
    }
};

inline std::unique_ptr<Pipeline> build_pipeline(Problem p, unsigned seed = 20240914u) {
    return std::make_unique<Pipeline>(std::move(p), seed);
}

/// Empty when the problem passes every structural check; otherwise the
/// first failing stage's diagnostic (field-level errors are reported by
/// parse_problem already).
inline std::vector<std::string> validate_problem(const Problem& p) {
    std::vector<std::string> out;
    try {
        Pipeline pl(p);
        (void)pl;
    } catch (const std::exception& ex) {
        out.emplace_back(ex.what());
    }
    return out;
}

}  // namespace ftel
