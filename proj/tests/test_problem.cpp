// Problem-file loading: shipped fixtures, serialization round trips, and
// the diagnostic paths for malformed or structurally invalid inputs.
#include <catch2/catch_amalgamated.hpp>

#include <fstream>
#include <sstream>

#include "ftel/problem.hpp"

using namespace ftel;

namespace {

std::string slurp(const std::string& fname) {
    std::ifstream in(std::string(FTEL_PROBLEM_DIR) + "/" + fname);
    REQUIRE(in.good());
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

bool vec_eq(const AModule::Vec& a, const AModule::Vec& b) {
    if (a.size() != b.size()) return false;
    for (size_t i = 0; i < a.size(); ++i)
        if (a[i] != b[i]) return false;
    return true;
}

}  // namespace

TEST_CASE("all shipped fixtures load and build their pipelines") {
    struct Expect {
        const char* file;
        std::vector<int> taus;
    };
    const std::vector<Expect> fixtures = {
        {"logsqrt.json", {-1, -2}},
        {"logsqrt-param.json", {-1, -2}},
        {"cuberoot.json", {0, -1}},
        {"elliptic.json", {-2}},
    };
    for (const auto& fx : fixtures) {
        INFO(fx.file);
        auto outcome = parse_problem(slurp(fx.file));
        REQUIRE(outcome.ok());
        REQUIRE(outcome.problem->f.has_value());
        CHECK(validate_problem(*outcome.problem).empty());
        auto pl = build_pipeline(std::move(*outcome.problem));
        CHECK(pl->norm.taus == fx.taus);
        CHECK(pl->norm.iterations == 1);  // shipped frames are already normal
        CHECK(poly_gcd(pl->d.e, pl->d.e.derivative()).degree() == 0);
    }
}

TEST_CASE("pipeline quantities of the worked fixtures") {
    auto base = build_pipeline(require_problem(slurp("logsqrt.json")));
    CHECK(base->d.e == parse_xpoly("x^3 - x"));

    auto param = build_pipeline(require_problem(slurp("logsqrt-param.json")));
    CHECK(param->d.e == parse_xpoly("x^3 - x/t^2"));
    CHECK(param->ctx.lambda == 1);
    CHECK(param->ctx.delta == 3);
    CHECK(param->ctx.ell == 1);
}

TEST_CASE("serialization round trips structurally") {
    for (const char* file :
         {"logsqrt.json", "logsqrt-param.json", "cuberoot.json", "elliptic.json"}) {
        INFO(file);
        Problem p = require_problem(slurp(file));
        Problem q = require_problem(serialize_problem(p));
        CHECK(p.name == q.name);
        CHECK(p.notes == q.notes);
        CHECK(vec_eq(p.L.coeffs(), q.L.coeffs()));
        CHECK(vec_eq(p.U, q.U));
        REQUIRE(p.W.size() == q.W.size());
        for (size_t i = 0; i < p.W.size(); ++i) CHECK(vec_eq(p.W[i], q.W[i]));
        for (size_t i = 0; i < p.Nu.size(); ++i) CHECK(vec_eq(p.Nu[i], q.Nu[i]));
        REQUIRE(q.f.has_value());
        CHECK(vec_eq(*p.f, *q.f));
    }
}

TEST_CASE("field-level parse diagnostics carry paths") {
    auto has_error = [](const ParseOutcome& o, const std::string& needle) {
        for (const auto& e : o.errors)
            if (e.find(needle) != std::string::npos) return true;
        return false;
    };

    CHECK(!parse_problem("{ not json").errors.empty());
    CHECK(has_error(parse_problem("[1, 2]"), "top level"));
    CHECK(has_error(parse_problem(R"({"U": [], "W": [], "Vinf": []})"), "L: missing field"));
    CHECK(has_error(parse_problem(R"({"L": ["1", "x +"], "U": [], "W": [], "Vinf": []})"),
                    "L[1]"));
    CHECK(has_error(parse_problem(R"({"L": ["1"], "U": [], "W": [], "Vinf": []})"),
                    "order must be at least one"));
    CHECK(has_error(parse_problem(R"({"L": ["1", "0"], "U": [], "W": [], "Vinf": []})"),
                    "leading coefficient is zero"));

    // Empty basis list and a short integrand, against an otherwise valid file.
    std::string text = slurp("cuberoot.json");
    auto patched = nlohmann::json::parse(text);
    patched["W"] = nlohmann::json::array();
    CHECK(has_error(parse_problem(patched.dump()), "W: expected 2 rows, got 0"));
    patched = nlohmann::json::parse(text);
    patched["f"] = {"1"};
    CHECK(has_error(parse_problem(patched.dump()), "f: expected 2 entries, got 1"));
}

TEST_CASE("structural diagnostics name the failing check") {
    auto mentions = [](const std::vector<std::string>& errs, const std::string& needle) {
        for (const auto& e : errs)
            if (e.find(needle) != std::string::npos) return true;
        return false;
    };
    const std::string text = slurp("logsqrt.json");

    // The power basis is not an integral basis: its e has a square factor.
    auto power = nlohmann::json::parse(text);
    const auto eye = nlohmann::json::array(
        {nlohmann::json::array({"1", "0"}), nlohmann::json::array({"0", "1"})});
    power["W"] = eye;
    power["Vinf"] = eye;
    Problem p1 = require_problem(power.dump());
    CHECK(mentions(validate_problem(p1), "squarefree"));

    auto dependent = nlohmann::json::parse(text);
    dependent["W"][1] = {"2*(x - 1)*x^2", "0"};
    Problem p2 = require_problem(dependent.dump());
    CHECK(mentions(validate_problem(p2), "linearly dependent"));

    auto badu = nlohmann::json::parse(text);
    badu["U"] = {"x", "x^2"};
    Problem p3 = require_problem(badu.dump());
    CHECK(mentions(validate_problem(p3), "commute"));
}
