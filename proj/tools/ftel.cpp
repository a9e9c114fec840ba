// Command-line driver: loads a JSON problem file and runs one stage of the
// telescoping pipeline on it.  Every subcommand has a human-readable default
// and a --json mode whose output is deterministic for fixed inputs.
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "ftel/ftel.hpp"

using namespace ftel;
using ordered_json = nlohmann::ordered_json;

namespace {

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    if (!in.good()) throw std::runtime_error("cannot open '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

ordered_json js_vec(const std::vector<XRat>& v) {
    ordered_json arr = ordered_json::array();
    for (const XRat& c : v) arr.push_back(str(c));
    return arr;
}

ordered_json js_poly_mat(const std::vector<std::vector<XPoly>>& m) {
    ordered_json arr = ordered_json::array();
    for (const auto& row : m) {
        ordered_json r = ordered_json::array();
        for (const XPoly& p : row) r.push_back(str(p));
        arr.push_back(r);
    }
    return arr;
}

ordered_json js_laurent(const LaurentVec& v) {
    ordered_json arr = ordered_json::array();
    for (const auto& [exp, comp] : v.support()) {
        ordered_json entry;
        entry["x_exponent"] = exp;
        entry["component"] = comp;
        entry["coefficient"] = str(v.get(exp, comp));
        arr.push_back(entry);
    }
    return arr;
}

std::string join(const std::vector<XRat>& v) {
    std::string out;
    for (size_t i = 0; i < v.size(); ++i) out += (i ? ", " : "") + str(v[i]);
    return out;
}

std::string dt_pow(int k) {
    if (k == 0) return "";
    if (k == 1) return "Dt";
    return "Dt^" + std::to_string(k);
}

/// "t^2*Dt^2 - t*Dt + 1" style rendering, highest order first.
std::string operator_string(const std::vector<K>& coeffs) {
    std::string out;
    for (int k = static_cast<int>(coeffs.size()) - 1; k >= 0; --k) {
        const K& c = coeffs[static_cast<size_t>(k)];
        if (c == K(0)) continue;
        std::string cs = str(c);
        bool neg = false;
        if (cs.find(' ') != std::string::npos) {
            cs = "(" + cs + ")";
        } else if (cs.front() == '-') {
            neg = true;
            cs = cs.substr(1);
        }
        std::string body;
        if (k == 0)
            body = cs;
        else if (cs == "1")
            body = dt_pow(k);
        else
            body = cs + "*" + dt_pow(k);
        if (out.empty())
            out += (neg ? "-" : "") + body;
        else
            out += (neg ? " - " : " + ") + body;
    }
    return out.empty() ? "0" : out;
}

void emit(const ordered_json& j, bool as_json, const std::string& text) {
    if (as_json)
        std::cout << j.dump(2) << "\n";
    else
        std::cout << text;
}

const AModule::Vec& integrand(const Pipeline& pl) {
    if (!pl.prob.f)
        throw std::runtime_error("problem file has no integrand 'f'; this subcommand needs one");
    return *pl.prob.f;
}

struct Options {
    std::string file;
    bool json = false;
    std::string method = "canonical";
    int max_order = -1;
    bool certificate = false;
    unsigned seed = 20240914u;
};

int run_check(const Options& opt) {
    ParseOutcome out = parse_problem(slurp(opt.file));
    std::vector<std::string> errors = out.errors;
    ordered_json j;
    j["file"] = opt.file;
    if (out.ok()) {
        errors = validate_problem(*out.problem);
        j["name"] = out.problem->name;
        j["order"] = out.problem->L.order();
    }
    j["valid"] = errors.empty();
    j["errors"] = errors;
    std::string text;
    if (errors.empty()) {
        auto pl = build_pipeline(std::move(*out.problem), opt.seed);
        ordered_json taus = ordered_json::array();
        for (int t : pl->norm.taus) taus.push_back(t);
        j["taus"] = taus;
        j["e"] = str(pl->d.e);
        j["normalization_passes"] = pl->norm.iterations;
        text = "valid: yes\nname: " + pl->prob.name +
               "\norder: " + std::to_string(pl->prob.L.order()) + "\ne: " + str(pl->d.e) + "\n";
    } else {
        text = "valid: no\n";
        for (const auto& e : errors) text += "error: " + e + "\n";
    }
    emit(j, opt.json, text);
    return errors.empty() ? 0 : 1;
}

int run_diffmatrix(const Options& opt) {
    auto pl = build_pipeline(require_problem(slurp(opt.file)), opt.seed);
    ordered_json j;
    j["e"] = str(pl->d.e);
    j["M"] = js_poly_mat(pl->d.M);
    j["tM"] = js_poly_mat(pl->tmat);
    std::string text = "e: " + str(pl->d.e) + "\n";
    for (size_t i = 0; i < pl->d.M.size(); ++i) {
        text += "M[" + std::to_string(i) + "]:";
        for (const XPoly& p : pl->d.M[i]) text += "  " + str(p);
        text += "\n";
    }
    emit(j, opt.json, text);
    return 0;
}

int run_normalize(const Options& opt) {
    auto pl = build_pipeline(require_problem(slurp(opt.file)), opt.seed);
    ordered_json j;
    ordered_json taus = ordered_json::array();
    for (int t : pl->norm.taus) taus.push_back(t);
    j["taus"] = taus;
    j["iterations"] = pl->norm.iterations;
    ordered_json rows = ordered_json::array();
    for (const auto& r : pl->frame().rows()) rows.push_back(js_vec(r));
    j["W"] = rows;
    std::string text = "iterations: " + std::to_string(pl->norm.iterations) + "\ntaus:";
    for (int t : pl->norm.taus) text += " " + std::to_string(t);
    text += "\n";
    for (size_t i = 0; i < pl->frame().rows().size(); ++i)
        text += "w" + std::to_string(i + 1) + ": [" + join(pl->frame().row(static_cast<int>(i))) +
                "]\n";
    emit(j, opt.json, text);
    return 0;
}

int run_hermite(const Options& opt) {
    auto pl = build_pipeline(require_problem(slurp(opt.file)), opt.seed);
    HermiteForm form = hermite_reduce(pl->frame(), pl->d, integrand(*pl));
    ordered_json j;
    j["g"] = js_vec(form.g_coords);
    j["h"] = js_vec(form.h_coords());
    j["h_denominator"] = str(form.h_den);
    j["steps"] = form.steps.size();
    std::string text = "g: [" + join(form.g_coords) + "]\nh: [" + join(form.h_coords()) +
                       "]\nh denominator: " + str(form.h_den) + "\n";
    emit(j, opt.json, text);
    return 0;
}

int run_decompose(const Options& opt) {
    auto pl = build_pipeline(require_problem(slurp(opt.file)), opt.seed);
    AdditiveDecomposition dec =
        additive_decompose(pl->frame(), pl->d, pl->lf, pl->norm.taus, pl->ctx, integrand(*pl));
    ordered_json j;
    j["g"] = js_vec(pl->frame().coords(dec.g));
    ordered_json R = ordered_json::array();
    for (const XPoly& r : dec.R) R.push_back(str(r));
    j["R"] = R;
    j["d"] = str(dec.d);
    j["Q"] = js_laurent(dec.Q);
    j["preimage"] = js_laurent(dec.P1);
    j["zero_remainder"] = decomposition_is_zero(dec);
    std::string text = "d: " + str(dec.d) + "\n";
    for (size_t i = 0; i < dec.R.size(); ++i)
        text += "R[" + std::to_string(i) + "]: " + str(dec.R[i]) + "\n";
    text += "Q:";
    if (dec.Q.is_zero()) text += " 0";
    for (const auto& [exp, comp] : dec.Q.support())
        text += " (" + std::to_string(exp) + "," + std::to_string(comp) + ") " +
                str(dec.Q.get(exp, comp)) + ";";
    text += "\nzero remainder: ";
    text += decomposition_is_zero(dec) ? "yes" : "no";
    text += "\n";
    emit(j, opt.json, text);
    return 0;
}

int run_integrable(const Options& opt) {
    auto pl = build_pipeline(require_problem(slurp(opt.file)), opt.seed);
    IntegrabilityResult res =
        is_integrable(pl->frame(), pl->d, pl->norm.taus, pl->V, integrand(*pl));
    ordered_json j;
    j["integrable"] = res.integrable;
    std::string text;
    if (res.integrable) {
        j["antiderivative"] = js_vec(res.antiderivative);
        text = "integrable: yes\nantiderivative: [" + join(res.antiderivative) + "]\n";
    } else {
        j["remainder"] = js_vec(res.remainder.h_coords);
        text = "integrable: no\nremainder: [" + join(res.remainder.h_coords) + "]\n";
    }
    emit(j, opt.json, text);
    return 0;
}

int run_telescope(const Options& opt) {
    auto pl = build_pipeline(require_problem(slurp(opt.file)), opt.seed);
    const AModule::Vec& f = integrand(*pl);
    std::optional<Telescoper> tel;
    if (opt.method == "canonical")
        tel = telescope_canonical(pl->frame(), pl->d, pl->norm.taus, pl->V, pl->act, f,
                                  opt.max_order);
    else if (opt.method == "polyred")
        tel = telescope_polyred(pl->frame(), pl->d, pl->lf, pl->norm.taus, pl->ctx, pl->act, f,
                                opt.max_order);
    else
        throw std::runtime_error("unknown method '" + opt.method +
                                 "' (expected canonical or polyred)");
    ordered_json j;
    j["method"] = opt.method;
    j["found"] = tel.has_value();
    if (!tel) {
        emit(j, opt.json, "no telescoper up to the order cap\n");
        return 1;
    }
    ordered_json coeffs = ordered_json::array();
    for (const K& c : tel->coeffs) coeffs.push_back(str(c));
    j["order"] = tel->order();
    j["coefficients"] = coeffs;
    j["operator"] = operator_string(tel->coeffs);
    const bool ok = verify_telescoper(pl->frame(), pl->act, f, *tel);
    j["verified"] = ok;
    if (opt.certificate) j["certificate"] = js_vec(tel->certificate);
    std::string text = "telescoper: " + operator_string(tel->coeffs) +
                       "\norder: " + std::to_string(tel->order()) + "\nverified: " +
                       (ok ? "yes" : "no") + "\n";
    if (opt.certificate) text += "certificate: [" + join(tel->certificate) + "]\n";
    emit(j, opt.json, text);
    return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Telescopers for parameter-dependent fuchsian integrands"};
    app.require_subcommand(1);
    Options opt;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("file", opt.file, "JSON problem file")->required();
        sub->add_flag("--json", opt.json, "machine-readable output");
        sub->add_option("--seed", opt.seed,
                        "seed for probabilistic pre-filters (results are seed-independent)");
        return sub;
    };
    auto* c_check = add_common(app.add_subcommand("check", "validate a problem file"));
    auto* c_diff = add_common(app.add_subcommand("diffmatrix", "differentiation data e, M, tM"));
    auto* c_norm = add_common(app.add_subcommand("normalize", "frame normalization at infinity"));
    auto* c_herm = add_common(app.add_subcommand("hermite", "Hermite reduction of the integrand"));
    auto* c_dec = add_common(app.add_subcommand("decompose", "additive decomposition"));
    auto* c_int = add_common(app.add_subcommand("integrable", "decide integrability"));
    auto* c_tel = add_common(app.add_subcommand("telescope", "find a telescoper"));
    c_tel->add_option("--method", opt.method, "canonical or polyred")
        ->check(CLI::IsMember({"canonical", "polyred"}));
    c_tel->add_option("--max-order", opt.max_order, "order cap (default: dimension bound)");
    c_tel->add_flag("--certificate", opt.certificate, "include the certificate");

    try {
        app.parse(argc, argv);
        if (*c_check) return run_check(opt);
        if (*c_diff) return run_diffmatrix(opt);
        if (*c_norm) return run_normalize(opt);
        if (*c_herm) return run_hermite(opt);
        if (*c_dec) return run_decompose(opt);
        if (*c_int) return run_integrable(opt);
        if (*c_tel) return run_telescope(opt);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    } catch (const std::exception& ex) {
        std::cerr << "error: " << ex.what() << "\n";
        return 1;
    }
    return 0;
}
