// Command-line front end: group actions on theta, Dirac-data transforms,
// Clifford generators, the Heisenberg-module verification battery, the
// symbolic-vs-matrix oracle battery, and the dimension-1 circle example.
//
// Exit codes: 0 success / verification passed, 1 verification failed or the
// requested operation is undefined, 2 malformed input.

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>

#include "nct/clifford.hpp"
#include "nct/clock_shift.hpp"
#include "nct/dirac.hpp"
#include "nct/heisenberg.hpp"
#include "nct/json_io.hpp"
#include "nct/sonn.hpp"
#include "nct/torus_algebra.hpp"

namespace {

using namespace nct;

constexpr int kOk = 0;
constexpr int kFail = 1;
constexpr int kBadInput = 2;

void emit(const Json& j) { std::cout << j.dump(2) << "\n"; }

int emit_error(const std::string& code, const std::string& what, int rc) {
    Json j;
    j["error"] = {{"code", code}, {"what", what}};
    emit(j);
    return rc;
}

Json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open '" + path + "'");
    try {
        return Json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(std::string("invalid JSON in '") + path + "': " + e.what());
    }
}

/// Inline JSON when the argument looks like JSON, file contents otherwise.
Json load_json_arg(const std::string& arg) {
    if (!arg.empty() && (arg.front() == '[' || arg.front() == '{')) {
        try {
            return Json::parse(arg);
        } catch (const nlohmann::json::parse_error& e) {
            throw ParseError(std::string("invalid inline JSON: ") + e.what());
        }
    }
    return load_json_file(arg);
}

std::uint64_t env_seed() {
    if (const char* s = std::getenv("NCT_MORITA_SEED")) return std::strtoull(s, nullptr, 10);
    return 0;
}

GridSpec parse_grid(const std::string& text) {
    GridSpec g;
    std::stringstream ss(text);
    char c1 = 0, c2 = 0;
    long long n = 0, p = 0;
    double l = 0;
    if (!(ss >> n >> c1 >> l >> c2 >> p) || c1 != ',' || c2 != ',' || n <= 0 || l <= 0 || p <= 0)
        throw ParseError("grid must be N,L,P");
    g.samples = static_cast<std::size_t>(n);
    g.half_width = l;
    g.p_box = p;
    return g;
}

int cmd_theta_act(const std::string& theta_path, const std::string& word_arg) {
    SkewMatrix theta = theta_from_json(load_json_file(theta_path));
    GeneratorWord word = word_from_json(load_json_arg(word_arg));
    try {
        SkewMatrix out = word_act(word, theta);
        emit(theta_to_json(out));
        return kOk;
    } catch (const ActionUndefined& e) {
        return emit_error("ActionUndefined", e.what(), kFail);
    }
}

int cmd_theta_verify_element(const std::string& matrix_path) {
    Json doc = load_json_file(matrix_path);
    IntMatrix m = doc.is_object() && doc.contains("matrix") ? int_matrix_from_json(doc.at("matrix"))
                                                            : int_matrix_from_json(doc);
    bool member = verify_membership(m);
    Json out;
    out["n"] = m.rows() / 2;
    out["member"] = member;
    emit(out);
    return member ? kOk : kFail;
}

int cmd_dirac_transform(const std::string& dirac_path, const std::string& theta_path,
                        const std::string& word_arg) {
    DiracData d = dirac_from_json(load_json_file(dirac_path));
    SkewMatrix theta = theta_from_json(load_json_file(theta_path));
    GeneratorWord word = word_from_json(load_json_arg(word_arg));
    try {
        auto [dout, tout] = transform_word(d, theta, word);
        Json out;
        out["dirac"] = dirac_to_json(dout);
        out["theta"] = theta_to_json(tout);
        emit(out);
        return kOk;
    } catch (const ActionUndefined& e) {
        return emit_error("ActionUndefined", e.what(), kFail);
    }
}

int cmd_dirac_involution(const std::string& theta_path, const std::string& tau_path) {
    SkewMatrix theta = theta_from_json(load_json_file(theta_path));
    DiracData d = tau_path.empty() ? DiracData::standard(theta.n())
                                   : dirac_from_json(load_json_file(tau_path));
    try {
        DiracData once = transform_sigma2(d, theta);
        DiracData twice = transform_sigma2(once, sigma2_block(theta));
        SkewMatrix theta_back = sigma2_block(sigma2_block(theta));
        bool pass = twice.tau == d.tau && theta_back == theta;
        Json out;
        out["tau_restored"] = twice.tau == d.tau;
        out["theta_restored"] = theta_back == theta;
        out["pass"] = pass;
        emit(out);
        return pass ? kOk : kFail;
    } catch (const Theta11Singular& e) {
        return emit_error("Theta11Singular", e.what(), kFail);
    }
}

int cmd_clifford_emit(std::size_t n) {
    CliffordRep rep = clifford_generators(n);
    CliffordReport check = verify_clifford(rep, 1e-12);
    Json out = clifford_to_json(rep);
    out["relation_defect"] = check.anticommutation_defect;
    out["self_adjointness_defect"] = check.self_adjointness_defect;
    emit(out);
    return check.pass ? kOk : kFail;
}

int cmd_module_verify(const std::string& theta_path, const std::string& grid, double tol) {
    SkewMatrix theta = theta_from_json(load_json_file(theta_path));
    GridSpec spec = grid.empty() ? GridSpec{} : parse_grid(grid);
    VerifyOptions opt;
    opt.seed = env_seed();
    ModuleReport rpt = verify_module(theta, spec, tol, opt);
    emit(module_report_to_json(rpt));
    return rpt.pass ? kOk : kFail;
}

int cmd_algebra_check(std::size_t n, long long max_den, std::size_t count) {
    if (n < 2 || n > 4) throw ParseError("algebra check supports n in {2,3,4}");
    if (max_den < 1 || max_den > 16) throw ParseError("denominator bound must be in [1,16]");
    std::mt19937_64 rng(env_seed() ^ 0xa5a5a5a5ULL);
    std::uniform_int_distribution<long long> den(1, max_den);
    std::uniform_int_distribution<long long> expo(-3, 3);

    double worst = 0.0;
    bool relations_exact = true;
    std::size_t done = 0;
    while (done < count) {
        // one common denominator per theta keeps the representation small
        long long d = den(rng);
        std::uniform_int_distribution<long long> num(-d + 1, d - 1);
        RatMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j) {
                m(i, j) = Rational(num(rng), d);
                m(j, i) = -m(i, j);
            }
        SkewMatrix theta(m);
        ClockShiftRep rep(theta);
        for (int k = 0; k < 10 && done < count; ++k, ++done) {
            ExponentVec x(n), y(n);
            for (auto& c : x) c = expo(rng);
            for (auto& c : y) c = expo(rng);
            TorusElement mx = TorusElement::monomial(theta, x);
            TorusElement my = TorusElement::monomial(theta, y);
            CMatrix lhs = rep.eval_element(mul(mx, my));
            CMatrix rhs = rep.eval_monomial(x).dense() * rep.eval_monomial(y).dense();
            worst = std::max(worst, max_abs(lhs - rhs));

            TorusElement sym_lhs = mul(mx, my);
            TorusElement sym_rhs =
                mul(my, mx) * Coeff::from_phase(e(commutation_exponent(theta, x, y)));
            relations_exact &= sym_lhs == sym_rhs;
        }
    }
    bool pass = worst < 1e-10 && relations_exact;
    Json out;
    out["products_checked"] = done;
    out["matrix_defect"] = worst;
    out["relations_exact"] = relations_exact;
    out["pass"] = pass;
    emit(out);
    return pass ? kOk : kFail;
}

int cmd_example_circle(long long cutoff) {
    SkewMatrix theta = SkewMatrix::zero(1);
    TorusElement gauge = TorusElement::zero(theta);
    Coeff a1;
    a1.add(Rational(0), GaussRational(Rational(1, 2), Rational(1, 3)));
    Coeff a2;
    a2.add(Rational(0), GaussRational(Rational(-1, 4), Rational(1, 5)));
    gauge.add_term({1}, a1);
    gauge.add_term({-1}, a1.conj());
    gauge.add_term({2}, a2);
    gauge.add_term({-2}, a2.conj());
    gauge.add_term({0}, Coeff(Rational(7, 3)));

    FluctuationReport rpt = fluctuate_dim1(gauge, cutoff);
    bool pass = rpt.max_residual < 1e-12;
    Json out;
    out["cutoff"] = rpt.cutoff;
    out["gauge_term"] = torus_element_to_json(gauge);
    out["self_adjoint"] = star(gauge) == gauge;
    out["interior_residual"] = rpt.max_residual;
    out["dirac_unchanged"] = pass;
    out["pass"] = pass;
    emit(out);
    return pass ? kOk : kFail;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Morita equivalences of noncommutative tori"};
    app.require_subcommand(1);

    std::string theta_path, word_arg, matrix_path, dirac_path, tau_path, grid_arg;
    double tol = 1e-6;
    std::size_t clifford_n = 2;
    std::size_t check_n = 2;
    long long max_den = 16;
    std::size_t check_count = 500;
    long long cutoff = 64;

    auto* theta_cmd = app.add_subcommand("theta", "group actions on deformation matrices");
    auto* act = theta_cmd->add_subcommand("act", "apply a generator word to theta");
    act->add_option("--theta", theta_path, "theta JSON file")->required();
    act->add_option("--word", word_arg, "generator word (inline JSON or file)")->required();

    auto* verify_el = theta_cmd->add_subcommand("verify-element", "check SO(n,n|Z) membership");
    verify_el->add_option("--matrix", matrix_path, "2n x 2n integer matrix JSON")->required();

    auto* dirac_cmd = app.add_subcommand("dirac", "equivariant Dirac-data transforms");
    auto* transform = dirac_cmd->add_subcommand("transform", "transform Dirac data along a word");
    transform->add_option("--dirac", dirac_path, "Dirac data JSON file")->required();
    transform->add_option("--theta", theta_path, "theta JSON file")->required();
    transform->add_option("--word", word_arg, "generator word (inline JSON or file)")->required();

    auto* involution = dirac_cmd->add_subcommand("involution-check",
                                                 "sigma2 twice restores frame and theta");
    involution->add_option("--theta", theta_path, "theta JSON file")->required();
    involution->add_option("--tau", tau_path, "optional Dirac data JSON file");

    auto* clifford_cmd = app.add_subcommand("clifford", "Clifford generators");
    auto* emit_cmd = clifford_cmd->add_subcommand("emit", "print the generators as JSON");
    emit_cmd->add_option("--n", clifford_n, "rank of the Clifford algebra")
        ->required()
        ->check(CLI::Range(std::size_t(1), std::size_t(12)));

    auto* module_cmd = app.add_subcommand("module", "Heisenberg bimodule numerics");
    auto* mod_verify = module_cmd->add_subcommand("verify", "run the operator-identity battery");
    mod_verify->add_option("--theta", theta_path, "theta JSON file")->required();
    mod_verify->add_option("--grid", grid_arg, "grid as N,L,P (default 2048,16,8)");
    mod_verify->add_option("--tol", tol, "tolerance (default 1e-6)");

    auto* algebra_cmd = app.add_subcommand("algebra", "symbolic algebra checks");
    auto* alg_check = algebra_cmd->add_subcommand("check", "symbolic vs clock/shift oracle");
    alg_check->add_option("--n", check_n, "torus rank (2..4)");
    alg_check->add_option("--max-den", max_den, "denominator bound (<= 16)");
    alg_check->add_option("--count", check_count, "number of random products");

    auto* example_cmd = app.add_subcommand("example", "worked examples");
    auto* circle = example_cmd->add_subcommand("circle", "dimension-1 inner fluctuation");
    circle->add_option("--cutoff", cutoff, "basis cutoff M (>= 4)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (act->parsed()) return cmd_theta_act(theta_path, word_arg);
        if (verify_el->parsed()) return cmd_theta_verify_element(matrix_path);
        if (transform->parsed()) return cmd_dirac_transform(dirac_path, theta_path, word_arg);
        if (involution->parsed()) return cmd_dirac_involution(theta_path, tau_path);
        if (emit_cmd->parsed()) return cmd_clifford_emit(clifford_n);
        if (mod_verify->parsed()) return cmd_module_verify(theta_path, grid_arg, tol);
        if (alg_check->parsed()) return cmd_algebra_check(check_n, max_den, check_count);
        if (circle->parsed()) return cmd_example_circle(cutoff);
    } catch (const ParseError& e) {
        return emit_error("ParseError", e.what(), kBadInput);
    } catch (const NotRational& e) {
        return emit_error("NotRational", e.what(), kBadInput);
    } catch (const CutoffTooSmall& e) {
        return emit_error("CutoffTooSmall", e.what(), kBadInput);
    } catch (const DimensionTooSmall& e) {
        return emit_error("DimensionTooSmall", e.what(), kBadInput);
    } catch (const DimensionMismatch& e) {
        return emit_error("DimensionMismatch", e.what(), kBadInput);
    } catch (const Error& e) {
        return emit_error("Error", e.what(), kFail);
    }
    return kBadInput;
}
