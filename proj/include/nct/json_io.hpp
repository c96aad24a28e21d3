#pragma once

#include <json.hpp>

#include <optional>
#include <string>
#include <vector>

#include "nct/clifford.hpp"
#include "nct/dirac.hpp"
#include "nct/heisenberg.hpp"
#include "nct/matrix.hpp"
#include "nct/sonn.hpp"
#include "nct/torus_algebra.hpp"

namespace nct {

// Field order is fixed everywhere (ordered_json), rationals travel as "p/q"
// strings and complex numbers as [re, im] pairs, so emitted documents are
// deterministic and read back unchanged.
using Json = nlohmann::ordered_json;

inline Json rat_to_json(const Rational& r) { return Json(r.str()); }

inline Rational rat_from_json(const Json& j) {
    if (!j.is_string()) throw ParseError("rational must be a string like \"p/q\"");
    return Rational::parse(j.get<std::string>());
}

inline Json rat_matrix_to_json(const RatMatrix& m) {
    Json rows = Json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        Json row = Json::array();
        for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(rat_to_json(m(i, j)));
        rows.push_back(std::move(row));
    }
    return rows;
}

inline RatMatrix rat_matrix_from_json(const Json& j) {
    if (!j.is_array() || j.empty()) throw ParseError("matrix must be a non-empty array of rows");
    std::size_t rows = j.size();
    std::size_t cols = j[0].is_array() ? j[0].size() : 0;
    if (cols == 0) throw ParseError("matrix rows must be non-empty arrays");
    RatMatrix m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i) {
        if (!j[i].is_array() || j[i].size() != cols) throw ParseError("ragged matrix");
        for (std::size_t k = 0; k < cols; ++k) m(i, k) = rat_from_json(j[i][k]);
    }
    return m;
}

inline Json int_matrix_to_json(const IntMatrix& m) {
    Json rows = Json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        Json row = Json::array();
        for (std::size_t j = 0; j < m.cols(); ++j) {
            if (m(i, j) > std::numeric_limits<long long>::max() ||
                m(i, j) < std::numeric_limits<long long>::min())
                row.push_back(m(i, j).str());
            else
                row.push_back(m(i, j).convert_to<long long>());
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

inline IntMatrix int_matrix_from_json(const Json& j) {
    if (!j.is_array() || j.empty()) throw ParseError("matrix must be a non-empty array of rows");
    std::size_t rows = j.size();
    std::size_t cols = j[0].is_array() ? j[0].size() : 0;
    if (cols == 0) throw ParseError("matrix rows must be non-empty arrays");
    IntMatrix m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i) {
        if (!j[i].is_array() || j[i].size() != cols) throw ParseError("ragged matrix");
        for (std::size_t k = 0; k < cols; ++k) {
            const Json& v = j[i][k];
            if (v.is_number_integer())
                m(i, k) = Int(v.get<long long>());
            else if (v.is_string())
                m(i, k) = Int(v.get<std::string>());
            else
                throw ParseError("matrix entry is not an integer");
        }
    }
    return m;
}

inline Json complex_to_json(const Complex& z) { return Json::array({z.real(), z.imag()}); }

inline Complex complex_from_json(const Json& j) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
        throw ParseError("complex value must be [re, im]");
    return {j[0].get<double>(), j[1].get<double>()};
}

inline Json cmatrix_to_json(const CMatrix& m) {
    Json rows = Json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        Json row = Json::array();
        for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(complex_to_json(m(i, j)));
        rows.push_back(std::move(row));
    }
    return rows;
}

inline CMatrix cmatrix_from_json(const Json& j) {
    if (!j.is_array() || j.empty()) throw ParseError("matrix must be a non-empty array of rows");
    std::size_t rows = j.size();
    std::size_t cols = j[0].is_array() ? j[0].size() : 0;
    CMatrix m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i) {
        if (!j[i].is_array() || j[i].size() != cols) throw ParseError("ragged matrix");
        for (std::size_t k = 0; k < cols; ++k) m(i, k) = complex_from_json(j[i][k]);
    }
    return m;
}

// --- theta ------------------------------------------------------------------

inline Json theta_to_json(const SkewMatrix& theta) {
    Json j;
    j["n"] = theta.n();
    j["theta"] = rat_matrix_to_json(theta.mat());
    return j;
}

inline SkewMatrix theta_from_json(const Json& j) {
    if (!j.is_object() || !j.contains("theta")) throw ParseError("theta document needs a 'theta' field");
    RatMatrix m = rat_matrix_from_json(j.at("theta"));
    if (j.contains("n") && j.at("n").get<std::size_t>() != m.rows())
        throw ParseError("declared n does not match the matrix");
    try {
        return SkewMatrix(m);
    } catch (const NotSkew&) {
        throw ParseError("theta matrix is not skew-symmetric");
    }
}

// --- group elements and words ------------------------------------------------

inline Json sonn_to_json(const SonnElement& g) {
    Json j;
    j["n"] = g.n();
    j["matrix"] = int_matrix_to_json(g.mat());
    return j;
}

inline SonnElement sonn_from_json(const Json& j) {
    if (!j.is_object() || !j.contains("n") || !j.contains("matrix"))
        throw ParseError("group element document needs 'n' and 'matrix'");
    std::size_t n = j.at("n").get<std::size_t>();
    IntMatrix m = int_matrix_from_json(j.at("matrix"));
    if (m.rows() != 2 * n || m.cols() != 2 * n) throw ParseError("matrix must be 2n x 2n");
    return SonnElement(n, std::move(m));
}

inline Json word_to_json(const GeneratorWord& w) {
    Json tokens = Json::array();
    for (const auto& t : w.tokens()) {
        if (const auto* rho = std::get_if<RhoToken>(&t)) {
            Json o;
            o["rho"] = int_matrix_to_json(rho->r);
            tokens.push_back(std::move(o));
        } else if (const auto* nu = std::get_if<NuToken>(&t)) {
            Json o;
            o["nu"] = int_matrix_to_json(nu->n);
            tokens.push_back(std::move(o));
        } else {
            tokens.push_back("sigma2");
        }
    }
    Json j;
    j["word"] = std::move(tokens);
    return j;
}

inline GeneratorWord word_from_json(const Json& j) {
    const Json* arr = nullptr;
    if (j.is_array())
        arr = &j;
    else if (j.is_object() && j.contains("word") && j.at("word").is_array())
        arr = &j.at("word");
    else
        throw ParseError("word document needs a 'word' array");
    std::vector<WordToken> tokens;
    for (const Json& t : *arr) {
        if (t.is_string() && t.get<std::string>() == "sigma2") {
            tokens.push_back(Sigma2Token{});
        } else if (t.is_object() && t.contains("rho")) {
            tokens.push_back(RhoToken{int_matrix_from_json(t.at("rho"))});
        } else if (t.is_object() && t.contains("nu")) {
            tokens.push_back(NuToken{int_matrix_from_json(t.at("nu"))});
        } else {
            throw ParseError("word letter must be \"sigma2\", {\"rho\":...} or {\"nu\":...}");
        }
    }
    try {
        return GeneratorWord(std::move(tokens));
    } catch (const Error& e) {
        throw ParseError(e.what());
    }
}

// --- algebra elements ---------------------------------------------------------

inline Json torus_element_to_json(const TorusElement& a) {
    Json j;
    j["n"] = a.n();
    j["theta"] = rat_matrix_to_json(a.theta().mat());
    Json terms = Json::array();
    for (const auto& [x, c] : a.terms()) {
        for (const auto& [phase, gauss] : c.parts()) {
            Json t;
            t["x"] = x;
            t["re"] = gauss.re.str();
            t["im"] = gauss.im.str();
            t["phase"] = phase.str();
            terms.push_back(std::move(t));
        }
    }
    j["terms"] = std::move(terms);
    return j;
}

inline TorusElement torus_element_from_json(const Json& j) {
    if (!j.is_object() || !j.contains("theta") || !j.contains("terms"))
        throw ParseError("algebra element needs 'theta' and 'terms'");
    SkewMatrix theta = theta_from_json(j);
    TorusElement a(theta);
    for (const Json& t : j.at("terms")) {
        if (!t.is_object() || !t.contains("x")) throw ParseError("term needs an 'x' exponent");
        ExponentVec x = t.at("x").get<ExponentVec>();
        if (x.size() != theta.n()) throw ParseError("term exponent has wrong arity");
        Coeff c;
        Rational re = t.contains("re") ? rat_from_json(t.at("re")) : Rational(0);
        Rational im = t.contains("im") ? rat_from_json(t.at("im")) : Rational(0);
        Rational ph = t.contains("phase") ? rat_from_json(t.at("phase")) : Rational(0);
        c.add(ph, GaussRational(re, im));
        a.add_term(x, c);
    }
    return a;
}

// --- Dirac data ----------------------------------------------------------------

inline Json dirac_to_json(const DiracData& d) {
    Json j;
    j["n"] = d.n;
    j["tau"] = rat_matrix_to_json(d.tau);
    if (d.bounded)
        j["B"] = cmatrix_to_json(*d.bounded);
    else
        j["B"] = nullptr;
    Json mu = Json::array();
    for (const auto& s : d.mu_shift) mu.push_back(s.str());
    j["mu_shift"] = std::move(mu);
    return j;
}

inline DiracData dirac_from_json(const Json& j) {
    if (!j.is_object() || !j.contains("n") || !j.contains("tau"))
        throw ParseError("Dirac data needs 'n' and 'tau'");
    std::size_t n = j.at("n").get<std::size_t>();
    RatMatrix tau = rat_matrix_from_json(j.at("tau"));
    std::optional<CMatrix> b;
    if (j.contains("B") && !j.at("B").is_null()) b = cmatrix_from_json(j.at("B"));
    std::vector<Rational> mu;
    if (j.contains("mu_shift"))
        for (const Json& s : j.at("mu_shift")) mu.push_back(rat_from_json(s));
    try {
        return DiracData(n, std::move(tau), std::move(b), std::move(mu));
    } catch (const Error& e) {
        throw ParseError(e.what());
    }
}

// --- reports --------------------------------------------------------------------

inline Json clifford_to_json(const CliffordRep& rep) {
    Json j;
    j["n"] = rep.n;
    j["dim"] = rep.dim;
    Json gens = Json::array();
    for (const auto& g : rep.generators) gens.push_back(cmatrix_to_json(g));
    j["generators"] = std::move(gens);
    return j;
}

inline Json module_report_to_json(const ModuleReport& r) {
    Json j;
    j["n"] = r.n;
    j["grid"] = {{"N", r.grid.samples}, {"L", r.grid.half_width}, {"P", r.grid.p_box}};
    j["tol"] = r.tol;
    if (!r.error.empty()) {
        j["error"] = r.error;
        j["pass"] = false;
        return j;
    }
    j["residuals"] = {{"right_relation", r.right_relation_defect},
                      {"left_relation", r.left_relation_defect},
                      {"commutant", r.commutant_defect},
                      {"connection_commutator", r.connection_defect},
                      {"hermitian_pairing", r.hermitian_defect}};
    j["curvature"] = {{"estimate", r.curvature_estimate},
                      {"predicted", r.curvature_predicted},
                      {"defect", r.curvature_defect}};
    j["pass"] = r.pass;
    return j;
}

}  // namespace nct
