#pragma once

#include <cstddef>
#include <vector>

#include "nct/matrix.hpp"

namespace nct {

/// Irreducible representation of Cl_{n,0} by self-adjoint generators on
/// C^{2^floor(n/2)}.
struct CliffordRep {
    std::size_t n = 0;
    std::size_t dim = 1;
    std::vector<CMatrix> generators;
};

namespace detail {

inline CMatrix pauli_x() { return CMatrix{{0.0, 1.0}, {1.0, 0.0}}; }
inline CMatrix pauli_y() {
    return CMatrix{{0.0, Complex(0.0, -1.0)}, {Complex(0.0, 1.0), 0.0}};
}
inline CMatrix pauli_z() { return CMatrix{{1.0, 0.0}, {0.0, -1.0}}; }

inline CMatrix kron(const CMatrix& a, const CMatrix& b) {
    CMatrix r(a.rows() * b.rows(), a.cols() * b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            for (std::size_t k = 0; k < b.rows(); ++k)
                for (std::size_t l = 0; l < b.cols(); ++l)
                    r(i * b.rows() + k, j * b.cols() + l) = a(i, j) * b(k, l);
    return r;
}

}  // namespace detail

/// Pauli tensor tower: base cases ((1)) and (sigma_x, sigma_y); each step to
/// n+2 tensors a fresh anticommuting pair onto the existing generators, and
/// odd n appends the chirality product. Fixing one construction keeps outputs
/// reproducible bit for bit.
inline CliffordRep clifford_generators(std::size_t n) {
    if (n == 0) throw DimensionTooSmall("Clifford rank must be >= 1");
    CliffordRep rep;
    rep.n = n;
    std::size_t m = n / 2;
    rep.dim = std::size_t(1) << m;

    if (n == 1) {
        rep.generators = {CMatrix{{1.0}}};
        return rep;
    }

    // Even part: A_{2k-1} has sigma_x in slot k, A_{2k} has sigma_y there,
    // with sigma_z on every later slot and identity on earlier ones.
    rep.generators.reserve(n);
    for (std::size_t k = 1; k <= m; ++k) {
        for (int which = 0; which < 2; ++which) {
            CMatrix g{{1.0}};
            for (std::size_t slot = 1; slot <= m; ++slot) {
                CMatrix factor;
                if (slot < k)
                    factor = CMatrix::identity(2);
                else if (slot == k)
                    factor = which == 0 ? detail::pauli_x() : detail::pauli_y();
                else
                    factor = detail::pauli_z();
                g = detail::kron(g, factor);
            }
            rep.generators.push_back(std::move(g));
        }
    }

    if (n % 2 == 1) {
        // Chirality element sigma_z^{tensor m} anticommutes with all of the above.
        CMatrix g{{1.0}};
        for (std::size_t slot = 0; slot < m; ++slot) g = detail::kron(g, detail::pauli_z());
        rep.generators.push_back(std::move(g));
    }
    return rep;
}

/// Relation report: worst anti-commutation and self-adjointness defects plus
/// generator traces (zero trace for dim >= 2 is a necessary irreducibility
/// signal).
struct CliffordReport {
    double anticommutation_defect = 0.0;
    double self_adjointness_defect = 0.0;
    double max_trace_abs = 0.0;
    bool pass = false;
};

inline CliffordReport verify_clifford(const CliffordRep& rep, double tol) {
    if (tol <= 0) throw Error("tolerance must be positive");
    CliffordReport rpt;
    CMatrix id = CMatrix::identity(rep.dim);
    for (std::size_t i = 0; i < rep.generators.size(); ++i) {
        const CMatrix& a = rep.generators[i];
        rpt.self_adjointness_defect = std::max(rpt.self_adjointness_defect, hermitian_defect(a));
        if (rep.dim >= 2) rpt.max_trace_abs = std::max(rpt.max_trace_abs, std::abs(trace(a)));
        for (std::size_t j = i; j < rep.generators.size(); ++j) {
            const CMatrix& b = rep.generators[j];
            CMatrix anti = a * b + b * a;
            if (i == j) anti = anti - id * Complex(2.0, 0.0);
            rpt.anticommutation_defect = std::max(rpt.anticommutation_defect, max_abs(anti));
        }
    }
    rpt.pass = rpt.anticommutation_defect < tol && rpt.self_adjointness_defect < tol;
    return rpt;
}

}  // namespace nct
