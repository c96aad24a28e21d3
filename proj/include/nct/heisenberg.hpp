#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "nct/dirac.hpp"
#include "nct/fft.hpp"
#include "nct/matrix.hpp"
#include "nct/phase.hpp"

namespace nct {

// ---------------------------------------------------------------------------
// Lattice embeddings for the sigma2 equivalence bimodule on S(R x Z^q).
//
// A point z = (s, sigma, u, v) of R^2 x Z^q x R^q acts on f(t, p) by
//     (z . f)(t, p) = e(sigma t + v . p) f(t + s, p + u),
// and two such operators commute up to e(z^t J2 w). The right action sends
// x to T x, the left action to S x; the construction makes
//     T^t J2 T = -theta,   S^t J2 S = sigma2(theta),   S^t J2 T integral,
// which are exactly the identities verified on construction. Integrality of
// S^t J2 T forces the +T32^t block in S. Under this convention the connection
// pair is T11^{-1} (-t, (2 pi i)^{-1} d/dt) and -p for the integer directions;
// these give [grad_i, x-action] = x_i on the right and the
// theta11^{-1} (I2, -theta12) x law on the left.
// ---------------------------------------------------------------------------

/// Dual pair of lattice embeddings realizing the sigma2 bimodule.
struct Embeddings {
    std::size_t n = 0;
    std::size_t q = 0;
    SkewMatrix theta;
    SkewMatrix theta_prime;
    RatMatrix t11;      // 2x2, t11^t Jo t11 = -theta11
    RatMatrix t32;      // qxq, t32^t - t32 = theta22
    RatMatrix embed_t;  // (2+2q) x n
    RatMatrix embed_s;  // (2+2q) x n
    RatMatrix jo;       // [[0,1],[-1,0]]
    RatMatrix j2;       // [[Jo,0,0],[0,0,I],[0,-I,0]]
    RatMatrix t11_inv;
};

inline RatMatrix jo_matrix() {
    return RatMatrix{{Rational(0), Rational(1)}, {Rational(-1), Rational(0)}};
}

inline RatMatrix j2_matrix(std::size_t q) {
    RatMatrix j(2 + 2 * q, 2 + 2 * q);
    j.set_block(0, 0, jo_matrix());
    for (std::size_t i = 0; i < q; ++i) {
        j(2 + i, 2 + q + i) = Rational(1);
        j(2 + q + i, 2 + i) = Rational(-1);
    }
    return j;
}

/// Builds T and S for theta with theta11 != 0 and checks all four embedding
/// identities exactly. T11 = diag(1, -theta_{12}); T32 is the negated strict
/// upper triangle of theta22.
inline Embeddings build_embeddings(const SkewMatrix& theta) {
    if (theta.n() < 2) throw DimensionTooSmall("bimodule needs n >= 2");
    Rational a = theta(0, 1);
    if (a.is_zero()) throw Theta11Singular();

    Embeddings e;
    e.n = theta.n();
    e.q = theta.n() - 2;
    e.theta = theta;
    e.theta_prime = sigma2_block(theta);
    e.jo = jo_matrix();
    e.j2 = j2_matrix(e.q);

    e.t11 = RatMatrix{{Rational(1), Rational(0)}, {Rational(0), -a}};
    e.t11_inv = rat_inverse(e.t11);

    RatMatrix th22 = theta22(theta);
    e.t32 = RatMatrix(e.q, e.q);
    for (std::size_t i = 0; i < e.q; ++i)
        for (std::size_t j = i + 1; j < e.q; ++j) e.t32(i, j) = -th22(i, j);

    RatMatrix th12 = theta12(theta);

    e.embed_t = RatMatrix(2 + 2 * e.q, e.n);
    e.embed_t.set_block(0, 0, e.t11);
    e.embed_t.set_block(2, 2, RatMatrix::identity(e.q));
    e.embed_t.set_block(2 + e.q, 0, th12.transpose());
    e.embed_t.set_block(2 + e.q, 2, e.t32);

    RatMatrix w = e.jo * rat_inverse(e.t11.transpose());
    e.embed_s = RatMatrix(2 + 2 * e.q, e.n);
    e.embed_s.set_block(0, 0, w);
    e.embed_s.set_block(0, 2, -(w * th12));
    e.embed_s.set_block(2, 2, RatMatrix::identity(e.q));
    e.embed_s.set_block(2 + e.q, 2, e.t32.transpose());

    // Embedding identities, all exact in rational arithmetic.
    if (e.t11.transpose() * e.jo * e.t11 != -theta11(theta))
        throw Error("embedding identity t11^t Jo t11 = -theta11 failed");
    if (e.t32.transpose() - e.t32 != th22)
        throw Error("embedding identity t32^t - t32 = theta22 failed");
    if (e.embed_t.transpose() * e.j2 * e.embed_t != -theta.mat())
        throw Error("embedding identity T^t J2 T = -theta failed");
    RatMatrix dual = e.embed_s.transpose() * e.j2 * e.embed_t;
    for (std::size_t i = 0; i < dual.rows(); ++i)
        for (std::size_t j = 0; j < dual.cols(); ++j)
            if (!dual(i, j).is_integer()) throw Error("dual lattice pairing is not integral");
    if (e.embed_s.transpose() * e.j2 * e.embed_s != e.theta_prime.mat())
        throw Error("embedding identity S^t J2 S = sigma2(theta) failed");
    return e;
}

// ---------------------------------------------------------------------------
// Discretized sections of S(R x Z^q).
// ---------------------------------------------------------------------------

struct GridSpec {
    std::size_t samples = 2048;  // t samples, power of two
    double half_width = 16.0;    // t window [-L, L)
    long long p_box = 8;         // p in {-P..P}^q
};

/// Complex values on a uniform t-grid times a finite p-box. Column-major in
/// p: each p-slice is contiguous in t for the spectral kernels.
class ModuleGrid {
public:
    ModuleGrid(GridSpec spec, std::size_t q) : spec_(spec), q_(q) {
        if (spec_.samples == 0 || (spec_.samples & (spec_.samples - 1)) != 0)
            throw Error("t sample count must be a power of two");
        if (spec_.half_width <= 0) throw Error("window half-width must be positive");
        pcells_ = 1;
        for (std::size_t i = 0; i < q_; ++i) pcells_ *= box_side();
        values_.assign(pcells_ * spec_.samples, Complex(0.0, 0.0));
    }

    const GridSpec& spec() const { return spec_; }
    std::size_t q() const { return q_; }
    std::size_t samples() const { return spec_.samples; }
    double half_width() const { return spec_.half_width; }
    long long p_box() const { return spec_.p_box; }
    std::size_t box_side() const { return static_cast<std::size_t>(2 * spec_.p_box + 1); }
    std::size_t p_cells() const { return pcells_; }
    double step() const { return 2.0 * spec_.half_width / static_cast<double>(spec_.samples); }
    double t_at(std::size_t j) const { return -spec_.half_width + step() * static_cast<double>(j); }

    Complex& at(std::size_t j, std::size_t pflat) { return values_[pflat * spec_.samples + j]; }
    const Complex& at(std::size_t j, std::size_t pflat) const {
        return values_[pflat * spec_.samples + j];
    }

    std::size_t p_flat(const std::vector<long long>& p) const {
        if (p.size() != q_) throw DimensionMismatch("p index has wrong arity");
        std::size_t f = 0;
        for (std::size_t i = q_; i-- > 0;) {
            long long c = p[i] + spec_.p_box;
            if (c < 0 || c >= static_cast<long long>(box_side()))
                throw IndexOutOfRange("p outside the box");
            f = f * box_side() + static_cast<std::size_t>(c);
        }
        return f;
    }

    std::vector<long long> p_unflat(std::size_t f) const {
        std::vector<long long> p(q_);
        for (std::size_t i = 0; i < q_; ++i) {
            p[i] = static_cast<long long>(f % box_side()) - spec_.p_box;
            f /= box_side();
        }
        return p;
    }

    double norm() const {
        double s = 0.0;
        for (const auto& z : values_) s += std::norm(z);
        return std::sqrt(s * step());
    }

    Complex inner(const ModuleGrid& o) const {
        check_compatible(o);
        Complex s = 0.0;
        for (std::size_t i = 0; i < values_.size(); ++i) s += std::conj(values_[i]) * o.values_[i];
        return s * step();
    }

    ModuleGrid operator+(const ModuleGrid& o) const {
        check_compatible(o);
        ModuleGrid r = *this;
        for (std::size_t i = 0; i < values_.size(); ++i) r.values_[i] += o.values_[i];
        return r;
    }

    ModuleGrid operator-(const ModuleGrid& o) const {
        check_compatible(o);
        ModuleGrid r = *this;
        for (std::size_t i = 0; i < values_.size(); ++i) r.values_[i] -= o.values_[i];
        return r;
    }

    ModuleGrid operator*(Complex c) const {
        ModuleGrid r = *this;
        for (auto& z : r.values_) z *= c;
        return r;
    }

    void check_compatible(const ModuleGrid& o) const {
        if (spec_.samples != o.spec_.samples || spec_.half_width != o.spec_.half_width ||
            spec_.p_box != o.spec_.p_box || q_ != o.q_)
            throw DimensionMismatch("grids are not compatible");
    }

    /// Gaussian e^{-pi (t-center)^2} e(mod t) concentrated on one p cell.
    static ModuleGrid gaussian(GridSpec spec, std::size_t q, double center, double modulation,
                               const std::vector<long long>& p0) {
        ModuleGrid g(spec, q);
        std::size_t pf = g.p_flat(p0);
        for (std::size_t j = 0; j < g.samples(); ++j) {
            double t = g.t_at(j);
            double amp = std::exp(-std::numbers::pi * (t - center) * (t - center));
            g.at(j, pf) = amp * e(modulation * t);
        }
        return g;
    }

    std::vector<Complex>& raw() { return values_; }
    const std::vector<Complex>& raw() const { return values_; }

private:
    GridSpec spec_;
    std::size_t q_;
    std::size_t pcells_ = 1;
    std::vector<Complex> values_;
};

namespace detail {

/// Fractional t-translation f(t) -> f(t + s) by Fourier phase shift,
/// applied to one contiguous p-slice.
inline void translate_slice(std::vector<Complex>& col, double shift_samples) {
    const std::size_t n = col.size();
    fft_inplace(col, false);
    for (std::size_t k = 0; k < n; ++k) {
        double frac = static_cast<double>(signed_bin(k, n)) * shift_samples /
                      static_cast<double>(n);
        col[k] *= e(frac);
    }
    fft_inplace(col, true);
}

inline void derivative_slice(std::vector<Complex>& col, double half_width) {
    const std::size_t n = col.size();
    fft_inplace(col, false);
    for (std::size_t k = 0; k < n; ++k) {
        double f = static_cast<double>(signed_bin(k, n)) / (2.0 * half_width);
        col[k] *= f;
    }
    fft_inplace(col, true);
}

}  // namespace detail

/// (s, sigma, u, v) . f = e(sigma t + v . p) f(t + s, p + u), the shared
/// kernel of both module actions. guard bounds the relative mass that may sit
/// in the wrap-around band or leave the p-box.
inline ModuleGrid heisenberg_apply(const ModuleGrid& g, double s, double sigma,
                                   const std::vector<long long>& u, const std::vector<double>& v,
                                   double guard = 1e-3) {
    if (u.size() != g.q() || v.size() != g.q()) throw DimensionMismatch("shift arity mismatch");

    const std::size_t n = g.samples();
    const double h = g.step();
    double total = g.norm();

    if (total > 0.0 && guard > 0.0) {
        // t wrap-around band and p-box loss must stay relatively negligible.
        std::size_t band = static_cast<std::size_t>(std::ceil(std::abs(s) / h)) + 2;
        band = std::min(band, n / 2);
        double band_mass = 0.0;
        for (std::size_t pf = 0; pf < g.p_cells(); ++pf)
            for (std::size_t j = 0; j < band; ++j)
                band_mass += std::norm(g.at(j, pf)) + std::norm(g.at(n - 1 - j, pf));
        double lost_mass = 0.0;
        for (std::size_t pf = 0; pf < g.p_cells(); ++pf) {
            std::vector<long long> p = g.p_unflat(pf);
            bool reachable = true;
            for (std::size_t i = 0; i < g.q(); ++i)
                if (std::llabs(p[i] - u[i]) > g.p_box()) reachable = false;
            if (reachable) continue;
            for (std::size_t j = 0; j < n; ++j) lost_mass += std::norm(g.at(j, pf));
        }
        if (std::sqrt(band_mass * h) > guard * total || std::sqrt(lost_mass * h) > guard * total)
            throw BoundaryViolation();
    }

    ModuleGrid out(g.spec(), g.q());
    std::vector<Complex> col(n);
    const double shift_samples = s / h;
    for (std::size_t pf_out = 0; pf_out < out.p_cells(); ++pf_out) {
        std::vector<long long> p = out.p_unflat(pf_out);
        std::vector<long long> src = p;
        bool inside = true;
        double vdotp = 0.0;
        for (std::size_t i = 0; i < g.q(); ++i) {
            src[i] += u[i];
            if (std::llabs(src[i]) > g.p_box()) inside = false;
            vdotp += v[i] * static_cast<double>(p[i]);
        }
        if (!inside) continue;
        std::size_t pf_src = g.p_flat(src);
        for (std::size_t j = 0; j < n; ++j) col[j] = g.at(j, pf_src);
        if (s != 0.0) detail::translate_slice(col, shift_samples);
        for (std::size_t j = 0; j < n; ++j)
            out.at(j, pf_out) = col[j] * e(sigma * g.t_at(j) + vdotp);
    }
    return out;
}

namespace detail {

struct ActionData {
    double s = 0.0;
    double sigma = 0.0;
    std::vector<long long> u;
    std::vector<double> v;
};

inline ActionData action_data(const RatMatrix& embed, std::size_t q, const ExponentVec& x) {
    if (embed.cols() != x.size()) throw DimensionMismatch("exponent arity mismatch");
    std::vector<Rational> z(embed.rows(), Rational(0));
    for (std::size_t i = 0; i < embed.rows(); ++i)
        for (std::size_t j = 0; j < embed.cols(); ++j)
            if (x[j] != 0) z[i] += embed(i, j) * Rational(x[j]);
    ActionData a;
    a.s = z[0].to_double();
    a.sigma = z[1].to_double();
    for (std::size_t i = 0; i < q; ++i) {
        if (!z[2 + i].is_integer()) throw Error("p shift must be integral");
        a.u.push_back(z[2 + i].num().convert_to<long long>());
        a.v.push_back(z[2 + q + i].to_double());
    }
    return a;
}

}  // namespace detail

/// Right action of U_x through the T embedding.
inline ModuleGrid right_action(const Embeddings& e, const ModuleGrid& g, const ExponentVec& x,
                               double guard = 1e-3) {
    if (g.q() != e.q) throw DimensionMismatch();
    auto a = detail::action_data(e.embed_t, e.q, x);
    return heisenberg_apply(g, a.s, a.sigma, a.u, a.v, guard);
}

/// Commuting left action of U_x (algebra at sigma2(theta)) through S.
inline ModuleGrid left_action(const Embeddings& e, const ModuleGrid& g, const ExponentVec& x,
                              double guard = 1e-3) {
    if (g.q() != e.q) throw DimensionMismatch();
    auto a = detail::action_data(e.embed_s, e.q, x);
    return heisenberg_apply(g, a.s, a.sigma, a.u, a.v, guard);
}

/// grad_i on the section space: rows of T11^{-1} (-t, (2 pi i)^{-1} d/dt) for
/// i = 1, 2 and multiplication by -p_{i-2} for i >= 3.
struct Connection {
    std::size_t index = 1;  // 1-based
    RatMatrix t11_inv;
};

inline Connection make_connection(const Embeddings& e, std::size_t index) {
    if (index < 1 || index > e.n) throw IndexOutOfRange("connection index out of range");
    return Connection{index, e.t11_inv};
}

inline ModuleGrid connection_apply(const Connection& c, const ModuleGrid& g) {
    ModuleGrid out(g.spec(), g.q());
    const std::size_t n = g.samples();
    if (c.index >= 3) {
        std::size_t comp = c.index - 3;
        if (comp >= g.q()) throw IndexOutOfRange("connection index exceeds q + 2");
        for (std::size_t pf = 0; pf < g.p_cells(); ++pf) {
            double pval = static_cast<double>(g.p_unflat(pf)[comp]);
            for (std::size_t j = 0; j < n; ++j) out.at(j, pf) = -pval * g.at(j, pf);
        }
        return out;
    }
    double r1 = c.t11_inv(c.index - 1, 0).to_double();
    double r2 = c.t11_inv(c.index - 1, 1).to_double();
    std::vector<Complex> col(n);
    for (std::size_t pf = 0; pf < g.p_cells(); ++pf) {
        for (std::size_t j = 0; j < n; ++j) col[j] = g.at(j, pf);
        detail::derivative_slice(col, g.half_width());
        for (std::size_t j = 0; j < n; ++j)
            out.at(j, pf) = r1 * (-g.t_at(j)) * g.at(j, pf) + r2 * col[j];
    }
    return out;
}

// ---------------------------------------------------------------------------
// Verification battery.
// ---------------------------------------------------------------------------

/// Residual families measured on the Gaussian battery.
struct ModuleReport {
    std::size_t n = 0;
    GridSpec grid;
    double tol = 0.0;
    std::string error;  // nonempty when the module could not be built

    double right_relation_defect = 0.0;
    double left_relation_defect = 0.0;
    double commutant_defect = 0.0;
    double connection_defect = 0.0;
    double curvature_estimate = 0.0;
    double curvature_predicted = 0.0;
    double curvature_defect = 0.0;
    double hermitian_defect = 0.0;
    bool pass = false;
};

/// Battery shape knobs. The defaults match the standard verification run;
/// convergence studies shrink the boxes and centers so that the wrap-around
/// tail is the dominant, measurable error term.
struct VerifyOptions {
    std::uint64_t seed = 0;
    std::size_t relation_pairs = 12;
    long long sample_box = 2;
    long long connection_box = 2;
    double guard = 1e-3;
    std::vector<double> centers = {-1.0, 0.0, 1.0};
    std::vector<double> modulations = {0.0, 1.0 / 3.0};
    long long p0_range = 1;
};

namespace detail {

inline std::vector<ModuleGrid> gaussian_battery(const GridSpec& spec, std::size_t q,
                                                const VerifyOptions& opt) {
    std::vector<ModuleGrid> out;
    std::vector<std::vector<long long>> p0s;
    std::vector<long long> cur(q, -opt.p0_range);
    while (true) {
        p0s.push_back(cur);
        std::size_t i = 0;
        while (i < q && cur[i] == opt.p0_range) cur[i++] = -opt.p0_range;
        if (i == q) break;
        ++cur[i];
    }
    for (double center : opt.centers)
        for (double mod : opt.modulations)
            for (const auto& p0 : p0s) out.push_back(ModuleGrid::gaussian(spec, q, center, mod, p0));
    return out;
}

inline std::vector<ExponentVec> sample_vectors(std::size_t n, long long box, std::size_t count,
                                               std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<long long> dist(-box, box);
    std::vector<ExponentVec> out;
    out.reserve(count);
    while (out.size() < count) {
        ExponentVec x(n);
        bool nonzero = false;
        for (auto& c : x) {
            c = dist(rng);
            nonzero |= c != 0;
        }
        if (nonzero) out.push_back(std::move(x));
    }
    return out;
}

}  // namespace detail

/// Runs the full operator-identity battery: both commutation relations, the
/// commutant, the connection commutators against the exact rational
/// prediction, the curvature scalar, and the Hermitian-pairing spot check.
inline ModuleReport verify_module(const SkewMatrix& theta, const GridSpec& spec, double tol,
                                  const VerifyOptions& opt = {}) {
    ModuleReport rpt;
    rpt.n = theta.n();
    rpt.grid = spec;
    rpt.tol = tol;

    Embeddings emb;
    try {
        emb = build_embeddings(theta);
    } catch (const Theta11Singular&) {
        rpt.error = "Theta11Singular";
        return rpt;
    } catch (const DimensionTooSmall& err) {
        rpt.error = err.what();
        return rpt;
    }

    const std::size_t n = theta.n();
    const std::size_t q = emb.q;
    const double guard = opt.guard;
    const std::size_t relation_pairs = opt.relation_pairs;
    auto battery = detail::gaussian_battery(spec, q, opt);
    auto xs = detail::sample_vectors(n, opt.sample_box, relation_pairs,
                                     opt.seed ^ 0x9e3779b97f4a7c15ULL);
    auto ys = detail::sample_vectors(n, opt.sample_box, relation_pairs,
                                     opt.seed ^ 0xc2b2ae3d27d4eb4fULL);

    // Exact commutation exponents, evaluated only once per pair.
    auto rel_phase = [](const SkewMatrix& th, const ExponentVec& x, const ExponentVec& y) {
        return e(commutation_exponent(th, x, y).to_double());
    };

    for (const auto& g : battery) {
        double gn = g.norm();
        for (std::size_t k = 0; k < relation_pairs; ++k) {
            const auto& x = xs[k];
            const auto& y = ys[k];
            // Right action represents f . (U_x U_y): apply x, then y.
            ModuleGrid rxy = right_action(emb, right_action(emb, g, x, guard), y, guard);
            ModuleGrid ryx = right_action(emb, right_action(emb, g, y, guard), x, guard);
            double dr = (rxy - ryx * rel_phase(theta, x, y)).norm() / gn;
            rpt.right_relation_defect = std::max(rpt.right_relation_defect, dr);

            // Left action is a homomorphism for sigma2(theta).
            ModuleGrid lxy = left_action(emb, left_action(emb, g, y, guard), x, guard);
            ModuleGrid lyx = left_action(emb, left_action(emb, g, x, guard), y, guard);
            double dl = (lxy - lyx * rel_phase(emb.theta_prime, x, y)).norm() / gn;
            rpt.left_relation_defect = std::max(rpt.left_relation_defect, dl);

            ModuleGrid rl = right_action(emb, left_action(emb, g, y, guard), x, guard);
            ModuleGrid lr = left_action(emb, right_action(emb, g, x, guard), y, guard);
            double dc = (rl - lr).norm() / gn;
            rpt.commutant_defect = std::max(rpt.commutant_defect, dc);
        }
    }

    // Connection commutators [grad_i, U_x^l] = c_i(x) U_x^l with
    // c(x) = (theta11^{-1} (I2, -theta12) x ; x_q), exact in rationals.
    RatMatrix inv11 = rat_inverse(theta11(theta));
    RatMatrix lead(2, n);
    lead.set_block(0, 0, inv11);
    if (n > 2) lead.set_block(0, 2, -(inv11 * theta12(theta)));
    std::vector<Connection> grads;
    for (std::size_t i = 1; i <= n; ++i) grads.push_back(make_connection(emb, i));

    const long long cbox = opt.connection_box;
    ExponentVec x(n, -cbox);
    const ModuleGrid& ref = battery[battery.size() / 2];
    std::vector<ModuleGrid> grad_ref;
    for (const auto& c : grads) grad_ref.push_back(connection_apply(c, ref));
    double refn = ref.norm();
    while (true) {
        bool nonzero = false;
        for (auto c : x) nonzero |= c != 0;
        if (nonzero) {
            ModuleGrid lg = left_action(emb, ref, x, guard);
            std::vector<Rational> cx(n, Rational(0));
            for (std::size_t i = 0; i < 2; ++i)
                for (std::size_t j = 0; j < n; ++j)
                    if (x[j] != 0) cx[i] += lead(i, j) * Rational(x[j]);
            for (std::size_t i = 2; i < n; ++i) cx[i] = Rational(x[i]);
            for (std::size_t i = 0; i < n; ++i) {
                ModuleGrid lhs = connection_apply(grads[i], lg) -
                                 left_action(emb, grad_ref[i], x, guard);
                double d = (lhs - lg * Complex(cx[i].to_double(), 0.0)).norm() / refn;
                rpt.connection_defect = std::max(rpt.connection_defect, d);
            }
        }
        std::size_t i = 0;
        while (i < n && x[i] == cbox) x[i++] = -cbox;
        if (i == n) break;
        ++x[i];
    }

    // Curvature: [grad_1, grad_2] = (theta11^{-1})_{12} / (2 pi i), so the
    // scalar in exponent units is Re(2 pi i <g, [grad1, grad2] g> / <g, g>).
    rpt.curvature_predicted = inv11(0, 1).to_double();
    {
        ModuleGrid c12 = connection_apply(grads[0], connection_apply(grads[1], ref)) -
                         connection_apply(grads[1], connection_apply(grads[0], ref));
        Complex m = ref.inner(c12) / ref.inner(ref);
        Complex two_pi_i(0.0, 2.0 * std::numbers::pi);
        rpt.curvature_estimate = (two_pi_i * m).real();
        rpt.curvature_defect = std::abs(rpt.curvature_estimate - rpt.curvature_predicted);
    }

    // Hermitian pairing spot check on the scalar component: each grad_i is
    // symmetric for the grid inner product, matching [D, (r|s)] = 0 there.
    for (std::size_t a = 0; a + 1 < battery.size() && a < 3; ++a) {
        const ModuleGrid& r = battery[a];
        const ModuleGrid& s = battery[a + 1];
        for (const auto& c : grads) {
            Complex lhs = r.inner(connection_apply(c, s)) - connection_apply(c, r).inner(s);
            double d = std::abs(lhs) / (r.norm() * s.norm());
            rpt.hermitian_defect = std::max(rpt.hermitian_defect, d);
        }
    }

    rpt.pass = rpt.right_relation_defect < tol && rpt.left_relation_defect < tol &&
               rpt.commutant_defect < tol && rpt.connection_defect < tol &&
               rpt.curvature_defect < tol && rpt.hermitian_defect < 10.0 * tol;
    return rpt;
}

}  // namespace nct
