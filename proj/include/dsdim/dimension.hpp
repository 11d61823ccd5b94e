#pragma once

#include <optional>
#include <random>
#include <string>
#include <vector>

#include "dsdim/lattice.hpp"
#include "dsdim/numpoly.hpp"
#include "dsdim/oracle.hpp"
#include "dsdim/parser.hpp"
#include "dsdim/reduction.hpp"

namespace dsdim {

// Certified coherent autoreduced set for the reflexive closure plus the
// smallest shifts s_j with sigma^{s_j}(A_j) in the presented ideal. The
// presented ideal is generated by {sigma^{s_j}(A_j)}.
struct IdealPresentation {
    int m = 0;
    int n = 1;
    AutoreducedSet<QConstants> charset;
    std::vector<long> shifts;
    CharsetCertificate<QConstants> certificate;

    long max_shift() const {
        long k = 0;
        for (long s : shifts) k = std::max(k, s);
        return k;
    }

    std::vector<QPoly> generators_of_p() const {
        std::vector<QPoly> out;
        for (std::size_t j = 0; j < charset.elements.size(); ++j)
            out.push_back(charset.elements[j].apply_operator(
                Operator::sigma(m, shifts[j])));
        return out;
    }
};

// Build and certify a presentation from explicit charset elements + shifts.
inline IdealPresentation make_presentation(int m, int n,
                                           std::vector<CharsetEntry> entries,
                                           ConeBounds cone = {}) {
    std::stable_sort(entries.begin(), entries.end(),
                     [](const CharsetEntry& a, const CharsetEntry& b) {
                         return rank_cmp(a.poly, b.poly) < 0;
                     });
    IdealPresentation pres;
    pres.m = m;
    pres.n = n;
    std::vector<QPoly> polys;
    for (auto& e : entries) {
        if (e.shift < 0) throw SemanticError("negative shift");
        polys.push_back(e.poly);
        pres.shifts.push_back(e.shift);
    }
    pres.charset = AutoreducedSet<QConstants>{std::move(polys)};
    if (!is_autoreduced(pres.charset.elements))
        throw CertificationFailed("charset is not autoreduced");
    pres.charset.autoreduced_verified = true;
    pres.certificate =
        certify_charset(pres.charset, pres.generators_of_p(), cone);
    return pres;
}

// Build a presentation from generators of the (possibly non-reflexive)
// ideal: divide each generator by its maximal common sigma-power, complete
// the quotients into a coherent autoreduced set, then recover each element's
// shift by oracle membership search. Ideal equality with the original
// generators is verified both ways.
inline IdealPresentation presentation_from_generators(
    int m, int n, const std::vector<QPoly>& generators, ConeBounds cone = {}) {
    std::vector<QPoly> divided;
    long max_sigma = 0;
    for (const auto& g : generators) {
        if (g.is_zero()) continue;
        if (!g.is_linear_homogeneous())
            throw NonLinearInput(
                "presentation_from_generators: generator is not linear homogeneous");
        long c = -1;
        for (const DTerm& u : g.occurring_terms()) {
            c = (c < 0) ? u.ord_sigma() : std::min(c, u.ord_sigma());
            max_sigma = std::max(max_sigma, u.ord_sigma());
        }
        QPoly a(m, n);
        for (const auto& [mon, coef] : g.terms()) {
            DTerm u = mon.factors[0].first;
            u.op.sigma_exp -= c;
            a.add_monomial(Monomial{}.multiplied_by(u), coef);
        }
        divided.push_back(std::move(a));
    }
    IdealPresentation pres;
    pres.m = m;
    pres.n = n;
    pres.charset = complete_linear(divided, cone);
    pres.certificate = check_charset(pres.charset, divided, cone);
    if (!pres.certificate.ok())
        throw CertificationFailed(pres.certificate.failure);

    long cap = max_sigma;
    for (const auto& a : pres.charset.elements)
        for (const DTerm& u : a.occurring_terms())
            cap = std::max(cap, u.ord_sigma());
    cap = 2 * cap + 2;
    for (const auto& a : pres.charset.elements) {
        std::optional<long> found;
        for (long k = 0; k <= cap && !found; ++k)
            if (ideal_member_linear(a.apply_operator(Operator::sigma(m, k)),
                                    generators))
                found = k;
        if (!found)
            throw CertificationFailed(
                "could not determine the shift of a charset element within "
                "sigma-power " +
                std::to_string(cap));
        pres.shifts.push_back(*found);
    }
    // [sigma^{s_j} A_j] must equal [generators].
    auto derived = pres.generators_of_p();
    for (const auto& g : generators)
        if (!ideal_member_linear(g, derived))
            throw CertificationFailed(
                "original generator not in the ideal of the derived presentation");
    for (const auto& d : derived)
        if (!ideal_member_linear(d, generators))
            throw CertificationFailed(
                "derived generator not in the original ideal");
    return pres;
}

// ---- counting -------------------------------------------------------------

namespace dim_detail {

struct Leaders {
    std::vector<DTerm> v;
    std::vector<long> ord_u;  // ord_delta of the delta-leader
};

inline Leaders charset_leaders(const AutoreducedSet<QConstants>& A) {
    Leaders L;
    for (const auto& p : A.elements) {
        L.v.push_back(p.sigma_leader());
        L.ord_u.push_back(p.delta_leader().ord_delta());
    }
    return L;
}

template <class Fn>
void for_each_term(int m, int n, long r, long s, Fn&& fn) {
    charge_cells(static_cast<long long>(binom(r + m, m)) * (s + 1) * n);
    std::vector<long> exps(m, 0);
    auto rec = [&](auto&& self, int pos, long rest) -> void {
        if (pos == m) {
            for (long l = 0; l <= s; ++l)
                for (int i = 1; i <= n; ++i) fn(DTerm{Operator{exps, l}, i});
            return;
        }
        for (long x = 0; x <= rest; ++x) {
            exps[pos] = x;
            self(self, pos + 1, rest - x);
        }
    };
    rec(rec, 0, r);
}

}  // namespace dim_detail

// Card U'_{rs} and Card U''_{rs}: terms in the window that are multiples of
// no sigma-leader, and multiples u = tau v_A for which every witnessing pair
// has ord_delta(tau u_A) > r.
inline std::pair<long long, long long> count_U(
    const AutoreducedSet<QConstants>& A, int m, int n, long r, long s) {
    auto L = dim_detail::charset_leaders(A);
    long long u1 = 0, u2 = 0;
    dim_detail::for_each_term(m, n, r, s, [&](const DTerm& u) {
        bool multiple = false, escapes_all = true;
        for (std::size_t j = 0; j < L.v.size(); ++j) {
            auto tau = divides_term(L.v[j], u);
            if (!tau) continue;
            multiple = true;
            if (tau->ord_delta() + L.ord_u[j] <= r) escapes_all = false;
        }
        if (!multiple)
            ++u1;
        else if (escapes_all)
            ++u2;
    });
    return {u1, u2};
}

// Terms that fail the U-condition (some witness pins them inside the
// Delta-window) but whose every in-window witness (tau, A_j) has the
// sigma-exponent of tau strictly below s_j: they escape the presented ideal
// because only sigma^{>= s_j}-shifts of A_j lie in it.
inline long long count_lambda(const IdealPresentation& pres, long r, long s) {
    auto L = dim_detail::charset_leaders(pres.charset);
    long long lam = 0;
    dim_detail::for_each_term(pres.m, pres.n, r, s, [&](const DTerm& u) {
        bool witnessed = false, all_below_shift = true;
        for (std::size_t j = 0; j < L.v.size(); ++j) {
            auto tau = divides_term(L.v[j], u);
            if (!tau) continue;
            if (tau->ord_delta() + L.ord_u[j] <= r) {
                witnessed = true;
                if (tau->ord_sigma() >= pres.shifts[j]) all_below_shift = false;
            }
        }
        if (witnessed && all_below_shift) ++lam;
    });
    return lam;
}

// ---- dimension polynomials -------------------------------------------------

struct GridRect {
    long r0 = 0, r1 = -1, s0 = 0, s1 = -1;
};

struct DimensionOptions {
    bool widen = true;               // up to 3 corner widenings of the fit grid
    bool oracle_check = false;       // hard gate against linear_trdeg
    std::optional<GridRect> grid;    // override the fit sweep rectangle
};

struct DimensionResult {
    NumPoly2 psi;
    NumPoly2 u_prime;
    NumPoly2 u_dprime;
    NumPoly2 lambda;
    std::pair<long, long> stability{0, 0};
    GridRect fit_grid;
    bool oracle_checked = false;
    GridRect oracle_grid;
};

namespace dim_detail {

// sum over indeterminates of omega on the sigma-leader exponent sets; the
// lattice stability corners are folded into `corner`.
inline NumPoly2 u_prime_symbolic(const AutoreducedSet<QConstants>& A, int m,
                                 int n, std::pair<long, long>& corner) {
    auto L = charset_leaders(A);
    NumPoly2 acc = NumPoly2::zero();
    for (int i = 1; i <= n; ++i) {
        PointSet pts{m, {}};
        for (std::size_t j = 0; j < L.v.size(); ++j) {
            if (L.v[j].idx != i) continue;
            MultiIndex mi;
            mi.entries = L.v[j].op.delta_exps;
            mi.entries.push_back(L.v[j].op.sigma_exp);
            pts.points.push_back(std::move(mi));
        }
        auto [r0, s0] = stability_threshold(pts);
        corner.first = std::max(corner.first, r0);
        corner.second = std::max(corner.second, s0);
        acc = acc + omega(pts);
    }
    return acc;
}

// Closed-form U'' for a single-element charset:
// (C(t1+m-dv, m) - C(t1+m-du, m)) * (t2+1-lv).
inline NumPoly2 u_dprime_single(const AutoreducedSet<QConstants>& A, int m) {
    const QPoly& p = A.elements.front();
    const DTerm v = p.sigma_leader();
    const long dv = v.ord_delta(), lv = v.ord_sigma();
    const long du = p.delta_leader().ord_delta();
    auto alpha_v = detail::shifted_simplex_in_binomial(m, dv);
    auto alpha_u = detail::shifted_simplex_in_binomial(m, du);
    std::vector<std::vector<Int>> mtx(m + 1, std::vector<Int>(2, Int(0)));
    for (int i = 0; i <= m; ++i) {
        Rat d = alpha_v[i] - alpha_u[i];
        Rat a1 = d;                  // coefficient of C(t2+1,1)
        Rat a0 = d * Rat(-Int(lv));  // t2+1-lv = C(t2+1,1) - lv
        if (!is_integer(a0) || !is_integer(a1))
            throw Error("u_dprime_single: non-integral conversion");
        mtx[i][0] = boost::multiprecision::numerator(a0);
        mtx[i][1] = boost::multiprecision::numerator(a1);
    }
    return NumPoly2(std::move(mtx));
}

struct FitOutcome {
    NumPoly2 u_dprime;
    NumPoly2 lambda;
    std::pair<long, long> corner;
    GridRect grid;
};

// One sweep + fit attempt at the given corner: U'' on the (m+3) x 4 block
// plus a 2-wide validation band with caps (m, 1); lambda on the same rows at
// two sigma-columns with caps (m, 0). The U' polynomial is asserted against
// the enumerated counts on every visited cell.
inline FitOutcome fit_at_corner(const IdealPresentation& pres,
                                const NumPoly2& u_prime,
                                std::pair<long, long> c,
                                std::optional<GridRect> override_grid) {
    const int m = pres.m;
    GridRect rect;
    if (override_grid) {
        rect = *override_grid;
        if (rect.r1 - rect.r0 < m + 1 || rect.s1 - rect.s0 < 2)
            throw Error("fit grid override too small for the degree caps");
    } else {
        rect = GridRect{c.first, c.first + m + 4, c.second, c.second + 5};
    }
    Grid u2_vals, lam_vals;
    for (long r = rect.r0; r <= rect.r1; ++r)
        for (long s = rect.s0; s <= rect.s1; ++s) {
            auto [u1, u2] = count_U(pres.charset, pres.m, pres.n, r, s);
            if (u_prime.eval(r, s) != u1)
                throw Error("U' closed form disagrees with enumeration at (" +
                            std::to_string(r) + ", " + std::to_string(s) + ")");
            u2_vals[{r, s}] = Int(u2);
            if (s <= rect.s0 + 1)
                lam_vals[{r, s}] = Int(count_lambda(pres, r, s));
        }
    FitOutcome out;
    out.u_dprime = fit_from_grid(u2_vals, m, 1);
    out.lambda = fit_from_grid(lam_vals, m, 0);
    out.corner = {rect.r0, rect.s0};
    out.grid = rect;
    return out;
}

inline std::pair<long, long> natural_corner(const IdealPresentation& pres,
                                            std::pair<long, long> lattice) {
    long max_d = 0, max_s = 0;
    for (const auto& p : pres.charset.elements)
        for (const DTerm& u : p.occurring_terms()) {
            max_d = std::max(max_d, u.ord_delta());
            max_s = std::max(max_s, u.ord_sigma());
        }
    return {std::max(lattice.first, max_d),
            std::max(lattice.second, max_s + pres.max_shift())};
}

}  // namespace dim_detail

// psi = U' + U'' + lambda with full breakdown; the oracle gate (when on)
// compares psi with the elimination trdeg on a grid beyond stability and
// fails loudly on any mismatch.
inline DimensionResult psi(const IdealPresentation& pres,
                           const DimensionOptions& opts = {}) {
    if (!pres.charset.autoreduced_verified || !pres.certificate.ok())
        throw CertificationFailed("psi: presentation is not certified");
    DimensionResult res;
    std::pair<long, long> corner{0, 0};
    res.u_prime =
        dim_detail::u_prime_symbolic(pres.charset, pres.m, pres.n, corner);
    corner = dim_detail::natural_corner(pres, corner);

    const int attempts = opts.grid ? 1 : (opts.widen ? 4 : 1);
    std::optional<dim_detail::FitOutcome> fit;
    std::string last_failure;
    for (int a = 0; a < attempts && !fit; ++a) {
        std::pair<long, long> c{corner.first + 2 * a, corner.second + 2 * a};
        try {
            fit = dim_detail::fit_at_corner(pres, res.u_prime, c, opts.grid);
        } catch (const ValidationMismatch& e) {
            last_failure = e.what();
        }
    }
    if (!fit)
        throw FitUnstable("fit grid never validated within the widening cap: " +
                          last_failure);
    res.u_dprime = fit->u_dprime;
    res.lambda = fit->lambda;
    res.stability = fit->corner;
    res.fit_grid = fit->grid;
    res.psi = res.u_prime + res.u_dprime + res.lambda;

    // single-leader closed form as a cross-check
    if (pres.charset.size() == 1) {
        NumPoly2 closed = dim_detail::u_dprime_single(pres.charset, pres.m);
        if (!(closed == res.u_dprime))
            throw Error("single-leader closed form disagrees with the fit: " +
                        render_binomial(closed) + " vs " +
                        render_binomial(res.u_dprime));
    }

    if (opts.oracle_check) {
        auto gens = pres.generators_of_p();
        GridRect og{res.stability.first, res.stability.first + 4,
                    res.stability.second, res.stability.second + 4};
        for (long r = og.r0; r <= og.r1; ++r)
            for (long s = og.s0; s <= og.s1; ++s) {
                long long t = linear_trdeg(gens, pres.m, pres.n, r, s);
                Int pv = res.psi.eval(r, s);
                if (pv != t)
                    throw OracleMismatch(
                        "psi(" + std::to_string(r) + ", " + std::to_string(s) +
                        ") = " + pv.str() + " but the elimination oracle gives " +
                        std::to_string(t));
            }
        res.oracle_checked = true;
        res.oracle_grid = og;
    }
    return res;
}

// Reflexive-closure polynomial: the same computation with all shifts zero
// (lambda vanishes identically).
inline DimensionResult phi_reflexive_result(
    const AutoreducedSet<QConstants>& charset, int m, int n,
    const DimensionOptions& opts = {}) {
    IdealPresentation pres;
    pres.m = m;
    pres.n = n;
    pres.charset = charset;
    pres.shifts.assign(charset.size(), 0);
    if (!charset.autoreduced_verified || !charset.coherent_verified)
        pres.certificate = check_charset(pres.charset, pres.generators_of_p());
    if (!pres.certificate.ok())
        throw CertificationFailed(pres.certificate.failure);
    pres.charset.autoreduced_verified = true;
    pres.charset.coherent_verified = true;
    return psi(pres, opts);
}

inline NumPoly2 phi_reflexive(const AutoreducedSet<QConstants>& charset, int m,
                              int n) {
    return phi_reflexive_result(charset, m, n).psi;
}

// k = max_j s_j, spot-verified: sigma^k maps sampled elements of the
// reflexive-closure ideal into the presented ideal.
inline long reflexive_gap(const IdealPresentation& pres, int samples = 0,
                          unsigned seed = 20240801u) {
    const long k = pres.max_shift();
    if (samples > 0 && !pres.charset.elements.empty()) {
        auto gens = pres.generators_of_p();
        std::mt19937_64 rng(seed);
        std::uniform_int_distribution<long> coef(-2, 2);
        std::uniform_int_distribution<long> ord(0, 2);
        std::uniform_int_distribution<std::size_t> pick(
            0, pres.charset.elements.size() - 1);
        for (int i = 0; i < samples; ++i) {
            QPoly f(pres.m, pres.n);
            int parts = 1 + static_cast<int>(rng() % 3);
            for (int t = 0; t < parts; ++t) {
                long c = coef(rng);
                if (c == 0) c = 1;
                Operator tau = Operator::identity(pres.m);
                for (int d = 0; d < pres.m; ++d)
                    tau.delta_exps[d] = ord(rng);
                tau.sigma_exp = ord(rng);
                f = f + pres.charset.elements[pick(rng)]
                            .apply_operator(tau)
                            .scaled(Rat(c));
            }
            if (f.is_zero()) continue;
            QPoly shifted = f.apply_operator(Operator::sigma(pres.m, k));
            if (!ideal_member_linear(shifted, gens))
                throw OracleMismatch(
                    "reflexive gap: sigma^k of a sampled ideal element is not "
                    "in the presented ideal (sample " +
                    std::to_string(i) + ")");
        }
    }
    return k;
}

// ---- grid tables and the strength report -----------------------------------

struct CountsRow {
    long r, s;
    long long u_prime, u_dprime, lambda, total;
};

inline std::vector<CountsRow> enumerate_counts(const IdealPresentation& pres,
                                               const GridRect& g) {
    std::vector<CountsRow> out;
    for (long r = g.r0; r <= g.r1; ++r)
        for (long s = g.s0; s <= g.s1; ++s) {
            auto [u1, u2] = count_U(pres.charset, pres.m, pres.n, r, s);
            long long lam = count_lambda(pres, r, s);
            out.push_back({r, s, u1, u2, lam, u1 + u2 + lam});
        }
    return out;
}

inline std::string strength_report(const IdealPresentation& pres,
                                   const DimensionResult& res) {
    std::string out;
    out += "prime linear difference-differential system: m=" +
           std::to_string(pres.m) + " derivation(s), one translation, n=" +
           std::to_string(pres.n) + " unknown(s)\n";
    if (pres.charset.elements.empty()) {
        out += "unconstrained system: S_{r,s} = n C(r+m,m)(s+1)\n";
    } else if (pres.max_shift() == 0) {
        out += "the presented ideal is reflexive (all shifts zero): psi = phi\n";
    }
    out += "charset size p=" + std::to_string(pres.charset.size()) + ", shifts = [";
    for (std::size_t j = 0; j < pres.shifts.size(); ++j)
        out += (j ? " " : "") + std::to_string(pres.shifts[j]);
    out += "], reflexive gap k = " + std::to_string(pres.max_shift()) + "\n";
    out += "psi = " + render_t2_split(res.psi) + "\n";
    out += "  binomial form: " + render_binomial(res.psi) + "\n";
    out += "breakdown: U' = " + render_t2_split(res.u_prime) +
           " | U'' = " + render_t2_split(res.u_dprime) +
           " | lambda = " + render_t2_split(res.lambda) + "\n";
    out += "stability corner: (r0, s0) = (" + std::to_string(res.stability.first) +
           ", " + std::to_string(res.stability.second) + ")\n";
    out += "strength S_{r,s} = psi(r,s): the number of independent values of the\n";
    out += "unknown functions and their partial derivatives of order <= r at nodes\n";
    out += "of sigma-order <= s, for all (r, s) at or beyond the stability corner.\n";
    out += "sample values:\n";
    for (long r = res.stability.first; r <= res.stability.first + 2; ++r) {
        out += " ";
        for (long s = res.stability.second; s <= res.stability.second + 2; ++s)
            out += " S_{" + std::to_string(r) + "," + std::to_string(s) +
                   "} = " + res.psi.eval(r, s).str();
        out += "\n";
    }
    auto [f, g] = res.psi.t2_linear_split();
    std::vector<Rat> fpow(f.size(), Rat(0));
    for (std::size_t i = 0; i < f.size(); ++i) {
        if (f[i] == 0) continue;
        auto bi = NumPoly2::binomial_power_coeffs(static_cast<int>(i));
        for (std::size_t k = 0; k <= i; ++k) fpow[k] += Rat(f[i]) * bi[k];
    }
    Int am = (static_cast<int>(f.size()) - 1 == pres.m) ? f[pres.m] : Int(0);
    out += "sigma-linear part psi^(1)(t1) = " + render_power_uni(fpow, "t1") +
           "; its C(t1+m,m)-coefficient a_m = " + am.str() + "\n";
    out += "(a_m reports the difference-differential transcendence degree of the\n";
    out += "associated extension of the reflexive closure; reported, not certified)\n";
    return out;
}

}  // namespace dsdim
