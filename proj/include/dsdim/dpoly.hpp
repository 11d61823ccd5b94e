#pragma once

#include <compare>
#include <concepts>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "dsdim/bigint.hpp"
#include "dsdim/errors.hpp"
#include "dsdim/termalg.hpp"

namespace dsdim {

// Computable coefficient field with commuting actions of the derivations and
// the translation. delta must satisfy the Leibniz rule, sigma must be a ring
// endomorphism with sigma(1) = 1; the laws are spot-checked in tests.
template <class F>
concept CoeffField = requires(const typename F::value_type& a,
                              const typename F::value_type& b, std::size_t i) {
    { F::zero() } -> std::convertible_to<typename F::value_type>;
    { F::one() } -> std::convertible_to<typename F::value_type>;
    { F::add(a, b) } -> std::convertible_to<typename F::value_type>;
    { F::sub(a, b) } -> std::convertible_to<typename F::value_type>;
    { F::mul(a, b) } -> std::convertible_to<typename F::value_type>;
    { F::neg(a) } -> std::convertible_to<typename F::value_type>;
    { F::inv(a) } -> std::convertible_to<typename F::value_type>;
    { F::is_zero(a) } -> std::convertible_to<bool>;
    { F::eq(a, b) } -> std::convertible_to<bool>;
    { F::delta(i, a) } -> std::convertible_to<typename F::value_type>;
    { F::sigma(a) } -> std::convertible_to<typename F::value_type>;
    { F::to_string(a) } -> std::convertible_to<std::string>;
};

// Exact rationals with every derivation acting as zero and the translation
// as the identity: the constants model used by all acceptance paths.
struct QConstants {
    using value_type = Rat;
    static Rat zero() { return Rat(0); }
    static Rat one() { return Rat(1); }
    static Rat add(const Rat& a, const Rat& b) { return a + b; }
    static Rat sub(const Rat& a, const Rat& b) { return a - b; }
    static Rat mul(const Rat& a, const Rat& b) { return a * b; }
    static Rat neg(const Rat& a) { return -a; }
    static Rat inv(const Rat& a) {
        if (a == 0) throw Error("division by zero in coefficient field");
        return 1 / a;
    }
    static bool is_zero(const Rat& a) { return a == 0; }
    static bool eq(const Rat& a, const Rat& b) { return a == b; }
    static Rat delta(std::size_t, const Rat&) { return Rat(0); }
    static Rat sigma(const Rat& a) { return a; }
    static std::string to_string(const Rat& a) { return a.str(); }
};

static_assert(CoeffField<QConstants>);

// Commutative multiset of terms; the empty multiset is the monomial of the
// constant term. Factors are kept sorted ascending under cmp_sigma.
struct Monomial {
    std::vector<std::pair<DTerm, long>> factors;

    bool is_constant() const { return factors.empty(); }

    long total_degree() const {
        long d = 0;
        for (const auto& [u, e] : factors) d += e;
        return d;
    }

    long degree_in(const DTerm& u) const {
        for (const auto& [t, e] : factors)
            if (t == u) return e;
        return 0;
    }

    Monomial multiplied_by(const DTerm& u, long e = 1) const {
        Monomial out = *this;
        for (auto& [t, k] : out.factors)
            if (t == u) {
                k += e;
                return out;
            }
        out.factors.emplace_back(u, e);
        std::sort(out.factors.begin(), out.factors.end(),
                  [](const auto& a, const auto& b) {
                      return cmp_sigma(a.first, b.first) < 0;
                  });
        return out;
    }

    // Divide by u^e; caller guarantees divisibility.
    Monomial divided_by(const DTerm& u, long e = 1) const {
        Monomial out;
        for (const auto& [t, k] : factors) {
            if (t == u) {
                if (k < e) throw Error("monomial division underflow");
                if (k > e) out.factors.emplace_back(t, k - e);
            } else {
                out.factors.emplace_back(t, k);
            }
        }
        return out;
    }

    Monomial times(const Monomial& other) const {
        Monomial out = *this;
        for (const auto& [u, e] : other.factors) out = out.multiplied_by(u, e);
        return out;
    }

    friend bool operator==(const Monomial&, const Monomial&) = default;
};

// Total order on monomials: compare the highest factors first, so that map
// iteration from rbegin() visits the leading monomial first.
struct MonomialLess {
    bool operator()(const Monomial& a, const Monomial& b) const {
        auto ia = a.factors.rbegin(), ib = b.factors.rbegin();
        for (; ia != a.factors.rend() && ib != b.factors.rend(); ++ia, ++ib) {
            if (auto c = cmp_sigma(ia->first, ib->first); c != 0) return c < 0;
            if (ia->second != ib->second) return ia->second < ib->second;
        }
        return ia == a.factors.rend() && ib != b.factors.rend();
    }
};

// Rank of a polynomial per the (v_A, deg_{v_A} A, ord_delta u_A) vector;
// constants rank below every non-constant and mutually equal.
struct RankVector {
    bool is_constant = true;
    DTerm sigma_leader{};
    long leader_degree = 0;
    long delta_order_of_delta_leader = 0;
};

// Sparse difference-differential polynomial over F.
template <CoeffField F = QConstants>
class DPoly {
public:
    using Coeff = typename F::value_type;
    using TermMap = std::map<Monomial, Coeff, MonomialLess>;

    DPoly() : m_(0), n_(1) {}
    DPoly(int m, int n) : m_(m), n_(n) { Operator::check_m(m); }

    static DPoly zero(int m, int n) { return DPoly(m, n); }

    static DPoly constant(int m, int n, Coeff c) {
        DPoly p(m, n);
        if (!F::is_zero(c)) p.terms_.emplace(Monomial{}, std::move(c));
        return p;
    }

    static DPoly from_term(int m, int n, const DTerm& u, Coeff c) {
        DPoly p(m, n);
        if (u.op.m() != m) throw DimensionMismatch("from_term: operator m mismatch");
        if (u.idx < 1 || u.idx > n)
            throw SemanticError("indeterminate index y" + std::to_string(u.idx) +
                                " out of range 1.." + std::to_string(n));
        if (!F::is_zero(c)) p.terms_.emplace(Monomial{}.multiplied_by(u), std::move(c));
        return p;
    }

    int m() const { return m_; }
    int n() const { return n_; }
    const TermMap& terms() const { return terms_; }

    bool is_zero() const { return terms_.empty(); }

    bool is_constant() const {
        return terms_.empty() ||
               (terms_.size() == 1 && terms_.begin()->first.is_constant());
    }

    Coeff constant_value() const {
        if (terms_.empty()) return F::zero();
        if (is_constant()) return terms_.begin()->second;
        throw Error("constant_value on a non-constant polynomial");
    }

    // Linear homogeneous: every monomial is a single term to the first power.
    bool is_linear_homogeneous() const {
        for (const auto& [mon, c] : terms_)
            if (mon.factors.size() != 1 || mon.factors[0].second != 1)
                return false;
        return true;
    }

    void add_monomial(const Monomial& mon, const Coeff& c) {
        if (F::is_zero(c)) return;
        auto it = terms_.find(mon);
        if (it == terms_.end()) {
            terms_.emplace(mon, c);
        } else {
            it->second = F::add(it->second, c);
            if (F::is_zero(it->second)) terms_.erase(it);
        }
    }

    friend DPoly operator+(const DPoly& a, const DPoly& b) {
        a.check_shape(b);
        DPoly out = a;
        for (const auto& [mon, c] : b.terms_) out.add_monomial(mon, c);
        return out;
    }

    friend DPoly operator-(const DPoly& a, const DPoly& b) {
        a.check_shape(b);
        DPoly out = a;
        for (const auto& [mon, c] : b.terms_) out.add_monomial(mon, F::neg(c));
        return out;
    }

    friend DPoly operator*(const DPoly& a, const DPoly& b) {
        a.check_shape(b);
        DPoly out(a.m_, a.n_);
        for (const auto& [ma, ca] : a.terms_)
            for (const auto& [mb, cb] : b.terms_)
                out.add_monomial(ma.times(mb), F::mul(ca, cb));
        return out;
    }

    DPoly scaled(const Coeff& c) const {
        DPoly out(m_, n_);
        if (F::is_zero(c)) return out;
        for (const auto& [mon, v] : terms_) out.add_monomial(mon, F::mul(v, c));
        return out;
    }

    DPoly negated() const { return scaled(F::neg(F::one())); }

    friend bool operator==(const DPoly& a, const DPoly& b) {
        if (a.m_ != b.m_ || a.n_ != b.n_ || a.terms_.size() != b.terms_.size())
            return false;
        auto ia = a.terms_.begin();
        auto ib = b.terms_.begin();
        for (; ia != a.terms_.end(); ++ia, ++ib)
            if (!(ia->first == ib->first) || !F::eq(ia->second, ib->second))
                return false;
        return true;
    }

    // All distinct terms occurring in some monomial.
    std::vector<DTerm> occurring_terms() const {
        std::vector<DTerm> out;
        for (const auto& [mon, c] : terms_)
            for (const auto& [u, e] : mon.factors)
                if (std::find(out.begin(), out.end(), u) == out.end())
                    out.push_back(u);
        return out;
    }

    bool contains_term(const DTerm& u) const {
        for (const auto& [mon, c] : terms_)
            if (mon.degree_in(u) > 0) return true;
        return false;
    }

    long degree_in(const DTerm& u) const {
        long d = 0;
        for (const auto& [mon, c] : terms_) d = std::max(d, mon.degree_in(u));
        return d;
    }

    // ---- operator action -------------------------------------------------

    DPoly apply_sigma() const {
        DPoly out(m_, n_);
        for (const auto& [mon, c] : terms_) {
            Monomial m2;
            for (const auto& [u, e] : mon.factors)
                m2 = m2.multiplied_by(apply_op(Operator::sigma(m_), u), e);
            out.add_monomial(m2, F::sigma(c));
        }
        return out;
    }

    DPoly apply_delta(int i) const {  // i is 1-based
        DPoly out(m_, n_);
        Operator di = Operator::delta(m_, i);
        for (const auto& [mon, c] : terms_) {
            Coeff dc = F::delta(static_cast<std::size_t>(i - 1), c);
            if (!F::is_zero(dc)) out.add_monomial(mon, dc);
            // Leibniz: d(u^e * rest) contributes e * u^{e-1} d(u) * rest.
            for (const auto& [u, e] : mon.factors) {
                Monomial m2 =
                    mon.divided_by(u, 1).multiplied_by(apply_op(di, u), 1);
                Coeff mult = F::zero();
                for (long k = 0; k < e; ++k) mult = F::add(mult, F::one());
                out.add_monomial(m2, F::mul(c, mult));
            }
        }
        return out;
    }

    DPoly apply_operator(const Operator& a) const {
        if (a.m() != m_) throw DimensionMismatch("apply_operator: m mismatch");
        DPoly out = *this;
        for (long l = 0; l < a.sigma_exp; ++l) out = out.apply_sigma();
        for (int i = 0; i < m_; ++i)
            for (long k = 0; k < a.delta_exps[i]; ++k)
                out = out.apply_delta(i + 1);
        return out;
    }

    // ---- leaders, initial, separant, rank ---------------------------------

    DTerm delta_leader() const { return leader(cmp_delta); }
    DTerm sigma_leader() const { return leader(cmp_sigma); }

    // View the polynomial as univariate in w: degree -> coefficient (the
    // coefficients do not contain w).
    std::map<long, DPoly> decompose_in(const DTerm& w) const {
        std::map<long, DPoly> out;
        for (const auto& [mon, c] : terms_) {
            long d = mon.degree_in(w);
            auto it = out.find(d);
            if (it == out.end()) {
                DPoly p(m_, n_);
                p.add_monomial(d > 0 ? mon.divided_by(w, d) : mon, c);
                out.emplace(d, std::move(p));
            } else {
                it->second.add_monomial(d > 0 ? mon.divided_by(w, d) : mon, c);
            }
        }
        return out;
    }

    DPoly leading_coefficient() const {
        DTerm v = sigma_leader();
        auto parts = decompose_in(v);
        return parts.rbegin()->second;
    }

    DPoly separant() const {
        DTerm v = sigma_leader();
        auto parts = decompose_in(v);
        DPoly out(m_, n_);
        for (const auto& [d, coeff] : parts) {
            if (d == 0) continue;
            Coeff dmul = F::zero();
            for (long k = 0; k < d; ++k) dmul = F::add(dmul, F::one());
            DPoly piece = coeff.scaled(dmul);
            if (d > 1) {
                DPoly vp = from_term(m_, n_, v, F::one());
                for (long k = 1; k < d; ++k) piece = piece * vp;
            }
            out = out + piece;
        }
        return out;
    }

    RankVector rank() const {
        if (is_constant()) return RankVector{};
        DTerm v = sigma_leader();
        return RankVector{false, v, degree_in(v), delta_leader().ord_delta()};
    }

private:
    template <class Cmp>
    DTerm leader(Cmp&& cmp) const {
        bool found = false;
        DTerm best{};
        for (const auto& [mon, c] : terms_)
            for (const auto& [u, e] : mon.factors)
                if (!found || cmp(best, u) < 0) {
                    best = u;
                    found = true;
                }
        if (!found)
            throw ConstantPolynomial("leader of a polynomial in the field");
        return best;
    }

    void check_shape(const DPoly& other) const {
        if (m_ != other.m_ || n_ != other.n_)
            throw DimensionMismatch("polynomials over different rings");
    }

    int m_, n_;
    TermMap terms_;
};

inline std::strong_ordering rank_cmp(const RankVector& a, const RankVector& b) {
    if (a.is_constant && b.is_constant) return std::strong_ordering::equal;
    if (a.is_constant) return std::strong_ordering::less;
    if (b.is_constant) return std::strong_ordering::greater;
    if (auto c = cmp_sigma(a.sigma_leader, b.sigma_leader); c != 0) return c;
    if (auto c = a.leader_degree <=> b.leader_degree; c != 0) return c;
    return a.delta_order_of_delta_leader <=> b.delta_order_of_delta_leader;
}

template <CoeffField F>
std::strong_ordering rank_cmp(const DPoly<F>& a, const DPoly<F>& b) {
    return rank_cmp(a.rank(), b.rank());
}

// ---- DSL rendering -------------------------------------------------------

template <CoeffField F>
std::string render_poly(const DPoly<F>& p) {
    if (p.is_zero()) return "0";
    std::string out;
    bool leading = true;
    for (auto it = p.terms().rbegin(); it != p.terms().rend(); ++it) {
        const auto& [mon, c] = *it;
        std::string cs = F::to_string(c);
        bool neg = !cs.empty() && cs[0] == '-';
        std::string mag = neg ? cs.substr(1) : cs;
        std::string body;
        if (mon.is_constant()) {
            body = mag;
        } else {
            std::string ms;
            if (mon.factors.size() == 1 && mon.factors[0].second == 1) {
                ms = render_term(mon.factors[0].first);
            } else {
                for (auto f = mon.factors.rbegin(); f != mon.factors.rend(); ++f) {
                    if (!ms.empty()) ms += "*";
                    ms += "(" + render_term(f->first) + ")";
                    if (f->second > 1) ms += "^" + std::to_string(f->second);
                }
            }
            body = (mag == "1") ? ms : mag + "*" + ms;
        }
        if (leading)
            out += (neg ? "-" : "") + body;
        else
            out += (neg ? " - " : " + ") + body;
        leading = false;
    }
    return out;
}

}  // namespace dsdim
