#pragma once

#include <algorithm>
#include <compare>
#include <optional>
#include <string>
#include <vector>

#include "dsdim/bigint.hpp"
#include "dsdim/errors.hpp"

namespace dsdim {

inline constexpr int kMaxDerivations = 8;
inline constexpr long kMaxExponent = 1'000'000;

// Element d1^{k1}...dm^{km} s^{l} of the free commutative semigroup generated
// by the m derivations and the translation.
struct Operator {
    std::vector<long> delta_exps;  // size m
    long sigma_exp = 0;

    static Operator identity(int m) {
        check_m(m);
        return Operator{std::vector<long>(m, 0), 0};
    }
    static Operator delta(int m, int k, long e = 1) {  // k is 1-based
        Operator op = identity(m);
        op.delta_exps.at(k - 1) = e;
        return op;
    }
    static Operator sigma(int m, long e = 1) {
        Operator op = identity(m);
        op.sigma_exp = e;
        return op;
    }

    static void check_m(int m) {
        if (m < 0 || m > kMaxDerivations)
            throw SemanticError("number of derivations must be in 0..8, got " +
                                std::to_string(m));
    }

    int m() const { return static_cast<int>(delta_exps.size()); }

    long ord_delta() const {
        long s = 0;
        for (long k : delta_exps) s += k;
        return s;
    }
    long ord_sigma() const { return sigma_exp; }

    bool is_identity() const { return ord_delta() == 0 && sigma_exp == 0; }

    friend Operator operator*(const Operator& a, const Operator& b) {
        if (a.m() != b.m())
            throw DimensionMismatch("operator product: different m");
        Operator out = a;
        for (int i = 0; i < a.m(); ++i) {
            out.delta_exps[i] += b.delta_exps[i];
            if (out.delta_exps[i] > kMaxExponent)
                throw Error("operator exponent overflow");
        }
        out.sigma_exp += b.sigma_exp;
        if (out.sigma_exp > kMaxExponent) throw Error("operator exponent overflow");
        return out;
    }

    friend bool operator==(const Operator&, const Operator&) = default;
};

// Quotient b / a when a divides b coordinatewise, absent otherwise.
inline std::optional<Operator> divides(const Operator& a, const Operator& b) {
    if (a.m() != b.m()) throw DimensionMismatch("divides: different m");
    Operator q = Operator::identity(a.m());
    for (int i = 0; i < a.m(); ++i) {
        if (a.delta_exps[i] > b.delta_exps[i]) return std::nullopt;
        q.delta_exps[i] = b.delta_exps[i] - a.delta_exps[i];
    }
    if (a.sigma_exp > b.sigma_exp) return std::nullopt;
    q.sigma_exp = b.sigma_exp - a.sigma_exp;
    return q;
}

inline Operator lcm_ops(const std::vector<Operator>& ops) {
    if (ops.empty()) throw Error("lcm_ops: empty list");
    Operator out = ops.front();
    for (const auto& op : ops) {
        if (op.m() != out.m()) throw DimensionMismatch("lcm_ops: different m");
        for (int i = 0; i < out.m(); ++i)
            out.delta_exps[i] = std::max(out.delta_exps[i], op.delta_exps[i]);
        out.sigma_exp = std::max(out.sigma_exp, op.sigma_exp);
    }
    return out;
}

// Term tau * y_idx (idx is 1-based).
struct DTerm {
    Operator op;
    int idx = 1;

    long ord_delta() const { return op.ord_delta(); }
    long ord_sigma() const { return op.ord_sigma(); }

    friend bool operator==(const DTerm&, const DTerm&) = default;
};

// lcm of terms: absent (the zero of the term semigroup) when the
// indeterminates differ.
inline std::optional<DTerm> lcm_terms(const std::vector<DTerm>& terms) {
    if (terms.empty()) throw Error("lcm_terms: empty list");
    std::vector<Operator> ops;
    ops.reserve(terms.size());
    for (const auto& t : terms) {
        if (t.idx != terms.front().idx) return std::nullopt;
        ops.push_back(t.op);
    }
    return DTerm{lcm_ops(ops), terms.front().idx};
}

inline std::optional<Operator> divides_term(const DTerm& u, const DTerm& v) {
    if (u.idx != v.idx) return std::nullopt;
    return divides(u.op, v.op);
}

// The two total orders: cmp_delta compares the tuples
// (ord_delta, ord_sigma, k_1..k_m, idx) lexicographically, cmp_sigma swaps
// the first two components.
inline std::strong_ordering cmp_delta(const DTerm& u, const DTerm& v) {
    if (u.op.m() != v.op.m()) throw DimensionMismatch("cmp_delta: different m");
    if (auto c = u.ord_delta() <=> v.ord_delta(); c != 0) return c;
    if (auto c = u.ord_sigma() <=> v.ord_sigma(); c != 0) return c;
    if (auto c = u.op.delta_exps <=> v.op.delta_exps; c != 0) return c;
    return u.idx <=> v.idx;
}

inline std::strong_ordering cmp_sigma(const DTerm& u, const DTerm& v) {
    if (u.op.m() != v.op.m()) throw DimensionMismatch("cmp_sigma: different m");
    if (auto c = u.ord_sigma() <=> v.ord_sigma(); c != 0) return c;
    if (auto c = u.ord_delta() <=> v.ord_delta(); c != 0) return c;
    if (auto c = u.op.delta_exps <=> v.op.delta_exps; c != 0) return c;
    return u.idx <=> v.idx;
}

struct SigmaLess {
    bool operator()(const DTerm& a, const DTerm& b) const {
        return cmp_sigma(a, b) < 0;
    }
};

inline DTerm apply_op(const Operator& a, const DTerm& u) {
    return DTerm{a * u.op, u.idx};
}

// All terms tau*y_i with ord_delta tau <= r, ord_sigma tau <= s, ascending in
// cmp_sigma; count is n * C(r+m, m) * (s+1).
inline std::vector<DTerm> enumerate_terms(int m, int n, long r, long s) {
    if (r < 0 || s < 0) throw Error("enumerate_terms: negative window");
    Operator::check_m(m);
    charge_cells(static_cast<long long>(binom(r + m, m)) * (s + 1) * n);
    std::vector<DTerm> out;
    std::vector<long> exps(m, 0);
    auto rec = [&](auto&& self, int pos, long rest) -> void {
        if (pos == m) {
            for (long l = 0; l <= s; ++l)
                for (int i = 1; i <= n; ++i)
                    out.push_back(DTerm{Operator{exps, l}, i});
            return;
        }
        for (long x = 0; x <= rest; ++x) {
            exps[pos] = x;
            self(self, pos + 1, rest - x);
        }
    };
    rec(rec, 0, r);
    std::sort(out.begin(), out.end(), SigmaLess{});
    return out;
}

// ---- text syntax: d1^2*d2*s^3*y1 ----------------------------------------

inline std::string render_op(const Operator& op) {
    std::string out;
    for (int i = 0; i < op.m(); ++i) {
        if (op.delta_exps[i] == 0) continue;
        if (!out.empty()) out += "*";
        out += "d" + std::to_string(i + 1);
        if (op.delta_exps[i] > 1) out += "^" + std::to_string(op.delta_exps[i]);
    }
    if (op.sigma_exp > 0) {
        if (!out.empty()) out += "*";
        out += "s";
        if (op.sigma_exp > 1) out += "^" + std::to_string(op.sigma_exp);
    }
    return out;  // identity renders as the empty prefix
}

inline std::string render_term(const DTerm& u) {
    std::string prefix = render_op(u.op);
    std::string y = "y" + std::to_string(u.idx);
    return prefix.empty() ? y : prefix + "*" + y;
}

}  // namespace dsdim
