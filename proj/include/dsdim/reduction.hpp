#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "dsdim/dpoly.hpp"
#include "dsdim/errors.hpp"

namespace dsdim {

inline constexpr long kReductionStepCap = 10'000;
inline constexpr int kCompletionRoundCap = 50;

// Is B reduced with respect to A? Clause (i): B contains no term tau*v_A
// with ord_delta(tau) > 0 and ord_delta(tau u_A) <= ord_delta(u_B). Clause
// (ii): any occurrence sigma^i v_A forces ord_delta(u_B) < ord_delta(u_A) or
// deg_{sigma^i v_A} B < deg_{v_A} A.
template <CoeffField F>
bool is_reduced(const DPoly<F>& B, const DPoly<F>& A) {
    if (A.is_constant())
        throw ConstantPolynomial("is_reduced: divisor lies in the field");
    if (B.is_constant()) return true;
    const DTerm vA = A.sigma_leader();
    const long ord_uA = A.delta_leader().ord_delta();
    const long degA = A.degree_in(vA);
    const long ord_uB = B.delta_leader().ord_delta();
    for (const DTerm& w : B.occurring_terms()) {
        auto tau = divides_term(vA, w);
        if (!tau) continue;
        if (tau->ord_delta() > 0) {
            if (tau->ord_delta() + ord_uA <= ord_uB) return false;
        } else {
            if (ord_uB >= ord_uA && B.degree_in(w) >= degA) return false;
        }
    }
    return true;
}

template <CoeffField F>
bool is_reduced(const DPoly<F>& B, const std::vector<DPoly<F>>& S) {
    for (const auto& A : S)
        if (!is_reduced(B, A)) return false;
    return true;
}

// No constants, and every element reduced with respect to any other.
template <CoeffField F>
bool is_autoreduced(const std::vector<DPoly<F>>& S) {
    for (const auto& A : S)
        if (A.is_constant()) return false;
    for (std::size_t i = 0; i < S.size(); ++i)
        for (std::size_t j = 0; j < S.size(); ++j)
            if (i != j && !is_reduced(S[i], S[j])) return false;
    return true;
}

template <CoeffField F = QConstants>
struct AutoreducedSet {
    std::vector<DPoly<F>> elements;  // increasing rank
    bool autoreduced_verified = false;
    bool coherent_verified = false;

    std::size_t size() const { return elements.size(); }
};

// Sort by increasing rank and verify; ties in rank cannot occur in an
// autoreduced set with distinct elements, but sorting is kept stable anyway.
template <CoeffField F>
AutoreducedSet<F> make_autoreduced(std::vector<DPoly<F>> elements) {
    std::stable_sort(elements.begin(), elements.end(),
                     [](const DPoly<F>& a, const DPoly<F>& b) {
                         return rank_cmp(a, b) < 0;
                     });
    AutoreducedSet<F> out{std::move(elements)};
    if (!is_autoreduced(out.elements))
        throw NonAutoreducedInput("the supplied set is not autoreduced");
    out.autoreduced_verified = true;
    return out;
}

// Lexicographic-by-rank comparison of autoreduced sets, with the
// longer-set-is-lower rule when one is a rank-prefix of the other.
template <CoeffField F>
std::strong_ordering set_rank_cmp(const AutoreducedSet<F>& A,
                                  const AutoreducedSet<F>& B) {
    const std::size_t p = A.size(), q = B.size();
    for (std::size_t k = 0; k < std::min(p, q); ++k)
        if (auto c = rank_cmp(A.elements[k], B.elements[k]); c != 0) return c;
    if (p == q) return std::strong_ordering::equal;
    return p > q ? std::strong_ordering::less : std::strong_ordering::greater;
}

// One witnessed combination entry: coeff * op(elements[index]).
template <CoeffField F = QConstants>
struct ReductionStep {
    DPoly<F> coeff;
    Operator op;
    std::size_t index;
};

// H*B = remainder + sum_k coeff_k * op_k(A_{index_k}), with remainder reduced
// with respect to the set and rk remainder <= rk B. The identity is exact and
// re-checkable by expansion.
template <CoeffField F = QConstants>
struct ReductionCertificate {
    DPoly<F> input;
    DPoly<F> remainder;
    DPoly<F> multiplier;
    std::vector<ReductionStep<F>> combination;
};

template <CoeffField F>
bool verify_certificate(const ReductionCertificate<F>& cert,
                        const AutoreducedSet<F>& A) {
    DPoly<F> lhs = cert.multiplier * cert.input;
    DPoly<F> rhs = cert.remainder;
    for (const auto& step : cert.combination)
        rhs = rhs + step.coeff * A.elements.at(step.index).apply_operator(step.op);
    return lhs == rhs;
}

namespace detail {

template <CoeffField F>
struct LeaderData {
    DTerm v;
    long deg;
    long ord_u;
};

template <CoeffField F>
std::vector<LeaderData<F>> leader_data(const std::vector<DPoly<F>>& S) {
    std::vector<LeaderData<F>> out;
    out.reserve(S.size());
    for (const auto& A : S)
        out.push_back({A.sigma_leader(), A.degree_in(A.sigma_leader()),
                       A.delta_leader().ord_delta()});
    return out;
}

struct Violation {
    DTerm w;
    std::size_t index;
    Operator tau;
    bool delta_case;  // clause (i) if true, clause (ii) otherwise
};

// Highest <_sigma violating occurrence; among elements applicable to it, the
// lowest-rank one (elements are sorted by increasing rank).
template <CoeffField F>
std::optional<Violation> find_violation(
    const DPoly<F>& cur, const std::vector<DPoly<F>>& S,
    const std::vector<LeaderData<F>>& L) {
    if (cur.is_constant()) return std::nullopt;
    const long ord_ucur = cur.delta_leader().ord_delta();
    std::vector<DTerm> occ = cur.occurring_terms();
    std::sort(occ.begin(), occ.end(),
              [](const DTerm& a, const DTerm& b) { return cmp_sigma(a, b) > 0; });
    for (const DTerm& w : occ) {
        for (std::size_t j = 0; j < S.size(); ++j) {
            auto tau = divides_term(L[j].v, w);
            if (!tau) continue;
            if (tau->ord_delta() > 0) {
                if (tau->ord_delta() + L[j].ord_u <= ord_ucur)
                    return Violation{w, j, *tau, true};
            } else {
                if (ord_ucur >= L[j].ord_u && cur.degree_in(w) >= L[j].deg)
                    return Violation{w, j, *tau, false};
            }
        }
    }
    return std::nullopt;
}

}  // namespace detail

// Ritt-Kolchin reduction of B modulo an autoreduced set. Deterministic
// policy: repeatedly take the highest violating occurrence, use the unique
// tau with tau*v_A equal to it, and pseudo-divide by tau(A). When the leading
// coefficient of tau(A) in that occurrence is a nonzero field element the
// step divides through instead, so H stays 1 over constants with linear sets.
template <CoeffField F>
ReductionCertificate<F> reduce(const DPoly<F>& B, const AutoreducedSet<F>& A,
                               bool require_autoreduced = true) {
    if (require_autoreduced && !A.autoreduced_verified &&
        !is_autoreduced(A.elements))
        throw NonAutoreducedInput("reduce: set is not autoreduced");
    const auto& S = A.elements;
    auto L = detail::leader_data(S);

    DPoly<F> cur = B;
    DPoly<F> H = DPoly<F>::constant(B.m(), B.n(), F::one());
    std::vector<ReductionStep<F>> steps;
    long iterations = 0;

    while (auto viol = detail::find_violation(cur, S, L)) {
        const auto& [w, j, tau, delta_case] = *viol;
        DPoly<F> C = S[j].apply_operator(tau);
        const long dC = C.degree_in(w);
        // ord_delta(tau) > 0 forces dC == 1; tau = sigma^i preserves the
        // multiplicity, so dC = deg_{v_A} A <= deg_w cur in either clause.
        if (dC <= 0 || cur.degree_in(w) < dC)
            throw Error("reduce: internal, violation without reducible degree");
        DPoly<F> lead = C.decompose_in(w).rbegin()->second;

        while (cur.degree_in(w) >= dC) {
            if (++iterations > kReductionStepCap)
                throw IterationCapExceeded("reduce: step cap exceeded");
            auto partsB = cur.decompose_in(w);
            const long e = partsB.rbegin()->first;
            DPoly<F> Be = partsB.rbegin()->second;
            DPoly<F> wpow = DPoly<F>::constant(B.m(), B.n(), F::one());
            if (e > dC) {
                DPoly<F> wp = DPoly<F>::from_term(B.m(), B.n(), w, F::one());
                for (long k = 0; k < e - dC; ++k) wpow = wpow * wp;
            }
            if (lead.is_constant()) {
                DPoly<F> factor = (Be * wpow).scaled(F::inv(lead.constant_value()));
                cur = cur - factor * C;
                steps.push_back({factor, tau, j});
            } else {
                for (auto& st : steps) st.coeff = st.coeff * lead;
                H = H * lead;
                DPoly<F> factor = Be * wpow;
                cur = lead * cur - factor * C;
                steps.push_back({factor, tau, j});
            }
        }
    }
    return ReductionCertificate<F>{B, cur, H, std::move(steps)};
}

// ---- coherence and characteristic-set certification -----------------------

struct ConeBounds {
    long delta = 0;
    long sigma = 0;
};

template <CoeffField F>
ConeBounds default_cone(const std::vector<DPoly<F>>& S) {
    long max_d = 0, max_s = 0;
    int m = S.empty() ? 0 : S.front().m();
    for (const auto& A : S)
        for (const DTerm& u : A.occurring_terms()) {
            max_d = std::max(max_d, u.ord_delta());
            max_s = std::max(max_s, u.ord_sigma());
        }
    return ConeBounds{2 * max_d + m, 2 * max_s + 1};
}

namespace detail {

template <CoeffField F>
void require_linear_homogeneous(const std::vector<DPoly<F>>& S,
                                const char* who) {
    for (const auto& A : S)
        if (!A.is_linear_homogeneous())
            throw NonLinearInput(std::string(who) +
                                 ": element is not linear homogeneous");
}

// All operators tau with ord_delta <= d, ord_sigma <= s.
inline std::vector<Operator> operator_cone(int m, long d, long s) {
    charge_cells(static_cast<long long>(binom(d + m, m)) * (s + 1));
    std::vector<Operator> out;
    std::vector<long> exps(m, 0);
    auto rec = [&](auto&& self, int pos, long rest) -> void {
        if (pos == m) {
            for (long l = 0; l <= s; ++l) out.push_back(Operator{exps, l});
            return;
        }
        for (long x = 0; x <= rest; ++x) {
            exps[pos] = x;
            self(self, pos + 1, rest - x);
        }
    };
    rec(rec, 0, d);
    return out;
}

}  // namespace detail

// Clause (i): tau*A_i reduces to zero for every tau in the bounded cone.
// Clause (ii): for every pair with comparable sigma-leaders, the cross
// combination through the lcm reduces to zero. Returns the first violation.
template <CoeffField F>
std::optional<std::string> coherence_violation(
    const AutoreducedSet<F>& A, ConeBounds cone = {},
    DPoly<F>* witness_out = nullptr) {
    detail::require_linear_homogeneous(A.elements, "is_coherent");
    if (A.elements.empty()) return std::nullopt;
    const int m = A.elements.front().m();
    if (cone.delta == 0 && cone.sigma == 0) cone = default_cone(A.elements);
    const auto cone_ops = detail::operator_cone(m, cone.delta, cone.sigma);
    for (std::size_t i = 0; i < A.size(); ++i)
        for (const Operator& tau : cone_ops) {
            auto cert = reduce(A.elements[i].apply_operator(tau), A, false);
            if (!cert.remainder.is_zero()) {
                if (witness_out) *witness_out = cert.remainder;
                return "clause (i): " + render_op(tau) + " applied to element " +
                       std::to_string(i) + " leaves remainder " +
                       render_poly(cert.remainder);
            }
        }
    for (std::size_t i = 0; i < A.size(); ++i)
        for (std::size_t j = i + 1; j < A.size(); ++j) {
            const DTerm vi = A.elements[i].sigma_leader();
            const DTerm vj = A.elements[j].sigma_leader();
            auto w = lcm_terms({vi, vj});
            if (!w) continue;  // different indeterminates: clause vacuous
            Operator tp = *divides_term(vi, *w);
            Operator tpp = *divides_term(vj, *w);
            DPoly<F> Ii = A.elements[i].leading_coefficient();
            DPoly<F> Ij = A.elements[j].leading_coefficient();
            DPoly<F> D = Ij.apply_operator(tpp) * A.elements[i].apply_operator(tp) -
                         Ii.apply_operator(tp) * A.elements[j].apply_operator(tpp);
            auto cert = reduce(D, A, false);
            if (!cert.remainder.is_zero()) {
                if (witness_out) *witness_out = cert.remainder;
                return "clause (ii): pair (" + std::to_string(i) + ", " +
                       std::to_string(j) + ") leaves remainder " +
                       render_poly(cert.remainder);
            }
        }
    return std::nullopt;
}

template <CoeffField F>
bool is_coherent(const AutoreducedSet<F>& A, ConeBounds cone = {}) {
    return !coherence_violation(A, cone).has_value();
}

template <CoeffField F = QConstants>
struct CharsetCertificate {
    bool autoreduced = false;
    bool coherent = false;
    bool generators_reduce = false;
    ConeBounds cone{};
    std::string failure;  // empty iff certified

    bool ok() const { return failure.empty(); }
};

// Non-throwing certification: autoreduced + coherent + every generator
// reduces to zero, i.e. the set is a characteristic set of the linear ideal
// it generates and that ideal contains the generators.
template <CoeffField F>
CharsetCertificate<F> check_charset(const AutoreducedSet<F>& A,
                                    const std::vector<DPoly<F>>& generators,
                                    ConeBounds cone = {}) {
    CharsetCertificate<F> cert;
    detail::require_linear_homogeneous(A.elements, "certify_charset");
    if (cone.delta == 0 && cone.sigma == 0) cone = default_cone(A.elements);
    cert.cone = cone;
    if (!is_autoreduced(A.elements)) {
        cert.failure = "set is not autoreduced";
        return cert;
    }
    cert.autoreduced = true;
    if (auto v = coherence_violation(A, cone)) {
        cert.failure = *v;
        return cert;
    }
    cert.coherent = true;
    for (std::size_t g = 0; g < generators.size(); ++g) {
        auto r = reduce(generators[g], A, false);
        if (!r.remainder.is_zero()) {
            cert.failure = "generator " + std::to_string(g) +
                           " does not reduce to zero: remainder " +
                           render_poly(r.remainder);
            return cert;
        }
    }
    cert.generators_reduce = true;
    return cert;
}

template <CoeffField F>
CharsetCertificate<F> certify_charset(AutoreducedSet<F>& A,
                                      const std::vector<DPoly<F>>& generators,
                                      ConeBounds cone = {}) {
    auto cert = check_charset(A, generators, cone);
    if (!cert.ok()) throw CertificationFailed(cert.failure);
    A.autoreduced_verified = true;
    A.coherent_verified = true;
    return cert;
}

// ---- best-effort completion (linear homogeneous only) ---------------------

namespace detail {

// Make the sigma-leader coefficient 1 when the initial is a field element.
template <CoeffField F>
DPoly<F> normalized(const DPoly<F>& p) {
    if (p.is_zero() || p.is_constant()) return p;
    DPoly<F> lc = p.leading_coefficient();
    if (lc.is_constant() && !F::is_zero(lc.constant_value()))
        return p.scaled(F::inv(lc.constant_value()));
    return p;
}

// Ritt autoreduction sweep: reduce every element against the others until
// the set stabilizes. Linear inputs only (termination is the well-order on
// sigma-leaders).
template <CoeffField F>
std::vector<DPoly<F>> autoreduce_loop(std::vector<DPoly<F>> S) {
    for (long round = 0;; ++round) {
        if (round > kReductionStepCap)
            throw IterationCapExceeded("autoreduce: did not stabilize");
        std::erase_if(S, [](const DPoly<F>& p) { return p.is_zero(); });
        for (auto& p : S) p = normalized(p);
        std::stable_sort(S.begin(), S.end(),
                         [](const DPoly<F>& a, const DPoly<F>& b) {
                             return rank_cmp(a, b) < 0;
                         });
        // dedup identical elements
        S.erase(std::unique(S.begin(), S.end(),
                            [](const DPoly<F>& a, const DPoly<F>& b) {
                                return a == b;
                            }),
                S.end());
        bool changed = false;
        for (std::size_t i = 0; i < S.size(); ++i) {
            std::vector<DPoly<F>> others;
            for (std::size_t j = 0; j < S.size(); ++j)
                if (j != i && !S[j].is_constant()) others.push_back(S[j]);
            if (others.empty()) continue;
            AutoreducedSet<F> ctx{others};
            auto cert = reduce(S[i], ctx, false);
            if (!(cert.remainder == S[i])) {
                S[i] = cert.remainder;
                changed = true;
                break;
            }
        }
        if (!changed) return S;
    }
}

}  // namespace detail

// Best-effort completion of a linear homogeneous generator list into a
// coherent autoreduced set: autoreduce, then repeatedly adjoin coherence
// remainders. Bounded; certified on success.
template <CoeffField F>
AutoreducedSet<F> complete_linear(const std::vector<DPoly<F>>& generators,
                                  ConeBounds cone = {}) {
    detail::require_linear_homogeneous(generators, "complete_linear");
    std::vector<DPoly<F>> S;
    for (const auto& g : generators)
        if (!g.is_zero()) S.push_back(g);
    S = detail::autoreduce_loop(std::move(S));
    for (int round = 0; round <= kCompletionRoundCap; ++round) {
        AutoreducedSet<F> A = make_autoreduced(S);
        DPoly<F> witness;
        ConeBounds use = (cone.delta == 0 && cone.sigma == 0)
                             ? default_cone(A.elements)
                             : cone;
        auto v = coherence_violation(A, use, &witness);
        if (!v) {
            A.autoreduced_verified = true;
            A.coherent_verified = true;
            return A;
        }
        S.push_back(witness);
        S = detail::autoreduce_loop(std::move(S));
    }
    throw IterationCapExceeded("complete_linear: completion did not converge");
}

}  // namespace dsdim
