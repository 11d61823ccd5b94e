#pragma once

#include <algorithm>
#include <set>
#include <vector>

#include "dsdim/bigint.hpp"
#include "dsdim/errors.hpp"
#include "dsdim/numpoly.hpp"

namespace dsdim {

// Point of N^{m+1}; the first m coordinates are graded by their sum (ord1),
// the last coordinate by itself (ord2).
struct MultiIndex {
    std::vector<long> entries;  // size m+1

    int m() const { return static_cast<int>(entries.size()) - 1; }

    long ord1() const {
        long s = 0;
        for (int i = 0; i + 1 < static_cast<int>(entries.size()); ++i)
            s += entries[i];
        return s;
    }
    long ord2() const { return entries.back(); }

    friend bool operator==(const MultiIndex& a, const MultiIndex& b) {
        return a.entries == b.entries;
    }
    friend auto operator<=>(const MultiIndex& a, const MultiIndex& b) {
        return a.entries <=> b.entries;
    }
};

inline bool leq_product(const MultiIndex& a, const MultiIndex& b) {
    if (a.entries.size() != b.entries.size())
        throw DimensionMismatch("leq_product: points of different dimension");
    for (std::size_t i = 0; i < a.entries.size(); ++i)
        if (a.entries[i] > b.entries[i]) return false;
    return true;
}

struct PointSet {
    int m = 0;
    std::vector<MultiIndex> points;
};

// Product-order-minimal points, deduplicated.
inline PointSet minimal_elements(const PointSet& A) {
    PointSet out{A.m, {}};
    for (const auto& p : A.points) {
        bool dominated = false;
        for (const auto& q : A.points) {
            if (q == p) continue;
            if (leq_product(q, p) && !(leq_product(p, q))) {
                dominated = true;
                break;
            }
        }
        if (!dominated &&
            std::find(out.points.begin(), out.points.end(), p) == out.points.end())
            out.points.push_back(p);
    }
    std::sort(out.points.begin(), out.points.end());
    return out;
}

// Card { v in N^{m+1} : ord1 v <= r, ord2 v <= s, no a in A with a <=_P v },
// by direct enumeration. This is the module's oracle.
inline long long v_count(const PointSet& A, long r, long s) {
    if (r < 0 || s < 0) throw Error("v_count: negative window");
    charge_cells(static_cast<long long>(binom(r + A.m, A.m)) * (s + 1));
    long long count = 0;
    std::vector<long> v(A.m + 1, 0);
    // Recurse over the first m coordinates with sum <= r; the last coordinate
    // ranges over 0..s independently.
    auto rec = [&](auto&& self, int pos, long rest) -> void {
        if (pos == A.m) {
            for (long last = 0; last <= s; ++last) {
                v[A.m] = last;
                bool free = true;
                for (const auto& a : A.points) {
                    bool dom = true;
                    for (int i = 0; i <= A.m; ++i)
                        if (a.entries[i] > v[i]) {
                            dom = false;
                            break;
                        }
                    if (dom) {
                        free = false;
                        break;
                    }
                }
                if (free) ++count;
            }
            return;
        }
        for (long x = 0; x <= rest; ++x) {
            v[pos] = x;
            self(self, pos + 1, rest - x);
        }
    };
    rec(rec, 0, r);
    return count;
}

// Stability corner: beyond (sum_j max_i a_{ij} over the first m coordinates,
// max_i a_{i,m+1}) the closed form and the enumeration agree.
inline std::pair<long, long> stability_threshold(const PointSet& A) {
    long r0 = 0, s0 = 0;
    for (int j = 0; j < A.m; ++j) {
        long mj = 0;
        for (const auto& a : A.points) mj = std::max(mj, a.entries[j]);
        r0 += mj;
    }
    for (const auto& a : A.points) s0 = std::max(s0, a.entries[A.m]);
    return {r0, s0};
}

namespace detail {

// C(t1 + m - b, m) in the binomial basis of t1 (degree cap m).
inline std::vector<Rat> shifted_simplex_in_binomial(int m, long b) {
    return binomial_from_evals(
        [&](long t) { return Rat(binom(Int(t) + m - b, m)); }, m);
}

}  // namespace detail

// Dimension polynomial of A: the alternating sum over subsets gamma of the
// minimal points,
//   omega_A = sum_l (-1)^l sum_{|gamma|=l} C(t1+m-b_gamma, m)(t2+1-abar_{m+1})
// where abar_j is the coordinatewise max over gamma and b_gamma the sum of
// the first m maxes. Exact; partial degrees <= (m, 1).
inline NumPoly2 omega(const PointSet& A) {
    PointSet Amin = minimal_elements(A);
    const int q = static_cast<int>(Amin.points.size());
    const int m = A.m;
    if (q > 20)
        throw Error("omega: inclusion-exclusion over " + std::to_string(q) +
                    " minimal points exceeds the supported 20");
    NumPoly2 acc = NumPoly2::zero();
    for (unsigned long mask = 0; mask < (1UL << q); ++mask) {
        std::vector<long> abar(m + 1, 0);
        int l = 0;
        for (int i = 0; i < q; ++i)
            if (mask & (1UL << i)) {
                ++l;
                for (int j = 0; j <= m; ++j)
                    abar[j] = std::max(abar[j], Amin.points[i].entries[j]);
            }
        long b = 0;
        for (int j = 0; j < m; ++j) b += abar[j];
        auto alpha = detail::shifted_simplex_in_binomial(m, b);
        // t2 + 1 - c = C(t2+1,1) - c in the t2 binomial basis.
        Rat c0 = Rat(-Int(abar[m]));
        std::vector<std::vector<Int>> mtx(m + 1, std::vector<Int>(2, Int(0)));
        for (int i = 0; i <= m; ++i) {
            Rat a0 = alpha[i] * c0;
            Rat a1 = alpha[i];
            if (!is_integer(a0) || !is_integer(a1))
                throw Error("omega: non-integral basis conversion");
            mtx[i][0] = boost::multiprecision::numerator(a0);
            mtx[i][1] = boost::multiprecision::numerator(a1);
        }
        NumPoly2 term{std::move(mtx)};
        acc = (l % 2 == 0) ? acc + term : acc - term;
    }
    return acc;
}

}  // namespace dsdim
