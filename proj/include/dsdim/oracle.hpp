#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <vector>

#include "dsdim/dpoly.hpp"
#include "dsdim/errors.hpp"
#include "dsdim/termalg.hpp"

namespace dsdim {

using QPoly = DPoly<QConstants>;

inline constexpr int kOracleMaxDoublings = 4;

namespace oracle_detail {

struct SparseRow {
    std::vector<std::pair<int, Rat>> entries;  // ascending column index
    std::vector<std::pair<int, Rat>> combo;    // in terms of original rows

    bool empty() const { return entries.empty(); }
    int lead() const { return entries.front().first; }
    const Rat& lead_coeff() const { return entries.front().second; }
};

inline std::vector<std::pair<int, Rat>> axpy(
    const std::vector<std::pair<int, Rat>>& a, const Rat& c,
    const std::vector<std::pair<int, Rat>>& b) {
    std::vector<std::pair<int, Rat>> out;
    out.reserve(a.size() + b.size());
    std::size_t i = 0, j = 0;
    while (i < a.size() || j < b.size()) {
        if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) {
            out.push_back(a[i++]);
        } else if (i == a.size() || b[j].first < a[i].first) {
            out.emplace_back(b[j].first, c * b[j].second);
            ++j;
        } else {
            Rat v = a[i].second + c * b[j].second;
            if (v != 0) out.emplace_back(a[i].first, v);
            ++i;
            ++j;
        }
    }
    return out;
}

}  // namespace oracle_detail

// Exact window system for a linear constant-coefficient ideal: rows are all
// tau(g_j) supported inside the buffered window T(r+wd, s+ws)Y, columns are
// terms with out-of-window columns first (each class descending in
// cmp_sigma). Elimination pivots strictly by column order, so rows whose
// pivot lands in the window span exactly P intersected with the window, up
// to buffer truncation.
class LinearWindowSystem {
public:
    LinearWindowSystem(const std::vector<QPoly>& generators, int m, int n,
                       long r, long s, long wd, long ws, bool track = false)
        : m_(m), n_(n), r_(r), s_(s) {
        std::vector<DTerm> terms = enumerate_terms(m, n, r + wd, s + ws);
        std::sort(terms.begin(), terms.end(),
                  [&](const DTerm& a, const DTerm& b) {
                      bool ia = in_window(a), ib = in_window(b);
                      if (ia != ib) return !ia;  // out-of-window first
                      return cmp_sigma(a, b) > 0;
                  });
        for (int c = 0; c < static_cast<int>(terms.size()); ++c) {
            if (!first_in_ && in_window(terms[c])) first_in_ = c;
            col_of_.emplace(terms[c], c);
        }
        if (!first_in_) first_in_ = static_cast<int>(terms.size());
        columns_ = std::move(terms);

        int orig = 0;
        for (std::size_t j = 0; j < generators.size(); ++j) {
            const QPoly& g = generators[j];
            if (g.is_zero()) continue;
            if (!g.is_linear_homogeneous())
                throw NonLinearInput("oracle: generator is not linear homogeneous");
            std::vector<std::pair<DTerm, Rat>> support;
            long gd = 0, gs = 0;
            for (const auto& [mon, c] : g.terms()) {
                const DTerm& u = mon.factors[0].first;
                support.emplace_back(u, c);
                gd = std::max(gd, u.ord_delta());
                gs = std::max(gs, u.ord_sigma());
            }
            long rd = r + wd - gd, rs = s + ws - gs;
            if (rd < 0 || rs < 0) continue;
            for (const Operator& tau : operator_cone(m, rd, rs)) {
                oracle_detail::SparseRow row;
                for (const auto& [u, c] : support)
                    row.entries.emplace_back(col_of_.at(apply_op(tau, u)), c);
                std::sort(row.entries.begin(), row.entries.end());
                if (track) {
                    row.combo = {{orig, Rat(1)}};
                    origins_.push_back({j, tau});
                }
                insert(std::move(row));
                ++orig;
            }
        }
    }

    long long num_in_window() const {
        return static_cast<long long>(columns_.size()) - *first_in_;
    }

    // dim of the ideal's linear part inside the window: pivots at in-window
    // columns.
    long long dim_in_window() const {
        long long d = 0;
        for (const auto& [col, idx] : pivots_)
            if (col >= *first_in_) ++d;
        return d;
    }

    // Membership of a linear homogeneous polynomial supported in the window.
    bool contains(const QPoly& f) const {
        if (f.is_zero()) return true;
        if (!f.is_linear_homogeneous())
            throw NonLinearInput("oracle: membership query is not linear homogeneous");
        oracle_detail::SparseRow row;
        for (const auto& [mon, c] : f.terms()) {
            auto it = col_of_.find(mon.factors[0].first);
            if (it == col_of_.end())
                throw Error("oracle: query term outside the buffered window");
            row.entries.emplace_back(it->second, c);
        }
        std::sort(row.entries.begin(), row.entries.end());
        return reduce_row(row).empty();
    }

    // Echelon rows (for re-expansion checks in tests).
    const std::vector<oracle_detail::SparseRow>& rows() const { return rows_; }
    const std::vector<std::pair<std::size_t, Operator>>& origins() const {
        return origins_;
    }
    const std::vector<DTerm>& columns() const { return columns_; }

    static std::vector<Operator> operator_cone(int m, long d, long s) {
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

private:
    bool in_window(const DTerm& u) const {
        return u.ord_delta() <= r_ && u.ord_sigma() <= s_;
    }

    oracle_detail::SparseRow reduce_row(oracle_detail::SparseRow row) const {
        while (!row.empty()) {
            auto it = pivots_.find(row.lead());
            if (it == pivots_.end()) break;
            const auto& pivot = rows_[it->second];
            Rat c = -row.lead_coeff();  // pivot rows are monic
            row.entries = oracle_detail::axpy(row.entries, c, pivot.entries);
            if (!row.combo.empty() || !pivot.combo.empty())
                row.combo = oracle_detail::axpy(row.combo, c, pivot.combo);
        }
        return row;
    }

    void insert(oracle_detail::SparseRow row) {
        row = reduce_row(std::move(row));
        if (row.empty()) return;
        Rat inv = 1 / row.lead_coeff();
        for (auto& [c, v] : row.entries) v *= inv;
        for (auto& [c, v] : row.combo) v *= inv;
        pivots_.emplace(row.lead(), rows_.size());
        rows_.push_back(std::move(row));
    }

    int m_, n_;
    long r_, s_;
    std::vector<DTerm> columns_;
    std::map<DTerm, int, SigmaLess> col_of_;
    std::optional<int> first_in_;
    std::vector<oracle_detail::SparseRow> rows_;
    std::map<int, std::size_t> pivots_;
    std::vector<std::pair<std::size_t, Operator>> origins_;
};

namespace oracle_detail {

inline std::pair<long, long> base_buffer(const std::vector<QPoly>& gens) {
    long wd = 1, ws = 1;
    for (const auto& g : gens)
        for (const DTerm& u : g.occurring_terms()) {
            wd = std::max(wd, u.ord_delta());
            ws = std::max(ws, u.ord_sigma());
        }
    return {wd, ws};
}

// Double the buffer until two consecutive buffers agree on the in-window
// dimension.
inline long long stabilized_dim(const std::vector<QPoly>& gens, int m, int n,
                                long r, long s) {
    auto [wd, ws] = base_buffer(gens);
    std::optional<long long> prev;
    for (int k = 0; k <= kOracleMaxDoublings; ++k) {
        long f = 1L << k;
        LinearWindowSystem sys(gens, m, n, r, s, wd * f, ws * f);
        long long dim = sys.dim_in_window();
        if (prev && *prev == dim) return dim;
        prev = dim;
    }
    throw BufferCapExceeded(
        "oracle: window dimension failed to stabilize after " +
        std::to_string(kOracleMaxDoublings) + " buffer doublings");
}

}  // namespace oracle_detail

// trdeg over K of the window quotient field: number of window terms minus
// the stabilized dimension of the ideal's linear part in the window.
inline long long linear_trdeg(const std::vector<QPoly>& generators, int m,
                              int n, long r, long s) {
    if (r < 0 || s < 0) throw Error("linear_trdeg: negative window");
    const long long total =
        static_cast<long long>(binom(r + m, m)) * (s + 1) * n;
    bool all_zero = true;
    for (const auto& g : generators)
        if (!g.is_zero()) all_zero = false;
    if (generators.empty() || all_zero) return total;
    charge_cells(total);
    return total - oracle_detail::stabilized_dim(generators, m, n, r, s);
}

// Membership of f in the linear ideal generated by the given polynomials,
// decided inside the window covering f (buffer-stabilized). Monotone early
// exit: once representable at some buffer, representable at all larger ones.
inline bool ideal_member_linear(const QPoly& f,
                                const std::vector<QPoly>& generators, long r,
                                long s) {
    if (f.is_zero()) return true;
    for (const DTerm& u : f.occurring_terms())
        if (u.ord_delta() > r || u.ord_sigma() > s)
            throw Error("ideal_member_linear: window does not cover the query");
    bool all_zero = true;
    for (const auto& g : generators)
        if (!g.is_zero()) all_zero = false;
    if (generators.empty() || all_zero) return false;
    auto [wd, ws] = oracle_detail::base_buffer(generators);
    std::optional<long long> prev;
    std::optional<bool> prev_member;
    for (int k = 0; k <= kOracleMaxDoublings; ++k) {
        long fct = 1L << k;
        LinearWindowSystem sys(generators, f.m(), f.n(), r, s, wd * fct,
                               ws * fct);
        bool member = sys.contains(f);
        if (member) return true;
        long long dim = sys.dim_in_window();
        if (prev && *prev == dim && prev_member && *prev_member == member)
            return false;
        prev = dim;
        prev_member = member;
    }
    throw BufferCapExceeded("ideal_member_linear: failed to stabilize");
}

// Window of a polynomial's own support.
inline std::pair<long, long> support_window(const QPoly& f) {
    long r = 0, s = 0;
    for (const DTerm& u : f.occurring_terms()) {
        r = std::max(r, u.ord_delta());
        s = std::max(s, u.ord_sigma());
    }
    return {r, s};
}

inline bool ideal_member_linear(const QPoly& f,
                                const std::vector<QPoly>& generators) {
    auto [r, s] = support_window(f);
    return ideal_member_linear(f, generators, r, s);
}

}  // namespace dsdim
