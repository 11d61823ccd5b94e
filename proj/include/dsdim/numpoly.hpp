#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "dsdim/bigint.hpp"
#include "dsdim/errors.hpp"

namespace dsdim {

// Bivariate numerical polynomial in the binomial basis
//
//     p(t1, t2) = sum_{i=0}^{d1} sum_{j=0}^{d2} a_{ij} C(t1+i, i) C(t2+j, j)
//
// with integer coefficients a_{ij}. The representation is canonical: zero
// fringes are trimmed, so two values are equal iff their matrices are equal,
// and d1/d2 are the true partial degrees.
class NumPoly2 {
public:
    NumPoly2() : coeffs_{{Int(0)}} {}

    explicit NumPoly2(std::vector<std::vector<Int>> coeffs)
        : coeffs_(std::move(coeffs)) {
        if (coeffs_.empty()) coeffs_ = {{Int(0)}};
        std::size_t w = 0;
        for (const auto& row : coeffs_) w = std::max(w, row.size());
        if (w == 0) w = 1;
        for (auto& row : coeffs_) row.resize(w, Int(0));
        trim();
    }

    static NumPoly2 zero() { return NumPoly2(); }

    static NumPoly2 constant(Int c) { return NumPoly2({{std::move(c)}}); }

    // Single basis element a * C(t1+i, i) C(t2+j, j).
    static NumPoly2 basis(int i, int j, Int a = Int(1)) {
        std::vector<std::vector<Int>> m(i + 1, std::vector<Int>(j + 1, Int(0)));
        m[i][j] = std::move(a);
        return NumPoly2(std::move(m));
    }

    int deg1() const { return static_cast<int>(coeffs_.size()) - 1; }
    int deg2() const { return static_cast<int>(coeffs_[0].size()) - 1; }

    bool is_zero() const {
        return coeffs_.size() == 1 && coeffs_[0].size() == 1 && coeffs_[0][0] == 0;
    }

    const std::vector<std::vector<Int>>& coeffs() const { return coeffs_; }

    const Int& coeff(int i, int j) const {
        static const Int kZero(0);
        if (i < 0 || j < 0 || i > deg1() || j > deg2()) return kZero;
        return coeffs_[i][j];
    }

    Int eval(const Int& r, const Int& s) const {
        Int acc = 0;
        for (int i = 0; i <= deg1(); ++i) {
            Int ci = binom(r + i, i);
            for (int j = 0; j <= deg2(); ++j) {
                if (coeffs_[i][j] == 0) continue;
                acc += coeffs_[i][j] * ci * binom(s + j, j);
            }
        }
        return acc;
    }

    Int eval(long r, long s) const { return eval(Int(r), Int(s)); }

    friend NumPoly2 operator+(const NumPoly2& p, const NumPoly2& q) {
        int d1 = std::max(p.deg1(), q.deg1());
        int d2 = std::max(p.deg2(), q.deg2());
        std::vector<std::vector<Int>> m(d1 + 1, std::vector<Int>(d2 + 1, Int(0)));
        for (int i = 0; i <= d1; ++i)
            for (int j = 0; j <= d2; ++j) m[i][j] = p.coeff(i, j) + q.coeff(i, j);
        return NumPoly2(std::move(m));
    }

    friend NumPoly2 operator-(const NumPoly2& p, const NumPoly2& q) {
        return p + q.scaled(Int(-1));
    }

    NumPoly2 scaled(const Int& c) const {
        std::vector<std::vector<Int>> m = coeffs_;
        for (auto& row : m)
            for (auto& x : row) x *= c;
        return NumPoly2(std::move(m));
    }

    friend bool operator==(const NumPoly2& p, const NumPoly2& q) {
        return p.coeffs_ == q.coeffs_;
    }
    friend bool operator!=(const NumPoly2& p, const NumPoly2& q) {
        return !(p == q);
    }

    // For deg2 <= 1 returns (sigma part, constant part): p = f(t1)*t2 + g(t1)
    // with both parts as univariate binomial-basis coefficient vectors.
    std::pair<std::vector<Int>, std::vector<Int>> t2_linear_split() const {
        if (deg2() > 1)
            throw Error("t2_linear_split: polynomial has t2-degree " +
                        std::to_string(deg2()));
        std::vector<Int> f(deg1() + 1, Int(0)), g(deg1() + 1, Int(0));
        for (int i = 0; i <= deg1(); ++i) {
            Int a1 = coeff(i, 1);
            f[i] = a1;                  // C(t2+1,1) = t2 + 1
            g[i] = coeff(i, 0) + a1;
        }
        return {f, g};
    }

    // Exact power-basis coefficients: result[k][l] is the coefficient of
    // t1^k t2^l (rationals in general).
    std::vector<std::vector<Rat>> power_form() const {
        std::vector<std::vector<Rat>> out(
            deg1() + 1, std::vector<Rat>(deg2() + 1, Rat(0)));
        for (int i = 0; i <= deg1(); ++i) {
            auto bi = binomial_power_coeffs(i);
            for (int j = 0; j <= deg2(); ++j) {
                if (coeffs_[i][j] == 0) continue;
                auto bj = binomial_power_coeffs(j);
                for (int k = 0; k <= i; ++k)
                    for (int l = 0; l <= j; ++l)
                        out[k][l] += Rat(coeffs_[i][j]) * bi[k] * bj[l];
            }
        }
        return out;
    }

    // Power coefficients of C(t+i, i) = (t+1)(t+2)...(t+i)/i!.
    static std::vector<Rat> binomial_power_coeffs(int i) {
        std::vector<Rat> c{Rat(1)};
        Int fact = 1;
        for (int u = 1; u <= i; ++u) {
            c.push_back(Rat(0));
            for (int k = static_cast<int>(c.size()) - 1; k >= 1; --k)
                c[k] = c[k - 1] + c[k] * u;
            c[0] *= u;
            fact *= u;
        }
        for (auto& x : c) x /= Rat(fact);
        return c;
    }

private:
    void trim() {
        while (coeffs_.size() > 1 &&
               std::all_of(coeffs_.back().begin(), coeffs_.back().end(),
                           [](const Int& x) { return x == 0; }))
            coeffs_.pop_back();
        std::size_t w = coeffs_[0].size();
        while (w > 1) {
            bool all_zero = true;
            for (const auto& row : coeffs_)
                if (row[w - 1] != 0) {
                    all_zero = false;
                    break;
                }
            if (!all_zero) break;
            --w;
        }
        for (auto& row : coeffs_) row.resize(w);
    }

    std::vector<std::vector<Int>> coeffs_;  // coeffs_[i][j], i = t1 index
};

namespace detail {

// Coefficients b_0..b_d with p(t) = sum_i b_i C(t+i, i), recovered from
// exact evaluations at t = -1, ..., -(d+1). At t = -k-1 every basis element
// with i > k vanishes and C(i-k-1, i) = (-1)^i C(k, i), so the system is
// triangular.
inline std::vector<Rat> binomial_from_evals(
    const std::function<Rat(long)>& p, int d) {
    std::vector<Rat> b(d + 1);
    for (int k = 0; k <= d; ++k) {
        Rat rhs = p(-(k + 1));
        for (int i = 0; i < k; ++i) {
            Int c = binom(Int(k), i);
            rhs -= b[i] * Rat((i % 2 == 0) ? c : -c);
        }
        b[k] = (k % 2 == 0) ? rhs : -rhs;
    }
    return b;
}

// Mixed forward differences n[k][l] = D1^k D2^l v at the lowest corner of a
// (D1+1) x (D2+1) block of exact values.
inline std::vector<std::vector<Rat>> newton_differences(
    const std::vector<std::vector<Rat>>& v) {
    auto n = v;
    const std::size_t rows = n.size(), cols = n[0].size();
    for (std::size_t k = 1; k < rows; ++k)
        for (std::size_t i = rows - 1; i >= k; --i)
            for (std::size_t j = 0; j < cols; ++j) n[i][j] -= n[i - 1][j];
    for (std::size_t l = 1; l < cols; ++l)
        for (std::size_t j = cols - 1; j >= l; --j)
            for (std::size_t i = 0; i < rows; ++i) n[i][j] -= n[i][j - 1];
    return n;
}

// Binomial-basis representation (degree cap d) of the shifted Newton basis
// element C(t - c, k).
inline std::vector<Rat> shifted_newton_in_binomial(long c, int k, int d) {
    return binomial_from_evals(
        [&](long t) { return Rat(binom(Int(t) - c, k)); }, d);
}

// Interpolate the corner block, convert to the binomial basis, and check
// integrality. `block[i][j]` is the value at (r0 + i, s0 + j).
inline NumPoly2 fit_block(const std::vector<std::vector<Rat>>& block, long r0,
                          long s0) {
    const int d1 = static_cast<int>(block.size()) - 1;
    const int d2 = static_cast<int>(block[0].size()) - 1;
    auto n = newton_differences(block);
    std::vector<std::vector<Rat>> acc(d1 + 1, std::vector<Rat>(d2 + 1, Rat(0)));
    for (int k = 0; k <= d1; ++k) {
        auto alpha = shifted_newton_in_binomial(r0, k, d1);
        for (int l = 0; l <= d2; ++l) {
            if (n[k][l] == 0) continue;
            auto beta = shifted_newton_in_binomial(s0, l, d2);
            for (int i = 0; i <= d1; ++i) {
                if (alpha[i] == 0) continue;
                for (int j = 0; j <= d2; ++j)
                    acc[i][j] += n[k][l] * alpha[i] * beta[j];
            }
        }
    }
    std::vector<std::vector<Int>> m(d1 + 1, std::vector<Int>(d2 + 1));
    for (int i = 0; i <= d1; ++i)
        for (int j = 0; j <= d2; ++j) {
            if (!is_integer(acc[i][j]))
                throw NonIntegralFit(
                    "binomial coefficient a_{" + std::to_string(i) + "," +
                    std::to_string(j) + "} = " + acc[i][j].str() +
                    " is not an integer: input is not a numerical polynomial");
            m[i][j] = boost::multiprecision::numerator(acc[i][j]);
        }
    return NumPoly2(std::move(m));
}

}  // namespace detail

using Grid = std::map<std::pair<long, long>, Int>;

// Unique NumPoly2 of partial degrees <= (d1max, d2max) through the lowest
// (d1max+1) x (d2max+1) corner of a rectangular grid of exact values; every
// remaining grid point must validate. Never least-squares.
inline NumPoly2 fit_from_grid(const Grid& values, int d1max, int d2max) {
    if (values.empty()) throw Error("fit_from_grid: empty grid");
    long r0 = values.begin()->first.first, r1 = r0;
    long s0 = values.begin()->first.second, s1 = s0;
    for (const auto& [rs, v] : values) {
        r0 = std::min(r0, rs.first);
        r1 = std::max(r1, rs.first);
        s0 = std::min(s0, rs.second);
        s1 = std::max(s1, rs.second);
    }
    if (static_cast<long long>(values.size()) !=
        static_cast<long long>(r1 - r0 + 1) * (s1 - s0 + 1))
        throw Error("fit_from_grid: grid is not a full rectangle");
    if (r1 - r0 < d1max || s1 - s0 < d2max)
        throw Error("fit_from_grid: grid smaller than the fitting block");
    if ((r1 - r0 + 1) * (s1 - s0 + 1) ==
        (static_cast<long>(d1max) + 1) * (d2max + 1))
        throw Error("fit_from_grid: no validation points beyond the fitting block");

    std::vector<std::vector<Rat>> block(d1max + 1,
                                        std::vector<Rat>(d2max + 1));
    for (int i = 0; i <= d1max; ++i)
        for (int j = 0; j <= d2max; ++j)
            block[i][j] = Rat(values.at({r0 + i, s0 + j}));
    NumPoly2 p = detail::fit_block(block, r0, s0);

    for (const auto& [rs, v] : values) {
        if (p.eval(rs.first, rs.second) != v)
            throw ValidationMismatch(
                "fit disagrees with grid at (" + std::to_string(rs.first) +
                ", " + std::to_string(rs.second) + "): fit " +
                p.eval(rs.first, rs.second).str() + ", grid " + v.str());
    }
    return p;
}

// Basis change from the power basis: power[k][l] is the coefficient of
// t1^k t2^l. Rejects polynomials that are not integer-valued.
inline NumPoly2 monomial_to_binomial(
    const std::vector<std::vector<Rat>>& power) {
    int d1 = static_cast<int>(power.size()) - 1;
    int d2 = 0;
    for (const auto& row : power)
        d2 = std::max(d2, static_cast<int>(row.size()) - 1);
    if (d1 < 0) return NumPoly2::zero();
    auto eval_power = [&](long r, long s) {
        Rat acc(0);
        for (int k = 0; k <= d1; ++k) {
            Rat tp = 1;
            for (int u = 0; u < k; ++u) tp *= r;
            for (int l = 0; l < static_cast<int>(power[k].size()); ++l) {
                Rat sp = 1;
                for (int u = 0; u < l; ++u) sp *= s;
                acc += power[k][l] * tp * sp;
            }
        }
        return acc;
    };
    std::vector<std::vector<Rat>> block(d1 + 1, std::vector<Rat>(d2 + 1));
    for (int i = 0; i <= d1; ++i)
        for (int j = 0; j <= d2; ++j) block[i][j] = eval_power(i, j);
    NumPoly2 p = detail::fit_block(block, 0, 0);
    // The block pins the polynomial; integrality of all further values is
    // then automatic (the binomial coefficients are integers).
    return p;
}

// ---- rendering ----------------------------------------------------------

namespace detail {

inline std::string rat_term(const Rat& c, const std::string& vars,
                            bool leading) {
    Rat a = c < 0 ? Rat(-c) : c;
    std::string sign = leading ? (c < 0 ? "-" : "") : (c < 0 ? " - " : " + ");
    std::string mag;
    if (vars.empty())
        mag = a.str();
    else if (a == 1)
        mag = vars;
    else
        mag = a.str() + " " + vars;
    return sign + mag;
}

}  // namespace detail

// Univariate power-form rendering of sum_k pow[k] var^k, highest degree first.
inline std::string render_power_uni(const std::vector<Rat>& pow,
                                    const std::string& var) {
    std::string out;
    bool leading = true;
    for (int k = static_cast<int>(pow.size()) - 1; k >= 0; --k) {
        if (pow[k] == 0) continue;
        std::string vars;
        if (k == 1)
            vars = var;
        else if (k > 1)
            vars = var + "^" + std::to_string(k);
        out += detail::rat_term(pow[k], vars, leading);
        leading = false;
    }
    return out.empty() ? "0" : out;
}

// Expanded power form, e.g. "2 t1 t2 + t2 + t1^2 + t1 + 1".
inline std::string render_power(const NumPoly2& p) {
    auto pw = p.power_form();
    struct Term {
        int k, l;
        Rat c;
    };
    std::vector<Term> terms;
    for (int k = 0; k < static_cast<int>(pw.size()); ++k)
        for (int l = 0; l < static_cast<int>(pw[k].size()); ++l)
            if (pw[k][l] != 0) terms.push_back({k, l, pw[k][l]});
    std::sort(terms.begin(), terms.end(), [](const Term& a, const Term& b) {
        if (a.k + a.l != b.k + b.l) return a.k + a.l > b.k + b.l;
        return a.k > b.k;
    });
    std::string out;
    bool leading = true;
    for (const auto& t : terms) {
        std::string vars;
        if (t.k == 1)
            vars = "t1";
        else if (t.k > 1)
            vars = "t1^" + std::to_string(t.k);
        if (t.l >= 1) {
            if (!vars.empty()) vars += " ";
            vars += t.l == 1 ? "t2" : "t2^" + std::to_string(t.l);
        }
        out += detail::rat_term(t.c, vars, leading);
        leading = false;
    }
    return out.empty() ? "0" : out;
}

// For t2-linear polynomials: "(2 t1 + 1) t2 + t1^2 + t1 + 1".
inline std::string render_t2_split(const NumPoly2& p) {
    if (p.deg2() > 1) return render_power(p);
    auto [f, g] = p.t2_linear_split();
    auto uni_power = [](const std::vector<Int>& b) {
        std::vector<Rat> pow(b.size(), Rat(0));
        for (int i = 0; i < static_cast<int>(b.size()); ++i) {
            if (b[i] == 0) continue;
            auto bi = NumPoly2::binomial_power_coeffs(i);
            for (int k = 0; k <= i; ++k) pow[k] += Rat(b[i]) * bi[k];
        }
        return pow;
    };
    std::string fs = render_power_uni(uni_power(f), "t1");
    std::string gs = render_power_uni(uni_power(g), "t1");
    if (fs == "0") return gs;
    std::string head;
    if (fs == "1")
        head = "t2";
    else if (fs.find(' ') == std::string::npos && fs.find('-') != 0)
        head = fs + " t2";
    else if (fs.find(' ') == std::string::npos)
        head = "(" + fs + ") t2";
    else
        head = "(" + fs + ") t2";
    if (gs == "0") return head;
    if (!gs.empty() && gs[0] == '-') return head + " - " + gs.substr(1);
    return head + " + " + gs;
}

// Binomial form, e.g. "2 C(t1+2,2) C(t2+1,1) - C(t1+1,1) + 1".
inline std::string render_binomial(const NumPoly2& p) {
    std::string out;
    bool leading = true;
    for (int i = p.deg1(); i >= 0; --i)
        for (int j = p.deg2(); j >= 0; --j) {
            const Int& a = p.coeff(i, j);
            if (a == 0) continue;
            std::string vars;
            if (i > 0)
                vars = "C(t1+" + std::to_string(i) + "," + std::to_string(i) + ")";
            if (j > 0) {
                if (!vars.empty()) vars += " ";
                vars += "C(t2+" + std::to_string(j) + "," + std::to_string(j) + ")";
            }
            out += detail::rat_term(Rat(a), vars, leading);
            leading = false;
        }
    return out.empty() ? "0" : out;
}

// LaTeX mirror of the binomial form.
inline std::string render_latex(const NumPoly2& p) {
    std::string out;
    bool leading = true;
    for (int i = p.deg1(); i >= 0; --i)
        for (int j = p.deg2(); j >= 0; --j) {
            const Int& a = p.coeff(i, j);
            if (a == 0) continue;
            std::string vars;
            if (i > 0)
                vars = "\\binom{t_{1}+" + std::to_string(i) + "}{" +
                       std::to_string(i) + "}";
            if (j > 0)
                vars += "\\binom{t_{2}+" + std::to_string(j) + "}{" +
                        std::to_string(j) + "}";
            Int mag = a < 0 ? Int(-a) : a;
            std::string sign = leading ? (a < 0 ? "-" : "")
                                       : (a < 0 ? " - " : " + ");
            std::string body = (mag == 1 && !vars.empty()) ? vars
                                                           : mag.str() + vars;
            out += sign + body;
            leading = false;
        }
    return out.empty() ? "0" : out;
}

}  // namespace dsdim
