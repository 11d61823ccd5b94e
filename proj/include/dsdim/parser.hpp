#pragma once

#include <cctype>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "dsdim/dpoly.hpp"
#include "dsdim/errors.hpp"
#include "dsdim/lattice.hpp"

namespace dsdim {

using QPoly = DPoly<QConstants>;

namespace detail {

struct Cursor {
    std::string_view text;
    std::size_t pos = 0;
    int line = 1, col = 1;

    bool done() const { return pos >= text.size(); }
    char peek() const { return done() ? '\0' : text[pos]; }

    char advance() {
        char c = text[pos++];
        if (c == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
        return c;
    }

    void skip_ws() {
        while (!done()) {
            char c = peek();
            if (std::isspace(static_cast<unsigned char>(c))) {
                advance();
            } else if (c == '#') {
                while (!done() && peek() != '\n') advance();
            } else {
                break;
            }
        }
    }

    [[noreturn]] void fail(const std::string& expected) const {
        std::string got = done() ? "end of input" : std::string("'") + peek() + "'";
        throw ParseError("expected " + expected + ", got " + got, line, col);
    }

    void expect(char c) {
        skip_ws();
        if (peek() != c) fail(std::string("'") + c + "'");
        advance();
    }

    bool accept(char c) {
        skip_ws();
        if (peek() != c) return false;
        advance();
        return true;
    }

    bool accept_word(std::string_view w) {
        skip_ws();
        if (text.substr(pos, w.size()) != w) return false;
        // keywords must not run into an identifier tail
        std::size_t end = pos + w.size();
        if (end < text.size() &&
            (std::isalnum(static_cast<unsigned char>(text[end])) || text[end] == '_'))
            return false;
        for (std::size_t i = 0; i < w.size(); ++i) advance();
        return true;
    }

    long nat(const std::string& what) {
        skip_ws();
        if (!std::isdigit(static_cast<unsigned char>(peek()))) fail(what);
        long v = 0;
        while (!done() && std::isdigit(static_cast<unsigned char>(peek()))) {
            v = v * 10 + (advance() - '0');
            if (v > kMaxExponent * 1000L)
                throw ParseError("integer literal too large", line, col);
        }
        return v;
    }

    Rat rational() {
        Int num(nat("number"));
        if (accept('/')) {
            Int den(nat("denominator"));
            if (den == 0) throw ParseError("zero denominator", line, col);
            return Rat(num, den);
        }
        return Rat(num);
    }
};

struct PolyParser {
    Cursor& cur;
    int m, n;

    // atom := d<k>[^e] | s[^e] | y<i>; a term is a run of operator atoms
    // closed by a y atom.
    DTerm parse_term() {
        Operator op = Operator::identity(m);
        while (true) {
            cur.skip_ws();
            char c = cur.peek();
            if (c == 'd') {
                cur.advance();
                long k = cur.nat("derivation index");
                if (k < 1 || k > m)
                    throw SemanticError("derivation d" + std::to_string(k) +
                                        " out of range 1.." + std::to_string(m));
                long e = cur.accept('^') ? cur.nat("exponent") : 1;
                op = op * Operator::delta(m, static_cast<int>(k), e);
            } else if (c == 's') {
                cur.advance();
                long e = cur.accept('^') ? cur.nat("exponent") : 1;
                op = op * Operator::sigma(m, e);
            } else if (c == 'y') {
                cur.advance();
                long i = cur.nat("indeterminate index");
                if (i < 1 || i > n)
                    throw SemanticError("indeterminate y" + std::to_string(i) +
                                        " out of range 1.." + std::to_string(n));
                return DTerm{op, static_cast<int>(i)};
            } else {
                cur.fail("term atom (d<k>, s, or y<i>)");
            }
            cur.expect('*');
        }
    }

    // monomial := element ('*' element)* with elements: rational coefficient,
    // bracketed term with optional power, or an unbracketed term.
    std::pair<Monomial, Rat> parse_monomial() {
        Rat coeff(1);
        Monomial mon;
        while (true) {
            cur.skip_ws();
            char c = cur.peek();
            if (std::isdigit(static_cast<unsigned char>(c))) {
                coeff *= cur.rational();
            } else if (c == '(') {
                cur.advance();
                DTerm u = parse_term();
                cur.expect(')');
                long e = cur.accept('^') ? cur.nat("exponent") : 1;
                mon = mon.multiplied_by(u, e);
            } else if (c == 'd' || c == 's' || c == 'y') {
                DTerm u = parse_term();
                long e = cur.accept('^') ? cur.nat("exponent") : 1;
                mon = mon.multiplied_by(u, e);
            } else {
                cur.fail("coefficient, '(', or term atom");
            }
            if (!cur.accept('*')) break;
        }
        return {mon, coeff};
    }

    QPoly parse_poly() {
        QPoly p(m, n);
        bool first = true;
        while (true) {
            cur.skip_ws();
            Rat sign(1);
            if (cur.accept('-'))
                sign = -1;
            else if (cur.accept('+'))
                sign = 1;
            else if (!first)
                break;
            // a leading sign with nothing after is an error handled below
            auto [mon, coeff] = parse_monomial();
            p.add_monomial(mon, sign * coeff);
            first = false;
            cur.skip_ws();
            if (cur.peek() != '+' && cur.peek() != '-') break;
        }
        return p;
    }
};

}  // namespace detail

inline QPoly parse_poly(std::string_view text, int m, int n) {
    detail::Cursor cur{text};
    detail::PolyParser pp{cur, m, n};
    QPoly p = pp.parse_poly();
    cur.skip_ws();
    if (!cur.done()) cur.fail("end of polynomial");
    return p;
}

inline DTerm parse_term(std::string_view text, int m, int n) {
    detail::Cursor cur{text};
    detail::PolyParser pp{cur, m, n};
    DTerm u = pp.parse_term();
    cur.skip_ws();
    if (!cur.done()) cur.fail("end of term");
    return u;
}

// ---- problem files -------------------------------------------------------

struct CharsetEntry {
    QPoly poly;
    long shift = 0;
};

struct ProblemFile {
    int m = -1;
    int n = -1;
    std::vector<CharsetEntry> charset;
    std::vector<QPoly> generators;
    std::optional<PointSet> points;
};

// Statement syntax:
//   ring m=<int> n=<int>;
//   charset: <poly>;   shift=<int>;      (shift binds to the last entry)
//   generator: <poly>;
//   points: (a,b,c) (d,e,f);
inline ProblemFile parse_problem(std::string_view text) {
    detail::Cursor cur{text};
    ProblemFile pf;
    auto require_ring = [&] {
        if (pf.m < 0)
            throw SemanticError("ring m=<int> n=<int>; must come first");
    };
    while (true) {
        cur.skip_ws();
        if (cur.done()) break;
        if (cur.accept_word("ring")) {
            if (pf.m >= 0) throw SemanticError("duplicate ring statement");
            if (!cur.accept_word("m")) cur.fail("'m'");
            cur.expect('=');
            long m = cur.nat("m");
            if (!cur.accept_word("n")) cur.fail("'n'");
            cur.expect('=');
            long n = cur.nat("n");
            Operator::check_m(static_cast<int>(m));
            if (n < 1)
                throw SemanticError("need at least one indeterminate, got n=" +
                                    std::to_string(n));
            pf.m = static_cast<int>(m);
            pf.n = static_cast<int>(n);
            cur.expect(';');
        } else if (cur.accept_word("charset")) {
            require_ring();
            cur.expect(':');
            detail::PolyParser pp{cur, pf.m, pf.n};
            QPoly p = pp.parse_poly();
            if (p.is_constant())
                throw SemanticError("charset element is a constant");
            pf.charset.push_back({std::move(p), 0});
            cur.expect(';');
        } else if (cur.accept_word("shift")) {
            if (pf.charset.empty())
                throw SemanticError("shift= before any charset element");
            cur.expect('=');
            cur.skip_ws();
            if (cur.peek() == '-') throw SemanticError("negative shift");
            pf.charset.back().shift = cur.nat("shift");
            cur.expect(';');
        } else if (cur.accept_word("generator")) {
            require_ring();
            cur.expect(':');
            detail::PolyParser pp{cur, pf.m, pf.n};
            QPoly p = pp.parse_poly();
            if (p.is_constant())
                throw SemanticError("generator is a constant");
            pf.generators.push_back(std::move(p));
            cur.expect(';');
        } else if (cur.accept_word("points")) {
            require_ring();
            cur.expect(':');
            PointSet ps{pf.m, {}};
            while (cur.accept('(')) {
                MultiIndex mi;
                mi.entries.push_back(cur.nat("coordinate"));
                while (cur.accept(',')) mi.entries.push_back(cur.nat("coordinate"));
                cur.expect(')');
                if (static_cast<int>(mi.entries.size()) != pf.m + 1)
                    throw SemanticError(
                        "point has " + std::to_string(mi.entries.size()) +
                        " coordinates, expected m+1 = " + std::to_string(pf.m + 1));
                ps.points.push_back(std::move(mi));
            }
            pf.points = std::move(ps);
            cur.expect(';');
        } else {
            cur.fail("statement (ring, charset, shift, generator, points)");
        }
    }
    if (pf.m < 0) throw SemanticError("missing ring statement");
    return pf;
}

inline std::string render_problem(const ProblemFile& pf) {
    std::string out = "ring m=" + std::to_string(pf.m) +
                      " n=" + std::to_string(pf.n) + ";\n";
    for (const auto& e : pf.charset) {
        out += "charset: " + render_poly(e.poly) + ";";
        out += " shift=" + std::to_string(e.shift) + ";\n";
    }
    for (const auto& g : pf.generators)
        out += "generator: " + render_poly(g) + ";\n";
    if (pf.points) {
        out += "points:";
        for (const auto& p : pf.points->points) {
            out += " (";
            for (std::size_t i = 0; i < p.entries.size(); ++i) {
                if (i) out += ",";
                out += std::to_string(p.entries[i]);
            }
            out += ")";
        }
        out += ";\n";
    }
    return out;
}

}  // namespace dsdim
