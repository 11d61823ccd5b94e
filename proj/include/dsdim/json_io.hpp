#pragma once

#include <json.hpp>

#include <string>
#include <vector>

#include "dsdim/dimension.hpp"
#include "dsdim/lattice.hpp"
#include "dsdim/numpoly.hpp"
#include "dsdim/parser.hpp"
#include "dsdim/reduction.hpp"

namespace dsdim {

using Json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;

namespace json_detail {

inline long long checked_ll(const Int& x, const char* what) {
    if (x > std::numeric_limits<long long>::max() ||
        x < std::numeric_limits<long long>::min())
        throw Error(std::string(what) + ": coefficient exceeds int64 range");
    return x.convert_to<long long>();
}

inline void reject_unknown_keys(const Json& j,
                                std::initializer_list<const char*> allowed,
                                const char* where) {
    for (const auto& [key, val] : j.items()) {
        bool ok = false;
        for (const char* a : allowed)
            if (key == a) ok = true;
        if (!ok)
            throw SemanticError(std::string("unknown key \"") + key + "\" in " +
                                where);
    }
}

}  // namespace json_detail

inline Json to_json(const NumPoly2& p) {
    Json coeffs = Json::array();
    for (int i = 0; i <= p.deg1(); ++i) {
        Json row = Json::array();
        for (int j = 0; j <= p.deg2(); ++j)
            row.push_back(json_detail::checked_ll(p.coeff(i, j), "NumPoly2"));
        coeffs.push_back(std::move(row));
    }
    return Json{{"d1", p.deg1()}, {"d2", p.deg2()}, {"coeffs", std::move(coeffs)}};
}

inline NumPoly2 numpoly_from_json(const Json& j) {
    json_detail::reject_unknown_keys(j, {"d1", "d2", "coeffs"}, "NumPoly2");
    std::vector<std::vector<Int>> m;
    for (const auto& row : j.at("coeffs")) {
        std::vector<Int> r;
        for (const auto& x : row) r.emplace_back(x.get<long long>());
        m.push_back(std::move(r));
    }
    NumPoly2 p(std::move(m));
    if (p.deg1() != j.at("d1").get<int>() || p.deg2() != j.at("d2").get<int>())
        throw SemanticError("NumPoly2 JSON: declared degrees disagree with coeffs");
    return p;
}

inline Json to_json(const PointSet& ps) {
    Json pts = Json::array();
    for (const auto& p : ps.points) {
        Json row = Json::array();
        for (long e : p.entries) row.push_back(e);
        pts.push_back(std::move(row));
    }
    return Json{{"m", ps.m}, {"points", std::move(pts)}};
}

inline PointSet pointset_from_json(const Json& j) {
    json_detail::reject_unknown_keys(j, {"m", "points"}, "PointSet");
    PointSet ps{j.at("m").get<int>(), {}};
    for (const auto& row : j.at("points")) {
        MultiIndex mi;
        for (const auto& x : row) {
            long v = x.get<long>();
            if (v < 0) throw SemanticError("PointSet JSON: negative coordinate");
            mi.entries.push_back(v);
        }
        if (static_cast<int>(mi.entries.size()) != ps.m + 1)
            throw SemanticError("PointSet JSON: point arity is not m+1");
        ps.points.push_back(std::move(mi));
    }
    return ps;
}

// Problem files may arrive as JSON instead of the DSL. Schema:
// {"schema":1, "ring":{"m":..,"n":..}, "charset":[{"poly":"...","shift":k}],
//  "generators":["..."], "points":{"m":..,"points":[[..]]}}
inline ProblemFile problem_from_json(const std::string& text) {
    Json j = Json::parse(text);
    json_detail::reject_unknown_keys(
        j, {"schema", "ring", "charset", "generators", "points"}, "problem");
    if (j.contains("schema") && j.at("schema").get<int>() != kSchemaVersion)
        throw SemanticError("unsupported schema version");
    ProblemFile pf;
    const Json& ring = j.at("ring");
    json_detail::reject_unknown_keys(ring, {"m", "n"}, "ring");
    pf.m = ring.at("m").get<int>();
    pf.n = ring.at("n").get<int>();
    Operator::check_m(pf.m);
    if (pf.n < 1) throw SemanticError("need at least one indeterminate");
    if (j.contains("charset"))
        for (const auto& e : j.at("charset")) {
            json_detail::reject_unknown_keys(e, {"poly", "shift"}, "charset entry");
            CharsetEntry ce;
            ce.poly = parse_poly(e.at("poly").get<std::string>(), pf.m, pf.n);
            if (ce.poly.is_constant())
                throw SemanticError("charset element is a constant");
            if (e.contains("shift")) {
                ce.shift = e.at("shift").get<long>();
                if (ce.shift < 0) throw SemanticError("negative shift");
            }
            pf.charset.push_back(std::move(ce));
        }
    if (j.contains("generators"))
        for (const auto& g : j.at("generators")) {
            QPoly p = parse_poly(g.get<std::string>(), pf.m, pf.n);
            if (p.is_constant()) throw SemanticError("generator is a constant");
            pf.generators.push_back(std::move(p));
        }
    if (j.contains("points")) pf.points = pointset_from_json(j.at("points"));
    return pf;
}

// Either syntax, detected by the first non-space character.
inline ProblemFile parse_problem_any(const std::string& text) {
    for (char c : text) {
        if (std::isspace(static_cast<unsigned char>(c))) continue;
        if (c == '{') return problem_from_json(text);
        break;
    }
    return parse_problem(text);
}

inline Json to_json(const GridRect& g) {
    return Json{{"r0", g.r0}, {"r1", g.r1}, {"s0", g.s0}, {"s1", g.s1}};
}

inline Json to_json(const DimensionResult& res) {
    Json j;
    j["schema"] = kSchemaVersion;
    j["psi"] = to_json(res.psi);
    j["u_prime"] = to_json(res.u_prime);
    j["u_dprime"] = to_json(res.u_dprime);
    j["lambda"] = to_json(res.lambda);
    j["stability"] = Json{{"r0", res.stability.first}, {"s0", res.stability.second}};
    j["fit_grid"] = to_json(res.fit_grid);
    j["oracle"] = Json{{"checked", res.oracle_checked},
                       {"grid", to_json(res.oracle_grid)}};
    j["text"] = render_t2_split(res.psi);
    j["binomial"] = render_binomial(res.psi);
    j["latex"] = render_latex(res.psi);
    return j;
}

template <CoeffField F>
Json to_json(const ReductionCertificate<F>& cert) {
    Json steps = Json::array();
    for (const auto& st : cert.combination)
        steps.push_back(Json{{"coeff", render_poly(st.coeff)},
                             {"op", render_op(st.op)},
                             {"index", st.index}});
    return Json{{"schema", kSchemaVersion},
                {"input", render_poly(cert.input)},
                {"remainder", render_poly(cert.remainder)},
                {"multiplier", render_poly(cert.multiplier)},
                {"combination", std::move(steps)}};
}

template <CoeffField F>
Json to_json(const CharsetCertificate<F>& cert) {
    return Json{{"autoreduced", cert.autoreduced},
                {"coherent", cert.coherent},
                {"generators_reduce", cert.generators_reduce},
                {"cone", Json{{"delta", cert.cone.delta}, {"sigma", cert.cone.sigma}}},
                {"failure", cert.failure}};
}

inline Json to_json(const std::vector<CountsRow>& rows) {
    Json arr = Json::array();
    for (const auto& row : rows)
        arr.push_back(Json{{"r", row.r},
                           {"s", row.s},
                           {"u_prime", row.u_prime},
                           {"u_dprime", row.u_dprime},
                           {"lambda", row.lambda},
                           {"total", row.total}});
    return arr;
}

inline std::string counts_csv(const std::vector<CountsRow>& rows,
                              const std::vector<long long>* trdeg = nullptr) {
    std::string out = "r,s,u_prime,u_dprime,lambda,total";
    if (trdeg) out += ",trdeg";
    out += "\n";
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const auto& row = rows[i];
        out += std::to_string(row.r) + "," + std::to_string(row.s) + "," +
               std::to_string(row.u_prime) + "," + std::to_string(row.u_dprime) +
               "," + std::to_string(row.lambda) + "," + std::to_string(row.total);
        if (trdeg) out += "," + std::to_string((*trdeg)[i]);
        out += "\n";
    }
    return out;
}

}  // namespace dsdim
