// dsdim: exact bivariate dimension polynomials of linear
// difference-differential ideals (several derivations, one translation).

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "dsdim/dsdim.hpp"

namespace {

using namespace dsdim;

struct Options {
    std::string file;
    std::string out;
    std::string format = "json";
    bool check = false;
    bool no_fit_widen = false;
    std::string grid;
    std::string poly;  // reduce only
};

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw SemanticError("cannot open input file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void emit(const Options& opt, const std::string& text) {
    if (opt.out.empty()) {
        std::cout << text;
        if (!text.empty() && text.back() != '\n') std::cout << "\n";
    } else {
        std::ofstream out(opt.out, std::ios::binary);
        if (!out) throw SemanticError("cannot open output file: " + opt.out);
        out << text;
        if (!text.empty() && text.back() != '\n') out << "\n";
    }
}

GridRect parse_grid(const std::string& spec) {
    GridRect g;
    if (std::sscanf(spec.c_str(), "%ld:%ld,%ld:%ld", &g.r0, &g.r1, &g.s0,
                    &g.s1) != 4 ||
        g.r1 < g.r0 || g.s1 < g.s0 || g.r0 < 0 || g.s0 < 0)
        throw SemanticError("bad --grid, expected r0:r1,s0:s1");
    return g;
}

IdealPresentation presentation_from_file(const ProblemFile& pf) {
    if (!pf.charset.empty()) return make_presentation(pf.m, pf.n, pf.charset);
    if (!pf.generators.empty())
        return presentation_from_generators(pf.m, pf.n, pf.generators);
    return make_presentation(pf.m, pf.n, {});
}

DimensionOptions dimension_options(const Options& opt) {
    DimensionOptions d;
    d.widen = !opt.no_fit_widen;
    d.oracle_check = opt.check;
    if (!opt.grid.empty()) d.grid = parse_grid(opt.grid);
    return d;
}

int run_omega(const Options& opt) {
    ProblemFile pf = parse_problem_any(slurp(opt.file));
    if (!pf.points) throw SemanticError("omega needs a points: statement");
    NumPoly2 w = omega(*pf.points);
    auto [r0, s0] = stability_threshold(*pf.points);
    if (opt.format == "text") {
        emit(opt, render_power(w) + "\nbinomial: " + render_binomial(w) +
                      "\nstability corner: (" + std::to_string(r0) + ", " +
                      std::to_string(s0) + ")");
    } else if (opt.format == "latex") {
        emit(opt, render_latex(w));
    } else {
        Json j;
        j["schema"] = kSchemaVersion;
        j["omega"] = to_json(w);
        j["text"] = render_power(w);
        j["binomial"] = render_binomial(w);
        j["latex"] = render_latex(w);
        j["stability"] = Json{{"r0", r0}, {"s0", s0}};
        emit(opt, j.dump(2));
    }
    return 0;
}

int run_dimension(const Options& opt, bool reflexive_only, bool strength) {
    ProblemFile pf = parse_problem_any(slurp(opt.file));
    IdealPresentation pres = presentation_from_file(pf);
    if (reflexive_only)
        for (auto& s : pres.shifts) s = 0;
    DimensionResult res = psi(pres, dimension_options(opt));
    if (strength) {
        std::string report = strength_report(pres, res);
        if (opt.format == "json") {
            Json j = to_json(res);
            j["gap"] = pres.max_shift();
            j["report"] = report;
            emit(opt, j.dump(2));
        } else {
            emit(opt, report);
        }
        return 0;
    }
    if (opt.format == "text") {
        std::string head = render_t2_split(res.psi);
        head += "\nbinomial: " + render_binomial(res.psi);
        head += "\nbreakdown: U' = " + render_t2_split(res.u_prime) +
                " | U'' = " + render_t2_split(res.u_dprime) +
                " | lambda = " + render_t2_split(res.lambda);
        head += "\nstability corner: (" + std::to_string(res.stability.first) +
                ", " + std::to_string(res.stability.second) + ")";
        if (res.oracle_checked) head += "\noracle: agreed on the validation grid";
        emit(opt, head);
    } else if (opt.format == "latex") {
        emit(opt, render_latex(res.psi));
    } else {
        emit(opt, to_json(res).dump(2));
    }
    return 0;
}

int run_gap(const Options& opt) {
    ProblemFile pf = parse_problem_any(slurp(opt.file));
    IdealPresentation pres = presentation_from_file(pf);
    long k = reflexive_gap(pres, opt.check ? 50 : 0);
    if (opt.format == "json") {
        Json j{{"schema", kSchemaVersion}, {"k", k}, {"checked", opt.check}};
        emit(opt, j.dump(2));
    } else {
        emit(opt, "k = " + std::to_string(k));
    }
    return 0;
}

int run_reduce(const Options& opt) {
    ProblemFile pf = parse_problem_any(slurp(opt.file));
    std::vector<QPoly> polys;
    for (const auto& e : pf.charset) polys.push_back(e.poly);
    AutoreducedSet<QConstants> A = make_autoreduced(std::move(polys));
    std::vector<QPoly> inputs = pf.generators;
    if (!opt.poly.empty()) inputs.push_back(parse_poly(opt.poly, pf.m, pf.n));
    if (inputs.empty())
        throw SemanticError("reduce needs --poly or generator: statements");
    Json results = Json::array();
    std::string text;
    for (const auto& B : inputs) {
        auto cert = reduce(B, A);
        if (!verify_certificate(cert, A))
            throw Error("reduction certificate failed re-expansion");
        results.push_back(to_json(cert));
        text += render_poly(cert.remainder) + "\n";
    }
    if (opt.format == "json") {
        Json j{{"schema", kSchemaVersion}, {"certificates", std::move(results)}};
        emit(opt, j.dump(2));
    } else {
        emit(opt, text);
    }
    return 0;
}

int run_oracle(const Options& opt) {
    ProblemFile pf = parse_problem_any(slurp(opt.file));
    IdealPresentation pres = presentation_from_file(pf);
    GridRect g;
    if (!opt.grid.empty()) {
        g = parse_grid(opt.grid);
    } else {
        std::pair<long, long> corner{0, 0};
        NumPoly2 up =
            dim_detail::u_prime_symbolic(pres.charset, pres.m, pres.n, corner);
        (void)up;
        corner = dim_detail::natural_corner(pres, corner);
        g = GridRect{corner.first, corner.first + 4, corner.second,
                     corner.second + 4};
    }
    auto rows = enumerate_counts(pres, g);
    auto gens = pres.generators_of_p();
    std::vector<long long> trdeg;
    for (const auto& row : rows)
        trdeg.push_back(linear_trdeg(gens, pres.m, pres.n, row.r, row.s));
    if (opt.format == "json") {
        Json j;
        j["schema"] = kSchemaVersion;
        j["grid"] = to_json(g);
        j["counts"] = to_json(rows);
        Json t = Json::array();
        for (long long v : trdeg) t.push_back(v);
        j["trdeg"] = std::move(t);
        emit(opt, j.dump(2));
    } else {
        emit(opt, counts_csv(rows, &trdeg));
    }
    return 0;
}

void add_common(CLI::App* cmd, Options& opt, bool with_poly = false) {
    cmd->add_option("file", opt.file, "problem file (DSL or JSON)")->required();
    cmd->add_option("--out", opt.out, "write output to a file instead of stdout");
    cmd->add_option("--format", opt.format, "output format")
        ->check(CLI::IsMember({"json", "text", "latex"}));
    cmd->add_flag("--check", opt.check, "run the elimination-oracle gate");
    cmd->add_option("--grid", opt.grid, "grid override r0:r1,s0:s1");
    cmd->add_flag("--no-fit-widen", opt.no_fit_widen,
                  "fail instead of widening an unstable fit grid");
    if (with_poly)
        cmd->add_option("--poly", opt.poly, "polynomial to reduce (DSL)");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "exact bivariate dimension polynomials of linear "
        "difference-differential ideals"};
    app.require_subcommand(1);

    Options o_omega, o_phi, o_psi, o_gap, o_strength, o_reduce, o_oracle;
    add_common(app.add_subcommand("omega", "dimension polynomial of a subset of N^{m+1}"), o_omega);
    add_common(app.add_subcommand("phi", "dimension polynomial of the reflexive closure"), o_phi);
    add_common(app.add_subcommand("psi", "dimension polynomial of the presented ideal"), o_psi);
    add_common(app.add_subcommand("gap", "reflexive gap k"), o_gap);
    add_common(app.add_subcommand("strength", "Einstein strength report"), o_strength);
    add_common(app.add_subcommand("reduce", "reduction with multiplier certificate"), o_reduce, true);
    add_common(app.add_subcommand("oracle", "enumeration counts and elimination trdeg grid"), o_oracle);

    try {
        app.parse(argc, argv);
        if (app.got_subcommand("omega")) return run_omega(o_omega);
        if (app.got_subcommand("phi")) return run_dimension(o_phi, true, false);
        if (app.got_subcommand("psi")) return run_dimension(o_psi, false, false);
        if (app.got_subcommand("gap")) return run_gap(o_gap);
        if (app.got_subcommand("strength")) return run_dimension(o_strength, false, true);
        if (app.got_subcommand("reduce")) return run_reduce(o_reduce);
        if (app.got_subcommand("oracle")) return run_oracle(o_oracle);
        return 1;
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    } catch (const dsdim::ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return 2;
    } catch (const dsdim::SemanticError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const nlohmann::json::exception& e) {
        std::cerr << "json error: " << e.what() << "\n";
        return 2;
    } catch (const dsdim::CertificationFailed& e) {
        std::cerr << "certification failed: " << e.what() << "\n";
        return 3;
    } catch (const dsdim::NonAutoreducedInput& e) {
        std::cerr << "certification failed: " << e.what() << "\n";
        return 3;
    } catch (const dsdim::NonLinearInput& e) {
        std::cerr << "certification failed: " << e.what() << "\n";
        return 3;
    } catch (const dsdim::ConstantPolynomial& e) {
        std::cerr << "certification failed: " << e.what() << "\n";
        return 3;
    } catch (const dsdim::FitUnstable& e) {
        std::cerr << "fit failed: " << e.what() << "\n";
        return 4;
    } catch (const dsdim::ValidationMismatch& e) {
        std::cerr << "fit failed: " << e.what() << "\n";
        return 4;
    } catch (const dsdim::NonIntegralFit& e) {
        std::cerr << "fit failed: " << e.what() << "\n";
        return 4;
    } catch (const dsdim::OracleMismatch& e) {
        std::cerr << "oracle mismatch: " << e.what() << "\n";
        return 5;
    } catch (const dsdim::BufferCapExceeded& e) {
        std::cerr << "oracle failure: " << e.what() << "\n";
        return 5;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
