#include <catch2/catch_amalgamated.hpp>

#include "dsdim/json_io.hpp"
#include "dsdim/parser.hpp"

using namespace dsdim;

TEST_CASE("example problem file parses") {
    ProblemFile pf = parse_problem(
        "ring m=2 n=1;\n"
        "charset: s*y1 + d1^2*y1 + d2^2*y1; shift=1;\n");
    CHECK(pf.m == 2);
    CHECK(pf.n == 1);
    REQUIRE(pf.charset.size() == 1);
    CHECK(pf.charset[0].shift == 1);
    CHECK(pf.charset[0].poly == parse_poly("s*y1+d1^2*y1+d2^2*y1", 2, 1));
}

TEST_CASE("pure difference ring parses") {
    ProblemFile pf = parse_problem("ring m=0 n=1; charset: s*y1 - y1; shift=0;");
    CHECK(pf.m == 0);
    REQUIRE(pf.charset.size() == 1);
    CHECK(pf.charset[0].shift == 0);
}

TEST_CASE("semantic rejections") {
    CHECK_THROWS_AS(parse_problem("ring m=2 n=1; charset: 3;"), SemanticError);
    CHECK_THROWS_AS(parse_problem("ring m=2 n=1; shift=1;"), SemanticError);
    CHECK_THROWS_AS(parse_problem("charset: s*y1;"), SemanticError);
    CHECK_THROWS_AS(
        parse_problem("ring m=2 n=1; charset: s*y1; shift=-1;"), SemanticError);
    CHECK_THROWS_AS(parse_problem("ring m=9 n=1;"), SemanticError);
    CHECK_THROWS_AS(parse_problem("ring m=1 n=0;"), SemanticError);
    CHECK_THROWS_AS(parse_poly("y3", 2, 2), SemanticError);
    CHECK_THROWS_AS(parse_poly("d3*y1", 2, 2), SemanticError);
    CHECK_THROWS_AS(
        parse_problem("ring m=1 n=1; points: (1,2,3);"), SemanticError);
}

TEST_CASE("parse errors carry position") {
    try {
        parse_problem("ring m=2 n=1;\ncharset: s*y1 + ;\n");
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.line == 2);
        CHECK(std::string(e.what()).find("expected") != std::string::npos);
    }
    CHECK_THROWS_AS(parse_problem("bogus x;"), ParseError);
    CHECK_THROWS_AS(parse_poly("s*", 2, 1), ParseError);
    CHECK_THROWS_AS(parse_poly("s*y1 +", 2, 1), ParseError);
    CHECK_THROWS_AS(parse_poly("(s*y1", 2, 1), ParseError);
    CHECK_THROWS_AS(parse_poly("3/0*y1", 2, 1), ParseError);
}

TEST_CASE("polynomial syntax: rationals, brackets, powers") {
    QPoly p = parse_poly("3/2*s*y1 - 2*y2", 2, 2);
    CHECK(p.terms().size() == 2);
    QPoly q = parse_poly("(s*y1)*(d1*y1) + (s*y1)^2", 2, 1);
    CHECK(q.degree_in(parse_term("s*y1", 2, 1)) == 2);
    // '#' comments and arbitrary whitespace
    ProblemFile pf = parse_problem(
        "# heat-like example\nring m=2 n=1;  # ring shape\n"
        "charset: s*y1\n   + d1^2*y1 + d2^2*y1; shift=1;\n# done\n");
    CHECK(pf.charset.size() == 1);
}

TEST_CASE("points statement") {
    ProblemFile pf =
        parse_problem("ring m=2 n=1; points: (0,0,1) (2,0,0) (0,3,0);");
    REQUIRE(pf.points);
    CHECK(pf.points->m == 2);
    CHECK(pf.points->points.size() == 3);
    CHECK(pf.points->points[1] == MultiIndex{{2, 0, 0}});
}

TEST_CASE("problem round-trip: render then reparse") {
    for (const char* text :
         {"ring m=2 n=1;\ncharset: s*y1 + d1^2*y1 + d2^2*y1; shift=1;\n",
          "ring m=1 n=2;\ncharset: s*y1 + y2; shift=2;\ncharset: s*y2 + y1; "
          "shift=0;\ngenerator: d1*y1 + 1/3*y2;\n",
          "ring m=2 n=1;\npoints: (0,0,1) (1,2,0);\n"}) {
        ProblemFile pf = parse_problem(text);
        ProblemFile back = parse_problem(render_problem(pf));
        CHECK(back.m == pf.m);
        CHECK(back.n == pf.n);
        REQUIRE(back.charset.size() == pf.charset.size());
        for (std::size_t i = 0; i < pf.charset.size(); ++i) {
            CHECK(back.charset[i].poly == pf.charset[i].poly);
            CHECK(back.charset[i].shift == pf.charset[i].shift);
        }
        REQUIRE(back.generators.size() == pf.generators.size());
        for (std::size_t i = 0; i < pf.generators.size(); ++i)
            CHECK(back.generators[i] == pf.generators[i]);
        CHECK(back.points.has_value() == pf.points.has_value());
        if (pf.points) CHECK(back.points->points == pf.points->points);
    }
}

TEST_CASE("JSON problem input") {
    std::string text = R"({
      "schema": 1,
      "ring": {"m": 2, "n": 1},
      "charset": [{"poly": "s*y1 + d1^2*y1 + d2^2*y1", "shift": 1}]
    })";
    ProblemFile pf = parse_problem_any(text);
    CHECK(pf.m == 2);
    REQUIRE(pf.charset.size() == 1);
    CHECK(pf.charset[0].shift == 1);
    CHECK(pf.charset[0].poly == parse_poly("s*y1+d1^2*y1+d2^2*y1", 2, 1));

    CHECK_THROWS_AS(
        problem_from_json(R"({"ring": {"m":1,"n":1}, "bogus": 2})"),
        SemanticError);
    CHECK_THROWS_AS(
        problem_from_json(R"({"schema": 99, "ring": {"m":1,"n":1}})"),
        SemanticError);
}
