#include <cmath>
#include <random>
#include <string>

#include "doctest.h"
#include "rot4/errors.hpp"
#include "rot4/expr.hpp"

#include "../common/expr_fuzz.hpp"

using namespace rot4;

TEST_CASE("precedence and associativity") {
    CHECK(eval_jet(*parse_expr("1+2*s"), 2.0).f == doctest::Approx(5.0));
    CHECK(eval_jet(*parse_expr("2^3^2"), 0.0).f == doctest::Approx(512.0));  // right assoc
    CHECK(eval_jet(*parse_expr("-s^2"), 3.0).f == doctest::Approx(-9.0));   // unary below ^
    CHECK(eval_jet(*parse_expr("(-s)^2"), 3.0).f == doctest::Approx(9.0));
    CHECK(eval_jet(*parse_expr("2^-1"), 0.0).f == doctest::Approx(0.5));
    CHECK(eval_jet(*parse_expr("6/3/2"), 0.0).f == doctest::Approx(1.0));  // left assoc
    CHECK(eval_jet(*parse_expr("2--3"), 0.0).f == doctest::Approx(5.0));
}

TEST_CASE("function evaluation") {
    CHECK(eval_jet(*parse_expr("sin(s)"), 0.5).f == doctest::Approx(std::sin(0.5)));
    CHECK(eval_jet(*parse_expr("sqrt(s^2)"), 3.0).f == doctest::Approx(3.0));
    CHECK(eval_jet(*parse_expr("ln(exp(s))"), 1.2).f == doctest::Approx(1.2));
    CHECK(eval_jet(*parse_expr("neg(s)"), 2.0).f == doctest::Approx(-2.0));
}

TEST_CASE("parameters bind through the environment") {
    auto ast = parse_expr("lambda*cos(mu*s)");
    Bindings params{{"lambda", 2.0}, {"mu", 3.0}};
    CHECK(eval_jet(*ast, 0.5, params).f == doctest::Approx(2.0 * std::cos(1.5)));
    CHECK(eval_jet(*ast, 0.5, params).d1 == doctest::Approx(-6.0 * std::sin(1.5)));
    CHECK_THROWS_AS(eval_jet(*ast, 0.5), EvalError);  // unbound
}

TEST_CASE("malformed inputs raise parse errors with offsets") {
    auto offset_of = [](const std::string& text) -> std::size_t {
        try {
            parse_expr(text);
        } catch (const ParseError& e) {
            return e.offset();
        }
        return static_cast<std::size_t>(-1);
    };
    CHECK(offset_of("") == 0);
    CHECK(offset_of("cos(") == 4);
    CHECK(offset_of("1+*2") == 2);
    CHECK(offset_of("cot(s)") == 0);
    CHECK(offset_of("1+2)") == 3);
    CHECK_THROWS_AS(parse_expr("sin s"), ParseError);
    CHECK_THROWS_AS(parse_expr("2$3"), ParseError);
}

TEST_CASE("domain violations raise eval errors") {
    CHECK_THROWS_AS(eval_jet(*parse_expr("1/s"), 0.0), EvalError);
    CHECK_THROWS_AS(eval_jet(*parse_expr("ln(s)"), -1.0), EvalError);
    CHECK_THROWS_AS(eval_jet(*parse_expr("sqrt(s)"), -4.0), EvalError);
    CHECK_THROWS_AS(eval_jet(*parse_expr("0^-1"), 0.0), EvalError);
    CHECK_THROWS_AS(eval_jet(*parse_expr("(-2)^0.5"), 0.0), EvalError);
    CHECK(eval_jet(*parse_expr("(-2)^2"), 0.0).f == doctest::Approx(4.0));
    CHECK(eval_jet(*parse_expr("2^0.5"), 0.0).f == doctest::Approx(std::sqrt(2.0)));
}

TEST_CASE("printing round trips through the parser") {
    const char* sources[] = {"1+2*s", "sin(s)^2+cos(s)^2", "-s^3/(1+s^2)", "exp(s/4)*ln(2+s)"};
    for (const char* src : sources) {
        auto ast = parse_expr(src);
        auto reparsed = parse_expr(to_string(*ast));
        for (double s : {0.3, 1.1, 2.7}) {
            CHECK(eval_jet(*ast, s).f == doctest::Approx(eval_jet(*reparsed, s).f).epsilon(1e-15));
            CHECK(eval_jet(*ast, s).d3 == doctest::Approx(eval_jet(*reparsed, s).d3).epsilon(1e-13));
        }
    }
}

TEST_CASE("clone produces an independent equal tree") {
    auto ast = parse_expr("sin(s)*exp(s/3)+2");
    auto copy = clone(*ast);
    CHECK(to_string(*ast) == to_string(*copy));
    CHECK(eval_jet(*copy, 0.9).d2 == doctest::Approx(eval_jet(*ast, 0.9).d2));
}

TEST_CASE("jet derivatives match high-order finite differences on random expressions") {
    std::mt19937_64 rng(987654321);
    std::uniform_real_distribution<double> s_pick(0.3, 1.7);
    int accepted = 0;
    int attempts = 0;
    while (accepted < 100 && attempts < 3000) {
        ++attempts;
        const std::string src = fuzz::random_expr(rng, 3);
        const double s0 = s_pick(rng);
        ExprPtr ast;
        Jet3 jet;
        try {
            ast = parse_expr(src);
            jet = eval_jet(*ast, s0);
        } catch (const Error&) {
            continue;  // out-of-domain draw; try another
        }
        const long double h = 1e-4L;
        fuzz::FdJet fd;
        try {
            fd = fuzz::fd_jet(*ast, s0, h);
        } catch (const Error&) {
            continue;
        }
        if (!fd.finite) continue;
        const double scale = std::max({1.0, std::fabs(jet.f), std::fabs(jet.d1),
                                       std::fabs(jet.d2), std::fabs(jet.d3)});
        if (scale > 1e6) continue;  // wildly scaled draws drown the stencil
        ++accepted;
        CHECK(std::fabs(jet.f - static_cast<double>(fd.f)) <= 1e-9 * scale);
        CHECK(std::fabs(jet.d1 - static_cast<double>(fd.d1)) <= 1e-6 * scale);
        CHECK(std::fabs(jet.d2 - static_cast<double>(fd.d2)) <= 1e-6 * scale);
        CHECK(std::fabs(jet.d3 - static_cast<double>(fd.d3)) <= 1e-6 * scale);
    }
    CHECK(accepted == 100);
}
