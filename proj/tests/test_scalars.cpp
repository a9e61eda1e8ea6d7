#include "mta/expr_parse.hpp"
#include "mta/level_scalar.hpp"
#include "mta/rational.hpp"

#include <catch2/catch_amalgamated.hpp>

using namespace mta;

TEST_CASE("rationals are canonical and round-trip through strings") {
    CHECK(Rat(6, 4) == Rat(3, 2));
    CHECK(rat_to_string(Rat(-3, 6)) == "-1/2");
    CHECK(rat_from_string("-3/6") == Rat(-1, 2));
    CHECK(rat_from_string("42") == Rat(42));
    CHECK(rat_to_string(Rat(0)) == "0");
    CHECK_THROWS_AS(rat_from_string("x/y"), std::invalid_argument);
}

TEST_CASE("polynomials in k: arithmetic, division, gcd") {
    PolyK k = PolyK::variable();
    PolyK two(Rat(2));
    PolyK prod = (k + two) * (k - two);
    CHECK(prod.degree() == 2);
    CHECK(prod.eval(Rat(2)) == 0);
    CHECK(prod.eval(Rat(3)) == 5);

    PolyK q, r;
    PolyK::divmod(prod, k + two, q, r);
    CHECK(r.is_zero());
    CHECK(q == k - two);

    PolyK g = PolyK::gcd(prod, (k + two) * (k + two));
    CHECK(g == k + two); // monic
}

TEST_CASE("level scalars reduce to canonical rational functions") {
    LevelScalar k = LevelScalar::k();
    LevelScalar two = Rat(2);

    LevelScalar frac = (k * k - two * two) / (k + two);
    CHECK(frac == k - two); // gcd cancellation

    CHECK((k - k).is_zero());
    CHECK((k / k).is_one());
    CHECK_THROWS_AS(k / LevelScalar(Rat(0)), std::invalid_argument);

    LevelScalar inv = LevelScalar(Rat(1)) / (k + two);
    CHECK(inv.specialize(Rat(0)) == Rat(1, 2));
    CHECK_THROWS_AS(inv.specialize(Rat(-2)), PoleError);

    CHECK(LevelScalar(Rat(5, 3)).as_rat() == Rat(5, 3));
    CHECK_THROWS_AS(k.as_rat(), std::invalid_argument);
    CHECK(k.str() == "k");
    CHECK(inv.str() == "1/(k + 2)");
}

TEST_CASE("compound assignment mirrors the binary operators") {
    LevelScalar k = LevelScalar::k();
    LevelScalar a = k;
    a += Rat(2);
    a *= k;
    CHECK(a == k * k + LevelScalar(Rat(2)) * k);
    a -= k * k;
    a /= Rat(2);
    CHECK(a == k);
}

TEST_CASE("scalar expression grammar") {
    LevelScalar k = LevelScalar::k();
    CHECK(parse_scalar("k(k+2)") == k * k + LevelScalar(Rat(2)) * k);
    CHECK(parse_scalar("k^2 - 4") == k * k - LevelScalar(Rat(4)));
    CHECK(parse_scalar("1/2") == LevelScalar(Rat(1, 2)));
    CHECK(parse_scalar("-(k - 1)") == LevelScalar(Rat(1)) - k);
    CHECK_THROWS_AS(parse_scalar("q"), ParseError);
    CHECK_THROWS_AS(parse_scalar("1 +"), ParseError);
}

TEST_CASE("index expression grammar binds parameters") {
    IndexBindings b{{"r", 3}, {"d", 2}};
    auto eval = [&](const std::string& s) {
        Lexer lx(s);
        long v = parse_index_expr(lx, b);
        REQUIRE(lx.eof());
        return v;
    };
    CHECK(eval("r-1") == 2);
    CHECK(eval("-d") == -2);
    CHECK(eval("2*r") == 6);
    CHECK(eval("r+d-5") == 0);
    Lexer bad("q+1");
    CHECK_THROWS_AS(parse_index_expr(bad, b), ParseError);
}
