#include "legsheaf/puiseux.hpp"

#include "helpers.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <numbers>

using namespace legsheaf;
using testutil::rng_t;

namespace {

puiseux_class cls(const std::string& text) { return parse_class(text); }

} // namespace

TEST_CASE("parse_class drops the quotiented tail") {
    puiseux_class c = cls("(2/3)*z^(-3/2) - z^(-1) + 5");
    REQUIRE(c.terms().size() == 1);
    CHECK(c.terms()[0].exponent == make_rational(-3, 2));
    CHECK(c.terms()[0].coeff.base == parse_scalar("2/3"));
}

TEST_CASE("parse_class basics") {
    CHECK(cls("0").is_zero());
    puiseux_class c = cls("z^(-2) + z^(-2)");
    REQUIRE(c.terms().size() == 1);
    CHECK(c.terms()[0].coeff.base == scalar(2));
    CHECK(cls("z^(-2) - z^(-2)").is_zero());
    CHECK(cls("i*z^(-2)").terms()[0].coeff.base == scalar_i());
    CHECK(cls("(1+2i)*z^(-5/2)").terms()[0].coeff.base == parse_scalar("1+2i"));
    CHECK(cls("2/3*z^(-3/2)") == cls("(2/3)*z^(-3/2)"));
    CHECK_THROWS_AS(cls("z^"), calc_error);
    CHECK_THROWS_AS(cls("z^(-2"), calc_error);
    CHECK_THROWS_AS(cls("q"), calc_error);
    CHECK_THROWS_AS(cls(""), calc_error);
}

TEST_CASE("ramification") {
    CHECK(cls("(2/3)*z^(-3/2)").ramification() == 2);
    CHECK(cls("z^(-2)").ramification() == 1);
    CHECK(cls("z^(-5/2) + z^(-4/3)").ramification() == 6);
    CHECK(cls("0").ramification() == 1);
}

TEST_CASE("deck orbit of the two-sheet cubic class") {
    puiseux_class c = cls("(2/3)*z^(-3/2)");
    auto orbit = c.deck_orbit();
    REQUIRE(orbit.size() == 2);
    CHECK(orbit[0] == c);
    CHECK(orbit[1] == cls("(-2/3)*z^(-3/2)"));
}

TEST_CASE("deck orbit trivia") {
    CHECK(cls("0").deck_orbit().size() == 1);
    CHECK(cls("z^(-2)").deck_orbit().size() == 1);
}

TEST_CASE("deck orbit with residual phases") {
    puiseux_class c = cls("z^(-5/3)");
    auto orbit = c.deck_orbit();
    REQUIRE(orbit.size() == 3);
    // Orbit size equals ramification, and the phases leave Q(i).
    CHECK_FALSE(orbit[1].is_plain());
    // deck applied l times is the identity.
    puiseux_class cur = c;
    for (int k = 0; k < 3; ++k) cur = cur.deck();
    CHECK(cur == c);
}

TEST_CASE("evaluate_re") {
    CHECK(cls("z^(-2)").evaluate_re(rational(1), 0.0) == Catch::Approx(1.0));
    CHECK(cls("(2/3)*z^(-3/2)").evaluate_re(rational(1), 0.0) == Catch::Approx(2.0 / 3.0));
    CHECK(cls("0").evaluate_re(make_rational(1, 10), 1.234) == 0.0);
    // Scaling: coefficient magnitude eps^{-2} at theta = 0.
    CHECK(cls("z^(-2)").evaluate_re(make_rational(1, 10), 0.0) == Catch::Approx(100.0));
}

TEST_CASE("conjugate continuation property") {
    const double two_pi = 2.0 * std::numbers::pi;
    for (const char* text : {"(2/3)*z^(-3/2)", "z^(-5/3)", "i*z^(-2) + z^(-7/4)"}) {
        puiseux_class c = cls(text);
        puiseux_class d = c.deck();
        for (double theta : {0.0, 0.7, 2.5, 5.1}) {
            CHECK(d.evaluate_re(make_rational(1, 10), theta) ==
                  Catch::Approx(c.evaluate_re(make_rational(1, 10), theta + two_pi)).margin(1e-9));
        }
    }
}

TEST_CASE("render and parse round trip on random plain classes") {
    rng_t rng(4242);
    std::uniform_int_distribution<int> nterms(0, 3);
    std::uniform_int_distribution<int> num(-9, -5), den(1, 3), cnum(-3, 3);
    for (int iter = 0; iter < 200; ++iter) {
        std::vector<puiseux_term> terms;
        for (int t = 0, e = nterms(rng); t < e; ++t) {
            rational exp = make_rational(num(rng), den(rng));
            scalar c(make_rational(cnum(rng), 1), make_rational(cnum(rng), 2));
            terms.push_back({exp, phased_coeff(c)});
        }
        puiseux_class c(terms);
        CHECK(parse_class(render_class(c)) == c);
    }
}

TEST_CASE("normalization is idempotent") {
    rng_t rng(515);
    std::uniform_int_distribution<int> num(-8, 2), den(1, 4), cnum(-2, 2);
    for (int iter = 0; iter < 100; ++iter) {
        std::vector<puiseux_term> terms;
        for (int t = 0; t < 4; ++t)
            terms.push_back({make_rational(num(rng), den(rng)),
                             phased_coeff(scalar(make_rational(cnum(rng), 1)))});
        puiseux_class once(terms);
        puiseux_class twice(once.terms());
        CHECK(once == twice);
        for (const auto& t : once.terms()) {
            CHECK(t.exponent < -1);
            CHECK_FALSE(t.coeff.is_zero());
        }
    }
}

TEST_CASE("formal type completes orbits and orders canonically") {
    formal_type t = formal_type::from_classes({cls("(2/3)*z^(-3/2)")});
    REQUIRE(t.orbits().size() == 1);
    CHECK(t.orbits()[0].size() == 2);
    CHECK(t.class_count() == 2);

    // Duplicates and conjugates collapse into one orbit.
    formal_type t2 = formal_type::from_classes(
        {cls("(2/3)*z^(-3/2)"), cls("(-2/3)*z^(-3/2)"), cls("(2/3)*z^(-3/2)")});
    CHECK(t2.orbits().size() == 1);

    // The zero class sorts first.
    formal_type t3 = formal_type::from_classes({cls("z^(-2)"), cls("0")});
    CHECK(t3.orbits()[0].front().is_zero());
    CHECK(t3.zero_orbit() == 0);
    CHECK(formal_type::from_classes({cls("z^(-2)")}).zero_orbit() == -1);
}

TEST_CASE("difference keeps non-combinable phased summands") {
    puiseux_class a = cls("z^(-5/3)");
    puiseux_class b = a.deck();
    puiseux_class d = difference(a, b);
    CHECK_FALSE(d.is_zero());
    REQUIRE(d.terms().size() == 2); // same exponent, distinct phases
    CHECK(d.terms()[0].exponent == d.terms()[1].exponent);
    CHECK(difference(a, a).is_zero());
}
