#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "nearcurve/constants.hpp"
#include "nearcurve/enclosure.hpp"
#include "nearcurve/errors.hpp"
#include "nearcurve/rational.hpp"

#include <random>

using namespace nearcurve;

TEST_CASE("rational parsing and canonical form") {
    CHECK(parse_rational("1/4") == Rational(1, 4));
    CHECK(parse_rational("-3/6") == Rational(-1, 2));
    CHECK(parse_rational("7") == Rational(7));
    CHECK(to_fraction_string(parse_rational("4/6")) == "2/3");
    CHECK(to_fraction_string(parse_rational("-5/10")) == "-1/2");
    CHECK_THROWS_AS(parse_rational("0.25"), UsageError);
    CHECK_THROWS_AS(parse_rational("1e-3"), UsageError);
    CHECK_THROWS_AS(parse_rational("1/0"), UsageError);
    CHECK_THROWS_AS(parse_rational(""), UsageError);

    // canonical: positive denominator, coprime
    Rational r = parse_rational("-6/8");
    CHECK(r.get_den() == 4);
    CHECK(r.get_num() == -3);
}

TEST_CASE("rational floor/ceil") {
    CHECK(rational_floor(Rational(7, 2)) == 3);
    CHECK(rational_ceil(Rational(7, 2)) == 4);
    CHECK(rational_floor(Rational(-7, 2)) == -4);
    CHECK(rational_ceil(Rational(-7, 2)) == -3);
    CHECK(rational_floor(Rational(6)) == 6);
    CHECK(rational_ceil(Rational(6)) == 6);
}

TEST_CASE("enclosure comparison trichotomy") {
    const Rational half(1, 2);
    CHECK(Enclosure::from_endpoints(Rational(1, 5), Rational(3, 10), 64).compare(half) ==
          Trichotomy::Below);
    CHECK(Enclosure::from_endpoints(Rational(3, 5), Rational(7, 10), 64).compare(half) ==
          Trichotomy::Above);
    CHECK(Enclosure::from_endpoints(Rational(2, 5), Rational(3, 5), 64).compare(half) ==
          Trichotomy::Ambiguous);
}

TEST_CASE("enclosure arithmetic soundness on random rationals") {
    std::mt19937 rng(7);
    std::uniform_int_distribution<int> num(-50, 50), den(1, 50);
    for (int trial = 0; trial < 200; ++trial) {
        Rational a(num(rng), den(rng));
        Rational b(num(rng), den(rng));
        a.canonicalize();
        b.canonicalize();
        Enclosure ea = Enclosure::from_rational(a, 64);
        Enclosure eb = Enclosure::from_rational(b, 64);
        CHECK((ea + eb).contains(a + b));
        CHECK((ea - eb).contains(a - b));
        CHECK((ea * eb).contains(a * b));
        if (b != 0)
            CHECK((ea / eb).contains(a / b));
        CHECK(ea.abs().contains(abs(a)));
        // sqrt: the square of the enclosure must recover the radicand
        Rational pos = abs(a) + 1;
        Enclosure s = sqrt(Enclosure::from_rational(pos, 64));
        CHECK((s * s).contains(pos));
        // log(exp(x)) contains x
        Enclosure le = log(exp(Enclosure::from_rational(a, 96)));
        CHECK(le.contains(a));
    }
}

TEST_CASE("enclosure domain errors") {
    CHECK_THROWS_AS(sqrt(Enclosure::from_rational(Rational(-1), 64)), DomainError);
    CHECK_THROWS_AS(log(Enclosure::from_rational(Rational(0), 64)), DomainError);
    CHECK_THROWS_AS(Enclosure::from_rational(Rational(1), 64) /
                        Enclosure::from_endpoints(Rational(-1), Rational(1), 64),
                    DomainError);
}

TEST_CASE("zeta(3) enclosure") {
    const Rational ref(Integer("12020569032"), Integer("10000000000"));
    const Rational tol(1, Integer("1000000000")); // 1e-9

    Enclosure z40 = zeta3(40);
    CHECK(z40.width() <= tol);
    CHECK(z40.lo() >= ref - tol);
    CHECK(z40.hi() <= ref + tol);

    Enclosure z8 = zeta3(8);
    CHECK(z8.width() <= rational_pow(Rational(1, 2), 7));
    CHECK(z8.lo() >= 1); // first term of the series
    CHECK_THROWS_AS(zeta3(7), DomainError);
}

TEST_CASE("zeta(3) monotone refinement") {
    Rational prev_width;
    bool first = true;
    std::vector<Enclosure> encs;
    for (int p : {8, 16, 24, 32, 40, 52, 64}) {
        Enclosure z = zeta3(p);
        CHECK(z.width() <= rational_pow(Rational(1, 2), p - 1));
        if (!first)
            CHECK(z.width() <= prev_width);
        prev_width = z.width();
        first = false;
        encs.push_back(z);
    }
    for (std::size_t i = 0; i < encs.size(); ++i)
        for (std::size_t j = i + 1; j < encs.size(); ++j) {
            CHECK(encs[i].hi() >= encs[j].lo());
            CHECK(encs[j].hi() >= encs[i].lo());
        }
}

TEST_CASE("derived named constants") {
    const Rational tol(1, 1000000); // 1e-6
    struct {
        NamedConstant name;
        Rational ref;
    } cases[] = {
        {NamedConstant::TwoThirdsOverZeta3, Rational(Integer("5546049"), Integer("10000000"))},
        {NamedConstant::InvZeta3, Rational(Integer("8319074"), Integer("10000000"))},
        {NamedConstant::LowerHuang, Rational(Integer("3202013"), Integer("10000000"))},
    };
    for (const auto& c : cases) {
        Enclosure e = constant(c.name);
        CHECK(e.width() <= Rational(1, Integer("1000000000")));
        CHECK(e.lo() >= c.ref - tol);
        CHECK(e.hi() <= c.ref + tol);
    }
}
