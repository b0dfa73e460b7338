#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "gmforge/arith.hpp"

using namespace gmforge;
using namespace gmforge::arith;

namespace {

Polynomial random_poly(const RingPtr& r, std::mt19937_64& rng, int max_terms = 6,
                       int max_deg = 4) {
    std::uniform_int_distribution<Coeff> cdist(0, r->field.p() - 1);
    std::uniform_int_distribution<int> tdist(0, max_terms);
    std::uniform_int_distribution<int> edist(0, max_deg);
    std::vector<Term> ts;
    int nt = tdist(rng);
    for (int t = 0; t < nt; ++t) {
        std::vector<std::uint8_t> e(r->nvars, 0);
        int budget = edist(rng);
        for (int i = 0; i < budget; ++i)
            e[std::uniform_int_distribution<int>(0, r->nvars - 1)(rng)]++;
        ts.push_back({Monomial(std::move(e)), cdist(rng)});
    }
    return Polynomial(r, std::move(ts));
}

}  // namespace

TEST_CASE("field basics") {
    PrimeField F(31991);
    CHECK(F.inv(2) == 15996);
    CHECK(F.mul(2, 15996) == 1);
    CHECK(F.add(31990, 1) == 0);
    CHECK(F.sub(0, 1) == 31990);
    CHECK(F.neg(0) == 0);
    CHECK_THROWS_AS(F.inv(0), DivisionByZeroError);

    PrimeField big(10000019);
    CHECK(big.mul(big.inv(3), 3) == 1);
    for (Coeff a : {2, 3, 12345, 9999999}) CHECK(big.mul(big.inv(a), a) == 1);

    CHECK_THROWS_AS(PrimeField(4), StructuralError);
    CHECK_THROWS_AS(PrimeField(2), StructuralError);
    CHECK_THROWS_AS(PrimeField(1), StructuralError);
}

TEST_CASE("field axioms on random triples") {
    PrimeField F(31991);
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<Coeff> dist(0, F.p() - 1);
    for (int i = 0; i < 1000; ++i) {
        Coeff a = dist(rng), b = dist(rng), c = dist(rng);
        CHECK(F.add(F.add(a, b), c) == F.add(a, F.add(b, c)));
        CHECK(F.mul(F.mul(a, b), c) == F.mul(a, F.mul(b, c)));
        CHECK(F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c)));
        if (a != 0) CHECK(F.mul(a, F.inv(a)) == 1);
    }
}

TEST_CASE("grevlex order is total, antisymmetric, multiplicative") {
    auto ord = MonomialOrder::grevlex();
    // x0^2 > x0x1 > x1^2 > x0x2 > x1x2 > x2^2 in three variables
    auto m = [&](int a, int b, int c) {
        return Monomial(std::vector<std::uint8_t>{std::uint8_t(a), std::uint8_t(b),
                                                  std::uint8_t(c)});
    };
    std::vector<Monomial> expected = {m(2, 0, 0), m(1, 1, 0), m(0, 2, 0),
                                      m(1, 0, 1), m(0, 1, 1), m(0, 0, 2)};
    for (std::size_t i = 0; i < expected.size(); ++i)
        for (std::size_t j = 0; j < expected.size(); ++j) {
            int c = cmp(ord, expected[i], expected[j]);
            if (i < j) CHECK(c > 0);
            if (i == j) CHECK(c == 0);
            if (i > j) CHECK(c < 0);
        }

    std::mt19937_64 rng(3);
    std::uniform_int_distribution<int> edist(0, 5);
    for (int trial = 0; trial < 1000; ++trial) {
        std::vector<std::uint8_t> ea(4), eb(4), et(4);
        for (auto* v : {&ea, &eb, &et})
            for (auto& x : *v) x = std::uint8_t(edist(rng));
        Monomial a(ea), b(eb), t(et);
        int c1 = cmp(ord, a, b);
        CHECK(cmp(ord, b, a) == -c1);
        // multiplicative
        CHECK(cmp(ord, a.mul(t), b.mul(t)) == c1);
    }
}

TEST_CASE("block elimination order separates blocks") {
    auto ord = MonomialOrder::eliminate_first(2);
    Monomial a(std::vector<std::uint8_t>{1, 0, 0, 0});   // x0
    Monomial b(std::vector<std::uint8_t>{0, 0, 3, 4});   // x2^3 x3^4
    CHECK(cmp(ord, a, b) > 0);  // anything touching the block beats anything outside
}

TEST_CASE("polynomial arithmetic basics") {
    auto r = make_ring(31991, 3);
    auto x0 = Polynomial::variable(r, 0);
    auto x1 = Polynomial::variable(r, 1);

    auto sq = (x0 + x1) * (x0 + x1);
    CHECK(sq == parse_polynomial(r, "x0^2+2*x0*x1+x1^2"));
    CHECK((sq * Polynomial::zero(r)).is_zero());

    auto f = parse_polynomial(r, "3*x0^2*x1+31990*x2^3");
    CHECK(f.str() == "3*x0^2*x1+31990*x2^3");
    CHECK(f.homogeneous_degree() == 3u);
    CHECK((f + parse_polynomial(r, "x2^3")).homogeneous_degree() == 3u);
    CHECK_FALSE((f + Polynomial::constant(r, 1)).homogeneous_degree().has_value());

    auto r2 = make_ring(101, 3);
    CHECK_THROWS_AS(f + Polynomial::variable(r2, 0), StructuralError);
}

TEST_CASE("product degree adds for homogeneous polynomials") {
    auto r = make_ring(31991, 4);
    std::mt19937_64 rng(17);
    std::uniform_int_distribution<Coeff> cdist(1, r->field.p() - 1);
    for (int trial = 0; trial < 50; ++trial) {
        // random nonzero homogeneous f, g
        auto homog = [&](int d) {
            std::vector<Term> ts;
            for (int k = 0; k < 4; ++k) {
                std::vector<std::uint8_t> e(4, 0);
                int left = d;
                for (int i = 0; i < 3; ++i) {
                    int take = std::uniform_int_distribution<int>(0, left)(rng);
                    e[i] = std::uint8_t(take);
                    left -= take;
                }
                e[3] = std::uint8_t(left);
                ts.push_back({Monomial(e), cdist(rng)});
            }
            return Polynomial(r, ts);
        };
        auto f = homog(2), g = homog(3);
        if (f.is_zero() || g.is_zero()) continue;
        CHECK(*(f * g).homogeneous_degree() == 5u);
    }
}

TEST_CASE("evaluation is a ring homomorphism") {
    auto r = make_ring(31991, 3);
    auto conic = parse_polynomial(r, "x0*x2-x1^2");
    CHECK(conic.evaluate({1, 1, 1}) == 0);

    std::mt19937_64 rng(23);
    std::uniform_int_distribution<Coeff> dist(0, 31990);
    for (int i = 0; i < 100; ++i) {
        auto f = random_poly(r, rng);
        auto g = random_poly(r, rng);
        std::vector<Coeff> pt = {dist(rng), dist(rng), dist(rng)};
        CHECK((f + g).evaluate(pt) == r->field.add(f.evaluate(pt), g.evaluate(pt)));
        CHECK((f * g).evaluate(pt) == r->field.mul(f.evaluate(pt), g.evaluate(pt)));
        // term-by-term evaluation agrees
        Coeff acc = 0;
        for (auto& t : f.terms())
            acc = r->field.add(acc, Polynomial(r, {t}).evaluate(pt));
        CHECK(acc == f.evaluate(pt));
    }
    CHECK_THROWS_AS(conic.evaluate({1, 2}), StructuralError);
}

TEST_CASE("substitution by the identity is the identity") {
    auto r = make_ring(31991, 3);
    std::mt19937_64 rng(5);
    std::vector<std::vector<Coeff>> id = {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}};
    for (int i = 0; i < 20; ++i) {
        auto f = random_poly(r, rng);
        CHECK(f.substitute_linear(id) == f);
    }
}

TEST_CASE("parse/print round trip on random polynomials") {
    auto r = make_ring(31991, 4);
    std::mt19937_64 rng(41);
    for (int i = 0; i < 200; ++i) {
        auto f = random_poly(r, rng);
        CHECK(parse_polynomial(r, f.str()) == f);
    }
    CHECK(parse_polynomial(r, "0").is_zero());
    CHECK_THROWS_AS(parse_polynomial(r, "x9"), ParseError);
    CHECK_THROWS_AS(parse_polynomial(r, "3*"), ParseError);
}

TEST_CASE("derivative follows the product rule") {
    auto r = make_ring(31991, 3);
    std::mt19937_64 rng(9);
    for (int i = 0; i < 50; ++i) {
        auto f = random_poly(r, rng);
        auto g = random_poly(r, rng);
        for (int v = 0; v < 3; ++v) {
            auto lhs = (f * g).derivative(v);
            auto rhs = f.derivative(v) * g + f * g.derivative(v);
            CHECK(lhs == rhs);
        }
    }
}
