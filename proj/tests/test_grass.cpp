#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "gmforge/grass.hpp"

using namespace gmforge;
using namespace gmforge::arith;
using namespace gmforge::grass;
using gmforge::ideals::Ideal;

namespace {
constexpr Coeff P = 31991;
}

TEST_CASE("pieri on G(1,4)") {
    auto s1 = sigma(4, 1);
    auto sq = s1 * s1;
    CHECK(sq == sigma(4, 2) + sigma(4, 1, 1));
    CHECK(sq.str() == "s(2,0)+s(1,1)");

    // box truncation: sigma_3 * sigma_1 has no sigma_4 term
    auto s3s1 = sigma(4, 3) * s1;
    CHECK(s3s1 == sigma(4, 3, 1));
}

TEST_CASE("top intersection numbers") {
    CHECK(integral(sigma(4, 1).pow(6)) == 5);
    CHECK(integral(sigma(5, 1).pow(8)) == 14);
    CHECK(lattice_path_count(4) == 5);
    CHECK(lattice_path_count(5) == 14);
    for (int n = 2; n <= 6; ++n)
        CHECK(integral(sigma(n, 1).pow(2 * (n - 1))) == lattice_path_count(n));
}

TEST_CASE("duality table in G(1,4)") {
    CHECK(integral(sigma(4, 3, 1) * sigma(4, 2)) == 1);
    CHECK(integral(sigma(4, 3, 1) * sigma(4, 1, 1)) == 0);
    CHECK(integral(sigma(4, 2, 2) * sigma(4, 1, 1)) == 1);
    CHECK(integral(sigma(4, 2, 2) * sigma(4, 2)) == 0);
    // complements pair to 1, everything else in the same codimension to 0
    for (int a1 = 3; a1 >= 0; --a1)
        for (int b1 = a1; b1 >= 0; --b1)
            for (int a2 = 3; a2 >= 0; --a2)
                for (int b2 = a2; b2 >= 0; --b2) {
                    if (a1 + b1 + a2 + b2 != 6) continue;
                    bool complement = (a2 == 3 - b1 && b2 == 3 - a1);
                    CHECK(integral(sigma(4, a1, b1) * sigma(4, a2, b2)) ==
                          (complement ? 1 : 0));
                }
}

TEST_CASE("the (11,6) class pairs to degree 17") {
    auto cls = sigma(4, 3, 1).scaled(11) + sigma(4, 2, 2).scaled(6);
    CHECK(integral(cls * sigma(4, 1).pow(2)) == 17);
    CHECK(cls.str() == "11*s(3,1)+6*s(2,2)");
}

TEST_CASE("cycle arithmetic is associative and commutative") {
    std::mt19937_64 rng(99);
    std::uniform_int_distribution<int> part(0, 3), coeff(-4, 4);
    auto random_cycle = [&]() {
        SchubertCycle c(4);
        int a = part(rng);
        int b = std::uniform_int_distribution<int>(0, a)(rng);
        c = c + SchubertCycle(4, a, b, coeff(rng));
        return c;
    };
    for (int i = 0; i < 1000; ++i) {
        auto a = random_cycle(), b = random_cycle(), c = random_cycle();
        CHECK(a * b == b * a);
        CHECK((a * b) * c == a * (b * c));
    }
}

TEST_CASE("pluecker ideal of G(1,4)") {
    PlueckerIndex ix(4);
    auto r = make_ring(P, ix.nvars());
    Ideal G = pluecker_ideal(r, 4);
    CHECK(G.gens().size() == 5);
    CHECK(G.dimension() == 6);
    CHECK(G.degree() == 5);

    // evaluation at the Plücker vector of random lines vanishes
    std::mt19937_64 rng(4);
    std::uniform_int_distribution<Coeff> dist(0, P - 1);
    PrimeField F(P);
    for (int t = 0; t < 100; ++t) {
        std::vector<Coeff> a(5), b(5);
        for (auto& v : a) v = dist(rng);
        for (auto& v : b) v = dist(rng);
        auto pl = line_through(F, a, b);
        for (auto& g : G.gens()) CHECK(g.evaluate(pl) == 0);
    }
}

TEST_CASE("pluecker ideal of G(1,5)") {
    PlueckerIndex ix(5);
    auto r = make_ring(P, ix.nvars());
    Ideal G = pluecker_ideal(r, 5);
    CHECK(G.gens().size() == 15);
    CHECK(G.dimension() == 8);
    CHECK(G.degree() == 14);
}

TEST_CASE("schubert conditions cut what they should") {
    PlueckerIndex ix(4);
    auto r = make_ring(P, ix.nvars());
    PrimeField F(P);
    std::mt19937_64 rng(12);
    std::uniform_int_distribution<Coeff> dist(0, P - 1);

    // a line inside the hyperplane satisfies the sigma_{1,1} conditions
    std::vector<Coeff> h = {1, 0, 0, 0, 0};  // hyperplane x0 = 0
    auto conds = sigma11_conditions(r, 4, h);
    std::vector<Coeff> a = {0, dist(rng), dist(rng), dist(rng), dist(rng)};
    std::vector<Coeff> b = {0, dist(rng), dist(rng), dist(rng), dist(rng)};
    auto inside = line_through(F, a, b);
    for (auto& c : conds) CHECK(c.evaluate(inside) == 0);
    std::vector<Coeff> c0 = {1, 0, 1, 2, 3};
    auto outside = line_through(F, c0, b);
    bool all_zero = true;
    for (auto& c : conds) all_zero = all_zero && (c.evaluate(outside) == 0);
    CHECK_FALSE(all_zero);

    // two meeting lines satisfy the sigma_2 conditions
    std::vector<Coeff> common = {dist(rng), dist(rng), dist(rng), dist(rng), 1};
    auto eta = line_through(F, common, a);
    auto meets = line_through(F, common, b);
    for (auto& c : sigma2_conditions(r, 4, eta)) CHECK(c.evaluate(meets) == 0);
}

TEST_CASE("surface class of a sigma_{2,2} plane is (0,1)") {
    PlueckerIndex ix(4);
    auto r = make_ring(P, ix.nvars());
    std::vector<Polynomial> gens = pluecker_ideal(r, 4).gens();
    // lines inside the plane spanned by e0, e1, e2: every p_ij touching 3,4 dies
    for (int i = 0; i <= 4; ++i)
        for (int j = i + 1; j <= 4; ++j)
            if (j >= 3) gens.push_back(Polynomial::variable(r, ix.var(i, j)));
    Ideal plane(r, gens);
    CHECK(plane.dimension() == 2);
    CHECK(plane.degree() == 1);
    auto cls = surface_class(plane, 314159);
    CHECK(cls.a == 0);
    CHECK(cls.b == 1);
}

TEST_CASE("surface class of a 4-fold hyperplane section matches pieri") {
    PlueckerIndex ix(4);
    auto r = make_ring(P, ix.nvars());
    std::mt19937_64 rng(2718);
    std::uniform_int_distribution<Coeff> dist(0, P - 1);
    std::vector<Polynomial> gens = pluecker_ideal(r, 4).gens();
    for (int k = 0; k < 4; ++k) {
        std::vector<Term> ts;
        for (int v = 0; v < r->nvars; ++v)
            ts.push_back({Monomial::variable(r->nvars, v), dist(rng)});
        gens.push_back(Polynomial(r, ts));
    }
    Ideal S(r, gens);
    REQUIRE(S.dimension() == 2);
    REQUIRE(S.degree() == 5);
    auto cls = surface_class(S, 1618);

    auto expansion = sigma(4, 1).pow(4);
    CHECK(cls.a == expansion.coefficient(3, 1));
    CHECK(cls.b == expansion.coefficient(2, 2));
    CHECK(cls.a == 3);
    CHECK(cls.b == 2);
}
