#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "gmforge/ideal.hpp"

using namespace gmforge;
using namespace gmforge::arith;
using namespace gmforge::ideals;

namespace {

constexpr Coeff P = 31991;

Ideal twisted_cubic(const RingPtr& r) {
    // 2x2 minors of [[x0,x1,x2],[x1,x2,x3]]
    return ideal_from_strings(r, {"x0*x2-x1^2", "x0*x3-x1*x2", "x1*x3-x2^2"});
}

Polynomial random_homog(const RingPtr& r, int d, std::mt19937_64& rng) {
    std::uniform_int_distribution<Coeff> cdist(0, r->field.p() - 1);
    std::vector<Term> ts;
    for (auto& m : monomials_of_degree(r, d)) ts.push_back({m, cdist(rng)});
    return Polynomial(r, std::move(ts));
}

}  // namespace

TEST_CASE("groebner of an already reduced ideal") {
    auto r = make_ring(P, 3);
    Ideal I = ideal_from_strings(r, {"x0", "x1"});
    const auto& gb = I.groebner();
    REQUIRE(gb.size() == 2);
    CHECK(gb.polys()[0].str() == "x1");
    CHECK(gb.polys()[1].str() == "x0");
    CHECK(buchberger_criterion_holds(gb));
}

TEST_CASE("twisted cubic: basis, membership, invariants") {
    auto r = make_ring(P, 4);
    Ideal I = twisted_cubic(r);
    CHECK(I.groebner().size() == 3);
    CHECK(buchberger_criterion_holds(I.groebner()));

    // pullbacks of the parameterization (s^3, s^2 t, s t^2, t^3) vanish
    auto rp = make_ring(P, 2);
    std::vector<Polynomial> param = {
        parse_polynomial(rp, "x0^3"), parse_polynomial(rp, "x0^2*x1"),
        parse_polynomial(rp, "x0*x1^2"), parse_polynomial(rp, "x1^3")};
    for (auto& g : I.groebner().polys()) CHECK(g.substitute(param).is_zero());

    CHECK(I.dimension() == 1);
    CHECK(I.degree() == 3);
    CHECK(I.arithmetic_genus() == 0);
}

TEST_CASE("normal form: generators reduce to zero, idempotent, linear") {
    auto r = make_ring(P, 4);
    Ideal I = twisted_cubic(r);
    for (auto& g : I.gens()) CHECK(I.normal_form(g).is_zero());

    std::mt19937_64 rng(2024);
    for (int i = 0; i < 100; ++i) {
        auto f = random_homog(r, 3, rng);
        auto g = random_homog(r, 3, rng);
        auto nf = I.normal_form(f);
        CHECK(I.normal_form(nf) == nf);
        CHECK(I.normal_form(f + g) == I.normal_form(f) + I.normal_form(g));
    }
}

TEST_CASE("elimination: graph of the identity and the Veronese conic") {
    // graph of identity on P^1: (x0 - y0, x1 - y1) in k[x0,x1,y0,y1]
    auto r = make_ring(P, 4);
    Ideal graph = ideal_from_strings(r, {"x0-x2", "x1-x3"});
    Ideal img = eliminate(graph, {0, 1});
    CHECK(img.is_zero());  // image is everything

    // graph of (s^2, st, t^2): y-block cut by the conic
    auto r5 = make_ring(P, 5);  // s, t, y0, y1, y2
    Ideal vgraph = ideal_from_strings(r5, {"x2-x0^2", "x3-x0*x1", "x4-x1^2"});
    Ideal conic = eliminate(vgraph, {0, 1});
    REQUIRE(conic.gens().size() == 1);
    CHECK(conic.gens()[0].monic() == parse_polynomial(r5, "x2*x4-x3^2").monic());
}

TEST_CASE("saturation removes irrelevant-supported junk") {
    auto r = make_ring(P, 2);
    Ideal I = ideal_from_strings(r, {"x0^2", "x0*x1"});
    Ideal S = saturate_irrelevant(I);
    Ideal expect = ideal_from_strings(r, {"x0"});
    CHECK(S.equals(expect));
    CHECK(saturate_irrelevant_exact(I).equals(expect));

    // saturation by an ideal, and its idempotence
    Ideal J = ideal_from_strings(r, {"x0", "x1"});
    Ideal S2 = saturate(I, J);
    CHECK(S2.equals(expect));
    CHECK(saturate(S2, J).equals(S2));

    // an embedded point away from the irrelevant ideal survives
    auto r3 = make_ring(P, 3);
    Ideal I3 = ideal_from_strings(r3, {"x0^2", "x0*x1"});
    CHECK(saturate_irrelevant(I3).equals(I3));
    // but saturating by the visible point removes it
    Ideal pt = ideal_from_strings(r3, {"x0", "x1"});
    CHECK(saturate(I3, pt).equals(ideal_from_strings(r3, {"x0"})));
}

TEST_CASE("quotient contains the expected residual") {
    auto r = make_ring(P, 3);
    std::mt19937_64 rng(5);
    // monomial fixtures: quotient(I ∩ K, K) ⊇ I
    for (int trial = 0; trial < 10; ++trial) {
        std::uniform_int_distribution<int> e(1, 2);
        Ideal I = Ideal(r, {parse_polynomial(r, "x0^" + std::to_string(e(rng))),
                            parse_polynomial(r, "x1^" + std::to_string(e(rng)))});
        Ideal K = Ideal(r, {parse_polynomial(r, "x1^" + std::to_string(e(rng))),
                            parse_polynomial(r, "x2^" + std::to_string(e(rng)))});
        Ideal Q = quotient(intersect(I, K), K);
        CHECK(Q.contains_ideal(I));
    }
}

TEST_CASE("ideal powers") {
    auto r = make_ring(P, 3);
    Ideal I = ideal_from_strings(r, {"x0", "x1"});
    CHECK(ideal_power(I, 1).equals(I));
    Ideal sq = ideal_power(I, 2);
    CHECK(sq.equals(ideal_from_strings(r, {"x0^2", "x0*x1", "x1^2"})));
    CHECK(ideal_power(I, 0).is_unit());
}

TEST_CASE("hilbert data of standard schemes") {
    auto r = make_ring(P, 4);

    // whole P^3
    Ideal zero(r, {});
    CHECK(zero.dimension() == 3);
    CHECK(zero.degree() == 1);

    // a quadric surface
    Ideal quad = ideal_from_strings(r, {"x0*x3-x1*x2"});
    CHECK(quad.dimension() == 2);
    CHECK(quad.degree() == 2);
    CHECK(quad.sectional_genus() == 0);
    CHECK(quad.euler_characteristic() == 1);

    // one point
    Ideal pt = ideal_from_strings(r, {"x0", "x1", "x2"});
    CHECK(pt.dimension() == 0);
    CHECK(pt.degree() == 1);

    // empty scheme
    Ideal empty = ideal_from_strings(r, {"x0", "x1", "x2", "x3"});
    CHECK(empty.dimension() == -1);
    CHECK(empty.degree() == 0);

    // genus on a non-surface errors out
    auto r2 = make_ring(P, 4);
    Ideal curve = twisted_cubic(r2);
    CHECK_THROWS_AS(curve.sectional_genus(), ContractViolation);
}

TEST_CASE("hilbert function agrees with brute-force linear algebra") {
    auto r = make_ring(P, 4);
    std::mt19937_64 rng(77);
    std::vector<Ideal> fixtures = {
        twisted_cubic(r),
        ideal_from_strings(r, {"x0*x3-x1*x2"}),
        ideal_from_strings(r, {"x0^2", "x0*x1", "x1^3"}),
        Ideal(r, {random_homog(r, 2, rng), random_homog(r, 3, rng)}),
    };
    for (auto& I : fixtures) {
        const auto& h = I.hilbert();
        for (int d = 0; d <= 6; ++d) {
            std::int64_t total = std::int64_t(monomials_of_degree(r, d).size());
            std::int64_t in_ideal = graded_piece_dim(I, d);
            // dim by explicit product matrices (the independent route)
            std::int64_t by_basis = std::int64_t(graded_piece_basis(I, d).size());
            CHECK(in_ideal == by_basis);
            CHECK(h.hilbert_function(d) == total - in_ideal);
        }
    }
}

TEST_CASE("graded pieces and minimal generators") {
    auto r = make_ring(P, 4);
    Ideal I = twisted_cubic(r);
    CHECK(graded_piece_dim(I, 2) == 3);
    auto mg = minimal_generators_by_degree(I);
    REQUIRE(mg.size() == 1);
    CHECK(mg[2] == 3);

    // a non-minimal presentation of the same ideal still reports 3 quadrics
    std::vector<Polynomial> gens = I.gens();
    gens.push_back(I.gens()[0] * Polynomial::variable(r, 3) -
                   I.gens()[1] * Polynomial::variable(r, 2));
    Ideal J(r, gens);
    auto mg2 = minimal_generators_by_degree(J);
    REQUIRE(mg2.count(2) == 1);
    CHECK(mg2[2] == 3);
    CHECK(mg2.count(3) == 0);
}

TEST_CASE("singular loci of quadrics") {
    auto r = make_ring(P, 4);
    Ideal smooth = ideal_from_strings(r, {"x0*x3-x1*x2"});
    auto rep = singular_locus_report(smooth);
    CHECK(rep.count == 0);
    CHECK(rep.certified);
    CHECK(node_count(smooth) == 0);

    Ideal cone = ideal_from_strings(r, {"x0*x2-x1^2"});
    auto crep = singular_locus_report(cone);
    CHECK(crep.count == 1);
    CHECK(crep.dimension == 0);
    CHECK(node_count(cone) == 1);

    Ideal sing = singular_locus(cone);
    Ideal vertex = ideal_from_strings(r, {"x0", "x1", "x2"});
    CHECK(sing.equals(vertex));
}

TEST_CASE("rational points of zero-dimensional schemes") {
    auto r = make_ring(P, 3);
    // three coordinate-ish points
    Ideal I = intersect(intersect(ideal_from_strings(r, {"x0", "x1"}),
                                  ideal_from_strings(r, {"x1", "x2"})),
                        ideal_from_strings(r, {"x0-x1", "x2-5*x1"}));
    CHECK(I.dimension() == 0);
    CHECK(I.degree() == 3);
    auto pts = rational_points(I, 9);
    REQUIRE(pts.size() == 3);
    for (auto& pt : pts)
        for (auto& g : I.gens()) CHECK(g.evaluate(pt) == 0);
}

TEST_CASE("degree by random slicing agrees on low-dimensional fixtures") {
    auto r = make_ring(P, 4);
    std::mt19937_64 rng(123);
    std::uniform_int_distribution<Coeff> dist(0, P - 1);
    std::vector<Ideal> fixtures = {twisted_cubic(r), ideal_from_strings(r, {"x0*x3-x1*x2"})};
    for (auto& I : fixtures) {
        int dim = I.dimension();
        for (int trial = 0; trial < 3; ++trial) {
            std::vector<Polynomial> cut = I.gens();
            for (int k = 0; k < dim; ++k) {
                std::vector<Term> ts;
                for (int v = 0; v < 4; ++v)
                    ts.push_back({Monomial::variable(4, v), dist(rng)});
                cut.push_back(Polynomial(r, ts));
            }
            Ideal sliced(r, cut);
            CHECK(sliced.dimension() == 0);
            CHECK(sliced.degree() == I.degree());
        }
    }
}
