#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "gmforge/geom.hpp"
#include "gmforge/grass.hpp"

using namespace gmforge;
using namespace gmforge::arith;
using namespace gmforge::geom;
using gmforge::ideals::Ideal;
using gmforge::ideals::ideal_from_strings;

namespace {
constexpr Coeff P = 31991;

Scheme twisted_cubic() {
    auto r = make_ring(P, 4);
    return Scheme(ideal_from_strings(r, {"x0*x2-x1^2", "x0*x3-x1*x2", "x1*x3-x2^2"}), true);
}

RationalMap veronese_p1() {
    auto r = make_ring(P, 2);
    Scheme p1 = Scheme::projective_space(r);
    return make_map(p1, {parse_polynomial(r, "x0^2"), parse_polynomial(r, "x0*x1"),
                         parse_polynomial(r, "x1^2")});
}

}  // namespace

TEST_CASE("random points satisfy their schemes") {
    Rng rng(42);
    auto r = make_ring(P, 3);
    Scheme p2 = Scheme::projective_space(r);
    PointP p = random_point(p2, rng);
    CHECK(p2.contains_point(p.coords));
    CHECK(p.coords.size() == 3);

    Scheme tc = twisted_cubic();
    for (int i = 0; i < 5; ++i) {
        PointP q = random_point(tc, rng);
        CHECK(tc.contains_point(q.coords));
    }
}

TEST_CASE("identity map has image P^2") {
    Rng rng(7);
    auto r = make_ring(P, 3);
    Scheme p2 = Scheme::projective_space(r);
    RationalMap id = make_map(p2, {Polynomial::variable(r, 0), Polynomial::variable(r, 1),
                                   Polynomial::variable(r, 2)});
    Scheme img = image(id);
    CHECK(img.dim() == 2);
    CHECK(img.degree() == 1);
    CHECK(img.ideal().is_zero());
    CHECK(map_degree(id, rng) == 1);
    CHECK(base_locus(id).is_empty());

    auto pd = projective_degrees(id, rng);
    CHECK(pd == std::vector<std::int64_t>{1, 1, 1});
}

TEST_CASE("veronese conic") {
    Rng rng(11);
    RationalMap v = veronese_p1();
    Scheme img = image(v);
    CHECK(img.dim() == 1);
    CHECK(img.degree() == 2);
    auto gens = img.generator_degrees();
    CHECK(gens[2] == 1);
    CHECK(map_degree(v, rng) == 1);
    CHECK(is_birational_onto_image(v, rng));
    CHECK(base_locus(v).is_empty());
    auto pd = projective_degrees(v, rng);
    CHECK(pd == std::vector<std::int64_t>{1, 2});

    // image membership at random points
    for (int i = 0; i < 10; ++i) {
        PointP s = random_point(v.source, rng);
        auto y = v.apply(s.coords);
        REQUIRE(!y.empty());
        CHECK(img.contains_point(y));
    }
}

TEST_CASE("restriction of the identity returns the subscheme") {
    auto r = make_ring(P, 4);
    Scheme p3 = Scheme::projective_space(r);
    RationalMap id = make_map(p3, {Polynomial::variable(r, 0), Polynomial::variable(r, 1),
                                   Polynomial::variable(r, 2), Polynomial::variable(r, 3)});
    Scheme tc = twisted_cubic();
    Scheme img = restrict_image(id, tc);
    CHECK(img.dim() == 1);
    CHECK(img.degree() == 3);
    CHECK(img.ideal().gens().size() == 3);
}

TEST_CASE("double cover of P^1 has map degree two") {
    Rng rng(13);
    auto r = make_ring(P, 2);
    Scheme p1 = Scheme::projective_space(r);
    RationalMap sq = make_map(p1, {parse_polynomial(r, "x0^2"), parse_polynomial(r, "x1^2")});
    CHECK(map_degree(sq, rng) == 2);
    CHECK_FALSE(is_birational_onto_image(sq, rng));
}

TEST_CASE("fiber of a projection of P^2 at a general point") {
    Rng rng(17);
    auto r = make_ring(P, 3);
    Scheme p2 = Scheme::projective_space(r);
    RationalMap proj = make_map(p2, {Polynomial::variable(r, 0), Polynomial::variable(r, 1)});
    // base locus is the center (0:0:1)
    Scheme bl = base_locus(proj);
    CHECK(bl.dim() == 0);
    CHECK(bl.degree() == 1);
    Scheme f = fiber(proj, {1, rng.field(r->field)}, rng);
    CHECK(f.dim() == 1);  // a line through the center, base point removed? no:
    // the fiber of the projection P^2 -> P^1 is a line; saturating by the
    // base point does not change a reduced line through it
    CHECK(f.degree() == 1);
}

TEST_CASE("projections of curves") {
    Rng rng(19);
    Scheme tc = twisted_cubic();
    auto r = tc.ring();

    // from a point on the curve: a conic
    PointP on = random_point(tc, rng);
    Scheme conic = project_from(tc, point_forms(r, on.coords));
    CHECK(conic.dim() == 1);
    CHECK(conic.degree() == 2);

    // from a general point off the curve: a nodal plane cubic
    std::vector<Coeff> off;
    while (off.empty()) {
        auto cand = rng.vec(r->field, 4);
        if (!tc.contains_point(cand)) off = cand;
    }
    Scheme cubic = project_from(tc, point_forms(r, off));
    CHECK(cubic.dim() == 1);
    CHECK(cubic.degree() == 3);
    CHECK(ideals::node_count(cubic.ideal()) == 1);

    // degree preserved from an external center, dropped from an internal one
    CHECK(conic.degree() == tc.degree() - 1);
    CHECK(cubic.degree() == tc.degree());
}

TEST_CASE("secant points are collinear and off the scheme") {
    Rng rng(23);
    auto r = make_ring(P, 3);
    Scheme conic(ideal_from_strings(r, {"x0*x2-x1^2"}), true);
    PointP s = secant_point(conic, rng);
    // a general secant point of a conic is not on it
    CHECK_FALSE(conic.contains_point(s.coords));
}

TEST_CASE("cones and linear sections") {
    Rng rng(29);
    auto r = make_ring(P, 3);
    Scheme conic(ideal_from_strings(r, {"x0*x2-x1^2"}), true);
    Scheme cone = cone_over(conic);
    CHECK(cone.dim() == 2);
    CHECK(cone.degree() == 2);
    auto rep = ideals::singular_locus_report(cone.ideal());
    CHECK(rep.count == 1);  // the vertex

    // explicit vertex
    std::vector<Coeff> v = {1, 2, 3, 4};
    Scheme cone2 = cone_over(conic, v);
    CHECK(cone2.dim() == 2);
    CHECK(cone2.degree() == 2);
    Ideal sing = ideals::singular_locus(cone2.ideal());
    CHECK(sing.dimension() == 0);
    for (auto& g : sing.gens()) CHECK(g.evaluate(v) == 0);

    Scheme section = linear_section(cone, 1, rng);
    CHECK(section.dim() == 1);
    CHECK(section.degree() == 2);

    // G(1,4) sections: the fivefold and the fourfold keep degree 5
    grass::PlueckerIndex ix(4);
    auto rg = make_ring(P, ix.nvars());
    Scheme g14(grass::pluecker_ideal(rg, 4), true);
    Scheme y5 = linear_section(g14, 1, rng);
    CHECK(y5.dim() == 5);
    CHECK(y5.degree() == 5);
    Scheme y0 = linear_section(g14, 2, rng);
    CHECK(y0.dim() == 4);
    CHECK(y0.degree() == 5);
}

TEST_CASE("linear systems") {
    Rng rng(31);
    auto r = make_ring(P, 3);
    Scheme p2 = Scheme::projective_space(r);
    // lines through one point: a pencil
    Ideal pt = ideal_from_strings(r, {"x0", "x1"});
    auto pencil = linear_system(p2, pt, 1, 1);
    CHECK(pencil.size() == 2);

    // conics double at a point: x0^2, x0x1, x1^2
    auto dbl = linear_system(p2, pt, 2, 2);
    CHECK(dbl.size() == 3);

    // plane quartics, simple and double base point
    CHECK(linear_system(p2, pt, 4, 1).size() == 14);  // 15 - 1
    CHECK(linear_system(p2, pt, 4, 2).size() == 12);  // 15 - 3
}

TEST_CASE("base locus is stable under rescaling the forms") {
    auto r = make_ring(P, 3);
    Scheme p2 = Scheme::projective_space(r);
    std::vector<Polynomial> forms = {parse_polynomial(r, "x0*x1"), parse_polynomial(r, "x0*x2")};
    RationalMap f1 = make_map(p2, forms);
    RationalMap f2 = make_map(p2, {forms[0].scaled(17), forms[1].scaled(23)});
    CHECK(base_locus(f1).ideal().equals(base_locus(f2).ideal()));
}

TEST_CASE("dimension bookkeeping: source = image + generic fiber") {
    Rng rng(37);
    auto r = make_ring(P, 3);
    Scheme p2 = Scheme::projective_space(r);
    RationalMap proj = make_map(p2, {Polynomial::variable(r, 0), Polynomial::variable(r, 1)});
    Scheme img = image(proj);
    for (int i = 0; i < 3; ++i) {
        PointP s = random_point(p2, rng);
        auto y = proj.apply(s.coords);
        if (y.empty()) continue;
        Scheme f = fiber(proj, y, rng);
        CHECK(img.dim() + f.dim() == p2.dim());
    }
}
