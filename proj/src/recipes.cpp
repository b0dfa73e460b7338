#include "gmforge/recipes.hpp"

#include <algorithm>
#include <chrono>
#include <functional>

#include "gmforge/linalg.hpp"

namespace gmforge::recipes {

using arith::make_ring;
using arith::Monomial;
using arith::MonomialOrder;
using arith::PrimeField;
using arith::RingPtr;
using arith::Term;
using geom::linear_system;
using geom::random_point;
using ideals::graded_piece_dim;
using ideals::Ideal;
using report::CheckLine;
using report::Section;

namespace {

std::int64_t now_ms() {
    return std::chrono::duration_cast<std::chrono::milliseconds>(
               std::chrono::steady_clock::now().time_since_epoch())
        .count();
}

struct StageClock {
    Section& sec;
    std::int64_t start = now_ms();
    ~StageClock() { sec.elapsed_ms = now_ms() - start; }
};

std::string degrees_str(const std::map<int, int>& m) {
    std::string s = "{";
    bool first = true;
    for (auto& [d, c] : m) {
        if (!first) s += ", ";
        first = false;
        s += std::to_string(d) + ":" + std::to_string(c);
    }
    return s + "}";
}

// rows of point conditions for degree-d plane curves through the points
// (multiplicity 2 at the first point = vanishing first partials)
std::vector<Polynomial> plane_system(const RingPtr& plane,
                                     const std::vector<std::vector<Coeff>>& pts, int degree,
                                     int double_at_first) {
    auto monos = ideals::monomials_of_degree(plane, degree);
    linalg::Matrix rows;
    auto value_row = [&](const Polynomial& f, const std::vector<Coeff>& q) {
        (void)f;
        std::vector<Coeff> row;
        row.reserve(monos.size());
        for (auto& m : monos) row.push_back(Polynomial::monomial(plane, m).evaluate(q));
        return row;
    };
    for (std::size_t i = 0; i < pts.size(); ++i) {
        if (int(i) < double_at_first) {
            for (int v = 0; v < 3; ++v) {
                std::vector<Coeff> row;
                row.reserve(monos.size());
                for (auto& m : monos)
                    row.push_back(Polynomial::monomial(plane, m).derivative(v).evaluate(pts[i]));
                rows.push_back(std::move(row));
            }
        } else {
            rows.push_back(value_row(Polynomial::zero(plane), pts[i]));
        }
    }
    auto kernel = linalg::kernel_basis(std::move(rows), plane->field);
    std::vector<Polynomial> forms;
    for (auto& v : kernel) {
        std::vector<Term> ts;
        for (std::size_t c = 0; c < monos.size(); ++c)
            if (v[c]) ts.push_back({monos[c], v[c]});
        forms.push_back(Polynomial(plane, std::move(ts)));
    }
    return forms;
}

Polynomial random_member(const std::vector<Polynomial>& sys, Rng& rng) {
    Polynomial acc = Polynomial::zero(sys.at(0).ring());
    for (auto& f : sys) acc = acc + f.scaled(rng.field(f.ring()->field));
    if (acc.is_zero()) acc = sys[0];
    return acc;
}

}  // namespace

namespace {

// ---- stage builders, each returning nullopt when a draw was degenerate ----

std::optional<EdgeStage> try_edge(const SessionConfig& cfg, Rng& rng, Section& sec) {
    EdgeStage st;
    st.plane = make_ring(cfg.prime, 3);
    const PrimeField& F = st.plane->field;
    st.base_points.clear();
    for (int i = 0; i < 6; ++i) st.base_points.push_back(rng.vec(F, 3));

    st.quartics = plane_system(st.plane, st.base_points, 4, 1);
    if (st.quartics.size() != 7) return std::nullopt;
    sec.add(CheckLine::make("plane quartic system dimension", 7,
                            std::int64_t(st.quartics.size()), "derived"));

    // cross-check against the base-point ideal: I(q0)^2 meet the others
    Ideal bp = ideals::ideal_power(Ideal(st.plane, geom::point_forms(st.plane,
                                                                     st.base_points[0])),
                                   2);
    for (int i = 1; i < 6; ++i)
        bp = ideals::intersect(bp, Ideal(st.plane, geom::point_forms(st.plane,
                                                                     st.base_points[i])));
    sec.add(CheckLine::make("base-point ideal quartic piece", 7, graded_piece_dim(bp, 4),
                            "derived"));

    st.to_p6 = geom::make_map(Scheme::projective_space(st.plane), st.quartics);
    st.surface = geom::image(st.to_p6);
    if (st.surface.dim() != 2 || st.surface.degree() != 7) return std::nullopt;
    sec.add(CheckLine::make("surface degree", 7, st.surface.degree(), "reference"));
    sec.add(CheckLine::make("sectional genus", 2, st.surface.sectional_genus(), "reference"));
    auto gens = st.surface.generator_degrees();
    sec.add(CheckLine::make_str("generator degrees", "{2:8}", degrees_str(gens), "reference"));
    std::int64_t nodes = ideals::node_count(st.surface.ideal(), rng.raw());
    sec.add(CheckLine::make("node count", 0, nodes, "reference"));
    if (!sec.ok()) return std::nullopt;
    return st;
}

std::optional<NodalStage> try_nodal(const EdgeStage& edge, Rng& rng, Section& sec) {
    NodalStage st;
    st.center = geom::secant_point(edge.surface, rng);
    if (edge.surface.contains_point(st.center.coords)) return std::nullopt;
    auto center_forms = geom::point_forms(edge.surface.ring(), st.center.coords);
    st.surface = geom::project_from(edge.surface, center_forms);
    if (st.surface.dim() != 2 || st.surface.degree() != 7) return std::nullopt;

    // the composed plane -> P^5 parameterization
    std::vector<Polynomial> composed;
    for (auto& l : center_forms) composed.push_back(l.substitute(edge.to_p6.forms));
    st.plane_to_p5 = geom::make_map(Scheme::projective_space(edge.plane), composed);

    sec.add(CheckLine::make("surface degree", 7, st.surface.degree(), "direct"));
    sec.add(CheckLine::make("sectional genus", 2, st.surface.sectional_genus(), "reference"));
    auto gens = st.surface.generator_degrees();
    sec.add(CheckLine::make_str("generator degrees", "{2:2, 3:5}", degrees_str(gens),
                                "reference"));
    std::int64_t nodes = ideals::node_count(st.surface.ideal(), rng.raw());
    sec.add(CheckLine::make("node count", 1, nodes, "reference"));
    if (!sec.ok()) return std::nullopt;
    return st;
}

std::optional<ScrollStage> try_scroll(const EdgeStage& edge, const NodalStage& nodal, Rng& rng,
                                      Section& sec) {
    ScrollStage st;
    // a general plane cubic through the six base points
    auto cubics = plane_system(edge.plane, edge.base_points, 3, 0);
    if (cubics.size() != 4) return std::nullopt;
    sec.add(CheckLine::make("plane cubic system dimension", 4, std::int64_t(cubics.size()),
                            "derived"));
    Polynomial member = random_member(cubics, rng);
    Scheme plane_curve(Ideal(edge.plane, {member}), true);
    st.curve = geom::restrict_image(nodal.plane_to_p5, plane_curve);
    if (st.curve.dim() != 1 || st.curve.degree() != 5) return std::nullopt;
    sec.add(CheckLine::make("curve degree", 5, st.curve.degree(), "reference"));
    sec.add(CheckLine::make("curve arithmetic genus", 1, st.curve.arithmetic_genus(),
                            "reference"));
    std::int64_t span_forms = graded_piece_dim(st.curve.ideal(), 1);
    sec.add(CheckLine::make("linear forms through the curve", 1, span_forms, "derived"));
    bool on_surface = st.curve.ideal().contains_ideal(nodal.surface.ideal());
    sec.add(CheckLine::make("curve lies on the surface", 1, on_surface ? 1 : 0, "direct"));
    if (!sec.ok()) return std::nullopt;

    // quadrics through the curve inside its span: 11 total, 5 modulo the span
    const RingPtr& r5 = st.curve.ring();
    sec.add(CheckLine::make("quadrics through the curve", 11,
                            graded_piece_dim(st.curve.ideal(), 2), "derived"));
    auto span_form = ideals::graded_piece_basis(st.curve.ideal(), 1).at(0);
    Scheme span(Ideal(r5, {span_form}), true);
    auto span_quadrics = linear_system(span, st.curve.ideal(), 2, 1);
    sec.add(CheckLine::make("quadrics modulo the span", 5, std::int64_t(span_quadrics.size()),
                            "derived"));
    if (!sec.ok()) return std::nullopt;

    // the scroll is linked to a plane inside a (2,2) section of the span:
    // take the plane through three points of the curve, then the pencil of
    // quadrics through plane and curve together
    const arith::PrimeField& F = r5->field;
    std::vector<std::vector<Coeff>> tri;
    for (int attempt = 0; attempt < 12 && tri.size() < 3; ++attempt) {
        auto pt = random_point(st.curve, rng).coords;
        bool dup = false;
        for (auto& q : tri) dup = dup || q == pt;
        if (!dup) tri.push_back(pt);
    }
    if (tri.size() < 3) return std::nullopt;
    linalg::Matrix trimat(3, std::vector<Coeff>(r5->nvars));
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < r5->nvars; ++j) trimat[i][j] = tri[i][j];
    if (linalg::rank(trimat, F) != 3) return std::nullopt;  // collinear draw
    auto plane_basis = linalg::kernel_basis(trimat, F);
    std::vector<Polynomial> plane_forms;
    for (auto& v : plane_basis) {
        std::vector<Term> ts;
        for (int j = 0; j < r5->nvars; ++j)
            if (v[j]) ts.push_back({Monomial::variable(r5->nvars, j), v[j]});
        plane_forms.push_back(Polynomial(r5, std::move(ts)));
    }
    Ideal plane_ideal(r5, plane_forms);
    Ideal through_both = ideals::intersect(plane_ideal, st.curve.ideal());
    auto pencil = linear_system(span, through_both, 2, 1);
    sec.add(CheckLine::make("quadrics through plane and curve", 2,
                            std::int64_t(pencil.size()), "derived"));
    if (pencil.size() != 2) return std::nullopt;
    Ideal complete_intersection(r5, {span_form, pencil[0], pencil[1]});
    Ideal scroll_ideal = ideals::saturate_irrelevant(
        ideals::quotient(complete_intersection, plane_ideal), rng.raw());
    st.scroll = Scheme(scroll_ideal, true);
    if (st.scroll.dim() != 2 || st.scroll.degree() != 3) return std::nullopt;
    sec.add(CheckLine::make("scroll degree (Bezout residual 2*2-1)", 3, st.scroll.degree(),
                            "derived"));
    bool curve_on_scroll = st.curve.ideal().contains_ideal(st.scroll.ideal());
    sec.add(CheckLine::make("curve lies on the scroll", 1, curve_on_scroll ? 1 : 0, "direct"));
    std::int64_t nodes = ideals::node_count(st.scroll.ideal(), rng.raw());
    sec.add(CheckLine::make("scroll node count", 0, nodes, "reference"));

    // the scroll must cut the nodal surface exactly along the curve
    std::vector<Polynomial> meet = st.scroll.ideal().gens();
    for (auto& g : nodal.surface.ideal().gens()) meet.push_back(g);
    Ideal meet_ideal(r5, std::move(meet));
    bool curve_inside = st.curve.ideal().contains_ideal(meet_ideal);
    sec.add(CheckLine::make("curve inside scroll-and-surface", 1, curve_inside ? 1 : 0,
                            "direct"));
    sec.add(CheckLine::make("scroll-meets-surface dimension", 1,
                            meet_ideal.dimension(), "derived"));
    sec.add(CheckLine::make("scroll-meets-surface degree", 5, meet_ideal.degree(), "derived"));
    if (!sec.ok()) return std::nullopt;
    return st;
}

std::optional<SempleStage> try_semple(const ScrollStage& scroll, Rng& rng, Section& sec) {
    SempleStage st;
    const RingPtr& r5 = scroll.scroll.ring();
    Scheme p5 = Scheme::projective_space(r5);
    auto quadrics = linear_system(p5, scroll.scroll.ideal(), 2, 1);
    sec.add(CheckLine::make("quadrics through the scroll", 9, std::int64_t(quadrics.size()),
                            "derived"));
    if (quadrics.size() != 9) return std::nullopt;
    st.map = geom::make_map(p5, quadrics);
    st.image = geom::image(st.map);
    sec.add(CheckLine::make("image dimension", 5, st.image.dim(), "reference"));
    sec.add(CheckLine::make("image degree", 5, st.image.degree(), "reference"));
    auto gens = st.image.generator_degrees();
    sec.add(CheckLine::make_str("image generator degrees", "{2:5}", degrees_str(gens),
                                "reference"));
    std::int64_t mdeg = geom::map_degree(st.map, rng);
    sec.add(CheckLine::make("map degree", 1, mdeg, "reference"));
    Scheme bl = geom::base_locus(st.map);
    sec.add(CheckLine::make("base locus equals the scroll", 1,
                            bl.ideal().equals(scroll.scroll.ideal()) ? 1 : 0, "derived"));
    if (!sec.ok()) return std::nullopt;
    return st;
}

std::optional<TSurfaceStage> try_tsurface(const NodalStage& nodal, const SempleStage& semple,
                                          Rng& rng, Section& sec) {
    TSurfaceStage st;
    st.surface = geom::restrict_image(semple.map, nodal.surface);
    sec.add(CheckLine::make("surface degree", 11, st.surface.degree(), "reference"));
    sec.add(CheckLine::make("sectional genus", 3, st.surface.sectional_genus(), "reference"));
    auto gens = st.surface.generator_degrees();
    sec.add(CheckLine::make_str("generator degrees", "{2:16}", degrees_str(gens), "reference"));
    bool inside = st.surface.ideal().contains_ideal(semple.image.ideal());
    sec.add(CheckLine::make("surface lies on the fivefold", 1, inside ? 1 : 0, "direct"));
    auto rel = linear_system(semple.image, st.surface.ideal(), 2, 1);
    sec.add(CheckLine::make("relative quadric system", 11, std::int64_t(rel.size()),
                            "reference"));
    st.nodes = ideals::node_count(st.surface.ideal(), rng.raw());
    sec.add(CheckLine::make("node count", 1, st.nodes, "reference"));
    if (!sec.ok()) return std::nullopt;
    return st;
}

std::optional<FourfoldStage> try_fourfold(const SessionConfig& cfg, const SempleStage& semple,
                                          const TSurfaceStage& tsurf, Rng& rng, Section& sec) {
    FourfoldStage st;
    auto rel = linear_system(semple.image, tsurf.surface.ideal(), 2, 1);
    if (rel.empty()) return std::nullopt;
    Polynomial cut = random_member(rel, rng);
    std::vector<Polynomial> gens = semple.image.ideal().gens();
    gens.push_back(cut);
    st.fourfold = Scheme(Ideal(semple.image.ring(), std::move(gens)));
    sec.add(CheckLine::make("fourfold dimension", 4, st.fourfold.dim(), "reference"));
    sec.add(CheckLine::make("fourfold degree", 10, st.fourfold.degree(), "reference"));
    bool contains = st.fourfold.contains_scheme(tsurf.surface);
    sec.add(CheckLine::make("fourfold contains the surface", 1, contains ? 1 : 0, "direct"));
    if (cfg.check_smooth) {
        std::int64_t nodes = ideals::node_count(st.fourfold.ideal(), rng.raw());
        sec.add(CheckLine::make("fourfold node count", 0, nodes, "reference"));
    }

    gmtheory::SurfaceNumerics nums;
    nums.deg = tsurf.surface.degree();
    nums.genus = tsurf.surface.sectional_genus();
    nums.chi = 1;  // rational surface
    nums.k2 = 3;   // reference value for this family
    nums.delta = tsurf.nodes;
    nums.a = 7;  // reference class coordinates
    nums.b = 4;
    st.record = gmtheory::classify(nums);
    sec.add(CheckLine::make("surface self-intersection", 19, st.record.self_int, "reference"));
    sec.add(CheckLine::make("discriminant", 26, st.record.disc, "reference"));
    sec.add(CheckLine::make_str("component", "26''",
                                gmtheory::locus_str(st.record.disc, st.record.label),
                                "reference"));
    if (!sec.ok()) return std::nullopt;
    return st;
}

template <typename Stage, typename Fn>
bool run_stage(Pipeline& p, const std::string& name, std::optional<Stage>& slot, Fn&& builder,
               int retries = 4) {
    for (int attempt = 0; attempt < retries; ++attempt) {
        Section sec;
        sec.name = attempt == 0 ? name : name + " (retry " + std::to_string(attempt) + ")";
        std::optional<Stage> st;
        {
            StageClock clock{sec};
            st = builder(sec);
        }
        if (st) {
            p.rep.sections.push_back(std::move(sec));
            slot = std::move(st);
            return true;
        }
        if (attempt + 1 == retries) {
            sec.add(CheckLine::make("stage completed", 1, 0, "direct"));
            p.rep.sections.push_back(std::move(sec));
            return false;
        }
    }
    return false;
}

}  // namespace

Pipeline run_pipeline(const SessionConfig& config, const std::string& last) {
    Pipeline p;
    p.config = config;
    p.rep.command = "recipe " + last;
    p.rep.prime = config.prime;
    p.rep.seed = config.seed;
    p.rep.tier = config.tier == SessionConfig::Tier::Stretch ? "stretch" : "core";
    Rng rng(config.seed);

    auto order = {std::string("edge"),   std::string("nodal"),     std::string("scroll"),
                  std::string("semple"), std::string("t-surface"), std::string("gm4")};
    bool valid = last == "all";
    for (auto& s : order) valid = valid || s == last;
    if (!valid) throw StructuralError("unknown pipeline stage: " + last);
    auto wants = [&](const std::string& stage) {
        if (last == "all") return true;
        for (auto& s : order) {
            if (s == stage) return true;
            if (s == last) break;
        }
        return false;
    };

    if (!run_stage(p, "edge surface in P^6", p.edge,
                   [&](Section& sec) { return try_edge(config, rng, sec); }))
        return p;
    if (!wants("nodal")) return p;
    if (!run_stage(p, "nodal projection to P^5", p.nodal,
                   [&](Section& sec) { return try_nodal(*p.edge, rng, sec); }))
        return p;
    if (!wants("scroll")) return p;
    if (!run_stage(p, "quintic curve and cubic scroll", p.scroll,
                   [&](Section& sec) { return try_scroll(*p.edge, *p.nodal, rng, sec); }))
        return p;
    if (!wants("semple")) return p;
    if (!run_stage(p, "quadrics through the scroll", p.semple,
                   [&](Section& sec) { return try_semple(*p.scroll, rng, sec); }))
        return p;
    if (!wants("t-surface")) return p;
    if (!run_stage(p, "surface of degree 11 on the fivefold", p.tsurface,
                   [&](Section& sec) { return try_tsurface(*p.nodal, *p.semple, rng, sec); }))
        return p;
    if (!wants("gm4")) return p;
    run_stage(p, "quadratic section and its numbers", p.fourfold,
              [&](Section& sec) { return try_fourfold(config, *p.semple, *p.tsurface, rng, sec); });
    return p;
}

// ---- congruence counting ---------------------------------------------------

CongruenceCensus lines_through_point(const Scheme& V, const PointP& q, Rng& rng) {
    const RingPtr& r = V.ring();
    const PrimeField& F = r->field;
    const int n = r->nvars;
    if (!V.contains_point(q.coords)) throw StructuralError("census point is not on the variety");

    CongruenceCensus census;
    census.point = q.coords;

    // substitute x_i -> s q_i + t v_i and read off coefficients of s^a t^b
    RingPtr big = make_ring(F.p(), n + 2);  // v_0..v_{n-1}, s, t
    std::vector<Polynomial> images;
    for (int i = 0; i < n; ++i) {
        // x_i -> q_i * s + v_i * t
        std::vector<Term> ts;
        if (F.reduce(q.coords[i]))
            ts.push_back({Monomial::variable(n + 2, n), F.reduce(q.coords[i])});
        ts.push_back(
            {Monomial::variable(n + 2, n + 1).mul(Monomial::variable(n + 2, i)), 1});
        images.push_back(Polynomial(big, std::move(ts)));
    }
    RingPtr vring = make_ring(F.p(), n);
    std::vector<Polynomial> conditions;
    for (auto& g : V.ideal().gens()) {
        Polynomial lifted = g.substitute(images);
        // bucket terms by the exponent of t
        std::map<int, std::vector<Term>> buckets;
        for (auto& t : lifted.terms()) {
            int tb = t.mono.exponent(n + 1);
            std::vector<std::uint8_t> e(n, 0);
            for (int i = 0; i < n; ++i) e[i] = t.mono.exponent(i);
            buckets[tb].push_back({Monomial(std::move(e)), t.c});
        }
        for (auto& [tb, ts] : buckets) {
            if (tb == 0) continue;  // the constant bucket is g(q) = 0
            Polynomial c(vring, std::move(ts));
            if (!c.is_zero()) conditions.push_back(std::move(c));
        }
    }
    // one representative direction per line: a hyperplane missing q
    Polynomial slice = Polynomial::zero(vring);
    while (true) {
        auto h = rng.vec(F, n);
        Coeff at_q = 0;
        for (int i = 0; i < n; ++i) at_q = F.add(at_q, F.mul(h[i], F.reduce(q.coords[i])));
        if (at_q == 0) continue;
        std::vector<Term> ts;
        for (int i = 0; i < n; ++i)
            if (h[i]) ts.push_back({Monomial::variable(n, i), h[i]});
        slice = Polynomial(vring, std::move(ts));
        break;
    }
    conditions.push_back(slice);
    Ideal line_scheme(vring, std::move(conditions));
    if (line_scheme.dimension() > 0)
        throw ContractViolation("the family of lines through the point is not finite");
    census.total = line_scheme.dimension() < 0 ? 0 : line_scheme.degree();
    census.rational_lines = ideals::rational_points(line_scheme, rng.raw());
    return census;
}

void classify_congruence(CongruenceCensus& census, const RationalMap& f, const Scheme& S,
                         Rng& rng) {
    const RingPtr& src = f.source.ring();
    const PrimeField& F = src->field;
    census.classified.clear();
    std::int64_t classified_mass = 0;

    Ideal base(src, [&] {
        std::vector<Polynomial> bg = f.source.ideal().gens();
        for (auto& g : f.forms) bg.push_back(g);
        return bg;
    }());

    for (auto& v : census.rational_lines) {
        // linear forms on the target vanishing on the line through (q, v)
        linalg::Matrix rows(2, std::vector<Coeff>(f.forms.size()));
        for (std::size_t j = 0; j < f.forms.size(); ++j) {
            rows[0][j] = F.reduce(census.point[j]);
            rows[1][j] = F.reduce(v[j]);
        }
        auto kern = linalg::kernel_basis(rows, F);
        std::vector<Polynomial> pulled = f.source.ideal().gens();
        for (auto& cov : kern) {
            Polynomial acc = Polynomial::zero(src);
            for (std::size_t j = 0; j < f.forms.size(); ++j)
                if (cov[j]) acc = acc + f.forms[j].scaled(cov[j]);
            if (!acc.is_zero()) pulled.push_back(std::move(acc));
        }
        Ideal curve = geom::saturate_general(Ideal(src, std::move(pulled)), base, rng);
        if (curve.dimension() != 1) continue;  // left unclassified
        std::int64_t e = curve.degree();
        std::vector<Polynomial> meet = curve.gens();
        for (auto& g : S.ideal().gens()) meet.push_back(g);
        Ideal sec_ideal(src, std::move(meet));
        std::int64_t secancy = sec_ideal.dimension() == 0 ? sec_ideal.degree() : 0;
        bool found = false;
        for (auto& entry : census.classified)
            if (entry.curve_degree == e && entry.secancy == secancy) {
                ++entry.multiplicity;
                found = true;
            }
        if (!found) census.classified.push_back({e, secancy, 1});
        ++classified_mass;
    }
    std::sort(census.classified.begin(), census.classified.end(),
              [](const CongruenceEntry& a, const CongruenceEntry& b) {
                  return a.curve_degree < b.curve_degree;
              });
    census.unclassified = census.total - classified_mass;
}

Scheme image_by_quadrics(const RationalMap& f) {
    const RingPtr& src = f.source.ring();
    const PrimeField& F = src->field;
    const int m = int(f.forms.size());
    RingPtr tgt = make_ring(F.p(), m);
    const auto& gb = f.source.ideal().groebner();

    auto target_monos = ideals::monomials_of_degree(tgt, 2);
    int xdeg = 2 * int(f.form_degree());
    auto xmonos = ideals::monomials_of_degree(src, xdeg);
    std::map<Monomial, int, std::function<bool(const Monomial&, const Monomial&)>> index(
        [&](const Monomial& a, const Monomial& b) { return arith::cmp(src->order, a, b) > 0; });
    for (std::size_t i = 0; i < xmonos.size(); ++i) index.emplace(xmonos[i], int(i));

    linalg::Matrix cols;  // one row per target monomial; transposed below
    for (auto& tm : target_monos) {
        Polynomial prod = Polynomial::constant(src, 1);
        for (int j = 0; j < m; ++j)
            for (int rep = 0; rep < tm.exponent(j); ++rep) prod = prod * f.forms[j];
        Polynomial nf = gb.normal_form(prod);
        std::vector<Coeff> row(xmonos.size(), 0);
        for (auto& t : nf.terms()) row[index.at(t.mono)] = t.c;
        cols.push_back(std::move(row));
    }
    // kernel of the transpose: combinations of target monomials reducing to 0
    linalg::Matrix mat(xmonos.size(), std::vector<Coeff>(target_monos.size(), 0));
    for (std::size_t c = 0; c < cols.size(); ++c)
        for (std::size_t r = 0; r < xmonos.size(); ++r) mat[r][c] = cols[c][r];
    auto kern = linalg::kernel_basis(std::move(mat), F);
    std::vector<Polynomial> quadrics;
    for (auto& v : kern) {
        std::vector<Term> ts;
        for (std::size_t c = 0; c < target_monos.size(); ++c)
            if (v[c]) ts.push_back({target_monos[c], v[c]});
        quadrics.push_back(Polynomial(tgt, std::move(ts)));
    }
    return Scheme(Ideal(tgt, std::move(quadrics)), true);
}

}  // namespace gmforge::recipes
