#include "gmforge/geom.hpp"

#include <algorithm>
#include <functional>
#include <map>

#include "gmforge/linalg.hpp"

namespace gmforge::geom {

using arith::make_ring;
using arith::Monomial;
using arith::MonomialOrder;
using arith::PrimeField;
using arith::Term;
using ideals::GroebnerBasis;

PointP PointP::normalized(const PrimeField& F, std::vector<Coeff> v) {
    int last = -1;
    for (int i = int(v.size()) - 1; i >= 0; --i)
        if (F.reduce(v[i]) != 0) {
            last = i;
            break;
        }
    if (last < 0) throw StructuralError("zero vector is not a projective point");
    Coeff inv = F.inv(F.reduce(v[last]));
    for (auto& x : v) x = F.mul(F.reduce(x), inv);
    return PointP{std::move(v)};
}

Scheme::Scheme(Ideal I, bool assume_saturated)
    : ring_(I.ring()), ideal_(std::move(I)), assume_saturated_(assume_saturated) {
    if (!ideal_.is_homogeneous())
        throw StructuralError("schemes are cut out by homogeneous ideals");
}

Scheme Scheme::projective_space(const RingPtr& r) { return Scheme(Ideal(r, {}), true); }

Scheme::Scheme(const Scheme& o) : ring_(o.ring_), ideal_(o.ideal_) {
    std::lock_guard<std::mutex> lk(o.mu_);
    saturated_ = o.saturated_;
    assume_saturated_ = o.assume_saturated_;
}

Scheme& Scheme::operator=(const Scheme& o) {
    if (this == &o) return *this;
    std::scoped_lock lk(mu_, o.mu_);
    ring_ = o.ring_;
    ideal_ = o.ideal_;
    saturated_ = o.saturated_;
    assume_saturated_ = o.assume_saturated_;
    return *this;
}

const Ideal& Scheme::ideal() const {
    if (assume_saturated_ || ideal_.is_zero()) return ideal_;
    std::lock_guard<std::mutex> lk(mu_);
    if (!saturated_) saturated_ = ideals::saturate_irrelevant(ideal_);
    return *saturated_;
}

bool Scheme::contains_point(const std::vector<Coeff>& pt) const {
    for (auto& g : raw_ideal().gens())
        if (g.evaluate(pt) != 0) return false;
    return true;
}

bool Scheme::contains_scheme(const Scheme& sub) const {
    return sub.ideal().contains_ideal(ideal());
}

std::uint32_t RationalMap::form_degree() const {
    for (auto& f : forms)
        if (!f.is_zero()) return *f.homogeneous_degree();
    throw DegenerateMapError("all forms are zero");
}

std::vector<Coeff> RationalMap::apply(const std::vector<Coeff>& pt) const {
    std::vector<Coeff> out;
    out.reserve(forms.size());
    bool nonzero = false;
    for (auto& f : forms) {
        out.push_back(f.evaluate(pt));
        nonzero |= (out.back() != 0);
    }
    if (!nonzero) return {};
    return out;
}

RationalMap make_map(const Scheme& X, std::vector<Polynomial> forms) {
    if (forms.empty()) throw DegenerateMapError("a map needs at least one form");
    std::optional<std::uint32_t> deg;
    bool any_nonzero = false;
    for (auto& f : forms) {
        if (f.is_zero()) continue;
        any_nonzero = true;
        auto d = f.homogeneous_degree();
        if (!d) throw StructuralError("map forms must be homogeneous");
        if (deg && *deg != *d) throw StructuralError("map forms must share one degree");
        deg = d;
    }
    if (!any_nonzero) throw DegenerateMapError("all forms are zero");
    // rejects maps whose forms all lie in the source ideal; component-wise
    // vanishing surfaces later as degenerate fibers
    bool all_in = true;
    for (auto& f : forms) all_in = all_in && X.ideal().contains(f);
    if (all_in) throw DegenerateMapError("every form vanishes on the source");
    return RationalMap{X, std::move(forms)};
}

namespace {

// graph ring: source variables first (eliminated), then target variables
struct Graph {
    RingPtr ring;
    int nsrc, ntgt;

    Graph(const RingPtr& src, int ntgt_) : nsrc(src->nvars), ntgt(ntgt_) {
        ring = make_ring(src->field.p(), nsrc + ntgt, MonomialOrder::eliminate_first(nsrc));
    }
    Polynomial lift_source(const Polynomial& f) const {
        std::vector<Term> ts;
        for (auto& t : f.terms()) {
            std::vector<std::uint8_t> e(nsrc + ntgt, 0);
            for (int i = 0; i < nsrc; ++i) e[i] = t.mono.exponent(i);
            ts.push_back({Monomial(std::move(e)), t.c});
        }
        return Polynomial(ring, std::move(ts));
    }
    Polynomial target_var(int j) const { return Polynomial::variable(ring, nsrc + j); }
};

Scheme image_of(const Scheme& X, const Ideal& source_ideal,
                const std::vector<Polynomial>& forms) {
    Graph g(X.ring(), int(forms.size()));
    std::vector<Polynomial> gens;
    for (auto& f : source_ideal.gens()) gens.push_back(g.lift_source(f));
    for (std::size_t j = 0; j < forms.size(); ++j)
        gens.push_back(g.target_var(int(j)) - g.lift_source(forms[j]));
    Ideal graph_ideal(g.ring, std::move(gens));
    Ideal elim = ideals::eliminate(graph_ideal, [&] {
        std::vector<int> kill(g.nsrc);
        for (int i = 0; i < g.nsrc; ++i) kill[i] = i;
        return kill;
    }());
    std::vector<int> keep(g.ntgt);
    for (int j = 0; j < g.ntgt; ++j) keep[j] = g.nsrc + j;
    Ideal target = ideals::contract_to_variables(elim, keep);
    // kernels of maps out of integral sources are saturated already
    return Scheme(std::move(target), true);
}

}  // namespace

Scheme image(const RationalMap& f) { return image_of(f.source, f.source.ideal(), f.forms); }

Scheme restrict_image(const RationalMap& f, const Scheme& sub) {
    if (!f.source.contains_scheme(sub))
        throw StructuralError("restriction target is not inside the source");
    return image_of(f.source, sub.ideal(), f.forms);
}

Scheme base_locus(const RationalMap& f) {
    std::vector<Polynomial> gens = f.source.ideal().gens();
    for (auto& g : f.forms) gens.push_back(g);
    return Scheme(Ideal(f.source.ring(), std::move(gens)));
}

Ideal saturate_general(const Ideal& I, const Ideal& J, Rng& rng) {
    if (J.is_zero()) throw StructuralError("saturation by the zero ideal");
    auto combo = [&]() {
        Polynomial acc = Polynomial::zero(I.ring());
        for (auto& g : J.gens()) acc = acc + g.scaled(rng.field_nonzero(I.ring()->field));
        return acc;
    };
    Ideal a = ideals::saturate_single(I, combo());
    Ideal b = ideals::saturate_single(I, combo());
    if (a.equals(b)) return a;
    return ideals::saturate(I, J);
}

Scheme fiber(const RationalMap& f, const std::vector<Coeff>& q, Rng& rng) {
    const RingPtr& r = f.source.ring();
    if (int(q.size()) != f.target_dim() + 1)
        throw StructuralError("fiber point has wrong coordinate length");
    const PrimeField& F = r->field;
    std::vector<Polynomial> gens = f.source.ideal().gens();
    for (std::size_t i = 0; i < f.forms.size(); ++i)
        for (std::size_t j = i + 1; j < f.forms.size(); ++j) {
            Polynomial m = f.forms[i].scaled(F.reduce(q[j])) - f.forms[j].scaled(F.reduce(q[i]));
            if (!m.is_zero()) gens.push_back(std::move(m));
        }
    Ideal raw(r, std::move(gens));
    Ideal base(r, [&] {
        std::vector<Polynomial> bg = f.source.ideal().gens();
        for (auto& g : f.forms)
            if (!g.is_zero()) bg.push_back(g);
        return bg;
    }());
    return Scheme(saturate_general(raw, base, rng), true);
}

std::int64_t map_degree(const RationalMap& f, Rng& rng) {
    std::vector<std::int64_t> lengths;
    int positive_dim = 0;
    for (int trial = 0; trial < 3; ++trial) {
        std::vector<Coeff> y;
        for (int attempt = 0; attempt < 8 && y.empty(); ++attempt) {
            PointP s = random_point(f.source, rng);
            y = f.apply(s.coords);
        }
        if (y.empty()) throw DegenerateMapError("random points keep landing in the base locus");
        Scheme fib = fiber(f, y, rng);
        if (fib.dim() > 0) {
            ++positive_dim;
            continue;
        }
        lengths.push_back(fib.degree());
    }
    if (positive_dim == 3)
        throw DegenerateMapError("fibers are positive-dimensional: not generically finite");
    std::sort(lengths.begin(), lengths.end());
    if (lengths.size() >= 2 && lengths[0] == lengths[1]) return lengths[0];
    if (lengths.size() == 3 && lengths[1] == lengths[2]) return lengths[1];
    if (lengths.size() == 1) return lengths[0];
    throw ContractViolation("map degree samples disagree");
}

bool is_birational_onto_image(const RationalMap& f, Rng& rng) { return map_degree(f, rng) == 1; }

PointP random_point(const Scheme& X, Rng& rng, int budget) {
    const RingPtr& r = X.ring();
    int d = X.dim();
    if (d < 0) throw BudgetExhausted("random point on an empty scheme");
    for (int attempt = 0; attempt < budget; ++attempt) {
        std::vector<Polynomial> gens = X.ideal().gens();
        for (int k = 0; k < d; ++k) gens.push_back(rng.linear_form(r));
        Ideal sliced(r, std::move(gens));
        if (sliced.dimension() != 0) continue;
        auto pts = ideals::rational_points(sliced, rng.raw(), 4);
        for (auto& pt : pts)
            if (X.contains_point(pt)) return PointP::normalized(r->field, pt);
    }
    throw BudgetExhausted("random_point: no rational point found in " + std::to_string(budget) +
                          " slices (raise the prime or the budget)");
}

std::vector<Polynomial> linear_system(const Scheme& X, const Ideal& center, int e, int m) {
    if (e < 1 || m < 1) throw StructuralError("linear_system needs e >= 1, m >= 1");
    if (!center.contains_ideal(X.ideal()))
        throw StructuralError("the center must contain the ideal of the ambient scheme");
    Ideal cm = ideals::ideal_power(center, m, /*saturate_result=*/true);
    auto sys = ideals::graded_piece_basis(cm, e);
    auto mods = ideals::graded_piece_basis(X.ideal(), e);
    if (mods.empty()) return sys;

    const RingPtr& r = X.ring();
    const arith::PrimeField& F = r->field;
    auto monos = ideals::monomials_of_degree(r, e);
    std::map<Monomial, int, std::function<bool(const Monomial&, const Monomial&)>> index(
        [&](const Monomial& a, const Monomial& b) { return arith::cmp(r->order, a, b) > 0; });
    for (std::size_t i = 0; i < monos.size(); ++i) index.emplace(monos[i], int(i));
    auto to_row = [&](const Polynomial& b) {
        std::vector<Coeff> row(monos.size(), 0);
        for (auto& t : b.terms()) row[index.at(t.mono)] = t.c;
        return row;
    };
    // echelonize X's piece, then reduce every system row against it
    linalg::Matrix xrows;
    for (auto& b : mods) xrows.push_back(to_row(b));
    auto xpivots = linalg::row_reduce(xrows, F);
    linalg::Matrix reduced;
    for (auto& b : sys) {
        auto row = to_row(b);
        for (std::size_t t = 0; t < xpivots.size(); ++t) {
            Coeff c = row[xpivots[t]];
            if (c == 0) continue;
            for (std::size_t k = 0; k < row.size(); ++k)
                row[k] = F.sub(row[k], F.mul(c, xrows[t][k]));
        }
        reduced.push_back(std::move(row));
    }
    auto pivots = linalg::row_reduce(reduced, F);
    std::vector<Polynomial> out;
    for (std::size_t k = 0; k < pivots.size(); ++k) {
        std::vector<Term> ts;
        for (std::size_t c = 0; c < monos.size(); ++c)
            if (reduced[k][c] != 0) ts.push_back({monos[c], reduced[k][c]});
        out.push_back(Polynomial(r, std::move(ts)));
    }
    return out;
}

Scheme project_from(const Scheme& X, const std::vector<Polynomial>& center_forms) {
    for (auto& f : center_forms)
        if (f.is_zero() || *f.homogeneous_degree() != 1)
            throw StructuralError("projection center must be cut by independent linear forms");
    linalg::Matrix rows;
    for (auto& f : center_forms) {
        std::vector<Coeff> row(X.ring()->nvars, 0);
        for (auto& t : f.terms())
            for (int v = 0; v < X.ring()->nvars; ++v)
                if (t.mono.exponent(v)) row[v] = t.c;
        rows.push_back(std::move(row));
    }
    if (linalg::rank(rows, X.ring()->field) != int(center_forms.size()))
        throw StructuralError("projection center forms are dependent");
    return image(make_map(X, center_forms));
}

PointP secant_point(const Scheme& X, Rng& rng, int budget) {
    const PrimeField& F = X.ring()->field;
    PointP p1 = random_point(X, rng, budget);
    PointP p2 = p1;
    for (int attempt = 0; attempt < budget && p2 == p1; ++attempt) p2 = random_point(X, rng, budget);
    if (p2 == p1) throw BudgetExhausted("secant_point: could not find two distinct points");
    for (int attempt = 0; attempt < budget; ++attempt) {
        Coeff lambda = rng.field_nonzero(F);
        std::vector<Coeff> s(p1.coords.size());
        for (std::size_t i = 0; i < s.size(); ++i)
            s[i] = F.add(p1.coords[i], F.mul(lambda, p2.coords[i]));
        PointP sp = PointP::normalized(F, s);
        if (!(sp == p1) && !(sp == p2)) return sp;
    }
    throw BudgetExhausted("secant_point: degenerate pencil");
}

Scheme cone_over(const Scheme& X) {
    const RingPtr& r = X.ring();
    RingPtr big = make_ring(r->field.p(), r->nvars + 1, r->order);
    std::vector<Polynomial> gens;
    for (auto& g : X.ideal().gens()) {
        std::vector<Term> ts;
        for (auto& t : g.terms()) {
            std::vector<std::uint8_t> e(r->nvars + 1, 0);
            for (int i = 0; i < r->nvars; ++i) e[i] = t.mono.exponent(i);
            ts.push_back({Monomial(std::move(e)), t.c});
        }
        gens.push_back(Polynomial(big, std::move(ts)));
    }
    return Scheme(Ideal(big, std::move(gens)), true);
}

Scheme cone_over(const Scheme& X, const std::vector<Coeff>& vertex) {
    Scheme c = cone_over(X);
    const RingPtr& big = c.ring();
    const PrimeField& F = big->field;
    if (int(vertex.size()) != big->nvars)
        throw StructuralError("vertex must live in the cone's ambient space");
    // invertible M with M e_last = vertex; generators become g(M^{-1} x)
    const int n = big->nvars;
    linalg::Matrix m;
    int skip = -1;
    for (int i = 0; i < n; ++i)
        if (F.reduce(vertex[i]) != 0) skip = i;
    if (skip < 0) throw StructuralError("vertex is the zero vector");
    m.assign(n, std::vector<Coeff>(n, 0));
    int col = 0;
    for (int i = 0; i < n - 1; ++i, ++col) {
        if (col == skip) ++col;
        m[col][i] = 1;
    }
    for (int i = 0; i < n; ++i) m[i][n - 1] = F.reduce(vertex[i]);
    linalg::Matrix minv = linalg::inverse(m, F);
    std::vector<Polynomial> gens;
    for (auto& g : c.ideal().gens()) gens.push_back(g.substitute_linear(minv));
    return Scheme(Ideal(big, std::move(gens)), true);
}

Scheme linear_section(const Scheme& X, int k, Rng& rng, int budget) {
    if (k > X.dim()) throw StructuralError("cannot slice below dimension 0");
    for (int attempt = 0; attempt < budget; ++attempt) {
        std::vector<Polynomial> gens = X.ideal().gens();
        for (int i = 0; i < k; ++i) gens.push_back(rng.linear_form(X.ring()));
        Scheme section{Ideal(X.ring(), std::move(gens))};
        if (section.dim() == X.dim() - k) return section;
    }
    throw BudgetExhausted("linear_section: no transverse slice found");
}

std::vector<Polynomial> point_forms(const RingPtr& r, const std::vector<Coeff>& pt) {
    // kernel of the evaluation-at-pt row
    linalg::Matrix row(1, std::vector<Coeff>(r->nvars));
    for (int i = 0; i < r->nvars; ++i) row[0][i] = r->field.reduce(pt[i]);
    auto basis = linalg::kernel_basis(row, r->field);
    std::vector<Polynomial> out;
    for (auto& v : basis) {
        std::vector<Term> ts;
        for (int i = 0; i < r->nvars; ++i)
            if (v[i]) ts.push_back({Monomial::variable(r->nvars, i), v[i]});
        out.push_back(Polynomial(r, std::move(ts)));
    }
    return out;
}

std::vector<std::int64_t> projective_degrees(const RationalMap& f, Rng& rng) {
    const int n = f.source.dim();
    std::vector<std::int64_t> out;
    for (int k = 0; k <= n; ++k) {
        Scheme slice = k == n ? f.source : linear_section(f.source, n - k, rng);
        if (k == 0) {
            // pushforward of a general zero-cycle keeps its length
            out.push_back(slice.degree());
            continue;
        }
        RationalMap restricted{slice, f.forms};
        Scheme img = image(restricted);
        if (img.dim() < k) {
            out.push_back(0);
            continue;
        }
        std::int64_t mult = map_degree(restricted, rng);
        out.push_back(img.degree() * mult);
    }
    return out;
}

}  // namespace gmforge::geom
