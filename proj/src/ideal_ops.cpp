#include <algorithm>
#include <functional>
#include <map>
#include <random>
#include <set>

#include "gmforge/ideal.hpp"
#include "gmforge/linalg.hpp"

namespace gmforge::ideals {

using arith::make_ring;
using arith::Term;

namespace {

std::vector<Polynomial> homogeneous_components(const Polynomial& f) {
    std::map<std::uint32_t, std::vector<Term>> parts;
    for (auto& t : f.terms()) parts[t.mono.degree()].push_back(t);
    std::vector<Polynomial> out;
    for (auto& [d, ts] : parts) out.push_back(Polynomial(f.ring(), std::move(ts)));
    return out;
}

// perm[new_index] = old_index
Polynomial permute_vars(const Polynomial& f, const std::vector<int>& perm, const RingPtr& target) {
    std::vector<Term> ts;
    ts.reserve(f.size());
    for (auto& t : f.terms()) {
        std::vector<std::uint8_t> e(perm.size(), 0);
        for (std::size_t i = 0; i < perm.size(); ++i) e[i] = t.mono.exponent(perm[i]);
        ts.push_back({Monomial(std::move(e)), t.c});
    }
    return Polynomial(target, std::move(ts));
}

std::vector<int> inverse_perm(const std::vector<int>& perm) {
    std::vector<int> inv(perm.size());
    for (std::size_t i = 0; i < perm.size(); ++i) inv[perm[i]] = int(i);
    return inv;
}

// Raw elimination of the first k variables of `ring` (which must carry an
// eliminate_first(k) order). Returns the block-free Groebner elements.
// When the eliminated ideal happens to be homogeneous, the generators are
// split into their homogeneous components (verified by membership, so the
// split never changes the ideal).
std::vector<Polynomial> eliminate_raw(const RingPtr& ring, const std::vector<Polynomial>& gens,
                                      int k) {
    GroebnerBasis gb = buchberger(ring, gens);
    std::vector<Polynomial> kept;
    for (auto& g : gb.polys()) {
        if (g.leading_monomial().degree_prefix(k) != 0) continue;
        auto parts = homogeneous_components(g);
        bool splittable = parts.size() > 1;
        for (auto& p : parts)
            if (splittable && !gb.contains(p)) {
                splittable = false;
                break;
            }
        if (splittable)
            for (auto& p : parts) kept.push_back(p);
        else
            kept.push_back(g);
    }
    return kept;
}

}  // namespace

Ideal::Ideal(RingPtr ring, std::vector<Polynomial> gens) : ring_(std::move(ring)) {
    for (auto& g : gens) {
        if (g.is_zero()) continue;
        if (!g.ring()->same(*ring_)) throw StructuralError("ideal generator from a different ring");
        gens_.push_back(g);
    }
}

bool Ideal::is_homogeneous() const {
    for (auto& g : gens_)
        if (!g.homogeneous_degree()) return false;
    return true;
}

Ideal& Ideal::operator=(const Ideal& o) {
    if (this == &o) return *this;
    std::scoped_lock lk(mu_, o.mu_);
    ring_ = o.ring_;
    gens_ = o.gens_;
    gb_ = o.gb_;
    hilbert_ = o.hilbert_;
    return *this;
}

const GroebnerBasis& Ideal::groebner() const { return groebner(ring_->order); }

const GroebnerBasis& Ideal::groebner(const MonomialOrder& ord) const {
    std::lock_guard<std::mutex> lk(mu_);
    auto it = gb_.find(ord);
    if (it != gb_.end()) return it->second;
    RingPtr r = with_order(ring_, ord);
    GroebnerBasis gb = buchberger(r, gens_);
    return gb_.emplace(ord, std::move(gb)).first->second;
}

const HilbertData& Ideal::hilbert() const {
    if (!is_homogeneous())
        throw ContractViolation("Hilbert data requires a homogeneous ideal");
    const GroebnerBasis& gb = groebner();
    std::lock_guard<std::mutex> lk(mu_);
    if (!hilbert_) hilbert_ = hilbert_from_leading_terms(gb.leading_monomials(), ring_->nvars);
    return *hilbert_;
}

bool Ideal::contains(const Polynomial& f) const { return groebner().contains(f.to_ring(ring_)); }

bool Ideal::contains_ideal(const Ideal& other) const {
    for (auto& g : other.gens())
        if (!contains(g)) return false;
    return true;
}

bool Ideal::equals(const Ideal& other) const {
    return contains_ideal(other) && other.contains_ideal(*this);
}

std::int64_t Ideal::degree() const { return hilbert().degree; }

std::int64_t Ideal::sectional_genus() const {
    const HilbertData& h = hilbert();
    if (h.dim_projective != 2)
        throw ContractViolation("sectional genus is defined for surfaces, got dimension " +
                                std::to_string(h.dim_projective));
    // P(t) = (d/2)t^2 + ((d/2)+1-g)t + chi
    return h.degree + 1 + h.hp_values[0] - h.hp_values[1];
}

std::int64_t Ideal::euler_characteristic() const {
    const HilbertData& h = hilbert();
    if (h.dim_projective != 2)
        throw ContractViolation("chi(O_S) is read off surfaces, got dimension " +
                                std::to_string(h.dim_projective));
    return h.hp_values[0];
}

std::int64_t Ideal::arithmetic_genus() const {
    const HilbertData& h = hilbert();
    if (h.dim_projective != 1)
        throw ContractViolation("arithmetic genus is defined for curves here, got dimension " +
                                std::to_string(h.dim_projective));
    return 1 - h.hp_values[0];
}

bool Ideal::is_zero() const { return gens_.empty(); }
bool Ideal::is_unit() const { return groebner().is_unit(); }

Ideal ideal_from_strings(const RingPtr& r, const std::vector<std::string>& gens) {
    std::vector<Polynomial> ps;
    ps.reserve(gens.size());
    for (auto& s : gens) ps.push_back(arith::parse_polynomial(r, s));
    return Ideal(r, std::move(ps));
}

Ideal eliminate(const Ideal& I, const std::vector<int>& kill) {
    const RingPtr& r = I.ring();
    const int n = r->nvars;
    std::vector<char> killed(n, 0);
    for (int v : kill) {
        if (v < 0 || v >= n) throw StructuralError("eliminate: variable index out of range");
        killed[v] = 1;
    }
    std::vector<int> perm;
    for (int v = 0; v < n; ++v)
        if (killed[v]) perm.push_back(v);
    const int k = int(perm.size());
    for (int v = 0; v < n; ++v)
        if (!killed[v]) perm.push_back(v);

    RingPtr elim_ring = make_ring(r->field.p(), n, MonomialOrder::eliminate_first(k));
    std::vector<Polynomial> gens;
    gens.reserve(I.gens().size());
    for (auto& g : I.gens()) gens.push_back(permute_vars(g, perm, elim_ring));
    std::vector<Polynomial> kept = eliminate_raw(elim_ring, gens, k);

    std::vector<int> inv = inverse_perm(perm);
    std::vector<Polynomial> out;
    for (auto& g : kept) out.push_back(permute_vars(g, inv, r));
    return Ideal(r, std::move(out));
}

Ideal contract_to_variables(const Ideal& I, const std::vector<int>& keep) {
    RingPtr small = make_ring(I.ring()->field.p(), int(keep.size()), MonomialOrder::grevlex());
    std::vector<Polynomial> out;
    for (auto& g : I.gens()) {
        std::vector<Term> ts;
        for (auto& t : g.terms()) {
            std::vector<std::uint8_t> e(keep.size(), 0);
            std::uint32_t moved = 0;
            for (std::size_t i = 0; i < keep.size(); ++i) {
                e[i] = t.mono.exponent(keep[i]);
                moved += e[i];
            }
            if (moved != t.mono.degree())
                throw StructuralError("contract_to_variables: generator touches a dropped variable");
            ts.push_back({Monomial(std::move(e)), t.c});
        }
        out.push_back(Polynomial(small, std::move(ts)));
    }
    return Ideal(small, std::move(out));
}

namespace {

// Shared tag-variable machinery: variable 0 of the extended ring is the tag.
struct TagRing {
    RingPtr ext;

    explicit TagRing(const RingPtr& r)
        : ext(make_ring(r->field.p(), r->nvars + 1, MonomialOrder::eliminate_first(1))) {}

    Polynomial lift(const Polynomial& f) const {
        std::vector<Term> ts;
        for (auto& t : f.terms()) {
            std::vector<std::uint8_t> e(ext->nvars, 0);
            for (std::size_t i = 0; i + 1 < std::size_t(ext->nvars); ++i)
                e[i + 1] = t.mono.exponent(i);
            ts.push_back({Monomial(std::move(e)), t.c});
        }
        return Polynomial(ext, std::move(ts));
    }
    Polynomial drop(const Polynomial& f, const RingPtr& r) const {
        std::vector<Term> ts;
        for (auto& t : f.terms()) {
            std::vector<std::uint8_t> e(r->nvars, 0);
            for (int i = 0; i < r->nvars; ++i) e[i] = t.mono.exponent(i + 1);
            ts.push_back({Monomial(std::move(e)), t.c});
        }
        return Polynomial(r, std::move(ts));
    }
    Polynomial tag() const { return Polynomial::variable(ext, 0); }
};

}  // namespace

Ideal intersect(const Ideal& I, const Ideal& J) {
    if (!I.ring()->same(*J.ring())) throw StructuralError("intersect: different rings");
    if (I.is_zero()) return I;
    if (J.is_zero()) return J;
    const RingPtr& r = I.ring();
    TagRing tr(r);
    Polynomial t = tr.tag();
    Polynomial one_minus_t = Polynomial::constant(tr.ext, 1) - t;
    std::vector<Polynomial> gens;
    for (auto& f : I.gens()) gens.push_back(t * tr.lift(f));
    for (auto& g : J.gens()) gens.push_back(one_minus_t * tr.lift(g));
    std::vector<Polynomial> kept = eliminate_raw(tr.ext, gens, 1);
    std::vector<Polynomial> out;
    for (auto& g : kept) out.push_back(tr.drop(g, r));
    return Ideal(r, std::move(out));
}

Polynomial divide_exact(const Polynomial& f, const Polynomial& g) {
    if (g.is_zero()) throw DivisionByZeroError("polynomial division by zero");
    const RingPtr& r = f.ring();
    Polynomial rem = f;
    std::vector<Term> q;
    while (!rem.is_zero()) {
        const Term& lt = rem.leading();
        if (!g.leading_monomial().divides(lt.mono))
            throw StructuralError("divide_exact: division is not exact");
        Monomial m = lt.mono.div(g.leading_monomial());
        arith::Coeff c = r->field.div(lt.c, g.leading_coeff());
        q.push_back({m, c});
        rem = rem.submul(c, m, g);
    }
    return Polynomial(r, std::move(q));
}

Ideal colon_single(const Ideal& I, const Polynomial& f) {
    if (f.is_zero()) throw DivisionByZeroError("colon by zero polynomial");
    Ideal meet = intersect(I, Ideal(I.ring(), {f}));
    std::vector<Polynomial> out;
    for (auto& g : meet.gens()) out.push_back(divide_exact(g, f));
    return Ideal(I.ring(), std::move(out));
}

Ideal quotient(const Ideal& I, const Ideal& J) {
    if (J.is_zero()) {
        RingPtr r = I.ring();
        return Ideal(r, {Polynomial::constant(r, 1)});
    }
    bool first = true;
    Ideal acc;
    for (auto& f : J.gens()) {
        Ideal part = colon_single(I, f);
        acc = first ? part : intersect(acc, part);
        first = false;
    }
    return acc;
}

Ideal saturate_single(const Ideal& I, const Polynomial& f) {
    if (f.is_zero()) throw DivisionByZeroError("saturation by zero polynomial");
    const RingPtr& r = I.ring();
    TagRing tr(r);
    std::vector<Polynomial> gens;
    for (auto& g : I.gens()) gens.push_back(tr.lift(g));
    gens.push_back(tr.tag() * tr.lift(f) - Polynomial::constant(tr.ext, 1));
    std::vector<Polynomial> kept = eliminate_raw(tr.ext, gens, 1);
    std::vector<Polynomial> out;
    for (auto& g : kept) out.push_back(tr.drop(g, r));
    return Ideal(r, std::move(out));
}

Ideal saturate(const Ideal& I, const Ideal& J) {
    if (J.is_zero()) throw StructuralError("saturation by the zero ideal");
    bool first = true;
    Ideal acc;
    for (auto& f : J.gens()) {
        Ideal part = saturate_single(I, f);
        acc = first ? part : intersect(acc, part);
        first = false;
    }
    return acc;
}

namespace {

// For homogeneous I under grevlex, dividing every reduced-basis element by
// its maximal power of the last variable generates I : x_last^inf.
Ideal saturate_by_last_variable(const Ideal& I) {
    if (!I.is_homogeneous())
        throw ContractViolation("irrelevant saturation requires a homogeneous ideal");
    RingPtr r = with_order(I.ring(), MonomialOrder::grevlex());
    const GroebnerBasis& gb = I.groebner(MonomialOrder::grevlex());
    const int last = r->nvars - 1;
    std::vector<Polynomial> out;
    for (auto& g : gb.polys()) {
        std::uint8_t e = 255;
        for (auto& t : g.terms()) e = std::min(e, t.mono.exponent(last));
        if (e == 0) {
            out.push_back(g.to_ring(I.ring()));
        } else {
            Polynomial d = divide_exact(g, Polynomial::variable(r, last, e));
            out.push_back(d.to_ring(I.ring()));
        }
    }
    return Ideal(I.ring(), std::move(out));
}

linalg::Matrix random_invertible(const arith::PrimeField& F, int n, std::mt19937_64& rng) {
    std::uniform_int_distribution<Coeff> dist(0, F.p() - 1);
    while (true) {
        linalg::Matrix a(n, std::vector<Coeff>(n));
        for (auto& row : a)
            for (auto& v : row) v = dist(rng);
        if (linalg::is_invertible(a, F)) return a;
    }
}

Ideal saturate_irrelevant_once(const Ideal& I, std::mt19937_64& rng) {
    const RingPtr& r = I.ring();
    linalg::Matrix a = random_invertible(r->field, r->nvars, rng);
    linalg::Matrix ainv = linalg::inverse(a, r->field);
    std::vector<Polynomial> moved;
    for (auto& g : I.gens()) moved.push_back(g.substitute_linear(a));
    Ideal shifted(r, std::move(moved));
    Ideal sat = saturate_by_last_variable(shifted);
    std::vector<Polynomial> back;
    for (auto& g : sat.gens()) back.push_back(g.substitute_linear(ainv));
    return Ideal(r, std::move(back));
}

}  // namespace

Ideal saturate_irrelevant(const Ideal& I, std::uint64_t seed) {
    if (I.is_zero()) return I;
    std::mt19937_64 rng(seed);
    Ideal a = saturate_irrelevant_once(I, rng);
    Ideal b = saturate_irrelevant_once(I, rng);
    if (a.equals(b)) return a;
    return saturate_irrelevant_exact(I);
}

Ideal saturate_irrelevant_exact(const Ideal& I) {
    if (I.is_zero()) return I;
    const RingPtr& r = I.ring();
    bool first = true;
    Ideal acc;
    for (int v = 0; v < r->nvars; ++v) {
        Ideal part = saturate_single(I, Polynomial::variable(r, v));
        acc = first ? part : intersect(acc, part);
        first = false;
    }
    return acc;
}

Ideal ideal_power(const Ideal& I, int m, bool saturate_result) {
    const RingPtr& r = I.ring();
    if (m < 0) throw StructuralError("negative ideal power");
    if (m == 0) return Ideal(r, {Polynomial::constant(r, 1)});
    if (I.is_zero()) return I;
    const auto& gens = I.gens();
    std::vector<Polynomial> out;
    // multisets of size m over the generators
    std::vector<int> idx(m, 0);
    while (true) {
        Polynomial prod = Polynomial::constant(r, 1);
        for (int i : idx) prod = prod * gens[i];
        out.push_back(prod);
        int k = m - 1;
        while (k >= 0 && idx[k] == int(gens.size()) - 1) --k;
        if (k < 0) break;
        int v = idx[k] + 1;
        for (int i = k; i < m; ++i) idx[i] = v;
    }
    Ideal P(r, std::move(out));
    return saturate_result ? saturate_irrelevant(P) : P;
}

std::vector<Monomial> monomials_of_degree(const RingPtr& r, int d) {
    std::vector<Monomial> out;
    std::vector<std::uint8_t> e(r->nvars, 0);
    // descending in the ring order would cost a sort; enumerate then sort
    std::function<void(int, int)> rec = [&](int var, int left) {
        if (var == r->nvars - 1) {
            e[var] = std::uint8_t(left);
            out.push_back(Monomial(e));
            return;
        }
        for (int take = left; take >= 0; --take) {
            e[var] = std::uint8_t(take);
            rec(var + 1, left - take);
        }
        e[var] = 0;
    };
    if (d >= 0) rec(0, d);
    std::sort(out.begin(), out.end(), [&](const Monomial& a, const Monomial& b) {
        return arith::cmp(r->order, a, b) > 0;
    });
    return out;
}

std::int64_t graded_piece_dim(const Ideal& I, int d) {
    if (I.is_zero()) return 0;
    auto lms = I.groebner().leading_monomials();
    std::int64_t count = 0;
    for (auto& m : monomials_of_degree(I.ring(), d))
        for (auto& lm : lms)
            if (lm.divides(m)) {
                ++count;
                break;
            }
    return count;
}

std::vector<Polynomial> graded_piece_basis(const Ideal& I, int d) {
    const RingPtr& r = I.ring();
    auto monos = monomials_of_degree(r, d);
    std::map<Monomial, int, std::function<bool(const Monomial&, const Monomial&)>> index(
        [&](const Monomial& a, const Monomial& b) { return arith::cmp(r->order, a, b) > 0; });
    for (std::size_t i = 0; i < monos.size(); ++i) index.emplace(monos[i], int(i));

    linalg::Matrix rows;
    for (auto& g : I.gens()) {
        auto deg = g.homogeneous_degree();
        if (!deg || int(*deg) > d) continue;
        for (auto& m : monomials_of_degree(r, d - int(*deg))) {
            std::vector<Coeff> row(monos.size(), 0);
            for (auto& t : g.terms()) row[index.at(t.mono.mul(m))] = t.c;
            rows.push_back(std::move(row));
        }
    }
    if (rows.empty()) return {};
    auto pivots = linalg::row_reduce(rows, r->field);
    std::vector<Polynomial> basis;
    for (std::size_t k = 0; k < pivots.size(); ++k) {
        std::vector<Term> ts;
        for (std::size_t c = 0; c < monos.size(); ++c)
            if (rows[k][c] != 0) ts.push_back({monos[c], rows[k][c]});
        basis.push_back(Polynomial(r, std::move(ts)));
    }
    return basis;
}

std::map<int, int> minimal_generators_by_degree(const Ideal& I) {
    std::map<int, int> out;
    if (I.is_zero()) return out;
    const RingPtr& r = I.ring();
    int dmin = INT32_MAX, dmax = 0;
    for (auto& g : I.gens()) {
        int d = int(*g.homogeneous_degree());
        dmin = std::min(dmin, d);
        dmax = std::max(dmax, d);
    }
    for (int d = dmin; d <= dmax; ++d) {
        std::int64_t dim_d = graded_piece_dim(I, d);
        std::int64_t from_below = 0;
        if (d > dmin) {
            auto basis = graded_piece_basis(I, d - 1);
            auto monos = monomials_of_degree(r, d);
            std::map<Monomial, int, std::function<bool(const Monomial&, const Monomial&)>> index(
                [&](const Monomial& a, const Monomial& b) {
                    return arith::cmp(r->order, a, b) > 0;
                });
            for (std::size_t i = 0; i < monos.size(); ++i) index.emplace(monos[i], int(i));
            linalg::Matrix rows;
            for (auto& b : basis)
                for (int v = 0; v < r->nvars; ++v) {
                    std::vector<Coeff> row(monos.size(), 0);
                    Monomial xv = Monomial::variable(r->nvars, v);
                    for (auto& t : b.terms()) row[index.at(t.mono.mul(xv))] = t.c;
                    rows.push_back(std::move(row));
                }
            from_below = linalg::rank(std::move(rows), r->field);
        }
        if (dim_d - from_below > 0) out[d] = int(dim_d - from_below);
    }
    return out;
}

// ---- zero-dimensional solving ---------------------------------------------

namespace {

using UPoly = std::vector<Coeff>;  // ascending coefficients

void utrim(UPoly& f) {
    while (!f.empty() && f.back() == 0) f.pop_back();
}

UPoly umul(const UPoly& a, const UPoly& b, const arith::PrimeField& F) {
    if (a.empty() || b.empty()) return {};
    UPoly r(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j)
            r[i + j] = F.add(r[i + j], F.mul(a[i], b[j]));
    return r;
}

UPoly umod(UPoly a, const UPoly& m, const arith::PrimeField& F) {
    utrim(a);
    while (a.size() >= m.size()) {
        Coeff c = F.div(a.back(), m.back());
        std::size_t off = a.size() - m.size();
        for (std::size_t i = 0; i < m.size(); ++i) a[off + i] = F.sub(a[off + i], F.mul(c, m[i]));
        utrim(a);
    }
    return a;
}

UPoly ugcd(UPoly a, UPoly b, const arith::PrimeField& F) {
    utrim(a);
    utrim(b);
    while (!b.empty()) {
        a = umod(std::move(a), b, F);
        std::swap(a, b);
    }
    if (!a.empty()) {
        Coeff inv = F.inv(a.back());
        for (auto& c : a) c = F.mul(c, inv);
    }
    return a;
}

UPoly upowmod(UPoly base, std::uint64_t e, const UPoly& m, const arith::PrimeField& F) {
    UPoly r{1};
    base = umod(std::move(base), m, F);
    while (e) {
        if (e & 1) r = umod(umul(r, base, F), m, F);
        e >>= 1;
        if (e) base = umod(umul(base, base, F), m, F);
    }
    return r;
}

// All roots of f in F_p, via gcd with x^p - x and Cantor-Zassenhaus splitting.
void uroots(const UPoly& f, const arith::PrimeField& F, std::mt19937_64& rng,
            std::vector<Coeff>& out) {
    UPoly g = f;
    utrim(g);
    if (g.empty()) throw StructuralError("root-finding on the zero polynomial");
    if (g.size() == 1) return;
    // split off the F_p-rational part
    UPoly xp = upowmod(UPoly{0, 1}, std::uint64_t(F.p()), g, F);
    if (xp.size() < 2) xp.resize(2, 0);
    xp[1] = F.sub(xp[1], 1);  // x^p - x mod g
    UPoly lin = ugcd(g, xp, F);
    std::function<void(UPoly)> split = [&](UPoly h) {
        utrim(h);
        if (h.size() <= 1) return;
        if (h.size() == 2) {
            out.push_back(F.neg(F.div(h[0], h[1])));
            return;
        }
        std::uniform_int_distribution<Coeff> dist(0, F.p() - 1);
        while (true) {
            UPoly shift{dist(rng), 1};
            UPoly w = upowmod(shift, std::uint64_t((F.p() - 1) / 2), h, F);
            if (w.empty())
                w = UPoly{F.p() - 1};
            else
                w[0] = F.sub(w[0], 1);
            UPoly d = ugcd(h, w, F);
            if (d.size() > 1 && d.size() < h.size()) {
                UPoly q = h;
                // q = h / d by repeated reduction
                UPoly quot;
                {
                    UPoly rem = h;
                    utrim(rem);
                    quot.assign(rem.size() - d.size() + 1, 0);
                    while (rem.size() >= d.size()) {
                        Coeff c = F.div(rem.back(), d.back());
                        std::size_t off = rem.size() - d.size();
                        quot[off] = c;
                        for (std::size_t i = 0; i < d.size(); ++i)
                            rem[off + i] = F.sub(rem[off + i], F.mul(c, d[i]));
                        utrim(rem);
                    }
                }
                split(d);
                split(quot);
                return;
            }
        }
    };
    split(lin);
}

UPoly to_univariate(const Polynomial& f, int var) {
    UPoly u;
    for (auto& t : f.terms()) {
        std::uint8_t e = t.mono.exponent(var);
        if (t.mono.degree() != e) throw StructuralError("polynomial is not univariate");
        if (u.size() <= e) u.resize(e + 1, 0);
        u[e] = t.c;
    }
    return u;
}

// Solve an affine zero-dimensional system by eliminating down to the last
// variable, root-scanning, substituting back.
void solve_affine(const RingPtr& r, const std::vector<Polynomial>& gens, std::mt19937_64& rng,
                  std::vector<std::vector<Coeff>>& out, int max_points) {
    const int n = r->nvars;
    if (int(out.size()) >= max_points) return;
    // constant check
    std::vector<Polynomial> live;
    for (auto& g : gens) {
        if (g.is_zero()) continue;
        if (g.total_degree() == 0) return;  // unit ideal, no points
        live.push_back(g);
    }
    if (n == 1) {
        GroebnerBasis gb = buchberger(r, live);
        if (gb.empty()) throw StructuralError("solve_affine: positive-dimensional input");
        if (gb.is_unit()) return;
        std::vector<Coeff> roots;
        uroots(to_univariate(gb.polys()[0], 0), r->field, rng, roots);
        for (Coeff a : roots) out.push_back({a});
        return;
    }
    // univariate eliminant in the last variable
    RingPtr er = make_ring(r->field.p(), n, MonomialOrder::eliminate_first(n - 1));
    GroebnerBasis gb = buchberger(er, live);
    if (gb.is_unit()) return;
    UPoly eliminant;
    for (auto& g : gb.polys()) {
        if (g.leading_monomial().degree_prefix(n - 1) != 0) continue;
        UPoly u;
        for (auto& t : g.terms()) {
            std::uint8_t e = t.mono.exponent(n - 1);
            if (u.size() <= e) u.resize(e + 1, 0);
            u[e] = t.c;
        }
        eliminant = eliminant.empty() ? u : ugcd(eliminant, u, r->field);
    }
    if (eliminant.empty())
        throw StructuralError("solve_affine: system is not zero-dimensional");
    std::vector<Coeff> roots;
    uroots(eliminant, r->field, rng, roots);
    std::sort(roots.begin(), roots.end());
    RingPtr rsmall = make_ring(r->field.p(), n - 1, MonomialOrder::grevlex());
    for (Coeff a : roots) {
        if (int(out.size()) >= max_points) return;
        // substitute x_{n-1} = a
        std::vector<Polynomial> sub;
        for (auto& g : live) {
            std::vector<Term> ts;
            for (auto& t : g.terms()) {
                std::vector<std::uint8_t> e(n - 1);
                for (int i = 0; i + 1 < n; ++i) e[i] = t.mono.exponent(i);
                Coeff c = r->field.mul(t.c, r->field.pow(a, t.mono.exponent(n - 1)));
                ts.push_back({Monomial(std::move(e)), c});
            }
            sub.push_back(Polynomial(rsmall, std::move(ts)));
        }
        std::size_t before = out.size();
        solve_affine(rsmall, sub, rng, out, max_points);
        for (std::size_t i = before; i < out.size(); ++i) out[i].push_back(a);
    }
}

}  // namespace

/// Rational points of a zero-dimensional projective scheme, normalized so
/// the last nonzero coordinate is 1. Chart-by-chart affine solving.
std::vector<std::vector<Coeff>> rational_points(const Ideal& I, std::uint64_t seed,
                                                int max_points) {
    const RingPtr& r = I.ring();
    const int n = r->nvars;
    std::mt19937_64 rng(seed);
    std::vector<std::vector<Coeff>> points;
    for (int chart = n - 1; chart >= 0; --chart) {
        // x_chart = 1, x_k = 0 for k > chart
        if (chart == 0) {
            std::vector<Coeff> pt(n, 0);
            pt[0] = 1;
            bool on = true;
            for (auto& g : I.gens())
                if (g.evaluate(pt) != 0) {
                    on = false;
                    break;
                }
            if (on) points.push_back(pt);
            continue;
        }
        RingPtr ra = make_ring(r->field.p(), chart, MonomialOrder::grevlex());
        std::vector<Polynomial> affine;
        for (auto& g : I.gens()) {
            std::vector<Term> ts;
            for (auto& t : g.terms()) {
                bool dead = false;
                for (int k = chart + 1; k < n; ++k)
                    if (t.mono.exponent(k)) {
                        dead = true;
                        break;
                    }
                if (dead) continue;
                std::vector<std::uint8_t> e(chart, 0);
                for (int i = 0; i < chart; ++i) e[i] = t.mono.exponent(i);
                ts.push_back({Monomial(std::move(e)), t.c});
            }
            affine.push_back(Polynomial(ra, std::move(ts)));
        }
        std::vector<std::vector<Coeff>> sols;
        solve_affine(ra, affine, rng, sols, max_points - int(points.size()));
        for (auto& s : sols) {
            std::vector<Coeff> pt(n, 0);
            for (int i = 0; i < chart; ++i) pt[i] = s[i];
            pt[chart] = 1;
            points.push_back(std::move(pt));
        }
        if (int(points.size()) >= max_points) break;
    }
    return points;
}

// ---- reduced point counts --------------------------------------------------

namespace {

UPoly uderiv(const UPoly& f, const arith::PrimeField& F) {
    UPoly d;
    for (std::size_t i = 1; i < f.size(); ++i)
        d.push_back(F.mul(f[i], Coeff(i % std::uint64_t(F.p()))));
    utrim(d);
    return d;
}

UPoly usquarefree(const UPoly& f, const arith::PrimeField& F) {
    UPoly d = uderiv(f, F);
    if (d.empty()) throw StructuralError("eliminant is a p-th power; raise the prime");
    UPoly g = ugcd(f, d, F);
    if (g.size() <= 1) return f;
    // f / g
    UPoly rem = f, quot(f.size() - g.size() + 1, 0);
    while (rem.size() >= g.size()) {
        Coeff c = F.div(rem.back(), g.back());
        std::size_t off = rem.size() - g.size();
        quot[off] = c;
        for (std::size_t i = 0; i < g.size(); ++i) rem[off + i] = F.sub(rem[off + i], F.mul(c, g[i]));
        utrim(rem);
    }
    return quot;
}

// standard monomials of a zero-dimensional affine leading-term staircase
std::int64_t staircase_count(const std::vector<Monomial>& lms, int nvars) {
    std::vector<int> cap(nvars, -1);
    for (auto& m : lms) {
        int support = -1;
        bool pure = true;
        for (int v = 0; v < nvars; ++v)
            if (m.exponent(v)) {
                if (support >= 0) pure = false;
                support = v;
            }
        if (pure && support >= 0)
            cap[support] = cap[support] < 0 ? m.exponent(support)
                                            : std::min(cap[support], int(m.exponent(support)));
        if (m.degree() == 0) return 0;
    }
    for (int v = 0; v < nvars; ++v)
        if (cap[v] < 0) throw StructuralError("staircase is not zero-dimensional");
    std::int64_t count = 0;
    std::vector<std::uint8_t> e(nvars, 0);
    std::function<void(int)> walk = [&](int v) {
        if (v == nvars) {
            Monomial m(e);
            for (auto& lm : lms)
                if (lm.divides(m)) return;
            ++count;
            return;
        }
        for (int k = 0; k < cap[v]; ++k) {
            e[v] = std::uint8_t(k);
            walk(v + 1);
        }
        e[v] = 0;
    };
    walk(0);
    return count;
}

}  // namespace

std::int64_t reduced_point_count(const Ideal& J, std::uint64_t seed) {
    const HilbertData& h = J.hilbert();
    if (h.dim_projective < 0) return 0;
    if (h.dim_projective > 0)
        throw ContractViolation("reduced point count needs a zero-dimensional scheme");
    const RingPtr& r = J.ring();
    const arith::PrimeField& F = r->field;
    const int n = r->nvars;
    std::mt19937_64 rng(seed);

    for (int attempt = 0; attempt < 12; ++attempt) {
        linalg::Matrix a = random_invertible(F, n, rng);
        std::vector<Polynomial> moved;
        for (auto& g : J.gens()) moved.push_back(g.substitute_linear(a));
        // every point must land in the chart x_{n-1} != 0
        {
            std::vector<Polynomial> at_infinity = moved;
            at_infinity.push_back(Polynomial::variable(r, n - 1));
            if (Ideal(r, std::move(at_infinity)).hilbert().dim_projective >= 0) continue;
        }
        // dehomogenize: x_{n-1} = 1
        RingPtr ra = make_ring(F.p(), n - 1, MonomialOrder::grevlex());
        std::vector<Polynomial> affine;
        for (auto& g : moved) {
            std::vector<Term> ts;
            for (auto& t : g.terms()) {
                std::vector<std::uint8_t> e(n - 1, 0);
                for (int i = 0; i + 1 < n; ++i) e[i] = t.mono.exponent(i);
                ts.push_back({Monomial(std::move(e)), t.c});
            }
            affine.push_back(Polynomial(ra, std::move(ts)));
        }
        // Seidenberg: adjoin the squarefree part of the eliminant in each
        // variable; the result is the radical of a zero-dimensional ideal
        std::vector<Polynomial> radical = affine;
        const int m = n - 1;
        for (int v = 0; v < m; ++v) {
            std::vector<int> perm;
            for (int i = 0; i < m; ++i)
                if (i != v) perm.push_back(i);
            perm.push_back(v);
            RingPtr re = make_ring(F.p(), m, MonomialOrder::eliminate_first(m - 1));
            std::vector<int> inv = inverse_perm(perm);
            std::vector<Polynomial> permuted;
            for (auto& g : affine) permuted.push_back(permute_vars(g, perm, re));
            GroebnerBasis gb = buchberger(re, permuted);
            UPoly eliminant;
            for (auto& g : gb.polys()) {
                if (g.leading_monomial().degree_prefix(m - 1) != 0) continue;
                UPoly u;
                for (auto& t : g.terms()) {
                    std::uint8_t e = t.mono.exponent(m - 1);
                    if (u.size() <= e) u.resize(e + 1, 0);
                    u[e] = t.c;
                }
                eliminant = eliminant.empty() ? u : ugcd(eliminant, u, F);
            }
            if (eliminant.empty())
                throw ContractViolation("affine system is not zero-dimensional");
            UPoly sq = usquarefree(eliminant, F);
            std::vector<Term> ts;
            for (std::size_t k = 0; k < sq.size(); ++k)
                if (sq[k]) ts.push_back({Monomial::variable(m, v, std::uint8_t(k)), sq[k]});
            radical.push_back(Polynomial(ra, std::move(ts)));
        }
        GroebnerBasis gb = buchberger(ra, radical);
        if (gb.is_unit()) return 0;
        return staircase_count(gb.leading_monomials(), m);
    }
    throw BudgetExhausted("reduced_point_count: no chart contained every point");
}

// ---- singular loci ---------------------------------------------------------

namespace {

Polynomial poly_det(const std::vector<std::vector<Polynomial>>& m, const RingPtr& r) {
    const int n = int(m.size());
    if (n == 0) return Polynomial::constant(r, 1);
    // expansion over column subsets: minors[mask] for rows 0..popcount-1
    std::vector<Polynomial> cur(1, Polynomial::constant(r, 1));
    std::vector<std::uint32_t> cur_masks(1, 0);
    for (int row = 0; row < n; ++row) {
        std::map<std::uint32_t, Polynomial> next;
        for (std::size_t k = 0; k < cur.size(); ++k) {
            std::uint32_t mask = cur_masks[k];
            int sign_pos = 0;
            for (int col = 0; col < n; ++col) {
                if (mask & (1u << col)) continue;
                Polynomial contrib = cur[k] * m[row][col];
                if (sign_pos % 2 == 1) contrib = -contrib;
                ++sign_pos;
                std::uint32_t nm = mask | (1u << col);
                auto it = next.find(nm);
                if (it == next.end())
                    next.emplace(nm, std::move(contrib));
                else
                    it->second = it->second + contrib;
            }
        }
        cur.clear();
        cur_masks.clear();
        for (auto& [mask, p] : next) {
            cur_masks.push_back(mask);
            cur.push_back(std::move(p));
        }
    }
    return cur.empty() ? Polynomial::zero(r) : cur[0];
}

std::uint64_t nchoosek(int n, int k) {
    if (k < 0 || k > n) return 0;
    std::uint64_t r = 1;
    for (int i = 0; i < k; ++i) r = r * std::uint64_t(n - i) / std::uint64_t(i + 1);
    return r;
}

}  // namespace

SingularLocusReport singular_locus_report(const Ideal& I, std::uint64_t seed) {
    SingularLocusReport rep;
    const RingPtr& r = I.ring();
    const int n = r->nvars;
    const int dim = I.dimension();
    const int codim = (n - 1) - dim;
    if (codim <= 0) {  // the whole space: smooth
        rep.certified = true;
        return rep;
    }
    std::vector<const Polynomial*> gens;
    for (auto& g : I.gens())
        if (g.total_degree() >= 1) gens.push_back(&g);
    const int ng = int(gens.size());

    // Jacobian
    std::vector<std::vector<Polynomial>> jac(ng, std::vector<Polynomial>(n));
    for (int i = 0; i < ng; ++i)
        for (int j = 0; j < n; ++j) jac[i][j] = gens[i]->derivative(j);

    auto eval_rank_below = [&](const std::vector<Coeff>& pt) {
        linalg::Matrix m(ng, std::vector<Coeff>(n));
        for (int i = 0; i < ng; ++i)
            for (int j = 0; j < n; ++j) m[i][j] = jac[i][j].evaluate(pt);
        return linalg::rank(std::move(m), r->field) < codim;
    };

    std::mt19937_64 rng(seed);
    const std::uint64_t all_count = nchoosek(ng, codim) * nchoosek(n, codim);

    if (all_count > 0 && all_count <= 120) {
        // exact: every size-codim minor
        std::vector<Polynomial> minors;
        std::vector<int> rsel(codim), csel(codim);
        std::function<void(int, int)> rows_rec = [&](int start, int k) {
            if (k == codim) {
                std::function<void(int, int)> cols_rec = [&](int cstart, int ck) {
                    if (ck == codim) {
                        std::vector<std::vector<Polynomial>> sub(codim,
                                                                 std::vector<Polynomial>(codim));
                        for (int a = 0; a < codim; ++a)
                            for (int b = 0; b < codim; ++b) sub[a][b] = jac[rsel[a]][csel[b]];
                        Polynomial d = poly_det(sub, r);
                        if (!d.is_zero()) minors.push_back(std::move(d));
                        return;
                    }
                    for (int c = cstart; c < n; ++c) {
                        csel[ck] = c;
                        cols_rec(c + 1, ck + 1);
                    }
                };
                cols_rec(0, 0);
                return;
            }
            for (int i = start; i < ng; ++i) {
                rsel[k] = i;
                rows_rec(i + 1, k + 1);
            }
        };
        rows_rec(0, 0);
        std::vector<Polynomial> all = I.gens();
        for (auto& m : minors) all.push_back(m);
        Ideal sing(r, std::move(all));
        const HilbertData& h = sing.hilbert();
        rep.dimension = h.dim_projective;
        // the full minor ideal cuts the singular support exactly; nodes are
        // counted as reduced points
        rep.count = h.dim_projective == 0 ? reduced_point_count(sing, seed) : 0;
        rep.certified = true;
        return rep;
    }

    // randomized determinants of row-subset x column-mix products; the
    // resulting scheme always contains the singular locus, and counts are
    // accepted only when rank-certified points account for its full degree
    std::uniform_int_distribution<Coeff> coeff_dist(0, r->field.p() - 1);
    GroebnerBasis gb = buchberger(r, I.gens());
    std::vector<Polynomial> added;
    auto add_random_dets = [&](int count) {
        std::vector<Polynomial> fresh;
        for (int t = 0; t < count; ++t) {
            // random row subset
            std::vector<int> rows(ng);
            for (int i = 0; i < ng; ++i) rows[i] = i;
            std::shuffle(rows.begin(), rows.end(), rng);
            rows.resize(codim);
            // one column mix per determinant: rank(Jac) < codim at a point
            // forces det(Jac_rows * V) = 0 there
            std::vector<std::vector<Coeff>> mix(n, std::vector<Coeff>(codim));
            for (auto& row : mix)
                for (auto& v : row) v = coeff_dist(rng);
            std::vector<std::vector<Polynomial>> sub(codim, std::vector<Polynomial>(codim));
            for (int a = 0; a < codim; ++a)
                for (int b = 0; b < codim; ++b) {
                    Polynomial acc = Polynomial::zero(r);
                    for (int j = 0; j < n; ++j)
                        if (mix[j][b]) acc = acc + jac[rows[a]][j].scaled(mix[j][b]);
                    sub[a][b] = std::move(acc);
                }
            Polynomial d = poly_det(sub, r);
            if (!d.is_zero()) fresh.push_back(std::move(d));
        }
        gb = buchberger(gb.ring(), fresh, gb.polys());
        for (auto& f : fresh) added.push_back(std::move(f));
    };

    for (int round = 0; round < 24; ++round) {
        add_random_dets(round == 0 ? 2 * codim : codim);
        HilbertData h = hilbert_from_leading_terms(gb.leading_monomials(), n);
        if (h.dim_projective > 0) continue;
        rep.dimension = h.dim_projective;
        if (h.dim_projective < 0) {  // empty upper bound: smooth, certified
            rep.count = 0;
            rep.certified = true;
            return rep;
        }
        // the candidate scheme contains the singular locus; when all of its
        // points are rational, exact rank evaluation settles each one
        std::vector<Polynomial> all = I.gens();
        for (auto& f : added) all.push_back(f);
        Ideal cand(r, std::move(all));
        std::int64_t npoints = reduced_point_count(cand, seed ^ 0x9e77ULL);
        auto pts = rational_points(cand, seed ^ 0xabcdULL, int(npoints) + 1);
        if (std::int64_t(pts.size()) < npoints) continue;  // non-split points: more cuts
        std::int64_t certified = 0;
        std::vector<std::vector<Coeff>> good;
        for (auto& pt : pts)
            if (eval_rank_below(pt)) {
                ++certified;
                good.push_back(pt);
            }
        rep.count = certified;
        if (certified == 0) rep.dimension = -1;
        rep.certified = true;
        rep.points = std::move(good);
        return rep;
    }
    throw ContractViolation("singular locus could not be certified zero-dimensional");
}

std::int64_t node_count(const Ideal& I, std::uint64_t seed) {
    SingularLocusReport rep = singular_locus_report(I, seed);
    if (rep.dimension > 0)
        throw ContractViolation("singular locus has positive dimension " +
                                std::to_string(rep.dimension));
    return rep.count;
}

Ideal singular_locus(const Ideal& I) {
    const RingPtr& r = I.ring();
    const int n = r->nvars;
    const int dim = I.dimension();
    const int codim = (n - 1) - dim;
    if (codim <= 0) return Ideal(r, {Polynomial::constant(r, 1)});
    std::vector<const Polynomial*> gens;
    for (auto& g : I.gens())
        if (g.total_degree() >= 1) gens.push_back(&g);
    const int ng = int(gens.size());
    if (nchoosek(ng, codim) * nchoosek(n, codim) > 40000)
        throw ContractViolation("Jacobian too large for the explicit singular-locus ideal");
    std::vector<std::vector<Polynomial>> jac(ng, std::vector<Polynomial>(n));
    for (int i = 0; i < ng; ++i)
        for (int j = 0; j < n; ++j) jac[i][j] = gens[i]->derivative(j);
    std::vector<Polynomial> all = I.gens();
    std::vector<int> rsel(codim), csel(codim);
    std::function<void(int, int)> rows_rec = [&](int start, int k) {
        if (k == codim) {
            std::function<void(int, int)> cols_rec = [&](int cstart, int ck) {
                if (ck == codim) {
                    std::vector<std::vector<Polynomial>> sub(codim, std::vector<Polynomial>(codim));
                    for (int a = 0; a < codim; ++a)
                        for (int b = 0; b < codim; ++b) sub[a][b] = jac[rsel[a]][csel[b]];
                    Polynomial d = poly_det(sub, r);
                    if (!d.is_zero()) all.push_back(std::move(d));
                    return;
                }
                for (int c = cstart; c < n; ++c) {
                    csel[ck] = c;
                    cols_rec(c + 1, ck + 1);
                }
            };
            cols_rec(0, 0);
            return;
        }
        for (int i = start; i < ng; ++i) {
            rsel[k] = i;
            rows_rec(i + 1, k + 1);
        }
    };
    rows_rec(0, 0);
    return saturate_irrelevant(Ideal(r, std::move(all)));
}

}  // namespace gmforge::ideals
