#include <algorithm>
#include <deque>
#include <map>
#include <set>

#include "gmforge/ideal.hpp"

namespace gmforge::ideals {

using arith::cmp;
using arith::Term;

namespace {

// Ordered accumulator for reductions, keyed descending in the ring order.
struct MonoLess {
    const MonomialOrder* ord;
    bool operator()(const Monomial& a, const Monomial& b) const { return cmp(*ord, a, b) > 0; }
};
using Accum = std::map<Monomial, Coeff, MonoLess>;

Accum to_accum(const Polynomial& f, const MonomialOrder& ord) {
    Accum acc(MonoLess{&ord});
    for (auto& t : f.terms()) acc.emplace(t.mono, t.c);
    return acc;
}

Polynomial from_accum(const RingPtr& r, const Accum& acc) {
    std::vector<Term> ts;
    ts.reserve(acc.size());
    for (auto& [m, c] : acc) ts.push_back({m, c});
    Polynomial f(r);
    // already sorted and merged
    f = Polynomial(r, std::move(ts));
    return f;
}

// acc -= c * m * g
void accum_submul(Accum& acc, const arith::PrimeField& F, Coeff c, const Monomial& m,
                  const Polynomial& g) {
    Coeff nc = F.neg(c);
    for (auto& t : g.terms()) {
        Monomial key = t.mono.mul(m);
        auto it = acc.find(key);
        Coeff add = F.mul(t.c, nc);
        if (it == acc.end()) {
            acc.emplace(std::move(key), add);
        } else {
            it->second = F.add(it->second, add);
            if (it->second == 0) acc.erase(it);
        }
    }
}

struct Reducers {
    std::vector<const Polynomial*> polys;
    std::vector<Monomial> lms;
    std::vector<std::uint32_t> masks;

    void push(const Polynomial& g) {
        polys.push_back(&g);
        lms.push_back(g.leading_monomial());
        masks.push_back(lms.back().divmask());
    }
    int find(const Monomial& m, std::uint32_t mask) const {
        for (std::size_t i = 0; i < lms.size(); ++i)
            if ((masks[i] & ~mask) == 0 && lms[i].divides(m)) return int(i);
        return -1;
    }
};

Polynomial full_reduce(const Polynomial& f, const Reducers& red, const RingPtr& ring) {
    const auto& F = ring->field;
    Accum work = to_accum(f, ring->order);
    std::vector<Term> out;
    while (!work.empty()) {
        auto lead = work.begin();
        std::uint32_t mask = lead->first.divmask();
        int k = red.find(lead->first, mask);
        if (k < 0) {
            out.push_back({lead->first, lead->second});
            work.erase(lead);
            continue;
        }
        const Polynomial& g = *red.polys[k];
        Monomial q = lead->first.div(red.lms[k]);
        Coeff c = F.div(lead->second, g.leading_coeff());
        accum_submul(work, F, c, q, g);
    }
    return Polynomial(ring, std::move(out));
}

struct Pair {
    std::uint32_t i, j;
    Monomial lcm;
    std::uint32_t sugar;

    bool operator<(const Pair& o) const {
        if (sugar != o.sugar) return sugar < o.sugar;
        if (lcm.degree() != o.lcm.degree()) return lcm.degree() < o.lcm.degree();
        if (i != o.i) return i < o.i;
        return j < o.j;
    }
};

}  // namespace

GroebnerBasis::GroebnerBasis(RingPtr ring, std::vector<Polynomial> polys)
    : ring_(std::move(ring)), polys_(std::move(polys)) {
    std::sort(polys_.begin(), polys_.end(), [&](const Polynomial& a, const Polynomial& b) {
        return cmp(ring_->order, a.leading_monomial(), b.leading_monomial()) < 0;
    });
    masks_.reserve(polys_.size());
    for (auto& g : polys_) masks_.push_back(g.leading_monomial().divmask());
}

bool GroebnerBasis::is_unit() const {
    return polys_.size() == 1 && polys_[0].leading_monomial().is_one();
}

std::vector<Monomial> GroebnerBasis::leading_monomials() const {
    std::vector<Monomial> lms;
    lms.reserve(polys_.size());
    for (auto& g : polys_) lms.push_back(g.leading_monomial());
    return lms;
}

Polynomial GroebnerBasis::normal_form(const Polynomial& f) const {
    if (!ring_ || polys_.empty()) return f;
    Reducers red;
    for (auto& g : polys_) red.push(g);
    return full_reduce(f.to_ring(ring_), red, ring_);
}

GroebnerBasis buchberger(const RingPtr& ring, const std::vector<Polynomial>& gens,
                         const std::vector<Polynomial>& seed_basis) {
    const auto& F = ring->field;

    std::deque<Polynomial> basis;        // deque: reducers keep stable addresses
    std::vector<std::uint32_t> sugars;   // sugar degree per element
    std::set<Pair> pairs;

    Reducers red;
    auto add_poly = [&](const Polynomial& f0, std::uint32_t sugar_hint, bool skip_pairs) {
        Polynomial f = f0.monic();
        std::uint32_t t = std::uint32_t(basis.size());
        const Monomial& lt = f.leading_monomial();

        if (!skip_pairs) {
            // Gebauer-Moeller update. New pairs first.
            struct Cand {
                std::uint32_t i;
                Monomial lcm;
                bool coprime;
                bool keep = true;
            };
            std::vector<Cand> cands;
            cands.reserve(basis.size());
            for (std::uint32_t i = 0; i < t; ++i)
                cands.push_back({i, basis[i].leading_monomial().lcm(lt),
                                 basis[i].leading_monomial().coprime(lt)});
            // M: drop candidates whose lcm is properly divisible by another's.
            // F: for equal lcms keep the first.
            for (std::size_t a = 0; a < cands.size(); ++a) {
                if (!cands[a].keep) continue;
                for (std::size_t b = 0; b < cands.size(); ++b) {
                    if (a == b || !cands[b].keep) continue;
                    if (cands[b].lcm.divides(cands[a].lcm)) {
                        if (cands[b].lcm != cands[a].lcm || b < a) {
                            cands[a].keep = false;
                            break;
                        }
                    }
                }
            }
            // B: prune old pairs made redundant by the newcomer.
            for (auto it = pairs.begin(); it != pairs.end();) {
                const Monomial& l = it->lcm;
                if (lt.divides(l) && basis[it->i].leading_monomial().lcm(lt) != l &&
                    basis[it->j].leading_monomial().lcm(lt) != l) {
                    it = pairs.erase(it);
                } else {
                    ++it;
                }
            }
            for (auto& c : cands) {
                if (!c.keep || c.coprime) continue;  // product criterion last
                std::uint32_t s =
                    std::max(sugars[c.i] + c.lcm.degree() -
                                 basis[c.i].leading_monomial().degree(),
                             sugar_hint + c.lcm.degree() - lt.degree());
                pairs.insert({c.i, t, c.lcm, s});
            }
        }
        basis.push_back(std::move(f));
        sugars.push_back(sugar_hint);
        red.push(basis.back());
    };

    for (auto& g : seed_basis) {
        if (g.is_zero()) continue;
        add_poly(g.to_ring(ring), g.total_degree(), /*skip_pairs=*/true);
    }
    for (auto& g : gens) {
        if (g.is_zero()) continue;
        Polynomial h = full_reduce(g.to_ring(ring), red, ring);
        if (h.is_zero()) continue;
        add_poly(h, h.total_degree(), false);
    }

    while (!pairs.empty()) {
        Pair pr = *pairs.begin();
        pairs.erase(pairs.begin());
        const Polynomial& fi = basis[pr.i];
        const Polynomial& fj = basis[pr.j];
        Monomial mi = pr.lcm.div(fi.leading_monomial());
        Monomial mj = pr.lcm.div(fj.leading_monomial());
        // S(fi, fj) = lcm/lt(fi) * fi - lcm/lt(fj) * fj for monic inputs
        Accum work(MonoLess{&ring->order});
        accum_submul(work, F, F.neg(1), mi, fi);
        accum_submul(work, F, 1, mj, fj);
        Polynomial s = from_accum(ring, work);
        Polynomial h = full_reduce(s, red, ring);
        if (!h.is_zero()) add_poly(h, pr.sugar, false);
    }

    // Minimalize: drop elements whose leading monomial is divisible by
    // another survivor's, preferring later (more reduced) elements.
    std::vector<char> keep(basis.size(), 1);
    for (std::size_t a = 0; a < basis.size(); ++a) {
        if (!keep[a]) continue;
        for (std::size_t b = 0; b < basis.size(); ++b) {
            if (a == b || !keep[b]) continue;
            const Monomial& la = basis[a].leading_monomial();
            const Monomial& lb = basis[b].leading_monomial();
            if (lb.divides(la) && (la != lb || b > a)) {
                keep[a] = 0;
                break;
            }
        }
    }
    std::vector<Polynomial> minimal;
    for (std::size_t a = 0; a < basis.size(); ++a)
        if (keep[a]) minimal.push_back(basis[a]);

    // Tail-reduce each element against the others.
    std::vector<Polynomial> reduced;
    reduced.reserve(minimal.size());
    for (std::size_t a = 0; a < minimal.size(); ++a) {
        Reducers others;
        for (std::size_t b = 0; b < minimal.size(); ++b)
            if (b != a) others.push(minimal[b]);
        Polynomial h = full_reduce(minimal[a], others, ring);
        if (!h.is_zero()) reduced.push_back(h.monic());
    }
    return GroebnerBasis(ring, std::move(reduced));
}

bool buchberger_criterion_holds(const GroebnerBasis& gb) {
    const auto& polys = gb.polys();
    const RingPtr& ring = gb.ring();
    for (std::size_t i = 0; i < polys.size(); ++i)
        for (std::size_t j = i + 1; j < polys.size(); ++j) {
            Monomial l = polys[i].leading_monomial().lcm(polys[j].leading_monomial());
            Monomial mi = l.div(polys[i].leading_monomial());
            Monomial mj = l.div(polys[j].leading_monomial());
            Polynomial s = Polynomial::monomial(ring, mi, 1) * polys[i] -
                           Polynomial::monomial(ring, mj, 1) * polys[j];
            if (!gb.normal_form(s).is_zero()) return false;
        }
    return true;
}

}  // namespace gmforge::ideals
