#include "gmforge/grass.hpp"

#include <algorithm>
#include <functional>
#include <random>
#include <sstream>

namespace gmforge::grass {

using arith::Monomial;
using arith::PrimeField;
using arith::Term;

SchubertCycle::SchubertCycle(int n, int a, int b, std::int64_t c) : n_(n) {
    if (b > a || b < 0) throw StructuralError("schubert: need a >= b >= 0");
    insert(a, b, c);
}

void SchubertCycle::insert(int a, int b, std::int64_t c) {
    if (c == 0 || a > n_ - 1) return;  // classes outside the box vanish
    auto key = std::make_pair(a, b);
    auto it = parts_.find(key);
    if (it == parts_.end()) {
        parts_.emplace(key, c);
    } else {
        it->second += c;
        if (it->second == 0) parts_.erase(it);
    }
}

std::int64_t SchubertCycle::coefficient(int a, int b) const {
    auto it = parts_.find({a, b});
    return it == parts_.end() ? 0 : it->second;
}

bool SchubertCycle::homogeneous() const {
    int codim = -1;
    for (auto& [p, c] : parts_) {
        int k = p.first + p.second;
        if (codim == -1) codim = k;
        if (k != codim) return false;
    }
    return true;
}

int SchubertCycle::codimension() const {
    if (parts_.empty()) return -1;
    if (!homogeneous()) throw StructuralError("mixed-codimension cycle");
    return parts_.begin()->first.first + parts_.begin()->first.second;
}

SchubertCycle SchubertCycle::operator+(const SchubertCycle& o) const {
    if (n_ != o.n_) throw StructuralError("cycles on different Grassmannians");
    SchubertCycle r = *this;
    for (auto& [p, c] : o.parts_) r.insert(p.first, p.second, c);
    return r;
}

SchubertCycle SchubertCycle::scaled(std::int64_t c) const {
    SchubertCycle r(n_);
    if (c != 0)
        for (auto& [p, v] : parts_) r.insert(p.first, p.second, v * c);
    return r;
}

SchubertCycle pieri(const SchubertCycle& cyc, int k) {
    // sigma_{a,b} * sigma_k = sum of sigma_{a',b'} with a'+b' = a+b+k,
    // a' >= a >= b' >= b, a' <= n-1 (no two added boxes in one column).
    SchubertCycle r(cyc.n_);
    if (k < 0) throw StructuralError("pieri: negative degree");
    for (auto& [p, c] : cyc.parts_) {
        auto [a, b] = p;
        for (int bp = b; bp <= a; ++bp) {
            int ap = a + b + k - bp;
            if (ap < bp || ap > cyc.n_ - 1 || ap < a) continue;
            r.insert(ap, bp, c);
        }
    }
    return r;
}

SchubertCycle SchubertCycle::operator*(const SchubertCycle& o) const {
    if (n_ != o.n_) throw StructuralError("cycles on different Grassmannians");
    // sigma_{a,b} = sigma_{1,1}^b * sigma_{a-b} and sigma_{1,1} shifts both
    // rows, so each pairwise product reduces to one Pieri expansion.
    SchubertCycle r(n_);
    for (auto& [p, c] : parts_)
        for (auto& [q, d] : o.parts_) {
            SchubertCycle base(n_, p.first - p.second, 0, c * d);
            SchubertCycle expanded = pieri(base, q.first - q.second);
            int shift = p.second + q.second;
            for (auto& [m, v] : expanded.parts_)
                r.insert(m.first + shift, m.second + shift, v);
        }
    return r;
}

SchubertCycle SchubertCycle::pow(int e) const {
    SchubertCycle r(n_, 0, 0);
    for (int i = 0; i < e; ++i) r = r * *this;
    return r;
}

std::int64_t integral(const SchubertCycle& c) { return c.coefficient(c.n() - 1, c.n() - 1); }

std::string SchubertCycle::str() const {
    if (parts_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    // print higher a first, matching the usual 11*s(3,1)+6*s(2,2) shape
    for (auto it = parts_.rbegin(); it != parts_.rend(); ++it) {
        auto& [p, c] = *it;
        if (!first) os << (c >= 0 ? "+" : "");
        first = false;
        if (c == -1)
            os << "-";
        else if (c != 1)
            os << c << "*";
        os << "s(" << p.first << "," << p.second << ")";
    }
    return os.str();
}

std::int64_t lattice_path_count(int n) {
    // walk the 2 x (n-1) box one cell at a time, staying a partition
    std::int64_t count = 0;
    int m = n - 1;
    std::function<void(int, int)> walk = [&](int top, int bottom) {
        if (top == m && bottom == m) {
            ++count;
            return;
        }
        if (top < m) walk(top + 1, bottom);
        if (bottom < top) walk(top, bottom + 1);
    };
    walk(0, 0);
    return count;
}

PlueckerIndex::PlueckerIndex(int n_) : n(n_) {
    if (n < 2) throw StructuralError("G(1,n) needs n >= 2");
}

int PlueckerIndex::var(int i, int j) const {
    if (i > j) std::swap(i, j);
    if (i == j || j > n) throw StructuralError("bad Plücker pair");
    // pairs ordered (0,1), (0,2), ..., (0,n), (1,2), ...
    return i * (2 * n - i + 1) / 2 + (j - i - 1);
}

std::pair<int, int> PlueckerIndex::pair_of(int v) const {
    for (int i = 0; i <= n; ++i) {
        int row = n - i;
        if (v < row) return {i, i + 1 + v};
        v -= row;
    }
    throw StructuralError("bad Plücker variable index");
}

Ideal pluecker_ideal(const RingPtr& r, int n) {
    PlueckerIndex ix(n);
    if (r->nvars != ix.nvars())
        throw StructuralError("ring has wrong variable count for G(1," + std::to_string(n) + ")");
    std::vector<Polynomial> pfaffians;
    // 4x4 Pfaffian of rows/cols {i<j<k<l}: p_ij p_kl - p_ik p_jl + p_il p_jk
    for (int i = 0; i <= n; ++i)
        for (int j = i + 1; j <= n; ++j)
            for (int k = j + 1; k <= n; ++k)
                for (int l = k + 1; l <= n; ++l) {
                    auto mono = [&](int a, int b, int c, int d, Coeff s) {
                        Monomial m =
                            Monomial::variable(r->nvars, ix.var(a, b))
                                .mul(Monomial::variable(r->nvars, ix.var(c, d)));
                        return Term{m, r->field.reduce(s)};
                    };
                    pfaffians.push_back(Polynomial(
                        r, {mono(i, j, k, l, 1), mono(i, k, j, l, -1), mono(i, l, j, k, 1)}));
                }
    return Ideal(r, std::move(pfaffians));
}

std::vector<Coeff> line_through(const PrimeField& F, const std::vector<Coeff>& a,
                                const std::vector<Coeff>& b) {
    const int n = int(a.size()) - 1;
    PlueckerIndex ix(n);
    std::vector<Coeff> p(ix.nvars(), 0);
    for (int i = 0; i <= n; ++i)
        for (int j = i + 1; j <= n; ++j)
            p[ix.var(i, j)] = F.sub(F.mul(a[i], b[j]), F.mul(a[j], b[i]));
    return p;
}

std::vector<Polynomial> sigma11_conditions(const RingPtr& r, int n, const std::vector<Coeff>& h) {
    // a line with 2-vector w lies in V(h) iff the contraction h . w = 0:
    // for each j, sum_i h_i w_ij = 0 (w skew).
    PlueckerIndex ix(n);
    std::vector<Polynomial> out;
    for (int j = 0; j <= n; ++j) {
        std::vector<Term> ts;
        for (int i = 0; i <= n; ++i) {
            if (i == j) continue;
            Coeff c = i < j ? h[i] : r->field.neg(h[i]);
            if (r->field.reduce(c))
                ts.push_back({Monomial::variable(r->nvars, ix.var(i, j)), r->field.reduce(c)});
        }
        Polynomial f(r, std::move(ts));
        if (!f.is_zero()) out.push_back(f);
    }
    return out;
}

std::vector<Polynomial> sigma2_conditions(const RingPtr& r, int n,
                                          const std::vector<Coeff>& line) {
    // w meets the fixed line eta iff w ^ eta = 0: polarize each 4-set
    // Pfaffian at eta, leaving linear forms in the p_ij.
    PlueckerIndex ix(n);
    std::vector<Polynomial> out;
    auto eta = [&](int i, int j) -> Coeff {
        if (i == j) return 0;
        Coeff v = line[ix.var(std::min(i, j), std::max(i, j))];
        return i < j ? v : r->field.neg(v);
    };
    for (int i = 0; i <= n; ++i)
        for (int j = i + 1; j <= n; ++j)
            for (int k = j + 1; k <= n; ++k)
                for (int l = k + 1; l <= n; ++l) {
                    std::vector<Term> ts;
                    auto add = [&](int a, int b, int c, int d, bool pos) {
                        // contributes p_ab * eta(c,d) + eta(a,b) * p_cd
                        Coeff e1 = eta(c, d), e2 = eta(a, b);
                        if (!pos) {
                            e1 = r->field.neg(e1);
                            e2 = r->field.neg(e2);
                        }
                        if (r->field.reduce(e1))
                            ts.push_back({Monomial::variable(r->nvars, ix.var(a, b)),
                                          r->field.reduce(e1)});
                        if (r->field.reduce(e2))
                            ts.push_back({Monomial::variable(r->nvars, ix.var(c, d)),
                                          r->field.reduce(e2)});
                    };
                    add(i, j, k, l, true);
                    add(i, k, j, l, false);
                    add(i, l, j, k, true);
                    Polynomial f(r, std::move(ts));
                    if (!f.is_zero()) out.push_back(f);
                }
    return out;
}

namespace {

std::int64_t finite_section_count(const Ideal& S, const std::vector<Polynomial>& conditions) {
    std::vector<Polynomial> gens = S.gens();
    for (auto& c : conditions) gens.push_back(c);
    Ideal cut(S.ring(), std::move(gens));
    const auto& h = cut.hilbert();
    if (h.dim_projective > 0) return -1;  // non-transverse draw
    return h.dim_projective < 0 ? 0 : h.degree;
}

}  // namespace

SurfaceClassG14 surface_class(const Ideal& S, std::uint64_t seed, int budget) {
    const RingPtr& r = S.ring();
    const int n = 4;
    PlueckerIndex ix(n);
    if (r->nvars != ix.nvars())
        throw StructuralError("surface_class expects the Plücker ring of G(1,4)");
    Ideal G = pluecker_ideal(r, n);
    if (!S.contains_ideal(G))
        throw ContractViolation("surface does not lie on G(1,4)");
    if (S.dimension() != 2)
        throw ContractViolation("surface_class expects a surface, got dimension " +
                                std::to_string(S.dimension()));
    const std::int64_t deg = S.degree();

    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<Coeff> dist(0, r->field.p() - 1);
    auto rand_vec = [&](int len) {
        std::vector<Coeff> v(len);
        bool nonzero = false;
        while (!nonzero) {
            for (auto& x : v) x = dist(rng);
            for (auto& x : v) nonzero |= (x != 0);
        }
        return v;
    };

    for (int attempt = 0; attempt < budget; ++attempt) {
        // b: lines of S inside a random hyperplane of P^4
        std::int64_t b = finite_section_count(S, sigma11_conditions(r, n, rand_vec(n + 1)));
        if (b < 0) continue;
        // a: lines of S meeting a random line of P^4
        std::vector<Coeff> eta = line_through(r->field, rand_vec(n + 1), rand_vec(n + 1));
        std::int64_t a = finite_section_count(S, sigma2_conditions(r, n, eta));
        if (a < 0) continue;
        if (a + b != deg)
            throw ContractViolation("surface_class cross-check failed: a=" + std::to_string(a) +
                                    " b=" + std::to_string(b) + " deg=" + std::to_string(deg) +
                                    " (seed " + std::to_string(seed) + ")");
        return {a, b};
    }
    throw BudgetExhausted("surface_class: no transverse Schubert section found (seed " +
                          std::to_string(seed) + ")");
}

}  // namespace gmforge::grass
