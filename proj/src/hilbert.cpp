#include <algorithm>
#include <numeric>
#include <string>
#include <unordered_map>

#include "gmforge/ideal.hpp"

namespace gmforge::ideals {

namespace {

using Series = std::vector<std::int64_t>;  // coefficients of a poly in t

void trim(Series& s) {
    while (!s.empty() && s.back() == 0) s.pop_back();
}

Series add(const Series& a, const Series& b) {
    Series r(std::max(a.size(), b.size()), 0);
    for (std::size_t i = 0; i < a.size(); ++i) r[i] += a[i];
    for (std::size_t i = 0; i < b.size(); ++i) r[i] += b[i];
    trim(r);
    return r;
}

Series mul(const Series& a, const Series& b) {
    if (a.empty() || b.empty()) return {};
    Series r(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) {
            __int128 v = __int128(r[i + j]) + __int128(a[i]) * b[j];
            if (v > INT64_MAX || v < INT64_MIN)
                throw StructuralError("Hilbert numerator coefficient overflow");
            r[i + j] = std::int64_t(v);
        }
    trim(r);
    return r;
}

Series shift(const Series& a, int k) {
    if (a.empty()) return {};
    Series r(a.size() + k, 0);
    for (std::size_t i = 0; i < a.size(); ++i) r[i + k] = a[i];
    return r;
}

// sorted minimal generating set: drop multiples
std::vector<Monomial> minimalize(std::vector<Monomial> gens) {
    std::sort(gens.begin(), gens.end(), [](const Monomial& a, const Monomial& b) {
        if (a.degree() != b.degree()) return a.degree() < b.degree();
        return a.exponents() < b.exponents();
    });
    gens.erase(std::unique(gens.begin(), gens.end()), gens.end());
    std::vector<Monomial> out;
    for (auto& m : gens) {
        bool redundant = false;
        for (auto& g : out)
            if (g.divides(m)) {
                redundant = true;
                break;
            }
        if (!redundant) out.push_back(m);
    }
    return out;
}

std::string key_of(const std::vector<Monomial>& gens) {
    std::string k;
    k.reserve(gens.size() * (gens.empty() ? 1 : gens[0].nvars() + 1));
    for (auto& m : gens) {
        k.append(reinterpret_cast<const char*>(m.exponents().data()), m.exponents().size());
        k.push_back('\x7f');
    }
    return k;
}

struct NumeratorEngine {
    std::unordered_map<std::string, Series> memo;

    Series run(std::vector<Monomial> gens) {
        gens = minimalize(std::move(gens));
        if (gens.empty()) return {1};
        if (gens[0].is_one()) return {};
        bool coprime = true;
        for (std::size_t i = 0; i < gens.size() && coprime; ++i)
            for (std::size_t j = i + 1; j < gens.size(); ++j)
                if (!gens[i].coprime(gens[j])) {
                    coprime = false;
                    break;
                }
        if (coprime) {
            Series r{1};
            for (auto& m : gens) {
                Series f(m.degree() + 1, 0);
                f[0] = 1;
                f[m.degree()] = -1;
                r = mul(r, f);
            }
            return r;
        }
        std::string key = key_of(gens);
        auto it = memo.find(key);
        if (it != memo.end()) return it->second;

        // pivot: the variable occurring in the most generators
        std::size_t nv = gens[0].nvars();
        std::vector<int> occ(nv, 0);
        for (auto& m : gens)
            for (std::size_t v = 0; v < nv; ++v)
                if (m.exponent(v)) ++occ[v];
        std::size_t pivot = std::max_element(occ.begin(), occ.end()) - occ.begin();

        // 0 -> (S/(I:x))(-1) -> S/I -> S/(I+(x)) -> 0, multiplication by x.
        std::vector<Monomial> plus, colon;
        plus.push_back(Monomial::variable(nv, pivot));
        for (auto& m : gens) {
            if (!m.exponent(pivot)) plus.push_back(m);
            auto e = m.exponents();
            if (e[pivot]) --e[pivot];
            colon.push_back(Monomial(std::move(e)));
        }
        Series r = add(run(std::move(plus)), shift(run(std::move(colon)), 1));
        memo.emplace(std::move(key), r);
        return r;
    }
};

std::int64_t binom_poly(std::int64_t u, int k) {
    // u (u-1) ... (u-k+1) / k!, the polynomial extension of the binomial
    __int128 num = 1;
    for (int i = 0; i < k; ++i) num *= (u - i);
    __int128 den = 1;
    for (int i = 2; i <= k; ++i) den *= i;
    __int128 v = num / den;
    if (num % den != 0) throw StructuralError("binomial evaluation not integral");
    if (v > INT64_MAX || v < INT64_MIN) throw StructuralError("binomial overflow");
    return std::int64_t(v);
}

}  // namespace

HilbertData hilbert_from_leading_terms(const std::vector<Monomial>& lts, int nvars) {
    NumeratorEngine eng;
    Series num = eng.run(lts);

    HilbertData h;
    h.nvars = nvars;
    h.numerator = num;
    if (num.empty()) {  // unit ideal: S/I = 0
        h.dim_cone = 0;
        h.dim_projective = -1;
        h.degree = 0;
        return h;
    }
    // cancel factors of (1-t)
    Series q = num;
    int cancels = 0;
    while (true) {
        std::int64_t at1 = std::accumulate(q.begin(), q.end(), std::int64_t(0));
        if (at1 != 0) break;
        Series div(q.size() ? q.size() - 1 : 0, 0);
        std::int64_t acc = 0;
        for (std::size_t i = 0; i + 1 < q.size() + 1 && i < div.size(); ++i) {
            acc += q[i];
            div[i] = acc;
        }
        trim(div);
        q = div;
        ++cancels;
        if (q.empty()) break;
    }
    h.dim_cone = nvars - cancels;
    h.dim_projective = h.dim_cone - 1;
    if (h.dim_cone <= 0) {
        h.dim_cone = std::max(h.dim_cone, 0);
        h.dim_projective = -1;
        h.degree = 0;
        // still record the (eventually zero) Hilbert polynomial
        h.hp_values.assign(1, 0);
        return h;
    }
    std::int64_t deg = std::accumulate(q.begin(), q.end(), std::int64_t(0));
    h.degree = deg;

    // P(m) = sum_i q_i * C(m - i + D - 1, D - 1), D = dim_cone
    const int D = h.dim_cone;
    auto hp = [&](std::int64_t m) {
        std::int64_t acc = 0;
        for (std::size_t i = 0; i < q.size(); ++i)
            acc += q[i] * binom_poly(m - std::int64_t(i) + D - 1, D - 1);
        return acc;
    };
    for (int m = 0; m <= D; ++m) h.hp_values.push_back(hp(m));
    return h;
}

std::int64_t HilbertData::hilbert_polynomial(std::int64_t m) const {
    if (hp_values.empty()) return 0;
    // Newton forward differences from the stored values at 0..D
    std::vector<std::int64_t> diff = hp_values;
    std::int64_t acc = 0;
    for (std::size_t k = 0; k < hp_values.size(); ++k) {
        acc += diff[0] * binom_poly(m, int(k));
        for (std::size_t i = 0; i + 1 < diff.size() - 0; ++i) diff[i] = diff[i + 1] - diff[i];
        if (!diff.empty()) diff.pop_back();
    }
    return acc;
}

std::int64_t HilbertData::hilbert_function(int d) const {
    if (d < 0) return 0;
    std::int64_t acc = 0;
    for (std::size_t i = 0; i < numerator.size(); ++i) {
        if (int(i) > d) break;
        acc += numerator[i] * binom_poly(d - std::int64_t(i) + nvars - 1, nvars - 1);
    }
    return acc;
}

std::vector<std::pair<std::int64_t, std::int64_t>> HilbertData::hp_coefficients() const {
    // Solve the small Vandermonde system at t = 0..r with exact fractions.
    int r = std::max(dim_projective, 0);
    int n = r + 1;
    struct Frac {
        __int128 num = 0, den = 1;
        void reduce() {
            if (den < 0) {
                num = -num;
                den = -den;
            }
            __int128 a = num < 0 ? -num : num, b = den;
            while (b) {
                __int128 t = a % b;
                a = b;
                b = t;
            }
            if (a > 1) {
                num /= a;
                den /= a;
            }
        }
    };
    if (hp_values.empty() || dim_projective < 0) return {{0, 1}};
    std::vector<std::vector<Frac>> mat(n, std::vector<Frac>(n + 1));
    for (int row = 0; row < n; ++row) {
        __int128 tp = 1;
        for (int col = 0; col < n; ++col) {
            mat[row][col] = {tp, 1};
            tp *= row;
        }
        mat[row][n] = {hp_values[row], 1};
    }
    for (int col = 0; col < n; ++col) {
        int piv = col;
        while (piv < n && mat[piv][col].num == 0) ++piv;
        std::swap(mat[piv], mat[col]);
        for (int row = 0; row < n; ++row) {
            if (row == col || mat[row][col].num == 0) continue;
            // row -= (row[col]/piv[col]) * pivrow
            Frac f{mat[row][col].num * mat[col][col].den, mat[row][col].den * mat[col][col].num};
            f.reduce();
            for (int k = col; k <= n; ++k) {
                Frac t{f.num * mat[col][k].num, f.den * mat[col][k].den};
                t.reduce();
                Frac& slot = mat[row][k];
                Frac res{slot.num * t.den - t.num * slot.den, slot.den * t.den};
                res.reduce();
                slot = res;
            }
        }
    }
    std::vector<std::pair<std::int64_t, std::int64_t>> coeffs;
    for (int i = 0; i < n; ++i) {
        Frac v{mat[i][n].num * mat[i][i].den, mat[i][n].den * mat[i][i].num};
        v.reduce();
        coeffs.push_back({std::int64_t(v.num), std::int64_t(v.den)});
    }
    return coeffs;
}

}  // namespace gmforge::ideals
