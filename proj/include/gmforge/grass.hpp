#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "gmforge/ideal.hpp"

namespace gmforge::grass {

using arith::Coeff;
using arith::Polynomial;
using arith::RingPtr;
using ideals::Ideal;

/// Integer combination of Schubert classes sigma_{a,b} (a >= b >= 0,
/// a <= n-1) on the Grassmannian G(1,n) of lines in P^n. The arithmetic is
/// pure combinatorics, independent of the Groebner side of the toolkit.
class SchubertCycle {
public:
    explicit SchubertCycle(int n) : n_(n) {}
    SchubertCycle(int n, int a, int b, std::int64_t c = 1);

    int n() const { return n_; }
    const std::map<std::pair<int, int>, std::int64_t>& parts() const { return parts_; }
    bool is_zero() const { return parts_.empty(); }
    std::int64_t coefficient(int a, int b) const;

    /// All partitions in one combination must share a codimension.
    bool homogeneous() const;
    int codimension() const;  // -1 for the zero cycle

    SchubertCycle operator+(const SchubertCycle& o) const;
    SchubertCycle operator*(const SchubertCycle& o) const;
    SchubertCycle scaled(std::int64_t c) const;
    SchubertCycle pow(int e) const;
    bool operator==(const SchubertCycle& o) const { return n_ == o.n_ && parts_ == o.parts_; }

    /// Prints like `11*s(3,1)+6*s(2,2)`.
    std::string str() const;

private:
    int n_;
    std::map<std::pair<int, int>, std::int64_t> parts_;
    void insert(int a, int b, std::int64_t c);
    friend SchubertCycle pieri(const SchubertCycle&, int);
};

inline SchubertCycle sigma(int n, int a, int b = 0) { return SchubertCycle(n, a, b); }

/// Pieri rule: sigma_lambda * sigma_k.
SchubertCycle pieri(const SchubertCycle& c, int k);

/// Coefficient of the top class sigma_{n-1,n-1}.
std::int64_t integral(const SchubertCycle& c);

/// Independent combinatorial oracle: number of standard-tableau lattice
/// paths filling the 2 x (n-1) box, i.e. integral(sigma_1^{2(n-1)}).
std::int64_t lattice_path_count(int n);

/// Plücker coordinate bookkeeping for G(1,n) in P^{C(n+1,2)-1}.
struct PlueckerIndex {
    int n;
    explicit PlueckerIndex(int n_);
    int nvars() const { return n * (n + 1) / 2; }
    int var(int i, int j) const;  // index of p_ij, 0 <= i < j <= n
    std::pair<int, int> pair_of(int v) const;
};

/// The ideal of G(1,n): the 4x4 sub-Pfaffians of the generic skew matrix.
Ideal pluecker_ideal(const RingPtr& r, int n);

/// Plücker vector of the line through two points of P^n.
std::vector<Coeff> line_through(const arith::PrimeField& F, const std::vector<Coeff>& a,
                                const std::vector<Coeff>& b);

/// Linear forms cutting the Schubert variety sigma_{1,1}(H) = {lines in the
/// hyperplane H} on G(1,n); `h` is the covector of H.
std::vector<Polynomial> sigma11_conditions(const RingPtr& r, int n, const std::vector<Coeff>& h);

/// Linear forms cutting sigma_2(L) = {lines meeting L}, with L given by its
/// Plücker vector (the polarized Pfaffians).
std::vector<Polynomial> sigma2_conditions(const RingPtr& r, int n, const std::vector<Coeff>& line);

/// Schubert coordinates (a, b) of a surface S inside the Plücker-embedded
/// G(1,4): the class of S is a*sigma_{3,1} + b*sigma_{2,2}.
struct SurfaceClassG14 {
    std::int64_t a = 0;
    std::int64_t b = 0;
    bool operator==(const SurfaceClassG14& o) const { return a == o.a && b == o.b; }
};

/// Computes (a, b) by intersecting with seeded random Schubert varieties:
/// b from a sigma_{1,1} section, a = deg(S) - b, cross-checked against a
/// sigma_2 section. Redraws on wrong-dimensional intersections; throws on a
/// cross-check mismatch.
SurfaceClassG14 surface_class(const Ideal& S, std::uint64_t seed, int budget = 8);

}  // namespace gmforge::grass
