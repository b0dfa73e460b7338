#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <mutex>
#include <optional>
#include <vector>

#include "gmforge/arith.hpp"

namespace gmforge::ideals {

using arith::Coeff;
using arith::Monomial;
using arith::MonomialOrder;
using arith::Polynomial;
using arith::RingPtr;

/// A reduced Groebner basis: monic elements, no leading monomial divides
/// another, tails fully reduced. Elements are sorted by ascending leading
/// monomial, so the output is canonical for a fixed ideal and order.
class GroebnerBasis {
public:
    GroebnerBasis() = default;
    GroebnerBasis(RingPtr ring, std::vector<Polynomial> polys);

    const RingPtr& ring() const { return ring_; }
    const std::vector<Polynomial>& polys() const { return polys_; }
    bool empty() const { return polys_.empty(); }
    std::size_t size() const { return polys_.size(); }
    bool is_unit() const;

    Polynomial normal_form(const Polynomial& f) const;
    bool contains(const Polynomial& f) const { return normal_form(f).is_zero(); }
    std::vector<Monomial> leading_monomials() const;

private:
    RingPtr ring_;
    std::vector<Polynomial> polys_;
    std::vector<std::uint32_t> masks_;
};

/// Buchberger with the Gebauer-Moeller pair update and sugar selection.
/// `seed_basis` elements are assumed to already be a Groebner basis among
/// themselves (their mutual pairs are skipped), which makes incremental
/// extension cheap.
GroebnerBasis buchberger(const RingPtr& ring, const std::vector<Polynomial>& gens,
                         const std::vector<Polynomial>& seed_basis = {});

/// Exact Hilbert data of a homogeneous ideal, all read off the leading-term
/// ideal. `numerator` is the numerator of the Hilbert series over
/// (1-t)^nvars; `dim_cone` is the Krull dimension of the affine cone.
struct HilbertData {
    std::vector<std::int64_t> numerator;
    int nvars = 0;
    int dim_cone = 0;           // 0 means S/I is a finite-dimensional space
    int dim_projective = -1;    // dim_cone - 1; -1 for the empty scheme
    std::int64_t degree = 0;    // leading coefficient data; 0 for empty
    /// Hilbert polynomial values P(0..dim_projective) plus enough extras to
    /// reconstruct the polynomial by finite differences.
    std::vector<std::int64_t> hp_values;

    /// Hilbert polynomial evaluated at m (exact, integer-valued).
    std::int64_t hilbert_polynomial(std::int64_t m) const;
    /// Hilbert function of S/I at degree d (series coefficient).
    std::int64_t hilbert_function(int d) const;
    /// Rational coefficients of the Hilbert polynomial, constant term first,
    /// as (numerator, denominator) pairs in lowest terms.
    std::vector<std::pair<std::int64_t, std::int64_t>> hp_coefficients() const;
};

HilbertData hilbert_from_leading_terms(const std::vector<Monomial>& lts, int nvars);

/// Handle to a homogeneous ideal with cached Groebner bases (one per order)
/// and cached Hilbert data. Handles are create-once; caches fill lazily
/// under a guard and are safe for concurrent reads afterwards.
class Ideal {
public:
    Ideal() = default;
    Ideal(RingPtr ring, std::vector<Polynomial> gens);

    const RingPtr& ring() const { return ring_; }
    const std::vector<Polynomial>& gens() const { return gens_; }

    const GroebnerBasis& groebner() const;  // ring's own order
    const GroebnerBasis& groebner(const MonomialOrder& ord) const;
    const HilbertData& hilbert() const;

    Polynomial normal_form(const Polynomial& f) const { return groebner().normal_form(f); }
    bool contains(const Polynomial& f) const;
    bool contains_ideal(const Ideal& other) const;
    bool equals(const Ideal& other) const;

    int dimension() const { return hilbert().dim_projective; }
    std::int64_t degree() const;
    /// For surfaces (dimension 2): P(t) = (d/2)t^2 + ((d/2)+1-g)t + chi.
    std::int64_t sectional_genus() const;
    std::int64_t euler_characteristic() const;
    /// Arithmetic genus of a curve (dimension 1): 1 - chi.
    std::int64_t arithmetic_genus() const;

    bool is_zero() const;
    bool is_unit() const;
    bool is_homogeneous() const;

private:
    RingPtr ring_;
    std::vector<Polynomial> gens_;
    mutable std::mutex mu_;
    mutable std::map<MonomialOrder, GroebnerBasis> gb_;
    mutable std::optional<HilbertData> hilbert_;

public:
    Ideal(const Ideal& o) : ring_(o.ring_), gens_(o.gens_) {
        std::lock_guard<std::mutex> lk(o.mu_);
        gb_ = o.gb_;
        hilbert_ = o.hilbert_;
    }
    Ideal& operator=(const Ideal& o);
};

// ---- constructions -------------------------------------------------------

Ideal ideal_from_strings(const RingPtr& r, const std::vector<std::string>& gens);

/// I ∩ subring on the kept variables (kill = indices to eliminate), via a
/// block elimination order. The result lives in the same ring.
Ideal eliminate(const Ideal& I, const std::vector<int>& kill);

/// Rebuilds an eliminated ideal in a fresh ring on the kept variables only.
Ideal contract_to_variables(const Ideal& I, const std::vector<int>& keep);

/// Ideal intersection via the tag-variable trick.
Ideal intersect(const Ideal& I, const Ideal& J);

/// Colon and saturation. quotient(I, J) = {f : fJ ⊆ I};
/// saturate(I, J) = union over k of (I : J^k).
Ideal colon_single(const Ideal& I, const Polynomial& f);
Ideal quotient(const Ideal& I, const Ideal& J);
Ideal saturate_single(const Ideal& I, const Polynomial& f);
Ideal saturate(const Ideal& I, const Ideal& J);

/// Saturation with respect to the irrelevant maximal ideal. Uses the
/// grevlex trick (divide the basis by powers of a general last variable
/// after a random coordinate change) and confirms the result against a
/// second independent coordinate change; falls back to per-variable
/// saturations when the two draws disagree.
Ideal saturate_irrelevant(const Ideal& I, std::uint64_t seed = 0x5eedULL);
/// The exact intersection-of-variable-saturations route (for cross-checks).
Ideal saturate_irrelevant_exact(const Ideal& I);

/// Ordinary m-th power; m = 0 gives the unit ideal.
Ideal ideal_power(const Ideal& I, int m, bool saturate_result = false);

/// Exact division of f by g (throws if g does not divide f).
Polynomial divide_exact(const Polynomial& f, const Polynomial& g);

// ---- graded pieces -------------------------------------------------------

std::vector<Monomial> monomials_of_degree(const RingPtr& r, int d);

/// Dimension of the degree-d graded piece of I.
std::int64_t graded_piece_dim(const Ideal& I, int d);

/// A reduced-row-echelon basis of the degree-d piece of I.
std::vector<Polynomial> graded_piece_basis(const Ideal& I, int d);

/// Number of minimal generators of I per degree.
std::map<int, int> minimal_generators_by_degree(const Ideal& I);

// ---- singular loci -------------------------------------------------------

struct SingularLocusReport {
    int dimension = -1;       // projective dimension of the singular scheme
    std::int64_t count = 0;   // its degree when zero-dimensional
    bool certified = false;   // degree matched rank-certified rational points
    std::vector<std::vector<Coeff>> points;  // certified singular points
};

/// Scheme of singular points of an equidimensional projective scheme, via
/// size-codim minors of the Jacobian. Small Jacobians use all minors; large
/// ones use random row-subset/column-mix determinants (which always cut out
/// a scheme containing the singular locus) and certify each candidate point
/// by an exact Jacobian rank evaluation, so reported counts stay exact.
SingularLocusReport singular_locus_report(const Ideal& I, std::uint64_t seed = 0x51eeULL);

/// Degree of the singular scheme (0 if smooth); throws ContractViolation if
/// the singular locus is positive-dimensional or cannot be certified.
std::int64_t node_count(const Ideal& I, std::uint64_t seed = 0x51eeULL);

/// The singular scheme itself (saturated).
Ideal singular_locus(const Ideal& I);

/// All S-pairs of a basis reduce to zero (test hook for the Buchberger
/// criterion).
bool buchberger_criterion_holds(const GroebnerBasis& gb);

/// F_p-rational points of a zero-dimensional projective scheme, found by
/// chart-wise elimination to univariate polynomials and root extraction.
/// Points are normalized so the last nonzero coordinate is 1.
std::vector<std::vector<Coeff>> rational_points(const Ideal& I, std::uint64_t seed = 0,
                                                int max_points = 1 << 20);

/// Number of geometric points of a zero-dimensional scheme: the scheme is
/// moved into one affine chart and its radical is formed by adjoining the
/// squarefree parts of the univariate eliminants (Seidenberg), whose
/// staircase is then counted. Exact over F_p and its extensions.
std::int64_t reduced_point_count(const Ideal& J, std::uint64_t seed = 0x5eedULL);

}  // namespace gmforge::ideals
