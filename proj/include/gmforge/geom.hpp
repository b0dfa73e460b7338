#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "gmforge/ideal.hpp"
#include "gmforge/session.hpp"

namespace gmforge::geom {

using arith::Coeff;
using arith::Polynomial;
using arith::RingPtr;
using ideals::Ideal;

/// Point of P^n over F_p, normalized so the last nonzero coordinate is 1.
struct PointP {
    std::vector<Coeff> coords;

    static PointP normalized(const arith::PrimeField& F, std::vector<Coeff> v);
    bool operator==(const PointP& o) const { return coords == o.coords; }
};

/// A projective scheme: an ambient P^N and a defining ideal. The ideal is
/// saturated with respect to the irrelevant ideal before it is handed out;
/// schemes built from constructions that already yield saturated ideals
/// (images of maps from integral schemes) skip the extra work.
class Scheme {
public:
    Scheme() = default;
    explicit Scheme(Ideal I, bool assume_saturated = false);
    static Scheme projective_space(const RingPtr& r);

    const RingPtr& ring() const { return ring_; }
    int ambient_dim() const { return ring_->nvars - 1; }
    const Ideal& ideal() const;      // saturated
    const Ideal& raw_ideal() const { return ideal_; }

    int dim() const { return ideal().dimension(); }
    std::int64_t degree() const { return ideal().degree(); }
    std::int64_t sectional_genus() const { return ideal().sectional_genus(); }
    std::int64_t arithmetic_genus() const { return ideal().arithmetic_genus(); }
    std::int64_t euler_characteristic() const { return ideal().euler_characteristic(); }
    std::map<int, int> generator_degrees() const {
        return ideals::minimal_generators_by_degree(ideal());
    }

    bool contains_point(const std::vector<Coeff>& pt) const;
    bool contains_scheme(const Scheme& sub) const;  // sub ⊆ this
    bool is_empty() const { return dim() < 0; }

private:
    RingPtr ring_;
    Ideal ideal_;
    mutable std::optional<Ideal> saturated_;
    mutable bool assume_saturated_ = false;
    mutable std::mutex mu_;

public:
    Scheme(const Scheme& o);
    Scheme& operator=(const Scheme& o);
};

/// A rational map X ⇢ P^M given by M+1 forms of one degree on the source.
struct RationalMap {
    Scheme source;
    std::vector<Polynomial> forms;

    int target_dim() const { return int(forms.size()) - 1; }
    std::uint32_t form_degree() const;
    /// Coordinates of the image of a point (empty when the point is in the
    /// base locus).
    std::vector<Coeff> apply(const std::vector<Coeff>& pt) const;
};

/// Validates the forms (equal degree, not all zero on a source component).
RationalMap make_map(const Scheme& X, std::vector<Polynomial> forms);

/// Closure of the image, by eliminating the source variables from the graph
/// ideal and contracting to a fresh ring on the target variables.
Scheme image(const RationalMap& f);

/// Image of the restriction of f to a subscheme of its source.
Scheme restrict_image(const RationalMap& f, const Scheme& sub);

/// Saturated vanishing scheme of all the forms on the source.
Scheme base_locus(const RationalMap& f);

/// Scheme-theoretic fiber over q, with the base locus saturated away.
Scheme fiber(const RationalMap& f, const std::vector<Coeff>& q, Rng& rng);

/// Length of the fiber over the image of a random source point, majority of
/// three trials; 1 means birational onto the image.
std::int64_t map_degree(const RationalMap& f, Rng& rng);
bool is_birational_onto_image(const RationalMap& f, Rng& rng);

/// k-th entry: the source sliced to dimension k by random hyperplanes,
/// pushed forward with the multiplicity of the restricted map (0 when the
/// sliced image drops dimension).
std::vector<std::int64_t> projective_degrees(const RationalMap& f, Rng& rng);

/// Random F_p-point: slice by random complementary hyperplanes, solve the
/// zero-dimensional system, verify on the generators; retries up to budget.
PointP random_point(const Scheme& X, Rng& rng, int budget = 32);

/// Basis of |H^0(I_center^m (e))| on X: the degree-e piece of the saturated
/// m-th power of the center, reduced modulo the degree-e piece of X.
std::vector<Polynomial> linear_system(const Scheme& X, const Ideal& center, int e, int m);

/// Linear projection away from the subspace cut by independent linear forms.
Scheme project_from(const Scheme& X, const std::vector<Polynomial>& center_forms);

/// A random point on the secant line through two random points of X,
/// distinct from both.
PointP secant_point(const Scheme& X, Rng& rng, int budget = 32);

/// Cone in one more variable; the default vertex is the new coordinate
/// point, an explicit vertex is moved there by a coordinate change.
Scheme cone_over(const Scheme& X);
Scheme cone_over(const Scheme& X, const std::vector<Coeff>& vertex);

/// X cut by k random hyperplanes (saturated), redrawn until the dimension
/// drops by exactly k.
Scheme linear_section(const Scheme& X, int k, Rng& rng, int budget = 8);

/// Ideal of a single point (the n independent linear forms vanishing there).
std::vector<Polynomial> point_forms(const RingPtr& r, const std::vector<Coeff>& pt);

/// Saturation of I by J that first tries two independent random single-form
/// saturations and falls back to the exact generator-wise route when the
/// draws disagree.
Ideal saturate_general(const Ideal& I, const Ideal& J, Rng& rng);

}  // namespace gmforge::geom
