#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace gmforge {

/// Error kinds used across the toolkit. Structural errors are programmer
/// mistakes (mismatched rings, bad dimensions); budget errors are recoverable
/// by raising the prime or the retry budget.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct StructuralError : Error {
    using Error::Error;
};
struct DivisionByZeroError : Error {
    using Error::Error;
};
struct ContractViolation : Error {
    using Error::Error;
};
struct BudgetExhausted : Error {
    using Error::Error;
};
struct DegenerateMapError : Error {
    using Error::Error;
};
struct ParseError : Error {
    using Error::Error;
};

namespace arith {

using Coeff = std::int64_t;

/// Arithmetic in F_p for an odd prime p < 2^31. Residues live in [0, p);
/// products of two residues fit in a signed 64-bit word.
class PrimeField {
public:
    explicit PrimeField(Coeff p);

    Coeff p() const { return p_; }

    Coeff reduce(Coeff a) const {
        a %= p_;
        return a < 0 ? a + p_ : a;
    }
    Coeff add(Coeff a, Coeff b) const {
        Coeff s = a + b;
        return s >= p_ ? s - p_ : s;
    }
    Coeff sub(Coeff a, Coeff b) const {
        Coeff s = a - b;
        return s < 0 ? s + p_ : s;
    }
    Coeff neg(Coeff a) const { return a == 0 ? 0 : p_ - a; }
    Coeff mul(Coeff a, Coeff b) const { return (a * b) % p_; }
    Coeff inv(Coeff a) const;
    Coeff div(Coeff a, Coeff b) const { return mul(a, inv(b)); }
    Coeff pow(Coeff a, std::uint64_t e) const;

    bool operator==(const PrimeField& o) const { return p_ == o.p_; }

private:
    Coeff p_;
};

/// Returns true for a prime (deterministic trial division; inputs < 2^31).
bool is_prime(Coeff n);

/// Monomial orders. Grevlex is the default everywhere; Block puts the first
/// `block` variables in an elimination block (any monomial involving them
/// beats any monomial free of them), with grevlex ties inside each block.
struct MonomialOrder {
    enum class Kind { Grevlex, Block };
    Kind kind = Kind::Grevlex;
    int block = 0;

    static MonomialOrder grevlex() { return {}; }
    static MonomialOrder eliminate_first(int k) { return {Kind::Block, k}; }

    std::string name() const;
    bool operator==(const MonomialOrder& o) const { return kind == o.kind && block == o.block; }
    bool operator<(const MonomialOrder& o) const {
        return kind != o.kind ? kind < o.kind : block < o.block;
    }
};

/// Exponent vector with cached total degree. Exponents are capped at 255,
/// far above anything the toolkit produces.
class Monomial {
public:
    Monomial() = default;
    explicit Monomial(std::size_t nvars) : e_(nvars, 0) {}
    explicit Monomial(std::vector<std::uint8_t> exps);

    static Monomial variable(std::size_t nvars, std::size_t i, std::uint8_t e = 1);

    std::size_t nvars() const { return e_.size(); }
    std::uint32_t degree() const { return deg_; }
    std::uint8_t exponent(std::size_t i) const { return e_[i]; }
    const std::vector<std::uint8_t>& exponents() const { return e_; }
    bool is_one() const { return deg_ == 0; }

    Monomial mul(const Monomial& o) const;
    /// Exact division; throws if not divisible.
    Monomial div(const Monomial& o) const;
    bool divides(const Monomial& o) const;  // this | o
    Monomial lcm(const Monomial& o) const;
    bool coprime(const Monomial& o) const;
    std::uint32_t degree_prefix(int k) const;  // degree in variables [0, k)

    /// Bit i set iff variable min(i,31) occurs; cheap divisibility prefilter.
    std::uint32_t divmask() const;

    bool operator==(const Monomial& o) const { return deg_ == o.deg_ && e_ == o.e_; }
    bool operator!=(const Monomial& o) const { return !(*this == o); }

    std::size_t hash() const;

private:
    std::vector<std::uint8_t> e_;
    std::uint32_t deg_ = 0;
};

/// Three-way comparison under an order: negative if a < b, 0 if equal.
int cmp(const MonomialOrder& ord, const Monomial& a, const Monomial& b);

struct MonomialHash {
    std::size_t operator()(const Monomial& m) const { return m.hash(); }
};

/// A polynomial ring context: prime, variable count, monomial order.
/// Polynomials carry a shared pointer to their ring; operations on
/// polynomials from different rings (by content) are structural errors.
struct Ring {
    PrimeField field;
    int nvars;
    MonomialOrder order;

    Ring(Coeff p, int nvars_, MonomialOrder ord = MonomialOrder::grevlex())
        : field(p), nvars(nvars_), order(ord) {}

    std::string var_name(int i) const { return "x" + std::to_string(i); }
    bool same(const Ring& o) const {
        return field == o.field && nvars == o.nvars && order == o.order;
    }
};

using RingPtr = std::shared_ptr<const Ring>;

RingPtr make_ring(Coeff p, int nvars, MonomialOrder ord = MonomialOrder::grevlex());
/// Same prime and variables, different order.
RingPtr with_order(const RingPtr& r, MonomialOrder ord);

struct Term {
    Monomial mono;
    Coeff c;
};

/// Sparse multivariate polynomial: terms strictly descending in the ring
/// order, no zero coefficients. The zero polynomial has an empty term list.
class Polynomial {
public:
    Polynomial() = default;
    explicit Polynomial(RingPtr ring) : ring_(std::move(ring)) {}
    /// Normalizes: sorts, merges, drops zeros.
    Polynomial(RingPtr ring, std::vector<Term> terms);

    static Polynomial zero(const RingPtr& r) { return Polynomial(r); }
    static Polynomial constant(const RingPtr& r, Coeff c);
    static Polynomial variable(const RingPtr& r, std::size_t i, std::uint8_t e = 1);
    static Polynomial monomial(const RingPtr& r, Monomial m, Coeff c = 1);

    const RingPtr& ring() const { return ring_; }
    const std::vector<Term>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t size() const { return terms_.size(); }

    const Term& leading() const;
    const Monomial& leading_monomial() const { return leading().mono; }
    Coeff leading_coeff() const { return leading().c; }

    std::uint32_t total_degree() const;  // 0 for the zero polynomial
    /// Degree if all terms share one, otherwise nullopt (zero poly: nullopt).
    std::optional<std::uint32_t> homogeneous_degree() const;

    Polynomial operator+(const Polynomial& o) const;
    Polynomial operator-(const Polynomial& o) const;
    Polynomial operator*(const Polynomial& o) const;
    Polynomial operator-() const;
    Polynomial scaled(Coeff c) const;
    Polynomial monic() const;
    Polynomial pow(std::uint32_t e) const;
    /// this - c * m * g, the Groebner reduction step.
    Polynomial submul(Coeff c, const Monomial& m, const Polynomial& g) const;

    bool operator==(const Polynomial& o) const;
    bool operator!=(const Polynomial& o) const { return !(*this == o); }

    Coeff evaluate(const std::vector<Coeff>& point) const;
    /// Ring homomorphism sending variable i to images[i].
    Polynomial substitute(const std::vector<Polynomial>& images) const;
    /// Invertible linear change of coordinates x_i -> sum_j a_ij x_j.
    Polynomial substitute_linear(const std::vector<std::vector<Coeff>>& a) const;
    Polynomial derivative(std::size_t var) const;
    /// Re-sorts the term list into another ring (same prime and nvars).
    Polynomial to_ring(const RingPtr& r) const;

    std::string str() const;

private:
    RingPtr ring_;
    std::vector<Term> terms_;
    void normalize();
};

/// Canonical text form, e.g. `3*x0^2*x1+31990*x2^3`. Accepts '-' and spaces
/// on input; printing always uses coefficients in [1, p).
Polynomial parse_polynomial(const RingPtr& r, const std::string& text);

void require_same_ring(const Polynomial& a, const Polynomial& b);

}  // namespace arith
}  // namespace gmforge
