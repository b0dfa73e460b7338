#include "gmforge/arith.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <sstream>

namespace gmforge::arith {

bool is_prime(Coeff n) {
    if (n < 2) return false;
    if (n % 2 == 0) return n == 2;
    for (Coeff d = 3; d * d <= n; d += 2)
        if (n % d == 0) return false;
    return true;
}

PrimeField::PrimeField(Coeff p) : p_(p) {
    if (p < 3 || p >= (Coeff(1) << 31) || !is_prime(p))
        throw StructuralError("prime field modulus must be an odd prime below 2^31, got " +
                              std::to_string(p));
}

Coeff PrimeField::inv(Coeff a) const {
    if (a == 0) throw DivisionByZeroError("inverse of zero in F_" + std::to_string(p_));
    // extended Euclid
    Coeff r0 = p_, r1 = a, t0 = 0, t1 = 1;
    while (r1 != 0) {
        Coeff q = r0 / r1;
        r0 -= q * r1;
        std::swap(r0, r1);
        t0 -= q * t1;
        std::swap(t0, t1);
    }
    return t0 < 0 ? t0 + p_ : t0;
}

Coeff PrimeField::pow(Coeff a, std::uint64_t e) const {
    Coeff r = 1;
    a = reduce(a);
    while (e) {
        if (e & 1) r = mul(r, a);
        a = mul(a, a);
        e >>= 1;
    }
    return r;
}

std::string MonomialOrder::name() const {
    if (kind == Kind::Grevlex) return "grevlex";
    return "elim(" + std::to_string(block) + ")";
}

Monomial::Monomial(std::vector<std::uint8_t> exps) : e_(std::move(exps)) {
    for (auto x : e_) deg_ += x;
}

Monomial Monomial::variable(std::size_t nvars, std::size_t i, std::uint8_t e) {
    Monomial m(nvars);
    m.e_[i] = e;
    m.deg_ = e;
    return m;
}

Monomial Monomial::mul(const Monomial& o) const {
    Monomial r = *this;
    for (std::size_t i = 0; i < e_.size(); ++i) {
        int v = int(r.e_[i]) + int(o.e_[i]);
        if (v > 255) throw StructuralError("monomial exponent overflow");
        r.e_[i] = std::uint8_t(v);
    }
    r.deg_ = deg_ + o.deg_;
    return r;
}

Monomial Monomial::div(const Monomial& o) const {
    Monomial r = *this;
    for (std::size_t i = 0; i < e_.size(); ++i) {
        if (e_[i] < o.e_[i]) throw StructuralError("monomial division is not exact");
        r.e_[i] = std::uint8_t(e_[i] - o.e_[i]);
    }
    r.deg_ = deg_ - o.deg_;
    return r;
}

bool Monomial::divides(const Monomial& o) const {
    if (deg_ > o.deg_) return false;
    for (std::size_t i = 0; i < e_.size(); ++i)
        if (e_[i] > o.e_[i]) return false;
    return true;
}

Monomial Monomial::lcm(const Monomial& o) const {
    Monomial r = *this;
    std::uint32_t d = 0;
    for (std::size_t i = 0; i < e_.size(); ++i) {
        r.e_[i] = std::max(e_[i], o.e_[i]);
        d += r.e_[i];
    }
    r.deg_ = d;
    return r;
}

bool Monomial::coprime(const Monomial& o) const {
    for (std::size_t i = 0; i < e_.size(); ++i)
        if (e_[i] && o.e_[i]) return false;
    return true;
}

std::uint32_t Monomial::degree_prefix(int k) const {
    std::uint32_t d = 0;
    for (int i = 0; i < k && i < int(e_.size()); ++i) d += e_[i];
    return d;
}

std::uint32_t Monomial::divmask() const {
    std::uint32_t m = 0;
    for (std::size_t i = 0; i < e_.size(); ++i)
        if (e_[i]) m |= (1u << std::min<std::size_t>(i, 31));
    return m;
}

std::size_t Monomial::hash() const {
    std::size_t h = 1469598103934665603ull;
    for (auto x : e_) {
        h ^= x;
        h *= 1099511628211ull;
    }
    return h ^ deg_;
}

namespace {

// grevlex on an index range [lo, hi): higher degree wins; equal degrees are
// broken at the last differing exponent, smaller exponent winning.
int grevlex_range(const Monomial& a, const Monomial& b, int lo, int hi) {
    std::uint32_t da = 0, db = 0;
    for (int i = lo; i < hi; ++i) {
        da += a.exponent(i);
        db += b.exponent(i);
    }
    if (da != db) return da < db ? -1 : 1;
    for (int i = hi - 1; i >= lo; --i) {
        int d = int(a.exponent(i)) - int(b.exponent(i));
        if (d != 0) return d > 0 ? -1 : 1;
    }
    return 0;
}

}  // namespace

int cmp(const MonomialOrder& ord, const Monomial& a, const Monomial& b) {
    const int n = int(a.nvars());
    if (ord.kind == MonomialOrder::Kind::Grevlex) {
        if (a.degree() != b.degree()) return a.degree() < b.degree() ? -1 : 1;
        return grevlex_range(a, b, 0, n);
    }
    const int k = std::min(ord.block, n);
    if (int c = grevlex_range(a, b, 0, k)) return c;
    return grevlex_range(a, b, k, n);
}

RingPtr make_ring(Coeff p, int nvars, MonomialOrder ord) {
    if (nvars < 1) throw StructuralError("ring needs at least one variable");
    return std::make_shared<const Ring>(p, nvars, ord);
}

RingPtr with_order(const RingPtr& r, MonomialOrder ord) {
    if (r->order == ord) return r;
    return make_ring(r->field.p(), r->nvars, ord);
}

void require_same_ring(const Polynomial& a, const Polynomial& b) {
    if (!a.ring() || !b.ring() || !a.ring()->same(*b.ring()))
        throw StructuralError("polynomials live in different rings");
}

Polynomial::Polynomial(RingPtr ring, std::vector<Term> terms)
    : ring_(std::move(ring)), terms_(std::move(terms)) {
    normalize();
}

void Polynomial::normalize() {
    const auto& ord = ring_->order;
    std::sort(terms_.begin(), terms_.end(), [&](const Term& a, const Term& b) {
        return cmp(ord, a.mono, b.mono) > 0;
    });
    std::vector<Term> out;
    out.reserve(terms_.size());
    for (auto& t : terms_) {
        Coeff c = ring_->field.reduce(t.c);
        if (!out.empty() && out.back().mono == t.mono) {
            out.back().c = ring_->field.add(out.back().c, c);
            if (out.back().c == 0) out.pop_back();
        } else if (c != 0) {
            out.push_back({std::move(t.mono), c});
        }
    }
    terms_ = std::move(out);
}

Polynomial Polynomial::constant(const RingPtr& r, Coeff c) {
    c = r->field.reduce(c);
    if (c == 0) return zero(r);
    return Polynomial(r, {{Monomial(r->nvars), c}});
}

Polynomial Polynomial::variable(const RingPtr& r, std::size_t i, std::uint8_t e) {
    if (int(i) >= r->nvars) throw StructuralError("variable index out of range");
    if (e == 0) return constant(r, 1);
    return Polynomial(r, {{Monomial::variable(r->nvars, i, e), 1}});
}

Polynomial Polynomial::monomial(const RingPtr& r, Monomial m, Coeff c) {
    return Polynomial(r, {{std::move(m), r->field.reduce(c)}});
}

const Term& Polynomial::leading() const {
    if (terms_.empty()) throw StructuralError("leading term of the zero polynomial");
    return terms_.front();
}

std::uint32_t Polynomial::total_degree() const {
    std::uint32_t d = 0;
    for (auto& t : terms_) d = std::max(d, t.mono.degree());
    return d;
}

std::optional<std::uint32_t> Polynomial::homogeneous_degree() const {
    if (terms_.empty()) return std::nullopt;
    std::uint32_t d = terms_[0].mono.degree();
    for (auto& t : terms_)
        if (t.mono.degree() != d) return std::nullopt;
    return d;
}

Polynomial Polynomial::operator+(const Polynomial& o) const {
    require_same_ring(*this, o);
    const auto& F = ring_->field;
    const auto& ord = ring_->order;
    std::vector<Term> out;
    out.reserve(terms_.size() + o.terms_.size());
    std::size_t i = 0, j = 0;
    while (i < terms_.size() && j < o.terms_.size()) {
        int c = cmp(ord, terms_[i].mono, o.terms_[j].mono);
        if (c > 0) {
            out.push_back(terms_[i++]);
        } else if (c < 0) {
            out.push_back(o.terms_[j++]);
        } else {
            Coeff s = F.add(terms_[i].c, o.terms_[j].c);
            if (s != 0) out.push_back({terms_[i].mono, s});
            ++i;
            ++j;
        }
    }
    for (; i < terms_.size(); ++i) out.push_back(terms_[i]);
    for (; j < o.terms_.size(); ++j) out.push_back(o.terms_[j]);
    Polynomial r(ring_);
    r.terms_ = std::move(out);
    return r;
}

Polynomial Polynomial::operator-() const {
    Polynomial r = *this;
    for (auto& t : r.terms_) t.c = ring_->field.neg(t.c);
    return r;
}

Polynomial Polynomial::operator-(const Polynomial& o) const { return *this + (-o); }

Polynomial Polynomial::scaled(Coeff c) const {
    c = ring_->field.reduce(c);
    if (c == 0) return zero(ring_);
    Polynomial r = *this;
    for (auto& t : r.terms_) t.c = ring_->field.mul(t.c, c);
    return r;
}

Polynomial Polynomial::monic() const {
    if (is_zero()) return *this;
    return scaled(ring_->field.inv(leading_coeff()));
}

Polynomial Polynomial::operator*(const Polynomial& o) const {
    require_same_ring(*this, o);
    if (is_zero() || o.is_zero()) return zero(ring_);
    const auto& F = ring_->field;
    const auto& ord = ring_->order;
    auto less = [&](const Monomial& a, const Monomial& b) { return cmp(ord, a, b) > 0; };
    std::map<Monomial, Coeff, decltype(less)> acc(less);
    for (auto& a : terms_)
        for (auto& b : o.terms_) {
            Monomial m = a.mono.mul(b.mono);
            Coeff& slot = acc[m];
            slot = F.add(slot, F.mul(a.c, b.c));
        }
    Polynomial r(ring_);
    r.terms_.reserve(acc.size());
    for (auto& [m, c] : acc)
        if (c != 0) r.terms_.push_back({m, c});
    return r;
}

Polynomial Polynomial::pow(std::uint32_t e) const {
    Polynomial r = constant(ring_, 1);
    Polynomial base = *this;
    while (e) {
        if (e & 1) r = r * base;
        e >>= 1;
        if (e) base = base * base;
    }
    return r;
}

Polynomial Polynomial::submul(Coeff c, const Monomial& m, const Polynomial& g) const {
    Polynomial t = g;
    const auto& F = ring_->field;
    Coeff nc = F.neg(c);
    for (auto& term : t.terms_) {
        term.mono = term.mono.mul(m);
        term.c = F.mul(term.c, nc);
    }
    return *this + t;
}

bool Polynomial::operator==(const Polynomial& o) const {
    if (!ring_ || !o.ring_) return terms_.empty() && o.terms_.empty();
    require_same_ring(*this, o);
    if (terms_.size() != o.terms_.size()) return false;
    for (std::size_t i = 0; i < terms_.size(); ++i)
        if (terms_[i].c != o.terms_[i].c || terms_[i].mono != o.terms_[i].mono) return false;
    return true;
}

Coeff Polynomial::evaluate(const std::vector<Coeff>& point) const {
    if (int(point.size()) != ring_->nvars)
        throw StructuralError("evaluation point has wrong length");
    const auto& F = ring_->field;
    Coeff acc = 0;
    for (auto& t : terms_) {
        Coeff v = t.c;
        for (std::size_t i = 0; i < point.size(); ++i)
            if (t.mono.exponent(i)) v = F.mul(v, F.pow(point[i], t.mono.exponent(i)));
        acc = F.add(acc, v);
    }
    return acc;
}

Polynomial Polynomial::substitute(const std::vector<Polynomial>& images) const {
    if (int(images.size()) != ring_->nvars)
        throw StructuralError("substitution needs one image per variable");
    const RingPtr& target = images.empty() ? ring_ : images[0].ring();
    // memoize powers of each image
    std::vector<std::vector<Polynomial>> pows(images.size());
    auto power = [&](std::size_t i, std::uint8_t e) -> const Polynomial& {
        auto& cache = pows[i];
        if (cache.empty()) cache.push_back(Polynomial::constant(target, 1));
        while (cache.size() <= e) cache.push_back(cache.back() * images[i]);
        return cache[e];
    };
    Polynomial acc = Polynomial::zero(target);
    for (auto& t : terms_) {
        Polynomial term = Polynomial::constant(target, t.c);
        for (std::size_t i = 0; i < images.size(); ++i)
            if (t.mono.exponent(i)) term = term * power(i, t.mono.exponent(i));
        acc = acc + term;
    }
    return acc;
}

Polynomial Polynomial::substitute_linear(const std::vector<std::vector<Coeff>>& a) const {
    if (int(a.size()) != ring_->nvars) throw StructuralError("substitution matrix has wrong size");
    std::vector<Polynomial> images;
    images.reserve(a.size());
    for (auto& row : a) {
        if (int(row.size()) != ring_->nvars)
            throw StructuralError("substitution matrix has wrong size");
        std::vector<Term> ts;
        for (std::size_t j = 0; j < row.size(); ++j)
            if (ring_->field.reduce(row[j]) != 0)
                ts.push_back({Monomial::variable(ring_->nvars, j), ring_->field.reduce(row[j])});
        images.push_back(Polynomial(ring_, std::move(ts)));
    }
    return substitute(images);
}

Polynomial Polynomial::derivative(std::size_t var) const {
    std::vector<Term> out;
    for (auto& t : terms_) {
        std::uint8_t e = t.mono.exponent(var);
        if (!e) continue;
        auto exps = t.mono.exponents();
        exps[var] = std::uint8_t(e - 1);
        out.push_back({Monomial(std::move(exps)), ring_->field.mul(t.c, e % ring_->field.p())});
    }
    return Polynomial(ring_, std::move(out));
}

Polynomial Polynomial::to_ring(const RingPtr& r) const {
    if (r->field.p() != ring_->field.p() || r->nvars != ring_->nvars)
        throw StructuralError("to_ring requires same prime and variable count");
    return Polynomial(r, terms_);
}

std::string Polynomial::str() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (auto& t : terms_) {
        if (!first) os << "+";
        first = false;
        bool printed = false;
        if (t.c != 1 || t.mono.is_one()) {
            os << t.c;
            printed = true;
        }
        for (std::size_t i = 0; i < t.mono.nvars(); ++i) {
            if (!t.mono.exponent(i)) continue;
            if (printed) os << "*";
            printed = true;
            os << "x" << i;
            if (t.mono.exponent(i) > 1) os << "^" << int(t.mono.exponent(i));
        }
    }
    return os.str();
}

namespace {

struct Parser {
    const RingPtr& r;
    const std::string& s;
    std::size_t pos = 0;

    void skip_ws() {
        while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
    }
    bool eat(char c) {
        skip_ws();
        if (pos < s.size() && s[pos] == c) {
            ++pos;
            return true;
        }
        return false;
    }
    Coeff number() {
        skip_ws();
        std::size_t start = pos;
        while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
        if (pos == start) throw ParseError("expected a number at position " + std::to_string(pos));
        Coeff v = 0;
        for (std::size_t i = start; i < pos; ++i) {
            v = v * 10 + (s[i] - '0');
            v %= r->field.p();
        }
        return v;
    }

    Term term() {
        Term t{Monomial(r->nvars), 1};
        skip_ws();
        bool any = false;
        if (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) {
            t.c = number();
            any = true;
            if (!eat('*')) return t;
        }
        while (true) {
            skip_ws();
            if (pos >= s.size() || s[pos] != 'x')
                throw ParseError("expected a variable at position " + std::to_string(pos));
            ++pos;
            Coeff idx = number();
            if (idx >= r->nvars)
                throw ParseError("variable index out of range: x" + std::to_string(idx));
            std::uint8_t e = 1;
            if (eat('^')) {
                Coeff ev = number();
                if (ev > 255) throw ParseError("exponent too large");
                e = std::uint8_t(ev);
            }
            t.mono = t.mono.mul(Monomial::variable(r->nvars, std::size_t(idx), e));
            any = true;
            if (!eat('*')) break;
        }
        if (!any) throw ParseError("empty term");
        return t;
    }
};

}  // namespace

Polynomial parse_polynomial(const RingPtr& r, const std::string& text) {
    Parser p{r, text};
    std::vector<Term> terms;
    bool neg = p.eat('-');
    while (true) {
        Term t = p.term();
        if (neg) t.c = r->field.neg(t.c);
        terms.push_back(std::move(t));
        p.skip_ws();
        if (p.eat('+')) {
            neg = false;
        } else if (p.eat('-')) {
            neg = true;
        } else {
            break;
        }
    }
    p.skip_ws();
    if (p.pos != text.size())
        throw ParseError("trailing characters at position " + std::to_string(p.pos));
    Polynomial f(r, std::move(terms));
    if (f.is_zero() && text.find('0') == std::string::npos)
        throw ParseError("could not parse polynomial");
    return f;
}

}  // namespace gmforge::arith
