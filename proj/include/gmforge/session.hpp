#pragma once

#include <cstdint>
#include <random>
#include <string>

#include "gmforge/arith.hpp"
#include "gmforge/linalg.hpp"

namespace gmforge {

/// Session-wide configuration. Every randomized choice in the toolkit flows
/// from the single seed, which is recorded in every artifact a session
/// writes, so "general choice" computations replay exactly.
struct SessionConfig {
    arith::Coeff prime = 31991;
    std::uint64_t seed = 1;
    enum class Tier { Core, Stretch } tier = Tier::Core;
    enum class Format { Text, Structured } format = Format::Text;
    std::string fixtures_dir = "fixtures";
    bool check_smooth = false;     // certify smoothness of the quadratic section
    std::int64_t budget_ms = 0;    // stretch-run wall clock budget; 0 = none
};

/// Deterministic random source for "general" choices over F_p.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    std::uint64_t raw() { return eng_(); }

    arith::Coeff field(const arith::PrimeField& F) {
        return std::uniform_int_distribution<arith::Coeff>(0, F.p() - 1)(eng_);
    }
    arith::Coeff field_nonzero(const arith::PrimeField& F) {
        return std::uniform_int_distribution<arith::Coeff>(1, F.p() - 1)(eng_);
    }
    std::vector<arith::Coeff> vec(const arith::PrimeField& F, int len) {
        std::vector<arith::Coeff> v(len);
        bool nonzero = false;
        while (!nonzero) {
            for (auto& x : v) x = field(F);
            for (auto& x : v) nonzero |= (x != 0);
        }
        return v;
    }
    arith::Polynomial linear_form(const arith::RingPtr& r) {
        auto v = vec(r->field, r->nvars);
        std::vector<arith::Term> ts;
        for (int i = 0; i < r->nvars; ++i)
            if (v[i]) ts.push_back({arith::Monomial::variable(r->nvars, i), v[i]});
        return arith::Polynomial(r, std::move(ts));
    }
    linalg::Matrix invertible(const arith::PrimeField& F, int n) {
        while (true) {
            linalg::Matrix a(n, std::vector<arith::Coeff>(n));
            for (auto& row : a)
                for (auto& x : row) x = field(F);
            if (linalg::is_invertible(a, F)) return a;
        }
    }

private:
    std::mt19937_64 eng_;
};

}  // namespace gmforge
