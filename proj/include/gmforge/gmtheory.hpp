#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "gmforge/arith.hpp"

namespace gmforge::gmtheory {

/// Exact inputs of the double-point formula for a surface S in a
/// Gushel-Mukai fourfold X: degree, sectional genus, chi(O_S), K_S^2, the
/// node count delta, and the Schubert coordinates (a, b) of the pushforward
/// class a*sigma_{3,1} + b*sigma_{2,2}.
struct SurfaceNumerics {
    std::int64_t deg = 0;
    std::int64_t genus = 0;
    std::int64_t chi = 0;
    std::int64_t k2 = 0;
    std::int64_t delta = 0;
    std::int64_t a = 0;
    std::int64_t b = 0;
};

enum class Label { Prime, DoublePrime, Plain, OutOfTaxonomy };

std::string label_str(Label l);
/// `26''`-style compact form used in fixture files and reports.
std::string locus_str(std::int64_t d, Label l);

struct GMRecord {
    std::int64_t self_int = 0;
    std::int64_t disc = 0;
    Label label = Label::OutOfTaxonomy;
    bool prime_applies = false;        // a+b even (when d = 2 mod 8)
    bool double_prime_applies = false; // b even (when d = 2 mod 8)
    bool gushel_flag = false;          // fixture metadata, never computed
};

/// (S)_X^2 = 3a + 4b - 2 deg + 4 g - 12 chi + 2 K^2 - 4 + 2 delta.
std::int64_t self_intersection(const SurfaceNumerics& s);

/// d = 4 s - 2 a^2 + 4 a b - 4 b^2; cross-checked on every call against the
/// 3x3 Gram determinant of the lattice spanned by sigma_{1,1}, sigma_2, [S].
std::int64_t discriminant(std::int64_t a, std::int64_t b, std::int64_t self_int);
std::int64_t gram_determinant(std::int64_t a, std::int64_t b, std::int64_t self_int);

/// Component of the moduli divisor: for d = 2 (mod 8) the prime component
/// needs a+b even and the double-prime one needs b even; both flags are
/// surfaced in the record when both apply. Away from 2 (mod 8) the divisor
/// is irreducible (plain) for d >= 10 with d = 0 or 4 (mod 8).
GMRecord classify(const SurfaceNumerics& s);
Label component_label(std::int64_t d, std::int64_t a, std::int64_t b);

struct Associated {
    bool k3 = false;
    bool cubic = false;
    bool known = true;  // false beyond the stored range
};

/// Membership in the stored discriminant lists (d <= 60):
/// K3 partners at {10, 20, 26, 34, 50, 52, 58}, cubic partners at {12, 26, 44}.
Associated associated_lookup(std::int64_t d);

/// ambient - (h0_N_SY + (h0_ideal2 - 1) - h0_N_SX); the ambient projective
/// space of quadratic sections has dimension 39 here.
std::int64_t parameter_count(std::int64_t ambient_quadrics_dim, std::int64_t h0_N_SY,
                             std::int64_t h0_ideal2, std::int64_t h0_N_SX);

/// One row of the summary table of rational fourfolds.
struct TableRow {
    std::string name;
    SurfaceNumerics s;
    std::string expected_locus;  // e.g. "10'", "20", "26''"
    std::int64_t h0_ideal2 = 0;
    std::int64_t h0_nsy = 0;
    std::int64_t h0_nsx = 0;
    std::array<std::int64_t, 5> secants{};  // n_1..n_5
    std::string source;                     // "reference" or "expected-discrepancy"

    bool expected_discrepancy() const { return source.find("discrepancy") != std::string::npos; }
};

struct TableCheck {
    TableRow row;
    GMRecord rec;
    std::string computed_locus;
    bool matches = false;  // computed locus equals the printed one
    bool pass = false;     // matches, or mismatches exactly when expected to
    std::string diff;      // human-readable mismatch detail
};

/// The nine built-in rows.
std::vector<TableRow> builtin_table_rows();

TableCheck check_row(const TableRow& row);

/// Fixture file parsing/printing (versioned header `gmforge-table1 v1`).
std::vector<TableRow> parse_table_fixture(const std::string& text);
std::string format_table_fixture(const std::vector<TableRow>& rows);

}  // namespace gmforge::gmtheory
