#pragma once

#include <vector>

#include "gmforge/arith.hpp"

namespace gmforge::linalg {

using arith::Coeff;
using arith::PrimeField;

using Matrix = std::vector<std::vector<Coeff>>;

/// In-place reduced row echelon form; returns the pivot columns.
std::vector<int> row_reduce(Matrix& m, const PrimeField& F);

int rank(Matrix m, const PrimeField& F);

/// Basis of the right kernel {v : m v = 0}.
Matrix kernel_basis(Matrix m, const PrimeField& F);

/// Determinant by Gaussian elimination.
Coeff det(Matrix m, const PrimeField& F);

bool is_invertible(const Matrix& m, const PrimeField& F);

Matrix inverse(Matrix m, const PrimeField& F);

Matrix identity(int n);

}  // namespace gmforge::linalg
