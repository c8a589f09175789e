#pragma once

// Small dense linear algebra over Q. Sizes here are the dimensions of
// spaces of modular forms (at most a handful), so everything is naive
// Gaussian elimination on exact rationals.

#include "qseries.hpp"

#include <optional>
#include <vector>

namespace mverify::linalg {

using series::Integer;
using series::Rational;

using Vector = std::vector<Rational>;
using Matrix = std::vector<Vector>;  // row-major

Matrix identity(int n);
Matrix multiply(const Matrix& a, const Matrix& b);

// Reduced row echelon form; pivot columns returned through `pivots`.
Matrix rref(Matrix m, std::vector<int>* pivots = nullptr);
int rank(const Matrix& m);
Rational determinant(Matrix m);

// Basis of {x : m x = 0}.
std::vector<Vector> kernel(const Matrix& m);

// Coefficients c with sum_i c_i rows[i] = target, if any.
std::optional<Vector> solve_combination(const Matrix& rows, const Vector& target);

// Coefficients of det(x I - m), lowest degree first; monic of degree n.
std::vector<Rational> charpoly(const Matrix& m);

// Rational roots of a polynomial with rational coefficients (lowest degree
// first), with multiplicity.
std::vector<Rational> rational_roots(const std::vector<Rational>& poly);

// Exact determinant of an integer matrix (Bareiss).
Integer integer_determinant(std::vector<std::vector<Integer>> m);

}  // namespace mverify::linalg
