#pragma once

#include <optional>
#include <vector>

#include "kstab/rational.hpp"

namespace kstab {

using Vector = std::vector<Rational>;
using Matrix = std::vector<Vector>;  // row-major

Matrix identity_matrix(std::size_t n);
Matrix transpose(const Matrix& m);
Matrix multiply(const Matrix& a, const Matrix& b);
Vector multiply(const Matrix& a, const Vector& x);
Rational dot(const Vector& a, const Vector& b);

// Reduced row echelon form; pivot columns are written to *pivots if given.
Matrix rref(Matrix m, std::vector<std::size_t>* pivots = nullptr);
std::size_t rank(const Matrix& m);
Rational determinant(Matrix m);
// Throws SingularMatrix.
Matrix inverse(const Matrix& m);
// Some solution of a x = b, or nothing if the system is inconsistent. Free
// variables are set to zero.
std::optional<Vector> solve(const Matrix& a, const Vector& b);
// Basis of {x : a x = 0}.
std::vector<Vector> nullspace(const Matrix& a);

}  // namespace kstab
