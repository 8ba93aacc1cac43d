#pragma once

#include <vector>

#include "hyinv/rational.hpp"

namespace hyinv {

// Dense rational matrix helpers used by the number-field and lattice layers.
// Row-major; these are plain exact Gaussian-elimination routines.
using QMatrix = std::vector<std::vector<Rational>>;

// Reduced row echelon form in place; returns pivot column indices.
std::vector<int> rref(QMatrix& m);

// Basis of the right kernel {x : M x = 0} as rows.
QMatrix kernel_basis(const QMatrix& m);

// Solves M x = b; returns false when inconsistent. Free variables are set
// to zero.
bool solve_linear(const QMatrix& m, const std::vector<Rational>& b, std::vector<Rational>& x);

int rank(QMatrix m);

} // namespace hyinv
