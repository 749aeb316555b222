#pragma once

#include <optional>
#include <vector>

#include "nd/core.hpp"

namespace nd {

using MatI = std::vector<VecI>;
using MatQ = std::vector<VecQ>;

// Determinant of a square integer matrix (Bareiss fraction-free elimination).
Int det_int(MatI m);

// Determinant of a square rational matrix (rows scaled to integers first).
Rat det_rat(const MatQ& m);

int rank_rat(MatQ m);

// Solves the square system a*x = b exactly. Empty result if a is singular.
std::optional<VecQ> solve_rat(MatQ a, VecQ b);

// Basis of the rational null space {x : a*x = 0}.
std::vector<VecQ> nullspace_rat(MatQ a);

// Scales a rational vector by the lcm of denominators and divides by the gcd,
// giving the primitive integer vector with the same direction.
VecI primitive_integer_direction(const VecQ& v);

VecI primitivize(VecI v);

// Row-style Hermite normal form. Returns H (row echelon, positive pivots,
// entries above a pivot reduced) and the unimodular U with U*a = H.
struct HnfResult {
    MatI h;
    MatI u;
    int rank = 0;
};
HnfResult hnf(const MatI& a);

// Basis of the integer kernel lattice {x in Z^n : a*x = 0}. The lattice is
// saturated, so the basis spans all integer points of the rational null space.
MatI kernel_basis_int(const MatI& a);

// An integer solution of a*x = b, if one exists.
std::optional<VecI> solve_int(const MatI& a, const VecI& b);

Rat dot(const VecQ& a, const VecQ& b);
Int dot(const VecI& a, const VecI& b);
Rat dot(const VecI& a, const VecQ& b);

}  // namespace nd
