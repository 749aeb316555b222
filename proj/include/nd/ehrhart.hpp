#pragma once

#include "nd/newton.hpp"
#include "nd/polytope.hpp"

namespace nd {

// L(k) = c_0 + c_1 k + ... + c_N k^N counting |k*Delta cap Z^N|.
struct EhrhartPolynomial {
    int dim = 0;
    VecQ coeffs;  // c_0 .. c_dim

    Rat eval(const Int& k) const {
        Rat acc(0);
        Rat power(1);
        for (const auto& c : coeffs) {
            acc += c * power;
            power *= Rat(k);
        }
        return acc;
    }
};

// |k*Delta cap Z^N| (closed) or |int(k*Delta) cap Z^N| (interior), exact.
Int count_points(const Polytope& delta, const Int& k, bool interior,
                 const Int& budget = Int(kDefaultBudget));

// Interpolates through k = 0..N and cross-checks c_0 = 1, c_N = Vol_N,
// c_{N-1} = Vol_{N-1}/2 and Ehrhart reciprocity L(-k) = (-1)^N Lint(k)
// for k = 1..N. Any failure is a CheckError (geometry bug, not bad input).
EhrhartPolynomial ehrhart_polynomial(const Polytope& delta,
                                     const Int& budget = Int(kDefaultBudget));

// Total induced-lattice volume of the facets of a full-dimensional lattice
// polytope (the Vol_{N-1} entering the Ehrhart second coefficient).
Rat facet_lattice_volume(const Polytope& delta);

// Leading coefficients of k -> p_g(k*Gamma):
// (Vol_N(Gamma^-), (Vol_{N-1}(Gamma) - Vol_{N-1}(Gamma^-)) / 2).
std::pair<Rat, Rat> pg_leading_terms(const NewtonDiagram& g);

// Exact polynomial through the sample points (Vandermonde solve); the
// returned coefficients are c_0..c_{m-1} for m samples.
VecQ fit_polynomial(const std::vector<std::pair<Rat, Rat>>& samples);

// Largest index with a nonzero coefficient, -1 for the zero polynomial.
int polynomial_degree(const VecQ& coeffs);

}  // namespace nd
