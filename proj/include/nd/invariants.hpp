#pragma once

#include <map>

#include "nd/covolume.hpp"
#include "nd/ehrhart.hpp"
#include "nd/newton.hpp"

namespace nd {

// Diagrams (Gamma_1,...,Gamma_r) of an isolated complete intersection germ
// of dimension n in C^{n+r}. Theorem-level verdicts require the hypothesis
// r = 1, n >= 2 or r > 1, n > 2; computations run regardless.
struct IcisInput {
    DiagramTuple tuple;

    bool in_hypothesis() const {
        return (tuple.r == 1 && tuple.n >= 2) || (tuple.r > 1 && tuple.n > 2);
    }
};

// Kouchnirenko: mu = sum_{i=0}^{N} (-1)^{N-i} i! Vol_i(Gamma^-).
Int milnor_hypersurface(const NewtonDiagram& g);

// Milnor number of a Newton-non-degenerate ICIS from per-subspace mixed
// covolumes; reduces to milnor_hypersurface at r = 1.
Int milnor_icis(const DiagramTuple& t);

// Proportional-diagram form: Gamma_i = d_i * Gamma with rational d_i > 0;
// mu = sum_j (-1)^{n+r-j} Theta_j(d) j! Vol_j(Gamma^-) + (-1)^{n+1} with
// Theta_j(d) = (prod d_i) sum_{k in K_{j-r,r}} prod d_i^{k_i}.
Rat milnor_proportional(const NewtonDiagram& base, const std::vector<Rat>& d);

// Coefficients of mu(d Gamma_1,...,d Gamma_r) as a polynomial in the common
// scale d: mu(d) = sum_{j=r}^{n+r} coeff_j d^j + (-1)^{n+1}. Used by scans;
// exact because mixed covolumes are j-homogeneous under dilation.
struct MilnorScalePolynomial {
    long n = 0;
    long r = 0;
    std::map<long, Rat> coeff_by_degree;
    Int constant_term;  // (-1)^{n+1}

    Rat eval(const Rat& d) const {
        Rat acc(constant_term);
        for (const auto& [j, c] : coeff_by_degree)
            acc += c * pow_rat(d, static_cast<unsigned long>(j));
        return acc;
    }
};
MilnorScalePolynomial milnor_icis_scale_polynomial(const DiagramTuple& t);

Int pg_hypersurface(const NewtonDiagram& g, const Int& budget = Int(kDefaultBudget));

// Inclusion-exclusion of positive-point counts over Minkowski sub-sums.
Int pg_icis(const DiagramTuple& t, const Int& budget = Int(kDefaultBudget));

// (p-1)^{n+1} - p(p-1)...(p-n), the falling factorial taken as 0 for p <= n.
Int theorem2_correction(const Int& p, long n);

Int falling_factorial(const Int& p, long terms);

struct TangentConeData {
    Int p;
    Polytope delta;    // Conv(p e_1, ..., p e_{n+1})
    Polytope delta0;   // sigma_p = Gamma cap {sum x = p}
    bool meets_all_edges = false;
    bool top_dimensional = false;  // dim sigma_p == n
};

TangentConeData tangent_cone_data(const NewtonDiagram& g);

// Total Milnor number of the projectivized tangent cone, by iterating the
// toric-degeneration formula over the faces of the simplex:
//   mu(PT) = sum_{j=0}^{n} (-1)^{n-j} j! Vol_j(Delta \ Delta_0),
// where Vol_j sums induced-lattice volumes of F \ (Delta_0 cap F) over the
// j-dimensional faces F of Delta, and the j = 0 stratum counts vertices of
// Delta missing from Delta_0. Requires isolated tangent-cone singularities
// (meets_all_edges) and a top-dimensional Delta_0.
Int mu_tangent_cone(const TangentConeData& tc);

// Leading k-coefficient margin of the strengthened hypersurface bound:
// (n-1)/(n+1) Vol_n(Gamma^-) - Vol_n(Gamma) + 2/(n+1) Vol_n(sigma_p)
//   - (n-2+2/(n+1)) Vol_n(Delta),
// with Vol_n(sigma_p) = 0 when sigma_p is not top-dimensional.
Rat thm2_leading_margin(const NewtonDiagram& g);

}  // namespace nd
