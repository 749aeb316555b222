#pragma once

#include <cstdint>
#include <map>

#include "nd/combinatorics.hpp"
#include "nd/newton.hpp"

namespace nd {

// Mixed covolumes coVol((Gamma_1^+)^{k_1},...,(Gamma_r^+)^{k_r}) of a diagram
// list, indexed by the compositions of N into r parts. Extracted by exact
// interpolation of CoVol(lambda_1 Gamma_1^+ + ... + lambda_r Gamma_r^+).
struct MixedCovolumeTable {
    int dim = 0;  // N
    long r = 0;
    std::map<std::vector<long>, Rat> entries;
    std::uint64_t grid_seed = 0;  // 0 when the deterministic lex grid worked

    const Rat& entry(const std::vector<long>& k) const {
        auto it = entries.find(k);
        if (it == entries.end()) throw PreconditionError("mixed covolume entry missing");
        return it->second;
    }
};

// CoVol(Gamma^+) = Vol_N(Gamma^-).
Rat covol(const NewtonDiagram& gplus);

// Diagram of lambda_1 Gamma_1^+ + ... + lambda_r Gamma_r^+ (integer weights;
// zero weights drop the body).
NewtonDiagram weighted_sum_diagram(const std::vector<NewtonDiagram>& gs,
                                   const std::vector<long>& lambda);

// Default route: one tagged hull at a generic weight vector turns the cone
// decomposition of CoVol(sum lambda_i Gamma_i^+) into an explicit polynomial
// in lambda; a second generic weight must reproduce the same polynomial and
// two held-out weights are rechecked against direct hull evaluations. Falls
// back to plain interpolation if the structural checks disagree.
MixedCovolumeTable mixed_covolumes(const std::vector<NewtonDiagram>& gs);

// Direct route: CoVol evaluated by a fresh hull at every grid weight, exact
// linear solve, fit verified on two held-out grid points.
MixedCovolumeTable mixed_covolumes_interpolated(const std::vector<NewtonDiagram>& gs);

// coVol(Gamma_{11}^+ + Gamma_{12}^+, fixed...) =
// coVol(Gamma_{11}^+, fixed...) + coVol(Gamma_{12}^+, fixed...)
bool verify_multilinearity(const NewtonDiagram& g11, const NewtonDiagram& g12,
                           const std::vector<NewtonDiagram>& fixed);

// coVol(G1,G2,fixed...)^2 <= coVol(G1,G1,fixed...) * coVol(G2,G2,fixed...)
bool verify_convexity(const NewtonDiagram& g1, const NewtonDiagram& g2,
                      const std::vector<NewtonDiagram>& fixed);

struct GeneralizedInequalityReport {
    Rat lhs;
    Rat rhs;
    bool holds = false;
    bool equality = false;
    bool all_equal_diagrams = false;
};

// The averages inequality over the mixed covolumes:
// (sum_{k in K_{n,r}} multinomial(n+r; k+1)) * sum_{k >= 1} coVol_k
//   >= binom(n+r-1, n) * sum_{k >= 1} multinomial(n+r; k) coVol_k.
GeneralizedInequalityReport generalized_inequality_check(const DiagramTuple& tuple);

// JSON map from "k1,...,kr" to "p/q".
std::string table_to_json_text(const MixedCovolumeTable& table);

}  // namespace nd
