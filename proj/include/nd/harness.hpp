#pragma once

#include <random>

#include "nd/invariants.hpp"
#include "nd/report.hpp"

namespace nd {

struct HarnessOptions {
    std::uint64_t seed = 0;
    Int budget = Int(kDefaultBudget);
};

std::string tuple_hash(const DiagramTuple& t, const Rat& scale);

InvariantReport durfee_check(const IcisInput& input, const HarnessOptions& opts = {});

// Scaling scan d -> (mu, pg, margin) with exact leading-term bookkeeping.
struct ScanSeries {
    std::vector<InvariantReport> reports;      // one per scanned d
    Rat lt_mu;                                 // (n+r)! sum_{k>=1} coVol_k
    Rat lt_pg;                                 // sum_{k>=1} binom(N;k) coVol_k
    Rat quotient;                              // lt_mu / lt_pg
    Rat cnr_value;
    bool quotient_equals_cnr = false;
    bool quotient_exceeds_cnr = false;
    std::optional<long> d0;                    // margin > 0 from here through d_hi
    Rat fitted_mu_leading;                     // from the scanned data
    std::optional<Rat> fitted_pg_leading;      // set when enough data points exist
    bool all_equal_diagrams = false;
};

ScanSeries scaling_scan(const IcisInput& input, long d_lo, long d_hi,
                        const HarnessOptions& opts = {});

// (l.t.(mu), l.t.(pg)) of the common-scale family, straight from the mixed
// covolume table of the unscaled tuple.
std::pair<Rat, Rat> leading_terms(const DiagramTuple& t);

// Strengthened-bound scan rows: mu(kG) - [mu(PT) when defined] minus the
// multiplicity correction, compared against (n+1)! pg(kG).
struct Thm2Row {
    long k = 0;
    Int mu;
    Int mu_pt;
    bool pt_included = false;
    Int correction;
    Int pg;
    Int margin;  // lhs - (n+1)! pg
    bool holds = false;
};

struct Thm2Series {
    std::vector<Thm2Row> rows;
    bool homogeneous = false;
    bool equality_throughout = false;
    std::optional<Rat> leading_margin;  // non-homogeneous branch only
    std::optional<long> k0;             // inequality holds from here on
    // Audit note: which constant-term convention mu(PT) uses.
    std::string tangent_cone_convention =
        "mu(PT) = sum_{j=0}^{n} (-1)^{n-j} j! Vol_j(Delta \\ Delta_0), "
        "j = 0 stratum counts vertices of Delta outside Delta_0";
};

Thm2Series theorem2_check(const NewtonDiagram& g, long k_lo, long k_hi,
                          const HarnessOptions& opts = {});

// The generalized-diagram tetrahedron Conv((-1,-1,-1), m e_1, m e_2, m e_3):
// every quantity is recomputed geometrically and checked against the closed
// forms; any mismatch is a CheckError.
struct CounterexampleRow {
    long m = 0;
    Rat vol3;
    Rat vol2;
    Rat vol1;
    Int interior_body;
    Int interior_face;
    Int mu;
    Int pg;
    Int margin;  // mu - 6 pg
};

struct CounterexampleReport {
    std::vector<CounterexampleRow> rows;
};

CounterexampleReport counterexample(long m_lo, long m_hi);

struct LemmaSuiteReport {
    CnrPropertyReport cnr;
    bool stirling_ratio_ok = true;     // S(n+r-1,r)/S(n+r,r) > 2n/(n+r-1)^2
    bool boundary_case_ok = true;      // 7/15 > 3/8 at (r,n) = (2,3)
    bool stirling_monotone_ok = true;  // S(n+r,r) >= S(n+r-1,r-1), eq iff n=0
    bool volume_claim_ok = true;       // Vol_{N-1}(G) <= Vol_{N-1}(G^-)/N
    long volume_claim_checked = 0;
    std::string first_failure;

    bool all_ok() const {
        return cnr.all_ok() && stirling_ratio_ok && boundary_case_ok &&
               stirling_monotone_ok && volume_claim_ok;
    }
};

LemmaSuiteReport lemma_suite(long n_max, long r_max, long corpus_size = 40,
                             std::uint64_t seed = 20240817);

// Conjectural complete-intersection strengthening; reported, never asserted.
struct ConjectureReport {
    Rat lhs;  // mu - C_{n,r} pg
    Rat rhs;  // sum_{k>=1} coVol_k ((n+r)! - C_{n,r} binom(n+r;k))
    bool lhs_greater = false;
    bool rhs_zero = false;
    std::string normalization = "coVol";
};

ConjectureReport conjecture_report(const IcisInput& input, const HarnessOptions& opts = {});

// Deterministic corpus generator: axis intercepts in [1, max_coord] plus a
// few interior support points.
NewtonDiagram random_convenient_diagram(std::mt19937_64& rng, int dim, long max_coord,
                                        int extra_points);

}  // namespace nd
