#pragma once

#include <string>
#include <vector>

#include "nd/core.hpp"

namespace nd {

// Ordered composition (k_1,...,k_r) of n into r non-negative parts.
struct Composition {
    std::vector<long> parts;

    long sum() const {
        long s = 0;
        for (long k : parts) s += k;
        return s;
    }
    long length() const { return static_cast<long>(parts.size()); }
    bool operator==(const Composition&) const = default;
};

// Stirling number of the second kind S(m, r): partitions of m elements into
// r non-empty blocks. S(m, r) = 0 for m < r, S(0, 0) = 1.
Int stirling2(long m, long r);

// All compositions of n into r parts, ordered lexicographically descending
// in k_1 (then recursively in the tail). Empty when r <= 0 or n < 0.
std::vector<Composition> compositions(long n, long r);

Int composition_count(long n, long r);

// total! / prod(parts!), with the parts required to sum to total.
Int multinomial(long total, const std::vector<long>& parts);

// The coefficient C_{n,r} = binom(n+r-1, n) (n+r)! / (S(n+r, r) r!).
// Evaluates the equivalent form |K_{n,r}| / sum_k prod_i 1/(k_i+1)! as well
// and throws CheckError if the two disagree.
Rat cnr(long n, long r);

struct CnrPropertyReport {
    bool monotonicity_ok = true;        // C_{n,r} > C_{n,r+1}
    bool lower_bound_ok = true;         // C_{n,r} > 2^n
    bool identity_ok = true;            // sum_k [(n+r)! - C_{n,r} multinomial] = 0
    bool stirling_recurrence_ok = true; // binomial convolution identity
    std::string first_failure;

    bool all_ok() const {
        return monotonicity_ok && lower_bound_ok && identity_ok && stirling_recurrence_ok;
    }
};

// Checks the C_{n,r} property suite on the grid 1 <= n <= n_max, 1 <= r <= r_max.
CnrPropertyReport verify_cnr_properties(long n_max, long r_max);

}  // namespace nd
