#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace nd {

// Exact arithmetic everywhere: arbitrary-precision integers and rationals
// backed by GMP. mpq_class values are kept canonical (positive denominator,
// lowest terms) by constructing through make_rat.
using Int = mpz_class;
using Rat = mpq_class;

using VecI = std::vector<Int>;
using VecQ = std::vector<Rat>;

struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Malformed or inconsistent user input (bad JSON, ragged dimensions, ...).
struct InputError : Error {
    using Error::Error;
};

// An operation was called outside its contract (non-convenient diagram,
// lower-dimensional polytope where a full-dimensional one is required, ...).
struct PreconditionError : Error {
    using Error::Error;
};

// Enumeration would exceed the configured cell budget.
struct BudgetError : Error {
    using Error::Error;
};

// An internal cross-check failed; indicates a bug, never bad input.
struct CheckError : Error {
    using Error::Error;
};

inline Rat make_rat(Int num, Int den) {
    if (den == 0) throw Error("make_rat: zero denominator");
    Rat q(num, den);
    q.canonicalize();
    return q;
}

inline Rat rat(long v) { return Rat(v); }

inline bool is_integer(const Rat& q) { return q.get_den() == 1; }

inline Int to_int(const Rat& q) {
    if (!is_integer(q)) throw CheckError("expected integral rational, got " + q.get_str());
    return q.get_num();
}

inline Int factorial(unsigned long m) {
    Int f;
    mpz_fac_ui(f.get_mpz_t(), m);
    return f;
}

inline Int binomial(const Int& n, unsigned long k) {
    Int b;
    mpz_bin_ui(b.get_mpz_t(), n.get_mpz_t(), k);
    return b;
}

inline Int pow_int(const Int& base, unsigned long e) {
    Int p;
    mpz_pow_ui(p.get_mpz_t(), base.get_mpz_t(), e);
    return p;
}

inline Rat pow_rat(const Rat& base, unsigned long e) {
    Rat p(1);
    for (unsigned long i = 0; i < e; ++i) p *= base;
    return p;
}

std::string to_string(const Rat& q);

inline std::string to_string(const Rat& q) { return q.get_str(); }

// FNV-1a, used for stable input hashes in reports.
inline std::uint64_t fnv1a(const std::string& s) {
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

}  // namespace nd
