#include "nd/combinatorics.hpp"

#include <sstream>

namespace nd {

Int stirling2(long m, long r) {
    if (m < 0 || r < 0) return Int(0);
    if (r == 0) return m == 0 ? Int(1) : Int(0);
    if (m < r) return Int(0);
    // Triangle recurrence S(m+1, r) = r S(m, r) + S(m, r-1).
    std::vector<VecI> s(m + 1, VecI(r + 1, Int(0)));
    s[0][0] = 1;
    for (long i = 1; i <= m; ++i)
        for (long j = 1; j <= std::min<long>(i, r); ++j)
            s[i][j] = Int(j) * s[i - 1][j] + s[i - 1][j - 1];
    return s[m][r];
}

std::vector<Composition> compositions(long n, long r) {
    std::vector<Composition> out;
    if (r <= 0 || n < 0) return out;
    std::vector<long> cur(r, 0);
    // Descending in k_1, then recursively in the tail.
    auto rec = [&](auto&& self, long pos, long remaining) -> void {
        if (pos == r - 1) {
            cur[pos] = remaining;
            out.push_back(Composition{cur});
            return;
        }
        for (long k = remaining; k >= 0; --k) {
            cur[pos] = k;
            self(self, pos + 1, remaining - k);
        }
    };
    rec(rec, 0, n);
    return out;
}

Int composition_count(long n, long r) {
    if (r <= 0 || n < 0) return Int(0);
    return binomial(Int(n + r - 1), static_cast<unsigned long>(n));
}

Int multinomial(long total, const std::vector<long>& parts) {
    long s = 0;
    for (long p : parts) {
        if (p < 0) throw PreconditionError("multinomial: negative part");
        s += p;
    }
    if (s != total)
        throw PreconditionError("multinomial: parts sum to " + std::to_string(s) +
                                ", expected " + std::to_string(total));
    Int result = factorial(static_cast<unsigned long>(total));
    for (long p : parts) mpz_divexact(result.get_mpz_t(), result.get_mpz_t(),
                                      factorial(static_cast<unsigned long>(p)).get_mpz_t());
    return result;
}

Rat cnr(long n, long r) {
    if (n < 0 || r < 1) throw PreconditionError("cnr: need n >= 0, r >= 1");
    Int knr = composition_count(n, r);
    Rat closed = Rat(knr * factorial(static_cast<unsigned long>(n + r))) /
                 Rat(stirling2(n + r, r) * factorial(static_cast<unsigned long>(r)));
    closed.canonicalize();

    // Second form: |K_{n,r}| / sum_{k in K_{n,r}} prod_i 1/(k_i+1)!.
    Rat denom(0);
    for (const Composition& k : compositions(n, r)) {
        Rat term(1);
        for (long ki : k.parts)
            term /= Rat(factorial(static_cast<unsigned long>(ki + 1)));
        denom += term;
    }
    Rat jordan = Rat(knr) / denom;
    jordan.canonicalize();

    if (closed != jordan)
        throw CheckError("cnr(" + std::to_string(n) + "," + std::to_string(r) +
                         "): closed form " + closed.get_str() +
                         " != composition form " + jordan.get_str());
    return closed;
}

CnrPropertyReport verify_cnr_properties(long n_max, long r_max) {
    CnrPropertyReport rep;
    auto fail = [&](bool& flag, long n, long r, const std::string& what) {
        if (flag && rep.first_failure.empty()) {
            std::ostringstream os;
            os << what << " at (n,r)=(" << n << "," << r << ")";
            rep.first_failure = os.str();
        }
        flag = false;
    };

    for (long n = 1; n <= n_max; ++n) {
        for (long r = 1; r <= r_max; ++r) {
            Rat c = cnr(n, r);
            // The chain C_{n,1} > C_{n,2} > ... > 2^n is strict for n >= 2;
            // for n = 1 it collapses to the constant sequence C_{1,r} = 2.
            Rat next = cnr(n, r + 1);
            Rat two_n = Rat(pow_int(Int(2), static_cast<unsigned long>(n)));
            bool mono = (n >= 2) ? (c > next) : (c >= next);
            bool lower = (n >= 2) ? (c > two_n) : (c >= two_n);
            if (!mono) fail(rep.monotonicity_ok, n, r, "monotonicity");
            if (!lower) fail(rep.lower_bound_ok, n, r, "2^n lower bound");

            Rat identity(0);
            Int nr_fact = factorial(static_cast<unsigned long>(n + r));
            for (const Composition& k : compositions(n, r)) {
                std::vector<long> shifted;
                shifted.reserve(k.parts.size());
                for (long ki : k.parts) shifted.push_back(ki + 1);
                identity += Rat(nr_fact) - c * Rat(multinomial(n + r, shifted));
            }
            if (identity != 0) fail(rep.identity_ok, n, r, "property-4 identity");

            // binom(r,j) S(n+r,r) = sum_t binom(n+r,t) S(n+r-t,j) S(t,r-j)
            for (long j = 0; j <= r; ++j) {
                Int lhs = binomial(Int(r), static_cast<unsigned long>(j)) * stirling2(n + r, r);
                Int rhs(0);
                for (long t = 0; t <= n + r; ++t)
                    rhs += binomial(Int(n + r), static_cast<unsigned long>(t)) *
                           stirling2(n + r - t, j) * stirling2(t, r - j);
                if (lhs != rhs) fail(rep.stirling_recurrence_ok, n, r, "Stirling convolution");
            }
        }
    }
    return rep;
}

}  // namespace nd
