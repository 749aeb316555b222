#include "nd/harness.hpp"

#include <algorithm>
#include <iomanip>
#include <sstream>

namespace nd {

namespace {

Rat positive_entry_sum(const MixedCovolumeTable& table) {
    Rat acc(0);
    for (const auto& [k, co] : table.entries) {
        bool positive = true;
        for (long ki : k)
            if (ki < 1) positive = false;
        if (positive) acc += co;
    }
    return acc;
}

Rat weighted_entry_sum(const MixedCovolumeTable& table, long total) {
    Rat acc(0);
    for (const auto& [k, co] : table.entries) {
        bool positive = true;
        for (long ki : k)
            if (ki < 1) positive = false;
        if (positive) acc += Rat(multinomial(total, k)) * co;
    }
    return acc;
}

}  // namespace

std::string tuple_hash(const DiagramTuple& t, const Rat& scale) {
    std::string key = std::to_string(t.n) + "|" + std::to_string(t.r) + "|";
    for (const auto& g : t.diagrams) key += g.canonical_key() + "#";
    key += "|d=" + scale.get_str();
    std::ostringstream os;
    os << std::hex << std::setw(16) << std::setfill('0') << fnv1a(key);
    return os.str();
}

std::pair<Rat, Rat> leading_terms(const DiagramTuple& t) {
    t.validate();
    MixedCovolumeTable table = mixed_covolumes(t.diagrams);
    const int big_n = t.ambient_dim();
    Rat lt_mu = Rat(factorial(static_cast<unsigned long>(big_n))) * positive_entry_sum(table);
    Rat lt_pg = weighted_entry_sum(table, big_n);
    return {lt_mu, lt_pg};
}

InvariantReport durfee_check(const IcisInput& input, const HarnessOptions& opts) {
    input.tuple.validate();
    const DiagramTuple& t = input.tuple;
    InvariantReport rep;
    rep.n = t.n;
    rep.r = t.r;
    rep.scale = Rat(1);
    rep.input_hash = tuple_hash(t, rep.scale);
    rep.mu = milnor_icis(t);
    rep.pg = pg_icis(t, opts.budget);
    rep.cnr_value = cnr(t.n, t.r);
    rep.margin = Rat(rep.mu) - rep.cnr_value * Rat(rep.pg);
    if (rep.pg > 0) rep.ratio = Rat(rep.mu) / Rat(rep.pg);
    if (!input.in_hypothesis())
        rep.verdict = Verdict::out_of_hypothesis;
    else if (rep.pg == 0)
        rep.verdict = Verdict::pg_zero;
    else
        rep.verdict = rep.margin > 0 ? Verdict::holds : Verdict::violated;
    return rep;
}

ScanSeries scaling_scan(const IcisInput& input, long d_lo, long d_hi,
                        const HarnessOptions& opts) {
    input.tuple.validate();
    if (d_lo < 1 || d_hi < d_lo) throw InputError("scaling_scan: bad range");
    const DiagramTuple& t = input.tuple;
    const long n = t.n;
    const long r = t.r;
    const int big_n = t.ambient_dim();

    MilnorScalePolynomial poly = milnor_icis_scale_polynomial(t);
    {
        // The d-polynomial is exact by covolume homogeneity; verify once
        // against a direct recomputation at the smallest scanned scale.
        DiagramTuple scaled = t;
        for (auto& g : scaled.diagrams) g = scale(g, Rat(d_lo));
        if (poly.eval(Rat(d_lo)) != Rat(milnor_icis(scaled)))
            throw CheckError("scaling_scan: scale polynomial disagrees with direct mu");
    }

    ScanSeries series;
    MixedCovolumeTable table = mixed_covolumes(t.diagrams);
    series.lt_mu = Rat(factorial(static_cast<unsigned long>(big_n))) *
                   positive_entry_sum(table);
    series.lt_pg = weighted_entry_sum(table, big_n);

    // Cross-check l.t.(pg) against the Minkowski-sum inclusion-exclusion.
    std::vector<NewtonDiagram> sums;
    std::vector<long> sum_sign;
    Rat incl(0);
    for (long mask = 1; mask < (1L << r); ++mask) {
        std::vector<long> lambda(r, 0);
        int size = 0;
        for (long i = 0; i < r; ++i)
            if ((mask >> i) & 1) {
                lambda[i] = 1;
                ++size;
            }
        sums.push_back(weighted_sum_diagram(t.diagrams, lambda));
        sum_sign.push_back((r - size) % 2 == 0 ? 1 : -1);
        incl += Rat(sum_sign.back()) * vol_under(sums.back());
    }
    if (incl != series.lt_pg)
        throw CheckError("scaling_scan: l.t.(pg) table/inclusion-exclusion mismatch");

    series.cnr_value = cnr(n, r);
    series.quotient = series.lt_mu / series.lt_pg;
    series.quotient_equals_cnr = series.quotient == series.cnr_value;
    series.quotient_exceeds_cnr = series.quotient > series.cnr_value;
    series.all_equal_diagrams = true;
    for (const auto& g : t.diagrams)
        if (g.canonical_key() != t.diagrams[0].canonical_key())
            series.all_equal_diagrams = false;

    std::vector<std::pair<Rat, Rat>> mu_samples, pg_samples;
    for (long d = d_lo; d <= d_hi; ++d) {
        InvariantReport rep;
        rep.n = n;
        rep.r = r;
        rep.scale = Rat(d);
        rep.input_hash = tuple_hash(t, rep.scale);
        rep.mu = to_int(poly.eval(Rat(d)));
        Rat pg(0);
        for (size_t i = 0; i < sums.size(); ++i)
            pg += Rat(sum_sign[i]) *
                  Rat(count_positive_points(scale(sums[i], Rat(d)), opts.budget));
        rep.pg = to_int(pg);
        if (rep.pg < 0) throw CheckError("scaling_scan: negative pg");
        rep.cnr_value = series.cnr_value;
        rep.margin = Rat(rep.mu) - rep.cnr_value * Rat(rep.pg);
        if (rep.pg > 0) rep.ratio = Rat(rep.mu) / Rat(rep.pg);
        IcisInput probe{t};
        if (!probe.in_hypothesis())
            rep.verdict = Verdict::out_of_hypothesis;
        else if (rep.pg == 0)
            rep.verdict = Verdict::pg_zero;
        else
            rep.verdict = rep.margin > 0 ? Verdict::holds : Verdict::violated;
        mu_samples.emplace_back(Rat(d), Rat(rep.mu));
        pg_samples.emplace_back(Rat(d), Rat(rep.pg));
        series.reports.push_back(std::move(rep));
    }

    // d0: first scale from which the margin stays positive through d_hi.
    for (long i = static_cast<long>(series.reports.size()) - 1; i >= 0; --i) {
        if (series.reports[i].margin > 0)
            series.d0 = d_lo + i;
        else
            break;
    }

    const size_t window = static_cast<size_t>(big_n) + 1;
    if (mu_samples.size() >= window) {
        std::vector<std::pair<Rat, Rat>> tail(mu_samples.end() - window, mu_samples.end());
        series.fitted_mu_leading = fit_polynomial(tail)[big_n];
        if (series.fitted_mu_leading != series.lt_mu)
            throw CheckError("scaling_scan: fitted mu leading coefficient mismatch");
        std::vector<std::pair<Rat, Rat>> ptail(pg_samples.end() - window, pg_samples.end());
        series.fitted_pg_leading = fit_polynomial(ptail)[big_n];
    }
    return series;
}

Thm2Series theorem2_check(const NewtonDiagram& g, long k_lo, long k_hi,
                          const HarnessOptions& opts) {
    if (!g.convenient()) throw PreconditionError("theorem2_check: diagram not convenient");
    const int big_n = g.ambient_dim();
    const long n = big_n - 1;
    if (n <= 2) throw PreconditionError("theorem2_check: needs n > 2");
    if (k_lo < 1 || k_hi < k_lo) throw InputError("theorem2_check: bad range");

    Thm2Series series;
    series.homogeneous = g.homogeneous();
    if (!series.homogeneous) series.leading_margin = thm2_leading_margin(g);

    Int nplus1_fact = factorial(static_cast<unsigned long>(n + 1));
    bool all_equal = true;
    for (long k = k_lo; k <= k_hi; ++k) {
        NewtonDiagram gk = scale(g, Rat(k));
        Thm2Row row;
        row.k = k;
        row.mu = milnor_hypersurface(gk);
        TangentConeData tc = tangent_cone_data(gk);
        row.pt_included = tc.meets_all_edges && tc.top_dimensional;
        row.mu_pt = row.pt_included ? mu_tangent_cone(tc) : Int(0);
        row.correction = theorem2_correction(tc.p, n);
        row.pg = pg_hypersurface(gk, opts.budget);
        row.margin = row.mu - row.mu_pt - row.correction - nplus1_fact * row.pg;
        row.holds = row.margin >= 0;
        if (row.margin != 0) all_equal = false;
        series.rows.push_back(std::move(row));
    }
    series.equality_throughout = all_equal;
    for (long i = static_cast<long>(series.rows.size()) - 1; i >= 0; --i) {
        if (series.rows[i].holds)
            series.k0 = k_lo + i;
        else
            break;
    }
    return series;
}

CounterexampleReport counterexample(long m_lo, long m_hi) {
    if (m_lo < 2 || m_hi < m_lo) throw InputError("counterexample: need 2 <= m_lo <= m_hi");
    CounterexampleReport rep;
    for (long m = m_lo; m <= m_hi; ++m) {
        auto pt = [&](long a, long b, long c) { return VecQ{Rat(a), Rat(b), Rat(c)}; };
        VecQ apex = pt(-1, -1, -1);
        std::vector<VecQ> es{pt(m, 0, 0), pt(0, m, 0), pt(0, 0, m)};

        CounterexampleRow row;
        row.m = m;
        Polytope body = Polytope::convex_hull({apex, es[0], es[1], es[2]});
        row.vol3 = body.normalized_volume();
        row.vol2 = 0;
        row.vol1 = 0;
        for (int i = 0; i < 3; ++i) {
            row.vol1 += relative_lattice_volume(std::vector<VecQ>{apex, es[i]});
            for (int j = i + 1; j < 3; ++j)
                row.vol2 += relative_lattice_volume(std::vector<VecQ>{apex, es[i], es[j]});
        }

        Int interior(0);
        VecI z(3);
        for (long x = -1; x <= m; ++x)
            for (long y = -1; y <= m; ++y)
                for (long w = -1; w <= m; ++w)
                    if (body.strictly_contains(pt(x, y, w))) interior += 1;
        row.interior_body = interior;
        Int face_interior(0);
        for (long x = 1; x < m; ++x)
            for (long y = 1; y < m - x; ++y) face_interior += 1;  // z = m-x-y >= 1
        row.interior_face = face_interior;

        row.mu = to_int(Rat(6) * row.vol3 - Rat(2) * row.vol2 + row.vol1 - 1);
        row.pg = row.interior_body + row.interior_face;
        row.margin = row.mu - 6 * row.pg;

        // The paper's closed forms are the canary: mismatch = hard failure.
        auto expect = [&](bool ok, const std::string& what) {
            if (!ok)
                throw CheckError("counterexample: " + what + " mismatch at m = " +
                                 std::to_string(m));
        };
        expect(row.vol3 == make_rat(m * m * m + 3 * m * m, 6), "Vol3");
        expect(row.vol2 == make_rat(3 * m, 2), "Vol2");
        expect(row.vol1 == 3, "Vol1");
        expect(row.interior_body == binomial(Int(m + 2), 3), "interior count");
        expect(row.interior_face == binomial(Int(m - 1), 2), "face interior count");
        expect(row.mu == Int(m * m * m + 3 * m * m - 3 * m + 2), "mu");
        expect(row.pg == binomial(Int(m + 2), 3) + binomial(Int(m - 1), 2), "pg");
        expect(row.margin == Int(-3 * m * m + 4 * m - 4), "margin");
        expect(row.margin < 0, "negativity");
        rep.rows.push_back(std::move(row));
    }
    return rep;
}

LemmaSuiteReport lemma_suite(long n_max, long r_max, long corpus_size, std::uint64_t seed) {
    if (n_max < 1 || r_max < 1) throw InputError("lemma_suite: bad grid");
    LemmaSuiteReport rep;
    rep.cnr = verify_cnr_properties(n_max, r_max);
    if (!rep.cnr.all_ok() && rep.first_failure.empty())
        rep.first_failure = rep.cnr.first_failure;

    auto fail = [&](bool& flag, const std::string& what) {
        if (flag && rep.first_failure.empty()) rep.first_failure = what;
        flag = false;
    };

    // S(n+r-1, r)/S(n+r, r) > 2n/(n+r-1)^2 for r >= 2, n >= 3.
    for (long r = 2; r <= std::max<long>(r_max, 2); ++r)
        for (long n = 3; n <= std::max<long>(n_max, 3); ++n) {
            Rat lhs = Rat(stirling2(n + r - 1, r)) / Rat(stirling2(n + r, r));
            Rat rhs = make_rat(2 * n, (n + r - 1) * (n + r - 1));
            if (!(lhs > rhs))
                fail(rep.stirling_ratio_ok,
                     "Stirling ratio at (r,n)=(" + std::to_string(r) + "," +
                         std::to_string(n) + ")");
        }
    {
        Rat lhs = Rat(stirling2(4, 2)) / Rat(stirling2(5, 2));
        if (!(lhs == make_rat(7, 15) && lhs > make_rat(3, 8)))
            fail(rep.boundary_case_ok, "boundary case (r,n)=(2,3)");
    }
    // S(n+r, r) >= S(n+r-1, r-1) for r > 1, equality only at n = 0.
    for (long r = 2; r <= r_max; ++r) {
        if (stirling2(r, r) != stirling2(r - 1, r - 1))
            fail(rep.stirling_monotone_ok, "Stirling equality at n=0");
        for (long n = 1; n <= n_max; ++n)
            if (!(stirling2(n + r, r) > stirling2(n + r - 1, r - 1)))
                fail(rep.stirling_monotone_ok,
                     "Stirling monotonicity at (n,r)=(" + std::to_string(n) + "," +
                         std::to_string(r) + ")");
    }

    std::mt19937_64 rng(seed);
    for (long trial = 0; trial < corpus_size; ++trial) {
        int dim = 2 + static_cast<int>(rng() % 3);
        NewtonDiagram g = random_convenient_diagram(rng, dim, 5, 2);
        ++rep.volume_claim_checked;
        if (!(facet_total_volume(g) <= vol_j_sum(g, dim - 1) / Rat(dim)))
            fail(rep.volume_claim_ok, "volume claim on corpus diagram " +
                                          std::to_string(trial));
    }
    return rep;
}

ConjectureReport conjecture_report(const IcisInput& input, const HarnessOptions& opts) {
    input.tuple.validate();
    const DiagramTuple& t = input.tuple;
    const long n = t.n;
    const long r = t.r;
    ConjectureReport rep;
    Rat c = cnr(n, r);
    MixedCovolumeTable table = mixed_covolumes(t.diagrams);
    Int nr_fact = factorial(static_cast<unsigned long>(n + r));
    rep.rhs = Rat(0);
    for (const auto& [k, co] : table.entries) {
        bool positive = true;
        for (long ki : k)
            if (ki < 1) positive = false;
        if (!positive) continue;
        rep.rhs += co * (Rat(nr_fact) - c * Rat(multinomial(n + r, k)));
    }
    rep.lhs = Rat(milnor_icis(t)) - c * Rat(pg_icis(t, opts.budget));
    rep.lhs_greater = rep.lhs > rep.rhs;
    rep.rhs_zero = rep.rhs == 0;
    return rep;
}

NewtonDiagram random_convenient_diagram(std::mt19937_64& rng, int dim, long max_coord,
                                        int extra_points) {
    SupportSet s;
    s.ambient_dim = dim;
    for (int i = 0; i < dim; ++i) {
        VecI e(dim, Int(0));
        e[i] = Int(1 + static_cast<long>(rng() % max_coord));
        s.points.push_back(std::move(e));
    }
    for (int extra = 0; extra < extra_points; ++extra) {
        VecI p(dim);
        long sum = 0;
        for (int j = 0; j < dim; ++j) {
            long v = static_cast<long>(rng() % (max_coord + 1));
            p[j] = Int(v);
            sum += v;
        }
        if (sum > 0) s.points.push_back(std::move(p));
    }
    return NewtonDiagram::from_support(s);
}

}  // namespace nd
