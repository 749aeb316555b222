#include "nd/ehrhart.hpp"

namespace nd {

Int count_points(const Polytope& delta, const Int& k, bool interior, const Int& budget) {
    if (delta.dim() != delta.ambient_dim())
        throw PreconditionError("count_points: polytope is not full-dimensional");
    if (!delta.is_lattice_polytope())
        throw PreconditionError("count_points: not a lattice polytope");
    if (k < 0) throw PreconditionError("count_points: negative dilation");
    const int n = delta.ambient_dim();
    if (k == 0) return interior ? Int(0) : Int(1);

    auto [lo_q, hi_q] = delta.bounding_box();
    LatticeBox box;
    box.lo.resize(n);
    box.hi.resize(n);
    for (int j = 0; j < n; ++j) {
        Rat lo = lo_q[j] * Rat(k), hi = hi_q[j] * Rat(k);
        Int lo_i, hi_i;
        mpz_cdiv_q(lo_i.get_mpz_t(), lo.get_num_mpz_t(), lo.get_den_mpz_t());
        mpz_fdiv_q(hi_i.get_mpz_t(), hi.get_num_mpz_t(), hi.get_den_mpz_t());
        box.lo[j] = lo_i;
        box.hi[j] = hi_i;
    }
    Int cells = box.cell_count();
    if (cells == 0) return Int(0);
    if (cells > budget)
        throw BudgetError("count_points: box volume " + cells.get_str() +
                          " exceeds budget " + budget.get_str());

    // int64 fast path over the facet list; falls back to exact mpq dots.
    struct F64 {
        std::vector<long long> normal;
        long long offset;  // already scaled by k
    };
    std::vector<F64> fast;
    bool use_fast = true;
    for (const auto& f : delta.facets()) {
        F64 g;
        Rat off = f.offset * Rat(k);
        if (!is_integer(off)) {
            // Rational offsets cannot happen for lattice polytopes, but keep
            // the exact path as a safety net.
            use_fast = false;
            break;
        }
        Int oi = off.get_num();
        if (!oi.fits_slong_p()) {
            use_fast = false;
            break;
        }
        g.offset = oi.get_si();
        for (const auto& a : f.normal) {
            if (!a.fits_slong_p()) {
                use_fast = false;
                break;
            }
            g.normal.push_back(a.get_si());
        }
        if (!use_fast) break;
        fast.push_back(std::move(g));
    }
    for (int j = 0; j < n && use_fast; ++j)
        if (!box.lo[j].fits_slong_p() || !box.hi[j].fits_slong_p()) use_fast = false;

    Int count(0);
    if (use_fast) {
        std::vector<long long> lo(n), hi(n), x(n);
        for (int j = 0; j < n; ++j) {
            lo[j] = box.lo[j].get_si();
            hi[j] = box.hi[j].get_si();
            x[j] = lo[j];
        }
        long hits = 0;
        while (true) {
            bool inside = true;
            for (const auto& f : fast) {
                __int128 acc = 0;
                for (int j = 0; j < n; ++j)
                    acc += static_cast<__int128>(f.normal[j]) * x[j];
                if (interior ? acc >= f.offset : acc > f.offset) {
                    inside = false;
                    break;
                }
            }
            if (inside) ++hits;
            int pos = n;
            bool done = true;
            while (pos > 0) {
                --pos;
                if (x[pos] < hi[pos]) {
                    ++x[pos];
                    for (int j = pos + 1; j < n; ++j) x[j] = lo[j];
                    done = false;
                    break;
                }
            }
            if (done) break;
        }
        count = Int(hits);
    } else {
        auto member = [&](const VecI& z) {
            VecQ p = to_rational(z);
            for (const auto& f : delta.facets()) {
                Rat v = dot(f.normal, p);
                Rat bound = f.offset * Rat(k);
                if (interior ? v >= bound : v > bound) return false;
            }
            return true;
        };
        count = Int(static_cast<long>(enumerate_lattice_points(member, box, budget).size()));
    }
    return count;
}

Rat facet_lattice_volume(const Polytope& delta) {
    if (delta.dim() != delta.ambient_dim())
        throw PreconditionError("facet_lattice_volume: polytope is not full-dimensional");
    Rat total(0);
    for (const auto& fv : delta.facet_vertex_ids()) {
        std::vector<VecQ> pts;
        for (int id : fv) pts.push_back(delta.vertices()[id]);
        if (pts.size() == 1)
            total += 1;  // N = 1: facets are points, Vol_0 = 1
        else
            total += relative_lattice_volume(pts);
    }
    return total;
}

VecQ fit_polynomial(const std::vector<std::pair<Rat, Rat>>& samples) {
    const size_t m = samples.size();
    MatQ vand(m, VecQ(m));
    VecQ rhs(m);
    for (size_t i = 0; i < m; ++i) {
        Rat power(1);
        for (size_t j = 0; j < m; ++j) {
            vand[i][j] = power;
            power *= samples[i].first;
        }
        rhs[i] = samples[i].second;
    }
    auto sol = solve_rat(std::move(vand), std::move(rhs));
    if (!sol) throw CheckError("fit_polynomial: repeated sample abscissae");
    return *sol;
}

int polynomial_degree(const VecQ& coeffs) {
    for (int i = static_cast<int>(coeffs.size()) - 1; i >= 0; --i)
        if (coeffs[i] != 0) return i;
    return -1;
}

EhrhartPolynomial ehrhart_polynomial(const Polytope& delta, const Int& budget) {
    if (delta.dim() != delta.ambient_dim())
        throw PreconditionError("ehrhart_polynomial: polytope is not full-dimensional");
    const int n = delta.ambient_dim();
    if (n > 5)
        throw PreconditionError("ehrhart_polynomial: dimension capped at 5 "
                                "(enumeration budget)");

    std::vector<std::pair<Rat, Rat>> samples;
    for (long k = 0; k <= n; ++k)
        samples.emplace_back(Rat(k), Rat(count_points(delta, Int(k), false, budget)));
    EhrhartPolynomial e;
    e.dim = n;
    e.coeffs = fit_polynomial(samples);

    if (e.coeffs[0] != 1)
        throw CheckError("ehrhart_polynomial: constant term " + e.coeffs[0].get_str() +
                         " != 1");
    Rat vol = delta.normalized_volume();
    if (e.coeffs[n] != vol)
        throw CheckError("ehrhart_polynomial: leading coefficient " +
                         e.coeffs[n].get_str() + " != volume " + vol.get_str());
    if (n >= 1) {
        Rat half_boundary = facet_lattice_volume(delta) / 2;
        if (e.coeffs[n - 1] != half_boundary)
            throw CheckError("ehrhart_polynomial: second coefficient " +
                             e.coeffs[n - 1].get_str() + " != Vol_{N-1}/2 = " +
                             half_boundary.get_str());
    }
    for (long k = 1; k <= n; ++k) {
        Rat lhs = e.eval(Int(-k));
        Rat rhs = Rat(count_points(delta, Int(k), true, budget));
        if (n % 2 == 1) rhs = -rhs;
        if (lhs != rhs)
            throw CheckError("ehrhart_polynomial: reciprocity fails at k = " +
                             std::to_string(k));
    }
    return e;
}

std::pair<Rat, Rat> pg_leading_terms(const NewtonDiagram& g) {
    if (!g.convenient())
        throw PreconditionError("pg_leading_terms: diagram is not convenient");
    const int n = g.ambient_dim();
    Rat lead = vol_under(g);
    Rat second = (facet_total_volume(g) - vol_j_sum(g, n - 1)) / 2;
    return {lead, second};
}

}  // namespace nd
