#include "nd/invariants.hpp"

#include <algorithm>
#include <functional>
#include <set>

namespace nd {

namespace {

void for_each_subset(int n, int size, const std::function<void(const std::vector<int>&)>& fn) {
    std::vector<int> axes(size);
    auto rec = [&](auto&& self, int pos, int next) -> void {
        if (pos == size) {
            fn(axes);
            return;
        }
        for (int a = next; a <= n - (size - pos); ++a) {
            axes[pos] = a;
            self(self, pos + 1, a + 1);
        }
    };
    rec(rec, 0, 0);
}

Int assert_nonneg_integer(const Rat& value, const std::string& what) {
    if (!is_integer(value))
        throw CheckError(what + ": non-integral value " + value.get_str());
    Int v = value.get_num();
    if (v < 0) throw CheckError(what + ": negative value " + v.get_str());
    return v;
}

// sum over K_{j,r} with all parts >= 1 of the table entries.
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

}  // namespace

Int milnor_hypersurface(const NewtonDiagram& g) {
    if (!g.convenient())
        throw PreconditionError("milnor_hypersurface: diagram is not convenient");
    if (!g.integral())
        throw PreconditionError("milnor_hypersurface: needs integral vertices");
    const int n = g.ambient_dim();
    Rat mu(0);
    for (int i = 0; i <= n; ++i) {
        Rat term = Rat(factorial(static_cast<unsigned long>(i))) * vol_j_sum(g, i);
        mu += ((n - i) % 2 == 0) ? term : -term;
    }
    return assert_nonneg_integer(mu, "milnor_hypersurface");
}

Int milnor_icis(const DiagramTuple& t) {
    t.validate();
    const long n = t.n;
    const long r = t.r;
    const int big_n = t.ambient_dim();
    for (const auto& g : t.diagrams) {
        if (!g.convenient()) throw PreconditionError("milnor_icis: diagram not convenient");
        if (!g.integral()) throw PreconditionError("milnor_icis: needs integral vertices");
    }
    Rat mu(0);
    for (long j = r; j <= n + r; ++j) {
        Rat level(0);
        for_each_subset(big_n, static_cast<int>(j), [&](const std::vector<int>& axes) {
            std::vector<NewtonDiagram> restricted;
            for (const auto& g : t.diagrams) restricted.push_back(restrict_to(g, axes));
            level += positive_entry_sum(mixed_covolumes(restricted));
        });
        Rat term = Rat(factorial(static_cast<unsigned long>(j))) * level;
        mu += ((n + r - j) % 2 == 0) ? term : -term;
    }
    mu += (n % 2 == 0) ? Rat(-1) : Rat(1);  // (-1)^{n+1}
    return assert_nonneg_integer(mu, "milnor_icis");
}

Rat milnor_proportional(const NewtonDiagram& base, const std::vector<Rat>& d) {
    if (!base.convenient())
        throw PreconditionError("milnor_proportional: diagram is not convenient");
    const long r = static_cast<long>(d.size());
    if (r < 1) throw PreconditionError("milnor_proportional: empty scale list");
    const long n = base.ambient_dim() - r;
    if (n < 1) throw PreconditionError("milnor_proportional: need ambient_dim > r");
    for (const auto& di : d)
        if (di <= 0) throw PreconditionError("milnor_proportional: scales must be positive");

    Rat mu(0);
    for (long j = r; j <= n + r; ++j) {
        Rat theta(0);
        for (const Composition& k : compositions(j - r, r)) {
            Rat prod(1);
            for (long i = 0; i < r; ++i)
                prod *= pow_rat(d[i], static_cast<unsigned long>(k.parts[i]));
            theta += prod;
        }
        for (long i = 0; i < r; ++i) theta *= d[i];
        Rat term = theta * Rat(factorial(static_cast<unsigned long>(j))) * vol_j_sum(base, static_cast<int>(j));
        mu += ((n + r - j) % 2 == 0) ? term : -term;
    }
    mu += (n % 2 == 0) ? Rat(-1) : Rat(1);
    return mu;
}

MilnorScalePolynomial milnor_icis_scale_polynomial(const DiagramTuple& t) {
    t.validate();
    const long n = t.n;
    const long r = t.r;
    const int big_n = t.ambient_dim();
    MilnorScalePolynomial poly;
    poly.n = n;
    poly.r = r;
    poly.constant_term = (n % 2 == 0) ? Int(-1) : Int(1);
    for (long j = r; j <= n + r; ++j) {
        Rat level(0);
        for_each_subset(big_n, static_cast<int>(j), [&](const std::vector<int>& axes) {
            std::vector<NewtonDiagram> restricted;
            for (const auto& g : t.diagrams) restricted.push_back(restrict_to(g, axes));
            level += positive_entry_sum(mixed_covolumes(restricted));
        });
        Rat coeff = Rat(factorial(static_cast<unsigned long>(j))) * level;
        if ((n + r - j) % 2 != 0) coeff = -coeff;
        poly.coeff_by_degree[j] = coeff;
    }
    return poly;
}

Int pg_hypersurface(const NewtonDiagram& g, const Int& budget) {
    return count_positive_points(g, budget);
}

Int pg_icis(const DiagramTuple& t, const Int& budget) {
    t.validate();
    const long r = t.r;
    Rat pg(0);
    for (long mask = 1; mask < (1L << r); ++mask) {
        std::vector<long> lambda(r, 0);
        int size = 0;
        for (long i = 0; i < r; ++i)
            if ((mask >> i) & 1) {
                lambda[i] = 1;
                ++size;
            }
        NewtonDiagram sum = weighted_sum_diagram(t.diagrams, lambda);
        Rat term(count_positive_points(sum, budget));
        pg += ((r - size) % 2 == 0) ? term : -term;
    }
    return assert_nonneg_integer(pg, "pg_icis");
}

Int falling_factorial(const Int& p, long terms) {
    Int acc(1);
    for (long i = 0; i < terms; ++i) acc *= p - Int(i);
    return acc;
}

Int theorem2_correction(const Int& p, long n) {
    if (p < 1 || n < 1) throw PreconditionError("theorem2_correction: need p, n >= 1");
    Int bracket = pow_int(p - 1, static_cast<unsigned long>(n + 1));
    return bracket - falling_factorial(p, n + 1);  // zero factor when p <= n
}

TangentConeData tangent_cone_data(const NewtonDiagram& g) {
    if (!g.convenient())
        throw PreconditionError("tangent_cone_data: diagram is not convenient");
    if (!g.integral())
        throw PreconditionError("tangent_cone_data: needs integral vertices");
    const int big_n = g.ambient_dim();
    TangentConeData tc;
    tc.p = multiplicity(g);
    std::vector<VecQ> simplex;
    for (int i = 0; i < big_n; ++i) {
        VecQ e(big_n, Rat(0));
        e[i] = Rat(tc.p);
        simplex.push_back(std::move(e));
    }
    tc.delta = Polytope::convex_hull(std::move(simplex));
    tc.delta0 = tangent_cone_face(g);
    tc.top_dimensional = tc.delta0.dim() == big_n - 1;
    tc.meets_all_edges = true;
    for (int i = 0; i < big_n && tc.meets_all_edges; ++i)
        for (int j = i + 1; j < big_n && tc.meets_all_edges; ++j) {
            bool touched = false;
            for (const auto& v : tc.delta0.vertices()) {
                bool in_edge_subspace = true;
                for (int a = 0; a < big_n; ++a)
                    if (a != i && a != j && v[a] != 0) in_edge_subspace = false;
                if (in_edge_subspace) touched = true;
            }
            if (!touched) tc.meets_all_edges = false;
        }
    return tc;
}

Int mu_tangent_cone(const TangentConeData& tc) {
    if (!tc.meets_all_edges)
        throw PreconditionError(
            "mu_tangent_cone: tangent cone has non-isolated singularities "
            "(some edge of Delta is missed)");
    if (!tc.top_dimensional)
        throw PreconditionError("mu_tangent_cone: sigma_p is not top-dimensional");
    const int big_n = tc.delta.ambient_dim();
    const int n = big_n - 1;

    Rat mu(0);
    for (int j = 0; j <= n; ++j) {
        // j-dimensional faces of Delta sit in the coordinate subspaces with
        // |I| = j+1; Delta_0 cap F is spanned by the sigma_p vertices in I.
        Rat level(0);
        for_each_subset(big_n, j + 1, [&](const std::vector<int>& axes) {
            Rat face_vol = make_rat(pow_int(tc.p, static_cast<unsigned long>(j)),
                                    factorial(static_cast<unsigned long>(j)));
            std::vector<VecQ> inside;
            for (const auto& v : tc.delta0.vertices()) {
                bool in_subspace = true;
                std::set<int> keep(axes.begin(), axes.end());
                for (int a = 0; a < big_n; ++a)
                    if (!keep.count(a) && v[a] != 0) in_subspace = false;
                if (in_subspace) inside.push_back(v);
            }
            Rat cut_vol(0);
            if (!inside.empty()) {
                if (j == 0)
                    cut_vol = 1;
                else {
                    Polytope cut = Polytope::convex_hull(inside);
                    if (cut.dim() == j) cut_vol = relative_lattice_volume(cut);
                }
            }
            level += face_vol - cut_vol;
        });
        Rat term = Rat(factorial(static_cast<unsigned long>(j))) * level;
        mu += ((n - j) % 2 == 0) ? term : -term;
    }
    return assert_nonneg_integer(mu, "mu_tangent_cone");
}

Rat thm2_leading_margin(const NewtonDiagram& g) {
    if (!g.convenient())
        throw PreconditionError("thm2_leading_margin: diagram is not convenient");
    if (!g.integral())
        throw PreconditionError("thm2_leading_margin: needs integral vertices");
    const int big_n = g.ambient_dim();
    const long n = big_n - 1;
    if (n <= 2) throw PreconditionError("thm2_leading_margin: needs n > 2");
    if (g.homogeneous())
        throw PreconditionError("thm2_leading_margin: margin is for the "
                                "non-homogeneous branch");
    Int p = multiplicity(g);
    Polytope sigma = tangent_cone_face(g);
    Rat sigma_vol(0);
    if (sigma.dim() == big_n - 1) sigma_vol = relative_lattice_volume(sigma);
    Rat delta_vol = make_rat(pow_int(p, static_cast<unsigned long>(n)),
                             factorial(static_cast<unsigned long>(n)));
    Rat nn(n);
    return (nn - 1) / (nn + 1) * vol_j_sum(g, static_cast<int>(n)) - facet_total_volume(g) +
           Rat(2) / (nn + 1) * sigma_vol - (nn - 2 + Rat(2) / (nn + 1)) * delta_vol;
}

}  // namespace nd
