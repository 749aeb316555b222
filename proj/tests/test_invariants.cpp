#include <doctest.h>

#include <random>

#include "nd/invariants.hpp"

using namespace nd;

namespace {

NewtonDiagram diag(int n, const std::vector<std::vector<long>>& raw) {
    SupportSet s;
    s.ambient_dim = n;
    for (const auto& p : raw) {
        VecI v;
        for (long c : p) v.push_back(Int(c));
        s.points.push_back(std::move(v));
    }
    return NewtonDiagram::from_support(s);
}

NewtonDiagram homogeneous_diagram(int n, long d) {
    std::vector<std::vector<long>> pts;
    for (int i = 0; i < n; ++i) {
        std::vector<long> e(n, 0);
        e[i] = d;
        pts.push_back(e);
    }
    return diag(n, pts);
}

NewtonDiagram random_convenient(std::mt19937_64& rng, int n, long cmax, int extras) {
    std::uniform_int_distribution<long> c(0, cmax);
    std::uniform_int_distribution<long> axis(1, cmax);
    std::vector<std::vector<long>> pts;
    for (int i = 0; i < n; ++i) {
        std::vector<long> e(n, 0);
        e[i] = axis(rng);
        pts.push_back(e);
    }
    for (int extra = 0; extra < extras; ++extra) {
        std::vector<long> p(n);
        long sum = 0;
        for (int j = 0; j < n; ++j) sum += (p[j] = c(rng));
        if (sum > 0) pts.push_back(p);
    }
    return diag(n, pts);
}

DiagramTuple tuple_of(long n, long r, std::vector<NewtonDiagram> gs) {
    DiagramTuple t;
    t.n = n;
    t.r = r;
    t.diagrams = std::move(gs);
    return t;
}

}  // namespace

TEST_CASE("milnor_hypersurface pinned examples") {
    CHECK(milnor_hypersurface(diag(2, {{2, 0}, {0, 2}})) == 1);
    for (int n = 2; n <= 3; ++n)
        for (long d = 1; d <= 6; ++d)
            CHECK(milnor_hypersurface(homogeneous_diagram(n + 1, d)) ==
                  pow_int(Int(d - 1), n + 1));
    // Scale-k of homogeneous degree p.
    for (long k = 1; k <= 3; ++k)
        CHECK(milnor_hypersurface(scale(homogeneous_diagram(4, 2), Rat(k))) ==
              pow_int(Int(2 * k - 1), 4));
}

TEST_CASE("milnor_icis specializes to milnor_hypersurface at r = 1") {
    std::mt19937_64 rng(777);
    int tested = 0;
    while (tested < 8) {
        int big_n = 2 + static_cast<int>(rng() % 3);
        auto g = random_convenient(rng, big_n, 5, 2);
        ++tested;
        auto t = tuple_of(big_n - 1, 1, {g});
        CHECK(milnor_icis(t) == milnor_hypersurface(g));
    }
}

TEST_CASE("milnor_icis matches milnor_proportional on proportional tuples") {
    std::mt19937_64 rng(778);
    for (int trial = 0; trial < 4; ++trial) {
        int big_n = 3 + static_cast<int>(rng() % 2);
        auto base = random_convenient(rng, big_n, 3, 1);
        long d1 = 1 + static_cast<long>(rng() % 3);
        long d2 = 1 + static_cast<long>(rng() % 3);
        auto t = tuple_of(big_n - 2, 2, {scale(base, Rat(d1)), scale(base, Rat(d2))});
        Rat expected = milnor_proportional(base, {Rat(d1), Rat(d2)});
        CHECK(Rat(milnor_icis(t)) == expected);
    }
}

TEST_CASE("milnor_icis matches milnor_proportional for an r = 3 triple") {
    std::mt19937_64 rng(779);
    auto base = random_convenient(rng, 5, 2, 1);
    auto t = tuple_of(2, 3, {base, scale(base, Rat(2)), base});
    CHECK(Rat(milnor_icis(t)) == milnor_proportional(base, {Rat(1), Rat(2), Rat(1)}));
}

TEST_CASE("curve complete intersection of two quadrics: mu = 5") {
    // (X,0) in C^3 cut by two generic quadrics: mu = 2d^3 - 3d^2 + 1 at d = 2.
    auto g = homogeneous_diagram(3, 2);
    auto t = tuple_of(1, 2, {g, g});
    CHECK(milnor_icis(t) == 5);
    for (long d = 1; d <= 3; ++d) {
        auto gd = homogeneous_diagram(3, d);
        CHECK(milnor_icis(tuple_of(1, 2, {gd, gd})) == Int(2 * d * d * d - 3 * d * d + 1));
    }
}

TEST_CASE("milnor scale polynomial matches direct recomputation") {
    auto g1 = homogeneous_diagram(3, 1);
    auto g2 = diag(3, {{2, 0, 0}, {0, 1, 0}, {0, 0, 2}});
    auto t = tuple_of(1, 2, {g1, g2});
    auto poly = milnor_icis_scale_polynomial(t);
    for (long d = 1; d <= 3; ++d) {
        auto scaled = tuple_of(1, 2, {scale(g1, Rat(d)), scale(g2, Rat(d))});
        CHECK(poly.eval(Rat(d)) == Rat(milnor_icis(scaled)));
    }
}

TEST_CASE("pg_hypersurface and pg_icis") {
    CHECK(pg_hypersurface(homogeneous_diagram(3, 2)) == 0);
    CHECK(pg_hypersurface(homogeneous_diagram(3, 3)) == 1);
    for (long d = 1; d <= 8; ++d)
        CHECK(pg_hypersurface(homogeneous_diagram(4, d)) == binomial(Int(d), 4));

    // pg(2 Gamma) - 2 pg(Gamma) = 4 for the degree-2 pair in R^3.
    auto g = homogeneous_diagram(3, 2);
    CHECK(pg_icis(tuple_of(1, 2, {g, g})) == 4);

    // Equal diagrams: sum_j (-1)^j binom(r,j) pg((r-j) Gamma).
    auto h = diag(3, {{3, 0, 0}, {0, 3, 0}, {0, 0, 3}, {1, 1, 1}});
    auto t = tuple_of(1, 2, {h, h});
    Int direct = pg_icis(t);
    Int by_scaling = count_positive_points(scale(h, Rat(2))) -
                     2 * count_positive_points(h);
    CHECK(direct == by_scaling);
}

TEST_CASE("theorem2_correction") {
    CHECK(theorem2_correction(Int(2), 3) == 1);  // 1 - 0
    CHECK(theorem2_correction(Int(4), 3) == 57); // 81 - 24
    CHECK(theorem2_correction(Int(3), 3) == 16); // 16 - 0
    CHECK(falling_factorial(Int(5), 4) == 120);
    CHECK(falling_factorial(Int(3), 4) == 0);
}

TEST_CASE("homogeneous equality: mu - correction = (n+1)! pg") {
    for (long p = 2; p <= 5; ++p) {
        auto g = homogeneous_diagram(4, p);
        Int mu = milnor_hypersurface(g);
        Int pg = pg_hypersurface(g);
        CHECK(mu - theorem2_correction(Int(p), 3) == factorial(4) * pg);
    }
}

TEST_CASE("tangent_cone_data") {
    auto hom = homogeneous_diagram(4, 3);
    auto tc = tangent_cone_data(hom);
    CHECK(tc.p == 3);
    CHECK(tc.meets_all_edges);
    CHECK(tc.top_dimensional);
    CHECK(tc.delta0.vertices().size() == 4);

    // sigma_p = Conv(2e_1, 2e_2, 2e_3) touches every edge of Delta at the
    // corners, but is not top-dimensional, so the mu(PT) term is omitted.
    auto g = diag(4, {{2, 0, 0, 0}, {0, 2, 0, 0}, {0, 0, 2, 0}, {0, 0, 0, 3}});
    auto tc2 = tangent_cone_data(g);
    CHECK(tc2.p == 2);
    CHECK(tc2.meets_all_edges);
    CHECK(!tc2.top_dimensional);
    CHECK_THROWS_AS(mu_tangent_cone(tc2), PreconditionError);

    auto rich = diag(4, {{3, 0, 0, 0}, {0, 3, 0, 0}, {0, 0, 3, 0}, {0, 0, 0, 3}, {1, 1, 1, 0}});
    auto tc3 = tangent_cone_data(rich);
    CHECK(tc3.p == 3);
    CHECK(tc3.meets_all_edges);
    CHECK(tc3.top_dimensional);
}

TEST_CASE("mu_tangent_cone: smooth cone gives zero") {
    for (long p = 2; p <= 4; ++p) {
        auto tc = tangent_cone_data(homogeneous_diagram(4, p));
        CHECK(mu_tangent_cone(tc) == 0);
    }
}

TEST_CASE("mu_tangent_cone: nodal cubic tangent cone gives one") {
    // Surface germ in C^3 whose tangent cone is the nodal plane cubic
    // y^2 z - x^2 z - x^3; the projective curve has a single node, mu = 1.
    auto g = diag(3, {{3, 0, 0}, {2, 0, 1}, {0, 2, 1}, {0, 4, 0}, {0, 0, 4}});
    auto tc = tangent_cone_data(g);
    REQUIRE(tc.p == 3);
    REQUIRE(tc.meets_all_edges);
    REQUIRE(tc.top_dimensional);
    CHECK(mu_tangent_cone(tc) == 1);
}

TEST_CASE("mu_tangent_cone never increases when Delta_0 grows") {
    // Chain of sigma_p supports inside the p = 3 simplex in R^3.
    std::vector<std::vector<std::vector<long>>> chain = {
        {{3, 0, 0}, {2, 0, 1}, {0, 2, 1}, {0, 4, 0}, {0, 0, 4}},
        {{3, 0, 0}, {2, 0, 1}, {0, 2, 1}, {0, 3, 0}, {0, 0, 4}},
        {{3, 0, 0}, {2, 0, 1}, {0, 2, 1}, {0, 3, 0}, {0, 0, 3}},
    };
    Int prev(-1);
    for (const auto& support : chain) {
        auto tc = tangent_cone_data(diag(3, support));
        if (!tc.meets_all_edges || !tc.top_dimensional) continue;
        Int mu = mu_tangent_cone(tc);
        if (prev >= 0) CHECK(mu <= prev);
        prev = mu;
    }
}

TEST_CASE("thm2_leading_margin") {
    auto g = diag(4, {{2, 0, 0, 0}, {0, 4, 0, 0}, {0, 0, 4, 0}, {0, 0, 0, 4}});
    Rat margin = thm2_leading_margin(g);
    CHECK(margin > 0);
    // The margin scales as d^n under Gamma -> d Gamma.
    for (long d = 2; d <= 3; ++d)
        CHECK(thm2_leading_margin(scale(g, Rat(d))) ==
              margin * Rat(pow_int(Int(d), 3)));
    CHECK_THROWS_AS(thm2_leading_margin(homogeneous_diagram(4, 2)), PreconditionError);
}

TEST_CASE("mu(PT of k Gamma) minus n! Vol_n(k(Delta\\Delta_0)) has k-order below n") {
    auto g = diag(3, {{3, 0, 0}, {2, 0, 1}, {0, 2, 1}, {0, 4, 0}, {0, 0, 4}});
    const int n = 2;
    std::vector<std::pair<Rat, Rat>> residual;
    for (long k = 1; k <= 6; ++k) {
        auto tc = tangent_cone_data(scale(g, Rat(k)));
        REQUIRE(tc.meets_all_edges);
        Rat top = Rat(factorial(n)) * (tc.delta.dim() == 2
                                           ? relative_lattice_volume(tc.delta)
                                           : Rat(0));
        Rat cut = relative_lattice_volume(tc.delta0);
        Rat mu = Rat(mu_tangent_cone(tc));
        residual.emplace_back(Rat(k), mu - Rat(factorial(n)) * (relative_lattice_volume(tc.delta) - cut));
        (void)top;
    }
    VecQ fitted = fit_polynomial(residual);
    CHECK(polynomial_degree(fitted) <= n - 1);
}

TEST_CASE("IcisInput hypothesis flag") {
    IcisInput a{tuple_of(2, 1, {homogeneous_diagram(3, 2)})};
    CHECK(a.in_hypothesis());
    IcisInput b{tuple_of(1, 2, {homogeneous_diagram(3, 2), homogeneous_diagram(3, 2)})};
    CHECK(!b.in_hypothesis());
    IcisInput c{tuple_of(3, 2, {homogeneous_diagram(5, 2), homogeneous_diagram(5, 2)})};
    CHECK(c.in_hypothesis());
}
