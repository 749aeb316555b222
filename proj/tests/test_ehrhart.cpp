#include <doctest.h>

#include <random>

#include "nd/ehrhart.hpp"

using namespace nd;

namespace {

std::vector<VecQ> pts(const std::vector<std::vector<long>>& raw) {
    std::vector<VecQ> out;
    for (const auto& p : raw) {
        VecQ q(p.size());
        for (size_t i = 0; i < p.size(); ++i) q[i] = Rat(p[i]);
        out.push_back(std::move(q));
    }
    return out;
}

Polytope unit_cube(int n) {
    std::vector<VecQ> corners;
    for (long mask = 0; mask < (1L << n); ++mask) {
        VecQ v(n);
        for (int j = 0; j < n; ++j) v[j] = Rat((mask >> j) & 1);
        corners.push_back(std::move(v));
    }
    return Polytope::convex_hull(corners);
}

NewtonDiagram homogeneous_diagram(int n, long d) {
    SupportSet s;
    s.ambient_dim = n;
    for (int i = 0; i < n; ++i) {
        VecI e(n, Int(0));
        e[i] = d;
        s.points.push_back(e);
    }
    return NewtonDiagram::from_support(s);
}

}  // namespace

TEST_CASE("count_points on the unit square") {
    auto sq = unit_cube(2);
    CHECK(count_points(sq, Int(1), false) == 4);
    CHECK(count_points(sq, Int(1), true) == 0);
    CHECK(count_points(sq, Int(0), false) == 1);
    CHECK(count_points(sq, Int(0), true) == 0);
    CHECK(count_points(sq, Int(3), false) == 16);
    CHECK(count_points(sq, Int(3), true) == 4);
}

TEST_CASE("count_points on the (0,0),(2,0),(0,2) triangle") {
    auto tri = Polytope::convex_hull(pts({{0, 0}, {2, 0}, {0, 2}}));
    CHECK(count_points(tri, Int(1), false) == 6);
    CHECK(count_points(tri, Int(1), true) == 0);
    CHECK(count_points(tri, Int(2), false) == 15);
}

TEST_CASE("ehrhart of unit cubes: (k+1)^N") {
    for (int n = 1; n <= 3; ++n) {
        auto e = ehrhart_polynomial(unit_cube(n));
        for (long k = 0; k <= n; ++k)
            CHECK(e.eval(Int(k)) == Rat(pow_int(Int(k + 1), n)));
        // Binomial coefficients of (k+1)^N.
        for (int j = 0; j <= n; ++j)
            CHECK(e.coeffs[j] == Rat(binomial(Int(n), j)));
    }
}

TEST_CASE("ehrhart of the standard 2-simplex: (k+1)(k+2)/2") {
    auto simplex = Polytope::convex_hull(pts({{0, 0}, {1, 0}, {0, 1}}));
    auto e = ehrhart_polynomial(simplex);
    REQUIRE(e.coeffs.size() == 3);
    CHECK(e.coeffs[0] == 1);
    CHECK(e.coeffs[1] == make_rat(3, 2));
    CHECK(e.coeffs[2] == make_rat(1, 2));
}

TEST_CASE("ehrhart matches extra dilations beyond the fit") {
    auto p = Polytope::convex_hull(pts({{0, 0, 0}, {2, 0, 0}, {0, 3, 0}, {0, 0, 1}, {2, 3, 1}}));
    auto e = ehrhart_polynomial(p);
    for (long k = p.ambient_dim() + 1; k <= p.ambient_dim() + 3; ++k)
        CHECK(e.eval(Int(k)) == Rat(count_points(p, Int(k), false)));
}

TEST_CASE("Pick's identity on random lattice polygons") {
    std::mt19937_64 rng(31415);
    std::uniform_int_distribution<long> c(0, 5);
    int tested = 0;
    while (tested < 25) {
        std::vector<VecQ> p;
        for (int i = 0; i < 5; ++i) p.push_back(VecQ{Rat(c(rng)), Rat(c(rng))});
        auto poly = Polytope::convex_hull(p);
        if (poly.dim() != 2) continue;
        ++tested;
        auto e = ehrhart_polynomial(poly);
        CHECK(e.coeffs[2] == poly.normalized_volume());
        CHECK(e.coeffs[1] == facet_lattice_volume(poly) / 2);
        CHECK(e.coeffs[0] == 1);
        // Interior form: k^2 Vol2 - (k/2) Vol1 + 1.
        for (long k = 1; k <= 3; ++k) {
            Rat interior = Rat(count_points(poly, Int(k), true));
            CHECK(interior ==
                  Rat(k * k) * e.coeffs[2] - Rat(k) * e.coeffs[1] + 1);
        }
    }
}

TEST_CASE("reciprocity holds on random lattice polytopes up to dim 4") {
    std::mt19937_64 rng(2718);
    std::uniform_int_distribution<long> c(0, 4);
    int tested = 0;
    while (tested < 12) {
        int n = 3 + static_cast<int>(rng() % 2);
        std::vector<VecQ> p;
        for (int i = 0; i < n + 3; ++i) {
            VecQ v(n);
            for (int j = 0; j < n; ++j) v[j] = Rat(c(rng));
            p.push_back(v);
        }
        auto poly = Polytope::convex_hull(p);
        if (poly.dim() != n) continue;
        ++tested;
        // Reciprocity is asserted inside; surviving construction is the test.
        CHECK_NOTHROW(ehrhart_polynomial(poly));
    }
}

TEST_CASE("pg_leading_terms of homogeneous diagrams") {
    for (long d = 1; d <= 5; ++d) {
        auto g = homogeneous_diagram(3, d);
        auto [lead, second] = pg_leading_terms(g);
        CHECK(lead == make_rat(d * d * d, 6));
        CHECK(second == -make_rat(d * d, 2));
    }
    // Scale compatibility: leading terms of d*Gamma are (d^N, d^{N-1}) times.
    auto g = homogeneous_diagram(3, 2);
    auto [l1, s1] = pg_leading_terms(g);
    auto [l3, s3] = pg_leading_terms(scale(g, Rat(3)));
    CHECK(l3 == l1 * 27);
    CHECK(s3 == s1 * 9);
}

TEST_CASE("pg(k Gamma) minus its two leading terms has degree <= N-2") {
    std::vector<NewtonDiagram> corpus;
    corpus.push_back(homogeneous_diagram(3, 2));
    corpus.push_back(homogeneous_diagram(3, 3));
    corpus.push_back(NewtonDiagram::from_support([] {
        SupportSet s;
        s.ambient_dim = 3;
        s.points = {{Int(2), Int(0), Int(0)},
                    {Int(0), Int(3), Int(0)},
                    {Int(0), Int(0), Int(3)},
                    {Int(1), Int(1), Int(0)}};
        return s;
    }()));
    for (const auto& g : corpus) {
        const int n = g.ambient_dim();
        auto [lead, second] = pg_leading_terms(g);
        std::vector<std::pair<Rat, Rat>> residual;
        for (long k = 1; k <= n + 3; ++k) {
            Rat pg(count_positive_points(scale(g, Rat(k))));
            Rat r = pg - lead * Rat(pow_int(Int(k), n)) -
                    second * Rat(pow_int(Int(k), n - 1));
            residual.emplace_back(Rat(k), r);
        }
        VecQ fitted = fit_polynomial(residual);
        CHECK(polynomial_degree(fitted) <= n - 2);
    }
}

TEST_CASE("fit_polynomial recovers exact polynomials") {
    std::vector<std::pair<Rat, Rat>> samples;
    for (long k = 0; k <= 3; ++k)
        samples.emplace_back(Rat(k), Rat(2 * k * k * k - 7 * k + 5));
    VecQ c = fit_polynomial(samples);
    CHECK(c == VecQ{Rat(5), Rat(-7), Rat(0), Rat(2)});
    CHECK(polynomial_degree(c) == 3);
    CHECK(polynomial_degree(VecQ{Rat(0), Rat(0)}) == -1);
}
