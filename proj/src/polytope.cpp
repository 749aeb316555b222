#include "nd/polytope.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace nd {

VecQ to_rational(const VecI& v) {
    VecQ q(v.size());
    for (size_t i = 0; i < v.size(); ++i) q[i] = Rat(v[i]);
    return q;
}

VecI to_integral(const VecQ& v) {
    VecI w(v.size());
    for (size_t i = 0; i < v.size(); ++i) w[i] = to_int(v[i]);
    return w;
}

bool all_integral(const VecQ& v) {
    for (const auto& q : v)
        if (!is_integer(q)) return false;
    return true;
}

int affine_rank(const std::vector<VecQ>& points) {
    if (points.empty()) return -1;
    MatQ diffs;
    for (size_t i = 1; i < points.size(); ++i) {
        VecQ d(points[i].size());
        for (size_t j = 0; j < d.size(); ++j) d[j] = points[i][j] - points[0][j];
        diffs.push_back(std::move(d));
    }
    if (diffs.empty()) return 0;
    return rank_rat(std::move(diffs));
}

namespace {

bool lex_less(const VecQ& a, const VecQ& b) {
    for (size_t i = 0; i < a.size(); ++i) {
        if (a[i] < b[i]) return true;
        if (a[i] > b[i]) return false;
    }
    return false;
}

bool lex_less_int(const VecI& a, const VecI& b) {
    for (size_t i = 0; i < a.size(); ++i) {
        int c = cmp(a[i], b[i]);
        if (c != 0) return c < 0;
    }
    return false;
}

int affine_rank_int(const std::vector<VecI>& points) {
    if (points.empty()) return -1;
    MatQ diffs;
    for (size_t i = 1; i < points.size(); ++i) {
        VecQ d(points[i].size());
        for (size_t j = 0; j < d.size(); ++j) d[j] = Rat(points[i][j] - points[0][j]);
        diffs.push_back(std::move(d));
    }
    if (diffs.empty()) return 0;
    return rank_rat(std::move(diffs));
}

// Primitive integer normal orthogonal to span{pts[i] - pts[0]} (cofactors).
VecI facet_normal_int(const std::vector<VecI>& pts) {
    const size_t d = pts.size();
    MatI rows;
    for (size_t i = 1; i < d; ++i) {
        VecI r(d);
        for (size_t j = 0; j < d; ++j) r[j] = pts[i][j] - pts[0][j];
        rows.push_back(std::move(r));
    }
    VecI normal(d);
    for (size_t j = 0; j < d; ++j) {
        MatI minor;
        for (const auto& r : rows) {
            VecI mr;
            mr.reserve(d - 1);
            for (size_t c = 0; c < d; ++c)
                if (c != j) mr.push_back(r[c]);
            minor.push_back(std::move(mr));
        }
        Int dj = det_int(std::move(minor));
        normal[j] = (j % 2 == 0) ? dj : Int(-dj);
    }
    return primitivize(std::move(normal));
}

struct IntHull {
    std::vector<VecI> verts;
    std::vector<std::pair<VecI, Int>> facets;  // outward normal, offset
    std::vector<std::vector<int>> facet_vertex_ids;
    struct Tri {
        std::vector<int> point_ids;  // into the input point list
        VecI normal;
        Int offset;
    };
    std::vector<Tri> tri;
};

constexpr long long kI64Cap = 1LL << 60;

bool fits_i64(const Int& x) { return x.fits_slong_p() && llabs(x.get_si()) < kI64Cap; }

// Incremental (beneath-beyond) convex hull of a full-dimensional integer
// point set in R^d. Working facets are simplicial; coplanar ones are merged
// at the end. Exact throughout; visibility tests use an int64/int128 fast
// path when the values fit.
IntHull full_dim_hull_int(const std::vector<VecI>& points, int d) {
    struct WorkFacet {
        std::vector<int> vids;  // sorted, size d
        VecI normal;            // outward
        Int offset;
        bool alive = true;
        bool fast = false;
        std::vector<long long> n64;
        long long o64 = 0;
    };

    std::vector<std::vector<long long>> p64(points.size());
    std::vector<bool> p_fast(points.size(), true);
    for (size_t i = 0; i < points.size(); ++i) {
        p64[i].resize(d);
        for (int j = 0; j < d; ++j) {
            if (!points[i][j].fits_slong_p() || llabs(points[i][j].get_si()) >= (1LL << 31)) {
                p_fast[i] = false;
                break;
            }
            p64[i][j] = points[i][j].get_si();
        }
    }

    // Greedy affinely independent seed of d+1 points.
    std::vector<int> seed{0};
    std::vector<VecI> seed_pts{points[0]};
    for (size_t i = 1; i < points.size() && static_cast<int>(seed.size()) < d + 1; ++i) {
        seed_pts.push_back(points[i]);
        if (affine_rank_int(seed_pts) == static_cast<int>(seed.size()))
            seed.push_back(static_cast<int>(i));
        else
            seed_pts.pop_back();
    }
    if (static_cast<int>(seed.size()) != d + 1)
        throw CheckError("full_dim_hull: seed simplex not found");

    // (d+1) * centroid of the seed simplex, kept integral for orientation tests.
    VecI ref(d, Int(0));
    for (int id : seed)
        for (int j = 0; j < d; ++j) ref[j] += points[id][j];

    std::vector<WorkFacet> facets;
    auto make_facet = [&](std::vector<int> vids) {
        std::sort(vids.begin(), vids.end());
        std::vector<VecI> pts;
        pts.reserve(vids.size());
        for (int id : vids) pts.push_back(points[id]);
        VecI normal = facet_normal_int(pts);
        Int offset = dot(normal, pts[0]);
        Int at_ref = dot(normal, ref);
        Int scaled = offset * Int(d + 1);
        if (at_ref == scaled) throw CheckError("full_dim_hull: degenerate facet");
        if (at_ref > scaled) {
            for (auto& x : normal) x = -x;
            offset = -offset;
        }
        WorkFacet f;
        f.vids = std::move(vids);
        f.normal = std::move(normal);
        f.offset = std::move(offset);
        f.fast = fits_i64(f.offset);
        if (f.fast) {
            f.o64 = f.offset.get_si();
            f.n64.resize(d);
            for (int j = 0; j < d; ++j) {
                if (!fits_i64(f.normal[j])) {
                    f.fast = false;
                    break;
                }
                f.n64[j] = f.normal[j].get_si();
            }
        }
        facets.push_back(std::move(f));
    };

    for (int skip = 0; skip <= d; ++skip) {
        std::vector<int> vids;
        for (int k = 0; k <= d; ++k)
            if (k != skip) vids.push_back(seed[k]);
        make_facet(std::move(vids));
    }

    auto beyond = [&](const WorkFacet& f, size_t p) {
        if (f.fast && p_fast[p]) {
            __int128 acc = 0;
            for (int j = 0; j < d; ++j)
                acc += static_cast<__int128>(f.n64[j]) * p64[p][j];
            return acc > static_cast<__int128>(f.o64);
        }
        return dot(f.normal, points[p]) > f.offset;
    };

    std::set<int> seed_set(seed.begin(), seed.end());
    for (size_t p = 0; p < points.size(); ++p) {
        if (seed_set.count(static_cast<int>(p))) continue;
        std::vector<int> visible;
        for (size_t f = 0; f < facets.size(); ++f)
            if (facets[f].alive && beyond(facets[f], p)) visible.push_back(static_cast<int>(f));
        if (visible.empty()) continue;

        // Horizon ridges appear exactly once among the visible facets.
        std::map<std::vector<int>, int> ridge_count;
        for (int f : visible) {
            const auto& vids = facets[f].vids;
            for (size_t drop = 0; drop < vids.size(); ++drop) {
                std::vector<int> ridge;
                ridge.reserve(vids.size() - 1);
                for (size_t k = 0; k < vids.size(); ++k)
                    if (k != drop) ridge.push_back(vids[k]);
                ridge_count[ridge]++;
            }
        }
        for (int f : visible) facets[f].alive = false;
        for (const auto& [ridge, count] : ridge_count) {
            if (count != 1) continue;
            std::vector<int> vids = ridge;
            vids.push_back(static_cast<int>(p));
            make_facet(std::move(vids));
        }
        // Compact the dead facets once they dominate the list.
        size_t alive = 0;
        for (const auto& f : facets) alive += f.alive;
        if (facets.size() > 64 && alive * 3 < facets.size()) {
            std::vector<WorkFacet> keep;
            keep.reserve(alive);
            for (auto& f : facets)
                if (f.alive) keep.push_back(std::move(f));
            facets = std::move(keep);
        }
    }

    // Merge coplanar simplicial facets into proper facets.
    std::map<std::pair<VecI, Int>, std::vector<int>> merged;
    for (size_t f = 0; f < facets.size(); ++f) {
        if (!facets[f].alive) continue;
        merged[{facets[f].normal, facets[f].offset}].push_back(static_cast<int>(f));
    }

    std::set<int> candidate_ids;
    for (const auto& f : facets)
        if (f.alive)
            for (int id : f.vids) candidate_ids.insert(id);

    // A point is a vertex iff its active facet normals span R^d.
    std::vector<int> vertex_ids;
    for (int id : candidate_ids) {
        MatQ active;
        for (const auto& [plane, group] : merged)
            if (dot(plane.first, points[id]) == plane.second)
                active.push_back(to_rational(plane.first));
        if (static_cast<int>(active.size()) >= d && rank_rat(std::move(active)) == d)
            vertex_ids.push_back(id);
    }

    IntHull out;
    for (int id : vertex_ids) out.verts.push_back(points[id]);
    std::sort(out.verts.begin(), out.verts.end(), lex_less_int);

    for (const auto& [plane, group] : merged) {
        std::vector<int> on_facet;
        for (size_t i = 0; i < out.verts.size(); ++i)
            if (dot(plane.first, out.verts[i]) == plane.second)
                on_facet.push_back(static_cast<int>(i));
        out.facets.push_back(plane);
        out.facet_vertex_ids.push_back(std::move(on_facet));
    }

    for (const auto& f : facets) {
        if (!f.alive) continue;
        out.tri.push_back(IntHull::Tri{f.vids, f.normal, f.offset});
    }
    return out;
}

}  // namespace

const std::vector<Halfspace>& Polytope::facets() const {
    if (dim_ != ambient_dim_)
        throw PreconditionError("facets(): polytope is not full-dimensional");
    return facets_;
}

const std::vector<std::vector<int>>& Polytope::facet_vertex_ids() const {
    if (dim_ != ambient_dim_)
        throw PreconditionError("facet_vertex_ids(): polytope is not full-dimensional");
    return facet_vertex_ids_;
}

const std::vector<TriFacet>& Polytope::boundary_simplices() const {
    if (dim_ != ambient_dim_)
        throw PreconditionError("boundary_simplices(): polytope is not full-dimensional");
    return tri_facets_;
}

VecQ Polytope::to_intrinsic(const VecQ& p) const {
    VecQ rhs(dim_);
    for (int i = 0; i < dim_; ++i) rhs[i] = p[coord_cols_[i]] - base_point_[coord_cols_[i]];
    VecQ lambda(dim_, Rat(0));
    for (int i = 0; i < dim_; ++i)
        for (int j = 0; j < dim_; ++j) lambda[i] += coord_inverse_[i][j] * rhs[j];
    return lambda;
}

VecQ Polytope::embed_intrinsic(const VecQ& lambda) const {
    if (dim_ == ambient_dim_ || dim_ == 0)
        throw PreconditionError("embed_intrinsic: no intrinsic chart");
    VecQ v = base_point_;
    for (int i = 0; i < dim_; ++i)
        for (int j = 0; j < ambient_dim_; ++j) v[j] += lambda[i] * basis_rows_[i][j];
    return v;
}

Polytope Polytope::convex_hull(std::vector<VecQ> points) {
    if (points.empty()) throw PreconditionError("convex_hull: empty point list");
    const size_t n = points[0].size();
    if (n > 7) throw PreconditionError("convex_hull: ambient dimension capped at 7");
    for (const auto& p : points)
        if (p.size() != n)
            throw InputError("convex_hull: dimension mismatch in point list");
    std::sort(points.begin(), points.end(), lex_less);
    points.erase(std::unique(points.begin(), points.end()), points.end());

    Polytope poly;
    poly.ambient_dim_ = static_cast<int>(n);
    int d = affine_rank(points);
    poly.dim_ = d;

    if (d == 0) {
        poly.vertices_ = {points[0]};
        for (size_t j = 0; j < n; ++j) {
            VecI e(n, Int(0));
            e[j] = 1;
            poly.affine_eqs_.push_back(Hyperplane{std::move(e), points[0][j]});
        }
        return poly;
    }

    if (d == static_cast<int>(n)) {
        // Scale to integers; the hull combinatorics are dilation-invariant.
        Int scale(1);
        for (const auto& p : points)
            for (const auto& q : p) mpz_lcm(scale.get_mpz_t(), scale.get_mpz_t(), q.get_den_mpz_t());
        std::vector<VecI> ipts(points.size(), VecI(n));
        for (size_t i = 0; i < points.size(); ++i)
            for (size_t j = 0; j < n; ++j) ipts[i][j] = to_int(points[i][j] * Rat(scale));

        IntHull h = full_dim_hull_int(ipts, d);
        Rat inv = make_rat(Int(1), scale);
        for (const auto& v : h.verts) {
            VecQ vq(n);
            for (size_t j = 0; j < n; ++j) vq[j] = Rat(v[j]) * inv;
            poly.vertices_.push_back(std::move(vq));
        }
        std::vector<size_t> order(h.facets.size());
        for (size_t i = 0; i < order.size(); ++i) order[i] = i;
        std::sort(order.begin(), order.end(), [&](size_t a, size_t b) {
            if (h.facets[a].first != h.facets[b].first)
                return lex_less_int(h.facets[a].first, h.facets[b].first);
            return h.facets[a].second < h.facets[b].second;
        });
        for (size_t i : order) {
            poly.facets_.push_back(Halfspace{h.facets[i].first, Rat(h.facets[i].second) * inv});
            poly.facet_vertex_ids_.push_back(h.facet_vertex_ids[i]);
        }
        for (const auto& t : h.tri) {
            TriFacet tf;
            for (int id : t.point_ids) {
                VecQ c(n);
                for (size_t j = 0; j < n; ++j) c[j] = Rat(ipts[id][j]) * inv;
                tf.corners.push_back(std::move(c));
            }
            tf.normal = t.normal;
            tf.offset = Rat(t.offset) * inv;
            poly.tri_facets_.push_back(std::move(tf));
        }
        for (const auto& p : points)
            for (const auto& f : poly.facets_)
                if (dot(f.normal, p) > f.offset)
                    throw CheckError("convex_hull: point escapes computed facets");
        return poly;
    }

    // Lower-dimensional: parametrize the affine hull and recurse.
    poly.base_point_ = points[0];
    MatQ diffs;
    for (size_t i = 1; i < points.size(); ++i) {
        VecQ diff(n);
        for (size_t j = 0; j < n; ++j) diff[j] = points[i][j] - points[0][j];
        diffs.push_back(std::move(diff));
    }
    for (const auto& e : nullspace_rat(diffs)) {
        VecI normal = primitive_integer_direction(e);
        Rat offset = dot(normal, points[0]);
        poly.affine_eqs_.push_back(Hyperplane{std::move(normal), std::move(offset)});
    }

    MatQ basis;
    for (const auto& diff : diffs) {
        basis.push_back(diff);
        if (rank_rat(basis) != static_cast<int>(basis.size())) basis.pop_back();
        if (static_cast<int>(basis.size()) == d) break;
    }
    if (static_cast<int>(basis.size()) != d)
        throw CheckError("convex_hull: basis extraction failed");
    poly.basis_rows_ = basis;

    MatQ cols_so_far;
    for (size_t c = 0; c < n && static_cast<int>(poly.coord_cols_.size()) < d; ++c) {
        VecQ col(d);
        for (int i = 0; i < d; ++i) col[i] = basis[i][c];
        cols_so_far.push_back(col);
        if (rank_rat(cols_so_far) == static_cast<int>(cols_so_far.size()))
            poly.coord_cols_.push_back(static_cast<int>(c));
        else
            cols_so_far.pop_back();
    }
    // rhs = M^T lambda with M[i][j] = basis[i][cols[j]]; store M^{-T} so
    // to_intrinsic is a plain matrix-vector product.
    MatQ block_t(d, VecQ(d));
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) block_t[j][i] = basis[i][poly.coord_cols_[j]];
    MatQ inv(d, VecQ(d, Rat(0)));
    for (int j = 0; j < d; ++j) {
        VecQ e(d, Rat(0));
        e[j] = 1;
        auto x = solve_rat(block_t, e);
        if (!x) throw CheckError("convex_hull: singular coordinate block");
        for (int i = 0; i < d; ++i) inv[i][j] = (*x)[i];
    }
    poly.coord_inverse_ = std::move(inv);

    std::vector<VecQ> mapped;
    for (const auto& p : points) {
        VecQ lam = poly.to_intrinsic(p);
        if (poly.embed_intrinsic(lam) != p)
            throw CheckError("convex_hull: intrinsic chart round trip failed");
        mapped.push_back(std::move(lam));
    }
    auto child = std::make_shared<Polytope>(Polytope::convex_hull(std::move(mapped)));
    if (child->dim() != d) throw CheckError("convex_hull: intrinsic dimension mismatch");

    for (const auto& lam : child->vertices())
        poly.vertices_.push_back(poly.embed_intrinsic(lam));
    std::sort(poly.vertices_.begin(), poly.vertices_.end(), lex_less);
    poly.intrinsic_ = std::move(child);
    return poly;
}

bool Polytope::contains(const VecQ& p) const {
    if (static_cast<int>(p.size()) != ambient_dim_)
        throw InputError("contains: dimension mismatch");
    for (const auto& eq : affine_eqs_)
        if (dot(eq.normal, p) != eq.offset) return false;
    if (dim_ == 0) return true;
    if (dim_ == ambient_dim_) {
        for (const auto& f : facets_)
            if (dot(f.normal, p) > f.offset) return false;
        return true;
    }
    return intrinsic_->contains(to_intrinsic(p));
}

bool Polytope::strictly_contains(const VecQ& p) const {
    if (dim_ != ambient_dim_)
        throw PreconditionError("strictly_contains: polytope is not full-dimensional");
    for (const auto& f : facets_)
        if (dot(f.normal, p) >= f.offset) return false;
    return true;
}

bool Polytope::is_lattice_polytope() const {
    for (const auto& v : vertices_)
        if (!all_integral(v)) return false;
    return true;
}

Rat Polytope::normalized_volume() const {
    if (dim_ != ambient_dim_)
        throw PreconditionError("normalized_volume: polytope is not full-dimensional "
                                "(use relative_lattice_volume)");
    const int d = dim_;
    if (d == 0) return Rat(1);

    auto simplex_det = [&](const TriFacet& t, const VecQ* origin) {
        MatQ m;
        for (const auto& c : t.corners) {
            VecQ row(d);
            for (int j = 0; j < d; ++j) row[j] = origin ? c[j] - (*origin)[j] : c[j];
            m.push_back(std::move(row));
        }
        return det_rat(m);
    };

    // Route A: cone from the first vertex over facets that do not contain it.
    const VecQ& v0 = vertices_[0];
    Rat vol_a(0);
    for (const auto& t : tri_facets_) {
        if (dot(t.normal, v0) == t.offset) continue;
        vol_a += abs(simplex_det(t, &v0));
    }
    // Route B: signed cones from the origin over the whole boundary.
    Rat vol_b(0);
    for (const auto& t : tri_facets_) {
        Rat det = abs(simplex_det(t, nullptr));
        if (t.offset > 0)
            vol_b += det;
        else if (t.offset < 0)
            vol_b -= det;
    }
    Rat fd = Rat(factorial(static_cast<unsigned long>(d)));
    vol_a /= fd;
    vol_b /= fd;
    if (vol_a != vol_b)
        throw CheckError("normalized_volume: triangulation routes disagree (" +
                         vol_a.get_str() + " vs " + vol_b.get_str() + ")");
    return vol_a;
}

std::pair<VecQ, VecQ> Polytope::bounding_box() const {
    VecQ lo = vertices_[0], hi = vertices_[0];
    for (const auto& v : vertices_)
        for (int j = 0; j < ambient_dim_; ++j) {
            if (v[j] < lo[j]) lo[j] = v[j];
            if (v[j] > hi[j]) hi[j] = v[j];
        }
    return {lo, hi};
}

std::vector<std::vector<VecQ>> triangulate(const Polytope& p) {
    const int d = p.dim();
    if (d == 0) return {{p.vertices()[0]}};
    if (d == p.ambient_dim()) {
        std::vector<std::vector<VecQ>> out;
        const VecQ& v0 = p.vertices()[0];
        for (const auto& t : p.boundary_simplices()) {
            if (dot(t.normal, v0) == t.offset) continue;
            std::vector<VecQ> simplex = t.corners;
            simplex.push_back(v0);
            out.push_back(std::move(simplex));
        }
        return out;
    }
    const Polytope* child = p.intrinsic();
    if (!child) throw CheckError("triangulate: missing intrinsic chart");
    std::vector<std::vector<VecQ>> out;
    for (const auto& simplex : triangulate(*child)) {
        std::vector<VecQ> mapped;
        for (const auto& c : simplex) mapped.push_back(p.embed_intrinsic(c));
        out.push_back(std::move(mapped));
    }
    return out;
}

Polytope minkowski_sum(const Polytope& p, const Polytope& q) {
    if (p.ambient_dim() != q.ambient_dim())
        throw InputError("minkowski_sum: ambient dimension mismatch");
    std::vector<VecQ> sums;
    for (const auto& a : p.vertices())
        for (const auto& b : q.vertices()) {
            VecQ s(a.size());
            for (size_t j = 0; j < a.size(); ++j) s[j] = a[j] + b[j];
            sums.push_back(std::move(s));
        }
    return Polytope::convex_hull(std::move(sums));
}

Polytope dilate(const Polytope& p, const Rat& k) {
    if (k <= 0) throw PreconditionError("dilate: factor must be positive");
    std::vector<VecQ> scaled;
    for (const auto& v : p.vertices()) {
        VecQ s(v.size());
        for (size_t j = 0; j < v.size(); ++j) s[j] = v[j] * k;
        scaled.push_back(std::move(s));
    }
    return Polytope::convex_hull(std::move(scaled));
}

Rat relative_lattice_volume(const std::vector<VecQ>& points) {
    return relative_lattice_volume(Polytope::convex_hull(points));
}

Rat relative_lattice_volume_of_simplices(const std::vector<std::vector<VecQ>>& simplices) {
    if (simplices.empty())
        throw PreconditionError("relative_lattice_volume_of_simplices: empty region");
    const size_t n = simplices[0][0].size();
    const int d = static_cast<int>(simplices[0].size()) - 1;
    if (d < 1) throw PreconditionError("relative_lattice_volume_of_simplices: dim >= 1");

    // Affine hull from the first simplex; all corners must satisfy it.
    std::vector<VecQ> span = simplices[0];
    MatQ diffs;
    for (size_t i = 1; i < span.size(); ++i) {
        VecQ diff(n);
        for (size_t j = 0; j < n; ++j) diff[j] = span[i][j] - span[0][j];
        diffs.push_back(std::move(diff));
    }
    MatI c_rows;
    VecI c_rhs;
    for (const auto& e : nullspace_rat(diffs)) {
        VecI normal = primitive_integer_direction(e);
        Rat offset = dot(normal, span[0]);
        if (!is_integer(offset))
            throw PreconditionError(
                "relative_lattice_volume_of_simplices: affine hull misses the lattice");
        c_rhs.push_back(offset.get_num());
        c_rows.push_back(std::move(normal));
    }
    if (static_cast<int>(n) - static_cast<int>(c_rows.size()) != d)
        throw PreconditionError("relative_lattice_volume_of_simplices: degenerate simplex");

    if (c_rows.empty()) {
        // Full-dimensional: plain determinant sum.
        Rat total(0);
        for (const auto& s : simplices) {
            MatQ m;
            for (size_t i = 1; i < s.size(); ++i) {
                VecQ row(n);
                for (size_t j = 0; j < n; ++j) row[j] = s[i][j] - s[0][j];
                m.push_back(std::move(row));
            }
            total += abs(det_rat(m));
        }
        return total / Rat(factorial(static_cast<unsigned long>(d)));
    }

    auto x0 = solve_int(c_rows, c_rhs);
    if (!x0)
        throw PreconditionError(
            "relative_lattice_volume_of_simplices: affine hull contains no lattice points");
    MatI lattice_basis = kernel_basis_int(c_rows);
    if (static_cast<int>(lattice_basis.size()) != d)
        throw CheckError("relative_lattice_volume_of_simplices: lattice rank mismatch");

    MatQ bt(n, VecQ(d));
    for (int i = 0; i < d; ++i)
        for (size_t j = 0; j < n; ++j) bt[j][i] = Rat(lattice_basis[i][j]);
    std::vector<int> rows;
    MatQ sel;
    for (size_t r = 0; r < n && static_cast<int>(rows.size()) < d; ++r) {
        sel.push_back(bt[r]);
        if (rank_rat(sel) == static_cast<int>(sel.size()))
            rows.push_back(static_cast<int>(r));
        else
            sel.pop_back();
    }
    auto map_point = [&](const VecQ& v) {
        VecQ rhs(d);
        for (int i = 0; i < d; ++i) rhs[i] = v[rows[i]] - Rat((*x0)[rows[i]]);
        auto lam = solve_rat(sel, rhs);
        if (!lam)
            throw CheckError("relative_lattice_volume_of_simplices: coordinate solve failed");
        return *lam;
    };
    Rat total(0);
    for (const auto& s : simplices) {
        for (const auto& corner : s)
            for (size_t e = 0; e < c_rows.size(); ++e)
                if (dot(c_rows[e], corner) != Rat(c_rhs[e]))
                    throw PreconditionError(
                        "relative_lattice_volume_of_simplices: simplices span "
                        "different affine hulls");
        VecQ base = map_point(s[0]);
        MatQ m;
        for (size_t i = 1; i < s.size(); ++i) {
            VecQ lam = map_point(s[i]);
            VecQ row(d);
            for (int j = 0; j < d; ++j) row[j] = lam[j] - base[j];
            m.push_back(std::move(row));
        }
        total += abs(det_rat(m));
    }
    return total / Rat(factorial(static_cast<unsigned long>(d)));
}

Rat relative_lattice_volume(const Polytope& f) {
    const int n = f.ambient_dim();
    const int d = f.dim();
    if (d < 1) throw PreconditionError("relative_lattice_volume: dimension must be >= 1");
    if (d == n) return f.normalized_volume();

    // Integer form of the affine hull: C x = c with integral right-hand side,
    // otherwise the hull misses the lattice entirely.
    MatI c_rows;
    VecI c_rhs;
    for (const auto& eq : f.affine_hull_equations()) {
        if (!is_integer(eq.offset))
            throw PreconditionError(
                "relative_lattice_volume: affine hull contains no lattice points");
        c_rows.push_back(eq.normal);
        c_rhs.push_back(eq.offset.get_num());
    }
    auto x0 = solve_int(c_rows, c_rhs);
    if (!x0)
        throw PreconditionError(
            "relative_lattice_volume: affine hull contains no lattice points");
    MatI lattice_basis = kernel_basis_int(c_rows);
    if (static_cast<int>(lattice_basis.size()) != d)
        throw CheckError("relative_lattice_volume: induced lattice rank mismatch");

    // Express vertices in the induced lattice basis: solve B^T lambda = v - x0
    // on d independent rows.
    MatQ bt(n, VecQ(d));
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < n; ++j) bt[j][i] = Rat(lattice_basis[i][j]);
    std::vector<int> rows;
    MatQ sel;
    for (int r = 0; r < n && static_cast<int>(rows.size()) < d; ++r) {
        sel.push_back(bt[r]);
        if (rank_rat(sel) == static_cast<int>(sel.size()))
            rows.push_back(r);
        else
            sel.pop_back();
    }
    std::vector<VecQ> mapped;
    for (const auto& v : f.vertices()) {
        VecQ rhs(d);
        for (int i = 0; i < d; ++i) rhs[i] = v[rows[i]] - Rat((*x0)[rows[i]]);
        auto lam = solve_rat(sel, rhs);
        if (!lam) throw CheckError("relative_lattice_volume: coordinate solve failed");
        mapped.push_back(*lam);
    }
    return Polytope::convex_hull(std::move(mapped)).normalized_volume();
}

bool FaceLattice::euler_ok() const {
    const int dim = static_cast<int>(by_dim.size()) - 1;
    if (dim < 1) return true;
    Int sum(0);
    for (int i = 0; i < dim; ++i) {
        Int c(face_count(i));
        sum += (i % 2 == 0) ? c : Int(-c);
    }
    Int expected = (dim % 2 == 0) ? Int(0) : Int(2);  // 1 - (-1)^dim
    return sum == expected;
}

FaceLattice face_lattice(const Polytope& p) {
    if (p.dim() != p.ambient_dim())
        throw PreconditionError("face_lattice: polytope is not full-dimensional");
    const int dim = p.dim();
    std::set<std::vector<int>> seen;
    std::vector<std::vector<int>> work;
    for (const auto& fv : p.facet_vertex_ids())
        if (seen.insert(fv).second) work.push_back(fv);
    // Faces are closed under intersection; iterate to the fixpoint.
    for (size_t i = 0; i < work.size(); ++i) {
        for (size_t j = 0; j < i; ++j) {
            std::vector<int> inter;
            std::set_intersection(work[i].begin(), work[i].end(), work[j].begin(),
                                  work[j].end(), std::back_inserter(inter));
            if (!inter.empty() && seen.insert(inter).second) work.push_back(inter);
        }
    }
    FaceLattice fl;
    fl.by_dim.assign(dim + 1, {});
    for (const auto& vids : work) {
        std::vector<VecQ> pts;
        for (int id : vids) pts.push_back(p.vertices()[id]);
        int fd = affine_rank(pts);
        fl.by_dim[fd].push_back(Face{fd, vids});
    }
    std::vector<int> all(p.vertices().size());
    for (size_t i = 0; i < all.size(); ++i) all[i] = static_cast<int>(i);
    fl.by_dim[dim].push_back(Face{dim, all});
    for (auto& level : fl.by_dim)
        std::sort(level.begin(), level.end(),
                  [](const Face& a, const Face& b) { return a.vertex_ids < b.vertex_ids; });
    return fl;
}

std::vector<VecI> enumerate_lattice_points(const std::function<bool(const VecI&)>& member,
                                           const LatticeBox& box, const Int& budget) {
    if (box.lo.size() != box.hi.size())
        throw InputError("enumerate_lattice_points: ragged box");
    Int cells = box.cell_count();
    if (cells == 0) return {};
    if (cells > budget)
        throw BudgetError("enumerate_lattice_points: box volume " + cells.get_str() +
                          " exceeds budget " + budget.get_str());
    const size_t n = box.lo.size();
    std::vector<VecI> out;
    VecI cur = box.lo;
    while (true) {
        if (member(cur)) out.push_back(cur);
        size_t pos = n;
        bool done = true;
        while (pos > 0) {
            --pos;
            if (cur[pos] < box.hi[pos]) {
                ++cur[pos];
                for (size_t k = pos + 1; k < n; ++k) cur[k] = box.lo[k];
                done = false;
                break;
            }
        }
        if (done) return out;
    }
}

}  // namespace nd
