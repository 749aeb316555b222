#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <vector>

#include "nd/matrix.hpp"

namespace nd {

// Closed halfspace <normal, x> <= offset with primitive integer normal.
struct Halfspace {
    VecI normal;
    Rat offset;
};

// Affine hyperplane <normal, x> = offset, primitive integer normal.
struct Hyperplane {
    VecI normal;
    Rat offset;
};

// Boundary simplex kept from the incremental hull; drives exact volumes.
// Corners are stored by coordinate because a simplicial corner need not be
// an extreme point of the merged facet it lies on.
struct TriFacet {
    std::vector<VecQ> corners;
    VecI normal;  // outward
    Rat offset;
};

VecQ to_rational(const VecI& v);
VecI to_integral(const VecQ& v);  // throws CheckError on non-integers
bool all_integral(const VecQ& v);

int affine_rank(const std::vector<VecQ>& points);

// Convex polytope over Q^N with exact V- and H-representations.
//
// Full-dimensional polytopes carry merged facets plus the triangulated
// boundary. Lower-dimensional ones carry the affine hull (integer equations
// and a rational parametrization) and an intrinsic full-dimensional child.
class Polytope {
   public:
    static Polytope convex_hull(std::vector<VecQ> points);

    int ambient_dim() const { return ambient_dim_; }
    int dim() const { return dim_; }

    const std::vector<VecQ>& vertices() const { return vertices_; }
    const std::vector<Halfspace>& facets() const;
    const std::vector<std::vector<int>>& facet_vertex_ids() const;
    const std::vector<TriFacet>& boundary_simplices() const;
    const std::vector<Hyperplane>& affine_hull_equations() const { return affine_eqs_; }

    bool contains(const VecQ& p) const;
    // Topological interior; requires a full-dimensional polytope.
    bool strictly_contains(const VecQ& p) const;

    // Intrinsic chart of a lower-dimensional polytope.
    const Polytope* intrinsic() const { return intrinsic_.get(); }
    VecQ embed_intrinsic(const VecQ& lambda) const;

    bool is_lattice_polytope() const;

    // Exact lattice volume, unit cube = 1. Requires dim == ambient_dim.
    // Computed by two independent boundary triangulation sums (cone from a
    // vertex / signed cones from the origin) which must agree.
    Rat normalized_volume() const;

    // Componentwise min/max over vertices.
    std::pair<VecQ, VecQ> bounding_box() const;

   private:
    int ambient_dim_ = 0;
    int dim_ = 0;
    std::vector<VecQ> vertices_;

    // Full-dimensional data.
    std::vector<Halfspace> facets_;
    std::vector<std::vector<int>> facet_vertex_ids_;
    std::vector<TriFacet> tri_facets_;

    // Lower-dimensional data.
    std::vector<Hyperplane> affine_eqs_;
    VecQ base_point_;
    MatQ basis_rows_;              // dim_ x ambient_dim_
    std::vector<int> coord_cols_;  // columns where basis is invertible
    MatQ coord_inverse_;           // dim_ x dim_
    std::shared_ptr<const Polytope> intrinsic_;

    VecQ to_intrinsic(const VecQ& p) const;
};

Polytope minkowski_sum(const Polytope& p, const Polytope& q);
Polytope dilate(const Polytope& p, const Rat& k);

// Simplicial decomposition of a polytope of any intrinsic dimension; each
// simplex is returned as dim+1 corner points in ambient coordinates.
std::vector<std::vector<VecQ>> triangulate(const Polytope& p);

// Lattice volume of a polytope of any intrinsic dimension d >= 1, measured
// against the lattice induced on its affine hull (affine hull cap Z^N).
// Throws PreconditionError if the affine hull has no lattice points.
Rat relative_lattice_volume(const Polytope& f);
Rat relative_lattice_volume(const std::vector<VecQ>& points);

// Same measurement for a region already given as simplices (d+1 corners
// each) spanning a common affine hull; skips the hull construction.
Rat relative_lattice_volume_of_simplices(const std::vector<std::vector<VecQ>>& simplices);

struct Face {
    int dim;
    std::vector<int> vertex_ids;  // sorted
    bool operator==(const Face&) const = default;
};

// Faces of a full-dimensional polytope grouped by dimension 0..dim,
// each dimension sorted lexicographically by vertex list.
struct FaceLattice {
    std::vector<std::vector<Face>> by_dim;

    long face_count(int d) const {
        return (d >= 0 && d < static_cast<int>(by_dim.size()))
                   ? static_cast<long>(by_dim[d].size())
                   : 0;
    }
    // Euler relation for the boundary complex:
    // sum_{i=0}^{dim-1} (-1)^i f_i = 1 - (-1)^dim.
    bool euler_ok() const;
};

FaceLattice face_lattice(const Polytope& p);

struct LatticeBox {
    VecI lo;
    VecI hi;

    Int cell_count() const {
        Int c(1);
        for (size_t i = 0; i < lo.size(); ++i) {
            Int side = hi[i] - lo[i] + 1;
            if (side <= 0) return Int(0);
            c *= side;
        }
        return c;
    }
};

inline constexpr long kDefaultBudget = 100000000L;  // 10^8 cells

// Deterministic lexicographic listing of the box points satisfying the
// predicate. Throws BudgetError when the box volume exceeds the budget.
std::vector<VecI> enumerate_lattice_points(const std::function<bool(const VecI&)>& member,
                                           const LatticeBox& box,
                                           const Int& budget = Int(kDefaultBudget));

}  // namespace nd
