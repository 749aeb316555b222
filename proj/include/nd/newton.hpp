#pragma once

#include <optional>
#include <string>
#include <vector>

#include "nd/polytope.hpp"

namespace nd {

// Support of a power series: finitely many exponent vectors in Z^N_{>=0}.
struct SupportSet {
    int ambient_dim = 0;
    std::vector<VecI> points;
};

// A compact facet of the Newton polyhedron: <normal, x> >= offset on the
// polyhedron, with a primitive inward normal whose entries are all positive.
// The facet's vertex set is a top-dimensional face of the diagram; the
// simplices (inherited from the hull's boundary triangulation, corners are
// support points) triangulate the face and drive the exact volumes.
struct CompactFacet {
    VecI normal;
    Rat offset;
    std::vector<int> vertex_ids;
    std::vector<std::vector<VecQ>> simplices;
};

// Newton polyhedron of a support set together with its diagram data: the
// compact-face complex, axis intercepts and the region under the diagram.
// Values are immutable after construction. Rational-scaled copies keep the
// facet structure with scaled offsets and only support volume questions.
class NewtonDiagram {
   public:
    // Budget guards the construction-time membership validation.
    static NewtonDiagram from_support(const SupportSet& s,
                                      const Int& budget = Int(kDefaultBudget));

    int ambient_dim() const { return ambient_dim_; }
    bool convenient() const { return convenient_; }
    bool integral() const { return integral_; }
    const std::vector<VecQ>& vertices() const { return vertices_; }
    const std::vector<CompactFacet>& compact_facets() const { return facets_; }
    const std::vector<std::optional<Rat>>& axis_intercepts() const { return intercepts_; }
    const std::vector<VecI>& support() const { return support_; }

    Rat max_intercept() const;
    bool homogeneous() const;  // all vertices on one coordinate-sum level

    // The face Conv(vertex_ids) of the diagram as a polytope.
    Polytope face_polytope(const CompactFacet& f) const;

    std::string canonical_key() const;

   private:
    friend NewtonDiagram scale(const NewtonDiagram&, const Rat&);
    int ambient_dim_ = 0;
    bool convenient_ = false;
    bool integral_ = true;
    std::vector<VecI> support_;  // empty for rational-scaled diagrams
    std::vector<VecQ> vertices_;
    std::vector<CompactFacet> facets_;
    std::vector<std::optional<Rat>> intercepts_;
};

using NewtonPolyhedron = NewtonDiagram;  // one value carries Gamma^+ and Gamma

// Ordered diagrams (Gamma_1,...,Gamma_r) in a common ambient R^{n+r}.
struct DiagramTuple {
    long n = 0;
    long r = 0;
    std::vector<NewtonDiagram> diagrams;

    int ambient_dim() const { return static_cast<int>(n + r); }
    void validate() const;
};

bool is_convenient(const NewtonDiagram& g);

// Scaled diagram d*Gamma. Integral results are rebuilt from scaled vertices
// (and re-validated); non-integral ones stay symbolic, for volume use only.
NewtonDiagram scale(const NewtonDiagram& g, const Rat& d);

// Diagram of Gamma^+ intersected with the coordinate subspace of `axes`
// (0-based, strictly increasing), re-indexed to Z^{|axes|}.
NewtonDiagram restrict_to(const NewtonDiagram& g, const std::vector<int>& axes);

// Membership in Gamma^- = (R^N_{>=0} \ Gamma^+) united with Gamma.
bool gamma_minus_contains(const NewtonDiagram& g, const VecQ& x);

// Vol_N(Gamma^-): exact volume of the region under the diagram.
Rat vol_under(const NewtonDiagram& g);

// Vol_j(Gamma^-): sum over |I| = j coordinate subspaces of the restricted
// under-diagram volumes. Vol_0 = 1.
Rat vol_j_sum(const NewtonDiagram& g, int j);

// Vol_{N-1}(Gamma): total induced-lattice volume of the top faces.
Rat facet_total_volume(const NewtonDiagram& g);

// |Gamma^- cap Z^N_{>0}|, exact. Requires a convenient integral diagram.
Int count_positive_points(const NewtonDiagram& g, const Int& budget = Int(kDefaultBudget));

// Slow reference count via enumerate_lattice_points; test oracle.
Int count_positive_points_by_enumeration(const NewtonDiagram& g,
                                         const Int& budget = Int(kDefaultBudget));

// p = mult(X,0): minimal coordinate sum over the diagram's vertices.
Int multiplicity(const NewtonDiagram& g);

// sigma_p = Gamma cap {sum x_i = p}; possibly lower-dimensional.
Polytope tangent_cone_face(const NewtonDiagram& g);

// JSON interfaces:
//   {"ambient_dim": N, "support": [[i1,...,iN], ...]}
//   {"n": n, "r": r, "diagrams": [<diagram>, ...]}
NewtonDiagram diagram_from_json_text(const std::string& text);
DiagramTuple tuple_from_json_text(const std::string& text);
std::string diagram_to_json_text(const NewtonDiagram& g);

}  // namespace nd
