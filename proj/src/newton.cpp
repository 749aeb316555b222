#include "nd/newton.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <sstream>

namespace nd {

namespace {

constexpr long kFullValidationCap = 1L << 20;
constexpr long kValidationSamples = 20000;

uint64_t splitmix64(uint64_t& state) {
    uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d4b129862e5a8dULL;
    return z ^ (z >> 31);
}

struct FacetI64 {
    std::vector<long long> normal;
    long long offset;
};

bool to_i64_facets(const std::vector<std::pair<VecI, Int>>& facets,
                   std::vector<FacetI64>& out) {
    out.clear();
    for (const auto& [normal, offset] : facets) {
        FacetI64 f;
        if (!offset.fits_slong_p()) return false;
        f.offset = offset.get_si();
        for (const auto& a : normal) {
            if (!a.fits_slong_p()) return false;
            f.normal.push_back(a.get_si());
        }
        out.push_back(std::move(f));
    }
    return true;
}

long long dot_i64(const std::vector<long long>& a, const std::vector<long long>& x) {
    __int128 acc = 0;
    for (size_t i = 0; i < a.size(); ++i) acc += static_cast<__int128>(a[i]) * x[i];
    if (acc > static_cast<__int128>(1) << 62 || acc < -(static_cast<__int128>(1) << 62))
        throw CheckError("dot_i64: overflow");
    return static_cast<long long>(acc);
}

bool lex_less(const VecQ& a, const VecQ& b) {
    for (size_t i = 0; i < a.size(); ++i) {
        if (a[i] < b[i]) return true;
        if (a[i] > b[i]) return false;
    }
    return false;
}

}  // namespace

Rat NewtonDiagram::max_intercept() const {
    if (!convenient_) throw PreconditionError("max_intercept: diagram is not convenient");
    Rat m(0);
    for (const auto& d : intercepts_)
        if (*d > m) m = *d;
    return m;
}

bool NewtonDiagram::homogeneous() const {
    if (vertices_.empty()) return false;
    Rat s0(0);
    for (const auto& c : vertices_[0]) s0 += c;
    for (const auto& v : vertices_) {
        Rat s(0);
        for (const auto& c : v) s += c;
        if (s != s0) return false;
    }
    return true;
}

Polytope NewtonDiagram::face_polytope(const CompactFacet& f) const {
    std::vector<VecQ> pts;
    for (int id : f.vertex_ids) pts.push_back(vertices_[id]);
    return Polytope::convex_hull(std::move(pts));
}

std::string NewtonDiagram::canonical_key() const {
    std::ostringstream os;
    os << ambient_dim_ << "|";
    if (!support_.empty()) {
        for (const auto& s : support_) {
            for (const auto& c : s) os << c.get_str() << ",";
            os << ";";
        }
    } else {
        for (const auto& v : vertices_) {
            for (const auto& c : v) os << c.get_num().get_str() << "/"
                                       << c.get_den().get_str() << ",";
            os << ";";
        }
    }
    return os.str();
}

NewtonDiagram NewtonDiagram::from_support(const SupportSet& s, const Int& budget) {
    const int n = s.ambient_dim;
    if (n < 1 || n > 7)
        throw InputError("from_support: ambient dimension must be between 1 and 7");
    if (s.points.empty()) throw InputError("from_support: empty support");
    for (const auto& p : s.points) {
        if (static_cast<int>(p.size()) != n)
            throw InputError("from_support: exponent vector of wrong length");
        for (const auto& c : p)
            if (c < 0) throw InputError("from_support: negative exponent");
    }

    std::vector<VecI> support = s.points;
    std::sort(support.begin(), support.end());
    support.erase(std::unique(support.begin(), support.end()), support.end());

    // Dominated points s >= s' never contribute vertices of Gamma^+.
    std::vector<VecI> minimal;
    for (size_t i = 0; i < support.size(); ++i) {
        bool dominated = false;
        for (size_t j = 0; j < support.size() && !dominated; ++j) {
            if (i == j) continue;
            bool le = true, lt = false;
            for (int k = 0; k < n; ++k) {
                if (support[j][k] > support[i][k]) le = false;
                if (support[j][k] < support[i][k]) lt = true;
            }
            dominated = le && lt;
        }
        if (!dominated) minimal.push_back(support[i]);
    }

    Int max_coord(0);
    for (const auto& p : minimal)
        for (const auto& c : p)
            if (c > max_coord) max_coord = c;
    Int ray = Int(n) * max_coord + 1;  // K = N*M + 1 closes the orthant over the box

    std::vector<VecQ> aug;
    for (const auto& p : minimal) aug.push_back(to_rational(p));
    for (const auto& p : minimal)
        for (int i = 0; i < n; ++i) {
            VecQ q = to_rational(p);
            q[i] += Rat(ray);
            aug.push_back(std::move(q));
        }
    Polytope hull = Polytope::convex_hull(std::move(aug));
    if (hull.dim() != n) throw CheckError("from_support: augmented hull not full-dimensional");

    NewtonDiagram g;
    g.ambient_dim_ = n;
    g.support_ = support;

    std::set<VecI> support_set(minimal.begin(), minimal.end());
    for (const auto& v : hull.vertices()) {
        if (!all_integral(v)) continue;
        if (support_set.count(to_integral(v))) g.vertices_.push_back(v);
    }

    std::map<VecQ, int> vertex_index;
    for (size_t i = 0; i < g.vertices_.size(); ++i)
        vertex_index[g.vertices_[i]] = static_cast<int>(i);

    for (size_t fi = 0; fi < hull.facets().size(); ++fi) {
        const auto& f = hull.facets()[fi];
        bool all_negative = true;
        for (const auto& u : f.normal)
            if (u >= 0) all_negative = false;
        if (!all_negative) continue;
        CompactFacet cf;
        cf.normal.reserve(n);
        for (const auto& u : f.normal) cf.normal.push_back(-u);
        cf.offset = -f.offset;
        for (int vid : hull.facet_vertex_ids()[fi]) {
            auto it = vertex_index.find(hull.vertices()[vid]);
            if (it == vertex_index.end())
                throw CheckError("from_support: compact facet touches an augmented point");
            cf.vertex_ids.push_back(it->second);
        }
        std::sort(cf.vertex_ids.begin(), cf.vertex_ids.end());
        // The hull boundary triangulation restricted to this facet plane.
        for (const auto& t : hull.boundary_simplices()) {
            if (t.normal != f.normal || t.offset != f.offset) continue;
            cf.simplices.push_back(t.corners);
        }
        if (cf.simplices.empty())
            throw CheckError("from_support: compact facet lost its triangulation");
        g.facets_.push_back(std::move(cf));
    }

    g.intercepts_.assign(n, std::nullopt);
    for (const auto& p : minimal) {
        int axis = -1;
        bool pure = true;
        for (int i = 0; i < n; ++i) {
            if (p[i] == 0) continue;
            if (axis >= 0) pure = false;
            axis = i;
        }
        if (!pure || axis < 0) continue;
        Rat d(p[axis]);
        if (!g.intercepts_[axis] || d < *g.intercepts_[axis]) g.intercepts_[axis] = d;
    }
    g.convenient_ = true;
    for (const auto& d : g.intercepts_)
        if (!d) g.convenient_ = false;
    g.integral_ = true;

    // Construction-time validation: the compact-facet membership test must
    // agree with the augmented hull over the lattice bounding box (full box
    // up to a cap, deterministic sampling beyond it).
    if (g.convenient_ && !g.facets_.empty()) {
        Int m_int = to_int(g.max_intercept());
        std::vector<std::pair<VecI, Int>> compact_pairs, hull_pairs;
        for (const auto& f : g.facets_) compact_pairs.emplace_back(f.normal, to_int(f.offset));
        for (const auto& f : hull.facets()) hull_pairs.emplace_back(f.normal, to_int(f.offset));
        std::vector<FacetI64> compact64, hull64;
        if (!to_i64_facets(compact_pairs, compact64) || !to_i64_facets(hull_pairs, hull64) ||
            !m_int.fits_slong_p())
            throw CheckError("from_support: validation values exceed fast-path range");
        const long long m = m_int.get_si();

        auto fast_in_gamma_minus = [&](const std::vector<long long>& x) {
            for (const auto& f : compact64)
                if (dot_i64(f.normal, x) <= f.offset) return true;
            return false;
        };
        auto oracle_in_gamma_minus = [&](const std::vector<long long>& x) {
            bool in_plus = true;
            for (const auto& f : hull64)
                if (dot_i64(f.normal, x) > f.offset) {
                    in_plus = false;
                    break;
                }
            if (!in_plus) return true;  // in the orthant but outside Gamma^+
            for (const auto& f : hull64) {
                bool neg = true;
                for (long long u : f.normal)
                    if (u >= 0) neg = false;
                if (neg && dot_i64(f.normal, x) == f.offset) return true;  // on Gamma
            }
            return false;
        };
        auto check_point = [&](const std::vector<long long>& x) {
            if (fast_in_gamma_minus(x) != oracle_in_gamma_minus(x)) {
                std::ostringstream os;
                os << "from_support: membership validation failed at (";
                for (size_t i = 0; i < x.size(); ++i) os << (i ? "," : "") << x[i];
                os << ")";
                throw CheckError(os.str());
            }
        };

        double cells_log = static_cast<double>(n) * std::log2(static_cast<double>(m) + 1.0);
        if (cells_log <= std::log2(static_cast<double>(kFullValidationCap))) {
            std::vector<long long> x(n, 0);
            while (true) {
                check_point(x);
                int pos = n;
                bool done = true;
                while (pos > 0) {
                    --pos;
                    if (x[pos] < m) {
                        ++x[pos];
                        for (int k = pos + 1; k < n; ++k) x[k] = 0;
                        done = false;
                        break;
                    }
                }
                if (done) break;
            }
        } else {
            uint64_t state = fnv1a(g.canonical_key());
            std::vector<long long> x(n);
            long samples = kValidationSamples;
            if (Int(samples) > budget && budget.fits_slong_p()) samples = budget.get_si();
            for (long t = 0; t < samples; ++t) {
                for (int i = 0; i < n; ++i)
                    x[i] = static_cast<long long>(splitmix64(state) % (m + 1));
                check_point(x);
            }
        }
    }
    return g;
}

void DiagramTuple::validate() const {
    if (r < 1) throw InputError("tuple: need r >= 1");
    if (n < 1) throw InputError("tuple: need n >= 1");
    if (static_cast<long>(diagrams.size()) != r)
        throw InputError("tuple: expected r = " + std::to_string(r) + " diagrams, got " +
                         std::to_string(diagrams.size()));
    for (const auto& g : diagrams)
        if (g.ambient_dim() != n + r)
            throw InputError("tuple: diagram ambient dimension " +
                             std::to_string(g.ambient_dim()) + " != n + r = " +
                             std::to_string(n + r));
}

bool is_convenient(const NewtonDiagram& g) { return g.convenient(); }

NewtonDiagram scale(const NewtonDiagram& g, const Rat& d) {
    if (d <= 0) throw PreconditionError("scale: factor must be positive");
    if (d == 1) return g;
    bool integral = true;
    std::vector<VecQ> scaled;
    for (const auto& v : g.vertices()) {
        VecQ w(v.size());
        for (size_t j = 0; j < v.size(); ++j) {
            w[j] = v[j] * d;
            if (!is_integer(w[j])) integral = false;
        }
        scaled.push_back(std::move(w));
    }
    if (integral && g.integral()) {
        SupportSet s;
        s.ambient_dim = g.ambient_dim();
        for (const auto& w : scaled) s.points.push_back(to_integral(w));
        return NewtonDiagram::from_support(s);
    }
    // Symbolic rational scaling: same facet structure, scaled data; volume
    // operations only.
    NewtonDiagram out;
    out.ambient_dim_ = g.ambient_dim();
    out.convenient_ = g.convenient();
    out.integral_ = integral;
    out.vertices_ = scaled;
    std::sort(out.vertices_.begin(), out.vertices_.end(), lex_less);
    std::map<VecQ, int> index;
    for (size_t i = 0; i < out.vertices_.size(); ++i)
        index[out.vertices_[i]] = static_cast<int>(i);
    for (const auto& f : g.compact_facets()) {
        CompactFacet cf;
        cf.normal = f.normal;
        cf.offset = f.offset * d;
        for (int id : f.vertex_ids) {
            VecQ w = g.vertices()[id];
            for (auto& c : w) c *= d;
            cf.vertex_ids.push_back(index.at(w));
        }
        std::sort(cf.vertex_ids.begin(), cf.vertex_ids.end());
        for (const auto& s : f.simplices) {
            std::vector<VecQ> scaled_simplex;
            for (const auto& corner : s) {
                VecQ w = corner;
                for (auto& c : w) c *= d;
                scaled_simplex.push_back(std::move(w));
            }
            cf.simplices.push_back(std::move(scaled_simplex));
        }
        out.facets_.push_back(std::move(cf));
    }
    for (const auto& icpt : g.axis_intercepts())
        out.intercepts_.push_back(icpt ? std::optional<Rat>(*icpt * d) : std::nullopt);
    return out;
}

NewtonDiagram restrict_to(const NewtonDiagram& g, const std::vector<int>& axes) {
    if (!g.convenient())
        throw PreconditionError("restrict_to: diagram is not convenient");
    if (!g.integral())
        throw PreconditionError("restrict_to: scaled rational diagram cannot be restricted");
    if (axes.empty()) throw PreconditionError("restrict_to: empty index set");
    for (size_t i = 0; i < axes.size(); ++i) {
        if (axes[i] < 0 || axes[i] >= g.ambient_dim())
            throw PreconditionError("restrict_to: axis out of range");
        if (i > 0 && axes[i] <= axes[i - 1])
            throw PreconditionError("restrict_to: axes must be strictly increasing");
    }
    // Gamma^+ cap L_I is a face of Gamma^+, so its vertices are exactly the
    // vertices of Gamma^+ lying in the subspace.
    SupportSet s;
    s.ambient_dim = static_cast<int>(axes.size());
    std::set<int> keep(axes.begin(), axes.end());
    for (const auto& v : g.vertices()) {
        bool in_subspace = true;
        for (int j = 0; j < g.ambient_dim(); ++j)
            if (!keep.count(j) && v[j] != 0) in_subspace = false;
        if (!in_subspace) continue;
        VecI w;
        for (int a : axes) w.push_back(to_int(v[a]));
        s.points.push_back(std::move(w));
    }
    if (s.points.empty())
        throw CheckError("restrict_to: convenient diagram lost its restriction");
    return NewtonDiagram::from_support(s);
}

bool gamma_minus_contains(const NewtonDiagram& g, const VecQ& x) {
    if (static_cast<int>(x.size()) != g.ambient_dim())
        throw InputError("gamma_minus_contains: dimension mismatch");
    if (!g.convenient())
        throw PreconditionError("gamma_minus_contains: diagram is not convenient");
    for (const auto& c : x)
        if (c < 0)
            throw PreconditionError("gamma_minus_contains: point has negative coordinates");
    for (const auto& f : g.compact_facets())
        if (dot(f.normal, x) <= f.offset) return true;
    return false;
}

Rat vol_under(const NewtonDiagram& g) {
    if (!g.convenient()) throw PreconditionError("vol_under: diagram is not convenient");
    const int n = g.ambient_dim();
    // Gamma^- is star-shaped from the origin; cone every top-face simplex to 0.
    Rat total(0);
    for (const auto& f : g.compact_facets()) {
        for (const auto& simplex : f.simplices) {
            MatQ m;
            for (const auto& c : simplex) m.push_back(c);
            total += abs(det_rat(m));
        }
    }
    return total / Rat(factorial(static_cast<unsigned long>(n)));
}

Rat vol_j_sum(const NewtonDiagram& g, int j) {
    const int n = g.ambient_dim();
    if (j < 0 || j > n) throw PreconditionError("vol_j_sum: j out of range");
    if (!g.convenient()) throw PreconditionError("vol_j_sum: diagram is not convenient");
    if (j == 0) return Rat(1);
    if (j == n) return vol_under(g);
    Rat total(0);
    std::vector<int> axes(j);
    auto rec = [&](auto&& self, int pos, int next) -> void {
        if (pos == j) {
            total += vol_under(restrict_to(g, axes));
            return;
        }
        for (int a = next; a <= n - (j - pos); ++a) {
            axes[pos] = a;
            self(self, pos + 1, a + 1);
        }
    };
    rec(rec, 0, 0);
    return total;
}

Rat facet_total_volume(const NewtonDiagram& g) {
    if (!g.convenient())
        throw PreconditionError("facet_total_volume: diagram is not convenient");
    Rat total(0);
    for (const auto& f : g.compact_facets()) {
        if (g.ambient_dim() == 1)
            total += 1;  // the diagram is a point, Vol_0 = 1
        else
            total += relative_lattice_volume_of_simplices(f.simplices);
    }
    return total;
}

Int multiplicity(const NewtonDiagram& g) {
    if (!g.integral()) throw PreconditionError("multiplicity: needs integral vertices");
    if (g.vertices().empty()) throw PreconditionError("multiplicity: empty diagram");
    Int best(-1);
    for (const auto& v : g.vertices()) {
        Int s(0);
        for (const auto& c : v) s += to_int(c);
        if (best < 0 || s < best) best = s;
    }
    return best;
}

Polytope tangent_cone_face(const NewtonDiagram& g) {
    if (!g.convenient())
        throw PreconditionError("tangent_cone_face: diagram is not convenient");
    Int p = multiplicity(g);
    std::vector<VecQ> pts;
    for (const auto& v : g.vertices()) {
        Rat s(0);
        for (const auto& c : v) s += c;
        if (s == Rat(p)) pts.push_back(v);
    }
    return Polytope::convex_hull(std::move(pts));
}

Int count_positive_points(const NewtonDiagram& g, const Int& budget) {
    if (!g.convenient())
        throw PreconditionError("count_positive_points: diagram is not convenient");
    if (!g.integral())
        throw PreconditionError("count_positive_points: needs integral vertices");
    const int n = g.ambient_dim();
    Int m_int = to_int(g.max_intercept());
    if (!m_int.fits_slong_p())
        throw BudgetError("count_positive_points: intercept too large");
    const long long m = m_int.get_si();
    if (m < 1) return Int(0);

    // Gamma^- is down-closed, so along the last coordinate its points form an
    // interval [1, t]; walk the (N-1)-dimensional prefix box and accumulate
    // interval lengths. The budget counts visited prefix cells.
    Int prefix_cells = pow_int(Int(static_cast<long>(m)), static_cast<unsigned long>(n - 1));
    if (prefix_cells > budget)
        throw BudgetError("count_positive_points: " + prefix_cells.get_str() +
                          " prefix cells exceed budget " + budget.get_str());

    std::vector<std::pair<VecI, Int>> pairs;
    for (const auto& f : g.compact_facets()) pairs.emplace_back(f.normal, to_int(f.offset));
    std::vector<FacetI64> facets;
    if (!to_i64_facets(pairs, facets))
        throw BudgetError("count_positive_points: facet data exceeds fast-path range");

    Int count(0);
    std::vector<long long> x(static_cast<size_t>(n), 1);
    while (true) {
        long long best = 0;
        for (const auto& f : facets) {
            __int128 rest = f.offset;
            for (int i = 0; i + 1 < n; ++i)
                rest -= static_cast<__int128>(f.normal[i]) * x[i];
            long long an = f.normal[n - 1];
            if (rest < an) continue;  // even x_N = 1 overshoots this facet
            long long t = static_cast<long long>(rest / an);
            if (t > best) best = t;
        }
        if (best > m) best = m;
        count += Int(static_cast<long>(best));

        int pos = n - 1;
        bool done = true;
        while (pos > 0) {
            --pos;
            if (x[pos] < m) {
                ++x[pos];
                for (int k = pos + 1; k + 1 < n; ++k) x[k] = 1;
                done = false;
                break;
            }
        }
        if (done) break;
    }
    return count;
}

Int count_positive_points_by_enumeration(const NewtonDiagram& g, const Int& budget) {
    if (!g.convenient())
        throw PreconditionError("count_positive_points: diagram is not convenient");
    if (!g.integral())
        throw PreconditionError("count_positive_points: needs integral vertices");
    const int n = g.ambient_dim();
    Int m = to_int(g.max_intercept());
    LatticeBox box{VecI(n, Int(1)), VecI(n, m)};
    auto member = [&](const VecI& z) { return gamma_minus_contains(g, to_rational(z)); };
    return Int(static_cast<long>(enumerate_lattice_points(member, box, budget).size()));
}

namespace {

using nlohmann::json;

json parse_json(const std::string& text) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw InputError(std::string("JSON parse error: ") + e.what());
    }
}

NewtonDiagram diagram_from_json(const json& j, const std::string& where) {
    if (!j.is_object()) throw InputError(where + ": expected an object");
    if (!j.contains("ambient_dim") || !j["ambient_dim"].is_number_integer())
        throw InputError(where + ".ambient_dim: missing or not an integer");
    int n = j["ambient_dim"].get<int>();
    if (!j.contains("support") || !j["support"].is_array())
        throw InputError(where + ".support: missing or not an array");
    SupportSet s;
    s.ambient_dim = n;
    size_t row = 0;
    for (const auto& pt : j["support"]) {
        std::string at = where + ".support[" + std::to_string(row) + "]";
        if (!pt.is_array() || static_cast<int>(pt.size()) != n)
            throw InputError(at + ": expected " + std::to_string(n) + " exponents");
        VecI v;
        size_t col = 0;
        for (const auto& e : pt) {
            if (!e.is_number_integer())
                throw InputError(at + "[" + std::to_string(col) + "]: not an integer");
            long long val = e.get<long long>();
            if (val < 0)
                throw InputError(at + "[" + std::to_string(col) + "]: negative exponent");
            v.push_back(Int(static_cast<long>(val)));
            ++col;
        }
        s.points.push_back(std::move(v));
        ++row;
    }
    return NewtonDiagram::from_support(s);
}

}  // namespace

NewtonDiagram diagram_from_json_text(const std::string& text) {
    return diagram_from_json(parse_json(text), "$");
}

DiagramTuple tuple_from_json_text(const std::string& text) {
    json j = parse_json(text);
    if (!j.is_object()) throw InputError("$: expected an object");
    // A bare diagram is accepted as the r = 1 tuple.
    if (j.contains("support")) {
        NewtonDiagram g = diagram_from_json(j, "$");
        DiagramTuple t;
        t.r = 1;
        t.n = g.ambient_dim() - 1;
        t.diagrams.push_back(std::move(g));
        t.validate();
        return t;
    }
    for (const char* key : {"n", "r"})
        if (!j.contains(key) || !j[key].is_number_integer())
            throw InputError(std::string("$.") + key + ": missing or not an integer");
    if (!j.contains("diagrams") || !j["diagrams"].is_array())
        throw InputError("$.diagrams: missing or not an array");
    DiagramTuple t;
    t.n = j["n"].get<long>();
    t.r = j["r"].get<long>();
    size_t idx = 0;
    for (const auto& d : j["diagrams"]) {
        t.diagrams.push_back(diagram_from_json(d, "$.diagrams[" + std::to_string(idx) + "]"));
        ++idx;
    }
    t.validate();
    return t;
}

std::string diagram_to_json_text(const NewtonDiagram& g) {
    json j;
    j["ambient_dim"] = g.ambient_dim();
    json support = json::array();
    for (const auto& p : g.support()) {
        json row = json::array();
        for (const auto& c : p) row.push_back(c.get_si());
        support.push_back(row);
    }
    j["support"] = support;
    return j.dump();
}

}  // namespace nd
