#include "nd/covolume.hpp"

#include <json.hpp>

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <sstream>

namespace nd {

namespace {

uint64_t splitmix64(uint64_t& state) {
    uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d4b129862e5a8dULL;
    return z ^ (z >> 31);
}

Rat eval_monomials(const std::vector<long>& lambda, const std::vector<long>& k) {
    Rat prod(1);
    for (size_t i = 0; i < lambda.size(); ++i)
        prod *= pow_rat(Rat(lambda[i]), static_cast<unsigned long>(k[i]));
    return prod;
}

void check_bodies(const std::vector<NewtonDiagram>& gs) {
    if (gs.empty()) throw PreconditionError("mixed_covolumes: empty diagram list");
    const int n = gs[0].ambient_dim();
    for (const auto& g : gs) {
        if (g.ambient_dim() != n) throw InputError("mixed_covolumes: dimension mismatch");
        if (!g.convenient())
            throw PreconditionError("mixed_covolumes: diagram is not convenient");
        if (!g.integral())
            throw PreconditionError("mixed_covolumes: needs integral diagrams");
    }
}

// Deterministic lex grid {1..range}^r, first `count` points.
std::vector<std::vector<long>> lex_grid(long r, size_t count, long range_hint) {
    long range = range_hint;
    while (pow_rat(Rat(range), static_cast<unsigned long>(r)) < Rat(static_cast<long>(count)))
        ++range;
    std::vector<std::vector<long>> grid;
    std::vector<long> cur(r, 1);
    while (true) {
        grid.push_back(cur);
        if (grid.size() == count) break;
        long pos = r;
        while (pos > 0) {
            --pos;
            if (cur[pos] < range) {
                ++cur[pos];
                for (long q = pos + 1; q < r; ++q) cur[q] = 1;
                break;
            }
            if (pos == 0) throw CheckError("mixed_covolumes: grid exhausted");
        }
    }
    return grid;
}

// Cone decomposition of the weighted-sum diagram at a fixed generic weight,
// with every simplex corner tagged by its summand vertices so the volume
// becomes an explicit polynomial in the weights.
struct SymbolicCones {
    const std::vector<NewtonDiagram>* bodies = nullptr;
    std::vector<std::vector<VecI>> body_vertices;
    std::vector<std::vector<std::vector<int>>> simplex_tags;  // [simplex][corner][body]
    std::vector<int> signs;
    int big_n = 0;

    Rat eval(const std::vector<long>& lambda) const {
        Rat total(0);
        const long r = static_cast<long>(body_vertices.size());
        for (size_t s = 0; s < simplex_tags.size(); ++s) {
            MatI m;
            for (const auto& corner_tag : simplex_tags[s]) {
                VecI corner(big_n, Int(0));
                for (long b = 0; b < r; ++b) {
                    const VecI& w = body_vertices[b][corner_tag[b]];
                    for (int j = 0; j < big_n; ++j) corner[j] += Int(lambda[b]) * w[j];
                }
                m.push_back(std::move(corner));
            }
            total += Rat(signs[s]) * Rat(det_int(std::move(m)));
        }
        return total / Rat(factorial(static_cast<unsigned long>(big_n)));
    }
};

std::optional<SymbolicCones> build_cones(const std::vector<NewtonDiagram>& gs,
                                         const std::vector<long>& star) {
    const int n = gs[0].ambient_dim();
    const long r = static_cast<long>(gs.size());
    SymbolicCones cones;
    cones.bodies = &gs;
    cones.big_n = n;
    for (const auto& g : gs) {
        std::vector<VecI> verts;
        for (const auto& v : g.vertices()) verts.push_back(to_integral(v));
        cones.body_vertices.push_back(std::move(verts));
    }

    // Tag every vertex-sum; a coordinate collision between different tags
    // means the weight vector is not generic enough.
    std::map<VecI, std::vector<int>> tag_of;
    std::vector<int> idx(r, 0);
    while (true) {
        VecI sum(n, Int(0));
        for (long b = 0; b < r; ++b) {
            const VecI& w = cones.body_vertices[b][idx[b]];
            for (int j = 0; j < n; ++j) sum[j] += Int(star[b]) * w[j];
        }
        auto [it, inserted] = tag_of.try_emplace(sum, idx);
        if (!inserted && it->second != idx) return std::nullopt;
        long pos = r;
        bool done = true;
        while (pos > 0) {
            --pos;
            if (idx[pos] + 1 < static_cast<long>(cones.body_vertices[pos].size())) {
                ++idx[pos];
                for (long q = pos + 1; q < r; ++q) idx[q] = 0;
                done = false;
                break;
            }
        }
        if (done) break;
    }

    SupportSet s;
    s.ambient_dim = n;
    for (const auto& [coords, tag] : tag_of) s.points.push_back(coords);
    NewtonDiagram diagram = NewtonDiagram::from_support(s);
    if (!diagram.convenient())
        throw CheckError("mixed_covolumes: weighted sum lost convenience");

    for (const auto& f : diagram.compact_facets()) {
        for (const auto& simplex : f.simplices) {
            std::vector<std::vector<int>> tags;
            MatI m;
            for (const auto& corner : simplex) {
                auto it = tag_of.find(to_integral(corner));
                if (it == tag_of.end())
                    throw CheckError("mixed_covolumes: untagged simplex corner");
                tags.push_back(it->second);
                m.push_back(to_integral(corner));
            }
            Int det = det_int(std::move(m));
            if (det == 0) return std::nullopt;
            cones.signs.push_back(det > 0 ? 1 : -1);
            cones.simplex_tags.push_back(std::move(tags));
        }
    }
    if (cones.eval(star) != vol_under(diagram))
        throw CheckError("mixed_covolumes: cone evaluation disagrees at the base weight");
    return cones;
}

MixedCovolumeTable solve_table(const std::vector<NewtonDiagram>& gs,
                               const std::function<Rat(const std::vector<long>&)>& covol_at,
                               bool verify_held_out_directly, uint64_t* seed_out) {
    const int n = gs[0].ambient_dim();
    const long r = static_cast<long>(gs.size());
    std::vector<Composition> monomials = compositions(n, r);
    const size_t unknowns = monomials.size();
    std::vector<std::vector<long>> grid = lex_grid(r, unknowns + 2, n + 1);

    uint64_t seed = 0;
    for (int attempt = 0; attempt < 24; ++attempt) {
        std::vector<Rat> values;
        for (const auto& lambda : grid) values.push_back(covol_at(lambda));

        MatQ a(unknowns, VecQ(unknowns));
        VecQ b(unknowns);
        for (size_t i = 0; i < unknowns; ++i) {
            for (size_t j = 0; j < unknowns; ++j)
                a[i][j] = eval_monomials(grid[i], monomials[j].parts);
            b[i] = values[i];
        }
        auto sol = solve_rat(std::move(a), std::move(b));
        if (sol) {
            for (size_t h = unknowns; h < unknowns + 2; ++h) {
                Rat predicted(0);
                for (size_t j = 0; j < unknowns; ++j)
                    predicted += (*sol)[j] * eval_monomials(grid[h], monomials[j].parts);
                if (predicted != values[h])
                    throw CheckError("mixed_covolumes: fit verification failed at a "
                                     "held-out grid point");
                if (verify_held_out_directly) {
                    Rat direct = vol_under(weighted_sum_diagram(gs, grid[h]));
                    if (predicted != direct)
                        throw CheckError("mixed_covolumes: symbolic cone value differs "
                                         "from the direct hull evaluation");
                }
            }
            MixedCovolumeTable table;
            table.dim = n;
            table.r = r;
            table.grid_seed = seed;
            for (size_t j = 0; j < unknowns; ++j) {
                Rat co = (*sol)[j] / Rat(multinomial(n, monomials[j].parts));
                if (co < 0) throw CheckError("mixed_covolumes: negative mixed covolume");
                table.entries[monomials[j].parts] = co;
            }
            if (r == 1 && table.entries.begin()->second != vol_under(gs[0]))
                throw CheckError("mixed_covolumes: r = 1 entry disagrees with covol");
            if (seed_out) *seed_out = seed;
            return table;
        }
        // Singular system: randomized integer grid, seed recorded.
        if (seed == 0) {
            std::string key;
            for (const auto& g : gs) key += g.canonical_key() + "#";
            seed = fnv1a(key) | 1;
        } else {
            seed = seed * 6364136223846793005ULL + 1442695040888963407ULL;
        }
        uint64_t state = seed;
        std::set<std::vector<long>> chosen;
        while (chosen.size() < unknowns + 2) {
            std::vector<long> lambda(r);
            for (long i = 0; i < r; ++i)
                lambda[i] = 1 + static_cast<long>(splitmix64(state) % (n + 3));
            chosen.insert(lambda);
        }
        grid.assign(chosen.begin(), chosen.end());
    }
    throw CheckError("mixed_covolumes: interpolation grid persistently singular");
}

}  // namespace

Rat covol(const NewtonDiagram& gplus) {
    if (!gplus.convenient()) throw PreconditionError("covol: diagram is not convenient");
    return vol_under(gplus);
}

NewtonDiagram weighted_sum_diagram(const std::vector<NewtonDiagram>& gs,
                                   const std::vector<long>& lambda) {
    if (gs.empty() || gs.size() != lambda.size())
        throw PreconditionError("weighted_sum_diagram: body/weight mismatch");
    const int n = gs[0].ambient_dim();
    std::vector<const NewtonDiagram*> active;
    std::vector<long> weights;
    for (size_t i = 0; i < gs.size(); ++i) {
        if (lambda[i] < 0) throw PreconditionError("weighted_sum_diagram: negative weight");
        if (lambda[i] == 0) continue;
        if (gs[i].ambient_dim() != n)
            throw InputError("weighted_sum_diagram: ambient dimension mismatch");
        if (!gs[i].integral())
            throw PreconditionError("weighted_sum_diagram: needs integral diagrams");
        active.push_back(&gs[i]);
        weights.push_back(lambda[i]);
    }
    if (active.empty()) throw PreconditionError("weighted_sum_diagram: all weights zero");

    // Vertex sums of the scaled polyhedra generate the Minkowski sum.
    std::vector<VecI> sums;
    std::vector<size_t> idx(active.size(), 0);
    while (true) {
        VecI s(n, Int(0));
        for (size_t b = 0; b < active.size(); ++b) {
            const VecQ& v = active[b]->vertices()[idx[b]];
            for (int j = 0; j < n; ++j) s[j] += Int(weights[b]) * to_int(v[j]);
        }
        sums.push_back(std::move(s));
        size_t pos = active.size();
        bool done = true;
        while (pos > 0) {
            --pos;
            if (idx[pos] + 1 < active[pos]->vertices().size()) {
                ++idx[pos];
                for (size_t q = pos + 1; q < active.size(); ++q) idx[q] = 0;
                done = false;
                break;
            }
        }
        if (done) break;
    }
    SupportSet s;
    s.ambient_dim = n;
    s.points = std::move(sums);
    return NewtonDiagram::from_support(s);
}

MixedCovolumeTable mixed_covolumes_interpolated(const std::vector<NewtonDiagram>& gs) {
    check_bodies(gs);
    return solve_table(
        gs, [&](const std::vector<long>& lambda) { return vol_under(weighted_sum_diagram(gs, lambda)); },
        false, nullptr);
}

MixedCovolumeTable mixed_covolumes(const std::vector<NewtonDiagram>& gs) {
    check_bodies(gs);
    const long r = static_cast<long>(gs.size());

    // Two independent generic weights must induce the same polynomial.
    std::optional<SymbolicCones> first, second;
    for (long base : {2, 3, 5, 7, 11, 13}) {
        std::vector<long> star(r);
        long power = 1;
        for (long i = 0; i < r; ++i) {
            star[i] = power;
            power *= base;
        }
        auto cones = build_cones(gs, star);
        if (!cones) continue;
        if (!first)
            first = std::move(cones);
        else {
            second = std::move(cones);
            break;
        }
    }
    if (first && (second || r == 1)) {
        bool consistent = true;
        if (second) {
            std::vector<std::vector<long>> probe =
                lex_grid(r, compositions(gs[0].ambient_dim(), r).size() + 2,
                         gs[0].ambient_dim() + 1);
            for (const auto& lambda : probe)
                if (first->eval(lambda) != second->eval(lambda)) {
                    consistent = false;
                    break;
                }
        }
        if (consistent) {
            return solve_table(
                gs, [&](const std::vector<long>& lambda) { return first->eval(lambda); },
                true, nullptr);
        }
    }
    // Structural disagreement (walls of the weight chamber complex): fall
    // back to direct interpolation.
    return mixed_covolumes_interpolated(gs);
}

bool verify_multilinearity(const NewtonDiagram& g11, const NewtonDiagram& g12,
                           const std::vector<NewtonDiagram>& fixed) {
    const int n = g11.ambient_dim();
    if (static_cast<int>(fixed.size()) != n - 1)
        throw PreconditionError("verify_multilinearity: need N-1 fixed bodies");
    NewtonDiagram combined = weighted_sum_diagram({g11, g12}, {1, 1});

    auto first_entry = [&](const NewtonDiagram& first) {
        std::vector<NewtonDiagram> bodies{first};
        for (const auto& f : fixed) bodies.push_back(f);
        std::vector<long> k(bodies.size(), 1);
        return mixed_covolumes(bodies).entry(k);
    };
    return first_entry(combined) == first_entry(g11) + first_entry(g12);
}

bool verify_convexity(const NewtonDiagram& g1, const NewtonDiagram& g2,
                      const std::vector<NewtonDiagram>& fixed) {
    const int n = g1.ambient_dim();
    if (static_cast<int>(fixed.size()) != n - 2)
        throw PreconditionError("verify_convexity: need N-2 fixed bodies");
    std::vector<NewtonDiagram> bodies{g1, g2};
    for (const auto& f : fixed) bodies.push_back(f);
    MixedCovolumeTable t = mixed_covolumes(bodies);
    std::vector<long> mixed(bodies.size(), 1);
    std::vector<long> first(bodies.size(), 1), second(bodies.size(), 1);
    first[0] = 2;
    first[1] = 0;
    second[0] = 0;
    second[1] = 2;
    return t.entry(mixed) * t.entry(mixed) <= t.entry(first) * t.entry(second);
}

GeneralizedInequalityReport generalized_inequality_check(const DiagramTuple& tuple) {
    tuple.validate();
    const long n = tuple.n;
    const long r = tuple.r;
    MixedCovolumeTable table = mixed_covolumes(tuple.diagrams);

    Rat positive_sum(0);
    Rat weighted_sum(0);
    for (const auto& [k, co] : table.entries) {
        bool all_positive = true;
        for (long ki : k)
            if (ki < 1) all_positive = false;
        if (!all_positive) continue;
        positive_sum += co;
        weighted_sum += Rat(multinomial(n + r, k)) * co;
    }
    Int lhs_weight(0);
    for (const Composition& k : compositions(n, r)) {
        std::vector<long> shifted;
        for (long ki : k.parts) shifted.push_back(ki + 1);
        lhs_weight += multinomial(n + r, shifted);
    }

    GeneralizedInequalityReport rep;
    rep.lhs = Rat(lhs_weight) * positive_sum;
    rep.rhs = Rat(composition_count(n, r)) * weighted_sum;
    rep.holds = rep.lhs >= rep.rhs;
    rep.equality = rep.lhs == rep.rhs;
    rep.all_equal_diagrams = true;
    for (const auto& g : tuple.diagrams)
        if (g.canonical_key() != tuple.diagrams[0].canonical_key())
            rep.all_equal_diagrams = false;
    return rep;
}

std::string table_to_json_text(const MixedCovolumeTable& table) {
    nlohmann::json j;
    for (const auto& [k, co] : table.entries) {
        std::ostringstream key;
        for (size_t i = 0; i < k.size(); ++i) key << (i ? "," : "") << k[i];
        j[key.str()] = co.get_str();
    }
    return j.dump();
}

}  // namespace nd
