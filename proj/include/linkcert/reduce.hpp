#pragma once

#include <algorithm>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "linkcert/diagram.hpp"
#include "linkcert/faces.hpp"

namespace linkcert {

/// True iff no crossing has the same region at two of its four corners.
inline bool is_reduced(const Diagram& d) {
    if (d.crossing_count() == 0) return true;
    const FaceSet fs = detail::trace_faces_internal(d);
    for (int ci = 0; ci < d.crossing_count(); ++ci) {
        const auto& f = fs.corner_face[static_cast<std::size_t>(ci)];
        for (int a = 0; a < 4; ++a)
            for (int b = a + 1; b < 4; ++b)
                if (f[static_cast<std::size_t>(a)] == f[static_cast<std::size_t>(b)]) return false;
    }
    return true;
}

namespace detail {

/// A nugatory crossing together with the corner diagonal that shares a face.
struct Nugatory {
    int crossing;
    int corner; // corners `corner` and `corner + 2` lie in the same region
};

inline std::optional<Nugatory> find_nugatory(const Diagram& d) {
    if (d.crossing_count() == 0) return std::nullopt;
    const FaceSet fs = trace_faces_internal(d);
    for (int ci = 0; ci < d.crossing_count(); ++ci) {
        const auto& f = fs.corner_face[static_cast<std::size_t>(ci)];
        for (int k = 0; k < 2; ++k)
            if (f[static_cast<std::size_t>(k)] == f[static_cast<std::size_t>(k + 2)])
                return Nugatory{ci, k};
    }
    return std::nullopt;
}

/// Removes the crossing and splices the four ends pairwise, smoothing through
/// the shared-face corners: ends (k, k+1) join, and ends (k+2, k+3) join.
/// Chains that close up with no remaining crossing become explicit circles.
inline Diagram untwist(const Diagram& d, const Nugatory& n) {
    const Crossing& cr = d.crossing(n.crossing);

    std::map<EdgeId, EdgeId> parent;
    for (int ci = 0; ci < d.crossing_count(); ++ci)
        for (EdgeId e : d.crossing(ci).edge) parent.emplace(e, e);
    auto find = [&](EdgeId e) {
        while (parent[e] != e) e = parent[e] = parent[parent[e]];
        return e;
    };

    std::map<EdgeId, int> joins;
    auto join = [&](EdgeId a, EdgeId b) {
        EdgeId ra = find(a), rb = find(b);
        if (ra == rb) {
            ++joins[ra];
            return;
        }
        const int j = joins[ra] + joins[rb] + 1;
        parent[std::max(ra, rb)] = std::min(ra, rb);
        joins[std::min(ra, rb)] = j;
    };
    const int k = n.corner;
    join(cr.edge[static_cast<std::size_t>(k)], cr.edge[static_cast<std::size_t>((k + 1) % 4)]);
    join(cr.edge[static_cast<std::size_t>((k + 2) % 4)], cr.edge[static_cast<std::size_t>((k + 3) % 4)]);

    std::map<EdgeId, int> group_size;
    for (const auto& [e, p] : parent) ++group_size[find(e)];

    int new_circles = 0;
    std::vector<std::array<EdgeId, 4>> tuples;
    for (int ci = 0; ci < d.crossing_count(); ++ci) {
        if (ci == n.crossing) continue;
        std::array<EdgeId, 4> t{};
        for (int s = 0; s < 4; ++s)
            t[static_cast<std::size_t>(s)] = find(d.crossing(ci).edge[static_cast<std::size_t>(s)]);
        tuples.push_back(t);
    }
    for (const auto& [root, sz] : group_size) {
        if (joins.count(root) && joins[root] == sz) ++new_circles; // fully closed chain
    }

    return Diagram::build(std::move(tuples), d.circle_count() + new_circles, BuildMode::Normalize);
}

} // namespace detail

/// Repeatedly untwists nugatory crossings, lowest crossing index first, until
/// the diagram is reduced. Component count is preserved.
inline Diagram reduce(const Diagram& d) {
    Diagram cur = d;
    while (auto n = detail::find_nugatory(cur)) cur = detail::untwist(cur, *n);
    return cur;
}

namespace detail {

/// Distinct region pairs and the edges they share.
inline std::map<std::pair<FaceId, FaceId>, std::vector<EdgeId>> shared_edges(const FaceSet& fs) {
    std::map<std::pair<FaceId, FaceId>, std::vector<EdgeId>> shared;
    for (std::size_t i = 0; i < fs.left_face.size(); ++i) {
        FaceId a = fs.left_face[i], b = fs.right_face[i];
        if (a > b) std::swap(a, b);
        shared[{a, b}].push_back(static_cast<EdgeId>(i + 1));
    }
    return shared;
}

} // namespace detail

/// True iff no simple closed curve meets the diagram transversally in exactly
/// two points on different arcs; combinatorially, no two distinct regions
/// share two or more edges.
inline bool is_prime(const Diagram& d) {
    if (!d.is_connected() || d.crossing_count() < 1)
        throw PreconditionViolated("is_prime requires a connected diagram with crossings");
    if (!is_reduced(d)) throw PreconditionViolated("is_prime requires a reduced diagram");
    const FaceSet fs = trace_faces(d);
    for (const auto& [pair, edges] : detail::shared_edges(fs))
        if (edges.size() >= 2) return false;
    return true;
}

/// Splits along disconnections and along two-point curves until every factor
/// is connected and prime, or is a bare circle. Crossing counts are preserved.
inline std::vector<Diagram> split_factors(const Diagram& d) {
    std::vector<Diagram> out;

    // Disconnection splits: one factor per graph component, one per circle.
    if (!d.is_connected()) {
        for (int g = 0; g < d.graph_component_count(); ++g) {
            std::vector<std::array<EdgeId, 4>> tuples;
            for (int ci = 0; ci < d.crossing_count(); ++ci)
                if (d.crossing_graph_component(ci) == g) tuples.push_back(d.crossing(ci).edge);
            Diagram sub = Diagram::build(std::move(tuples), 0, BuildMode::Normalize);
            auto subs = split_factors(sub);
            out.insert(out.end(), subs.begin(), subs.end());
        }
        for (int i = 0; i < d.circle_count(); ++i)
            out.push_back(Diagram::build({}, 1, BuildMode::Normalize));
        return out;
    }
    if (d.crossing_count() == 0) {
        out.push_back(d);
        return out;
    }

    // Connected: look for a separating two-point curve.
    const FaceSet fs = detail::trace_faces_internal(d);
    std::optional<std::pair<EdgeId, EdgeId>> cut;
    for (const auto& [pair, edges] : detail::shared_edges(fs)) {
        if (edges.size() >= 2) {
            cut = {edges[0], edges[1]};
            break;
        }
    }
    if (!cut) {
        out.push_back(d);
        return out;
    }
    const auto [e1, e2] = *cut;

    // Crossing groups separated by the curve through e1 and e2.
    std::vector<int> group(static_cast<std::size_t>(d.crossing_count()), -1);
    int groups = 0;
    for (int start = 0; start < d.crossing_count(); ++start) {
        if (group[static_cast<std::size_t>(start)] >= 0) continue;
        const int id = groups++;
        std::vector<int> stack{start};
        group[static_cast<std::size_t>(start)] = id;
        while (!stack.empty()) {
            int ci = stack.back();
            stack.pop_back();
            for (EdgeId e : d.crossing(ci).edge) {
                if (e == e1 || e == e2) continue;
                for (EdgeEnd end : {d.edge_head(e), d.edge_tail(e)}) {
                    int& m = group[static_cast<std::size_t>(end.crossing)];
                    if (m < 0) {
                        m = id;
                        stack.push_back(end.crossing);
                    }
                }
            }
        }
    }
    if (groups != 2)
        throw InternalInconsistency("two-point curve does not separate the diagram");

    const EdgeId fresh = 2 * d.crossing_count() + 1;
    for (int g = 0; g < 2; ++g) {
        std::vector<std::array<EdgeId, 4>> tuples;
        int stubs = 0;
        for (int ci = 0; ci < d.crossing_count(); ++ci) {
            if (group[static_cast<std::size_t>(ci)] != g) continue;
            std::array<EdgeId, 4> t = d.crossing(ci).edge;
            for (auto& e : t) {
                if (e == e1 || e == e2) {
                    e = fresh;
                    ++stubs;
                }
            }
            tuples.push_back(t);
        }
        if (stubs != 2)
            throw InternalInconsistency("cut edges do not straddle the two-point curve");
        Diagram sub = Diagram::build(std::move(tuples), 0, BuildMode::Normalize);
        auto subs = split_factors(sub);
        out.insert(out.end(), subs.begin(), subs.end());
    }
    return out;
}

/// Relabeling-invariant key: the lexicographically smallest serialization over
/// all component orders, base points, and walk directions. Reversing a whole
/// component is the identity on this key; mirroring is not.
inline std::string canonical_key(const Diagram& d) {
    const int nc = d.strand_component_count();
    std::string best;

    std::vector<int> perm(static_cast<std::size_t>(nc));
    std::iota(perm.begin(), perm.end(), 0);

    // Per component: edges forward (stored orientation) and reversed.
    struct Dir {
        std::vector<EdgeId> order; // walk order
        bool forward;
    };
    std::vector<std::array<Dir, 2>> dirs(static_cast<std::size_t>(nc));
    for (int k = 0; k < nc; ++k) {
        const auto& es = d.component_edges(k);
        dirs[static_cast<std::size_t>(k)][0] = {es, true};
        std::vector<EdgeId> rev(es.rbegin(), es.rend());
        dirs[static_cast<std::size_t>(k)][1] = {rev, false};
    }

    std::vector<int> choice(static_cast<std::size_t>(nc), 0); // dir * m + offset
    auto emit = [&]() {
        std::vector<EdgeId> relabel(static_cast<std::size_t>(d.edge_count() + 1), 0);
        std::vector<bool> comp_reversed(static_cast<std::size_t>(nc), false);
        EdgeId next = 1;
        for (int pk = 0; pk < nc; ++pk) {
            const int k = perm[static_cast<std::size_t>(pk)];
            const auto& es = d.component_edges(k);
            const int m = static_cast<int>(es.size());
            const int dir = choice[static_cast<std::size_t>(k)] / m;
            const int off = choice[static_cast<std::size_t>(k)] % m;
            const auto& order = dirs[static_cast<std::size_t>(k)][static_cast<std::size_t>(dir)].order;
            comp_reversed[static_cast<std::size_t>(k)] = dir == 1;
            for (int i = 0; i < m; ++i)
                relabel[static_cast<std::size_t>(order[static_cast<std::size_t>((off + i) % m)])] =
                    next++;
        }
        std::vector<std::array<EdgeId, 4>> tuples;
        for (int ci = 0; ci < d.crossing_count(); ++ci) {
            std::array<EdgeId, 4> src = d.crossing(ci).edge;
            // If the under-strand's component is reversed, the incoming under
            // edge moves to slot 2: rotate to restore the convention.
            if (comp_reversed[static_cast<std::size_t>(d.edge_component(src[0]))])
                std::rotate(src.begin(), src.begin() + 2, src.end());
            std::array<EdgeId, 4> t{};
            for (int s = 0; s < 4; ++s)
                t[static_cast<std::size_t>(s)] = relabel[static_cast<std::size_t>(src[static_cast<std::size_t>(s)])];
            tuples.push_back(t);
        }
        std::sort(tuples.begin(), tuples.end());
        std::ostringstream os;
        os << "O" << d.circle_count() << "|";
        for (const auto& t : tuples)
            os << t[0] << ',' << t[1] << ',' << t[2] << ',' << t[3] << ';';
        std::string key = os.str();
        if (best.empty() || key < best) best = std::move(key);
    };

    if (nc == 0) {
        emit();
        return best;
    }
    std::sort(perm.begin(), perm.end());
    do {
        // Enumerate start edge and direction per component.
        std::vector<int> limits(static_cast<std::size_t>(nc));
        for (int k = 0; k < nc; ++k)
            limits[static_cast<std::size_t>(k)] = 2 * static_cast<int>(d.component_edges(k).size());
        std::fill(choice.begin(), choice.end(), 0);
        while (true) {
            emit();
            int i = 0;
            while (i < nc) {
                if (++choice[static_cast<std::size_t>(i)] < limits[static_cast<std::size_t>(i)]) break;
                choice[static_cast<std::size_t>(i)] = 0;
                ++i;
            }
            if (i == nc) break;
        }
    } while (std::next_permutation(perm.begin(), perm.end()));
    return best;
}

} // namespace linkcert
