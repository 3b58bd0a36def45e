#pragma once

#include <algorithm>
#include <array>
#include <cassert>
#include <map>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "linkcert/errors.hpp"
#include "linkcert/word.hpp"

namespace linkcert {

using EdgeId = int; // 1-based after canonicalization

/// One crossing of the diagram. Slots list the incident edges counterclockwise
/// with slot 0 the incoming under-strand edge; slots 0/2 form the under-strand
/// and 1/3 the over-strand.
struct Crossing {
    std::array<EdgeId, 4> edge{};
    int sign = 0; // +1 / -1 once orientation is resolved

    friend bool operator==(const Crossing& a, const Crossing& b) { return a.edge == b.edge; }
};

/// One end of an edge: the crossing and slot where it attaches.
struct EdgeEnd {
    int crossing = -1;
    int slot = -1;

    friend bool operator==(const EdgeEnd& a, const EdgeEnd& b) {
        return a.crossing == b.crossing && a.slot == b.slot;
    }
};

/// A strand's trip through a crossing, identified by the arrival end.
struct Passage {
    int crossing = -1;
    int slot = -1; // arrival slot: 0 = under, 1 or 3 = over
    bool under() const { return slot == 0; }
};

enum class BuildMode {
    Strict,    // input must satisfy the PD conventions; violations are errors
    Normalize, // repair orientation by rotating crossing tuples; used after surgery
};

/// Combinatorial planar link diagram. Immutable after construction. Components
/// with no crossings are carried as an explicit circle count since PD tuples
/// cannot encode them.
class Diagram {
public:
    Diagram() = default;

    static Diagram build(std::vector<std::array<EdgeId, 4>> tuples, int circles,
                         BuildMode mode = BuildMode::Strict);

    int crossing_count() const { return static_cast<int>(crossings_.size()); }
    int edge_count() const { return static_cast<int>(edges_.size()); }
    int circle_count() const { return circles_; }
    /// Strand components plus explicit circles.
    int component_count() const { return static_cast<int>(component_edges_.size()) + circles_; }
    int strand_component_count() const { return static_cast<int>(component_edges_.size()); }

    const std::vector<Crossing>& crossings() const { return crossings_; }
    const Crossing& crossing(int i) const { return crossings_[static_cast<std::size_t>(i)]; }

    /// Edges of strand component k in walk order, starting at its lowest label.
    const std::vector<EdgeId>& component_edges(int k) const {
        return component_edges_[static_cast<std::size_t>(k)];
    }
    /// True when component id k (0-based, strand components first) is a circle.
    bool component_is_circle(int k) const { return k >= strand_component_count(); }

    EdgeEnd edge_head(EdgeId e) const { return edges_[static_cast<std::size_t>(e - 1)].head; }
    EdgeEnd edge_tail(EdgeId e) const { return edges_[static_cast<std::size_t>(e - 1)].tail; }
    int edge_component(EdgeId e) const { return edges_[static_cast<std::size_t>(e - 1)].component; }

    /// Crossing passages of strand component k in walk order; passage i happens
    /// at the head of the i-th component edge.
    std::vector<Passage> passages(int k) const {
        std::vector<Passage> ps;
        for (EdgeId e : component_edges(k)) {
            EdgeEnd h = edge_head(e);
            ps.push_back(Passage{h.crossing, h.slot});
        }
        return ps;
    }

    /// Number of connected components of the underlying 4-valent graph
    /// (0 when there are no crossings).
    int graph_component_count() const { return graph_components_; }
    int crossing_graph_component(int ci) const {
        return crossing_graph_comp_[static_cast<std::size_t>(ci)];
    }

    bool is_connected() const {
        if (crossing_count() == 0) return circles_ == 1;
        return graph_components_ == 1 && circles_ == 0;
    }

private:
    std::vector<Crossing> crossings_;
    int circles_ = 0;

    struct EdgeInfo {
        EdgeEnd tail, head;
        int component = -1;
    };
    std::vector<EdgeInfo> edges_;                     // index = edge id - 1
    std::vector<std::vector<EdgeId>> component_edges_; // per strand component
    std::vector<int> crossing_graph_comp_;
    int graph_components_ = 0;

    void derive(BuildMode mode);
};

namespace detail {

inline void fail(BuildMode mode, const std::string& msg) {
    if (mode == BuildMode::Strict) throw ValidationError(msg);
    throw InternalInconsistency("diagram rebuild: " + msg);
}

} // namespace detail

inline Diagram Diagram::build(std::vector<std::array<EdgeId, 4>> tuples, int circles,
                              BuildMode mode) {
    if (circles < 0) throw ValidationError("negative circle count");
    Diagram d;
    d.circles_ = circles;
    d.crossings_.reserve(tuples.size());
    for (const auto& t : tuples) d.crossings_.push_back(Crossing{t, 0});
    d.derive(mode);
    return d;
}

inline void Diagram::derive(BuildMode mode) {
    const int c = crossing_count();
    if (c == 0) {
        edges_.clear();
        component_edges_.clear();
        crossing_graph_comp_.clear();
        graph_components_ = 0;
        return;
    }

    // Occurrence map. Every edge label must appear exactly twice.
    std::map<EdgeId, std::vector<EdgeEnd>> occ;
    for (int ci = 0; ci < c; ++ci) {
        for (int s = 0; s < 4; ++s) {
            EdgeId e = crossings_[static_cast<std::size_t>(ci)].edge[static_cast<std::size_t>(s)];
            if (e <= 0) detail::fail(mode, "edge labels must be positive");
            occ[e].push_back(EdgeEnd{ci, s});
        }
    }
    for (const auto& [e, ends] : occ) {
        if (ends.size() != 2)
            detail::fail(mode, "edge " + std::to_string(e) + " occurs " +
                                   std::to_string(ends.size()) + " times, expected 2");
    }

    auto other_end = [&](EdgeId e, const EdgeEnd& at) -> EdgeEnd {
        const auto& ends = occ[e];
        if (ends[0] == at) return ends[1];
        return ends[0];
    };
    auto edge_at = [&](const EdgeEnd& end) -> EdgeId {
        return crossings_[static_cast<std::size_t>(end.crossing)]
            .edge[static_cast<std::size_t>(end.slot)];
    };

    // Connected components of the crossing graph.
    crossing_graph_comp_.assign(static_cast<std::size_t>(c), -1);
    graph_components_ = 0;
    for (int start = 0; start < c; ++start) {
        if (crossing_graph_comp_[static_cast<std::size_t>(start)] >= 0) continue;
        int id = graph_components_++;
        std::vector<int> stack{start};
        crossing_graph_comp_[static_cast<std::size_t>(start)] = id;
        while (!stack.empty()) {
            int ci = stack.back();
            stack.pop_back();
            for (int s = 0; s < 4; ++s) {
                EdgeId e = crossings_[static_cast<std::size_t>(ci)].edge[static_cast<std::size_t>(s)];
                for (const EdgeEnd& end : occ[e]) {
                    int& mark = crossing_graph_comp_[static_cast<std::size_t>(end.crossing)];
                    if (mark < 0) {
                        mark = id;
                        stack.push_back(end.crossing);
                    }
                }
            }
        }
    }

    // Walk a component from edge e0 in one of its two directions. d == 0 means
    // e0 is traversed from its first occurrence toward its second.
    struct WalkResult {
        std::vector<EdgeId> edges;        // in walk order, starting with e0
        std::map<EdgeId, EdgeEnd> head;   // arrival end per edge
        int under_violations = 0;         // slot-0 tails or slot-2 heads
        bool ascending = false;
    };
    auto walk_from = [&](EdgeId e0, int dir) -> WalkResult {
        WalkResult w;
        EdgeEnd arrival = occ[e0][dir == 0 ? 1 : 0];
        EdgeId e = e0;
        while (true) {
            w.edges.push_back(e);
            w.head[e] = arrival;
            EdgeEnd exit{arrival.crossing, (arrival.slot + 2) % 4};
            EdgeId en = edge_at(exit);
            arrival = other_end(en, exit);
            e = en;
            if (e == e0) break;
            if (w.edges.size() > occ.size())
                detail::fail(mode, "strand continuation fails to close");
        }
        for (EdgeId ce : w.edges) {
            const EdgeEnd h = w.head[ce];
            const EdgeEnd t = other_end(ce, h);
            if (t.slot == 0 || h.slot == 2) ++w.under_violations;
        }
        // The label sequence, rotated to start at its minimum, must ascend.
        std::size_t mi = 0;
        for (std::size_t i = 1; i < w.edges.size(); ++i)
            if (w.edges[i] < w.edges[mi]) mi = i;
        w.ascending = true;
        for (std::size_t i = 0; i + 1 < w.edges.size(); ++i) {
            EdgeId a = w.edges[(mi + i) % w.edges.size()];
            EdgeId b = w.edges[(mi + i + 1) % w.edges.size()];
            if (a >= b) {
                w.ascending = false;
                break;
            }
        }
        return w;
    };

    // Trace all strand components, choose a direction for each.
    std::map<EdgeId, int> edge_comp;
    std::vector<WalkResult> walks;
    for (const auto& [e, ends] : occ) {
        if (edge_comp.count(e)) continue;
        WalkResult wa = walk_from(e, 0);
        WalkResult wb = walk_from(e, 1);
        WalkResult* chosen = nullptr;
        if (mode == BuildMode::Strict) {
            const bool oka = wa.under_violations == 0;
            const bool okb = wb.under_violations == 0;
            if (oka && okb)
                chosen = wa.ascending || !wb.ascending ? &wa : &wb;
            else if (oka)
                chosen = &wa;
            else if (okb)
                chosen = &wb;
            else
                throw ValidationError(
                    "slot 0 is not the incoming under-strand edge on the component of edge " +
                    std::to_string(e));
        } else {
            if (wa.under_violations == 0)
                chosen = &wa;
            else if (wb.under_violations == 0)
                chosen = &wb;
            else
                chosen = wa.ascending || !wb.ascending ? &wa : &wb;
        }
        int id = static_cast<int>(walks.size());
        for (EdgeId ce : chosen->edges) edge_comp[ce] = id;
        walks.push_back(std::move(*chosen));
    }

    // Repair under-entry violations by rotating the crossing tuple by two
    // slots, which preserves the counterclockwise order.
    if (mode == BuildMode::Normalize) {
        std::vector<bool> rotate(static_cast<std::size_t>(c), false);
        for (const auto& w : walks) {
            for (EdgeId e : w.edges) {
                const EdgeEnd h = w.head.at(e);
                if (h.slot == 2) rotate[static_cast<std::size_t>(h.crossing)] = true;
            }
        }
        bool any = false;
        for (bool b : rotate) any = any || b;
        if (any) {
            for (int ci = 0; ci < c; ++ci) {
                if (!rotate[static_cast<std::size_t>(ci)]) continue;
                auto& t = crossings_[static_cast<std::size_t>(ci)].edge;
                std::rotate(t.begin(), t.begin() + 2, t.end());
            }
            // Occurrence slots moved; recompute from scratch.
            derive(mode);
            return;
        }
    }

    // Canonical relabeling: components in order of their minimal original
    // label, each walked from that edge, labels 1..2c.
    std::vector<std::size_t> comp_order(walks.size());
    std::iota(comp_order.begin(), comp_order.end(), 0);
    std::sort(comp_order.begin(), comp_order.end(), [&](std::size_t a, std::size_t b) {
        return *std::min_element(walks[a].edges.begin(), walks[a].edges.end()) <
               *std::min_element(walks[b].edges.begin(), walks[b].edges.end());
    });

    std::map<EdgeId, EdgeId> relabel;
    component_edges_.clear();
    EdgeId next = 1;
    for (std::size_t wi : comp_order) {
        const auto& es = walks[wi].edges;
        std::size_t mi = static_cast<std::size_t>(
            std::min_element(es.begin(), es.end()) - es.begin());
        std::vector<EdgeId> comp;
        for (std::size_t i = 0; i < es.size(); ++i) {
            EdgeId old = es[(mi + i) % es.size()];
            relabel[old] = next;
            comp.push_back(next);
            ++next;
        }
        component_edges_.push_back(std::move(comp));
    }

    edges_.assign(static_cast<std::size_t>(next - 1), EdgeInfo{});
    for (std::size_t wi = 0; wi < walks.size(); ++wi) {
        for (EdgeId old : walks[wi].edges) {
            const EdgeEnd h = walks[wi].head.at(old);
            const EdgeEnd t = other_end(old, h);
            EdgeInfo& info = edges_[static_cast<std::size_t>(relabel[old] - 1)];
            info.head = h;
            info.tail = t;
        }
    }
    for (std::size_t k = 0; k < component_edges_.size(); ++k)
        for (EdgeId e : component_edges_[k])
            edges_[static_cast<std::size_t>(e - 1)].component = static_cast<int>(k);

    for (auto& cr : crossings_)
        for (auto& e : cr.edge) e = relabel[e];

    // Crossing signs: over-strand entering at slot 1 is positive, slot 3
    // negative.
    for (int ci = 0; ci < c; ++ci) {
        Crossing& cr = crossings_[static_cast<std::size_t>(ci)];
        const EdgeEnd h1 = edge_head(cr.edge[1]);
        const bool in_at_1 = h1.crossing == ci && h1.slot == 1;
        if (mode == BuildMode::Strict) {
            const EdgeEnd h3 = edge_head(cr.edge[3]);
            const bool in_at_3 = h3.crossing == ci && h3.slot == 3;
            if (in_at_1 == in_at_3)
                throw ValidationError("over-strand direction inconsistent at crossing " +
                                      std::to_string(ci));
        }
        cr.sign = in_at_1 ? +1 : -1;
    }
}

/// True iff along every strand component the crossing passages alternate
/// between under and over. Vacuously true for circles.
inline bool is_alternating(const Diagram& d) {
    for (int k = 0; k < d.strand_component_count(); ++k) {
        const auto ps = d.passages(k);
        const std::size_t n = ps.size();
        for (std::size_t i = 0; i < n; ++i)
            if (ps[i].under() == ps[(i + 1) % n].under()) return false;
    }
    return true;
}

/// Sum of crossing signs where both strands belong to the given component.
inline int self_linking(const Diagram& d, int comp) {
    if (d.component_is_circle(comp)) return 0;
    int s = 0;
    for (int ci = 0; ci < d.crossing_count(); ++ci) {
        const Crossing& cr = d.crossing(ci);
        if (d.edge_component(cr.edge[0]) == comp && d.edge_component(cr.edge[1]) == comp)
            s += cr.sign;
    }
    return s;
}

/// Signed count of crossings between two distinct components, halved.
inline int linking_number(const Diagram& d, int comp_a, int comp_b) {
    int s = 0;
    for (int ci = 0; ci < d.crossing_count(); ++ci) {
        const Crossing& cr = d.crossing(ci);
        const int cu = d.edge_component(cr.edge[0]);
        const int co = d.edge_component(cr.edge[1]);
        if ((cu == comp_a && co == comp_b) || (cu == comp_b && co == comp_a)) s += cr.sign;
    }
    return s / 2;
}

/// Swaps over and under strands at every crossing (mirror through the
/// projection plane). Counterclockwise slot order is preserved.
inline Diagram mirror(const Diagram& d) {
    std::vector<std::array<EdgeId, 4>> tuples;
    tuples.reserve(static_cast<std::size_t>(d.crossing_count()));
    for (int ci = 0; ci < d.crossing_count(); ++ci) {
        const Crossing& cr = d.crossing(ci);
        // The old over-in slot becomes the new under-in slot.
        const int s0 = cr.sign > 0 ? 1 : 3;
        std::array<EdgeId, 4> t{};
        for (int i = 0; i < 4; ++i) t[static_cast<std::size_t>(i)] = cr.edge[static_cast<std::size_t>((s0 + i) % 4)];
        tuples.push_back(t);
    }
    return Diagram::build(std::move(tuples), d.circle_count(), BuildMode::Normalize);
}

} // namespace linkcert
