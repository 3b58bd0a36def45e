#pragma once

#include <optional>
#include <set>
#include <vector>

#include "linkcert/diagram.hpp"
#include "linkcert/errors.hpp"
#include "linkcert/faces.hpp"
#include "linkcert/presentation.hpp"
#include "linkcert/solver.hpp"
#include "linkcert/word.hpp"

namespace linkcert {

/// Per-component longitude data. The longitude is the blackboard double
/// composed with the self-linking framing correction.
struct LongitudeRep {
    int component = 0;
    Word double_word;
    int double_length = 0;
    int slk = 0;
    Word meridian_word;
    Word longitude_word; // double_word * meridian_word^(-slk), freely reduced
};

/// Word of the parallel push-off of a component on the chosen side: at each
/// under-passage it dives below the plane just before the over-strand and
/// surfaces just after, contributing the two corner regions on the push-off's
/// side with exponents (+,-).
inline Word double_word(const Diagram& d, const FaceSet& f, const Colouring& col, int comp,
                        Side side) {
    if (d.component_is_circle(comp)) return Word{};
    if (!d.is_connected()) throw PreconditionViolated("double_word requires a connected diagram");
    Word w;
    for (const Passage& ps : d.passages(comp)) {
        if (!ps.under()) continue;
        // Under-strand runs slot 0 -> slot 2; its left flanks corners 3 and 2,
        // its right corners 0 and 1 (approach first, then exit).
        const int before = side == Side::Left ? 3 : 0;
        const int after = side == Side::Left ? 2 : 1;
        const FaceId fb = f.at_corner(ps.crossing, before);
        const FaceId fa = f.at_corner(ps.crossing, after);
        w.push_back(Letter(fb, +1, col.of(fb)));
        w.push_back(Letter(fa, -1, col.of(fa)));
    }
    return w;
}

/// Positive meridian at the given arc: down through the region on the left of
/// the arc, up through the region on the right.
inline Word meridian_word(const Diagram& d, const FaceSet& f, const Colouring& col, int comp,
                          EdgeId arc) {
    if (d.component_is_circle(comp)) {
        // A bare circle has two regions and no arcs to name.
        if (d.crossing_count() != 0 || f.count() != 2)
            throw ArcNotOnComponent("circle components of mixed diagrams carry no arcs");
        Word w;
        w.push_back(Letter(1, +1, col.of(1)));
        w.push_back(Letter(2, -1, col.of(2)));
        return w;
    }
    if (arc < 1 || arc > d.edge_count() || d.edge_component(arc) != comp)
        throw ArcNotOnComponent("arc " + std::to_string(arc) + " is not on the component");
    const FaceId fl = f.left_face[static_cast<std::size_t>(arc - 1)];
    const FaceId fr = f.right_face[static_cast<std::size_t>(arc - 1)];
    Word w;
    w.push_back(Letter(fl, +1, col.of(fl)));
    w.push_back(Letter(fr, -1, col.of(fr)));
    return w;
}

/// Assembles the longitude representative: left push-off, meridian based at
/// the component's lowest-numbered edge, framing exponent -slk.
inline LongitudeRep longitude(const Diagram& d, const FaceSet& f, const Colouring& col,
                              int comp) {
    LongitudeRep rep;
    rep.component = comp;
    rep.double_word = double_word(d, f, col, comp, Side::Left);
    rep.double_length = static_cast<int>(rep.double_word.size());
    rep.slk = self_linking(d, comp);
    if (d.component_is_circle(comp)) {
        rep.meridian_word =
            d.crossing_count() == 0 && d.circle_count() == 1 ? meridian_word(d, f, col, comp, 0)
                                                             : Word{};
        return rep;
    }
    const EdgeId base_arc = d.component_edges(comp).front();
    rep.meridian_word = meridian_word(d, f, col, comp, base_arc);

    Word w = rep.double_word;
    const Word m = rep.slk >= 0 ? inverse(rep.meridian_word) : rep.meridian_word;
    for (int i = 0; i < (rep.slk >= 0 ? rep.slk : -rep.slk); ++i) w = concat(w, m);
    rep.longitude_word = free_reduce(w);
    return rep;
}

struct NormalFormOptions {
    std::size_t max_states = 200000;
};

/// Searches for a word equal to the longitude with at most one parity change:
/// geodesic reduction first, then breadth-first search over length-preserving
/// half-relator swaps (replace x_a x_b^{-1} by x_d x_c^{-1} whenever
/// x_a x_b^{-1} x_c x_d^{-1} is a symmetrized relator). Returns nothing if the
/// bounded search exhausts without success.
inline std::optional<Word> normal_form(const LongitudeRep& rep, const Presentation& p,
                                       const NormalFormOptions& opts = {}) {
    if (rep.longitude_word.empty()) return Word{};
    if (!p.small_cancellation_verified())
        throw PreconditionViolated("normal_form requires a verified C(4)-T(4) presentation");

    const Word start = geodesic_reduce(rep.longitude_word, p);
    if (parity_changes(start) <= 1) return start;

    std::set<Word> seen{start};
    std::vector<Word> queue{start};
    std::size_t qi = 0;
    while (qi < queue.size() && seen.size() < opts.max_states) {
        const Word cur = queue[qi++];
        for (std::size_t i = 0; i + 1 < cur.size(); ++i) {
            for (int ri : p.with_prefix_pair(cur[i], cur[i + 1])) {
                const Relator& r = p.symmetrized()[static_cast<std::size_t>(ri)];
                Word next = cur;
                next.letters[i] = r[3].inverse();
                next.letters[i + 1] = r[2].inverse();
                if (!seen.insert(next).second) continue;
                if (parity_changes(next) <= 1) return next;
                queue.push_back(next);
            }
        }
    }
    return std::nullopt;
}

} // namespace linkcert
