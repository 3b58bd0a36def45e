#pragma once

#include <algorithm>
#include <vector>

#include "linkcert/diagram.hpp"
#include "linkcert/errors.hpp"
#include "linkcert/word.hpp"

namespace linkcert {

using FaceId = int; // 1-based

/// The regions of the diagram, traced from the rotation system. Corner k of a
/// crossing is the region between slots k and k+1 (mod 4).
struct FaceSet {
    struct Item {
        EdgeId edge;
        Side side; // side of the edge relative to its orientation
    };
    struct Face {
        std::vector<Item> items;                    // boundary traversal
        std::vector<std::pair<int, int>> corners;   // (crossing, corner index)
    };

    std::vector<Face> faces;                  // index = face id - 1
    std::vector<std::array<FaceId, 4>> corner_face; // per crossing
    std::vector<FaceId> left_face;            // per edge (index = id - 1)
    std::vector<FaceId> right_face;

    int count() const { return static_cast<int>(faces.size()); }
    FaceId at_corner(int crossing, int corner) const {
        return corner_face[static_cast<std::size_t>(crossing)][static_cast<std::size_t>(corner)];
    }
};

namespace detail {

/// Face tracing without the connectivity gate; orbits never mix graph
/// components, so this is also valid on split diagrams.
inline FaceSet trace_faces_internal(const Diagram& d) {
    const int c = d.crossing_count();
    FaceSet fs;
    fs.corner_face.assign(static_cast<std::size_t>(c), {0, 0, 0, 0});
    fs.left_face.assign(static_cast<std::size_t>(d.edge_count()), 0);
    fs.right_face.assign(static_cast<std::size_t>(d.edge_count()), 0);
    if (c == 0) {
        // A single marked circle bounds two regions and has no corners.
        fs.faces.resize(2);
        return fs;
    }

    // A dart is an arrival end (crossing, slot). Walking with the face on the
    // left: arrive at slot s, depart from slot s-1 (mod 4), traverse that edge.
    std::vector<std::array<bool, 4>> seen(static_cast<std::size_t>(c), {false, false, false, false});
    for (int c0 = 0; c0 < c; ++c0) {
        for (int s0 = 0; s0 < 4; ++s0) {
            if (seen[static_cast<std::size_t>(c0)][static_cast<std::size_t>(s0)]) continue;
            FaceSet::Face face;
            const FaceId id = static_cast<FaceId>(fs.faces.size()) + 1;
            int ci = c0, s = s0;
            do {
                seen[static_cast<std::size_t>(ci)][static_cast<std::size_t>(s)] = true;
                // Arrived at (ci, s) along the edge in slot s.
                const EdgeId e = d.crossing(ci).edge[static_cast<std::size_t>(s)];
                const bool with_orientation =
                    d.edge_head(e).crossing == ci && d.edge_head(e).slot == s;
                face.items.push_back({e, with_orientation ? Side::Left : Side::Right});
                if (with_orientation)
                    fs.left_face[static_cast<std::size_t>(e - 1)] = id;
                else
                    fs.right_face[static_cast<std::size_t>(e - 1)] = id;
                const int corner = (s + 3) % 4;
                face.corners.emplace_back(ci, corner);
                fs.corner_face[static_cast<std::size_t>(ci)][static_cast<std::size_t>(corner)] = id;
                // Depart through slot s-1 and follow its edge to the far end.
                const int depart = (s + 3) % 4;
                const EdgeId en = d.crossing(ci).edge[static_cast<std::size_t>(depart)];
                EdgeEnd far = d.edge_head(en);
                if (far.crossing == ci && far.slot == depart) far = d.edge_tail(en);
                ci = far.crossing;
                s = far.slot;
            } while (!(ci == c0 && s == s0));
            fs.faces.push_back(std::move(face));
        }
    }
    return fs;
}

} // namespace detail

/// Traces the regions of a connected diagram. The count satisfies Euler's
/// relation F = c + 2.
inline FaceSet trace_faces(const Diagram& d) {
    if (!d.is_connected()) throw NotConnected("trace_faces requires a connected diagram");
    FaceSet fs = detail::trace_faces_internal(d);
    if (fs.count() != d.crossing_count() + 2)
        throw ValidationError("diagram is not planar: face count " + std::to_string(fs.count()) +
                              " != c + 2");
    return fs;
}

/// Proper two-colouring of the regions. Normalized so that the face holding
/// the lowest edge label on its left side is white.
struct Colouring {
    std::vector<Colour> colour; // index = face id - 1

    Colour of(FaceId f) const { return colour[static_cast<std::size_t>(f - 1)]; }
};

inline Colouring checkerboard(const FaceSet& fs) {
    Colouring col;
    col.colour.assign(static_cast<std::size_t>(fs.count()), Colour::White);
    if (fs.left_face.empty()) {
        // Circle with no crossings: first face white, second black.
        if (fs.count() == 2) col.colour[1] = Colour::Black;
        return col;
    }

    std::vector<int> mark(static_cast<std::size_t>(fs.count()), -1);
    const FaceId start = fs.left_face[0]; // face left of edge 1
    mark[static_cast<std::size_t>(start - 1)] = 0;
    std::vector<FaceId> queue{start};
    while (!queue.empty()) {
        FaceId f = queue.back();
        queue.pop_back();
        const int m = mark[static_cast<std::size_t>(f - 1)];
        for (const auto& item : fs.faces[static_cast<std::size_t>(f - 1)].items) {
            const FaceId g = item.side == Side::Left
                                 ? fs.right_face[static_cast<std::size_t>(item.edge - 1)]
                                 : fs.left_face[static_cast<std::size_t>(item.edge - 1)];
            int& gm = mark[static_cast<std::size_t>(g - 1)];
            if (gm < 0) {
                gm = 1 - m;
                queue.push_back(g);
            } else if (gm == m) {
                throw InternalInconsistency("region adjacency is not two-colourable");
            }
        }
    }
    for (int i = 0; i < fs.count(); ++i) {
        if (mark[static_cast<std::size_t>(i)] < 0)
            throw InternalInconsistency("checkerboard colouring requires a connected diagram");
        col.colour[static_cast<std::size_t>(i)] =
            mark[static_cast<std::size_t>(i)] == 0 ? Colour::White : Colour::Black;
    }
    return col;
}

} // namespace linkcert
