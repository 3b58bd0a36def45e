#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <deque>
#include <functional>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <vector>

#include "linkcert/presentation.hpp"
#include "linkcert/word.hpp"

namespace linkcert {

/// Permutation of {0..degree-1}, degree at most 6.
struct Perm {
    static constexpr int kMaxDegree = 6;
    std::array<std::uint8_t, kMaxDegree> map{0, 1, 2, 3, 4, 5};
    int degree = 1;

    static Perm identity(int deg) {
        Perm p;
        p.degree = deg;
        return p;
    }
    bool is_identity() const {
        for (int i = 0; i < degree; ++i)
            if (map[static_cast<std::size_t>(i)] != i) return false;
        return true;
    }
    /// (a.then(b))(x) = b(a(x))
    Perm then(const Perm& other) const {
        Perm r;
        r.degree = degree;
        for (int i = 0; i < degree; ++i)
            r.map[static_cast<std::size_t>(i)] =
                other.map[map[static_cast<std::size_t>(i)]];
        return r;
    }
    Perm inverse() const {
        Perm r;
        r.degree = degree;
        for (int i = 0; i < degree; ++i) r.map[map[static_cast<std::size_t>(i)]] = static_cast<std::uint8_t>(i);
        return r;
    }
    friend bool operator==(const Perm& a, const Perm& b) {
        return a.degree == b.degree &&
               std::equal(a.map.begin(), a.map.begin() + a.degree, b.map.begin());
    }
    friend bool operator<(const Perm& a, const Perm& b) { return a.map < b.map; }
};

/// Image of a word under a generator assignment (indexed by face id - 1).
inline Perm word_image(const Word& w, const std::vector<Perm>& assign, int degree) {
    Perm img = Perm::identity(degree);
    for (const Letter& l : w.letters) {
        const Perm& g = assign[static_cast<std::size_t>(l.face - 1)];
        img = img.then(l.sign > 0 ? g : g.inverse());
    }
    return img;
}

enum class SearchVerdict { Identity, Unknown };

/// Breadth-first search from the free reduction of w over relator splices and
/// free reduction, pruned at words longer than max_len; Identity iff the empty
/// word is reached within max_steps expansions. Inconclusive bounds yield
/// Unknown.
inline SearchVerdict bounded_identity_search(const Word& w, const Presentation& p, int max_len,
                                             int max_steps) {
    Word start = free_reduce(w);
    if (start.empty()) return SearchVerdict::Identity;
    if (static_cast<int>(start.size()) > max_len) return SearchVerdict::Unknown;

    std::set<Word> seen{start};
    std::deque<Word> queue{start};
    int steps = 0;
    while (!queue.empty() && steps < max_steps) {
        const Word cur = queue.front();
        queue.pop_front();
        ++steps;
        for (const Relator& r : p.symmetrized()) {
            const Word rw = r.word();
            for (std::size_t pos = 0; pos <= cur.size(); ++pos) {
                Word spliced;
                spliced.letters.reserve(cur.size() + 4);
                spliced.letters.insert(spliced.letters.end(), cur.letters.begin(),
                                       cur.letters.begin() + static_cast<std::ptrdiff_t>(pos));
                spliced.letters.insert(spliced.letters.end(), rw.letters.begin(), rw.letters.end());
                spliced.letters.insert(spliced.letters.end(),
                                       cur.letters.begin() + static_cast<std::ptrdiff_t>(pos),
                                       cur.letters.end());
                Word red = free_reduce(spliced);
                if (red.empty()) return SearchVerdict::Identity;
                if (static_cast<int>(red.size()) > max_len) continue;
                if (seen.insert(red).second) queue.push_back(red);
            }
        }
    }
    return SearchVerdict::Unknown;
}

/// A sound proof that a word is non-trivial: a finite symmetric-group quotient
/// in which every base relator maps to the identity but the word does not.
struct QuotientWitness {
    int degree = 0;
    std::vector<Perm> assignment; // indexed by face id - 1
    Perm image;
};

namespace detail {

/// Enumerates assignments satisfying every base relator at a fixed degree.
/// Relators with exactly one unassigned generator determine it, so branching
/// happens only on genuinely free generators. Returns false to stop early.
inline bool enumerate_quotients_at_degree(const Presentation& p, int degree,
                                          const std::function<bool(const std::vector<Perm>&)>& visit) {
    const int ngen = static_cast<int>(p.generators().size());
    std::vector<Perm> all;
    {
        std::array<std::uint8_t, Perm::kMaxDegree> base{0, 1, 2, 3, 4, 5};
        std::vector<std::uint8_t> idx(base.begin(), base.begin() + degree);
        std::sort(idx.begin(), idx.end());
        do {
            Perm q;
            q.degree = degree;
            std::copy(idx.begin(), idx.end(), q.map.begin());
            all.push_back(q);
        } while (std::next_permutation(idx.begin(), idx.end()));
    }

    std::vector<Perm> assign(static_cast<std::size_t>(ngen));
    std::vector<bool> set(static_cast<std::size_t>(ngen), false);

    auto relator_check = [&](const Relator& r, int* unknown_face) -> int {
        // Returns number of unassigned letters; records one unknown face.
        int unassigned = 0;
        for (const Letter& l : r.letters) {
            if (!set[static_cast<std::size_t>(l.face - 1)]) {
                ++unassigned;
                if (unknown_face) *unknown_face = l.face;
            }
        }
        return unassigned;
    };
    auto relator_satisfied = [&](const Relator& r) {
        return word_image(r.word(), assign, degree).is_identity();
    };
    auto solve_unknown = [&](const Relator& r, int face) -> std::optional<Perm> {
        // A * g^s * B = id with g the unknown (appearing once).
        Perm a = Perm::identity(degree), b = Perm::identity(degree);
        int sign = 0;
        bool before = true;
        for (const Letter& l : r.letters) {
            if (l.face == face && sign == 0) {
                sign = l.sign;
                before = false;
                continue;
            }
            const Perm& g = assign[static_cast<std::size_t>(l.face - 1)];
            const Perm img = l.sign > 0 ? g : g.inverse();
            if (before)
                a = a.then(img);
            else
                b = b.then(img);
        }
        // a * g^s * b = id under left-to-right composition, so g^s = a^-1 * b^-1.
        Perm v = a.inverse().then(b.inverse());
        if (sign < 0) v = v.inverse();
        return v;
    };

    std::function<bool()> go = [&]() -> bool {
        // Propagate: any relator with exactly one unknown pins it.
        for (const Relator& r : p.base_relators()) {
            int face = 0;
            const int unassigned = relator_check(r, &face);
            if (unassigned == 0) {
                if (!relator_satisfied(r)) return true; // dead branch, keep searching
                continue;
            }
            if (unassigned != 1) continue;
            int occurrences = 0;
            for (const Letter& l : r.letters)
                if (l.face == face) ++occurrences;
            if (occurrences != 1) continue; // cannot solve linearly, branch later
            auto v = solve_unknown(r, face);
            assign[static_cast<std::size_t>(face - 1)] = *v;
            set[static_cast<std::size_t>(face - 1)] = true;
            const bool keep = go();
            set[static_cast<std::size_t>(face - 1)] = false;
            return keep;
        }
        // No single-unknown relator: branch on the first unassigned generator.
        int face = 0;
        for (const Generator& g : p.generators()) {
            if (!set[static_cast<std::size_t>(g.face - 1)]) {
                face = g.face;
                break;
            }
        }
        if (face == 0) {
            for (const Relator& r : p.base_relators())
                if (!relator_satisfied(r)) return true;
            return visit(assign);
        }
        for (const Perm& q : all) {
            assign[static_cast<std::size_t>(face - 1)] = q;
            set[static_cast<std::size_t>(face - 1)] = true;
            const bool keep = go();
            set[static_cast<std::size_t>(face - 1)] = false;
            if (!keep) return false;
        }
        return true;
    };
    return go();
}

} // namespace detail

/// Visits satisfying assignments gen -> S_degree until the callback returns
/// false or the search space is exhausted.
inline void enumerate_quotients(const Presentation& p, int degree,
                                const std::function<bool(const std::vector<Perm>&)>& visit) {
    detail::enumerate_quotients_at_degree(p, degree, visit);
}

/// Depth-first search over permutation assignments of degree 2..max_degree
/// satisfying all base relators; returns the first one mapping w to a
/// non-identity permutation. A returned witness soundly proves w != identity.
inline std::optional<QuotientWitness> finite_quotient_witness(const Word& w, const Presentation& p,
                                                              int max_degree) {
    if (max_degree > Perm::kMaxDegree)
        throw UnsupportedParameter("witness search supports degree at most 6");
    std::optional<QuotientWitness> found;
    for (int degree = 2; degree <= max_degree && !found; ++degree) {
        detail::enumerate_quotients_at_degree(p, degree, [&](const std::vector<Perm>& assign) {
            const Perm img = word_image(w, assign, degree);
            if (img.is_identity()) return true;
            found = QuotientWitness{degree, assign, img};
            return false;
        });
    }
    return found;
}

} // namespace linkcert
