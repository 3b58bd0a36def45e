#pragma once

#include <map>
#include <optional>
#include <vector>

#include "linkcert/errors.hpp"
#include "linkcert/presentation.hpp"
#include "linkcert/word.hpp"

namespace linkcert {

/// A ladder of n length-4 cells found inside a host word. The host subword
/// t_0 t_1 ... t_{n+1} starting at `start` satisfies t_0 = v_0,
/// t_{n+1} = v_n^{-1}, and each cell word v_{i-1} t_i v_i^{-1} b_i^{-1} is a
/// symmetrized relator. Replacing the subword by `replacement` (the bottom
/// letters b_1..b_n) shortens the host by two and preserves the group element.
struct ChainMatch {
    std::size_t start = 0;
    int n = 0;
    std::vector<Relator> relators_used; // cell words, left to right
    std::vector<Letter> verticals;      // v_0 .. v_n
    Word replacement;                   // b_1 .. b_n
};

/// Finds the leftmost, then shortest, chain subword. The scan advances a set
/// of feasible vertical letters one host letter at a time through all relators
/// of the form v t v'^{-1} b^{-1}, accepting when the next host letter inverts
/// a feasible vertical.
inline std::optional<ChainMatch> find_chain(const Word& w, const Presentation& p) {
    const std::size_t len = w.size();
    if (len < 3) return std::nullopt;

    struct Parent {
        Letter prev;
        int relator;
    };
    for (std::size_t s = 0; s + 2 < len; ++s) {
        // Layer i holds the feasible verticals v_i with back-pointers.
        std::vector<std::map<Letter, Parent>> layers;
        layers.push_back({{w[s], Parent{w[s], -1}}});
        for (std::size_t i = 1; s + i + 1 < len; ++i) {
            const Letter t = w[s + i];
            std::map<Letter, Parent> next;
            for (const auto& [v, parent] : layers.back()) {
                for (int ri : p.with_prefix_pair(v, t)) {
                    const Relator& r = p.symmetrized()[static_cast<std::size_t>(ri)];
                    const Letter vi = r[2].inverse();
                    // Deterministic tie-break: keep the smallest relator index.
                    auto it = next.find(vi);
                    if (it == next.end() || ri < it->second.relator ||
                        (ri == it->second.relator && v < it->second.prev))
                        next[vi] = Parent{v, ri};
                }
            }
            if (next.empty()) break;
            layers.push_back(std::move(next));

            const Letter want = w[s + i + 1].inverse();
            auto hit = layers.back().find(want);
            if (hit == layers.back().end()) continue;

            ChainMatch m;
            m.start = s;
            m.n = static_cast<int>(i);
            // Walk back-pointers to recover cells and bottom letters.
            std::vector<Letter> vs(i + 1);
            std::vector<int> rel(i);
            Letter cur = want;
            vs[i] = cur;
            for (std::size_t k = i; k >= 1; --k) {
                const Parent& par = layers[k].at(cur);
                rel[k - 1] = par.relator;
                cur = par.prev;
                vs[k - 1] = cur;
            }
            m.verticals = vs;
            for (std::size_t k = 0; k < i; ++k) {
                const Relator& r = p.symmetrized()[static_cast<std::size_t>(rel[k])];
                m.relators_used.push_back(r);
                m.replacement.push_back(r[3].inverse());
            }
            return m;
        }
    }
    return std::nullopt;
}

/// Geodesic iff freely reduced and chain-free.
inline bool is_geodesic(const Word& w, const Presentation& p) {
    return is_freely_reduced(w) && !find_chain(w, p).has_value();
}

inline Word apply_chain(const Word& w, const ChainMatch& m) {
    Word out;
    out.letters.reserve(w.size() - 2);
    out.letters.insert(out.letters.end(), w.letters.begin(),
                       w.letters.begin() + static_cast<std::ptrdiff_t>(m.start));
    out.letters.insert(out.letters.end(), m.replacement.letters.begin(),
                       m.replacement.letters.end());
    out.letters.insert(out.letters.end(),
                       w.letters.begin() + static_cast<std::ptrdiff_t>(m.start + static_cast<std::size_t>(m.n) + 2),
                       w.letters.end());
    return out;
}

/// Applies free reduction and chain replacement until the word is geodesic.
/// The group element is preserved and the length never grows.
inline Word geodesic_reduce(const Word& w, const Presentation& p) {
    Word cur = free_reduce(w);
    while (auto m = find_chain(cur, p)) cur = free_reduce(apply_chain(cur, *m));
    return cur;
}

/// Complete decision procedure for the word problem, valid once the
/// presentation has passed the C(4) and T(4) checks.
inline bool is_identity(const Word& w, const Presentation& p) {
    if (!p.small_cancellation_verified())
        throw PreconditionViolated("is_identity requires a verified C(4)-T(4) presentation");
    return geodesic_reduce(w, p).empty();
}

inline bool words_equal(const Word& u, const Word& v, const Presentation& p) {
    return is_identity(concat(u, inverse(v)), p);
}

} // namespace linkcert
