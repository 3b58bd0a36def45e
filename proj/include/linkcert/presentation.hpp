#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "linkcert/diagram.hpp"
#include "linkcert/errors.hpp"
#include "linkcert/faces.hpp"
#include "linkcert/reduce.hpp"
#include "linkcert/word.hpp"

namespace linkcert {

struct Generator {
    FaceId face;
    Colour parity;
};

/// Length-4 relator with exponent pattern (+,-,+,-) up to rotation and
/// inversion; parities strictly alternate.
struct Relator {
    std::array<Letter, 4> letters;

    const Letter& operator[](std::size_t i) const { return letters[i]; }

    Relator rotated(int k) const {
        Relator r;
        for (int i = 0; i < 4; ++i)
            r.letters[static_cast<std::size_t>(i)] = letters[static_cast<std::size_t>((i + k) % 4)];
        return r;
    }
    Relator inverted() const {
        Relator r;
        for (int i = 0; i < 4; ++i)
            r.letters[static_cast<std::size_t>(i)] = letters[static_cast<std::size_t>(3 - i)].inverse();
        return r;
    }
    Word word() const { return Word(std::vector<Letter>(letters.begin(), letters.end())); }

    friend bool operator==(const Relator& a, const Relator& b) { return a.letters == b.letters; }
    friend bool operator<(const Relator& a, const Relator& b) { return a.letters < b.letters; }
};

/// A common prefix of two distinct symmetrized relators.
struct Piece {
    Word word;
    int occurrences; // number of symmetrized relators with this prefix
};

/// Symmetrized augmented Dehn presentation: one generator per region, one
/// base relator per crossing, closed under cyclic permutation and inversion.
/// Piece structure and the small-cancellation verdicts are derived eagerly so
/// the value stays immutable.
class Presentation {
public:
    static Presentation from_relators(std::vector<Generator> generators,
                                      std::vector<Relator> base);

    const std::vector<Generator>& generators() const { return generators_; }
    const std::vector<Relator>& base_relators() const { return base_; }
    const std::vector<Relator>& symmetrized() const { return symmetrized_; }

    Colour parity(FaceId f) const;
    Letter letter(FaceId f, int sign) const { return Letter(f, sign, parity(f)); }

    int max_piece_length() const { return max_piece_len_; }
    bool satisfies_c4() const { return c4_; }
    bool satisfies_t4() const { return t4_; }
    bool small_cancellation_verified() const { return c4_ && t4_; }

    /// Symmetrized relators whose first two letters are (a, b).
    const std::vector<int>& with_prefix_pair(const Letter& a, const Letter& b) const {
        static const std::vector<int> none;
        auto it = pair_index_.find(pair_key(a, b));
        return it == pair_index_.end() ? none : it->second;
    }
    int inverse_index(int relator) const { return inverse_index_[static_cast<std::size_t>(relator)]; }

    /// Number of symmetrized relators having w as a prefix.
    int prefix_count(const Word& w) const {
        int n = 0;
        for (const Relator& r : symmetrized_) {
            if (w.size() > 4) continue;
            bool ok = true;
            for (std::size_t i = 0; i < w.size(); ++i)
                if (!(r[i] == w[i])) {
                    ok = false;
                    break;
                }
            if (ok) ++n;
        }
        return n;
    }

private:
    std::vector<Generator> generators_;
    std::vector<Relator> base_;
    std::vector<Relator> symmetrized_;
    std::map<std::uint64_t, std::vector<int>> pair_index_;
    std::vector<int> inverse_index_;
    int max_piece_len_ = 0;
    bool c4_ = false, t4_ = false;

    static std::uint64_t letter_key(const Letter& l) {
        return (static_cast<std::uint64_t>(l.face) << 1) | (l.sign < 0 ? 1u : 0u);
    }
    static std::uint64_t pair_key(const Letter& a, const Letter& b) {
        return (letter_key(a) << 32) | letter_key(b);
    }

    void derive();
    friend bool check_C(const Presentation&, int);
    friend bool check_T(const Presentation&, int);
};

inline Colour Presentation::parity(FaceId f) const {
    for (const Generator& g : generators_)
        if (g.face == f) return g.parity;
    throw ValidationError("unknown generator " + std::to_string(f));
}

inline Presentation Presentation::from_relators(std::vector<Generator> generators,
                                                std::vector<Relator> base) {
    Presentation p;
    p.generators_ = std::move(generators);
    p.base_ = std::move(base);
    p.derive();
    return p;
}

inline void Presentation::derive() {
    std::set<Relator> sym;
    for (const Relator& r : base_) {
        const Word w = r.word();
        if (!(free_reduce(w) == w) || w[3] == w[0].inverse())
            throw ValidationError("relator is not freely and cyclically reduced");
        const Relator inv = r.inverted();
        for (int k = 0; k < 4; ++k) {
            sym.insert(r.rotated(k));
            sym.insert(inv.rotated(k));
        }
    }
    symmetrized_.assign(sym.begin(), sym.end());

    pair_index_.clear();
    for (std::size_t i = 0; i < symmetrized_.size(); ++i)
        pair_index_[pair_key(symmetrized_[i][0], symmetrized_[i][1])].push_back(
            static_cast<int>(i));

    inverse_index_.assign(symmetrized_.size(), -1);
    for (std::size_t i = 0; i < symmetrized_.size(); ++i) {
        const Relator inv = symmetrized_[i].inverted();
        const auto it = std::lower_bound(symmetrized_.begin(), symmetrized_.end(), inv);
        if (it == symmetrized_.end() || !(*it == inv))
            throw InternalInconsistency("symmetrized set is not inversion-closed");
        inverse_index_[i] = static_cast<int>(it - symmetrized_.begin());
    }

    // Maximal common prefix length over distinct pairs.
    max_piece_len_ = 0;
    const std::size_t n = symmetrized_.size();
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            int l = 0;
            while (l < 4 && symmetrized_[i][static_cast<std::size_t>(l)] ==
                                symmetrized_[j][static_cast<std::size_t>(l)])
                ++l;
            max_piece_len_ = std::max(max_piece_len_, l);
        }
    }

    c4_ = n > 0 && check_C(*this, 4);
    t4_ = n > 0 && check_T(*this, 4);
}

/// All maximal common prefixes between distinct symmetrized relators, with the
/// number of relators sharing each.
inline std::vector<Piece> compute_pieces(const Presentation& p) {
    if (p.symmetrized().empty())
        throw PreconditionViolated("compute_pieces requires a nonempty symmetrized set");
    std::map<Word, int> found;
    const auto& sym = p.symmetrized();
    for (std::size_t i = 0; i < sym.size(); ++i) {
        for (std::size_t j = i + 1; j < sym.size(); ++j) {
            int l = 0;
            while (l < 4 && sym[i][static_cast<std::size_t>(l)] == sym[j][static_cast<std::size_t>(l)]) ++l;
            if (l == 0) continue;
            Word w;
            for (int k = 0; k < l; ++k) w.push_back(sym[i][static_cast<std::size_t>(k)]);
            found.emplace(w, 0);
        }
    }
    std::vector<Piece> pieces;
    for (auto& [w, cnt] : found) pieces.push_back(Piece{w, p.prefix_count(w)});
    return pieces;
}

/// True iff no symmetrized relator is a concatenation of fewer than k pieces.
inline bool check_C(const Presentation& p, int k) {
    for (const Relator& r : p.symmetrized()) {
        // dp[i] = least number of pieces covering the first i letters.
        std::array<int, 5> dp{0, 99, 99, 99, 99};
        for (int i = 0; i < 4; ++i) {
            if (dp[static_cast<std::size_t>(i)] >= 99) continue;
            Word w;
            for (int j = i; j < 4; ++j) {
                w.push_back(r[static_cast<std::size_t>(j)]);
                if (p.prefix_count(w) >= 2)
                    dp[static_cast<std::size_t>(j + 1)] = std::min(
                        dp[static_cast<std::size_t>(j + 1)], dp[static_cast<std::size_t>(i)] + 1);
            }
        }
        if (dp[4] < k) return false;
    }
    return true;
}

/// T(4): every triple of symmetrized relators with no consecutive pair inverse
/// has at least one junction that is freely reduced.
inline bool check_T(const Presentation& p, int q) {
    if (q != 4) throw UnsupportedParameter("only T(4) is supported");
    const auto& sym = p.symmetrized();
    if (sym.empty()) throw PreconditionViolated("check_T requires a nonempty symmetrized set");
    const int n = static_cast<int>(sym.size());
    auto cancels = [&](int a, int b) { return sym[static_cast<std::size_t>(b)][0] ==
                                              sym[static_cast<std::size_t>(a)][3].inverse(); };
    for (int a = 0; a < n; ++a) {
        for (int b = 0; b < n; ++b) {
            if (b == p.inverse_index(a)) continue;
            if (!cancels(a, b)) continue;
            for (int c = 0; c < n; ++c) {
                if (c == p.inverse_index(b) || a == p.inverse_index(c)) continue;
                if (cancels(b, c) && cancels(c, a)) return false;
            }
        }
    }
    return true;
}

/// Builds the augmented Dehn presentation: one generator per region and, from
/// each crossing, the relator reading the four corner regions counterclockwise
/// from the corner between the incoming under-edge and the counterclockwise-
/// adjacent over-edge, with exponents (+,-,+,-). This anchoring pairs the
/// regions across the over-strand; it is the choice under which a meridian
/// slides under an over-arc consistently, and it is validated by the
/// longitude-meridian commutation and abelianization checks in the tests.
inline Presentation build_presentation(const Diagram& d, const FaceSet& f, const Colouring& col) {
    if (!d.is_connected() || d.crossing_count() < 1)
        throw PreconditionViolated("build_presentation requires a connected diagram with crossings");
    if (!is_reduced(d))
        throw PreconditionViolated("build_presentation requires a reduced diagram");

    std::vector<Generator> gens;
    for (FaceId id = 1; id <= f.count(); ++id) gens.push_back(Generator{id, col.of(id)});

    std::vector<Relator> base;
    for (int ci = 0; ci < d.crossing_count(); ++ci) {
        Relator r;
        for (int corner = 0; corner < 4; ++corner) {
            const FaceId face = f.at_corner(ci, corner);
            const int sign = corner % 2 == 0 ? +1 : -1;
            r.letters[static_cast<std::size_t>(corner)] = Letter(face, sign, col.of(face));
        }
        base.push_back(r);
    }
    return Presentation::from_relators(std::move(gens), std::move(base));
}

/// Integer relation matrix: one row per base relator, one column per
/// generator, entries the signed incidence.
inline std::vector<std::vector<long long>> relation_matrix(const Presentation& p) {
    std::vector<std::vector<long long>> m;
    for (const Relator& r : p.base_relators()) {
        std::vector<long long> row(p.generators().size(), 0);
        for (const Letter& l : r.letters) row[static_cast<std::size_t>(l.face - 1)] += l.sign;
        m.push_back(std::move(row));
    }
    return m;
}

/// Rank of an integer matrix by fraction-free (Bareiss) elimination.
inline int integer_rank(std::vector<std::vector<long long>> m) {
    if (m.empty()) return 0;
    const std::size_t rows = m.size(), cols = m[0].size();
    long long prev = 1;
    std::size_t rank = 0;
    for (std::size_t col = 0; col < cols && rank < rows; ++col) {
        std::size_t pivot = rank;
        while (pivot < rows && m[pivot][col] == 0) ++pivot;
        if (pivot == rows) continue;
        std::swap(m[rank], m[pivot]);
        for (std::size_t i = rank + 1; i < rows; ++i) {
            for (std::size_t j = col + 1; j < cols; ++j)
                m[i][j] = (m[rank][col] * m[i][j] - m[i][col] * m[rank][j]) / prev;
            m[i][col] = 0;
        }
        prev = m[rank][col];
        ++rank;
    }
    return static_cast<int>(rank);
}

/// Free rank of the cokernel of the relation matrix. For diagram-derived
/// presentations this equals the number of link components plus one.
inline int abelianization_free_rank(const Presentation& p) {
    return static_cast<int>(p.generators().size()) - integer_rank(relation_matrix(p));
}

/// Plain-text dump: `gen <id> parity <W|B>` lines then `rel <l1> <l2> <l3>
/// <l4>` lines with signed generator tokens.
inline std::string presentation_dump(const Presentation& p) {
    std::ostringstream os;
    for (const Generator& g : p.generators())
        os << "gen " << g.face << " parity " << colour_char(g.parity) << "\n";
    for (const Relator& r : p.base_relators()) {
        os << "rel";
        for (const Letter& l : r.letters) os << ' ' << l.sign * l.face;
        os << "\n";
    }
    return os.str();
}

/// Parses the word text format (whitespace-separated signed face ids) against
/// a presentation, attaching parities.
inline Word parse_word_text(const std::string& text, const Presentation& p) {
    Word w;
    std::istringstream is(text);
    std::string tok;
    while (is >> tok) {
        int v = 0;
        try {
            std::size_t used = 0;
            v = std::stoi(tok, &used);
            if (used != tok.size()) throw std::invalid_argument(tok);
        } catch (const std::exception&) {
            throw ParseError("invalid word token '" + tok + "'");
        }
        if (v == 0) throw ParseError("word tokens must be nonzero signed face ids");
        const int face = v > 0 ? v : -v;
        w.push_back(p.letter(face, v > 0 ? +1 : -1));
    }
    return w;
}

} // namespace linkcert
