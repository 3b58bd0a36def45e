#pragma once

#include <cstdint>
#include <sstream>
#include <string>
#include <vector>

namespace linkcert {

enum class Colour : std::uint8_t { White, Black };

enum class Side : std::uint8_t { Left, Right };

inline char colour_char(Colour c) { return c == Colour::White ? 'W' : 'B'; }

/// A signed occurrence of a region generator. Parity is the checkerboard
/// colour of the region and is shared by a generator and its inverse.
struct Letter {
    int face = 0;
    int sign = +1; // +1 or -1
    Colour parity = Colour::White;

    Letter() = default;
    Letter(int f, int s, Colour p) : face(f), sign(s), parity(p) {}

    Letter inverse() const { return Letter(face, -sign, parity); }

    friend bool operator==(const Letter& a, const Letter& b) {
        return a.face == b.face && a.sign == b.sign;
    }
    friend bool operator!=(const Letter& a, const Letter& b) { return !(a == b); }
    friend bool operator<(const Letter& a, const Letter& b) {
        if (a.face != b.face) return a.face < b.face;
        return a.sign < b.sign;
    }
};

/// A word in the region alphabet; the empty word is the identity.
struct Word {
    std::vector<Letter> letters;

    Word() = default;
    explicit Word(std::vector<Letter> ls) : letters(std::move(ls)) {}

    std::size_t size() const { return letters.size(); }
    bool empty() const { return letters.empty(); }
    const Letter& operator[](std::size_t i) const { return letters[i]; }

    void push_back(const Letter& l) { letters.push_back(l); }

    friend bool operator==(const Word& a, const Word& b) { return a.letters == b.letters; }
    friend bool operator!=(const Word& a, const Word& b) { return !(a == b); }
    friend bool operator<(const Word& a, const Word& b) { return a.letters < b.letters; }
};

inline Word concat(const Word& a, const Word& b) {
    Word r = a;
    r.letters.insert(r.letters.end(), b.letters.begin(), b.letters.end());
    return r;
}

inline Word inverse(const Word& w) {
    Word r;
    r.letters.reserve(w.size());
    for (auto it = w.letters.rbegin(); it != w.letters.rend(); ++it)
        r.letters.push_back(it->inverse());
    return r;
}

/// Removes adjacent inverse pairs until none remain. The result is the unique
/// free reduction of the input.
inline Word free_reduce(const Word& w) {
    Word out;
    out.letters.reserve(w.size());
    for (const Letter& l : w.letters) {
        if (!out.empty() && out.letters.back() == l.inverse())
            out.letters.pop_back();
        else
            out.letters.push_back(l);
    }
    return out;
}

inline bool is_freely_reduced(const Word& w) {
    for (std::size_t i = 0; i + 1 < w.size(); ++i)
        if (w[i + 1] == w[i].inverse()) return false;
    return true;
}

/// Number of positions where the parity differs from the next letter's,
/// scanned linearly (not cyclically).
inline int parity_changes(const Word& w) {
    int n = 0;
    for (std::size_t i = 0; i + 1 < w.size(); ++i)
        if (w[i].parity != w[i + 1].parity) ++n;
    return n;
}

inline int exponent_sum(const Word& w) {
    int s = 0;
    for (const Letter& l : w.letters) s += l.sign;
    return s;
}

/// Word text format: whitespace-separated signed face ids, e.g. "3 -1 5 -2".
inline std::string word_to_text(const Word& w) {
    std::ostringstream os;
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (i) os << ' ';
        os << w[i].sign * w[i].face;
    }
    return os.str();
}

} // namespace linkcert
