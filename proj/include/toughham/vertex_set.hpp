#pragma once

#include <cassert>
#include <cstdint>
#include <string>
#include <vector>

namespace toughham {

// Dense bitset over a fixed vertex universe [0, n).  All graph algorithms in
// this library work on vertex ids below ~a few hundred, so word-parallel set
// operations beat adjacency lists for the hot loops (neighborhood
// intersection, subset enumeration, flood fill).
class VertexSet {
public:
    VertexSet() = default;

    explicit VertexSet(int universe)
        : n_(universe), words_((universe + 63) / 64, 0) {}

    static VertexSet full(int universe) {
        VertexSet s(universe);
        for (int v = 0; v < universe; ++v) s.insert(v);
        return s;
    }

    static VertexSet of(int universe, std::initializer_list<int> vs) {
        VertexSet s(universe);
        for (int v : vs) s.insert(v);
        return s;
    }

    int universe() const { return n_; }

    bool contains(int v) const {
        assert(v >= 0 && v < n_);
        return (words_[v >> 6] >> (v & 63)) & 1u;
    }

    void insert(int v) {
        assert(v >= 0 && v < n_);
        words_[v >> 6] |= std::uint64_t{1} << (v & 63);
    }

    void erase(int v) {
        assert(v >= 0 && v < n_);
        words_[v >> 6] &= ~(std::uint64_t{1} << (v & 63));
    }

    void clear() {
        for (auto& w : words_) w = 0;
    }

    int count() const {
        int c = 0;
        for (auto w : words_) c += __builtin_popcountll(w);
        return c;
    }

    bool empty() const {
        for (auto w : words_)
            if (w) return false;
        return true;
    }

    bool any() const { return !empty(); }

    // Smallest member, or -1 when empty.
    int first() const {
        for (std::size_t i = 0; i < words_.size(); ++i)
            if (words_[i]) return int(i * 64 + __builtin_ctzll(words_[i]));
        return -1;
    }

    // Smallest member strictly greater than v, or -1.
    int next_after(int v) const {
        int start = v + 1;
        if (start >= n_) return -1;
        std::size_t i = std::size_t(start) >> 6;
        std::uint64_t w = words_[i] & (~std::uint64_t{0} << (start & 63));
        while (true) {
            if (w) return int(i * 64 + __builtin_ctzll(w));
            if (++i >= words_.size()) return -1;
            w = words_[i];
        }
    }

    VertexSet& operator|=(const VertexSet& o) {
        assert(n_ == o.n_);
        for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= o.words_[i];
        return *this;
    }

    VertexSet& operator&=(const VertexSet& o) {
        assert(n_ == o.n_);
        for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= o.words_[i];
        return *this;
    }

    VertexSet& operator-=(const VertexSet& o) {
        assert(n_ == o.n_);
        for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= ~o.words_[i];
        return *this;
    }

    friend VertexSet operator|(VertexSet a, const VertexSet& b) { return a |= b; }
    friend VertexSet operator&(VertexSet a, const VertexSet& b) { return a &= b; }
    friend VertexSet operator-(VertexSet a, const VertexSet& b) { return a -= b; }

    // Complement within the universe.
    VertexSet complement() const {
        VertexSet r(n_);
        for (std::size_t i = 0; i < words_.size(); ++i) r.words_[i] = ~words_[i];
        r.trim();
        return r;
    }

    bool intersects(const VertexSet& o) const {
        assert(n_ == o.n_);
        for (std::size_t i = 0; i < words_.size(); ++i)
            if (words_[i] & o.words_[i]) return true;
        return false;
    }

    bool is_subset_of(const VertexSet& o) const {
        assert(n_ == o.n_);
        for (std::size_t i = 0; i < words_.size(); ++i)
            if (words_[i] & ~o.words_[i]) return false;
        return true;
    }

    bool operator==(const VertexSet& o) const {
        return n_ == o.n_ && words_ == o.words_;
    }
    bool operator!=(const VertexSet& o) const { return !(*this == o); }

    // Order as ascending member sequences (a proper prefix sorts first).
    // Used everywhere a deterministic "lexicographically smallest set"
    // tie-break is needed.
    bool lex_less(const VertexSet& o) const {
        assert(n_ == o.n_);
        int x = first(), y = o.first();
        while (x != -1 && y != -1) {
            if (x != y) return x < y;
            x = next_after(x);
            y = o.next_after(y);
        }
        return x == -1 && y != -1;
    }

    template <typename F>
    void for_each(F&& f) const {
        for (std::size_t i = 0; i < words_.size(); ++i) {
            std::uint64_t w = words_[i];
            while (w) {
                int v = int(i * 64 + __builtin_ctzll(w));
                f(v);
                w &= w - 1;
            }
        }
    }

    std::vector<int> to_vector() const {
        std::vector<int> out;
        out.reserve(count());
        for_each([&](int v) { out.push_back(v); });
        return out;
    }

    const std::vector<std::uint64_t>& raw_words() const { return words_; }

    std::string to_string() const {
        std::string s = "{";
        bool first_el = true;
        for_each([&](int v) {
            if (!first_el) s += ",";
            s += std::to_string(v);
            first_el = false;
        });
        return s + "}";
    }

private:
    void trim() {
        if (n_ % 64 != 0 && !words_.empty())
            words_.back() &= (~std::uint64_t{0}) >> (64 - n_ % 64);
    }

    int n_ = 0;
    std::vector<std::uint64_t> words_;
};

}  // namespace toughham
