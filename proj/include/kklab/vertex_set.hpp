#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <vector>

namespace kklab {

using Vertex = std::uint32_t;

/// Dense bitset over vertex ids [0, capacity).
class VertexSet {
  public:
    static constexpr std::size_t npos = static_cast<std::size_t>(-1);

    VertexSet() = default;
    explicit VertexSet(std::size_t capacity) : capacity_(capacity), words_((capacity + 63) / 64, 0) {}

    static VertexSet full(std::size_t capacity)
    {
        VertexSet s(capacity);
        for (std::size_t v = 0; v < capacity; ++v)
            s.set(v);
        return s;
    }

    std::size_t capacity() const noexcept { return capacity_; }

    void set(std::size_t v) noexcept { words_[v >> 6] |= std::uint64_t{1} << (v & 63); }
    void reset(std::size_t v) noexcept { words_[v >> 6] &= ~(std::uint64_t{1} << (v & 63)); }
    bool test(std::size_t v) const noexcept { return (words_[v >> 6] >> (v & 63)) & 1U; }

    std::size_t count() const noexcept
    {
        std::size_t c = 0;
        for (auto w : words_)
            c += static_cast<std::size_t>(std::popcount(w));
        return c;
    }

    bool any() const noexcept
    {
        for (auto w : words_)
            if (w)
                return true;
        return false;
    }
    bool none() const noexcept { return ! any(); }

    VertexSet & operator&=(const VertexSet & o) noexcept
    {
        for (std::size_t i = 0; i < words_.size(); ++i)
            words_[i] &= o.words_[i];
        return *this;
    }
    VertexSet & operator|=(const VertexSet & o) noexcept
    {
        for (std::size_t i = 0; i < words_.size(); ++i)
            words_[i] |= o.words_[i];
        return *this;
    }
    VertexSet & subtract(const VertexSet & o) noexcept
    {
        for (std::size_t i = 0; i < words_.size(); ++i)
            words_[i] &= ~o.words_[i];
        return *this;
    }

    friend VertexSet operator&(VertexSet a, const VertexSet & b) noexcept { return a &= b; }
    friend VertexSet operator|(VertexSet a, const VertexSet & b) noexcept { return a |= b; }

    std::size_t intersection_count(const VertexSet & o) const noexcept
    {
        std::size_t c = 0;
        for (std::size_t i = 0; i < words_.size(); ++i)
            c += static_cast<std::size_t>(std::popcount(words_[i] & o.words_[i]));
        return c;
    }

    /// Smallest member >= from, or npos.
    std::size_t next(std::size_t from) const noexcept
    {
        if (from >= capacity_)
            return npos;
        std::size_t wi = from >> 6;
        std::uint64_t w = words_[wi] & (~std::uint64_t{0} << (from & 63));
        while (true) {
            if (w)
                return (wi << 6) + static_cast<std::size_t>(std::countr_zero(w));
            if (++wi >= words_.size())
                return npos;
            w = words_[wi];
        }
    }
    std::size_t first() const noexcept { return next(0); }

    template <typename F>
    void for_each(F && f) const
    {
        for (std::size_t wi = 0; wi < words_.size(); ++wi) {
            std::uint64_t w = words_[wi];
            while (w) {
                f(static_cast<Vertex>((wi << 6) + static_cast<std::size_t>(std::countr_zero(w))));
                w &= w - 1;
            }
        }
    }

    std::vector<Vertex> to_vector() const
    {
        std::vector<Vertex> out;
        for_each([&](Vertex v) { out.push_back(v); });
        return out;
    }

    friend bool operator==(const VertexSet &, const VertexSet &) = default;

  private:
    std::size_t capacity_ = 0;
    std::vector<std::uint64_t> words_;
};

} // namespace kklab
