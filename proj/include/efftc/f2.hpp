#pragma once

// Exact linear algebra over the two-element field, on bit-packed vectors.

#include <bit>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace efftc::f2 {

class BitVector {
public:
    BitVector() = default;
    explicit BitVector(std::size_t size) : size_(size), words_((size + 63) / 64, 0) {}

    std::size_t size() const { return size_; }

    bool get(std::size_t i) const { return (words_[i >> 6] >> (i & 63)) & 1U; }
    void set(std::size_t i, bool value = true)
    {
        const std::uint64_t mask = std::uint64_t{1} << (i & 63);
        if (value)
            words_[i >> 6] |= mask;
        else
            words_[i >> 6] &= ~mask;
    }
    void flip(std::size_t i) { words_[i >> 6] ^= std::uint64_t{1} << (i & 63); }

    BitVector& operator^=(const BitVector& other)
    {
        for (std::size_t w = 0; w < words_.size(); ++w)
            words_[w] ^= other.words_[w];
        return *this;
    }
    friend BitVector operator^(BitVector a, const BitVector& b) { return a ^= b; }
    friend bool operator==(const BitVector&, const BitVector&) = default;

    bool any() const
    {
        for (auto w : words_)
            if (w != 0)
                return true;
        return false;
    }
    bool none() const { return !any(); }

    std::size_t count() const
    {
        std::size_t c = 0;
        for (auto w : words_)
            c += static_cast<std::size_t>(std::popcount(w));
        return c;
    }

    /// Index of the first set bit at or after `from`, or size() if there is none.
    std::size_t next_set(std::size_t from) const
    {
        if (from >= size_)
            return size_;
        std::size_t w = from >> 6;
        std::uint64_t word = words_[w] & (~std::uint64_t{0} << (from & 63));
        while (true) {
            if (word != 0)
                return (w << 6) + static_cast<std::size_t>(std::countr_zero(word));
            if (++w == words_.size())
                return size_;
            word = words_[w];
        }
    }
    std::size_t first_set() const { return next_set(0); }

    std::vector<std::size_t> support() const
    {
        std::vector<std::size_t> out;
        for (std::size_t i = first_set(); i < size_; i = next_set(i + 1))
            out.push_back(i);
        return out;
    }

    void resize(std::size_t size)
    {
        size_ = size;
        words_.resize((size + 63) / 64, 0);
        if (size & 63)
            words_.back() &= (std::uint64_t{1} << (size & 63)) - 1;
    }

    std::string to_string() const
    {
        std::string s(size_, '0');
        for (std::size_t i = 0; i < size_; ++i)
            if (get(i))
                s[i] = '1';
        return s;
    }

private:
    std::size_t size_ = 0;
    std::vector<std::uint64_t> words_;
};

/// Incrementally built row-echelon basis. Each stored vector has a distinct
/// pivot (its lowest set bit). With tracking enabled every stored vector also
/// remembers which inserted inputs it is the sum of.
class Echelon {
public:
    explicit Echelon(std::size_t width, bool track = true, std::size_t capacity = 0)
        : width_(width), track_(track), capacity_(track ? capacity : 0), pivot_row_(width, npos)
    {
    }

    std::size_t width() const { return width_; }
    std::size_t rank() const { return rows_.size(); }
    std::size_t inserted() const { return inserted_; }

    /// Reduces `v` against the basis; returns the residue and the combination
    /// of earlier inputs that was added to it (empty when not tracking).
    std::pair<BitVector, BitVector> reduce(BitVector v) const
    {
        BitVector combo(track_ ? capacity_ : 0);
        for (std::size_t i = v.first_set(); i < width_; i = v.next_set(i + 1)) {
            const auto r = pivot_row_[i];
            if (r == npos)
                continue;
            v ^= rows_[r];
            if (track_)
                combo ^= combos_[r];
        }
        if (track_)
            combo.resize(inserted_);
        return {std::move(v), std::move(combo)};
    }

    bool contains(BitVector v) const
    {
        for (std::size_t i = v.first_set(); i < width_; i = v.next_set(i + 1)) {
            const auto r = pivot_row_[i];
            if (r == npos)
                return false;
            v ^= rows_[r];
        }
        return true;
    }

    /// Inserts `v`. Returns nullopt when v was independent, otherwise the set
    /// of inputs (including v's own index) whose sum is zero.
    std::optional<BitVector> insert(const BitVector& v)
    {
        if (track_ && inserted_ == capacity_)
            grow(capacity_ == 0 ? 64 : 2 * capacity_);
        auto [residue, combo] = reduce(v);
        const std::size_t self = inserted_++;
        if (track_) {
            combo.resize(capacity_);
            combo.set(self);
        }
        if (residue.none()) {
            if (track_)
                combo.resize(inserted_);
            return combo;
        }
        const std::size_t pivot = residue.first_set();
        pivot_row_[pivot] = rows_.size();
        rows_.push_back(std::move(residue));
        if (track_)
            combos_.push_back(std::move(combo));
        return std::nullopt;
    }

private:
    static constexpr std::size_t npos = static_cast<std::size_t>(-1);

    void grow(std::size_t capacity)
    {
        capacity_ = capacity;
        for (auto& c : combos_)
            c.resize(capacity_);
    }

    std::size_t width_;
    bool track_;
    std::size_t capacity_;
    std::size_t inserted_ = 0;
    std::vector<std::size_t> pivot_row_;
    std::vector<BitVector> rows_;
    std::vector<BitVector> combos_;
};

/// Rank of a family of vectors of a common width.
inline std::size_t rank(const std::vector<BitVector>& vectors, std::size_t width)
{
    Echelon e(width, false);
    for (const auto& v : vectors)
        e.insert(v);
    return e.rank();
}

/// Basis of the null space of the linear map sending the i-th unit vector to
/// `images[i]`; each basis vector has length images.size().
inline std::vector<BitVector> kernel(const std::vector<BitVector>& images, std::size_t width)
{
    Echelon e(width, true, images.size());
    std::vector<BitVector> out;
    for (const auto& v : images) {
        if (auto relation = e.insert(v)) {
            BitVector k(images.size());
            for (auto i : relation->support())
                k.set(i);
            out.push_back(std::move(k));
        }
    }
    return out;
}

} // namespace efftc::f2
