#pragma once

// Dense linear algebra over GF(2).
//
// Vectors and matrices are bit-packed into 64-bit words; bit b of a row lives
// in word b / 64 at position b % 64. Padding bits past the logical length are
// kept at zero so that word-wise comparisons and popcounts stay exact.

#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace maxai::gf2 {

using Word = std::uint64_t;
inline constexpr std::size_t kWordBits = 64;

inline constexpr std::size_t words_for(std::size_t bits) {
    return (bits + kWordBits - 1) / kWordBits;
}

/// Thrown by invert() when the input has no inverse.
class SingularMatrixError : public std::runtime_error {
public:
    SingularMatrixError(std::size_t rank, std::size_t size);
    std::size_t rank() const noexcept { return rank_; }
    std::size_t size() const noexcept { return size_; }

private:
    std::size_t rank_;
    std::size_t size_;
};

/// Thrown when operand shapes do not fit together.
class DimensionError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class BitVector {
public:
    BitVector() = default;
    explicit BitVector(std::size_t length);

    /// Parses a string of '0'/'1' characters; coordinate 0 is the first char.
    static BitVector from_string(std::string_view bits);

    std::size_t size() const noexcept { return length_; }
    bool empty() const noexcept { return length_ == 0; }

    bool get(std::size_t i) const { return (words_[i / kWordBits] >> (i % kWordBits)) & 1u; }
    void set(std::size_t i, bool value = true);
    void flip(std::size_t i) { words_[i / kWordBits] ^= Word{1} << (i % kWordBits); }

    std::size_t count() const noexcept;
    bool none() const noexcept;
    /// Index of the lowest set bit, or size() when the vector is zero.
    std::size_t find_first() const noexcept;
    /// Index of the lowest set bit at or after `from`, or size().
    std::size_t find_next(std::size_t from) const noexcept;

    BitVector& operator^=(const BitVector& other);
    BitVector& operator&=(const BitVector& other);
    friend BitVector operator^(BitVector a, const BitVector& b) { return a ^= b; }
    friend BitVector operator&(BitVector a, const BitVector& b) { return a &= b; }
    friend bool operator==(const BitVector&, const BitVector&) = default;

    /// Lexicographic order on coordinates 0, 1, ..., with 0 < 1.
    bool lex_less(const BitVector& other) const;

    std::span<Word> words() noexcept { return words_; }
    std::span<const Word> words() const noexcept { return words_; }

    std::string to_string() const;

private:
    std::size_t length_ = 0;
    std::vector<Word> words_;
};

class BitMatrix {
public:
    BitMatrix() = default;
    BitMatrix(std::size_t rows, std::size_t cols);

    static BitMatrix identity(std::size_t size);
    /// Builds a matrix from rows of '0'/'1' characters. All rows must share a length.
    static BitMatrix from_rows(const std::vector<std::string>& rows);
    static BitMatrix from_rows(std::span<const BitVector> rows);

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    bool is_square() const noexcept { return rows_ == cols_; }

    bool get(std::size_t r, std::size_t c) const {
        return (row_words(r)[c / kWordBits] >> (c % kWordBits)) & 1u;
    }
    void set(std::size_t r, std::size_t c, bool value = true);

    std::span<Word> row_words(std::size_t r) noexcept {
        return {data_.data() + r * stride_, stride_};
    }
    std::span<const Word> row_words(std::size_t r) const noexcept {
        return {data_.data() + r * stride_, stride_};
    }
    BitVector row(std::size_t r) const;
    void set_row(std::size_t r, const BitVector& v);
    /// row(dst) ^= row(src)
    void xor_row(std::size_t dst, std::size_t src);
    void swap_rows(std::size_t a, std::size_t b);

    BitMatrix transpose() const;

    friend bool operator==(const BitMatrix&, const BitMatrix&) = default;

    /// Text form: "rows cols" followed by one line of '0'/'1' per row.
    std::string to_text() const;
    static BitMatrix from_text(std::string_view text);

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::size_t stride_ = 0;
    std::vector<Word> data_;
};

std::size_t rank(const BitMatrix& m);
BitMatrix multiply(const BitMatrix& a, const BitMatrix& b);
/// Throws SingularMatrixError (carrying the rank reached) when m is singular,
/// DimensionError when m is not square.
BitMatrix invert(const BitMatrix& m);
/// Basis of {x : m x = 0}, one vector per free column of the reduced row
/// echelon form, ordered by free column.
std::vector<BitVector> null_space(const BitMatrix& m);
/// Greedy left-to-right column pivoting: returns the lexicographically
/// smallest increasing sequence of `needed` linearly independent columns
/// (0-based). Throws DimensionError if rank(m) < needed.
std::vector<std::size_t> select_independent_columns(const BitMatrix& m, std::size_t needed);
/// Minor on the given 0-based row and column indices. Indices must be strictly
/// increasing and in range; empty selections give the 0x0 matrix.
BitMatrix submatrix(const BitMatrix& m, std::span<const std::size_t> rows,
                    std::span<const std::size_t> cols);
/// The 0x0 matrix counts as invertible. Throws DimensionError for non-square input.
bool is_invertible(const BitMatrix& m);

}  // namespace maxai::gf2
