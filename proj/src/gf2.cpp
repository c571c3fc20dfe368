#include "maxai/gf2.hpp"

#include <algorithm>
#include <bit>
#include <optional>
#include <sstream>

namespace maxai::gf2 {

namespace {

Word tail_mask(std::size_t bits) {
    const std::size_t rem = bits % kWordBits;
    return rem == 0 ? ~Word{0} : (Word{1} << rem) - 1;
}

void xor_words(std::span<Word> dst, std::span<const Word> src, std::size_t from = 0) {
    for (std::size_t w = from; w < dst.size(); ++w) dst[w] ^= src[w];
}

void check_increasing(std::span<const std::size_t> idx, std::size_t bound, const char* what) {
    for (std::size_t k = 0; k < idx.size(); ++k) {
        if (idx[k] >= bound)
            throw std::out_of_range(std::string(what) + " index " + std::to_string(idx[k]) +
                                    " out of range (size " + std::to_string(bound) + ")");
        if (k > 0 && idx[k] <= idx[k - 1])
            throw std::invalid_argument(std::string(what) + " indices must be strictly increasing");
    }
}

// Reduced row echelon form in place; returns the pivot column of each leading row.
std::vector<std::size_t> rref_in_place(BitMatrix& m) {
    std::vector<std::size_t> pivots;
    std::size_t r = 0;
    for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
        std::size_t p = r;
        while (p < m.rows() && !m.get(p, c)) ++p;
        if (p == m.rows()) continue;
        m.swap_rows(r, p);
        const std::size_t w0 = c / kWordBits;
        for (std::size_t i = 0; i < m.rows(); ++i) {
            if (i != r && m.get(i, c)) xor_words(m.row_words(i), m.row_words(r), w0);
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

}  // namespace

SingularMatrixError::SingularMatrixError(std::size_t rank, std::size_t size)
    : std::runtime_error("singular matrix: rank " + std::to_string(rank) + " of " +
                         std::to_string(size)),
      rank_(rank),
      size_(size) {}

// ---------------------------------------------------------------------------
// BitVector

BitVector::BitVector(std::size_t length) : length_(length), words_(words_for(length), 0) {}

BitVector BitVector::from_string(std::string_view bits) {
    BitVector v(bits.size());
    for (std::size_t i = 0; i < bits.size(); ++i) {
        if (bits[i] == '1')
            v.set(i);
        else if (bits[i] != '0')
            throw std::invalid_argument("bit string may only contain '0' and '1'");
    }
    return v;
}

void BitVector::set(std::size_t i, bool value) {
    const Word bit = Word{1} << (i % kWordBits);
    if (value)
        words_[i / kWordBits] |= bit;
    else
        words_[i / kWordBits] &= ~bit;
}

std::size_t BitVector::count() const noexcept {
    std::size_t total = 0;
    for (Word w : words_) total += static_cast<std::size_t>(std::popcount(w));
    return total;
}

bool BitVector::none() const noexcept {
    return std::all_of(words_.begin(), words_.end(), [](Word w) { return w == 0; });
}

std::size_t BitVector::find_first() const noexcept { return find_next(0); }

std::size_t BitVector::find_next(std::size_t from) const noexcept {
    if (from >= length_) return length_;
    std::size_t w = from / kWordBits;
    Word cur = words_[w] & (~Word{0} << (from % kWordBits));
    while (true) {
        if (cur != 0) return w * kWordBits + static_cast<std::size_t>(std::countr_zero(cur));
        if (++w == words_.size()) return length_;
        cur = words_[w];
    }
}

BitVector& BitVector::operator^=(const BitVector& other) {
    if (other.length_ != length_) throw DimensionError("BitVector xor: length mismatch");
    xor_words(words_, other.words_);
    return *this;
}

BitVector& BitVector::operator&=(const BitVector& other) {
    if (other.length_ != length_) throw DimensionError("BitVector and: length mismatch");
    for (std::size_t w = 0; w < words_.size(); ++w) words_[w] &= other.words_[w];
    return *this;
}

bool BitVector::lex_less(const BitVector& other) const {
    const std::size_t n = std::min(length_, other.length_);
    for (std::size_t w = 0; w < words_for(n); ++w) {
        const Word diff = words_[w] ^ other.words_[w];
        if (diff == 0) continue;
        const std::size_t bit = w * kWordBits + static_cast<std::size_t>(std::countr_zero(diff));
        if (bit >= n) break;
        return other.get(bit);
    }
    return length_ < other.length_;
}

std::string BitVector::to_string() const {
    std::string s(length_, '0');
    for (std::size_t i = 0; i < length_; ++i)
        if (get(i)) s[i] = '1';
    return s;
}

// ---------------------------------------------------------------------------
// BitMatrix

BitMatrix::BitMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), stride_(words_for(cols)), data_(rows * stride_, 0) {}

BitMatrix BitMatrix::identity(std::size_t size) {
    BitMatrix m(size, size);
    for (std::size_t i = 0; i < size; ++i) m.set(i, i);
    return m;
}

BitMatrix BitMatrix::from_rows(const std::vector<std::string>& rows) {
    std::vector<BitVector> vs;
    vs.reserve(rows.size());
    for (const auto& r : rows) vs.push_back(BitVector::from_string(r));
    return from_rows(vs);
}

BitMatrix BitMatrix::from_rows(std::span<const BitVector> rows) {
    const std::size_t cols = rows.empty() ? 0 : rows.front().size();
    BitMatrix m(rows.size(), cols);
    for (std::size_t r = 0; r < rows.size(); ++r) m.set_row(r, rows[r]);
    return m;
}

void BitMatrix::set(std::size_t r, std::size_t c, bool value) {
    Word& w = row_words(r)[c / kWordBits];
    const Word bit = Word{1} << (c % kWordBits);
    if (value)
        w |= bit;
    else
        w &= ~bit;
}

BitVector BitMatrix::row(std::size_t r) const {
    BitVector v(cols_);
    std::copy_n(row_words(r).begin(), stride_, v.words().begin());
    return v;
}

void BitMatrix::set_row(std::size_t r, const BitVector& v) {
    if (v.size() != cols_) throw DimensionError("set_row: row length does not match column count");
    std::copy_n(v.words().begin(), stride_, row_words(r).begin());
}

void BitMatrix::xor_row(std::size_t dst, std::size_t src) { xor_words(row_words(dst), row_words(src)); }

void BitMatrix::swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    std::swap_ranges(row_words(a).begin(), row_words(a).end(), row_words(b).begin());
}

BitMatrix BitMatrix::transpose() const {
    BitMatrix t(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r) {
        const auto words = row_words(r);
        for (std::size_t w = 0; w < stride_; ++w) {
            Word bits = words[w];
            while (bits != 0) {
                const std::size_t c = w * kWordBits + static_cast<std::size_t>(std::countr_zero(bits));
                t.set(c, r);
                bits &= bits - 1;
            }
        }
    }
    return t;
}

std::string BitMatrix::to_text() const {
    std::string out = std::to_string(rows_) + " " + std::to_string(cols_) + "\n";
    out.reserve(out.size() + rows_ * (cols_ + 1));
    for (std::size_t r = 0; r < rows_; ++r) {
        for (std::size_t c = 0; c < cols_; ++c) out.push_back(get(r, c) ? '1' : '0');
        out.push_back('\n');
    }
    return out;
}

BitMatrix BitMatrix::from_text(std::string_view text) {
    std::istringstream in{std::string(text)};
    std::size_t rows = 0, cols = 0;
    if (!(in >> rows >> cols)) throw std::invalid_argument("matrix text: missing 'rows cols' header");
    BitMatrix m(rows, cols);
    for (std::size_t r = 0; r < rows; ++r) {
        std::string line;
        if (!(in >> line) && cols > 0) throw std::invalid_argument("matrix text: too few rows");
        if (cols == 0) continue;
        if (line.size() != cols) throw std::invalid_argument("matrix text: row " + std::to_string(r) + " has wrong length");
        m.set_row(r, BitVector::from_string(line));
    }
    return m;
}

// ---------------------------------------------------------------------------
// Operations

std::size_t rank(const BitMatrix& input) {
    BitMatrix m = input;
    std::size_t r = 0;
    for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
        std::size_t p = r;
        while (p < m.rows() && !m.get(p, c)) ++p;
        if (p == m.rows()) continue;
        m.swap_rows(r, p);
        const std::size_t w0 = c / kWordBits;
        for (std::size_t i = r + 1; i < m.rows(); ++i) {
            if (m.get(i, c)) xor_words(m.row_words(i), m.row_words(r), w0);
        }
        ++r;
    }
    return r;
}

BitMatrix multiply(const BitMatrix& a, const BitMatrix& b) {
    if (a.cols() != b.rows())
        throw DimensionError("multiply: " + std::to_string(a.rows()) + "x" + std::to_string(a.cols()) +
                             " times " + std::to_string(b.rows()) + "x" + std::to_string(b.cols()));
    BitMatrix out(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        const auto arow = a.row_words(i);
        auto orow = out.row_words(i);
        for (std::size_t w = 0; w < arow.size(); ++w) {
            Word bits = arow[w];
            while (bits != 0) {
                const std::size_t j = w * kWordBits + static_cast<std::size_t>(std::countr_zero(bits));
                xor_words(orow, b.row_words(j));
                bits &= bits - 1;
            }
        }
    }
    return out;
}

BitMatrix invert(const BitMatrix& input) {
    if (!input.is_square()) throw DimensionError("invert: matrix is not square");
    const std::size_t n = input.rows();
    BitMatrix left = input;
    BitMatrix right = BitMatrix::identity(n);
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = c;
        while (p < n && !left.get(p, c)) ++p;
        if (p == n) throw SingularMatrixError(rank(input), n);
        left.swap_rows(c, p);
        right.swap_rows(c, p);
        const std::size_t w0 = c / kWordBits;
        for (std::size_t i = 0; i < n; ++i) {
            if (i == c || !left.get(i, c)) continue;
            xor_words(left.row_words(i), left.row_words(c), w0);
            xor_words(right.row_words(i), right.row_words(c));
        }
    }
    return right;
}

std::vector<BitVector> null_space(const BitMatrix& input) {
    BitMatrix m = input;
    const std::vector<std::size_t> pivots = rref_in_place(m);
    std::vector<bool> is_pivot(m.cols(), false);
    for (std::size_t p : pivots) is_pivot[p] = true;

    std::vector<BitVector> basis;
    for (std::size_t f = 0; f < m.cols(); ++f) {
        if (is_pivot[f]) continue;
        BitVector x(m.cols());
        x.set(f);
        for (std::size_t r = 0; r < pivots.size(); ++r)
            if (m.get(r, f)) x.set(pivots[r]);
        basis.push_back(std::move(x));
    }
    return basis;
}

std::vector<std::size_t> select_independent_columns(const BitMatrix& m, std::size_t needed) {
    if (needed == 0) return {};
    const BitMatrix columns = m.transpose();
    // basis_by_lead[b] holds a reduced column whose lowest set bit is b.
    std::vector<std::optional<BitVector>> basis_by_lead(m.rows());
    std::vector<std::size_t> chosen;
    for (std::size_t c = 0; c < columns.rows() && chosen.size() < needed; ++c) {
        BitVector v = columns.row(c);
        for (std::size_t lead = v.find_first(); lead < v.size(); lead = v.find_first()) {
            if (!basis_by_lead[lead]) {
                basis_by_lead[lead] = std::move(v);
                chosen.push_back(c);
                break;
            }
            v ^= *basis_by_lead[lead];
        }
    }
    if (chosen.size() < needed)
        throw DimensionError("select_independent_columns: rank " + std::to_string(chosen.size()) +
                             " is below the " + std::to_string(needed) + " columns requested");
    return chosen;
}

BitMatrix submatrix(const BitMatrix& m, std::span<const std::size_t> rows,
                    std::span<const std::size_t> cols) {
    check_increasing(rows, m.rows(), "row");
    check_increasing(cols, m.cols(), "column");
    BitMatrix out(rows.size(), cols.size());
    for (std::size_t r = 0; r < rows.size(); ++r)
        for (std::size_t c = 0; c < cols.size(); ++c)
            if (m.get(rows[r], cols[c])) out.set(r, c);
    return out;
}

bool is_invertible(const BitMatrix& m) {
    if (!m.is_square()) throw DimensionError("is_invertible: matrix is not square");
    return rank(m) == m.rows();
}

}  // namespace maxai::gf2
