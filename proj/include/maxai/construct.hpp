#pragma once

// The W matrix of a maximum-immunity base function and the flip construction
// built on its invertible square submatrices.
//
// For a base F with onset Y_1..Y_N and offset Z_1..Z_N (N = 2^(n-1), both in
// ascending idx order), W satisfies V(offset) = W * V(onset). Flipping F on
// {Z_i : i in I} and {Y_j : j in J} with |I| = |J| gives a function of maximum
// algebraic immunity exactly when the minor W[I; J] is invertible. Selection
// indices are 1-based throughout this header.

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "maxai/boolfn.hpp"
#include "maxai/gf2.hpp"

namespace maxai {

struct WMatrix {
    unsigned n = 0;
    BooleanFunction base{1};
    gf2::BitMatrix m;
    /// Offset points Z_1..Z_N of the base, ascending idx.
    std::vector<PointIndex> row_labels;
    /// Onset points Y_1..Y_N of the base, ascending idx.
    std::vector<PointIndex> col_labels;

    std::size_t size() const noexcept { return m.rows(); }
};

struct Selection {
    std::vector<std::size_t> i_indices;
    std::vector<std::size_t> j_indices;

    std::size_t k() const noexcept { return i_indices.size(); }
    /// "(i1,...,ik;j1,...,jk)"
    std::string to_string() const;

    friend bool operator==(const Selection&, const Selection&) = default;
};

/// Throws std::invalid_argument unless both index lists have the same length
/// and are strictly increasing within [1, size].
void validate_selection(const Selection& sel, std::size_t size);

/// W = V(offset) * V(onset)^-1 for any base with maximum immunity at odd n.
WMatrix w_matrix_inverse(const BooleanFunction& base);

/// Coefficients (c_0..c_t) with which the weight-(t-i) onset points below an
/// offset point Z of weight l combine to v(Z) for G_n, n = 2t+1:
/// c_0 = 1, c_i = 1 + sum_{j<i} c_j * C(l-t+i, i-j) (mod 2).
std::vector<std::uint8_t> coefficient_sequence(unsigned l, unsigned t);

/// Row of W(G_n) for offset point z, indexed by G_n's onset order.
gf2::BitVector w_row_combinatorial(PointIndex z, unsigned n);

/// W(G_n) assembled row by row from coefficient_sequence; no inversion.
WMatrix w_matrix_combinatorial(unsigned n);

/// Lexicographically smallest j-list making W[i; j] invertible.
std::vector<std::size_t> complete_j_indices(const WMatrix& w, std::span<const std::size_t> i_indices);

/// The base flipped on {Z_i} and {Y_j}.
BooleanFunction assemble_function(const WMatrix& w, const Selection& sel);

/// Whether W[i; j] is invertible (k = 0 counts as invertible).
bool is_max_ai_selection(const WMatrix& w, const Selection& sel);

struct Construction {
    Selection selection;
    BooleanFunction function;
    std::uint64_t seed = 0;
};

/// Draws k row indices uniformly without replacement, completes the columns
/// with complete_j_indices and assembles the function. Seed 0 draws a fresh
/// seed from the system entropy source; the seed actually used is returned.
Construction construct_random(const WMatrix& w, std::size_t k, std::uint64_t seed);
Construction construct_random(unsigned n, std::size_t k, std::uint64_t seed);

}  // namespace maxai
