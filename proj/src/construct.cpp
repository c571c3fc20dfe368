#include "maxai/construct.hpp"

#include <bit>
#include <stdexcept>

#include "maxai/immunity.hpp"
#include "maxai/monomial.hpp"
#include "maxai/random.hpp"

namespace maxai {

namespace {

void require_odd(unsigned n, const char* what) {
    if (n % 2 == 0) throw std::invalid_argument(std::string(what) + ": n must be odd, got " + std::to_string(n));
}

// C(a, b) is odd iff every binary digit of b is at most the matching digit of a.
bool binomial_is_odd(unsigned a, unsigned b) { return b <= a && (b & ~a) == 0; }

std::vector<std::size_t> to_zero_based(std::span<const std::size_t> one_based) {
    std::vector<std::size_t> out(one_based.begin(), one_based.end());
    for (auto& v : out) --v;
    return out;
}

void check_indices(std::span<const std::size_t> idx, std::size_t size, const char* what) {
    for (std::size_t k = 0; k < idx.size(); ++k) {
        if (idx[k] < 1 || idx[k] > size)
            throw std::invalid_argument(std::string(what) + " index " + std::to_string(idx[k]) + " outside 1.." +
                                        std::to_string(size));
        if (k > 0 && idx[k] <= idx[k - 1])
            throw std::invalid_argument(std::string(what) + " indices must be strictly increasing");
    }
}

// Column of each point within G_n's onset; only entries of weight <= t are meaningful.
std::vector<std::uint32_t> onset_columns(unsigned n) {
    const unsigned t = (n - 1) / 2;
    std::vector<std::uint32_t> column(std::size_t{1} << n, 0);
    std::uint32_t next = 0;
    for (PointIndex x = 0; x < column.size(); ++x)
        if (point_weight(x) <= t) column[x] = next++;
    return column;
}

gf2::BitVector combinatorial_row(PointIndex z, unsigned n, const std::vector<std::uint32_t>& column) {
    const unsigned t = (n - 1) / 2;
    const unsigned l = point_weight(z);
    if (l < t + 1)
        throw std::invalid_argument("point " + point_to_string(z, n) + " is in the onset of G_n, not the offset");
    const std::vector<std::uint8_t> c = coefficient_sequence(l, t);
    gf2::BitVector row(std::size_t{1} << (n - 1));
    // Every subset of z's support with weight s <= t is an onset point Y; it
    // contributes when c_{t-s} is set.
    for (PointIndex sub = z;; sub = (sub - 1) & z) {
        const unsigned s = point_weight(sub);
        if (s <= t && c[t - s]) row.set(column[sub]);
        if (sub == 0) break;
    }
    return row;
}

}  // namespace

std::string Selection::to_string() const {
    std::string s = "(";
    for (std::size_t a = 0; a < i_indices.size(); ++a) s += (a ? "," : "") + std::to_string(i_indices[a]);
    s += ";";
    for (std::size_t a = 0; a < j_indices.size(); ++a) s += (a ? "," : "") + std::to_string(j_indices[a]);
    return s + ")";
}

void validate_selection(const Selection& sel, std::size_t size) {
    if (sel.i_indices.size() != sel.j_indices.size())
        throw std::invalid_argument("selection needs as many j indices as i indices");
    check_indices(sel.i_indices, size, "i");
    check_indices(sel.j_indices, size, "j");
}

WMatrix w_matrix_inverse(const BooleanFunction& base) {
    const unsigned n = base.arity();
    require_odd(n, "w_matrix_inverse");
    if (!base.is_balanced()) throw std::invalid_argument("w_matrix_inverse: base function is not balanced");
    const MonomialBasis basis = build_basis(n, (n - 1) / 2);
    const PointOrder order = canonical_point_order(base);
    gf2::BitMatrix v_on_inverse;
    try {
        v_on_inverse = gf2::invert(build_V(order.onset, basis));
    } catch (const gf2::SingularMatrixError& e) {
        throw std::invalid_argument("w_matrix_inverse: base function lacks maximum algebraic immunity (V(onset) rank " +
                                    std::to_string(e.rank()) + " of " + std::to_string(e.size()) + ")");
    }
    gf2::BitMatrix w = gf2::multiply(build_V(order.offset, basis), v_on_inverse);
    return WMatrix{n, base, std::move(w), order.offset, order.onset};
}

std::vector<std::uint8_t> coefficient_sequence(unsigned l, unsigned t) {
    if (l < t + 1 || l > 2 * t + 1)
        throw std::invalid_argument("coefficient_sequence: offset weight " + std::to_string(l) + " outside " +
                                    std::to_string(t + 1) + ".." + std::to_string(2 * t + 1));
    std::vector<std::uint8_t> c(t + 1, 0);
    c[0] = 1;
    for (unsigned i = 1; i <= t; ++i) {
        std::uint8_t v = 1;
        for (unsigned j = 0; j < i; ++j) v ^= c[j] & static_cast<std::uint8_t>(binomial_is_odd(l - t + i, i - j));
        c[i] = v;
    }
    return c;
}

gf2::BitVector w_row_combinatorial(PointIndex z, unsigned n) {
    require_odd(n, "w_row_combinatorial");
    if ((z >> n) != 0) throw std::invalid_argument("point does not have arity n");
    return combinatorial_row(z, n, onset_columns(n));
}

WMatrix w_matrix_combinatorial(unsigned n) {
    require_odd(n, "w_matrix_combinatorial");
    const BooleanFunction base = majority_indicator(n, true);
    PointOrder order = canonical_point_order(base);
    const std::vector<std::uint32_t> column = onset_columns(n);
    gf2::BitMatrix w(order.offset.size(), order.onset.size());
    for (std::size_t r = 0; r < order.offset.size(); ++r) w.set_row(r, combinatorial_row(order.offset[r], n, column));
    return WMatrix{n, base, std::move(w), std::move(order.offset), std::move(order.onset)};
}

std::vector<std::size_t> complete_j_indices(const WMatrix& w, std::span<const std::size_t> i_indices) {
    check_indices(i_indices, w.size(), "i");
    std::vector<std::size_t> all_cols(w.size());
    for (std::size_t c = 0; c < all_cols.size(); ++c) all_cols[c] = c;
    const gf2::BitMatrix rows = gf2::submatrix(w.m, to_zero_based(i_indices), all_cols);
    std::vector<std::size_t> j = gf2::select_independent_columns(rows, i_indices.size());
    for (auto& v : j) ++v;
    return j;
}

BooleanFunction assemble_function(const WMatrix& w, const Selection& sel) {
    validate_selection(sel, w.size());
    std::vector<PointIndex> points;
    points.reserve(2 * sel.k());
    for (std::size_t i : sel.i_indices) points.push_back(w.row_labels[i - 1]);
    for (std::size_t j : sel.j_indices) points.push_back(w.col_labels[j - 1]);
    return flip_points(w.base, points);
}

bool is_max_ai_selection(const WMatrix& w, const Selection& sel) {
    validate_selection(sel, w.size());
    return gf2::is_invertible(gf2::submatrix(w.m, to_zero_based(sel.i_indices), to_zero_based(sel.j_indices)));
}

Construction construct_random(const WMatrix& w, std::size_t k, std::uint64_t seed) {
    if (k > w.size())
        throw std::invalid_argument("construct_random: k = " + std::to_string(k) + " exceeds " +
                                    std::to_string(w.size()));
    if (seed == 0) seed = entropy_seed();
    DeterministicRng rng(seed);
    Selection sel;
    sel.i_indices = rng.subset(w.size(), k);
    sel.j_indices = complete_j_indices(w, sel.i_indices);
    BooleanFunction f = assemble_function(w, sel);
    return Construction{std::move(sel), std::move(f), seed};
}

Construction construct_random(unsigned n, std::size_t k, std::uint64_t seed) {
    return construct_random(w_matrix_combinatorial(n), k, seed);
}

}  // namespace maxai
