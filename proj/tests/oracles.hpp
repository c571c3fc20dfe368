#pragma once

// Reference computations for the tests. Everything here works on plain byte
// matrices and direct evaluation, sharing no code with the bit-packed library
// paths it is used to check.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <vector>

namespace oracle {

using Row = std::vector<std::uint8_t>;
using Matrix = std::vector<Row>;

inline std::size_t rank(Matrix m) {
    std::size_t r = 0;
    const std::size_t cols = m.empty() ? 0 : m[0].size();
    for (std::size_t c = 0; c < cols && r < m.size(); ++c) {
        std::size_t p = r;
        while (p < m.size() && !m[p][c]) ++p;
        if (p == m.size()) continue;
        std::swap(m[p], m[r]);
        for (std::size_t i = 0; i < m.size(); ++i)
            if (i != r && m[i][c])
                for (std::size_t k = 0; k < cols; ++k) m[i][k] ^= m[r][k];
        ++r;
    }
    return r;
}

inline std::optional<Matrix> inverse(Matrix m) {
    const std::size_t n = m.size();
    Matrix inv(n, Row(n, 0));
    for (std::size_t i = 0; i < n; ++i) inv[i][i] = 1;
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = c;
        while (p < n && !m[p][c]) ++p;
        if (p == n) return std::nullopt;
        std::swap(m[p], m[c]);
        std::swap(inv[p], inv[c]);
        for (std::size_t i = 0; i < n; ++i) {
            if (i == c || !m[i][c]) continue;
            for (std::size_t k = 0; k < n; ++k) {
                m[i][k] ^= m[c][k];
                inv[i][k] ^= inv[c][k];
            }
        }
    }
    return inv;
}

inline Matrix multiply(const Matrix& a, const Matrix& b) {
    const std::size_t inner = b.size();
    const std::size_t cols = b.empty() ? 0 : b[0].size();
    Matrix out(a.size(), Row(cols, 0));
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t k = 0; k < inner; ++k)
            if (a[i][k])
                for (std::size_t j = 0; j < cols; ++j) out[i][j] ^= b[k][j];
    return out;
}

/// Coordinates of point idx with x1 as the most significant bit.
inline std::vector<int> coords(std::uint32_t idx, unsigned n) {
    std::vector<int> x(n);
    for (unsigned i = 0; i < n; ++i) x[i] = (idx >> (n - 1 - i)) & 1;
    return x;
}

/// Monomials of degree <= d as sorted 1-based variable lists, ordered by
/// degree and then lexicographically, built by sorting all subsets.
inline std::vector<std::vector<unsigned>> monomials(unsigned n, unsigned d) {
    std::vector<std::vector<unsigned>> all;
    for (std::uint32_t s = 0; s < (1u << n); ++s) {
        std::vector<unsigned> vars;
        for (unsigned v = 1; v <= n; ++v)
            if (s & (1u << (v - 1))) vars.push_back(v);
        if (vars.size() <= d) all.push_back(vars);
    }
    std::sort(all.begin(), all.end(), [](const auto& a, const auto& b) {
        if (a.size() != b.size()) return a.size() < b.size();
        return a < b;
    });
    return all;
}

inline int eval_monomial(const std::vector<unsigned>& vars, const std::vector<int>& x) {
    int v = 1;
    for (unsigned var : vars) v &= x[var - 1];
    return v;
}

inline Row v_of(std::uint32_t idx, unsigned n, unsigned d) {
    const auto x = coords(idx, n);
    Row r;
    for (const auto& m : monomials(n, d)) r.push_back(static_cast<std::uint8_t>(eval_monomial(m, x)));
    return r;
}

inline unsigned weight(std::uint32_t idx) {
    unsigned w = 0;
    for (; idx; idx >>= 1) w += idx & 1;
    return w;
}

/// Truth table as bytes, t[idx] = f(idx).
using Table = std::vector<std::uint8_t>;

inline Table majority_table(unsigned n) {
    Table t(1u << n);
    for (std::uint32_t x = 0; x < t.size(); ++x) t[x] = weight(x) <= (n - 1) / 2;
    return t;
}

/// Algebraic immunity by enumerating every polynomial of degree <= d for
/// increasing d and testing g*f == 0 or g*(f+1) == 0 pointwise. Only viable
/// for n <= 3 (at most 2^7 candidate polynomials per degree).
inline unsigned brute_force_ai(const Table& f, unsigned n) {
    for (unsigned d = 0; d <= n; ++d) {
        const auto mons = monomials(n, d);
        const std::uint64_t polys = std::uint64_t{1} << mons.size();
        for (std::uint64_t mask = 1; mask < polys; ++mask) {
            bool kills_f = true, kills_c = true;
            for (std::uint32_t x = 0; x < f.size(); ++x) {
                const auto c = coords(x, n);
                int g = 0;
                for (std::size_t m = 0; m < mons.size(); ++m)
                    if (mask >> m & 1) g ^= eval_monomial(mons[m], c);
                if (g && f[x]) kills_f = false;
                if (g && !f[x]) kills_c = false;
            }
            if (kills_f || kills_c) return d;
        }
    }
    return n;
}

/// W(F) = V(offset) V(onset)^-1 from byte matrices; nullopt if V(onset) is singular.
inline std::optional<Matrix> w_matrix(const Table& f, unsigned n) {
    const unsigned t = (n - 1) / 2;
    Matrix on, off;
    for (std::uint32_t x = 0; x < f.size(); ++x) (f[x] ? on : off).push_back(v_of(x, n, t));
    if (on.size() != off.size()) return std::nullopt;
    auto inv = inverse(on);
    if (!inv) return std::nullopt;
    return multiply(off, *inv);
}

/// Rank-criterion maximum-immunity test on byte matrices.
inline bool max_ai(const Table& f, unsigned n) {
    const unsigned t = (n - 1) / 2;
    Matrix on;
    for (std::uint32_t x = 0; x < f.size(); ++x)
        if (f[x]) on.push_back(v_of(x, n, t));
    if (2 * on.size() != f.size()) return false;
    return rank(on) == on.size();
}

}  // namespace oracle
