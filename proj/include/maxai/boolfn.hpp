#pragma once

// Boolean functions of n variables stored as truth tables.
//
// A point X = (x1, ..., xn) is addressed by idx(X) = sum x_i * 2^(n-i), so x1
// is the most significant bit. Monomials use the same bit layout: variable i
// is bit n-i of the mask, which makes "monomial m evaluates to 1 at X" the
// test (idx(X) & m) == m.

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "maxai/gf2.hpp"

namespace maxai {

using PointIndex = std::uint32_t;
using Monomial = std::uint32_t;

inline constexpr unsigned kMaxArity = 20;

unsigned point_weight(PointIndex x);
/// Coordinates are given as x1, ..., xn; each entry must be 0 or 1.
PointIndex point_from_bits(std::span<const std::uint8_t> coords);
/// Bit string "x1 x2 ... xn" without separators.
std::string point_to_string(PointIndex x, unsigned n);
PointIndex point_from_string(std::string_view bits);

/// Bit of the idx/monomial mask that carries variable `var` (1-based).
inline Monomial variable_mask(unsigned var, unsigned n) { return Monomial{1} << (n - var); }
/// Sorted 1-based variables of a monomial.
std::vector<unsigned> monomial_variables(Monomial m, unsigned n);
/// Canonical monomial order: ascending degree, then lexicographic on the sorted
/// variable tuple. Within one degree this is descending numeric mask order.
bool monomial_less(Monomial a, Monomial b);

class BooleanFunction {
public:
    /// The constant-zero function of n variables.
    explicit BooleanFunction(unsigned n);
    BooleanFunction(unsigned n, gf2::BitVector table);

    static BooleanFunction constant(unsigned n, bool value);
    static BooleanFunction variable(unsigned n, unsigned var);
    static BooleanFunction from_onset(unsigned n, std::span<const PointIndex> onset);
    static BooleanFunction from_hex(unsigned n, std::string_view hex);

    unsigned arity() const noexcept { return n_; }
    std::size_t size() const noexcept { return table_.size(); }
    const gf2::BitVector& table() const noexcept { return table_; }

    bool eval(PointIndex x) const { return table_.get(x); }
    bool eval(std::span<const std::uint8_t> coords) const;

    std::size_t weight() const noexcept { return table_.count(); }
    bool is_balanced() const noexcept { return 2 * weight() == size(); }

    /// Points with f(X) = 1, ascending by idx.
    std::vector<PointIndex> onset() const;
    /// Points with f(X) = 0, ascending by idx.
    std::vector<PointIndex> offset() const;

    /// Truth-table hex string. Table bits are taken in idx order 0, 1, ... and
    /// packed four per digit with the lowest idx in the digit's high bit, so
    /// G_3 (onset 000, 001, 010, 100) is "E8". Arity below 2 uses one digit
    /// with the unused low bits zero.
    std::string to_hex() const;

    friend bool operator==(const BooleanFunction&, const BooleanFunction&) = default;

private:
    unsigned n_;
    gf2::BitVector table_;
};

BooleanFunction complement(const BooleanFunction& f);
/// Complements f on every point of `points` (treated as a set).
BooleanFunction flip_points(const BooleanFunction& f, std::span<const PointIndex> points);
/// For odd n = 2t+1: a on points of weight <= t, a xor 1 elsewhere. With a = 1
/// this is the majority-complement function G_n.
BooleanFunction majority_indicator(unsigned n, bool a);

class AnfPolynomial {
public:
    explicit AnfPolynomial(unsigned n) : n_(n) {}
    AnfPolynomial(unsigned n, std::vector<Monomial> terms);
    /// Polynomial with coefficient vector `coeffs` over the monomial sequence `basis`.
    static AnfPolynomial from_coefficients(unsigned n, std::span<const Monomial> basis,
                                           const gf2::BitVector& coeffs);

    unsigned arity() const noexcept { return n_; }
    /// Distinct terms in canonical monomial order.
    const std::vector<Monomial>& terms() const noexcept { return terms_; }
    bool is_zero() const noexcept { return terms_.empty(); }
    /// nullopt for the zero polynomial.
    std::optional<unsigned> degree() const;
    bool eval(PointIndex x) const;

    /// Each term as its sorted 1-based variable list; the constant term is empty.
    std::vector<std::vector<unsigned>> term_variables() const;
    /// e.g. "1 + x1*x2 + x1*x3"; the zero polynomial prints as "0".
    std::string to_string() const;

    friend bool operator==(const AnfPolynomial&, const AnfPolynomial&) = default;

private:
    unsigned n_;
    std::vector<Monomial> terms_;
};

/// Binary Moebius transform over the subset lattice; an involution on tables.
void moebius_transform(gf2::BitVector& table, unsigned n);

AnfPolynomial anf_from_truth_table(const BooleanFunction& f);
BooleanFunction truth_table_from_anf(const AnfPolynomial& p);
/// Algebraic degree; nullopt for the zero function.
std::optional<unsigned> degree(const BooleanFunction& f);

}  // namespace maxai
