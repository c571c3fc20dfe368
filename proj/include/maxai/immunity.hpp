#pragma once

// Algebraic immunity by annihilator search, and the rank test for maximum
// immunity at odd arity.

#include <optional>
#include <vector>

#include "maxai/boolfn.hpp"

namespace maxai {

enum class AnnihilatedSide { function, complement };

const char* to_string(AnnihilatedSide side);

struct ImmunityReport {
    unsigned ai = 0;
    /// A minimum-degree annihilator of the function or of its complement.
    std::optional<AnfPolynomial> witness;
    AnnihilatedSide witness_side = AnnihilatedSide::function;
};

/// Basis of the nonzero g with deg(g) <= d and g * f = 0, i.e. the null space of
/// V(onset(f)) over the monomials of degree <= d. The basis is returned in
/// reduced form (each member owns its highest monomial), so it depends only on
/// the annihilator space. Empty when no annihilator of degree <= d exists.
std::vector<AnfPolynomial> annihilator_basis(const BooleanFunction& f, unsigned d);

/// Smallest d for which f or f xor 1 has a nonzero annihilator of degree d.
/// Constant functions report ai = 0 with witness 1.
ImmunityReport algebraic_immunity(const BooleanFunction& f);

/// Odd n only: f is balanced and V(onset(f)) over monomials of degree <= (n-1)/2
/// is invertible. Agrees with algebraic_immunity(f).ai == (n+1)/2.
bool has_max_ai_odd(const BooleanFunction& f);

/// Odd n, balanced f: if f has no annihilator of degree <= (n-1)/2 then neither
/// does f xor 1. Returns whether that implication holds for this f.
bool balanced_annihilator_symmetry_holds(const BooleanFunction& f);

}  // namespace maxai
