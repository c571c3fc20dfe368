#pragma once

// Bounded-degree monomial bases, the evaluation vectors v(X), and the V-matrices
// whose rows are v(X) over a sequence of points.

#include <cstdint>
#include <span>
#include <vector>

#include "maxai/boolfn.hpp"
#include "maxai/gf2.hpp"

namespace maxai {

std::uint64_t binomial(unsigned n, unsigned k);

struct MonomialBasis {
    unsigned n = 0;
    unsigned dmax = 0;
    /// Ascending degree, lexicographic on sorted variable tuples within a degree.
    std::vector<Monomial> monomials;

    std::size_t size() const noexcept { return monomials.size(); }
    /// Number of leading monomials with degree <= d.
    std::size_t prefix_size(unsigned d) const;
};

/// Onset and offset of a function, each ascending by idx. Every 1-based Y/Z
/// index used by the construction refers to this order.
struct PointOrder {
    std::vector<PointIndex> onset;
    std::vector<PointIndex> offset;
};

MonomialBasis build_basis(unsigned n, unsigned dmax);
gf2::BitVector v_of(PointIndex x, const MonomialBasis& basis);
PointOrder canonical_point_order(const BooleanFunction& f);
/// Row r is v_of(points[r]); row order follows `points`.
gf2::BitMatrix build_V(std::span<const PointIndex> points, const MonomialBasis& basis);

}  // namespace maxai
