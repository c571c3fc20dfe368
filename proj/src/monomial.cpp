#include "maxai/monomial.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>
#include <string>

namespace maxai {

namespace {

// Appends every d-subset of {first..n} (lexicographic) to `out`, OR-ed with `prefix`.
void append_combinations(unsigned n, unsigned first, unsigned d, Monomial prefix, std::vector<Monomial>& out) {
    if (d == 0) {
        out.push_back(prefix);
        return;
    }
    for (unsigned v = first; v + d - 1 <= n; ++v)
        append_combinations(n, v + 1, d - 1, prefix | variable_mask(v, n), out);
}

void check_point(PointIndex x, unsigned n) {
    if ((x >> n) != 0)
        throw std::invalid_argument("point " + std::to_string(x) + " does not have arity " + std::to_string(n));
}

}  // namespace

std::uint64_t binomial(unsigned n, unsigned k) {
    if (k > n) return 0;
    k = std::min(k, n - k);
    std::uint64_t r = 1;
    for (unsigned i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

std::size_t MonomialBasis::prefix_size(unsigned d) const {
    std::size_t total = 0;
    for (unsigned i = 0; i <= std::min(d, dmax); ++i) total += binomial(n, i);
    return total;
}

MonomialBasis build_basis(unsigned n, unsigned dmax) {
    if (n > kMaxArity) throw std::invalid_argument("arity too large for a monomial basis");
    if (dmax > n) throw std::invalid_argument("basis degree exceeds arity");
    MonomialBasis basis{n, dmax, {}};
    basis.monomials.reserve(basis.prefix_size(dmax));
    for (unsigned d = 0; d <= dmax; ++d) append_combinations(n, 1, d, 0, basis.monomials);
    return basis;
}

gf2::BitVector v_of(PointIndex x, const MonomialBasis& basis) {
    check_point(x, basis.n);
    gf2::BitVector v(basis.size());
    for (std::size_t c = 0; c < basis.size(); ++c)
        if ((x & basis.monomials[c]) == basis.monomials[c]) v.set(c);
    return v;
}

PointOrder canonical_point_order(const BooleanFunction& f) { return {f.onset(), f.offset()}; }

gf2::BitMatrix build_V(std::span<const PointIndex> points, const MonomialBasis& basis) {
    gf2::BitMatrix m(points.size(), basis.size());
    for (std::size_t r = 0; r < points.size(); ++r) {
        const PointIndex x = points[r];
        check_point(x, basis.n);
        for (std::size_t c = 0; c < basis.size(); ++c)
            if ((x & basis.monomials[c]) == basis.monomials[c]) m.set(r, c);
    }
    return m;
}

}  // namespace maxai
