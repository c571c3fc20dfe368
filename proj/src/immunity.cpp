#include "maxai/immunity.hpp"

#include <stdexcept>
#include <string>

#include "maxai/gf2.hpp"
#include "maxai/monomial.hpp"

namespace maxai {

namespace {

// Column-incremental null space of V(points) over a degree-ordered basis.
//
// Columns are fed in basis order. Each column is reduced against the columns
// kept so far while a companion vector records which original columns were
// combined; a column that reduces to zero yields a kernel vector whose highest
// coordinate is that column. Because the basis is degree-major, the kernel
// vectors found after the first prefix_size(d) columns span exactly the
// annihilators of degree <= d, so raising d only extends the elimination.
class IncrementalKernel {
public:
    IncrementalKernel(const std::vector<PointIndex>& points, const MonomialBasis& basis)
        : points_(points), basis_(basis), lead_to_pivot_(points.size(), kNone) {}

    void advance_to(std::size_t columns) {
        while (processed_ < columns) add_column(processed_++);
    }

    /// Kernel vectors found so far, reduced so each owns its highest coordinate.
    std::vector<gf2::BitVector> reduced_kernel() const {
        std::vector<gf2::BitVector> k = kernel_;
        for (std::size_t i = 0; i < k.size(); ++i)
            for (std::size_t j = i + 1; j < k.size(); ++j)
                if (k[j].get(kernel_high_[i])) k[j] ^= k[i];
        return k;
    }

    bool kernel_empty() const { return kernel_.empty(); }

private:
    static constexpr std::size_t kNone = static_cast<std::size_t>(-1);

    void add_column(std::size_t c) {
        const Monomial m = basis_.monomials[c];
        gf2::BitVector col(points_.size());
        for (std::size_t r = 0; r < points_.size(); ++r)
            if ((points_[r] & m) == m) col.set(r);
        gf2::BitVector track(basis_.size());
        track.set(c);
        for (std::size_t lead = col.find_first(); lead < col.size(); lead = col.find_first()) {
            const std::size_t p = lead_to_pivot_[lead];
            if (p == kNone) {
                lead_to_pivot_[lead] = pivots_.size();
                pivots_.push_back({std::move(col), std::move(track)});
                return;
            }
            col ^= pivots_[p].column;
            track ^= pivots_[p].track;
        }
        kernel_.push_back(std::move(track));
        kernel_high_.push_back(c);
    }

    struct Pivot {
        gf2::BitVector column;
        gf2::BitVector track;
    };

    const std::vector<PointIndex>& points_;
    const MonomialBasis& basis_;
    std::vector<std::size_t> lead_to_pivot_;
    std::vector<Pivot> pivots_;
    std::vector<gf2::BitVector> kernel_;
    std::vector<std::size_t> kernel_high_;
    std::size_t processed_ = 0;
};

std::vector<AnfPolynomial> to_polynomials(const std::vector<gf2::BitVector>& vectors, const MonomialBasis& basis) {
    std::vector<AnfPolynomial> out;
    out.reserve(vectors.size());
    for (const auto& v : vectors) out.push_back(AnfPolynomial::from_coefficients(basis.n, basis.monomials, v));
    return out;
}

const gf2::BitVector& lex_smallest(const std::vector<gf2::BitVector>& vectors) {
    const gf2::BitVector* best = &vectors.front();
    for (const auto& v : vectors)
        if (v.lex_less(*best)) best = &v;
    return *best;
}

void require_odd(const BooleanFunction& f, const char* what) {
    if (f.arity() % 2 == 0)
        throw std::invalid_argument(std::string(what) + " needs odd arity, got " + std::to_string(f.arity()));
}

}  // namespace

const char* to_string(AnnihilatedSide side) {
    return side == AnnihilatedSide::function ? "f" : "f+1";
}

std::vector<AnfPolynomial> annihilator_basis(const BooleanFunction& f, unsigned d) {
    if (d > f.arity()) throw std::invalid_argument("annihilator degree bound exceeds arity");
    const MonomialBasis basis = build_basis(f.arity(), d);
    const std::vector<PointIndex> onset = f.onset();
    IncrementalKernel kernel(onset, basis);
    kernel.advance_to(basis.size());
    return to_polynomials(kernel.reduced_kernel(), basis);
}

ImmunityReport algebraic_immunity(const BooleanFunction& f) {
    const unsigned n = f.arity();
    const unsigned bound = (n + 1) / 2;
    const MonomialBasis basis = build_basis(n, bound);
    const std::vector<PointIndex> onset = f.onset();
    const std::vector<PointIndex> offset = f.offset();
    IncrementalKernel on(onset, basis);
    IncrementalKernel off(offset, basis);
    for (unsigned d = 0; d <= bound; ++d) {
        const std::size_t cols = basis.prefix_size(d);
        on.advance_to(cols);
        off.advance_to(cols);
        if (on.kernel_empty() && off.kernel_empty()) continue;
        const bool use_function = !on.kernel_empty();
        const auto kernel = (use_function ? on : off).reduced_kernel();
        return ImmunityReport{
            d, AnfPolynomial::from_coefficients(n, basis.monomials, lex_smallest(kernel)),
            use_function ? AnnihilatedSide::function : AnnihilatedSide::complement};
    }
    throw std::logic_error("no annihilator found up to degree ceil(n/2)");
}

bool has_max_ai_odd(const BooleanFunction& f) {
    require_odd(f, "has_max_ai_odd");
    if (!f.is_balanced()) return false;
    const MonomialBasis basis = build_basis(f.arity(), (f.arity() - 1) / 2);
    const std::vector<PointIndex> onset = f.onset();
    return gf2::is_invertible(build_V(onset, basis));
}

bool balanced_annihilator_symmetry_holds(const BooleanFunction& f) {
    require_odd(f, "balanced_annihilator_symmetry_holds");
    if (!f.is_balanced()) throw std::invalid_argument("balanced_annihilator_symmetry_holds needs a balanced function");
    const unsigned t = (f.arity() - 1) / 2;
    const bool f_free = annihilator_basis(f, t).empty();
    const bool complement_free = annihilator_basis(complement(f), t).empty();
    return !f_free || complement_free;
}

}  // namespace maxai
