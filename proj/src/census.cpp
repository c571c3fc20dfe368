#include "maxai/census.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <chrono>
#include <cmath>
#include <fstream>
#include <sstream>
#include <thread>

#include "maxai/monomial.hpp"
#include "maxai/random.hpp"

namespace maxai {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

unsigned resolve_threads(unsigned threads) {
    if (threads != 0) return threads;
    return std::max(1u, std::thread::hardware_concurrency());
}

// Pascal triangle up to C(64, *); every entry fits in 64 bits.
class BinomialTable {
public:
    BinomialTable() {
        for (unsigned a = 0; a <= kMax; ++a) {
            c_[a][0] = 1;
            for (unsigned b = 1; b <= a; ++b) c_[a][b] = c_[a - 1][b - 1] + (b <= a - 1 ? c_[a - 1][b] : 0);
        }
    }
    std::uint64_t operator()(unsigned a, unsigned b) const { return b > a ? 0 : c_[a][b]; }

private:
    static constexpr unsigned kMax = 64;
    std::array<std::array<std::uint64_t, kMax + 1>, kMax + 1> c_{};
};

const BinomialTable& binomials() {
    static const BinomialTable table;
    return table;
}

// Runs `work(begin, end)` over [begin, end) split across `threads` workers and
// sums the results.
template <typename Work>
std::uint64_t parallel_sum(std::uint64_t begin, std::uint64_t end, unsigned threads, const Work& work) {
    const std::uint64_t span = end - begin;
    threads = static_cast<unsigned>(std::min<std::uint64_t>(threads, std::max<std::uint64_t>(span, 1)));
    if (threads <= 1) return work(begin, end);
    std::vector<std::uint64_t> partial(threads, 0);
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) {
        const std::uint64_t b = begin + span * t / threads;
        const std::uint64_t e = begin + span * (t + 1) / threads;
        pool.emplace_back([&, t, b, e] { partial[t] = work(b, e); });
    }
    for (auto& th : pool) th.join();
    std::uint64_t total = 0;
    for (auto p : partial) total += p;
    return total;
}

constexpr unsigned kMaxDim = 16;
template <std::size_t Dim>
using Basis = std::array<std::uint32_t, Dim>;
using SmallBasis = Basis<kMaxDim>;

// Inserts v into a basis keyed by top bit; false when v is already spanned.
template <std::size_t Dim>
bool insert(Basis<Dim>& basis, std::uint32_t v) {
    while (v != 0) {
        const unsigned top = 31u - static_cast<unsigned>(std::countl_zero(v));
        if (basis[top] == 0) {
            basis[top] = v;
            return true;
        }
        v ^= basis[top];
    }
    return false;
}

// Walks weight-k subsets of the 2^n points in colexicographic rank order.
//
// Elements are inserted into the rank test from the largest down, and a
// colexicographic step only changes the smallest elements, so the partial
// bases for the unchanged large elements are kept between steps. When the
// element at position q is already spanned, every subset sharing positions
// q..k-1 is singular; those form one contiguous rank block of size
// C(c_q, q), which is skipped in one step.
class ColexRankWalker {
public:
    explicit ColexRankWalker(unsigned n)
        : points_(1u << n), k_(1u << (n - 1)), total_(binomials()(points_, k_)) {
        const MonomialBasis basis = build_basis(n, (n - 1) / 2);
        vecs_.resize(points_);
        for (PointIndex x = 0; x < points_; ++x) {
            std::uint32_t v = 0;
            for (std::size_t c = 0; c < basis.size(); ++c)
                if ((x & basis.monomials[c]) == basis.monomials[c]) v |= 1u << c;
            vecs_[x] = v;
        }
    }

    std::uint64_t total() const { return total_; }

    std::uint64_t count_range(std::uint64_t begin, std::uint64_t end) const {
        if (begin >= end) return 0;
        const auto& C = binomials();
        std::vector<unsigned> c = unrank(begin);
        std::vector<SmallBasis> bases(k_ + 1, SmallBasis{});
        std::uint64_t rank = begin;
        std::uint64_t found = 0;
        unsigned valid = 0;
        while (rank < end) {
            int dependent = -1;
            for (unsigned level = valid; level < k_; ++level) {
                const unsigned pos = k_ - 1 - level;
                bases[level + 1] = bases[level];
                if (!insert(bases[level + 1], vecs_[c[pos]])) {
                    dependent = static_cast<int>(pos);
                    break;
                }
            }
            unsigned q = 0;
            if (dependent < 0) {
                ++found;
                ++rank;
            } else {
                q = static_cast<unsigned>(dependent);
                std::uint64_t low_rank = 0;
                for (unsigned i = 0; i < q; ++i) low_rank += C(c[i], i + 1);
                rank += C(c[q], q) - low_rank;
            }
            if (rank >= end || rank >= total_) break;
            unsigned i = q;
            while (c[i] + 1 == (i + 1 < k_ ? c[i + 1] : points_)) ++i;
            ++c[i];
            for (unsigned j = 0; j < i; ++j) c[j] = j;
            valid = k_ - 1 - i;
        }
        return found;
    }

private:
    std::vector<unsigned> unrank(std::uint64_t r) const {
        const auto& C = binomials();
        std::vector<unsigned> c(k_);
        for (unsigned i = k_; i-- > 0;) {
            unsigned x = points_ - 1;
            while (C(x, i + 1) > r) --x;
            c[i] = x;
            r -= C(x, i + 1);
        }
        return c;
    }

    unsigned points_;
    unsigned k_;
    std::uint64_t total_;
    std::vector<std::uint32_t> vecs_;
};

// Number of k-subsets of `cols` (restricted to the bits in `rows`) that are
// linearly independent, by depth-first search with pruning on dependence.
template <std::size_t Dim>
std::uint64_t count_independent(const std::vector<std::uint32_t>& cols, std::uint32_t rows, unsigned k,
                                unsigned start, unsigned depth, const Basis<Dim>& basis) {
    if (depth == k) return 1;
    std::uint64_t total = 0;
    const unsigned m = static_cast<unsigned>(cols.size());
    for (unsigned j = start; j + (k - depth) <= m; ++j) {
        const std::uint32_t v = cols[j] & rows;
        if (v == 0) continue;
        Basis<Dim> next = basis;
        if (insert(next, v)) total += count_independent(cols, rows, k, j + 1, depth + 1, next);
    }
    return total;
}

// Advances a strictly increasing 0-based k-subset of [0, n) in lexicographic order.
bool next_combination(std::vector<std::size_t>& c, std::size_t n) {
    const std::size_t k = c.size();
    for (std::size_t i = k; i-- > 0;) {
        if (c[i] < n - k + i) {
            ++c[i];
            for (std::size_t j = i + 1; j < k; ++j) c[j] = c[j - 1] + 1;
            return true;
        }
    }
    return false;
}

}  // namespace

const char* to_string(CensusMethod method) {
    switch (method) {
        case CensusMethod::exhaustive: return "exhaustive";
        case CensusMethod::submatrix: return "submatrix";
        case CensusMethod::sample: return "sample";
    }
    return "?";
}

CensusMethod census_method_from_string(const std::string& name) {
    if (name == "exhaustive") return CensusMethod::exhaustive;
    if (name == "submatrix") return CensusMethod::submatrix;
    if (name == "sample") return CensusMethod::sample;
    throw std::invalid_argument("unknown census method '" + name + "'");
}

long double exhaustive_cost(unsigned n) {
    const long double points = std::ldexp(1.0L, static_cast<int>(n));
    const long double k = points / 2;
    return std::exp(std::lgamma(points + 1) - 2 * std::lgamma(k + 1));
}

CensusResult count_exhaustive(unsigned n, const ExhaustiveOptions& options) {
    if (n % 2 == 0) throw std::invalid_argument("count_exhaustive: n must be odd");
    if (n > 5) {
        std::ostringstream msg;
        msg << "count_exhaustive: n=" << n << " needs about " << static_cast<double>(exhaustive_cost(n))
            << " rank checks; only n <= 5 is supported";
        throw CensusTooLarge(msg.str());
    }
    if (options.batch == 0) throw std::invalid_argument("count_exhaustive: batch must be positive");
    const auto start_time = Clock::now();
    const ColexRankWalker walker(n);
    const unsigned threads = resolve_threads(options.threads);

    CensusResult result{};
    result.n = n;
    result.method = CensusMethod::exhaustive;

    std::uint64_t next = 0;
    double prior_elapsed = 0;
    if (options.checkpoint && std::filesystem::exists(*options.checkpoint)) {
        const Checkpoint cp = read_checkpoint(*options.checkpoint);
        if (cp.n != n || cp.method != CensusMethod::exhaustive)
            throw std::invalid_argument("checkpoint " + options.checkpoint->string() + " belongs to a different run");
        if (cp.last_rank >= walker.total()) throw std::invalid_argument("checkpoint rank is out of range");
        next = cp.last_rank + 1;
        result.count = cp.partial_count;
        prior_elapsed = cp.elapsed_seconds;
    }

    std::uint64_t batches = 0;
    while (next < walker.total()) {
        if (options.max_batches != 0 && batches == options.max_batches) break;
        const std::uint64_t end = std::min(walker.total(), next + options.batch);
        result.count += parallel_sum(next, end, threads,
                                     [&walker](std::uint64_t b, std::uint64_t e) { return walker.count_range(b, e); });
        next = end;
        ++batches;
        if (options.checkpoint)
            write_checkpoint(*options.checkpoint, Checkpoint{n, CensusMethod::exhaustive, end - 1, result.count,
                                                             prior_elapsed + seconds_since(start_time)});
    }
    result.complete = next == walker.total();
    result.elapsed_seconds = prior_elapsed + seconds_since(start_time);
    return result;
}

CensusResult count_submatrix(const WMatrix& w, unsigned threads) {
    const unsigned m = static_cast<unsigned>(w.size());
    if (m > 24) throw CensusTooLarge("count_submatrix: " + std::to_string(m) + "x" + std::to_string(m) +
                                     " needs 2^" + std::to_string(m) + " row subsets; at most 24 columns supported");
    if (!w.m.is_square()) throw std::invalid_argument("count_submatrix: matrix is not square");
    const auto start_time = Clock::now();
    std::vector<std::uint32_t> cols(m, 0);
    for (unsigned r = 0; r < m; ++r)
        for (unsigned c = 0; c < m; ++c)
            if (w.m.get(r, c)) cols[c] |= 1u << r;

    CensusResult result{};
    result.n = w.n;
    result.method = CensusMethod::submatrix;
    result.per_k.assign(m + 1, 0);
    for (unsigned k = 0; k <= m; ++k) {
        // Row subsets of size k, enumerated by their rank among all 2^m masks.
        result.per_k[k] = parallel_sum(0, std::uint64_t{1} << m, resolve_threads(threads),
                                       [&](std::uint64_t b, std::uint64_t e) {
                                           std::uint64_t total = 0;
                                           for (std::uint64_t rows = b; rows < e; ++rows) {
                                               if (static_cast<unsigned>(std::popcount(rows)) != k) continue;
                                               if (k == 0) {
                                                   ++total;
                                               } else if (m <= kMaxDim) {
                                                   total += count_independent(cols, static_cast<std::uint32_t>(rows),
                                                                              k, 0, 0, Basis<kMaxDim>{});
                                               } else {
                                                   total += count_independent(cols, static_cast<std::uint32_t>(rows),
                                                                              k, 0, 0, Basis<32>{});
                                               }
                                           }
                                           return total;
                                       });
        result.count += result.per_k[k];
    }
    result.elapsed_seconds = seconds_since(start_time);
    return result;
}

CensusResult sample_fraction(unsigned n, std::size_t k, std::uint64_t trials, std::uint64_t seed) {
    if (n % 2 == 0) throw std::invalid_argument("sample_fraction: n must be odd");
    const auto start_time = Clock::now();
    const WMatrix w = w_matrix_combinatorial(n);
    const std::size_t size = w.size();
    if (k > size) throw std::invalid_argument("sample_fraction: k exceeds 2^(n-1)");

    CensusResult result{};
    result.n = n;
    result.method = CensusMethod::sample;
    result.k = k;
    if (seed == 0) seed = entropy_seed();
    result.seed = seed;
    if (trials == 0) {
        result.elapsed_seconds = seconds_since(start_time);
        return result;
    }

    const long double subsets = std::exp(std::lgamma(static_cast<long double>(size) + 1) -
                                         std::lgamma(static_cast<long double>(k) + 1) -
                                         std::lgamma(static_cast<long double>(size - k) + 1));
    const bool enumerable = subsets * subsets < 1e18L &&
                            static_cast<long double>(trials) + 0.5L >= std::round(subsets * subsets);
    if (enumerable) {
        std::vector<std::size_t> rows(k), cols(k);
        for (std::size_t a = 0; a < k; ++a) rows[a] = a;
        do {
            for (std::size_t a = 0; a < k; ++a) cols[a] = a;
            do {
                ++result.trials;
                if (gf2::is_invertible(gf2::submatrix(w.m, rows, cols))) ++result.count;
            } while (next_combination(cols, size));
        } while (next_combination(rows, size));
        result.exact = true;
    } else {
        DeterministicRng rng(seed);
        Selection sel;
        for (std::uint64_t t = 0; t < trials; ++t) {
            sel.i_indices = rng.subset(size, k);
            sel.j_indices = rng.subset(size, k);
            if (is_max_ai_selection(w, sel)) ++result.count;
        }
        result.trials = trials;
    }
    result.fraction = static_cast<double>(result.count) / static_cast<double>(result.trials);
    result.elapsed_seconds = seconds_since(start_time);
    return result;
}

bool check_lower_bound(const CensusResult& result) {
    if (result.method == CensusMethod::sample)
        throw std::invalid_argument("check_lower_bound needs an exhaustive or submatrix count");
    const unsigned exponent = 1u << (result.n - 1);
    if (exponent >= 64) return false;
    return result.count > (std::uint64_t{1} << exponent);
}

Checkpoint read_checkpoint(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open checkpoint " + path.string());
    Checkpoint cp;
    std::string method;
    if (!(in >> cp.n >> method >> cp.last_rank >> cp.partial_count >> cp.elapsed_seconds))
        throw std::runtime_error("malformed checkpoint " + path.string());
    cp.method = census_method_from_string(method);
    return cp;
}

void write_checkpoint(const std::filesystem::path& path, const Checkpoint& cp) {
    const std::filesystem::path tmp = path.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::trunc);
        if (!out) throw std::runtime_error("cannot write checkpoint " + tmp.string());
        out << cp.n << ' ' << to_string(cp.method) << ' ' << cp.last_rank << ' ' << cp.partial_count << ' '
            << cp.elapsed_seconds << '\n';
    }
    std::filesystem::rename(tmp, path);
}

}  // namespace maxai
