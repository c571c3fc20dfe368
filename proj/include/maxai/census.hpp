#pragma once

// Counting functions of maximum algebraic immunity at odd n.
//
// Three independent routes: test every balanced function with the rank
// criterion, count the invertible square submatrices of W(G_n), or sample
// random (i, j) selections of one size.

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "maxai/construct.hpp"

namespace maxai {

enum class CensusMethod { exhaustive, submatrix, sample };

const char* to_string(CensusMethod method);
CensusMethod census_method_from_string(const std::string& name);

struct CensusResult {
    unsigned n = 0;
    CensusMethod method = CensusMethod::exhaustive;
    /// Functions (or invertible submatrices) found; for sampling, the number of
    /// invertible draws.
    std::uint64_t count = 0;
    /// Submatrix method: count per size k = 0..2^(n-1). Empty otherwise.
    std::vector<std::uint64_t> per_k;
    /// Sampling: selection size, number of draws and the invertible fraction
    /// (nullopt when no draws were made).
    std::size_t k = 0;
    std::uint64_t trials = 0;
    std::optional<double> fraction;
    /// True when sampling enumerated every pair instead of drawing.
    bool exact = false;
    std::uint64_t seed = 0;
    double elapsed_seconds = 0;
    /// False when an exhaustive run stopped early; resume from its checkpoint.
    bool complete = true;
};

/// Thrown when a requested census is far beyond what can be enumerated.
class CensusTooLarge : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Number of rank checks count_exhaustive(n) performs: C(2^n, 2^(n-1)), as a
/// floating-point value since it overflows 64 bits from n = 7 on.
long double exhaustive_cost(unsigned n);

struct ExhaustiveOptions {
    /// 0 uses std::thread::hardware_concurrency().
    unsigned threads = 0;
    /// Subsets per checkpointed batch.
    std::uint64_t batch = std::uint64_t{1} << 24;
    /// When set, progress is written after every batch and an existing file is resumed.
    std::optional<std::filesystem::path> checkpoint;
    /// Stop after this many batches in this call (0 = run to completion).
    std::uint64_t max_batches = 0;
};

/// Enumerates every weight-2^(n-1) onset in colexicographic order and counts
/// those whose V(onset) is invertible. Refuses n >= 7 with CensusTooLarge.
CensusResult count_exhaustive(unsigned n, const ExhaustiveOptions& options = {});

/// Counts invertible k x k submatrices of w.m over all k (k = 0 contributes 1).
/// Matrices wider than 24 columns are refused with CensusTooLarge.
CensusResult count_submatrix(const WMatrix& w, unsigned threads = 0);

/// Fraction of uniformly drawn (i-set, j-set) pairs of size k whose submatrix
/// of W(G_n) is invertible. When trials reaches the number of distinct pairs,
/// every pair is enumerated once instead and the result is exact.
CensusResult sample_fraction(unsigned n, std::size_t k, std::uint64_t trials, std::uint64_t seed);

/// count > 2^(2^(n-1)). Sampling results are rejected.
bool check_lower_bound(const CensusResult& result);

/// Checkpoint line: "n method last_rank partial_count elapsed_seconds".
struct Checkpoint {
    unsigned n = 0;
    CensusMethod method = CensusMethod::exhaustive;
    std::uint64_t last_rank = 0;
    std::uint64_t partial_count = 0;
    double elapsed_seconds = 0;
};

Checkpoint read_checkpoint(const std::filesystem::path& path);
void write_checkpoint(const std::filesystem::path& path, const Checkpoint& cp);

}  // namespace maxai
