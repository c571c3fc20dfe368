#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "maxai/census.hpp"
#include "maxai/immunity.hpp"
#include "maxai/monomial.hpp"
#include "oracles.hpp"

using namespace maxai;

namespace {

std::uint64_t oracle_count_max_ai(unsigned n) {
    std::uint64_t count = 0;
    const std::uint64_t functions = std::uint64_t{1} << (1u << n);
    for (std::uint64_t bits = 0; bits < functions; ++bits) {
        gf2::BitVector t(std::size_t{1} << n);
        t.words()[0] = bits;
        if (algebraic_immunity(BooleanFunction(n, t)).ai == (n + 1) / 2) ++count;
    }
    return count;
}

std::filesystem::path temp_path(const char* name) {
    return std::filesystem::temp_directory_path() / (std::string("maxai_test_") + name);
}

}  // namespace

TEST_CASE("exhaustive counts at n=1 and n=3") {
    const CensusResult one = count_exhaustive(1);
    CHECK(one.count == 2);
    CHECK(one.complete);
    const CensusResult three = count_exhaustive(3);
    CHECK(three.count == 56);
    CHECK(three.method == CensusMethod::exhaustive);
    CHECK(three.count == oracle_count_max_ai(3));
    CHECK(oracle_count_max_ai(1) == 2);
    CHECK_THROWS_AS(count_exhaustive(4), std::invalid_argument);
}

TEST_CASE("exhaustive count matches a byte-matrix sweep over balanced onsets") {
    // 70 balanced functions at n=3, each tested with the independent rank oracle.
    std::uint64_t count = 0;
    for (std::uint32_t bits = 0; bits < 256; ++bits) {
        if (__builtin_popcount(bits) != 4) continue;
        oracle::Table t(8);
        for (unsigned x = 0; x < 8; ++x) t[x] = bits >> x & 1;
        count += oracle::max_ai(t, 3);
    }
    CHECK(count == count_exhaustive(3).count);
}

TEST_CASE("exhaustive cost and refusal") {
    CHECK(exhaustive_cost(3) == doctest::Approx(70));
    CHECK(exhaustive_cost(5) == doctest::Approx(601080390.0));
    CHECK_THROWS_AS(count_exhaustive(7), CensusTooLarge);
}

TEST_CASE("partitioned exhaustive counting equals the sequential count") {
    ExhaustiveOptions seq;
    seq.threads = 1;
    seq.batch = 7;
    const std::uint64_t base = count_exhaustive(3, seq).count;
    for (unsigned threads : {2u, 3u, 5u}) {
        ExhaustiveOptions par;
        par.threads = threads;
        par.batch = 11;
        CHECK(count_exhaustive(3, par).count == base);
    }
}

TEST_CASE("checkpoint and resume give the same total") {
    const auto path = temp_path("resume.ckpt");
    std::filesystem::remove(path);
    ExhaustiveOptions opts;
    opts.threads = 2;
    opts.batch = 9;
    opts.checkpoint = path;
    opts.max_batches = 2;

    const CensusResult first = count_exhaustive(3, opts);
    CHECK_FALSE(first.complete);
    const Checkpoint cp = read_checkpoint(path);
    CHECK(cp.n == 3);
    CHECK(cp.last_rank == 17);
    CHECK(cp.partial_count == first.count);

    CensusResult last = first;
    int calls = 1;
    while (!last.complete && calls < 20) {
        last = count_exhaustive(3, opts);
        ++calls;
    }
    CHECK(last.complete);
    CHECK(last.count == 56);
    CHECK(calls == 4);  // 70 subsets in batches of 9, two per call
    std::filesystem::remove(path);
}

TEST_CASE("checkpoint file format") {
    const auto path = temp_path("format.ckpt");
    write_checkpoint(path, {5, CensusMethod::exhaustive, 123, 45, 6.5});
    std::ifstream in(path);
    std::string line;
    std::getline(in, line);
    CHECK(line.rfind("5 exhaustive 123 45 ", 0) == 0);
    const Checkpoint cp = read_checkpoint(path);
    CHECK(cp.last_rank == 123);
    CHECK(cp.partial_count == 45);
    CHECK(cp.elapsed_seconds == doctest::Approx(6.5));
    std::filesystem::remove(path);
    CHECK_THROWS(read_checkpoint(path));
}

TEST_CASE("submatrix counts") {
    const WMatrix w3 = w_matrix_combinatorial(3);
    const CensusResult r = count_submatrix(w3);
    CHECK(r.count == 56);
    REQUIRE(r.per_k.size() == 5);
    CHECK(r.per_k[0] == 1);
    CHECK(r.per_k[1] == 12);
    CHECK(r.per_k[4] == 1);
    for (std::size_t k = 0; k <= 4; ++k) CHECK(r.per_k[k] == r.per_k[4 - k]);
    CHECK(count_submatrix(w3, 3).per_k == r.per_k);

    // Sizes of the enumeration: sum over k of C(4,k)^2 pairs.
    std::uint64_t pairs = 0;
    for (unsigned k = 0; k <= 4; ++k) pairs += binomial(4, k) * binomial(4, k);
    CHECK(pairs == 70);
    CHECK(pairs == binomial(8, 4));

    for (unsigned m : {1u, 3u, 6u, 10u}) {
        WMatrix id;
        id.n = 0;
        id.m = gf2::BitMatrix::identity(m);
        const CensusResult ri = count_submatrix(id);
        CHECK(ri.count == (std::uint64_t{1} << m));
        for (unsigned k = 0; k <= m; ++k) CHECK(ri.per_k[k] == binomial(m, k));
    }

    WMatrix wide;
    wide.m = gf2::BitMatrix::identity(25);
    CHECK_THROWS_AS(count_submatrix(wide), CensusTooLarge);
}

TEST_CASE("submatrix per-k counts agree with exhaustive sampling at n=3") {
    const CensusResult r = count_submatrix(w_matrix_combinatorial(3));
    for (std::size_t k = 0; k <= 4; ++k) {
        const CensusResult s = sample_fraction(3, k, 1000, 5);
        CHECK(s.exact);
        CHECK(s.count == r.per_k[k]);
        CHECK(s.trials == binomial(4, k) * binomial(4, k));
    }
}

TEST_CASE("sample_fraction") {
    const CensusResult empty = sample_fraction(3, 1, 0, 5);
    CHECK(empty.trials == 0);
    CHECK_FALSE(empty.fraction.has_value());

    const CensusResult all = sample_fraction(3, 1, 16, 5);
    CHECK(all.exact);
    CHECK(all.count == 12);
    CHECK(all.fraction.value() == doctest::Approx(12.0 / 16.0));

    const CensusResult a = sample_fraction(5, 3, 2000, 1);
    const CensusResult b = sample_fraction(5, 3, 2000, 1);
    CHECK_FALSE(a.exact);
    CHECK(a.trials == 2000);
    CHECK(a.count == b.count);
    CHECK(a.fraction == b.fraction);
    CHECK(a.seed == 1);
    CHECK(a.count > 0);
    CHECK(a.count < 2000);

    CHECK(sample_fraction(3, 0, 1, 9).fraction.value() == doctest::Approx(1.0));
    CHECK_THROWS_AS(sample_fraction(4, 1, 10, 1), std::invalid_argument);
    CHECK_THROWS_AS(sample_fraction(3, 5, 10, 1), std::invalid_argument);
}

TEST_CASE("lower bound check") {
    CensusResult r;
    r.n = 3;
    r.count = 56;
    CHECK(check_lower_bound(r));
    r.count = 16;
    CHECK_FALSE(check_lower_bound(r));
    r.count = 17;
    CHECK(check_lower_bound(r));
    CHECK_FALSE(check_lower_bound(count_exhaustive(1)));
    r.method = CensusMethod::sample;
    CHECK_THROWS_AS(check_lower_bound(r), std::invalid_argument);
}

TEST_CASE("method names") {
    CHECK(std::string(to_string(CensusMethod::submatrix)) == "submatrix");
    CHECK(census_method_from_string("sample") == CensusMethod::sample);
    CHECK_THROWS_AS(census_method_from_string("guess"), std::invalid_argument);
}
