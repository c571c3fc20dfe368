#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>

#include "maxai/construct.hpp"
#include "maxai/immunity.hpp"
#include "maxai/monomial.hpp"
#include "oracles.hpp"

using namespace maxai;

namespace {

const gf2::BitMatrix kWG3 = gf2::BitMatrix::from_rows({"1110", "1101", "1011", "0111"});

std::vector<std::vector<std::size_t>> subsets_of(std::size_t size) {
    std::vector<std::vector<std::size_t>> out;
    for (std::uint32_t mask = 0; mask < (1u << size); ++mask) {
        std::vector<std::size_t> s;
        for (std::size_t i = 0; i < size; ++i)
            if (mask >> i & 1) s.push_back(i + 1);
        out.push_back(s);
    }
    return out;
}

std::vector<std::size_t> random_subset(std::mt19937_64& rng, std::size_t size, std::size_t k) {
    std::vector<std::size_t> all(size);
    for (std::size_t i = 0; i < size; ++i) all[i] = i + 1;
    std::shuffle(all.begin(), all.end(), rng);
    all.resize(k);
    std::sort(all.begin(), all.end());
    return all;
}

std::vector<std::size_t> zero_based(std::vector<std::size_t> v) {
    for (auto& x : v) --x;
    return v;
}

oracle::Table to_table(const BooleanFunction& f) {
    oracle::Table t(f.size());
    for (PointIndex x = 0; x < f.size(); ++x) t[x] = f.eval(x);
    return t;
}

// XOR of v(Y) over the set positions of row must equal v(z).
bool row_reproduces(const gf2::BitVector& row, PointIndex z, const WMatrix& w, const MonomialBasis& basis) {
    gf2::BitVector acc(basis.size());
    for (std::size_t c = 0; c < row.size(); ++c)
        if (row.get(c)) acc ^= v_of(w.col_labels[c], basis);
    return acc == v_of(z, basis);
}

}  // namespace

TEST_CASE("w_matrix_inverse for G_3") {
    const WMatrix w = w_matrix_inverse(majority_indicator(3, true));
    CHECK(w.m == kWG3);
    CHECK(w.row_labels == std::vector<PointIndex>{0b011, 0b101, 0b110, 0b111});
    CHECK(w.col_labels == std::vector<PointIndex>{0b000, 0b001, 0b010, 0b100});
    CHECK(w.size() == 4);
    CHECK(gf2::is_invertible(w.m));
}

TEST_CASE("w_matrix_inverse matches the byte-matrix oracle and V(offset) = W V(onset)") {
    std::mt19937_64 rng(3);
    for (unsigned n : {3u, 5u, 7u}) {
        std::vector<BooleanFunction> bases{majority_indicator(n, true), majority_indicator(n, false)};
        const WMatrix wg = w_matrix_inverse(majority_indicator(n, true));
        for (int trial = 0; trial < 3; ++trial)
            bases.push_back(construct_random(wg, 1 + trial, 100 + trial).function);
        const MonomialBasis basis = build_basis(n, (n - 1) / 2);
        for (const auto& f : bases) {
            const WMatrix w = w_matrix_inverse(f);
            const auto ref = oracle::w_matrix(to_table(f), n);
            REQUIRE(ref.has_value());
            for (std::size_t r = 0; r < w.size(); ++r)
                for (std::size_t c = 0; c < w.size(); ++c) CHECK(w.m.get(r, c) == static_cast<bool>((*ref)[r][c]));
            CHECK(gf2::multiply(w.m, build_V(w.col_labels, basis)) == build_V(w.row_labels, basis));
            CHECK(gf2::is_invertible(w.m));
        }
    }
}

TEST_CASE("w_matrix_inverse rejects bases without maximum immunity") {
    CHECK_THROWS_AS(w_matrix_inverse(BooleanFunction::variable(3, 1)), std::invalid_argument);
    CHECK_THROWS_AS(w_matrix_inverse(BooleanFunction(3)), std::invalid_argument);
    CHECK_THROWS_AS(w_matrix_inverse(BooleanFunction::variable(4, 1)), std::invalid_argument);
}

TEST_CASE("coefficient_sequence") {
    using Seq = std::vector<std::uint8_t>;
    CHECK(coefficient_sequence(2, 1) == Seq{1, 1});
    CHECK(coefficient_sequence(3, 1) == Seq{1, 0});
    CHECK(coefficient_sequence(3, 2) == Seq{1, 1, 1});
    CHECK(coefficient_sequence(5, 2) == Seq{1, 1, 0});
    CHECK(coefficient_sequence(1, 0) == Seq{1});
    CHECK_THROWS_AS(coefficient_sequence(2, 2), std::invalid_argument);
    CHECK_THROWS_AS(coefficient_sequence(6, 2), std::invalid_argument);
}

TEST_CASE("combinatorial rows reproduce v(Z) for every offset point") {
    for (unsigned n : {1u, 3u, 5u, 7u, 9u}) {
        CAPTURE(n);
        const WMatrix w = w_matrix_combinatorial(n);
        const MonomialBasis basis = build_basis(n, (n - 1) / 2);
        for (std::size_t r = 0; r < w.size(); ++r) CHECK(row_reproduces(w.m.row(r), w.row_labels[r], w, basis));
    }
}

TEST_CASE("w_row_combinatorial examples") {
    CHECK(w_row_combinatorial(0b011, 3) == gf2::BitVector::from_string("1110"));
    CHECK(w_row_combinatorial(0b111, 3) == gf2::BitVector::from_string("0111"));
    CHECK_THROWS_AS(w_row_combinatorial(0b001, 3), std::invalid_argument);

    const gf2::BitVector top = w_row_combinatorial(0b11111, 5);
    const auto onset = canonical_point_order(majority_indicator(5, true)).onset;
    REQUIRE(top.size() == 16);
    for (std::size_t c = 0; c < onset.size(); ++c) CHECK(top.get(c) == (onset[c] != 0));
}

TEST_CASE("combinatorial W equals inverse W") {
    for (unsigned n : {1u, 3u, 5u, 7u, 9u}) {
        CAPTURE(n);
        const WMatrix a = w_matrix_combinatorial(n);
        const WMatrix b = w_matrix_inverse(majority_indicator(n, true));
        CHECK(a.m == b.m);
        CHECK(a.row_labels == b.row_labels);
        CHECK(a.col_labels == b.col_labels);
    }
    CHECK(w_matrix_combinatorial(3).m == kWG3);
    CHECK_THROWS_AS(w_matrix_combinatorial(4), std::invalid_argument);
}

TEST_CASE("complete_j_indices") {
    const WMatrix w = w_matrix_combinatorial(3);
    using Idx = std::vector<std::size_t>;
    CHECK(complete_j_indices(w, Idx{1}) == Idx{1});
    CHECK(complete_j_indices(w, Idx{4}) == Idx{2});
    CHECK(complete_j_indices(w, Idx{1, 2, 3, 4}) == Idx{1, 2, 3, 4});
    CHECK(complete_j_indices(w, Idx{}).empty());

    // Every i-subset at n=3 completes, and the result is the smallest valid j-list.
    const auto all = subsets_of(4);
    for (const auto& i : all) {
        const Idx j = complete_j_indices(w, i);
        REQUIRE(j.size() == i.size());
        CHECK(is_max_ai_selection(w, {i, j}));
        for (const auto& other : all)
            if (other.size() == i.size() && other < j) CHECK_FALSE(is_max_ai_selection(w, {i, other}));
    }
    CHECK_THROWS_AS(complete_j_indices(w, Idx{2, 1}), std::invalid_argument);
    CHECK_THROWS_AS(complete_j_indices(w, Idx{5}), std::invalid_argument);
}

TEST_CASE("complete_j_indices on random i-subsets at n=5 and n=7") {
    std::mt19937_64 rng(2);
    for (unsigned n : {5u, 7u}) {
        const WMatrix w = w_matrix_combinatorial(n);
        for (int trial = 0; trial < 1000; ++trial) {
            std::uniform_int_distribution<std::size_t> kd(0, w.size());
            const auto i = random_subset(rng, w.size(), kd(rng));
            const auto j = complete_j_indices(w, i);
            REQUIRE(j.size() == i.size());
            CHECK(is_max_ai_selection(w, {i, j}));
            CHECK(gf2::rank(gf2::submatrix(w.m, zero_based(i), zero_based(j))) == i.size());
        }
    }
}

TEST_CASE("assemble_function examples") {
    const WMatrix w = w_matrix_combinatorial(3);
    CHECK(assemble_function(w, {}) == majority_indicator(3, true));
    const BooleanFunction f11 = assemble_function(w, {{1}, {1}});
    const std::vector<PointIndex> e11{0b001, 0b010, 0b011, 0b100};
    CHECK(f11.onset() == e11);
    CHECK(has_max_ai_odd(f11));
    const BooleanFunction f14 = assemble_function(w, {{1}, {4}});
    const std::vector<PointIndex> e14{0b000, 0b001, 0b010, 0b011};
    CHECK(f14.onset() == e14);
    CHECK_FALSE(has_max_ai_odd(f14));
    CHECK(assemble_function(w, {{1, 2, 3, 4}, {1, 2, 3, 4}}) == majority_indicator(3, false));

    CHECK(is_max_ai_selection(w, {}));
    CHECK(is_max_ai_selection(w, {{1}, {1}}));
    CHECK_FALSE(is_max_ai_selection(w, {{1}, {4}}));
}

TEST_CASE("selection validation") {
    const WMatrix w = w_matrix_combinatorial(3);
    CHECK_THROWS_AS(assemble_function(w, {{1, 2}, {1}}), std::invalid_argument);
    CHECK_THROWS_AS(assemble_function(w, {{0}, {1}}), std::invalid_argument);
    CHECK_THROWS_AS(is_max_ai_selection(w, {{5}, {1}}), std::invalid_argument);
    CHECK_THROWS_AS(is_max_ai_selection(w, {{2, 2}, {1, 2}}), std::invalid_argument);
    CHECK_NOTHROW(validate_selection({{1, 3}, {2, 4}}, 4));
    CHECK(Selection{{1, 3}, {2, 4}}.to_string() == "(1,3;2,4)");
    CHECK(Selection{}.to_string() == "(;)");
}

TEST_CASE("selection test equals immunity test for every selection at n=3") {
    const WMatrix w = w_matrix_combinatorial(3);
    const auto all = subsets_of(4);
    std::set<std::string> seen;
    int pairs = 0, invertible = 0;
    for (const auto& i : all) {
        for (const auto& j : all) {
            if (i.size() != j.size()) continue;
            ++pairs;
            const Selection sel{i, j};
            const BooleanFunction f = assemble_function(w, sel);
            CAPTURE(sel.to_string());
            CHECK(f.is_balanced());
            const bool sub = is_max_ai_selection(w, sel);
            CHECK(sub == has_max_ai_odd(f));
            CHECK(sub == (algebraic_immunity(f).ai == 2));
            CHECK(sub == oracle::max_ai(to_table(f), 3));
            invertible += sub;
            // Distinct selections give distinct functions.
            CHECK(seen.insert(f.to_hex()).second);
        }
    }
    CHECK(pairs == 70);
    CHECK(invertible == 56);
}

TEST_CASE("single flips follow the W entry") {
    for (unsigned n : {3u, 5u}) {
        const WMatrix w = w_matrix_combinatorial(n);
        for (std::size_t i = 1; i <= w.size(); ++i)
            for (std::size_t j = 1; j <= w.size(); ++j)
                CHECK(has_max_ai_odd(assemble_function(w, {{i}, {j}})) == w.m.get(i - 1, j - 1));
    }
}

TEST_CASE("selection test equals rank test on random selections at n=5 and n=7") {
    std::mt19937_64 rng(11);
    for (unsigned n : {5u, 7u}) {
        const WMatrix w = w_matrix_combinatorial(n);
        const int trials = n == 5 ? 10000 : 1000;
        int agree = 0, positive = 0;
        for (int trial = 0; trial < trials; ++trial) {
            std::uniform_int_distribution<std::size_t> kd(0, w.size());
            const std::size_t k = kd(rng);
            const Selection sel{random_subset(rng, w.size(), k), random_subset(rng, w.size(), k)};
            const bool sub = is_max_ai_selection(w, sel);
            agree += sub == has_max_ai_odd(assemble_function(w, sel));
            positive += sub;
        }
        CHECK(agree == trials);
        CHECK(positive > 0);
    }
}

TEST_CASE("construct_random") {
    const WMatrix w3 = w_matrix_combinatorial(3);
    CHECK(construct_random(w3, 0, 42).function == majority_indicator(3, true));
    CHECK(construct_random(3, 0, 42).function == majority_indicator(3, true));

    const Construction a = construct_random(5, 1, 99);
    const Construction b = construct_random(5, 1, 99);
    CHECK(a.selection == b.selection);
    CHECK(a.function == b.function);
    CHECK(a.seed == 99);
    CHECK(algebraic_immunity(a.function).ai == 3);

    const Construction c = construct_random(7, 5, 99);
    CHECK(c.selection.k() == 5);
    CHECK(has_max_ai_odd(c.function));
    CHECK(algebraic_immunity(c.function).ai == 4);

    const Construction fresh = construct_random(5, 2, 0);
    CHECK(fresh.seed != 0);
    CHECK(has_max_ai_odd(fresh.function));
    CHECK(construct_random(5, 2, fresh.seed).function == fresh.function);

    CHECK(construct_random(w3, 4, 1).function == majority_indicator(3, false));
    CHECK_THROWS_AS(construct_random(w3, 5, 1), std::invalid_argument);

    const WMatrix w5 = w_matrix_combinatorial(5);
    for (std::uint64_t seed = 1; seed <= 40; ++seed)
        CHECK(has_max_ai_odd(construct_random(w5, seed % w5.size(), seed).function));
}
