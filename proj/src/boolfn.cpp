#include "maxai/boolfn.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cctype>
#include <stdexcept>

namespace maxai {

namespace {

void check_arity(unsigned n) {
    if (n < 1 || n > kMaxArity)
        throw std::invalid_argument("arity must be in 1.." + std::to_string(kMaxArity) + ", got " +
                                    std::to_string(n));
}

void check_point(PointIndex x, unsigned n) {
    if (n < 32 && (x >> n) != 0)
        throw std::invalid_argument("point " + std::to_string(x) + " does not have arity " + std::to_string(n));
}

int hex_value(char c) {
    if (c >= '0' && c <= '9') return c - '0';
    c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
    if (c >= 'A' && c <= 'F') return c - 'A' + 10;
    return -1;
}

}  // namespace

unsigned point_weight(PointIndex x) { return static_cast<unsigned>(std::popcount(x)); }

PointIndex point_from_bits(std::span<const std::uint8_t> coords) {
    PointIndex x = 0;
    for (std::uint8_t c : coords) {
        if (c > 1) throw std::invalid_argument("point coordinates must be 0 or 1");
        x = (x << 1) | c;
    }
    return x;
}

std::string point_to_string(PointIndex x, unsigned n) {
    std::string s(n, '0');
    for (unsigned i = 1; i <= n; ++i)
        if (x & variable_mask(i, n)) s[i - 1] = '1';
    return s;
}

PointIndex point_from_string(std::string_view bits) {
    std::vector<std::uint8_t> coords;
    for (char c : bits) {
        if (c != '0' && c != '1') throw std::invalid_argument("point string may only contain '0' and '1'");
        coords.push_back(static_cast<std::uint8_t>(c - '0'));
    }
    return point_from_bits(coords);
}

std::vector<unsigned> monomial_variables(Monomial m, unsigned n) {
    std::vector<unsigned> vars;
    for (unsigned i = 1; i <= n; ++i)
        if (m & variable_mask(i, n)) vars.push_back(i);
    return vars;
}

bool monomial_less(Monomial a, Monomial b) {
    const int da = std::popcount(a), db = std::popcount(b);
    if (da != db) return da < db;
    return a > b;
}

// ---------------------------------------------------------------------------

BooleanFunction::BooleanFunction(unsigned n) : n_(n) {
    check_arity(n);
    table_ = gf2::BitVector(std::size_t{1} << n);
}

BooleanFunction::BooleanFunction(unsigned n, gf2::BitVector table) : n_(n), table_(std::move(table)) {
    check_arity(n);
    if (table_.size() != (std::size_t{1} << n))
        throw std::invalid_argument("truth table length must be 2^n");
}

BooleanFunction BooleanFunction::constant(unsigned n, bool value) {
    BooleanFunction f(n);
    return value ? complement(f) : f;
}

BooleanFunction BooleanFunction::variable(unsigned n, unsigned var) {
    if (var < 1 || var > n) throw std::invalid_argument("variable index out of range");
    BooleanFunction f(n);
    const Monomial m = variable_mask(var, n);
    for (PointIndex x = 0; x < f.size(); ++x)
        if (x & m) f.table_.set(x);
    return f;
}

BooleanFunction BooleanFunction::from_onset(unsigned n, std::span<const PointIndex> onset) {
    BooleanFunction f(n);
    for (PointIndex x : onset) {
        check_point(x, n);
        f.table_.set(x);
    }
    return f;
}

BooleanFunction BooleanFunction::from_hex(unsigned n, std::string_view hex) {
    check_arity(n);
    if (hex.size() >= 2 && hex[0] == '0' && (hex[1] == 'x' || hex[1] == 'X')) hex.remove_prefix(2);
    const std::size_t bits = std::size_t{1} << n;
    const std::size_t digits = std::max<std::size_t>(1, bits / 4);
    if (hex.size() != digits)
        throw std::invalid_argument("truth table hex for n=" + std::to_string(n) + " must have " +
                                    std::to_string(digits) + " digits, got " + std::to_string(hex.size()));
    BooleanFunction f(n);
    for (std::size_t d = 0; d < digits; ++d) {
        const int v = hex_value(hex[d]);
        if (v < 0) throw std::invalid_argument(std::string("invalid hex digit '") + hex[d] + "'");
        for (std::size_t b = 0; b < 4; ++b) {
            const bool bit = (v >> (3 - b)) & 1;
            const std::size_t x = 4 * d + b;
            if (x >= bits) {
                if (bit) throw std::invalid_argument("truth table hex has bits set beyond 2^n");
                continue;
            }
            if (bit) f.table_.set(x);
        }
    }
    return f;
}

bool BooleanFunction::eval(std::span<const std::uint8_t> coords) const {
    if (coords.size() != n_)
        throw std::invalid_argument("point has " + std::to_string(coords.size()) +
                                    " coordinates, function has arity " + std::to_string(n_));
    return eval(point_from_bits(coords));
}

std::vector<PointIndex> BooleanFunction::onset() const {
    std::vector<PointIndex> pts;
    pts.reserve(weight());
    for (std::size_t x = table_.find_first(); x < size(); x = table_.find_next(x + 1))
        pts.push_back(static_cast<PointIndex>(x));
    return pts;
}

std::vector<PointIndex> BooleanFunction::offset() const {
    std::vector<PointIndex> pts;
    pts.reserve(size() - weight());
    for (PointIndex x = 0; x < size(); ++x)
        if (!table_.get(x)) pts.push_back(x);
    return pts;
}

std::string BooleanFunction::to_hex() const {
    static constexpr std::array<char, 16> kDigits{'0', '1', '2', '3', '4', '5', '6', '7',
                                                  '8', '9', 'A', 'B', 'C', 'D', 'E', 'F'};
    const std::size_t digits = std::max<std::size_t>(1, size() / 4);
    std::string out(digits, '0');
    for (std::size_t d = 0; d < digits; ++d) {
        unsigned v = 0;
        for (std::size_t b = 0; b < 4; ++b) {
            const std::size_t x = 4 * d + b;
            if (x < size() && table_.get(x)) v |= 1u << (3 - b);
        }
        out[d] = kDigits[v];
    }
    return out;
}

BooleanFunction complement(const BooleanFunction& f) {
    gf2::BitVector t = f.table();
    auto words = t.words();
    for (auto& w : words) w = ~w;
    const std::size_t rem = t.size() % gf2::kWordBits;
    if (rem != 0) words.back() &= (gf2::Word{1} << rem) - 1;
    return BooleanFunction(f.arity(), std::move(t));
}

BooleanFunction flip_points(const BooleanFunction& f, std::span<const PointIndex> points) {
    std::vector<PointIndex> unique(points.begin(), points.end());
    std::sort(unique.begin(), unique.end());
    unique.erase(std::unique(unique.begin(), unique.end()), unique.end());
    gf2::BitVector t = f.table();
    for (PointIndex x : unique) {
        check_point(x, f.arity());
        t.flip(x);
    }
    return BooleanFunction(f.arity(), std::move(t));
}

BooleanFunction majority_indicator(unsigned n, bool a) {
    check_arity(n);
    if (n % 2 == 0) throw std::invalid_argument("majority_indicator needs odd n, got " + std::to_string(n));
    const unsigned t = (n - 1) / 2;
    gf2::BitVector table(std::size_t{1} << n);
    for (PointIndex x = 0; x < table.size(); ++x)
        if ((point_weight(x) <= t) == a) table.set(x);
    return BooleanFunction(n, std::move(table));
}

// ---------------------------------------------------------------------------

AnfPolynomial::AnfPolynomial(unsigned n, std::vector<Monomial> terms) : n_(n), terms_(std::move(terms)) {
    for (Monomial m : terms_)
        if (n_ < 32 && (m >> n_) != 0) throw std::invalid_argument("monomial uses a variable beyond the arity");
    std::sort(terms_.begin(), terms_.end(), monomial_less);
    // x + x = 0 over GF(2): drop pairs.
    std::vector<Monomial> reduced;
    for (std::size_t i = 0; i < terms_.size();) {
        std::size_t j = i;
        while (j < terms_.size() && terms_[j] == terms_[i]) ++j;
        if ((j - i) % 2 == 1) reduced.push_back(terms_[i]);
        i = j;
    }
    terms_ = std::move(reduced);
}

AnfPolynomial AnfPolynomial::from_coefficients(unsigned n, std::span<const Monomial> basis,
                                               const gf2::BitVector& coeffs) {
    if (coeffs.size() != basis.size()) throw std::invalid_argument("coefficient vector does not match basis size");
    std::vector<Monomial> terms;
    for (std::size_t i = coeffs.find_first(); i < coeffs.size(); i = coeffs.find_next(i + 1))
        terms.push_back(basis[i]);
    return AnfPolynomial(n, std::move(terms));
}

std::optional<unsigned> AnfPolynomial::degree() const {
    if (terms_.empty()) return std::nullopt;
    return static_cast<unsigned>(std::popcount(terms_.back()));
}

bool AnfPolynomial::eval(PointIndex x) const {
    bool v = false;
    for (Monomial m : terms_) v ^= (x & m) == m;
    return v;
}

std::vector<std::vector<unsigned>> AnfPolynomial::term_variables() const {
    std::vector<std::vector<unsigned>> out;
    out.reserve(terms_.size());
    for (Monomial m : terms_) out.push_back(monomial_variables(m, n_));
    return out;
}

std::string AnfPolynomial::to_string() const {
    if (terms_.empty()) return "0";
    std::string s;
    for (Monomial m : terms_) {
        if (!s.empty()) s += " + ";
        if (m == 0) {
            s += "1";
            continue;
        }
        bool first = true;
        for (unsigned v : monomial_variables(m, n_)) {
            if (!first) s += "*";
            s += "x" + std::to_string(v);
            first = false;
        }
    }
    return s;
}

void moebius_transform(gf2::BitVector& table, unsigned n) {
    static constexpr std::array<gf2::Word, 6> kLow{
        0x5555555555555555ull, 0x3333333333333333ull, 0x0F0F0F0F0F0F0F0Full,
        0x00FF00FF00FF00FFull, 0x0000FFFF0000FFFFull, 0x00000000FFFFFFFFull};
    auto words = table.words();
    const unsigned in_word = std::min(n, 6u);
    for (auto& w : words)
        for (unsigned s = 0; s < in_word; ++s) w ^= (w & kLow[s]) << (1u << s);
    for (std::size_t stride = 1; stride < words.size(); stride <<= 1)
        for (std::size_t j = 0; j < words.size(); ++j)
            if ((j & stride) == 0) words[j + stride] ^= words[j];
}

AnfPolynomial anf_from_truth_table(const BooleanFunction& f) {
    gf2::BitVector coeffs = f.table();
    moebius_transform(coeffs, f.arity());
    std::vector<Monomial> terms;
    for (std::size_t m = coeffs.find_first(); m < coeffs.size(); m = coeffs.find_next(m + 1))
        terms.push_back(static_cast<Monomial>(m));
    return AnfPolynomial(f.arity(), std::move(terms));
}

BooleanFunction truth_table_from_anf(const AnfPolynomial& p) {
    gf2::BitVector table(std::size_t{1} << p.arity());
    for (Monomial m : p.terms()) table.set(m);
    moebius_transform(table, p.arity());
    return BooleanFunction(p.arity(), std::move(table));
}

std::optional<unsigned> degree(const BooleanFunction& f) { return anf_from_truth_table(f).degree(); }

}  // namespace maxai
