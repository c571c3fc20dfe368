#include "maxai/cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "maxai/census.hpp"
#include "maxai/construct.hpp"
#include "maxai/immunity.hpp"
#include "maxai/random.hpp"

namespace maxai::cli {

namespace {

// Library preconditions violated by user input surface as this, mapped to exit 2.
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

void require_odd_n(unsigned n, unsigned max_n) {
    if (n < 1 || n % 2 == 0) throw UsageError("n must be odd, got " + std::to_string(n));
    if (n > max_n) throw UsageError("n must be at most " + std::to_string(max_n) + " here, got " + std::to_string(n));
}

unsigned default_threads() {
    if (const char* env = std::getenv(kThreadsEnv)) {
        try {
            const unsigned long v = std::stoul(env);
            if (v > 0 && v < 4096) return static_cast<unsigned>(v);
        } catch (const std::exception&) {
        }
    }
    return 0;
}

std::string join(const std::vector<std::size_t>& v) {
    std::string s;
    for (std::size_t a = 0; a < v.size(); ++a) s += (a ? "," : "") + std::to_string(v[a]);
    return s;
}

std::string labels_line(const std::vector<PointIndex>& pts, unsigned n) {
    std::string s;
    for (std::size_t a = 0; a < pts.size(); ++a) s += (a ? " " : "") + point_to_string(pts[a], n);
    return s;
}

std::string matrix_inline(const gf2::BitMatrix& m) {
    std::string s = "[";
    for (std::size_t r = 0; r < m.rows(); ++r) {
        s += r ? ",[" : "[";
        for (std::size_t c = 0; c < m.cols(); ++c) s += (c ? "," : "") + std::string(m.get(r, c) ? "1" : "0");
        s += "]";
    }
    return s + "]";
}

std::vector<std::size_t> zero_based(const std::vector<std::size_t>& v) {
    std::vector<std::size_t> out = v;
    for (auto& x : out) --x;
    return out;
}

// ---------------------------------------------------------------------------
// gen

struct GenOptions {
    unsigned n = 0;
    std::optional<std::size_t> k;
    std::uint64_t seed = 0;
    std::vector<std::size_t> i;
    std::vector<std::size_t> j;
    std::string verify;
    bool allow_full_k = false;
    bool json = false;
};

int cmd_gen(const GenOptions& opt, std::ostream& out, std::ostream& err) {
    require_odd_n(opt.n, 15);
    const std::size_t half = std::size_t{1} << (opt.n - 1);
    if (!opt.j.empty() && opt.i.empty()) throw UsageError("--j needs --i");
    std::size_t k = opt.k.value_or(opt.i.empty() ? 1 : opt.i.size());
    if (!opt.i.empty() && k != opt.i.size())
        throw UsageError("--k " + std::to_string(k) + " disagrees with " + std::to_string(opt.i.size()) + " --i indices");
    const std::size_t k_max = opt.allow_full_k ? half : half - 1;
    if (k > k_max)
        throw UsageError("k must be in 0.." + std::to_string(k_max) + " for n=" + std::to_string(opt.n) +
                         (opt.allow_full_k ? "" : " (use --allow-full-k for k=2^(n-1))"));
    const bool verify = opt.verify.empty() ? opt.n <= 9 : opt.verify == "on";

    const WMatrix w = w_matrix_combinatorial(opt.n);
    RunRecord record;
    record.command = "gen";
    record.n = opt.n;
    record.k = k;
    Selection sel;
    if (opt.i.empty()) {
        Construction c = construct_random(w, k, opt.seed);
        sel = std::move(c.selection);
        record.seed = c.seed;
    } else {
        sel.i_indices = opt.i;
        try {
            sel.j_indices = opt.j.empty() ? complete_j_indices(w, sel.i_indices) : opt.j;
            validate_selection(sel, w.size());
        } catch (const std::invalid_argument& e) {
            throw UsageError(e.what());
        }
        if (!opt.j.empty() && !is_max_ai_selection(w, sel)) {
            const gf2::BitMatrix minor = gf2::submatrix(w.m, zero_based(sel.i_indices), zero_based(sel.j_indices));
            err << "error: submatrix W" << sel.to_string() << " = "
                << (minor.rows() <= 8 ? matrix_inline(minor) : std::string("(") + std::to_string(minor.rows()) + "x" +
                                                                  std::to_string(minor.cols()) + ")")
                << " is singular (rank " << gf2::rank(minor) << " of " << minor.rows()
                << "); this selection does not give maximum algebraic immunity\n";
            return kExitFailure;
        }
    }
    const BooleanFunction f = assemble_function(w, sel);
    record.i_indices = sel.i_indices;
    record.j_indices = sel.j_indices;
    record.truth_table_hex = f.to_hex();
    record.anf_terms = anf_from_truth_table(f).term_variables();
    record.ai_claimed = (opt.n + 1) / 2;
    if (verify) {
        record.ai_verified = has_max_ai_odd(f);
        if (record.ai_verified && opt.n <= 7) record.ai_verified = algebraic_immunity(f).ai == record.ai_claimed;
    }
    if (opt.json)
        out << to_json(record).dump() << "\n";
    else
        out << to_text(record);
    if (verify && !record.ai_verified) {
        err << "error: constructed function failed verification for selection " << sel.to_string() << "\n";
        return kExitFailure;
    }
    return kExitOk;
}

// ---------------------------------------------------------------------------
// ai

int cmd_ai(unsigned n, const std::string& tt, bool json, std::ostream& out) {
    BooleanFunction f(1);
    try {
        f = BooleanFunction::from_hex(n, tt);
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
    const ImmunityReport report = algebraic_immunity(f);
    const std::string witness = report.witness ? report.witness->to_string() : "none";
    if (json) {
        nlohmann::ordered_json j;
        j["command"] = "ai";
        j["n"] = n;
        j["truth_table_hex"] = f.to_hex();
        j["ai"] = report.ai;
        j["witness"] = witness;
        j["witness_terms"] = report.witness ? report.witness->term_variables() : std::vector<std::vector<unsigned>>{};
        j["witness_side"] = to_string(report.witness_side);
        j["version"] = kVersion;
        out << j.dump() << "\n";
    } else {
        out << "ai: " << report.ai << "\n"
            << "witness: " << witness << "\n"
            << "witness_side: " << to_string(report.witness_side) << "\n";
    }
    return kExitOk;
}

// ---------------------------------------------------------------------------
// wmatrix

void print_wmatrix(const WMatrix& w, const std::string& method, bool json, std::ostream& out) {
    if (json) {
        nlohmann::ordered_json j;
        j["command"] = "wmatrix";
        j["n"] = w.n;
        j["method"] = method;
        j["rows"] = w.m.rows();
        j["cols"] = w.m.cols();
        std::vector<std::string> rows;
        for (std::size_t r = 0; r < w.m.rows(); ++r) rows.push_back(w.m.row(r).to_string());
        j["matrix"] = rows;
        std::vector<std::string> rl, cl;
        for (auto p : w.row_labels) rl.push_back(point_to_string(p, w.n));
        for (auto p : w.col_labels) cl.push_back(point_to_string(p, w.n));
        j["row_labels"] = rl;
        j["col_labels"] = cl;
        j["version"] = kVersion;
        out << j.dump() << "\n";
        return;
    }
    out << w.m.to_text();
    out << "row_labels: " << labels_line(w.row_labels, w.n) << "\n";
    out << "col_labels: " << labels_line(w.col_labels, w.n) << "\n";
}

int cmd_wmatrix(unsigned n, const std::string& method, bool json, std::ostream& out, std::ostream& err) {
    require_odd_n(n, method == "combinatorial" ? 15 : 13);
    if (method == "combinatorial") {
        print_wmatrix(w_matrix_combinatorial(n), method, json, out);
        return kExitOk;
    }
    const WMatrix inverse = w_matrix_inverse(majority_indicator(n, true));
    if (method == "both") {
        const WMatrix comb = w_matrix_combinatorial(n);
        for (std::size_t r = 0; r < inverse.m.rows(); ++r) {
            if (inverse.m.row(r) == comb.m.row(r)) continue;
            err << "mismatch at row " << r + 1 << " (Z=" << point_to_string(inverse.row_labels[r], n) << ")\n"
                << "  inverse:       " << inverse.m.row(r).to_string() << "\n"
                << "  combinatorial: " << comb.m.row(r).to_string() << "\n";
            return kExitFailure;
        }
    }
    print_wmatrix(inverse, method, json, out);
    return kExitOk;
}

// ---------------------------------------------------------------------------
// count

struct CountOptions {
    unsigned n = 0;
    std::string method;
    std::size_t k = 1;
    std::uint64_t trials = 1000;
    std::uint64_t seed = 0;
    std::string resume;
    bool yes_huge = false;
    unsigned threads = 0;
    bool json = false;
};

int cmd_count(const CountOptions& opt, std::ostream& out, std::ostream& err) {
    require_odd_n(opt.n, 15);
    const CensusMethod method = census_method_from_string(opt.method);
    if (!opt.resume.empty() && method != CensusMethod::exhaustive)
        throw UsageError("--resume is only supported with --method exhaustive");
    CensusResult result;
    if (method == CensusMethod::sample) {
        if (opt.k > (std::size_t{1} << (opt.n - 1))) throw UsageError("--k exceeds 2^(n-1)");
        result = sample_fraction(opt.n, opt.k, opt.trials, opt.seed);
    } else {
        if (opt.n >= 7) {
            std::ostringstream msg;
            msg << "refusing " << to_string(method) << " census at n=" << opt.n << ": about "
                << static_cast<double>(exhaustive_cost(opt.n)) << " candidate functions; use --method sample";
            throw UsageError(msg.str());
        }
        if (opt.n == 5 && !opt.yes_huge) {
            std::ostringstream msg;
            msg << "n=5 " << to_string(method) << " census covers about "
                << static_cast<double>(exhaustive_cost(5)) << " candidates; pass --yes-huge to run it";
            throw UsageError(msg.str());
        }
        if (method == CensusMethod::exhaustive) {
            ExhaustiveOptions eo;
            eo.threads = opt.threads;
            if (!opt.resume.empty()) eo.checkpoint = opt.resume;
            result = count_exhaustive(opt.n, eo);
        } else {
            result = count_submatrix(w_matrix_combinatorial(opt.n), opt.threads);
        }
    }

    std::optional<bool> bound;
    std::string verdict;
    if (method != CensusMethod::sample) {
        bound = check_lower_bound(result);
        const unsigned e = 1u << (opt.n - 1);
        const std::string limit = e < 64 ? std::to_string(std::uint64_t{1} << e) : "2^" + std::to_string(e);
        verdict = std::to_string(result.count) + (*bound ? " > " : " <= ") + limit + (*bound ? ": OK" : ": FAIL");
    }

    if (opt.json) {
        nlohmann::ordered_json j;
        j["command"] = "count";
        j["n"] = opt.n;
        j["method"] = to_string(method);
        if (method == CensusMethod::sample) {
            j["k"] = result.k;
            j["trials"] = result.trials;
            j["invertible"] = result.count;
            j["fraction"] = result.fraction ? nlohmann::ordered_json(*result.fraction) : nlohmann::ordered_json();
            j["exact"] = result.exact;
            j["seed"] = result.seed;
        } else {
            j["count"] = result.count;
            if (!result.per_k.empty()) j["per_k"] = result.per_k;
            j["lower_bound_exponent"] = 1u << (opt.n - 1);
            j["lower_bound_ok"] = *bound;
        }
        j["version"] = kVersion;
        out << j.dump() << "\n";
    } else if (method == CensusMethod::sample) {
        out << "n=" << opt.n << " method=sample k=" << result.k << " trials=" << result.trials
            << " invertible=" << result.count << " fraction="
            << (result.fraction ? std::to_string(*result.fraction) : std::string("none"))
            << (result.exact ? " (exact)" : "") << " seed=" << result.seed << "\n";
    } else {
        out << "n=" << opt.n << " method=" << to_string(method) << " count=" << result.count << " bound: " << verdict
            << "\n";
        if (!result.per_k.empty()) {
            out << "per_k:";
            for (auto c : result.per_k) out << " " << c;
            out << "\n";
        }
        out << "elapsed_seconds: " << result.elapsed_seconds << "\n";
    }
    if (bound && !*bound)
        err << "note: count does not exceed 2^(2^(n-1)) at n=" << opt.n
            << "; the strict bound only holds from n=3 on\n";
    return kExitOk;
}

// ---------------------------------------------------------------------------
// verify

struct CheckOutcome {
    std::string name;
    std::uint64_t cases = 0;
    std::optional<std::string> failure;
};

Selection random_selection(DeterministicRng& rng, std::size_t size) {
    const std::size_t k = static_cast<std::size_t>(rng.below(size + 1));
    return Selection{rng.subset(size, k), rng.subset(size, k)};
}

std::vector<std::vector<std::size_t>> all_subsets(std::size_t size) {
    std::vector<std::vector<std::size_t>> out;
    for (std::uint32_t mask = 0; mask < (1u << size); ++mask) {
        std::vector<std::size_t> s;
        for (std::size_t b = 0; b < size; ++b)
            if (mask & (1u << b)) s.push_back(b + 1);
        out.push_back(std::move(s));
    }
    return out;
}

int cmd_verify(unsigned n, std::uint64_t samples, std::uint64_t seed, bool json, std::ostream& out,
               std::ostream& err) {
    require_odd_n(n, 9);
    if (seed == 0) seed = entropy_seed();
    const bool exhaustive = n <= 3;
    const WMatrix w = w_matrix_combinatorial(n);
    const std::size_t size = w.size();
    const unsigned max_ai = (n + 1) / 2;
    std::vector<CheckOutcome> outcomes;
    auto reproducer = [&](const std::string& what) {
        return "n=" + std::to_string(n) + " seed=" + std::to_string(seed) + " " + what;
    };

    {
        CheckOutcome o{"selection-equivalence"};
        std::vector<Selection> sels;
        DeterministicRng rng(seed);
        if (exhaustive) {
            for (const auto& i : all_subsets(size))
                for (const auto& j : all_subsets(size))
                    if (i.size() == j.size()) sels.push_back({i, j});
        } else {
            for (std::uint64_t s = 0; s < samples; ++s) sels.push_back(random_selection(rng, size));
        }
        for (const auto& sel : sels) {
            ++o.cases;
            const BooleanFunction f = assemble_function(w, sel);
            const bool by_minor = is_max_ai_selection(w, sel);
            bool by_rank = has_max_ai_odd(f);
            if (by_minor == by_rank && n <= 5) by_rank = algebraic_immunity(f).ai == max_ai;
            if (by_minor != by_rank) {
                o.failure = reproducer("selection=" + sel.to_string());
                break;
            }
        }
        outcomes.push_back(o);
    }
    {
        CheckOutcome o{"complement-annihilator"};
        DeterministicRng rng(seed ^ 0x9E3779B97F4A7C15ull);
        const std::size_t points = std::size_t{1} << n;
        auto check = [&](const std::vector<std::size_t>& onset_1based) {
            std::vector<PointIndex> onset;
            for (auto p : onset_1based) onset.push_back(static_cast<PointIndex>(p - 1));
            ++o.cases;
            if (!balanced_annihilator_symmetry_holds(BooleanFunction::from_onset(n, onset)))
                o.failure = reproducer("onset=" + BooleanFunction::from_onset(n, onset).to_hex());
        };
        if (exhaustive) {
            for (const auto& s : all_subsets(points))
                if (s.size() == size && !o.failure) check(s);
        } else {
            for (std::uint64_t s = 0; s < samples && !o.failure; ++s) check(rng.subset(points, size));
        }
        outcomes.push_back(o);
    }
    {
        CheckOutcome o{"column-completion"};
        DeterministicRng rng(seed ^ 0xC2B2AE3D27D4EB4Full);
        std::vector<std::vector<std::size_t>> rows;
        if (exhaustive) {
            rows = all_subsets(size);
        } else {
            for (std::uint64_t s = 0; s < samples; ++s)
                rows.push_back(rng.subset(size, static_cast<std::size_t>(rng.below(size + 1))));
        }
        for (const auto& i : rows) {
            ++o.cases;
            Selection sel{i, {}};
            try {
                sel.j_indices = complete_j_indices(w, i);
            } catch (const std::exception&) {
                o.failure = reproducer("i=(" + join(i) + ") could not be completed");
                break;
            }
            if (!is_max_ai_selection(w, sel) || !has_max_ai_odd(assemble_function(w, sel))) {
                o.failure = reproducer("selection=" + sel.to_string());
                break;
            }
        }
        outcomes.push_back(o);
    }
    {
        CheckOutcome o{"w-cross-method"};
        o.cases = 1;
        const WMatrix inverse = w_matrix_inverse(majority_indicator(n, true));
        if (!(inverse.m == w.m)) o.failure = reproducer("W(G_n) inverse and combinatorial differ");
        outcomes.push_back(o);
    }

    bool ok = true;
    nlohmann::ordered_json j;
    j["command"] = "verify";
    j["n"] = n;
    j["seed"] = seed;
    j["samples"] = exhaustive ? nlohmann::ordered_json("exhaustive") : nlohmann::ordered_json(samples);
    for (const auto& o : outcomes) {
        ok = ok && !o.failure;
        if (json) {
            j["checks"][o.name] = {{"cases", o.cases}, {"pass", !o.failure}};
            if (o.failure) j["checks"][o.name]["reproduce"] = *o.failure;
        } else {
            out << (o.failure ? "FAIL " : "PASS ") << o.name << " (" << o.cases << " cases)\n";
        }
        if (o.failure) err << "reproduce: " << *o.failure << "\n";
    }
    j["pass"] = ok;
    j["version"] = kVersion;
    if (json) out << j.dump() << "\n";
    return ok ? kExitOk : kExitFailure;
}

}  // namespace

nlohmann::ordered_json to_json(const RunRecord& r) {
    nlohmann::ordered_json j;
    j["command"] = r.command;
    j["n"] = r.n;
    j["k"] = r.k;
    j["i_indices"] = r.i_indices;
    j["j_indices"] = r.j_indices;
    j["truth_table_hex"] = r.truth_table_hex;
    j["anf_terms"] = r.anf_terms;
    j["ai_claimed"] = r.ai_claimed;
    j["ai_verified"] = r.ai_verified;
    j["seed"] = r.seed ? nlohmann::ordered_json(*r.seed) : nlohmann::ordered_json();
    j["version"] = r.version;
    return j;
}

std::string to_text(const RunRecord& r) {
    std::vector<Monomial> terms;
    for (const auto& vars : r.anf_terms) {
        Monomial m = 0;
        for (unsigned v : vars) m |= variable_mask(v, r.n);
        terms.push_back(m);
    }
    std::ostringstream s;
    s << "command: " << r.command << "\n"
      << "n: " << r.n << "\n"
      << "k: " << r.k << "\n"
      << "i_indices: " << join(r.i_indices) << "\n"
      << "j_indices: " << join(r.j_indices) << "\n"
      << "truth_table_hex: " << r.truth_table_hex << "\n"
      << "anf: " << AnfPolynomial(r.n, terms).to_string() << "\n"
      << "ai_claimed: " << r.ai_claimed << "\n"
      << "ai_verified: " << (r.ai_verified ? "true" : "false") << "\n"
      << "seed: " << (r.seed ? std::to_string(*r.seed) : std::string("none")) << "\n"
      << "version: " << r.version << "\n";
    return s.str();
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Boolean functions of odd arity with maximum algebraic immunity", "maxai"};
    app.require_subcommand(1);
    app.set_version_flag("--version", kVersion);

    GenOptions gen;
    auto* gen_cmd = app.add_subcommand("gen", "construct a function from a row selection of W(G_n)");
    gen_cmd->add_option("--n", gen.n, "odd number of variables")->required();
    gen_cmd->add_option("--k", gen.k, "number of rows to draw (default 1)");
    gen_cmd->add_option("--seed", gen.seed, "seed for the row draw; 0 draws one from the system")
        ->default_val(0);
    gen_cmd->add_option("--i", gen.i, "explicit 1-based offset indices")->delimiter(',');
    gen_cmd->add_option("--j", gen.j, "explicit 1-based onset indices (requires --i)")->delimiter(',');
    gen_cmd->add_option("--verify", gen.verify, "on|off (default on for n <= 9)")
        ->check(CLI::IsMember({"on", "off"}));
    gen_cmd->add_flag("--allow-full-k", gen.allow_full_k, "accept k = 2^(n-1)");
    gen_cmd->add_flag("--json", gen.json, "machine-readable output");

    unsigned ai_n = 0;
    std::string ai_tt;
    bool ai_json = false;
    auto* ai_cmd = app.add_subcommand("ai", "algebraic immunity of a truth table");
    ai_cmd->add_option("--n", ai_n, "number of variables")->required();
    ai_cmd->add_option("--tt", ai_tt, "truth table hex, idx 0 in the high bit of the first digit")->required();
    ai_cmd->add_flag("--json", ai_json, "machine-readable output");

    unsigned w_n = 0;
    std::string w_method = "inverse";
    bool w_json = false;
    auto* w_cmd = app.add_subcommand("wmatrix", "print W(G_n)");
    w_cmd->add_option("--n", w_n, "odd number of variables")->required();
    w_cmd->add_option("--method", w_method, "inverse|combinatorial|both")
        ->check(CLI::IsMember({"inverse", "combinatorial", "both"}))
        ->default_val("inverse");
    w_cmd->add_flag("--json", w_json, "machine-readable output");

    CountOptions count;
    count.threads = default_threads();
    auto* count_cmd = app.add_subcommand("count", "count functions with maximum algebraic immunity");
    count_cmd->add_option("--n", count.n, "odd number of variables")->required();
    count_cmd->add_option("--method", count.method, "exhaustive|submatrix|sample")
        ->check(CLI::IsMember({"exhaustive", "submatrix", "sample"}))
        ->required();
    count_cmd->add_option("--k", count.k, "selection size for sampling")->default_val(1);
    count_cmd->add_option("--trials", count.trials, "number of samples")->default_val(1000);
    count_cmd->add_option("--seed", count.seed, "sampling seed; 0 draws one from the system")->default_val(0);
    count_cmd->add_option("--resume", count.resume, "checkpoint file for the exhaustive census");
    count_cmd->add_option("--threads", count.threads, std::string("worker threads (default $") + kThreadsEnv + ")");
    count_cmd->add_flag("--yes-huge", count.yes_huge, "allow the n=5 census");
    count_cmd->add_flag("--json", count.json, "machine-readable output");

    unsigned v_n = 0;
    std::uint64_t v_samples = 200;
    std::uint64_t v_seed = 1;
    bool v_json = false;
    auto* verify_cmd = app.add_subcommand("verify", "run the construction property checks");
    verify_cmd->add_option("--n", v_n, "odd number of variables, at most 9")->required();
    verify_cmd->add_option("--samples", v_samples, "random instances per check (n >= 5)")->default_val(200);
    verify_cmd->add_option("--seed", v_seed, "seed; 0 draws one from the system")->default_val(1);
    verify_cmd->add_flag("--json", v_json, "machine-readable output");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (*gen_cmd) return cmd_gen(gen, out, err);
        if (*ai_cmd) return cmd_ai(ai_n, ai_tt, ai_json, out);
        if (*w_cmd) return cmd_wmatrix(w_n, w_method, w_json, out, err);
        if (*count_cmd) return cmd_count(count, out, err);
        if (*verify_cmd) return cmd_verify(v_n, v_samples, v_seed, v_json, out, err);
    } catch (const UsageError& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitFailure;
    }
    return kExitUsage;
}

}  // namespace maxai::cli
