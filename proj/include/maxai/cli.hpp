#pragma once

// Command-line front end: gen, ai, wmatrix, count and verify subcommands.
//
// Exit codes: 0 success, 1 verification or property failure, 2 usage error.
// All selection indices are 1-based and refer to the ascending-idx order of
// G_n's offset (i) and onset (j).

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

namespace maxai::cli {

inline constexpr const char* kVersion = "1.0.0";
inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitUsage = 2;

/// Environment variable holding the default worker count for `count`.
inline constexpr const char* kThreadsEnv = "MAXAI_THREADS";

struct RunRecord {
    std::string command;
    unsigned n = 0;
    std::size_t k = 0;
    std::vector<std::size_t> i_indices;
    std::vector<std::size_t> j_indices;
    std::string truth_table_hex;
    std::vector<std::vector<unsigned>> anf_terms;
    unsigned ai_claimed = 0;
    bool ai_verified = false;
    /// Seed of the random i draw; absent when the selection was given explicitly.
    std::optional<std::uint64_t> seed;
    std::string version = kVersion;
};

nlohmann::ordered_json to_json(const RunRecord& record);
/// "key: value" lines in RunRecord field order.
std::string to_text(const RunRecord& record);

/// Runs one invocation; `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace maxai::cli
