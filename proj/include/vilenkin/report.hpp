#pragma once

#include <filesystem>
#include <string>
#include <utility>

#include <json.hpp>

#include "vilenkin/theorems.hpp"

// Report plumbing: run manifests, the aggregated verification suite, the
// naive-vs-fast benchmark, and the CSV/JSON emitters used by the CLI.
// Emitted bytes contain no wall-clock data, so identical manifests reproduce
// identical files.

namespace vilenkin {

inline constexpr const char* kToolVersion = "0.1.0";

struct RunManifest {
    std::string command;
    std::vector<int> radices;
    std::uint64_t seed = 0;
    int threads = 1;
    double tol = 1e-9;
    std::vector<std::pair<std::string, std::string>> params;  // insertion order

    void set(std::string key, std::string value);
    nlohmann::ordered_json to_json() const;
};

struct CheckResult {
    std::string name;
    bool pass = false;
    double max_error = 0.0;
    std::int64_t scanned_count = 0;
    std::string detail;

    nlohmann::ordered_json to_json() const;
};

struct VerifySummary {
    RunManifest manifest;
    std::vector<CheckResult> checks;

    bool all_pass() const;
    nlohmann::ordered_json to_json() const;
};

struct VerifyOptions {
    std::int64_t max_n = 0;       // cap on scanned kernel orders; 0 means M_N
    double tol = 1e-9;
    bool corrupt_kernel = false;  // test fixture: perturbs one Dirichlet table
};

// Exhaustive kernel/transform suite on one group: transform round trip,
// fast-vs-naive agreement, the Dirichlet closed form, the block identities,
// the nK_n decomposition, the product and vanishing rules for s*M_n orders,
// and the Fejer L1 scan.
VerifySummary run_verify_all(const GroupSpec& spec, const VerifyOptions& opts = {});

struct BenchSize {
    int level = 0;
    std::int64_t size = 0;
    double naive_median_ms = 0.0;
    double fast_median_ms = 0.0;
    double max_deviation = 0.0;
    double speedup() const { return naive_median_ms / fast_median_ms; }
};

struct BenchReport {
    RunManifest manifest;
    std::vector<BenchSize> sizes;
    bool fast_wins_at_largest = false;

    nlohmann::ordered_json to_json() const;
};

// Walsh groups at M_N in {256, 1024, 4096}; repetitions >= 3 (median taken).
BenchReport run_bench(int repetitions);

// --- file emitters -------------------------------------------------------

void write_json(const std::filesystem::path& path, const nlohmann::ordered_json& doc);

// Signal CSV: header "index,re,im", one row per coset in linear-index order.
void write_signal_csv(const std::filesystem::path& path, const Signal& f);
Signal read_signal_csv(const std::filesystem::path& path, const GroupSpec& spec);

// Theorem 1 / corollary curve CSV: header "n,term,partial_sum" where the
// partial sum carries the curve's log normalization removed (raw sum) and
// term is its increment.
void write_t1_csv(const std::filesystem::path& path, const std::vector<double>& curve,
                  int log_exponent);

// Theorem 2 CSV: header "n,term,partial_sum,block_id".
void write_t2_csv(const std::filesystem::path& path,
                  const std::vector<DivergencePoint>& points);

}  // namespace vilenkin
