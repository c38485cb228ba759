#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>

#include "ccl/report.hpp"

namespace ccl {

/// Bad invocation or unusable environment (exit code 1).
class EnvironmentError : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct BaselineOptions {
    std::size_t samples = 500;
    std::uint64_t seed = 1;
};

struct RunOptions {
    AnalysisConfig analysis;
    HistoryOptions history;
    std::size_t jobs = 1;
    /// Repository path as echoed into reports.
    std::string repo_label;
};

std::size_t default_jobs();

/// Matches, similarities and classification of one pair whose two
/// histories are both non-empty.
PairRecord make_pair_record(std::size_t index, const ClonePair& pair, const SnippetHistory& hist_a,
                            const SnippetHistory& hist_b, const AnalysisConfig& config);

/// Lexes the test-excluded corpus at HEAD, detects clone pairs and keeps
/// those in clone sets of exactly two fragments.
ClonesFile run_detect(const GitRunner& git, const std::filesystem::path& repo,
                      const DetectorParams& params);

/// Mines both snippet histories of every pair and builds the full report.
/// Pairs with a failed or empty history go to the exclusions list; when
/// every fragment fails a DataError is thrown. A baseline section is added
/// when `baseline` is given.
RepoReport run_analyze(const GitRunner& git, const std::filesystem::path& repo,
                       const ClonesFile& clones, const RunOptions& options,
                       const std::optional<BaselineOptions>& baseline = std::nullopt);

/// Random-snippet baseline against the clone snippets' commit-log lengths.
BaselineReport run_baseline(const GitRunner& git, const std::filesystem::path& repo,
                            const ClonesFile& clones, const BaselineOptions& baseline,
                            const RunOptions& options);

/// Baseline over already-known clone snippet lengths.
BaselineReport run_baseline_with(const GitRunner& git, const std::filesystem::path& repo,
                                 const ClonesFile& clones, const std::vector<double>& clone_lengths,
                                 const BaselineOptions& baseline, const RunOptions& options);

/// Serialized with two-space indentation and a trailing newline.
std::string dump_json(const Json& j);

Json read_json_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, const std::string& text);

}  // namespace ccl
