#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "ccl/clonedet.hpp"
#include "ccl/cochange.hpp"
#include "ccl/githist.hpp"
#include "ccl/stats.hpp"

namespace ccl {

using Json = nlohmann::ordered_json;

inline constexpr const char* kToolName = "ccl";
inline constexpr const char* kToolVersion = "0.1.0";

/// Input data is malformed or unusable (exit code 2 territory).
class DataError : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A report failed its self-consistency check; `field` names the first
/// offending location, e.g. "aggregates.cochange_ratio".
class ConsistencyError : public DataError {
public:
    explicit ConsistencyError(std::string field)
        : DataError("report is inconsistent at " + field), field_(std::move(field)) {}
    const std::string& field() const { return field_; }

private:
    std::string field_;
};

// ---- clones.json ----------------------------------------------------------

struct CloneSummary {
    std::uint64_t n_files = 0;
    std::uint64_t total_loc = 0;
    std::size_t n_clone_sets_kept = 0;
    std::size_t n_clone_sets_dropped = 0;
    double median_clone_length_loc = 0.0;
};

struct ClonesFile {
    DetectorParams params;
    std::vector<ClonePair> pairs;
    CloneSummary summary;
};

Json to_json(const ClonesFile& clones);
ClonesFile clones_from_json(const Json& j);

// ---- report.json ----------------------------------------------------------

struct HistoryEntry {
    std::string hash;
    Timestamp timestamp;
};

struct MatchRecord {
    std::string hash;
    double similarity = 0.0;
    bool degenerate = false;
    bool concerning = false;
};

/// Everything the aggregates are computed from, for one analyzed clone pair.
struct PairRecord {
    std::size_t index = 0;
    CloneFragment a;
    CloneFragment b;
    CloneType clone_type = CloneType::Type2;
    std::size_t token_len = 0;
    std::vector<HistoryEntry> history_a;
    std::vector<HistoryEntry> history_b;
    std::vector<MatchRecord> matches;
    /// Patch similarity of the shared newest commit (absent when they differ).
    std::optional<double> last_similarity;
    /// Patch similarity of the two distinct newest commits (absent when shared).
    std::optional<double> not_cochanged_last_similarity;
    Pattern pattern = Pattern::None;
};

struct Exclusion {
    std::size_t pair_index = 0;
    std::string side;
    CloneFragment fragment;
    std::string reason;
};

struct Aggregates {
    std::size_t n_pairs = 0;
    CoChangeCounts counts;
    PatternRatios patterns;
    std::optional<Descriptive> commit_length;
    std::optional<Descriptive> commit_length_difference;
    std::optional<Descriptive> cochanged_similarity;
    std::optional<Descriptive> not_cochanged_last_similarity;
    std::vector<HistogramBin> commit_length_histogram;
    std::vector<HistogramBin> cochanged_similarity_histogram;
    std::vector<HistogramBin> not_cochanged_similarity_histogram;
};

inline constexpr double kCommitLengthBinWidth = 1.0;
/// Similarity histograms always span [0, 1] in tenths.
inline constexpr std::size_t kSimilarityBins = 10;

Aggregates compute_aggregates(std::span<const PairRecord> pairs);

struct BaselineSample {
    CloneFragment fragment;
    std::optional<std::size_t> history_length;
    std::string error;
};

struct BaselineReport {
    std::uint32_t snippet_loc = 0;
    std::size_t requested = 0;
    std::uint64_t seed = 0;
    std::vector<BaselineSample> samples;
    std::vector<double> clone_lengths;
    std::optional<Descriptive> random;
    std::optional<Descriptive> clone;
    std::optional<WelchResult> welch;
    std::string welch_error;
};

struct ReportConfig {
    std::string repo;
    double threshold = 0.4;
    bool include_merges = true;
    bool dedup_by_hash = true;
    DetectorParams detector;
};

struct RepoReport {
    ReportConfig config;
    RepoStats repo_stats;
    CloneSummary clone_summary;
    std::vector<PairRecord> pairs;
    std::vector<Exclusion> exclusions;
    Aggregates aggregates;
    std::optional<BaselineReport> baseline;
};

Json to_json(const Descriptive& d);
Json to_json(const WelchResult& w);
Json to_json(const Aggregates& a);
Json to_json(const BaselineReport& b);
Json to_json(const RepoReport& report);

/// Parses a report and verifies that every aggregate and every per-pair
/// derived field (concerning flags, patterns) matches a recomputation.
/// Throws ConsistencyError naming the first mismatch, DataError when the
/// document does not have the expected shape.
RepoReport load_report(const Json& j);

// ---- CSV ------------------------------------------------------------------

/// Writes one CSV per plotted series into `dir` and returns the file names.
std::vector<std::string> write_report_csvs(const RepoReport& report,
                                           const std::filesystem::path& dir);

/// Shortest decimal text that round-trips to the same double.
std::string format_number(double value);

}  // namespace ccl
