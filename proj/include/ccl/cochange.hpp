#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ccl/githist.hpp"
#include "ccl/patchsim.hpp"

namespace ccl {

struct AnalysisConfig {
    double threshold = 0.4;

    void validate() const;
};

/// A commit present in both snippet histories of a clone pair.
struct CoChangeMatch {
    std::string hash;
    const CommitRecord* record_a = nullptr;
    const CommitRecord* record_b = nullptr;
    SimilarityScore similarity;
    bool concerning = false;
};

/// One match per hash shared by both histories, in hist_a's (newest-first)
/// order. A match is concerning when its patch similarity is below the
/// threshold. The returned records point into the histories.
std::vector<CoChangeMatch> match_cochanges(const SnippetHistory& hist_a,
                                           const SnippetHistory& hist_b,
                                           const AnalysisConfig& config);

/// Snippet-level counts: a co-changed commit counts once per snippet.
struct CoChangeCounts {
    std::size_t total_commits = 0;
    std::size_t cochanged_commits = 0;
    std::size_t concerning_commits = 0;

    double cochange_ratio() const;
    double concerning_over_cochanged() const;
    double concerning_over_total() const;

    CoChangeCounts& operator+=(const CoChangeCounts& other);
};

CoChangeCounts cochange_counts(std::span<const CoChangeMatch> matches,
                               const SnippetHistory& hist_a, const SnippetHistory& hist_b);

enum class Pattern : std::uint8_t { None, Pattern1, Pattern2 };

std::string_view to_string(Pattern pattern);
Pattern pattern_from_string(std::string_view text);

/// Pattern 1: the newest commits differ. Pattern 2: the newest commit is
/// shared but its patches are dissimilar. None otherwise.
struct PairClassification {
    Pattern pattern = Pattern::None;
    std::optional<SimilarityScore> last_similarity;
};

/// Both histories must be non-empty (std::invalid_argument otherwise).
PairClassification classify_pair(const SnippetHistory& hist_a, const SnippetHistory& hist_b,
                                 const AnalysisConfig& config);

/// Classification from the two newest hashes and, when they are equal, the
/// similarity of their patches.
Pattern classify_last_commits(std::string_view last_a, std::string_view last_b,
                              std::optional<double> last_similarity, double threshold);

struct PatternRatios {
    std::size_t total_pairs = 0;
    std::size_t p1_count = 0;
    std::size_t p2_count = 0;
    double concerning_pair_ratio = 0.0;
    double p2_over_concerning = 0.0;
};

PatternRatios pattern_ratios(std::span<const Pattern> patterns);

}  // namespace ccl
