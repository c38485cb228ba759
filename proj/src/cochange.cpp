#include <stdexcept>
#include <unordered_map>

#include "ccl/cochange.hpp"

namespace ccl {

namespace {

double ratio(std::size_t num, std::size_t den) {
    return den == 0 ? 0.0 : static_cast<double>(num) / static_cast<double>(den);
}

}  // namespace

void AnalysisConfig::validate() const {
    if (!(threshold >= 0.0 && threshold <= 1.0)) {
        throw std::invalid_argument("threshold must lie in [0, 1]");
    }
}

std::vector<CoChangeMatch> match_cochanges(const SnippetHistory& hist_a,
                                           const SnippetHistory& hist_b,
                                           const AnalysisConfig& config) {
    std::unordered_map<std::string_view, const CommitRecord*> in_b;
    for (const auto& c : hist_b.commits) in_b.emplace(c.hash, &c);

    std::vector<CoChangeMatch> matches;
    for (const auto& c : hist_a.commits) {
        const auto it = in_b.find(c.hash);
        if (it == in_b.end()) continue;
        CoChangeMatch m;
        m.hash = c.hash;
        m.record_a = &c;
        m.record_b = it->second;
        m.similarity = commit_patch_similarity(c, *it->second);
        m.concerning = m.similarity.value < config.threshold;
        matches.push_back(std::move(m));
        in_b.erase(it);
    }
    return matches;
}

double CoChangeCounts::cochange_ratio() const { return ratio(cochanged_commits, total_commits); }

double CoChangeCounts::concerning_over_cochanged() const {
    return ratio(concerning_commits, cochanged_commits);
}

double CoChangeCounts::concerning_over_total() const {
    return ratio(concerning_commits, total_commits);
}

CoChangeCounts& CoChangeCounts::operator+=(const CoChangeCounts& other) {
    total_commits += other.total_commits;
    cochanged_commits += other.cochanged_commits;
    concerning_commits += other.concerning_commits;
    return *this;
}

CoChangeCounts cochange_counts(std::span<const CoChangeMatch> matches,
                               const SnippetHistory& hist_a, const SnippetHistory& hist_b) {
    CoChangeCounts counts;
    counts.total_commits = hist_a.length() + hist_b.length();
    counts.cochanged_commits = 2 * matches.size();
    for (const auto& m : matches) {
        if (m.concerning) counts.concerning_commits += 2;
    }
    return counts;
}

std::string_view to_string(Pattern pattern) {
    switch (pattern) {
        case Pattern::None: return "none";
        case Pattern::Pattern1: return "pattern1";
        case Pattern::Pattern2: return "pattern2";
    }
    return "none";
}

Pattern pattern_from_string(std::string_view text) {
    if (text == "none") return Pattern::None;
    if (text == "pattern1") return Pattern::Pattern1;
    if (text == "pattern2") return Pattern::Pattern2;
    throw std::invalid_argument("unknown pattern '" + std::string(text) + "'");
}

Pattern classify_last_commits(std::string_view last_a, std::string_view last_b,
                              std::optional<double> last_similarity, double threshold) {
    if (last_a != last_b) return Pattern::Pattern1;
    if (!last_similarity) throw std::invalid_argument("co-changed last commit needs a similarity");
    return *last_similarity < threshold ? Pattern::Pattern2 : Pattern::None;
}

PairClassification classify_pair(const SnippetHistory& hist_a, const SnippetHistory& hist_b,
                                  const AnalysisConfig& config) {
    if (hist_a.commits.empty() || hist_b.commits.empty()) {
        throw std::invalid_argument("classify_pair needs two non-empty histories");
    }
    const auto& last_a = hist_a.commits.front();
    const auto& last_b = hist_b.commits.front();
    PairClassification result;
    if (last_a.hash == last_b.hash) {
        result.last_similarity = commit_patch_similarity(last_a, last_b);
        result.pattern = classify_last_commits(last_a.hash, last_b.hash,
                                               result.last_similarity->value, config.threshold);
    } else {
        result.pattern = Pattern::Pattern1;
    }
    return result;
}

PatternRatios pattern_ratios(std::span<const Pattern> patterns) {
    PatternRatios r;
    r.total_pairs = patterns.size();
    for (const auto p : patterns) {
        if (p == Pattern::Pattern1) ++r.p1_count;
        if (p == Pattern::Pattern2) ++r.p2_count;
    }
    r.concerning_pair_ratio = ratio(r.p1_count + r.p2_count, r.total_pairs);
    r.p2_over_concerning = ratio(r.p2_count, r.p1_count + r.p2_count);
    return r;
}

}  // namespace ccl
