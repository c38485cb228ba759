#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <string_view>

#include "ccl/githist.hpp"

namespace ccl {

/// Bag of lowercase terms; each term is a run of 2+ word characters.
struct PatchDocument {
    std::map<std::string, std::size_t> term_counts;

    bool empty() const { return term_counts.empty(); }
    std::size_t size() const;
};

struct SimilarityScore {
    double value = 0.0;
    /// Both documents were empty; value is 0 by convention.
    bool degenerate = false;
};

/// Hunk body lines (context, added and removed) with the one-character diff
/// marker stripped, joined by '\n'. Diff and "@@" headers are not included.
std::string extract_patch_body(const CommitRecord& record);

/// Terms are maximal runs of letters, digits or '_' (any non-ASCII code
/// point counts as a letter) at least two code points long, ASCII-lowercased.
PatchDocument tokenize_patch(std::string_view text);

/**
 * Cosine similarity of tf-idf vectors over the two-document corpus {a, b}:
 * raw term counts, idf(t) = ln(3 / (1 + df(t))) + 1, L2-normalized vectors.
 * The result is exactly symmetric in its arguments and clamped to [0, 1].
 */
SimilarityScore patch_similarity(const PatchDocument& a, const PatchDocument& b);

/// patch_similarity() over the extracted, tokenized bodies of two commits.
SimilarityScore commit_patch_similarity(const CommitRecord& a, const CommitRecord& b);

}  // namespace ccl
