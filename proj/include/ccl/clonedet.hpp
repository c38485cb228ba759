#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "ccl/corpus.hpp"
#include "ccl/lexer.hpp"

namespace ccl {

struct DetectorParams {
    std::size_t min_token = 50;
    double min_rnr = 0.8;
    std::size_t min_tks = 12;
    std::string exclude_pattern = "test";

    /// Throws std::invalid_argument when a field is out of range.
    void validate() const;
};

/// A file plus an inclusive line range; token indices are 0-based inclusive
/// positions in that file's token list.
struct CloneFragment {
    std::string file;
    std::uint32_t start_line = 0;
    std::uint32_t end_line = 0;
    std::size_t token_start = 0;
    std::size_t token_end = 0;

    std::size_t token_length() const { return token_end - token_start + 1; }
    std::uint32_t loc() const { return end_line - start_line + 1; }

    bool operator==(const CloneFragment&) const = default;
    auto operator<=>(const CloneFragment&) const = default;
};

enum class CloneType : std::uint8_t { Type1, Type2 };

std::string_view to_string(CloneType type);
CloneType clone_type_from_string(std::string_view text);

struct ClonePair {
    CloneFragment a;
    CloneFragment b;
    CloneType clone_type = CloneType::Type2;
    double rnr = 1.0;
    /// Smaller of the two fragments' distinct raw token counts.
    std::size_t tks = 0;

    std::size_t token_length() const { return a.token_length(); }

    bool operator==(const ClonePair&) const = default;
};

/**
 * Finds every maximal type-1/type-2 clone pair in the corpus.
 *
 * A pair qualifies when both fragments have equal normalized symbol
 * sequences that cannot be extended left or right, span at least
 * `min_token` tokens, pass the rnr and tks thresholds, and (within one file)
 * occupy disjoint line ranges. Pairs whose two fragments both sit inside the
 * fragments of another qualifying pair are suppressed. The corpus is
 * expected to be filtered already; output is ordered by file of a, token
 * start of a, file of b, token start of b.
 */
std::vector<ClonePair> detect_clone_pairs(const Corpus& corpus, const DetectorParams& params);

/// Fraction of positions not covered by an immediate repetition of the
/// preceding equal-length window. Throws std::invalid_argument on empty input.
double compute_rnr(std::span<const NormalizedToken> symbols);

/// Number of distinct raw token texts. Throws std::invalid_argument on empty input.
std::size_t compute_tks(std::span<const Token> tokens);

struct CloneSetResult {
    std::vector<ClonePair> kept;
    std::size_t kept_sets = 0;
    std::size_t dropped_sets = 0;
};

/// Groups fragments into clone sets by transitive pairing and keeps only the
/// pairs whose set has exactly two fragments.
CloneSetResult build_clone_sets(const std::vector<ClonePair>& pairs);

/// Median fragment length in lines over both fragments of every pair;
/// 0 when there are no pairs.
double median_clone_length_loc(const std::vector<ClonePair>& pairs);

}  // namespace ccl
