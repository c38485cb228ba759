#pragma once

#include <random>
#include <string>
#include <vector>

#include "ccl/clonedet.hpp"
#include "ccl/corpus.hpp"

namespace ccl::testing {

/// Marking rule applied literally: for every end position i and period p
/// with 2p <= i, compare the two windows and mark the later one.
double brute_force_rnr(const std::vector<std::string>& symbols);

/// Enumerates every pair of equal windows of at least min_token symbols,
/// keeps the ones that cannot grow in either direction, then applies the
/// overlap, rnr, tks and containment rules one by one.
std::vector<ClonePair> brute_force_clone_pairs(const Corpus& corpus, const DetectorParams& params);

struct RandomCorpusShape {
    std::size_t max_files = 5;
    std::size_t max_tokens = 500;
    std::size_t max_alphabet = 8;
};

/// Token-level corpus (no source text) with a few planted copies, some of
/// them with renamed identifiers.
Corpus random_corpus(std::mt19937_64& rng, const RandomCorpusShape& shape = {});

/// Token texts of `source` with the normalized symbols, for quick checks.
std::vector<std::string> symbols_of(const std::string& source);

}  // namespace ccl::testing
