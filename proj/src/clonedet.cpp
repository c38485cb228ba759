#include <algorithm>
#include <map>
#include <numeric>
#include <stdexcept>
#include <string_view>
#include <unordered_map>
#include <unordered_set>

#include "ccl/clonedet.hpp"

namespace ccl {

namespace {

using SymbolId = std::uint32_t;

double rnr_of_ids(std::span<const SymbolId> ids) {
    const std::size_t n = ids.size();
    // diff[k] += 1 / diff[k + 1] -= 1 marks the interval ending at k.
    std::vector<int> diff(n + 1, 0);
    for (std::size_t p = 1; 2 * p <= n; ++p) {
        std::size_t run = 0;
        for (std::size_t k = p; k < n; ++k) {
            run = ids[k] == ids[k - p] ? run + 1 : 0;
            // The p-window ending at k equals the one before it.
            if (run >= p) {
                ++diff[k + 1 - p];
                --diff[k + 1];
            }
        }
    }
    std::size_t repeated = 0;
    int depth = 0;
    for (std::size_t k = 0; k < n; ++k) {
        depth += diff[k];
        if (depth > 0) ++repeated;
    }
    return static_cast<double>(n - repeated) / static_cast<double>(n);
}

struct Candidate {
    std::size_t file_a;
    std::size_t start_a;
    std::size_t file_b;
    std::size_t start_b;
    std::size_t length;
};

bool contains(const CloneFragment& outer, const CloneFragment& inner) {
    return outer.file == inner.file && outer.token_start <= inner.token_start &&
           inner.token_end <= outer.token_end;
}

bool pair_contained_in(const ClonePair& inner, const ClonePair& outer) {
    return (contains(outer.a, inner.a) && contains(outer.b, inner.b)) ||
           (contains(outer.a, inner.b) && contains(outer.b, inner.a));
}

CloneFragment make_fragment(const SourceFile& file, std::size_t start, std::size_t length) {
    const std::size_t end = start + length - 1;
    return CloneFragment{file.path, file.tokens[start].line, file.tokens[end].line, start, end};
}

std::size_t tks_of(const SourceFile& file, std::size_t start, std::size_t length) {
    return compute_tks(std::span(file.tokens).subspan(start, length));
}

}  // namespace

void DetectorParams::validate() const {
    if (min_token < 1) throw std::invalid_argument("min_token must be at least 1");
    if (!(min_rnr >= 0.0 && min_rnr <= 1.0)) throw std::invalid_argument("min_rnr must lie in [0, 1]");
    if (min_tks < 1) throw std::invalid_argument("min_tks must be at least 1");
}

std::string_view to_string(CloneType type) {
    return type == CloneType::Type1 ? "type1" : "type2";
}

CloneType clone_type_from_string(std::string_view text) {
    if (text == "type1") return CloneType::Type1;
    if (text == "type2") return CloneType::Type2;
    throw std::invalid_argument("unknown clone type '" + std::string(text) + "'");
}

double compute_rnr(std::span<const NormalizedToken> symbols) {
    if (symbols.empty()) throw std::invalid_argument("rnr is undefined for an empty fragment");
    std::unordered_map<std::string_view, SymbolId> ids;
    std::vector<SymbolId> seq;
    seq.reserve(symbols.size());
    for (const auto& s : symbols) {
        seq.push_back(ids.emplace(s.symbol, static_cast<SymbolId>(ids.size())).first->second);
    }
    return rnr_of_ids(seq);
}

std::size_t compute_tks(std::span<const Token> tokens) {
    if (tokens.empty()) throw std::invalid_argument("tks is undefined for an empty fragment");
    std::unordered_set<std::string_view> distinct;
    for (const auto& t : tokens) distinct.insert(t.text);
    return distinct.size();
}

std::vector<ClonePair> detect_clone_pairs(const Corpus& corpus_in, const DetectorParams& params) {
    params.validate();

    std::vector<const SourceFile*> files;
    for (const auto& f : corpus_in) {
        if (f.symbols.size() != f.tokens.size()) {
            throw std::invalid_argument("corpus file " + f.path + " has mismatched symbol/token lists");
        }
        files.push_back(&f);
    }
    std::sort(files.begin(), files.end(),
              [](const SourceFile* x, const SourceFile* y) { return x->path < y->path; });

    std::unordered_map<std::string_view, SymbolId> intern;
    std::vector<std::vector<SymbolId>> seqs(files.size());
    for (std::size_t f = 0; f < files.size(); ++f) {
        seqs[f].reserve(files[f]->symbols.size());
        for (const auto& s : files[f]->symbols) {
            seqs[f].push_back(
                intern.emplace(s.symbol, static_cast<SymbolId>(intern.size())).first->second);
        }
    }

    // Seed: every window of min_token symbols, keyed by a polynomial hash.
    // Windows never cross a file boundary, which plays the role of a sentinel.
    const std::size_t w = params.min_token;
    constexpr std::uint64_t kBase = 0x100000001b3ULL;
    std::uint64_t base_pow = 1;
    for (std::size_t i = 0; i < w; ++i) base_pow *= kBase;

    struct Seed {
        std::uint64_t hash;
        std::uint32_t file;
        std::uint32_t pos;
    };
    std::vector<Seed> seeds;
    for (std::size_t f = 0; f < seqs.size(); ++f) {
        const auto& s = seqs[f];
        if (s.size() < w) continue;
        std::uint64_t h = 0;
        for (std::size_t i = 0; i < s.size(); ++i) {
            h = h * kBase + (s[i] + 1);
            if (i >= w) h -= base_pow * (s[i - w] + 1);
            if (i + 1 >= w) {
                seeds.push_back({h, static_cast<std::uint32_t>(f), static_cast<std::uint32_t>(i + 1 - w)});
            }
        }
    }
    std::sort(seeds.begin(), seeds.end(), [](const Seed& x, const Seed& y) {
        return std::tie(x.hash, x.file, x.pos) < std::tie(y.hash, y.file, y.pos);
    });

    // Extend each left-maximal seed pair to the right. Every maximal repeat
    // of length >= w starts with an equal w-window, so it is found exactly once.
    std::vector<Candidate> candidates;
    for (std::size_t g = 0; g < seeds.size();) {
        std::size_t h = g + 1;
        while (h < seeds.size() && seeds[h].hash == seeds[g].hash) ++h;
        for (std::size_t x = g; x < h; ++x) {
            const auto& sa = seqs[seeds[x].file];
            const std::size_t ia = seeds[x].pos;
            for (std::size_t y = x + 1; y < h; ++y) {
                const auto& sb = seqs[seeds[y].file];
                const std::size_t ib = seeds[y].pos;
                if (ia > 0 && ib > 0 && sa[ia - 1] == sb[ib - 1]) continue;
                std::size_t len = 0;
                while (ia + len < sa.size() && ib + len < sb.size() && sa[ia + len] == sb[ib + len]) {
                    ++len;
                }
                if (len < w) continue;  // hash collision
                candidates.push_back({seeds[x].file, ia, seeds[y].file, ib, len});
            }
        }
        g = h;
    }

    std::vector<ClonePair> passing;
    for (const auto& c : candidates) {
        const auto& fa = *files[c.file_a];
        const auto& fb = *files[c.file_b];
        ClonePair pair;
        pair.a = make_fragment(fa, c.start_a, c.length);
        pair.b = make_fragment(fb, c.start_b, c.length);
        if (c.file_a == c.file_b && pair.b.start_line <= pair.a.end_line) continue;

        pair.rnr = rnr_of_ids(std::span(seqs[c.file_a]).subspan(c.start_a, c.length));
        if (pair.rnr < params.min_rnr) continue;
        pair.tks = std::min(tks_of(fa, c.start_a, c.length), tks_of(fb, c.start_b, c.length));
        if (pair.tks < params.min_tks) continue;

        const bool same_text = std::equal(
            fa.tokens.begin() + static_cast<std::ptrdiff_t>(c.start_a),
            fa.tokens.begin() + static_cast<std::ptrdiff_t>(c.start_a + c.length),
            fb.tokens.begin() + static_cast<std::ptrdiff_t>(c.start_b),
            [](const Token& x, const Token& y) { return x.text == y.text; });
        pair.clone_type = same_text ? CloneType::Type1 : CloneType::Type2;
        passing.push_back(std::move(pair));
    }

    // Suppress pairs nested inside another qualifying pair. Only pairs over
    // the same two files can nest.
    std::map<std::pair<std::string_view, std::string_view>, std::vector<std::size_t>> by_files;
    for (std::size_t i = 0; i < passing.size(); ++i) {
        by_files[{passing[i].a.file, passing[i].b.file}].push_back(i);
    }
    std::vector<bool> suppressed(passing.size(), false);
    for (const auto& [key, members] : by_files) {
        for (const auto i : members) {
            for (const auto j : members) {
                if (i != j && !(passing[i] == passing[j]) && pair_contained_in(passing[i], passing[j])) {
                    suppressed[i] = true;
                    break;
                }
            }
        }
    }

    std::vector<ClonePair> out;
    for (std::size_t i = 0; i < passing.size(); ++i) {
        if (!suppressed[i]) out.push_back(std::move(passing[i]));
    }
    std::sort(out.begin(), out.end(), [](const ClonePair& x, const ClonePair& y) {
        return std::tie(x.a.file, x.a.token_start, x.b.file, x.b.token_start, x.a.token_end) <
               std::tie(y.a.file, y.a.token_start, y.b.file, y.b.token_start, y.a.token_end);
    });
    return out;
}

CloneSetResult build_clone_sets(const std::vector<ClonePair>& pairs) {
    std::map<std::tuple<std::string_view, std::size_t, std::size_t>, std::size_t> ids;
    auto id_of = [&](const CloneFragment& f) {
        return ids.emplace(std::make_tuple(std::string_view(f.file), f.token_start, f.token_end),
                           ids.size())
            .first->second;
    };
    std::vector<std::pair<std::size_t, std::size_t>> edges;
    edges.reserve(pairs.size());
    for (const auto& p : pairs) {
        const auto a = id_of(p.a);
        const auto b = id_of(p.b);
        edges.emplace_back(a, b);
    }

    std::vector<std::size_t> parent(ids.size());
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](std::size_t x) {
        while (parent[x] != x) {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        return x;
    };
    for (const auto& [a, b] : edges) parent[find(a)] = find(b);

    std::map<std::size_t, std::size_t> set_size;
    for (std::size_t i = 0; i < parent.size(); ++i) ++set_size[find(i)];

    CloneSetResult result;
    for (const auto& [root, size] : set_size) {
        if (size == 2) {
            ++result.kept_sets;
        } else if (size > 2) {
            ++result.dropped_sets;
        }
    }
    for (std::size_t i = 0; i < pairs.size(); ++i) {
        if (set_size[find(edges[i].first)] == 2) result.kept.push_back(pairs[i]);
    }
    return result;
}

double median_clone_length_loc(const std::vector<ClonePair>& pairs) {
    if (pairs.empty()) return 0.0;
    std::vector<std::uint32_t> lengths;
    lengths.reserve(pairs.size() * 2);
    for (const auto& p : pairs) {
        lengths.push_back(p.a.loc());
        lengths.push_back(p.b.loc());
    }
    std::sort(lengths.begin(), lengths.end());
    const auto n = lengths.size();
    return n % 2 == 1 ? lengths[n / 2] : (lengths[n / 2 - 1] + lengths[n / 2]) / 2.0;
}

}  // namespace ccl
