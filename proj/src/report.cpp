#include <charconv>
#include <cmath>
#include <fstream>
#include <unordered_set>

#include "ccl/report.hpp"

namespace ccl {

namespace {

double diff_of(std::size_t x, std::size_t y) {
    return x > y ? static_cast<double>(x - y) : static_cast<double>(y - x);
}

Json optional_number(const std::optional<double>& v) { return v ? Json(*v) : Json(nullptr); }

Json fragment_json(const CloneFragment& f) {
    return Json{{"file", f.file}, {"start", f.start_line}, {"end", f.end_line}};
}

CloneFragment fragment_from(const Json& j) {
    CloneFragment f;
    f.file = j.at("file").get<std::string>();
    f.start_line = j.at("start").get<std::uint32_t>();
    f.end_line = j.at("end").get<std::uint32_t>();
    return f;
}

Json bins_json(const std::vector<HistogramBin>& bins) {
    Json arr = Json::array();
    for (const auto& b : bins) arr.push_back(Json{{"lower", b.lower}, {"count", b.count}});
    return arr;
}

Json optional_descriptive(const std::optional<Descriptive>& d) {
    return d ? to_json(*d) : Json(nullptr);
}

std::optional<Descriptive> describe_or_empty(const std::vector<double>& v) {
    if (v.empty()) return std::nullopt;
    return describe(v);
}

Json history_json(const std::vector<HistoryEntry>& history) {
    Json arr = Json::array();
    for (const auto& h : history) {
        arr.push_back(Json{{"hash", h.hash},
                           {"date", h.timestamp.to_git_string()},
                           {"epoch", h.timestamp.epoch_seconds},
                           {"offset_minutes", h.timestamp.offset_minutes}});
    }
    return arr;
}

std::vector<HistoryEntry> history_from(const Json& j) {
    std::vector<HistoryEntry> out;
    for (const auto& h : j) {
        out.push_back({h.at("hash").get<std::string>(),
                       Timestamp{h.at("epoch").get<std::int64_t>(),
                                 h.at("offset_minutes").get<std::int32_t>()}});
    }
    return out;
}

Json pair_json(const PairRecord& p) {
    Json matches = Json::array();
    for (const auto& m : p.matches) {
        matches.push_back(Json{{"hash", m.hash},
                               {"similarity", m.similarity},
                               {"degenerate", m.degenerate},
                               {"concerning", m.concerning}});
    }
    return Json{{"index", p.index},
                {"a", fragment_json(p.a)},
                {"b", fragment_json(p.b)},
                {"clone_type", to_string(p.clone_type)},
                {"token_len", p.token_len},
                {"history_length_a", p.history_a.size()},
                {"history_length_b", p.history_b.size()},
                {"history_a", history_json(p.history_a)},
                {"history_b", history_json(p.history_b)},
                {"matches", matches},
                {"last_similarity", optional_number(p.last_similarity)},
                {"not_cochanged_last_similarity", optional_number(p.not_cochanged_last_similarity)},
                {"pattern", to_string(p.pattern)}};
}

std::optional<double> optional_double_from(const Json& j) {
    if (j.is_null()) return std::nullopt;
    return j.get<double>();
}

PairRecord pair_from(const Json& j) {
    PairRecord p;
    p.index = j.at("index").get<std::size_t>();
    p.a = fragment_from(j.at("a"));
    p.b = fragment_from(j.at("b"));
    p.clone_type = clone_type_from_string(j.at("clone_type").get<std::string>());
    p.token_len = j.at("token_len").get<std::size_t>();
    p.history_a = history_from(j.at("history_a"));
    p.history_b = history_from(j.at("history_b"));
    for (const auto& m : j.at("matches")) {
        p.matches.push_back({m.at("hash").get<std::string>(), m.at("similarity").get<double>(),
                             m.at("degenerate").get<bool>(), m.at("concerning").get<bool>()});
    }
    p.last_similarity = optional_double_from(j.at("last_similarity"));
    p.not_cochanged_last_similarity = optional_double_from(j.at("not_cochanged_last_similarity"));
    p.pattern = pattern_from_string(j.at("pattern").get<std::string>());
    return p;
}

Json summary_json(const CloneSummary& s) {
    return Json{{"n_files", s.n_files},
                {"total_loc", s.total_loc},
                {"n_clone_sets_kept", s.n_clone_sets_kept},
                {"n_clone_sets_dropped", s.n_clone_sets_dropped},
                {"median_clone_length_loc", s.median_clone_length_loc}};
}

CloneSummary summary_from(const Json& j) {
    CloneSummary s;
    s.n_files = j.at("n_files").get<std::uint64_t>();
    s.total_loc = j.at("total_loc").get<std::uint64_t>();
    s.n_clone_sets_kept = j.at("n_clone_sets_kept").get<std::size_t>();
    s.n_clone_sets_dropped = j.at("n_clone_sets_dropped").get<std::size_t>();
    s.median_clone_length_loc = j.at("median_clone_length_loc").get<double>();
    return s;
}

Json params_json(const DetectorParams& p) {
    return Json{{"min_token", p.min_token},
                {"min_rnr", p.min_rnr},
                {"min_tks", p.min_tks},
                {"exclude_pattern", p.exclude_pattern}};
}

DetectorParams params_from(const Json& j) {
    DetectorParams p;
    p.min_token = j.at("min_token").get<std::size_t>();
    p.min_rnr = j.at("min_rnr").get<double>();
    p.min_tks = j.at("min_tks").get<std::size_t>();
    p.exclude_pattern = j.at("exclude_pattern").get<std::string>();
    return p;
}

Json tool_json() { return Json{{"name", kToolName}, {"version", kToolVersion}}; }

bool numbers_match(const Json& x, const Json& y) {
    const double a = x.get<double>();
    const double b = y.get<double>();
    return std::fabs(a - b) <= 1e-12 * std::max(1.0, std::fabs(a));
}

// First path at which `actual` differs from `expected`, or empty.
std::string first_mismatch(const Json& expected, const Json& actual, const std::string& path) {
    if (expected.is_number() && actual.is_number()) {
        return numbers_match(expected, actual) ? std::string{} : path;
    }
    if (expected.type() != actual.type()) return path;
    if (expected.is_object()) {
        for (auto it = expected.begin(); it != expected.end(); ++it) {
            if (!actual.contains(it.key())) return path + "." + it.key();
            auto sub = first_mismatch(it.value(), actual.at(it.key()), path + "." + it.key());
            if (!sub.empty()) return sub;
        }
        for (auto it = actual.begin(); it != actual.end(); ++it) {
            if (!expected.contains(it.key())) return path + "." + it.key();
        }
        return {};
    }
    if (expected.is_array()) {
        if (expected.size() != actual.size()) return path;
        for (std::size_t i = 0; i < expected.size(); ++i) {
            auto sub = first_mismatch(expected[i], actual[i], path + "[" + std::to_string(i) + "]");
            if (!sub.empty()) return sub;
        }
        return {};
    }
    return expected == actual ? std::string{} : path;
}

void check_pair(const PairRecord& p, std::size_t i, double threshold) {
    const std::string at = "pairs[" + std::to_string(i) + "]";
    if (p.history_a.empty()) throw ConsistencyError(at + ".history_a");
    if (p.history_b.empty()) throw ConsistencyError(at + ".history_b");

    std::unordered_set<std::string> in_b;
    for (const auto& h : p.history_b) in_b.insert(h.hash);
    std::vector<std::string> shared;
    for (const auto& h : p.history_a) {
        if (in_b.contains(h.hash)) shared.push_back(h.hash);
    }
    if (shared.size() != p.matches.size()) throw ConsistencyError(at + ".matches");
    for (std::size_t m = 0; m < shared.size(); ++m) {
        const auto& match = p.matches[m];
        const std::string mat = at + ".matches[" + std::to_string(m) + "]";
        if (match.hash != shared[m]) throw ConsistencyError(mat + ".hash");
        if (!(match.similarity >= 0.0 && match.similarity <= 1.0)) {
            throw ConsistencyError(mat + ".similarity");
        }
        if (match.concerning != (match.similarity < threshold)) {
            throw ConsistencyError(mat + ".concerning");
        }
    }

    const auto& last_a = p.history_a.front().hash;
    const auto& last_b = p.history_b.front().hash;
    const bool same_last = last_a == last_b;
    if (same_last != p.last_similarity.has_value()) throw ConsistencyError(at + ".last_similarity");
    if (same_last && p.not_cochanged_last_similarity) {
        throw ConsistencyError(at + ".not_cochanged_last_similarity");
    }
    if (classify_last_commits(last_a, last_b, p.last_similarity, threshold) != p.pattern) {
        throw ConsistencyError(at + ".pattern");
    }
}

}  // namespace

Json to_json(const ClonesFile& clones) {
    Json arr = Json::array();
    for (const auto& p : clones.pairs) {
        arr.push_back(Json{{"file_a", p.a.file},
                           {"start_a", p.a.start_line},
                           {"end_a", p.a.end_line},
                           {"file_b", p.b.file},
                           {"start_b", p.b.start_line},
                           {"end_b", p.b.end_line},
                           {"clone_type", to_string(p.clone_type)},
                           {"rnr", p.rnr},
                           {"tks", p.tks},
                           {"token_len", p.token_length()}});
    }
    return Json{{"tool", tool_json()},
                {"params", params_json(clones.params)},
                {"clones", arr},
                {"summary", summary_json(clones.summary)}};
}

ClonesFile clones_from_json(const Json& j) {
    try {
        ClonesFile c;
        c.params = params_from(j.at("params"));
        c.summary = summary_from(j.at("summary"));
        for (const auto& e : j.at("clones")) {
            ClonePair p;
            p.a.file = e.at("file_a").get<std::string>();
            p.a.start_line = e.at("start_a").get<std::uint32_t>();
            p.a.end_line = e.at("end_a").get<std::uint32_t>();
            p.b.file = e.at("file_b").get<std::string>();
            p.b.start_line = e.at("start_b").get<std::uint32_t>();
            p.b.end_line = e.at("end_b").get<std::uint32_t>();
            const auto len = e.at("token_len").get<std::size_t>();
            if (len == 0) throw DataError("clone with zero token length");
            p.a.token_end = p.b.token_end = len - 1;
            p.clone_type = clone_type_from_string(e.at("clone_type").get<std::string>());
            p.rnr = e.at("rnr").get<double>();
            p.tks = e.at("tks").get<std::size_t>();
            if (p.a.start_line < 1 || p.a.end_line < p.a.start_line || p.b.start_line < 1 ||
                p.b.end_line < p.b.start_line) {
                throw DataError("clone with an invalid line range in " + p.a.file);
            }
            c.pairs.push_back(std::move(p));
        }
        return c;
    } catch (const nlohmann::json::exception& e) {
        throw DataError(std::string("malformed clones file: ") + e.what());
    } catch (const std::invalid_argument& e) {
        throw DataError(std::string("malformed clones file: ") + e.what());
    }
}

Aggregates compute_aggregates(std::span<const PairRecord> pairs) {
    Aggregates agg;
    agg.n_pairs = pairs.size();
    std::vector<double> lengths;
    std::vector<double> length_differences;
    std::vector<double> cochanged;
    std::vector<double> not_cochanged;
    std::vector<Pattern> patterns;
    for (const auto& p : pairs) {
        agg.counts.total_commits += p.history_a.size() + p.history_b.size();
        agg.counts.cochanged_commits += 2 * p.matches.size();
        for (const auto& m : p.matches) {
            if (m.concerning) agg.counts.concerning_commits += 2;
            cochanged.push_back(m.similarity);
        }
        lengths.push_back(static_cast<double>(p.history_a.size()));
        lengths.push_back(static_cast<double>(p.history_b.size()));
        length_differences.push_back(diff_of(p.history_a.size(), p.history_b.size()));
        if (p.not_cochanged_last_similarity) not_cochanged.push_back(*p.not_cochanged_last_similarity);
        patterns.push_back(p.pattern);
    }
    agg.patterns = pattern_ratios(patterns);
    agg.commit_length = describe_or_empty(lengths);
    agg.commit_length_difference = describe_or_empty(length_differences);
    agg.cochanged_similarity = describe_or_empty(cochanged);
    agg.not_cochanged_last_similarity = describe_or_empty(not_cochanged);
    agg.commit_length_histogram = histogram(lengths, kCommitLengthBinWidth, 0.0);
    agg.cochanged_similarity_histogram = fixed_histogram(cochanged, 0.0, 1.0, kSimilarityBins);
    agg.not_cochanged_similarity_histogram = fixed_histogram(not_cochanged, 0.0, 1.0, kSimilarityBins);
    return agg;
}

Json to_json(const Descriptive& d) {
    return Json{{"n", d.n},         {"min", d.min},       {"max", d.max},
                {"mean", d.mean},   {"median", d.median}, {"stddev", optional_number(d.stddev)}};
}

Json to_json(const WelchResult& w) {
    return Json{{"t", w.t}, {"df", w.df}, {"p", w.p}, {"alpha", w.alpha}, {"significant", w.significant}};
}

Json to_json(const Aggregates& a) {
    return Json{
        {"n_pairs", a.n_pairs},
        {"total_commits", a.counts.total_commits},
        {"cochanged_commits", a.counts.cochanged_commits},
        {"concerning_commits", a.counts.concerning_commits},
        {"cochange_ratio", a.counts.cochange_ratio()},
        {"concerning_over_cochanged", a.counts.concerning_over_cochanged()},
        {"concerning_over_total", a.counts.concerning_over_total()},
        {"p1_count", a.patterns.p1_count},
        {"p2_count", a.patterns.p2_count},
        {"concerning_pair_ratio", a.patterns.concerning_pair_ratio},
        {"p2_over_concerning", a.patterns.p2_over_concerning},
        {"commit_length", optional_descriptive(a.commit_length)},
        {"commit_length_difference", optional_descriptive(a.commit_length_difference)},
        {"cochanged_similarity", optional_descriptive(a.cochanged_similarity)},
        {"not_cochanged_last_similarity", optional_descriptive(a.not_cochanged_last_similarity)},
        {"histograms",
         Json{{"commit_length", bins_json(a.commit_length_histogram)},
              {"cochanged_similarity", bins_json(a.cochanged_similarity_histogram)},
              {"not_cochanged_last_similarity", bins_json(a.not_cochanged_similarity_histogram)}}},
    };
}

Json to_json(const BaselineReport& b) {
    Json samples = Json::array();
    for (const auto& s : b.samples) {
        Json entry = fragment_json(s.fragment);
        entry["history_length"] = s.history_length ? Json(*s.history_length) : Json(nullptr);
        if (!s.error.empty()) entry["error"] = s.error;
        samples.push_back(std::move(entry));
    }
    return Json{{"snippet_loc", b.snippet_loc},
                {"requested_samples", b.requested},
                {"seed", b.seed},
                {"random", optional_descriptive(b.random)},
                {"clone", optional_descriptive(b.clone)},
                {"welch", b.welch ? to_json(*b.welch) : Json(nullptr)},
                {"welch_error", b.welch_error.empty() ? Json(nullptr) : Json(b.welch_error)},
                {"clone_lengths", b.clone_lengths},
                {"samples", samples}};
}

Json to_json(const RepoReport& r) {
    Json pairs = Json::array();
    for (const auto& p : r.pairs) pairs.push_back(pair_json(p));
    Json exclusions = Json::array();
    for (const auto& e : r.exclusions) {
        exclusions.push_back(Json{{"pair_index", e.pair_index},
                                  {"side", e.side},
                                  {"fragment", fragment_json(e.fragment)},
                                  {"reason", e.reason}});
    }
    return Json{
        {"tool", tool_json()},
        {"config",
         Json{{"repo", r.config.repo},
              {"threshold", r.config.threshold},
              {"include_merges", r.config.include_merges},
              {"dedup_by_hash", r.config.dedup_by_hash},
              {"detector", params_json(r.config.detector)}}},
        {"repo_stats",
         Json{{"n_files", r.repo_stats.n_files},
              {"total_loc", r.repo_stats.total_loc},
              {"repo_age_days", r.repo_stats.repo_age_days},
              {"total_commit_count", r.repo_stats.total_commit_count}}},
        {"clone_summary", summary_json(r.clone_summary)},
        {"aggregates", to_json(r.aggregates)},
        {"baseline", r.baseline ? to_json(*r.baseline) : Json(nullptr)},
        {"exclusions", exclusions},
        {"pairs", pairs},
    };
}

RepoReport load_report(const Json& j) {
    RepoReport r;
    try {
        const auto& cfg = j.at("config");
        r.config.repo = cfg.at("repo").get<std::string>();
        r.config.threshold = cfg.at("threshold").get<double>();
        r.config.include_merges = cfg.at("include_merges").get<bool>();
        r.config.dedup_by_hash = cfg.at("dedup_by_hash").get<bool>();
        r.config.detector = params_from(cfg.at("detector"));
        const auto& rs = j.at("repo_stats");
        r.repo_stats.n_files = rs.at("n_files").get<std::uint64_t>();
        r.repo_stats.total_loc = rs.at("total_loc").get<std::uint64_t>();
        r.repo_stats.repo_age_days = rs.at("repo_age_days").get<std::int64_t>();
        r.repo_stats.total_commit_count = rs.at("total_commit_count").get<std::uint64_t>();
        r.clone_summary = summary_from(j.at("clone_summary"));
        for (const auto& p : j.at("pairs")) r.pairs.push_back(pair_from(p));
        for (const auto& e : j.at("exclusions")) {
            r.exclusions.push_back({e.at("pair_index").get<std::size_t>(), e.at("side").get<std::string>(),
                                    fragment_from(e.at("fragment")), e.at("reason").get<std::string>()});
        }
        if (!j.at("aggregates").is_object()) throw DataError("aggregates must be an object");
    } catch (const nlohmann::json::exception& e) {
        throw DataError(std::string("malformed report: ") + e.what());
    } catch (const std::invalid_argument& e) {
        throw DataError(std::string("malformed report: ") + e.what());
    }

    for (std::size_t i = 0; i < r.pairs.size(); ++i) check_pair(r.pairs[i], i, r.config.threshold);

    r.aggregates = compute_aggregates(r.pairs);
    const auto mismatch = first_mismatch(to_json(r.aggregates), j.at("aggregates"), "aggregates");
    if (!mismatch.empty()) throw ConsistencyError(mismatch);

    if (!j.at("baseline").is_null()) {
        const auto& b = j.at("baseline");
        BaselineReport base;
        try {
            base.snippet_loc = b.at("snippet_loc").get<std::uint32_t>();
            base.requested = b.at("requested_samples").get<std::size_t>();
            base.seed = b.at("seed").get<std::uint64_t>();
            base.clone_lengths = b.at("clone_lengths").get<std::vector<double>>();
            std::vector<double> random_lengths;
            for (const auto& s : b.at("samples")) {
                BaselineSample sample;
                sample.fragment = fragment_from(s);
                if (!s.at("history_length").is_null()) {
                    sample.history_length = s.at("history_length").get<std::size_t>();
                    random_lengths.push_back(static_cast<double>(*sample.history_length));
                }
                if (s.contains("error")) sample.error = s.at("error").get<std::string>();
                base.samples.push_back(std::move(sample));
            }
            base.random = describe_or_empty(random_lengths);
            base.clone = describe_or_empty(base.clone_lengths);
        } catch (const nlohmann::json::exception& e) {
            throw DataError(std::string("malformed baseline section: ") + e.what());
        }
        auto sub = first_mismatch(optional_descriptive(base.random), b.at("random"), "baseline.random");
        if (sub.empty()) sub = first_mismatch(optional_descriptive(base.clone), b.at("clone"), "baseline.clone");
        if (!sub.empty()) throw ConsistencyError(sub);
        r.baseline = std::move(base);
    }
    return r;
}

std::string format_number(double value) {
    char buffer[64];
    const auto [ptr, ec] = std::to_chars(buffer, buffer + sizeof buffer, value);
    return std::string(buffer, ptr);
}

std::vector<std::string> write_report_csvs(const RepoReport& report, const std::filesystem::path& dir) {
    std::filesystem::create_directories(dir);
    std::vector<std::string> written;
    auto write = [&](const std::string& name, const std::string& content) {
        std::ofstream out(dir / name, std::ios::binary);
        if (!out) throw std::runtime_error("cannot write " + (dir / name).string());
        out << content;
        written.push_back(name);
    };
    auto bins_csv = [](const std::vector<HistogramBin>& bins) {
        std::string text = "bin_lower,count\n";
        for (const auto& b : bins) text += format_number(b.lower) + "," + std::to_string(b.count) + "\n";
        return text;
    };

    const auto& a = report.aggregates;
    write("commit_length_histogram.csv", bins_csv(a.commit_length_histogram));
    write("cochanged_similarity_histogram.csv", bins_csv(a.cochanged_similarity_histogram));
    write("not_cochanged_similarity_histogram.csv", bins_csv(a.not_cochanged_similarity_histogram));

    std::string ratios = "total_pairs,p1_count,p2_count,concerning_pair_ratio,p2_over_concerning\n";
    ratios += std::to_string(a.patterns.total_pairs) + "," + std::to_string(a.patterns.p1_count) + "," +
              std::to_string(a.patterns.p2_count) + "," + format_number(a.patterns.concerning_pair_ratio) +
              "," + format_number(a.patterns.p2_over_concerning) + "\n";
    write("pattern_ratios.csv", ratios);
    return written;
}

}  // namespace ccl
