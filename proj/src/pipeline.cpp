#include <cmath>
#include <fstream>
#include <sstream>
#include <thread>

#include "ccl/pipeline.hpp"

namespace ccl {

namespace {

void require_repo(const std::filesystem::path& repo) {
    std::error_code ec;
    if (!std::filesystem::is_directory(repo, ec)) {
        throw EnvironmentError("repository path is not a directory: " + repo.string());
    }
}

template <typename F>
auto with_environment_errors(F&& f) {
    try {
        return f();
    } catch (const GitCommandError& e) {
        throw EnvironmentError(std::string("not a usable git work tree: ") + e.what());
    } catch (const CorpusReadError& e) {
        throw DataError(e.what());
    }
}

std::vector<HistoryEntry> history_entries(const SnippetHistory& h) {
    std::vector<HistoryEntry> out;
    out.reserve(h.commits.size());
    for (const auto& c : h.commits) out.push_back({c.hash, c.timestamp});
    return out;
}

std::uint32_t snippet_length_for(const ClonesFile& clones) {
    const double median = clones.summary.median_clone_length_loc;
    if (!(median >= 1.0)) {
        throw DataError("median clone length is undefined (no clone pairs)");
    }
    return static_cast<std::uint32_t>(std::lround(median));
}

}  // namespace

PairRecord make_pair_record(std::size_t index, const ClonePair& pair, const SnippetHistory& hist_a,
                            const SnippetHistory& hist_b, const AnalysisConfig& config) {
    PairRecord rec;
    rec.index = index;
    rec.a = pair.a;
    rec.b = pair.b;
    rec.clone_type = pair.clone_type;
    rec.token_len = pair.token_length();
    rec.history_a = history_entries(hist_a);
    rec.history_b = history_entries(hist_b);
    for (const auto& m : match_cochanges(hist_a, hist_b, config)) {
        rec.matches.push_back({m.hash, m.similarity.value, m.similarity.degenerate, m.concerning});
    }
    const auto cls = classify_pair(hist_a, hist_b, config);
    rec.pattern = cls.pattern;
    if (cls.last_similarity) {
        rec.last_similarity = cls.last_similarity->value;
    } else {
        rec.not_cochanged_last_similarity =
            commit_patch_similarity(hist_a.commits.front(), hist_b.commits.front()).value;
    }
    return rec;
}

std::size_t default_jobs() {
    const auto n = std::thread::hardware_concurrency();
    return n == 0 ? 1 : n;
}

ClonesFile run_detect(const GitRunner& git, const std::filesystem::path& repo,
                      const DetectorParams& params) {
    params.validate();
    require_repo(repo);
    const auto corpus =
        with_environment_errors([&] { return load_java_corpus(git, repo, params.exclude_pattern); });

    const auto pairs = detect_clone_pairs(corpus, params);
    auto sets = build_clone_sets(pairs);

    ClonesFile out;
    out.params = params;
    out.pairs = std::move(sets.kept);
    out.summary.n_files = corpus.size();
    out.summary.total_loc = total_loc(corpus);
    out.summary.n_clone_sets_kept = sets.kept_sets;
    out.summary.n_clone_sets_dropped = sets.dropped_sets;
    out.summary.median_clone_length_loc = median_clone_length_loc(out.pairs);
    return out;
}

RepoReport run_analyze(const GitRunner& git, const std::filesystem::path& repo,
                       const ClonesFile& clones, const RunOptions& options,
                       const std::optional<BaselineOptions>& baseline) {
    options.analysis.validate();
    require_repo(repo);

    RepoReport report;
    report.config.repo = options.repo_label.empty() ? repo.string() : options.repo_label;
    report.config.threshold = options.analysis.threshold;
    report.config.include_merges = options.history.include_merges;
    report.config.dedup_by_hash = options.history.dedup_by_hash;
    report.config.detector = clones.params;
    report.clone_summary = clones.summary;

    const auto extents = with_environment_errors(
        [&] { return load_java_extents(git, repo, clones.params.exclude_pattern); });
    report.repo_stats =
        with_environment_errors([&] { return repo_stats(git, repo, extents); });

    std::vector<CloneFragment> fragments;
    fragments.reserve(clones.pairs.size() * 2);
    for (const auto& p : clones.pairs) {
        fragments.push_back(p.a);
        fragments.push_back(p.b);
    }
    const auto outcomes = collect_histories(git, repo, fragments, options.history, options.jobs);

    std::size_t failed_fragments = 0;
    std::vector<double> clone_lengths;
    for (std::size_t i = 0; i < clones.pairs.size(); ++i) {
        const auto& pair = clones.pairs[i];
        const HistoryOutcome* sides[2] = {&outcomes[2 * i], &outcomes[2 * i + 1]};
        bool usable = true;
        for (int s = 0; s < 2; ++s) {
            const auto& o = *sides[s];
            std::string reason;
            if (!o.history) {
                reason = o.error;
            } else if (o.history->commits.empty()) {
                reason = "git log -L returned no commits";
            }
            if (!reason.empty()) {
                ++failed_fragments;
                usable = false;
                report.exclusions.push_back({i, s == 0 ? "a" : "b", s == 0 ? pair.a : pair.b, reason});
            }
        }
        if (!usable) continue;

        const auto& hist_a = *sides[0]->history;
        const auto& hist_b = *sides[1]->history;
        auto rec = make_pair_record(i, pair, hist_a, hist_b, options.analysis);
        clone_lengths.push_back(static_cast<double>(hist_a.length()));
        clone_lengths.push_back(static_cast<double>(hist_b.length()));
        report.pairs.push_back(std::move(rec));
    }
    if (!fragments.empty() && failed_fragments == fragments.size()) {
        throw DataError("git history could not be mined for any clone fragment");
    }

    report.aggregates = compute_aggregates(report.pairs);
    if (baseline) {
        report.baseline = run_baseline_with(git, repo, clones, clone_lengths, *baseline, options);
    }
    return report;
}

BaselineReport run_baseline(const GitRunner& git, const std::filesystem::path& repo,
                            const ClonesFile& clones, const BaselineOptions& baseline,
                            const RunOptions& options) {
    require_repo(repo);
    if (baseline.samples == 0) throw std::invalid_argument("baseline needs at least one sample");
    snippet_length_for(clones);

    std::vector<CloneFragment> fragments;
    for (const auto& p : clones.pairs) {
        fragments.push_back(p.a);
        fragments.push_back(p.b);
    }
    std::vector<double> clone_lengths;
    for (const auto& o : collect_histories(git, repo, fragments, options.history, options.jobs)) {
        if (o.history && !o.history->commits.empty()) {
            clone_lengths.push_back(static_cast<double>(o.history->length()));
        }
    }
    return run_baseline_with(git, repo, clones, clone_lengths, baseline, options);
}

BaselineReport run_baseline_with(const GitRunner& git, const std::filesystem::path& repo,
                                 const ClonesFile& clones, const std::vector<double>& clone_lengths,
                                 const BaselineOptions& baseline, const RunOptions& options) {
    if (baseline.samples == 0) throw std::invalid_argument("baseline needs at least one sample");
    BaselineReport out;
    out.snippet_loc = snippet_length_for(clones);
    out.requested = baseline.samples;
    out.seed = baseline.seed;
    out.clone_lengths = clone_lengths;

    const auto extents = with_environment_errors(
        [&] { return load_java_extents(git, repo, clones.params.exclude_pattern); });
    std::vector<CloneFragment> samples;
    try {
        samples = sample_random_snippets(extents, out.snippet_loc, baseline.samples, baseline.seed);
    } catch (const SamplingError& e) {
        throw DataError(e.what());
    }

    std::vector<double> random_lengths;
    const auto outcomes = collect_histories(git, repo, samples, options.history, options.jobs);
    for (std::size_t i = 0; i < samples.size(); ++i) {
        BaselineSample s;
        s.fragment = samples[i];
        if (outcomes[i].history && !outcomes[i].history->commits.empty()) {
            s.history_length = outcomes[i].history->length();
            random_lengths.push_back(static_cast<double>(*s.history_length));
        } else {
            s.error = outcomes[i].history ? "git log -L returned no commits" : outcomes[i].error;
        }
        out.samples.push_back(std::move(s));
    }

    if (!random_lengths.empty()) out.random = describe(random_lengths);
    if (!clone_lengths.empty()) out.clone = describe(clone_lengths);
    try {
        out.welch = welch_t_test(clone_lengths, random_lengths);
    } catch (const std::exception& e) {
        out.welch_error = e.what();
    }
    return out;
}

std::string dump_json(const Json& j) { return j.dump(2) + "\n"; }

Json read_json_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw EnvironmentError("cannot open " + path.string());
    std::ostringstream buffer;
    buffer << in.rdbuf();
    try {
        return Json::parse(buffer.str());
    } catch (const nlohmann::json::parse_error& e) {
        throw DataError(path.string() + " is not valid JSON: " + e.what());
    }
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary);
    if (!out) throw EnvironmentError("cannot write " + path.string());
    out << text;
    if (!out) throw EnvironmentError("write failed for " + path.string());
}

}  // namespace ccl
