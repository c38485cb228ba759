#include <algorithm>
#include <atomic>
#include <exception>
#include <limits>
#include <mutex>
#include <random>
#include <thread>
#include <unordered_set>

#include "ccl/githist.hpp"

namespace ccl {

namespace {

// Unbiased draw from [0, bound) that does not depend on the standard
// library's distribution implementation.
std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t bound) {
    const std::uint64_t threshold = (std::numeric_limits<std::uint64_t>::max() - bound + 1) % bound;
    for (;;) {
        const std::uint64_t r = rng();
        if (r >= threshold) return r % bound;
    }
}

std::int64_t parse_epoch(std::string_view text) {
    try {
        return std::stoll(std::string(text));
    } catch (const std::exception&) {
        throw GitCommandError("unexpected timestamp '" + std::string(text) + "'", 0, {});
    }
}

}  // namespace

SnippetHistory snippet_history(const GitRunner& git, const std::filesystem::path& repo,
                               const CloneFragment& fragment, const HistoryOptions& options) {
    std::vector<std::string> args{"log", "--pretty=medium", "--date=default", "--no-decorate",
                                  "--no-color", "--no-show-signature"};
    if (!options.include_merges) args.emplace_back("--no-merges");
    args.push_back("-L");
    args.push_back(std::to_string(fragment.start_line) + "," + std::to_string(fragment.end_line) +
                   ":" + fragment.file);
    args.emplace_back("HEAD");

    auto parsed = parse_git_log(git.run_checked(repo, args));

    SnippetHistory history;
    history.fragment = fragment;
    history.warnings = std::move(parsed.warnings);
    if (options.dedup_by_hash) {
        std::unordered_set<std::string> seen;
        for (auto& commit : parsed.commits) {
            if (seen.insert(commit.hash).second) history.commits.push_back(std::move(commit));
        }
    } else {
        history.commits = std::move(parsed.commits);
    }
    return history;
}

std::vector<HistoryOutcome> collect_histories(const GitRunner& git,
                                              const std::filesystem::path& repo,
                                              std::span<const CloneFragment> fragments,
                                              const HistoryOptions& options, std::size_t jobs) {
    std::vector<HistoryOutcome> outcomes(fragments.size());
    std::atomic<std::size_t> next{0};
    std::atomic<bool> abort{false};
    std::exception_ptr fatal;
    std::mutex fatal_mutex;

    auto worker = [&] {
        for (;;) {
            const auto i = next.fetch_add(1);
            if (i >= fragments.size() || abort.load()) return;
            try {
                outcomes[i].history = snippet_history(git, repo, fragments[i], options);
            } catch (const GitNotFoundError&) {
                std::lock_guard lock(fatal_mutex);
                if (!fatal) fatal = std::current_exception();
                abort = true;
                return;
            } catch (const std::exception& e) {
                outcomes[i].error = e.what();
            }
        }
    };

    jobs = std::clamp<std::size_t>(jobs, 1, std::max<std::size_t>(1, fragments.size()));
    {
        std::vector<std::jthread> pool;
        pool.reserve(jobs);
        for (std::size_t t = 0; t < jobs; ++t) pool.emplace_back(worker);
    }
    if (fatal) std::rethrow_exception(fatal);
    return outcomes;
}

std::vector<CloneFragment> sample_random_snippets(std::span<const FileExtent> files,
                                                  std::uint32_t snippet_loc, std::size_t count,
                                                  std::uint64_t seed) {
    if (snippet_loc == 0) throw std::invalid_argument("snippet length must be at least 1 line");

    std::vector<std::uint64_t> cumulative;
    cumulative.reserve(files.size());
    std::uint64_t total = 0;
    for (const auto& f : files) {
        if (f.loc >= snippet_loc) total += f.loc - snippet_loc + 1;
        cumulative.push_back(total);
    }
    if (total == 0) {
        throw SamplingError("no file has at least " + std::to_string(snippet_loc) + " lines");
    }

    std::mt19937_64 rng(seed);
    std::vector<CloneFragment> out;
    out.reserve(count);
    for (std::size_t n = 0; n < count; ++n) {
        const auto r = uniform_below(rng, total);
        const auto it = std::upper_bound(cumulative.begin(), cumulative.end(), r);
        const auto idx = static_cast<std::size_t>(it - cumulative.begin());
        const std::uint64_t before = idx == 0 ? 0 : cumulative[idx - 1];
        const auto start = static_cast<std::uint32_t>(r - before + 1);
        out.push_back(CloneFragment{files[idx].path, start, start + snippet_loc - 1, 0, 0});
    }
    return out;
}

RepoStats repo_stats(const GitRunner& git, const std::filesystem::path& repo,
                     std::span<const FileExtent> files) {
    RepoStats stats;
    stats.n_files = files.size();
    for (const auto& f : files) stats.total_loc += f.loc;

    const auto count_text = git.run_checked(repo, {"rev-list", "--count", "HEAD"});
    stats.total_commit_count = static_cast<std::uint64_t>(parse_epoch(count_text));

    const auto log = git.run_checked(
        repo, {"log", "--first-parent", "--reverse", "--format=%H %at", "HEAD"});
    std::vector<std::string_view> lines;
    std::string_view rest(log);
    while (!rest.empty()) {
        const auto nl = rest.find('\n');
        const auto line = rest.substr(0, nl);
        if (!line.empty()) lines.push_back(line);
        if (nl == std::string_view::npos) break;
        rest.remove_prefix(nl + 1);
    }
    if (lines.empty()) throw GitCommandError("git log printed no commits", 0, {});
    auto timestamp_of = [](std::string_view line) {
        const auto space = line.find(' ');
        return parse_epoch(space == std::string_view::npos ? std::string_view{} : line.substr(space + 1));
    };
    const auto root = timestamp_of(lines.front());
    const auto head = timestamp_of(lines.back());
    const auto diff = head - root;
    stats.repo_age_days = diff <= 0 ? 0 : diff / 86400;
    return stats;
}

std::vector<std::string> list_java_files(const GitRunner& git, const std::filesystem::path& repo) {
    const auto out = git.run_checked(repo, {"ls-files", "-z", "--", "*.java"});
    std::vector<std::string> files;
    std::size_t start = 0;
    while (start < out.size()) {
        auto end = out.find('\0', start);
        if (end == std::string::npos) end = out.size();
        if (end > start) files.emplace_back(out.substr(start, end - start));
        start = end + 1;
    }
    return files;
}

}  // namespace ccl
