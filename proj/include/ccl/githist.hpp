#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "ccl/clonedet.hpp"
#include "ccl/corpus.hpp"
#include "ccl/git.hpp"

namespace ccl {

enum class LineMarker : std::uint8_t { Context, Added, Removed };

struct HunkLine {
    LineMarker marker = LineMarker::Context;
    std::string text;

    bool operator==(const HunkLine&) const = default;
};

/// One "@@ -a,b +c,d @@" block of a unified diff.
struct Hunk {
    std::uint32_t old_start = 0;
    std::uint32_t old_count = 0;
    std::uint32_t new_start = 0;
    std::uint32_t new_count = 0;
    std::vector<HunkLine> lines;

    /// Context+removed lines match old_count and context+added match new_count.
    bool counts_consistent() const;
};

/// Author date as git prints it: seconds since the epoch plus the author's
/// own UTC offset.
struct Timestamp {
    std::int64_t epoch_seconds = 0;
    std::int32_t offset_minutes = 0;

    /// Default git format, e.g. "Thu Nov 6 09:04:08 2003 +0000".
    std::string to_git_string() const;

    bool operator==(const Timestamp&) const = default;
};

/// Parses git's default date format; nullopt when the text does not match.
std::optional<Timestamp> parse_git_date(std::string_view text);

struct CommitRecord {
    std::string hash;
    std::string author;
    Timestamp timestamp;
    std::string message;
    /// "diff --git", "---", "+++" and similar lines, kept out of the patch.
    std::vector<std::string> diff_headers;
    std::vector<Hunk> patch;
};

struct ParsedLog {
    std::vector<CommitRecord> commits;
    std::vector<std::string> warnings;
};

class GitLogParseError : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

/**
 * Splits `git log` output (default pretty format, patches included) into
 * commit records, newest first as printed.
 *
 * Blocks without a valid hash or Date line are skipped with a warning.
 * Throws GitLogParseError when non-blank input yields no commit at all.
 */
ParsedLog parse_git_log(std::string_view raw_text);

struct SnippetHistory {
    CloneFragment fragment;
    /// Newest first, unique hashes.
    std::vector<CommitRecord> commits;
    std::vector<std::string> warnings;

    std::size_t length() const { return commits.size(); }
};

struct HistoryOptions {
    bool include_merges = true;
    bool dedup_by_hash = true;
};

/// Runs `git log -L start,end:file` at HEAD and parses it. Throws
/// GitCommandError when git rejects the range, GitNotFoundError when git is
/// missing.
SnippetHistory snippet_history(const GitRunner& git, const std::filesystem::path& repo,
                               const CloneFragment& fragment, const HistoryOptions& options = {});

struct HistoryOutcome {
    std::optional<SnippetHistory> history;
    std::string error;
};

/// snippet_history() for many fragments with up to `jobs` git processes in
/// flight. Results follow input order. Per-fragment failures land in
/// HistoryOutcome::error; a missing git binary is rethrown.
std::vector<HistoryOutcome> collect_histories(const GitRunner& git,
                                              const std::filesystem::path& repo,
                                              std::span<const CloneFragment> fragments,
                                              const HistoryOptions& options, std::size_t jobs);

class SamplingError : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

/**
 * Draws `count` line ranges of exactly `snippet_loc` lines, uniformly over
 * every valid (file, start line) position, with replacement. Reproducible
 * from `seed` on any platform. Throws SamplingError when no file is long
 * enough and std::invalid_argument when snippet_loc is 0.
 */
std::vector<CloneFragment> sample_random_snippets(std::span<const FileExtent> files,
                                                  std::uint32_t snippet_loc, std::size_t count,
                                                  std::uint64_t seed);

struct RepoStats {
    std::uint64_t n_files = 0;
    std::uint64_t total_loc = 0;
    std::int64_t repo_age_days = 0;
    std::uint64_t total_commit_count = 0;
};

/// n_files and total_loc come from `files` (already test-excluded); commit
/// count and age come from git.
RepoStats repo_stats(const GitRunner& git, const std::filesystem::path& repo,
                     std::span<const FileExtent> files);

/// `.java` paths tracked at HEAD, in git's order.
std::vector<std::string> list_java_files(const GitRunner& git, const std::filesystem::path& repo);

}  // namespace ccl
