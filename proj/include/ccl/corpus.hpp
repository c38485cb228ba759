#pragma once

#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "ccl/lexer.hpp"

namespace ccl {

class GitRunner;

/// A tracked source file exists but cannot be read.
class CorpusReadError : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct SourceFile {
    /// Repository-relative path with forward slashes.
    std::string path;
    std::uint32_t loc = 0;
    std::vector<Token> tokens;
    std::vector<NormalizedToken> symbols;
    std::vector<LexWarning> warnings;
};

using Corpus = std::vector<SourceFile>;

/// Path and line count of one corpus file, without its tokens.
struct FileExtent {
    std::string path;
    std::uint32_t loc = 0;
};

std::vector<FileExtent> file_extents(const Corpus& corpus);

/// Number of lines in a text; a trailing line without '\n' still counts.
std::uint32_t count_lines(std::string_view text);

/// Case-insensitive substring match of `pattern` against the whole path,
/// which covers the file name and every directory segment. An empty pattern
/// excludes nothing.
bool is_excluded_path(std::string_view path, std::string_view pattern);

SourceFile make_source_file(std::string path, std::string_view text);

/// Total line count over the corpus.
std::uint64_t total_loc(const Corpus& corpus);

/// Reads every `.java` file tracked at HEAD (per `git ls-files`) that is not
/// excluded, lexes it, and returns the files sorted by path.
Corpus load_java_corpus(const GitRunner& git, const std::filesystem::path& repo,
                        std::string_view exclude_pattern);

/// Same file selection as load_java_corpus(), but only counts lines.
std::vector<FileExtent> load_java_extents(const GitRunner& git, const std::filesystem::path& repo,
                                          std::string_view exclude_pattern);

}  // namespace ccl
