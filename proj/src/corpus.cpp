#include <algorithm>
#include <fstream>
#include <sstream>

#include "ccl/corpus.hpp"
#include "ccl/githist.hpp"

namespace ccl {

std::uint32_t count_lines(std::string_view text) {
    if (text.empty()) return 0;
    auto lines = static_cast<std::uint32_t>(std::count(text.begin(), text.end(), '\n'));
    if (text.back() != '\n') ++lines;
    return lines;
}

bool is_excluded_path(std::string_view path, std::string_view pattern) {
    if (pattern.empty()) return false;
    auto lower = [](char c) { return (c >= 'A' && c <= 'Z') ? static_cast<char>(c - 'A' + 'a') : c; };
    const auto it = std::search(path.begin(), path.end(), pattern.begin(), pattern.end(),
                                [&](char a, char b) { return lower(a) == lower(b); });
    return it != path.end();
}

SourceFile make_source_file(std::string path, std::string_view text) {
    SourceFile file;
    file.path = std::move(path);
    file.loc = count_lines(text);
    auto lexed = lex_java(text);
    file.tokens = std::move(lexed.tokens);
    file.warnings = std::move(lexed.warnings);
    file.symbols = normalize(file.tokens);
    return file;
}

std::uint64_t total_loc(const Corpus& corpus) {
    std::uint64_t sum = 0;
    for (const auto& f : corpus) sum += f.loc;
    return sum;
}

std::vector<FileExtent> file_extents(const Corpus& corpus) {
    std::vector<FileExtent> out;
    out.reserve(corpus.size());
    for (const auto& f : corpus) out.push_back({f.path, f.loc});
    return out;
}

namespace {

template <typename Visit>
void for_each_java_file(const GitRunner& git, const std::filesystem::path& repo,
                        std::string_view exclude_pattern, Visit visit) {
    auto paths = list_java_files(git, repo);
    std::sort(paths.begin(), paths.end());
    for (auto& path : paths) {
        if (is_excluded_path(path, exclude_pattern)) continue;
        const auto full = repo / path;
        // Tracked but deleted from the work tree, or a submodule entry.
        if (!std::filesystem::is_regular_file(full)) continue;
        std::ifstream in(full, std::ios::binary);
        if (!in) throw CorpusReadError("cannot read " + full.string());
        std::ostringstream buffer;
        buffer << in.rdbuf();
        visit(std::move(path), buffer.str());
    }
}

}  // namespace

Corpus load_java_corpus(const GitRunner& git, const std::filesystem::path& repo,
                        std::string_view exclude_pattern) {
    Corpus corpus;
    for_each_java_file(git, repo, exclude_pattern, [&](std::string path, const std::string& text) {
        corpus.push_back(make_source_file(std::move(path), text));
    });
    return corpus;
}

std::vector<FileExtent> load_java_extents(const GitRunner& git, const std::filesystem::path& repo,
                                          std::string_view exclude_pattern) {
    std::vector<FileExtent> out;
    for_each_java_file(git, repo, exclude_pattern, [&](std::string path, const std::string& text) {
        out.push_back({std::move(path), count_lines(text)});
    });
    return out;
}

}  // namespace ccl
