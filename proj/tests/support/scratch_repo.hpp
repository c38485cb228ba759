#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace ccl::testing {

/// Fresh directory under the system temp dir, removed on destruction.
class TempDir {
public:
    explicit TempDir(const std::string& prefix = "ccl");
    ~TempDir();
    TempDir(const TempDir&) = delete;
    TempDir& operator=(const TempDir&) = delete;

    const std::filesystem::path& path() const { return path_; }

private:
    std::filesystem::path path_;
};

/// A git repository with pinned identities and dates, so hashes are stable.
class ScratchRepo {
public:
    explicit ScratchRepo(std::filesystem::path dir);

    const std::filesystem::path& path() const { return dir_; }

    void write(const std::string& relative, const std::string& text) const;
    void remove(const std::string& relative) const;

    /// Stages everything and commits; commit n is dated n days after
    /// 2020-01-01. Returns the new HEAD hash.
    std::string commit(const std::string& message);

    /// Runs git in the repository and returns stdout; throws on failure.
    std::string git(const std::vector<std::string>& args) const;

private:
    std::filesystem::path dir_;
    int commits_ = 0;
};

}  // namespace ccl::testing
