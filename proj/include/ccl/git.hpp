#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace ccl {

struct ProcessResult {
    int exit_code = 0;
    std::string out;
    std::string err;
};

/// The program could not be started at all (missing binary, bad permissions).
class SpawnError : public std::runtime_error {
public:
    SpawnError(const std::string& what, int error_number)
        : std::runtime_error(what), error_number_(error_number) {}
    int error_number() const { return error_number_; }

private:
    int error_number_;
};

/// The configured git executable is missing; fatal for a whole run.
class GitNotFoundError : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// git ran but exited nonzero.
class GitCommandError : public std::runtime_error {
public:
    GitCommandError(const std::string& what, int exit_code, std::string stderr_text)
        : std::runtime_error(what), exit_code_(exit_code), stderr_(std::move(stderr_text)) {}
    int exit_code() const { return exit_code_; }
    const std::string& stderr_text() const { return stderr_; }

private:
    int exit_code_;
    std::string stderr_;
};

using EnvOverrides = std::vector<std::pair<std::string, std::string>>;

/// Runs argv[0] (looked up on PATH) with stdin from /dev/null and both output
/// streams captured. The child inherits the environment plus `env`.
ProcessResult run_process(const std::vector<std::string>& argv, const EnvOverrides& env = {});

class GitRunner {
public:
    /// Uses $CCL_GIT_BIN when set, otherwise "git".
    GitRunner();
    explicit GitRunner(std::string git_binary);

    static std::string default_binary();

    const std::string& binary() const { return binary_; }

    /// `git -C repo args...` with a pager-free C locale.
    ProcessResult run(const std::filesystem::path& repo, const std::vector<std::string>& args) const;

    /// Like run(), but throws GitCommandError on a nonzero exit.
    std::string run_checked(const std::filesystem::path& repo,
                            const std::vector<std::string>& args) const;

private:
    std::string binary_;
};

}  // namespace ccl
