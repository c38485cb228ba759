#include <cerrno>
#include <cstdlib>
#include <cstring>
#include <map>

#include <fcntl.h>
#include <poll.h>
#include <spawn.h>
#include <sys/wait.h>
#include <unistd.h>

#include "ccl/git.hpp"

extern char** environ;

namespace ccl {

namespace {

class Pipe {
public:
    Pipe() {
        if (::pipe2(fds_, O_CLOEXEC) != 0) {
            throw SpawnError(std::string("pipe: ") + std::strerror(errno), errno);
        }
    }
    ~Pipe() {
        close_read();
        close_write();
    }
    Pipe(const Pipe&) = delete;
    Pipe& operator=(const Pipe&) = delete;

    int read_end() const { return fds_[0]; }
    int write_end() const { return fds_[1]; }
    void close_read() {
        if (fds_[0] >= 0) ::close(fds_[0]);
        fds_[0] = -1;
    }
    void close_write() {
        if (fds_[1] >= 0) ::close(fds_[1]);
        fds_[1] = -1;
    }

private:
    int fds_[2] = {-1, -1};
};

std::vector<std::string> build_environment(const EnvOverrides& overrides) {
    std::map<std::string, std::string> merged;
    for (char** e = environ; e != nullptr && *e != nullptr; ++e) {
        std::string entry(*e);
        const auto eq = entry.find('=');
        if (eq == std::string::npos) continue;
        merged[entry.substr(0, eq)] = entry.substr(eq + 1);
    }
    for (const auto& [key, value] : overrides) merged[key] = value;
    std::vector<std::string> out;
    out.reserve(merged.size());
    for (const auto& [key, value] : merged) out.push_back(key + "=" + value);
    return out;
}

void drain(Pipe& out_pipe, Pipe& err_pipe, ProcessResult& result) {
    pollfd fds[2] = {{out_pipe.read_end(), POLLIN, 0}, {err_pipe.read_end(), POLLIN, 0}};
    std::string* sinks[2] = {&result.out, &result.err};
    int open_count = 2;
    char buffer[65536];
    while (open_count > 0) {
        if (::poll(fds, 2, -1) < 0) {
            if (errno == EINTR) continue;
            throw SpawnError(std::string("poll: ") + std::strerror(errno), errno);
        }
        for (int i = 0; i < 2; ++i) {
            if (fds[i].fd < 0 || fds[i].revents == 0) continue;
            const ssize_t n = ::read(fds[i].fd, buffer, sizeof buffer);
            if (n > 0) {
                sinks[i]->append(buffer, static_cast<std::size_t>(n));
            } else if (n == 0 || errno != EINTR) {
                fds[i].fd = -1;
                --open_count;
            }
        }
    }
}

}  // namespace

ProcessResult run_process(const std::vector<std::string>& argv, const EnvOverrides& env) {
    if (argv.empty()) throw SpawnError("empty argv", EINVAL);

    Pipe out_pipe;
    Pipe err_pipe;

    posix_spawn_file_actions_t actions;
    posix_spawn_file_actions_init(&actions);
    posix_spawn_file_actions_addopen(&actions, STDIN_FILENO, "/dev/null", O_RDONLY, 0);
    posix_spawn_file_actions_adddup2(&actions, out_pipe.write_end(), STDOUT_FILENO);
    posix_spawn_file_actions_adddup2(&actions, err_pipe.write_end(), STDERR_FILENO);

    std::vector<char*> args;
    args.reserve(argv.size() + 1);
    for (const auto& a : argv) args.push_back(const_cast<char*>(a.c_str()));
    args.push_back(nullptr);

    const auto env_strings = build_environment(env);
    std::vector<char*> envp;
    envp.reserve(env_strings.size() + 1);
    for (const auto& e : env_strings) envp.push_back(const_cast<char*>(e.c_str()));
    envp.push_back(nullptr);

    pid_t pid = 0;
    const int rc = ::posix_spawnp(&pid, args[0], &actions, nullptr, args.data(), envp.data());
    posix_spawn_file_actions_destroy(&actions);
    if (rc != 0) {
        throw SpawnError("cannot start '" + argv[0] + "': " + std::strerror(rc), rc);
    }
    out_pipe.close_write();
    err_pipe.close_write();

    ProcessResult result;
    drain(out_pipe, err_pipe, result);

    int status = 0;
    while (::waitpid(pid, &status, 0) < 0) {
        if (errno != EINTR) throw SpawnError(std::string("waitpid: ") + std::strerror(errno), errno);
    }
    if (WIFEXITED(status)) {
        result.exit_code = WEXITSTATUS(status);
    } else if (WIFSIGNALED(status)) {
        result.exit_code = 128 + WTERMSIG(status);
    } else {
        result.exit_code = -1;
    }
    // posix_spawnp may report an exec failure through the child's exit code.
    if (result.exit_code == 127 && result.out.empty() && result.err.empty()) {
        throw SpawnError("cannot start '" + argv[0] + "'", ENOENT);
    }
    return result;
}

GitRunner::GitRunner() : binary_(default_binary()) {}

GitRunner::GitRunner(std::string git_binary) : binary_(std::move(git_binary)) {}

std::string GitRunner::default_binary() {
    if (const char* env = std::getenv("CCL_GIT_BIN"); env != nullptr && *env != '\0') return env;
    return "git";
}

ProcessResult GitRunner::run(const std::filesystem::path& repo,
                             const std::vector<std::string>& args) const {
    std::vector<std::string> argv{binary_, "-C", repo.string(), "-c", "color.ui=never",
                                  "-c", "core.quotepath=off"};
    argv.insert(argv.end(), args.begin(), args.end());
    static const EnvOverrides kEnv = {
        {"GIT_PAGER", "cat"}, {"PAGER", "cat"}, {"LC_ALL", "C"}, {"LANG", "C"},
        {"GIT_TERMINAL_PROMPT", "0"},
    };
    try {
        return run_process(argv, kEnv);
    } catch (const SpawnError& e) {
        throw GitNotFoundError("git executable unavailable (" + binary_ + "): " + e.what());
    }
}

std::string GitRunner::run_checked(const std::filesystem::path& repo,
                                   const std::vector<std::string>& args) const {
    auto result = run(repo, args);
    if (result.exit_code != 0) {
        std::string command = "git";
        for (const auto& a : args) command += " " + a;
        auto first_line = result.err.substr(0, result.err.find('\n'));
        throw GitCommandError(command + " failed (exit " + std::to_string(result.exit_code) +
                                  "): " + first_line,
                              result.exit_code, std::move(result.err));
    }
    return std::move(result.out);
}

}  // namespace ccl
