#include <fstream>
#include <sstream>

#include <doctest.h>
#include <json.hpp>

#include "ccl/git.hpp"
#include "cochange_fixture.hpp"
#include "scratch_repo.hpp"

using namespace ccl;
using ccl::testing::ScratchRepo;
using ccl::testing::TempDir;

namespace {

ProcessResult ccl_run(std::vector<std::string> args, const EnvOverrides& env = {}) {
    args.insert(args.begin(), CCL_BINARY);
    return run_process(args, env);
}

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

struct Workspace {
    TempDir dir;
    ScratchRepo repo{dir.path() / "repo"};
    testing::CoChangeFixture fixture = testing::build_cochange_fixture(repo);

    std::string path(const std::string& name) const { return (dir.path() / name).string(); }
    std::string repo_path() const { return repo.path().string(); }
};

}  // namespace

TEST_CASE("detect, analyze, report") {
    Workspace w;
    auto r = ccl_run({"detect", "--repo", w.repo_path(), "-o", w.path("clones.json")});
    REQUIRE(r.exit_code == 0);
    const auto clones = nlohmann::json::parse(slurp(w.path("clones.json")));
    REQUIRE(clones["clones"].size() == 1);
    CHECK(clones["params"]["min_token"] == 50);

    r = ccl_run({"analyze", "--repo", w.repo_path(), "--clones", w.path("clones.json"), "--jobs", "2",
                 "-o", w.path("report.json")});
    REQUIRE(r.exit_code == 0);
    const auto report = nlohmann::json::parse(slurp(w.path("report.json")));
    CHECK(report["aggregates"]["total_commits"] == 10);
    CHECK(report["aggregates"]["cochanged_commits"] == 8);
    CHECK(report["tool"]["name"] == "ccl");

    r = ccl_run({"report", "--input", w.path("report.json"), "--format", "csv", "-o", w.path("out")});
    REQUIRE(r.exit_code == 0);
    for (const char* name : {"commit_length_histogram.csv", "cochanged_similarity_histogram.csv",
                             "not_cochanged_similarity_histogram.csv", "pattern_ratios.csv"}) {
        const auto text = slurp(std::filesystem::path(w.path("out")) / name);
        CHECK(std::count(text.begin(), text.end(), '\n') >= 2);
    }

    r = ccl_run({"report", "--input", w.path("report.json"), "--format", "json", "-o", w.path("json")});
    REQUIRE(r.exit_code == 0);
    CHECK(slurp(std::filesystem::path(w.path("json")) / "report.json") == slurp(w.path("report.json")));

    auto corrupt = report;
    corrupt["aggregates"]["concerning_commits"] = 3;
    std::ofstream(w.path("corrupt.json")) << corrupt.dump();
    r = ccl_run({"report", "--input", w.path("corrupt.json"), "-o", w.path("bad")});
    CHECK(r.exit_code == 1);
    CHECK(r.err.find("aggregates.concerning_commits") != std::string::npos);

    std::ofstream(w.path("garbage.json")) << "{not json";
    CHECK(ccl_run({"report", "--input", w.path("garbage.json"), "-o", w.path("bad")}).exit_code == 1);
}

TEST_CASE("analyze output is byte-identical across runs") {
    Workspace w;
    REQUIRE(ccl_run({"detect", "--repo", w.repo_path(), "-o", w.path("clones.json")}).exit_code == 0);
    for (const char* out : {"r1.json", "r2.json"}) {
        REQUIRE(ccl_run({"analyze", "--repo", w.repo_path(), "--clones", w.path("clones.json"),
                         "--with-baseline", "--samples", "10", "--seed", "5", "-o", w.path(out)})
                    .exit_code == 0);
    }
    CHECK(slurp(w.path("r1.json")) == slurp(w.path("r2.json")));
}

TEST_CASE("baseline subcommand") {
    Workspace w;
    REQUIRE(ccl_run({"detect", "--repo", w.repo_path(), "-o", w.path("clones.json")}).exit_code == 0);
    auto r = ccl_run({"baseline", "--repo", w.repo_path(), "--clones", w.path("clones.json"), "--samples",
                      "12", "--seed", "4", "-o", w.path("baseline.json")});
    REQUIRE(r.exit_code == 0);
    const auto b = nlohmann::json::parse(slurp(w.path("baseline.json")));
    CHECK(b["baseline"]["samples"].size() == 12);
    CHECK(b["baseline"]["seed"] == 4);

    CHECK(ccl_run({"baseline", "--repo", w.repo_path(), "--clones", w.path("clones.json"), "--samples", "0",
                   "-o", w.path("b0.json")})
              .exit_code == 1);
}

TEST_CASE("configuration file with flag overrides") {
    Workspace w;
    std::ofstream(w.path("ccl.ini")) << "[detect]\nmin-tokens = 61\n";
    REQUIRE(ccl_run({"--config", w.path("ccl.ini"), "detect", "--repo", w.repo_path(), "-o",
                     w.path("c1.json")})
                .exit_code == 0);
    CHECK(nlohmann::json::parse(slurp(w.path("c1.json")))["clones"].empty());

    REQUIRE(ccl_run({"--config", w.path("ccl.ini"), "detect", "--repo", w.repo_path(), "--min-tokens", "60",
                     "-o", w.path("c2.json")})
                .exit_code == 0);
    CHECK(nlohmann::json::parse(slurp(w.path("c2.json")))["clones"].size() == 1);
}

TEST_CASE("exit codes") {
    Workspace w;
    CHECK(ccl_run({}).exit_code == 1);
    CHECK(ccl_run({"detect"}).exit_code == 1);
    CHECK(ccl_run({"detect", "--repo", w.path("absent"), "-o", w.path("x.json")}).exit_code == 1);
    CHECK(ccl_run({"detect", "--repo", w.dir.path().string(), "-o", w.path("x.json")}).exit_code == 1);
    CHECK(ccl_run({"detect", "--repo", w.repo_path(), "--rnr", "2", "-o", w.path("x.json")}).exit_code == 1);
    CHECK(ccl_run({"--help"}).exit_code == 0);

    const auto no_git = ccl_run({"detect", "--repo", w.repo_path(), "-o", w.path("x.json")},
                                {{"CCL_GIT_BIN", "/nonexistent/git"}});
    CHECK(no_git.exit_code == 1);

    // Empty corpus is fine.
    ScratchRepo empty(w.dir.path() / "empty");
    empty.commit("nothing");
    CHECK(ccl_run({"detect", "--repo", empty.path().string(), "-o", w.path("e.json")}).exit_code == 0);

    // Clone pairs whose files are gone: every fragment fails.
    std::ofstream(w.path("stale.json"))
        << R"({"params":{"min_token":50,"min_rnr":0.8,"min_tks":12,"exclude_pattern":"test"},)"
        << R"("clones":[{"file_a":"X.java","start_a":1,"end_a":5,"file_b":"Y.java","start_b":1,"end_b":5,)"
        << R"("clone_type":"type2","rnr":1.0,"tks":12,"token_len":60}],)"
        << R"("summary":{"n_files":0,"total_loc":0,"n_clone_sets_kept":1,"n_clone_sets_dropped":0,)"
        << R"("median_clone_length_loc":5.0}})";
    CHECK(ccl_run({"analyze", "--repo", w.repo_path(), "--clones", w.path("stale.json"), "-o",
                   w.path("s.json")})
              .exit_code == 2);
    CHECK(ccl_run({"analyze", "--repo", w.repo_path(), "--clones", w.path("missing.json"), "-o",
                   w.path("s.json")})
              .exit_code == 1);
}
