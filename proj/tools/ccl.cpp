// ccl: clone co-change analysis over a git repository.
//
//   ccl detect   --repo PATH -o clones.json
//   ccl analyze  --repo PATH --clones clones.json -o report.json
//   ccl baseline --repo PATH --clones clones.json -o baseline.json
//   ccl report   --input report.json --format csv|json -o DIR
//
// Exit codes: 0 ok, 1 usage or environment, 2 data errors.

#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "ccl/pipeline.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitData = 2;

struct Options {
    std::string repo;
    std::string output;
    std::string clones;
    std::string input;
    std::string format = "csv";
    ccl::DetectorParams detector;
    ccl::RunOptions run;
    ccl::BaselineOptions baseline;
    bool with_baseline = false;
};

ccl::ClonesFile read_clones(const std::string& path) {
    const auto j = ccl::read_json_file(path);
    try {
        return ccl::clones_from_json(j);
    } catch (const ccl::DataError&) {
        throw;
    } catch (const std::exception& e) {
        throw ccl::DataError(path + ": " + e.what());
    }
}

void warn_exclusions(const ccl::RepoReport& report) {
    for (const auto& x : report.exclusions) {
        std::cerr << "ccl: excluded pair " << x.pair_index << " side " << x.side << " ("
                  << x.fragment.file << ":" << x.fragment.start_line << "-" << x.fragment.end_line
                  << "): " << x.reason << "\n";
    }
}

int cmd_detect(const Options& o, const ccl::GitRunner& git) {
    const auto clones = ccl::run_detect(git, o.repo, o.detector);
    ccl::write_text_file(o.output, ccl::dump_json(ccl::to_json(clones)));
    std::cerr << "ccl: " << clones.pairs.size() << " clone pairs in "
              << clones.summary.n_files << " files\n";
    return kExitOk;
}

int cmd_analyze(const Options& o, const ccl::GitRunner& git) {
    const auto clones = read_clones(o.clones);
    auto run = o.run;
    run.repo_label = o.repo;
    std::optional<ccl::BaselineOptions> baseline;
    if (o.with_baseline) baseline = o.baseline;
    const auto report = ccl::run_analyze(git, o.repo, clones, run, baseline);
    warn_exclusions(report);
    ccl::write_text_file(o.output, ccl::dump_json(ccl::to_json(report)));
    return kExitOk;
}

int cmd_baseline(const Options& o, const ccl::GitRunner& git) {
    const auto clones = read_clones(o.clones);
    auto run = o.run;
    run.repo_label = o.repo;
    const auto baseline = ccl::run_baseline(git, o.repo, clones, o.baseline, run);
    ccl::Json doc{{"tool", {{"name", ccl::kToolName}, {"version", ccl::kToolVersion}}},
                  {"config",
                   {{"repo", o.repo},
                    {"include_merges", run.history.include_merges},
                    {"dedup_by_hash", run.history.dedup_by_hash},
                    {"detector", ccl::to_json(clones)["params"]}}},
                  {"baseline", ccl::to_json(baseline)}};
    ccl::write_text_file(o.output, ccl::dump_json(doc));
    if (!baseline.welch_error.empty()) std::cerr << "ccl: welch test: " << baseline.welch_error << "\n";
    return kExitOk;
}

int cmd_report(const Options& o) {
    // Any problem with the input report is a usage error here, including a
    // failed self-consistency check.
    try {
        const auto j = ccl::read_json_file(o.input);
        const auto report = ccl::load_report(j);
        if (o.format == "json") {
            ccl::write_text_file(std::filesystem::path(o.output) / "report.json", ccl::dump_json(j));
        } else {
            std::filesystem::create_directories(o.output);
            for (const auto& name : ccl::write_report_csvs(report, o.output)) {
                std::cerr << "ccl: wrote " << (std::filesystem::path(o.output) / name).string() << "\n";
            }
        }
    } catch (const ccl::ConsistencyError& e) {
        std::cerr << "ccl: " << o.input << ": self-consistency check failed at field '" << e.field()
                  << "'\n";
        return kExitUsage;
    } catch (const ccl::DataError& e) {
        std::cerr << "ccl: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Clone co-change analysis over a git repository", "ccl"};
    app.set_version_flag("--version", std::string(ccl::kToolVersion));
    app.set_config("--config", "", "INI file with option defaults; flags override it");
    app.require_subcommand(1);

    Options o;
    o.run.jobs = ccl::default_jobs();

    auto add_repo = [&](CLI::App* sub) {
        sub->add_option("--repo", o.repo, "Git work tree to analyze")->required();
    };
    auto add_history = [&](CLI::App* sub) {
        sub->add_flag("--include-merges,!--no-merges", o.run.history.include_merges,
                      "Keep merge commits in snippet histories");
        sub->add_option("--jobs", o.run.jobs, "Parallel git processes")
            ->check(CLI::Range(std::size_t{1}, std::size_t{1024}));
    };
    auto add_sampling = [&](CLI::App* sub) {
        sub->add_option("--samples", o.baseline.samples, "Random snippets to sample")
            ->check(CLI::PositiveNumber);
        sub->add_option("--seed", o.baseline.seed, "Sampling seed");
    };

    auto* detect = app.add_subcommand("detect", "Detect type-1/type-2 clone pairs at HEAD");
    add_repo(detect);
    detect->add_option("--min-tokens", o.detector.min_token, "Minimum clone length in tokens")
        ->check(CLI::PositiveNumber);
    detect->add_option("--rnr", o.detector.min_rnr, "Minimum non-repeated token ratio")
        ->check(CLI::Range(0.0, 1.0));
    detect->add_option("--tks", o.detector.min_tks, "Minimum distinct token texts");
    detect->add_option("--exclude", o.detector.exclude_pattern,
                       "Skip files whose path contains this text (case-insensitive)");
    detect->add_option("-o,--output", o.output, "clones.json to write")->required();

    auto* analyze = app.add_subcommand("analyze", "Mine snippet histories and classify clone pairs");
    add_repo(analyze);
    analyze->add_option("--clones", o.clones, "clones.json from detect")->required();
    analyze->add_option("--threshold", o.run.analysis.threshold, "Patch similarity threshold")
        ->check(CLI::Range(0.0, 1.0));
    add_history(analyze);
    analyze->add_flag("--with-baseline", o.with_baseline, "Also compute the random-snippet baseline");
    add_sampling(analyze);
    analyze->add_option("-o,--output", o.output, "report.json to write")->required();

    auto* baseline = app.add_subcommand("baseline", "Compare clone and random snippet history lengths");
    add_repo(baseline);
    baseline->add_option("--clones", o.clones, "clones.json from detect")->required();
    add_history(baseline);
    add_sampling(baseline);
    baseline->add_option("-o,--output", o.output, "baseline.json to write")->required();

    auto* report = app.add_subcommand("report", "Export the series behind the plots");
    report->add_option("--input", o.input, "report.json from analyze")->required();
    report->add_option("--format", o.format, "Output format")
        ->check(CLI::IsMember({"csv", "json"}));
    report->add_option("-o,--output", o.output, "Output directory")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (report->parsed()) return cmd_report(o);
        const ccl::GitRunner git;
        if (detect->parsed()) return cmd_detect(o, git);
        if (analyze->parsed()) return cmd_analyze(o, git);
        return cmd_baseline(o, git);
    } catch (const ccl::GitNotFoundError& e) {
        std::cerr << "ccl: " << e.what() << "\n";
        return kExitUsage;
    } catch (const ccl::EnvironmentError& e) {
        std::cerr << "ccl: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "ccl: " << e.what() << "\n";
        return kExitUsage;
    } catch (const ccl::DataError& e) {
        std::cerr << "ccl: " << e.what() << "\n";
        return kExitData;
    } catch (const std::exception& e) {
        std::cerr << "ccl: " << e.what() << "\n";
        return kExitData;
    }
}
