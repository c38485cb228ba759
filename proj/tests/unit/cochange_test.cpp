#include <doctest.h>

#include "ccl/cochange.hpp"

using namespace ccl;

namespace {

CommitRecord commit(const std::string& id, const std::string& body) {
    CommitRecord c;
    c.hash = std::string(40 - id.size(), '0') + id;
    Hunk h;
    h.lines.push_back({LineMarker::Added, body});
    c.patch.push_back(std::move(h));
    return c;
}

SnippetHistory history(std::vector<CommitRecord> commits) {
    SnippetHistory h;
    h.commits = std::move(commits);
    return h;
}

}  // namespace

TEST_CASE("matches follow the first history's order") {
    const auto ha = history({commit("6", "same words here"), commit("4", "alpha beta"),
                             commit("2", "shared change"), commit("1", "intro code")});
    const auto hb = history({commit("6", "same words here"), commit("5", "other"),
                             commit("4", "gamma delta"), commit("3", "rename"),
                             commit("2", "shared change"), commit("1", "intro code")});
    const auto m = match_cochanges(ha, hb, {});
    REQUIRE(m.size() == 4);
    CHECK(m[0].hash == ha.commits[0].hash);
    CHECK(m[1].hash == ha.commits[1].hash);
    CHECK(m[1].similarity.value == 0.0);
    CHECK(m[1].concerning);
    CHECK_FALSE(m[0].concerning);
    CHECK(m[1].record_a == &ha.commits[1]);
    CHECK(m[1].record_b == &hb.commits[2]);

    const auto counts = cochange_counts(m, ha, hb);
    CHECK(counts.total_commits == 10);
    CHECK(counts.cochanged_commits == 8);
    CHECK(counts.concerning_commits == 2);
    CHECK(counts.cochange_ratio() == 0.8);
    CHECK(counts.concerning_over_cochanged() == 0.25);
    CHECK(counts.concerning_over_total() == 0.2);

    const auto cls = classify_pair(ha, hb, {});
    CHECK(cls.pattern == Pattern::None);
    REQUIRE(cls.last_similarity);
    CHECK(cls.last_similarity->value == doctest::Approx(1.0));
}

TEST_CASE("threshold boundaries") {
    const auto ha = history({commit("1", "alpha beta")});
    const auto hb = history({commit("1", "alpha gamma")});
    AnalysisConfig strict;
    strict.threshold = 1.0;
    CHECK(match_cochanges(ha, hb, strict)[0].concerning);
    AnalysisConfig loose;
    loose.threshold = 0.0;
    CHECK_FALSE(match_cochanges(ha, hb, loose)[0].concerning);
    AnalysisConfig bad;
    bad.threshold = 1.5;
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
}

TEST_CASE("pair classification") {
    const auto a = history({commit("9", "alpha beta"), commit("1", "intro")});
    const auto b = history({commit("8", "alpha beta"), commit("1", "intro")});
    CHECK(classify_pair(a, b, {}).pattern == Pattern::Pattern1);
    CHECK_FALSE(classify_pair(a, b, {}).last_similarity);

    const auto c = history({commit("7", "gamma delta")});
    const auto d = history({commit("7", "epsilon zeta")});
    const auto cd = classify_pair(c, d, {});
    CHECK(cd.pattern == Pattern::Pattern2);
    CHECK(cd.last_similarity->value == 0.0);

    CHECK_THROWS_AS(classify_pair(history({}), c, {}), std::invalid_argument);

    CHECK(classify_last_commits("x", "y", std::nullopt, 0.4) == Pattern::Pattern1);
    CHECK(classify_last_commits("x", "x", 0.39, 0.4) == Pattern::Pattern2);
    CHECK(classify_last_commits("x", "x", 0.4, 0.4) == Pattern::None);
}

TEST_CASE("pattern ratios") {
    const std::vector<Pattern> none;
    CHECK(pattern_ratios(none).total_pairs == 0);
    CHECK(pattern_ratios(none).concerning_pair_ratio == 0.0);

    const std::vector<Pattern> p{Pattern::Pattern1, Pattern::Pattern1, Pattern::Pattern2, Pattern::None};
    const auto r = pattern_ratios(p);
    CHECK(r.total_pairs == 4);
    CHECK(r.p1_count == 2);
    CHECK(r.p2_count == 1);
    CHECK(r.concerning_pair_ratio == 0.75);
    CHECK(r.p2_over_concerning == doctest::Approx(1.0 / 3.0));
    CHECK(pattern_from_string(to_string(Pattern::Pattern2)) == Pattern::Pattern2);
}

TEST_CASE("counts accumulate") {
    CoChangeCounts a{10, 4, 1};
    a += CoChangeCounts{6, 2, 1};
    CHECK(a.total_commits == 16);
    CHECK(a.cochanged_commits == 6);
    CHECK(a.concerning_commits == 2);
    CHECK(CoChangeCounts{}.cochange_ratio() == 0.0);
}
