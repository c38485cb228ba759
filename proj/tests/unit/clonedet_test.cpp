#include <random>

#include <doctest.h>

#include "ccl/clonedet.hpp"
#include "ccl/report.hpp"
#include "oracles.hpp"

using namespace ccl;

namespace {

NormalizedToken sym(std::string s) { return {std::move(s)}; }

std::vector<NormalizedToken> syms(const std::string& letters) {
    std::vector<NormalizedToken> out;
    for (char c : letters) out.push_back(sym(std::string(1, c)));
    return out;
}

// 60 tokens, no repeated statement shapes.
std::string method(const std::string& name, const std::string& v) {
    return "  void " + name + "(int " + v + "a, String " + v + "b) {\n"
           "    " + v + "c = " + v + "a + 1;\n"
           "    " + v + "d = " + v + "b.length() * " + v + "c;\n"
           "    if (" + v + "d > 10) { log(" + v + "d); }\n"
           "    while (" + v + "c != 0) " + v + "e[" + v + "c] ^= 3;\n"
           "    " + v + "f = -" + v + "c;\n"
           "    return;\n"
           "  }\n";
}

DetectorParams params_with(std::size_t min_token) {
    DetectorParams p;
    p.min_token = min_token;
    return p;
}

}  // namespace

TEST_CASE("compute_rnr worked examples") {
    CHECK(compute_rnr(syms("xxxx")) == doctest::Approx(0.25));
    CHECK(compute_rnr(syms("ababab")) == doctest::Approx(1.0 / 3.0));
    CHECK(compute_rnr(syms("abcde")) == 1.0);
    CHECK_THROWS_AS(compute_rnr({}), std::invalid_argument);
}

TEST_CASE("compute_tks worked examples") {
    CHECK(compute_tks(tokenize("x = x + x ;")) == 4);
    CHECK(compute_tks(tokenize("int a = 1 ;")) == 5);
    std::string fifty;
    for (int i = 0; i < 50; ++i) fifty += "a ";
    CHECK(compute_tks(tokenize(fifty)) == 1);
    CHECK_THROWS_AS(compute_tks({}), std::invalid_argument);
}

TEST_CASE("property: rnr matches the brute-force marker") {
    std::mt19937_64 rng(5);
    for (int round = 0; round < 2000; ++round) {
        const std::size_t n = 1 + rng() % 50;
        const std::size_t alphabet = 1 + rng() % 4;
        std::vector<std::string> s;
        std::vector<NormalizedToken> t;
        for (std::size_t k = 0; k < n; ++k) {
            s.push_back(std::string(1, static_cast<char>('a' + rng() % alphabet)));
            t.push_back({s.back()});
        }
        const double got = compute_rnr(t);
        CHECK(got == testing::brute_force_rnr(s));
        CHECK(got >= 0.0);
        CHECK(got <= 1.0);
    }
}

TEST_CASE("type-2 clone across two files") {
    Corpus corpus{make_source_file("A.java", "class A {\n" + method("run", "p") + "}\n"),
                  make_source_file("B.java", "class B {\n  int z;\n" + method("go", "q") + "  int y;\n}\n")};
    REQUIRE(corpus[0].tokens.size() == 64);
    const auto pairs = detect_clone_pairs(corpus, params_with(50));
    REQUIRE(pairs.size() == 1);
    const auto& p = pairs[0];
    CHECK(p.clone_type == CloneType::Type2);
    CHECK(p.a.file == "A.java");
    CHECK(p.b.file == "B.java");
    CHECK(p.token_length() == 60);
    CHECK(p.a.start_line == 2);
    CHECK(p.a.end_line == 9);
    CHECK(p.b.start_line == 3);
    CHECK(p.b.end_line == 10);
    CHECK(p.tks >= 12);
    CHECK(p == testing::brute_force_clone_pairs(corpus, params_with(50)).at(0));
}

TEST_CASE("type-1 clone inside one file") {
    const auto text = "class A {\n" + method("run", "p") + "  int k;\n" + method("run", "p") + "}\n";
    Corpus corpus{make_source_file("A.java", text)};
    const auto pairs = detect_clone_pairs(corpus, params_with(50));
    REQUIRE(pairs.size() == 1);
    CHECK(pairs[0].clone_type == CloneType::Type1);
    CHECK(pairs[0].a.file == pairs[0].b.file);
    CHECK(pairs[0].a.end_line < pairs[0].b.start_line);
}

TEST_CASE("length threshold") {
    Corpus corpus{make_source_file("A.java", "class A {\n" + method("run", "p") + "}\n"),
                  make_source_file("B.java", "class B {\n  int z;\n" + method("go", "q") + "  int y;\n}\n")};
    CHECK(detect_clone_pairs(corpus, params_with(60)).size() == 1);
    CHECK(detect_clone_pairs(corpus, params_with(61)).empty());
    CHECK(detect_clone_pairs({}, params_with(50)).empty());
}

TEST_CASE("parameter validation") {
    DetectorParams p;
    p.min_token = 0;
    CHECK_THROWS_AS(p.validate(), std::invalid_argument);
    p = {};
    p.min_rnr = 1.5;
    CHECK_THROWS_AS(p.validate(), std::invalid_argument);
    p = {};
    p.min_tks = 0;
    CHECK_THROWS_AS(p.validate(), std::invalid_argument);
}

TEST_CASE("clone sets keep only pairs of size two") {
    auto frag = [](const char* file, std::size_t start) {
        return CloneFragment{file, 1, 2, start, start + 9};
    };
    const ClonePair ab{frag("A", 0), frag("B", 0)};
    const ClonePair bc{frag("B", 0), frag("C", 0)};
    const ClonePair ac{frag("A", 0), frag("C", 0)};
    const ClonePair cd{frag("C", 20), frag("D", 0)};

    auto r = build_clone_sets({ab});
    CHECK(r.kept.size() == 1);
    CHECK(r.dropped_sets == 0);

    r = build_clone_sets({ab, bc, ac});
    CHECK(r.kept.empty());
    CHECK(r.dropped_sets == 1);

    r = build_clone_sets({ab, cd});
    CHECK(r.kept.size() == 2);
    CHECK(r.kept_sets == 2);
    CHECK(r.dropped_sets == 0);
}

TEST_CASE("median clone length") {
    CHECK(median_clone_length_loc({}) == 0.0);
    const ClonePair p{{"A", 1, 10, 0, 0}, {"B", 1, 13, 0, 0}};
    CHECK(median_clone_length_loc({p}) == 11.5);
}

TEST_CASE("property: detector equals the brute-force oracle on random corpora") {
    std::mt19937_64 rng(99);
    std::size_t total_pairs = 0;
    for (int round = 0; round < 60; ++round) {
        const auto corpus = testing::random_corpus(rng, {5, 200, 8});
        DetectorParams p;
        p.min_token = 10;
        p.min_rnr = std::array{0.0, 0.3, 0.5, 0.8}[rng() % 4];
        p.min_tks = 1 + rng() % 6;
        const auto got = detect_clone_pairs(corpus, p);
        CHECK(got == testing::brute_force_clone_pairs(corpus, p));
        total_pairs += got.size();
        for (const auto& pair : got) {
            CHECK(pair.token_length() >= p.min_token);
            CHECK(pair.rnr >= p.min_rnr);
            CHECK(pair.tks >= p.min_tks);
            if (pair.a.file == pair.b.file) CHECK(pair.a.end_line < pair.b.start_line);
        }
    }
    CHECK(total_pairs > 0);
}

TEST_CASE("detection output is byte-identical across runs") {
    std::mt19937_64 rng(3);
    const auto corpus = testing::random_corpus(rng);
    DetectorParams p;
    p.min_token = 10;
    p.min_rnr = 0.0;
    p.min_tks = 1;
    ClonesFile a{p, detect_clone_pairs(corpus, p), {}};
    ClonesFile b{p, detect_clone_pairs(corpus, p), {}};
    CHECK(to_json(a).dump() == to_json(b).dump());
}
