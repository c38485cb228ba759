#include <cmath>

#include "ccl/patchsim.hpp"

namespace ccl {

namespace {

bool is_word_byte(unsigned char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') ||
           c == '_' || c >= 0x80;
}

}  // namespace

std::size_t PatchDocument::size() const {
    std::size_t n = 0;
    for (const auto& [term, count] : term_counts) n += count;
    return n;
}

std::string extract_patch_body(const CommitRecord& record) {
    std::string body;
    bool first = true;
    for (const auto& hunk : record.patch) {
        for (const auto& line : hunk.lines) {
            if (!first) body.push_back('\n');
            body += line.text;
            first = false;
        }
    }
    return body;
}

PatchDocument tokenize_patch(std::string_view text) {
    PatchDocument doc;
    std::size_t i = 0;
    while (i < text.size()) {
        if (!is_word_byte(static_cast<unsigned char>(text[i]))) {
            ++i;
            continue;
        }
        std::string term;
        std::size_t code_points = 0;
        while (i < text.size() && is_word_byte(static_cast<unsigned char>(text[i]))) {
            const auto c = static_cast<unsigned char>(text[i]);
            if ((c & 0xC0) != 0x80) ++code_points;
            term.push_back((c >= 'A' && c <= 'Z') ? static_cast<char>(c - 'A' + 'a') : static_cast<char>(c));
            ++i;
        }
        if (code_points >= 2) ++doc.term_counts[term];
    }
    return doc;
}

SimilarityScore patch_similarity(const PatchDocument& a, const PatchDocument& b) {
    if (a.empty() && b.empty()) return {0.0, true};
    if (a.empty() || b.empty()) return {0.0, false};
    // Equal vectors would otherwise land an ulp or two below 1.
    if (a.term_counts == b.term_counts) return {1.0, false};

    const double shared_idf = std::log(3.0 / 3.0) + 1.0;
    const double unique_idf = std::log(3.0 / 2.0) + 1.0;

    auto norm_of = [&](const PatchDocument& doc, const PatchDocument& other) {
        double sum = 0.0;
        for (const auto& [term, count] : doc.term_counts) {
            const double idf = other.term_counts.contains(term) ? shared_idf : unique_idf;
            const double w = static_cast<double>(count) * idf;
            sum += w * w;
        }
        return std::sqrt(sum);
    };
    const double norm_a = norm_of(a, b);
    const double norm_b = norm_of(b, a);

    // Only shared terms contribute; walking a's sorted map then looking up b
    // visits them in the same order as the reverse walk would.
    double dot = 0.0;
    for (const auto& [term, count_a] : a.term_counts) {
        const auto it = b.term_counts.find(term);
        if (it == b.term_counts.end()) continue;
        const double wa = static_cast<double>(count_a) * shared_idf / norm_a;
        const double wb = static_cast<double>(it->second) * shared_idf / norm_b;
        dot += wa * wb;
    }
    if (dot > 1.0) dot = 1.0;
    if (dot < 0.0) dot = 0.0;
    return {dot, false};
}

SimilarityScore commit_patch_similarity(const CommitRecord& a, const CommitRecord& b) {
    return patch_similarity(tokenize_patch(extract_patch_body(a)),
                            tokenize_patch(extract_patch_body(b)));
}

}  // namespace ccl
