#pragma once

#include <array>
#include <string>

#include "scratch_repo.hpp"

namespace ccl::testing {

/// Two files sharing one cloned method, with six scripted commits:
///
///   c1  both files introduce the method
///   c2  the same one-line edit in both
///   c3  B only: every identifier renamed
///   c4  both: divergent one-line edits (no shared terms between the patches)
///   c5  B only: reset to A's text
///   c6  the same one-line edit in both
///
/// Expected: A's history {c6,c4,c2,c1}, B's {c6..c1}; c4 scores 0, the
/// other co-changes score 1.
struct CoChangeFixture {
    std::string file_a = "src/Alpha.java";
    std::string file_b = "src/Beta.java";
    /// Lines of the method in each file at HEAD.
    std::uint32_t start_a = 3, end_a = 10;
    std::uint32_t start_b = 2, end_b = 9;
    std::array<std::string, 6> commits;
};

CoChangeFixture build_cochange_fixture(ScratchRepo& repo);

/// The method text at HEAD, as it appears in both files.
std::string cochange_fixture_method();

}  // namespace ccl::testing
