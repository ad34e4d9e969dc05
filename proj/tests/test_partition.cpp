#include <doctest.h>

#include <algorithm>
#include <numeric>

#include "gad/partition.hpp"

using namespace gad;

namespace {

// Independent oracle: count standard tableaux by brute-force
// enumeration of label orders that are row- and column-increasing.
unsigned long long count_standard_tableaux_bruteforce(const Partition& lam) {
    auto cells = lam.cells();
    std::size_t n = cells.size();
    if (n == 0) return 1;
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    unsigned long long count = 0;
    do {
        // order[k] = which cell receives label k+1
        std::vector<std::vector<unsigned long>> grid(lam.length());
        for (std::size_t i = 0; i < lam.length(); ++i) grid[i].assign(lam.part(i + 1), 0);
        for (std::size_t k = 0; k < n; ++k)
            grid[cells[order[k]].row - 1][cells[order[k]].col - 1] = k + 1;
        bool ok = true;
        for (std::size_t i = 0; i < grid.size() && ok; ++i)
            for (std::size_t j = 0; j < grid[i].size() && ok; ++j) {
                if (j + 1 < grid[i].size() && grid[i][j] > grid[i][j + 1]) ok = false;
                if (i + 1 < grid.size() && j < grid[i + 1].size() && grid[i][j] > grid[i + 1][j])
                    ok = false;
            }
        if (ok) ++count;
    } while (std::next_permutation(order.begin(), order.end()));
    return count;
}

}  // namespace

TEST_CASE("length and weight") {
    CHECK(Partition({2, 1}).length() == 2);
    CHECK(Partition{}.length() == 0);
    CHECK(Partition({3, 3, 1}).length() == 3);
    CHECK(Partition({2, 1}).weight() == 3);
    CHECK(Partition{}.weight() == 0);
    CHECK(Partition({4, 4}).weight() == 8);
}

TEST_CASE("normalization and validation") {
    CHECK(Partition({2, 1, 0, 0}) == Partition({2, 1}));
    CHECK(Partition({0}) == Partition{});
    CHECK_THROWS(Partition({1, 2}));
    CHECK(Partition::parse("2,1") == Partition({2, 1}));
    CHECK(Partition::parse("") == Partition{});
    CHECK_THROWS(Partition::parse("02,1"));
    CHECK(Partition({2, 1}).to_string() == "2,1");
}

TEST_CASE("conjugate") {
    CHECK(Partition({3}).conjugate() == Partition({1, 1, 1}));
    CHECK(Partition({2, 1}).conjugate() == Partition({2, 1}));
    CHECK(Partition{}.conjugate() == Partition{});
    for (unsigned long n = 0; n <= 7; ++n)
        for (const auto& lam : partitions_of(n)) {
            CHECK(lam.conjugate().conjugate() == lam);
            CHECK(lam.conjugate().weight() == lam.weight());
        }
}

TEST_CASE("hook lengths") {
    CHECK(Partition({2, 1}).hook_length({1, 1}) == 3);
    CHECK(Partition({5}).hook_length({1, 1}) == 5);
    CHECK(Partition({2, 2}).hook_length({1, 2}) == 2);
    CHECK_THROWS(Partition({2, 1}).hook_length({2, 2}));
    // Hook lengths strictly decrease along rows; cell count is the weight.
    for (const auto& lam : partitions_of(6)) {
        CHECK(lam.cells().size() == lam.weight());
        for (std::size_t i = 1; i <= lam.length(); ++i)
            for (std::size_t j = 1; j + 1 <= lam.part(i); ++j)
                CHECK(lam.hook_length({i, j}) > lam.hook_length({i, j + 1}));
    }
}

TEST_CASE("standard tableau counts match brute force") {
    CHECK(Partition({4}).num_standard_tableaux() == 1);
    CHECK(Partition({2, 1}).num_standard_tableaux() == 2);
    CHECK(Partition({2, 2}).num_standard_tableaux() == 2);
    for (unsigned long n = 0; n <= 8; ++n)
        for (const auto& lam : partitions_of(n))
            CHECK(lam.num_standard_tableaux() == count_standard_tableaux_bruteforce(lam));
}

TEST_CASE("reduced") {
    CHECK(reduced(Partition({2, 2}), 2) == Partition{});
    CHECK(reduced(Partition({3, 1}), 2) == Partition({2}));
    CHECK(reduced(Partition({4, 3, 2}), 3) == Partition({2, 1}));
    CHECK_THROWS(reduced(Partition({1, 1, 1}), 2));
}

TEST_CASE("in_pos") {
    CHECK(in_pos(Partition({2, 2}), 2));
    CHECK_FALSE(in_pos(Partition({1}), 2));
    CHECK(in_pos(Partition({3, 2, 2}), 3));
}

TEST_CASE("plus_shift") {
    CHECK(plus_shift(Partition({1}), 2) == Partition({2, 1}));
    CHECK(plus_shift(Partition({2, 1}), 3) == Partition({4, 3, 2}));
    CHECK(plus_shift(Partition({1, 1}), 2) == Partition({3, 3}));
    CHECK_THROWS(plus_shift(Partition{}, 2));
}

TEST_CASE("plus_shift lands in Pos") {
    for (unsigned long n = 1; n <= 6; ++n)
        for (const auto& lam : partitions_of(n))
            for (std::size_t e = lam.length(); e <= 4; ++e)
                CHECK(in_pos(plus_shift(lam, e), e));
}

TEST_CASE("twist conversion") {
    using Twists = std::vector<std::pair<std::size_t, unsigned long>>;
    CHECK(to_twists(Partition({2, 1}), 2) == Twists{{1, 1}, {2, 1}});
    CHECK(to_twists(Partition({3, 3}), 2) == Twists{{2, 3}});
    CHECK(to_twists(Partition({1}), 3) == Twists{{1, 1}});
    for (unsigned long n = 0; n <= 6; ++n)
        for (const auto& lam : partitions_of(n))
            for (std::size_t e = std::max<std::size_t>(lam.length(), 1); e <= 4; ++e)
                CHECK(from_twists(to_twists(lam, e), e) == lam);
}

TEST_CASE("qlambda condition") {
    CHECK(qlambda_condition(Partition({3, 3}), 2, 2));
    CHECK_FALSE(qlambda_condition(Partition({3, 1}), 2, 2));
    CHECK(qlambda_condition(Partition({2, 2}), 2, 1));
}
