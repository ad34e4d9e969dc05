#include <doctest.h>

#include <random>

#include "gad/group_algebra.hpp"
#include "gad/tensor_action.hpp"

using namespace gad;

TEST_CASE("permutation basics") {
    auto id = Permutation::identity(3);
    auto t12 = Permutation::transposition(3, 1, 2);
    CHECK(t12.compose(t12) == id);
    CHECK(t12.sign() == -1);
    CHECK(id.sign() == 1);
    CHECK(Permutation::parse("3,1,2").to_string() == "3,1,2");
    CHECK(Permutation::parse("3,1,2").inverse() == Permutation::parse("2,3,1"));
    CHECK_THROWS(Permutation::parse("1,1,2"));
}

TEST_CASE("canonical tableau is row-major") {
    auto t = canonical_tableau(Partition({2, 1}));
    CHECK(t.labels == std::vector<std::vector<unsigned long>>{{1, 2}, {3}});
    auto t2 = canonical_tableau(Partition({3}));
    CHECK(t2.labels == std::vector<std::vector<unsigned long>>{{1, 2, 3}});
    auto t3 = canonical_tableau(Partition({1, 1}));
    CHECK(t3.labels == std::vector<std::vector<unsigned long>>{{1}, {2}});
}

TEST_CASE("row and column symmetrizers") {
    auto row2 = row_symmetrizer(canonical_tableau(Partition({2})));
    CHECK(row2.num_terms() == 2);
    CHECK(row2.coeff(Permutation::identity(2)) == 1);
    CHECK(row2.coeff(Permutation::transposition(2, 1, 2)) == 1);

    auto row11 = row_symmetrizer(canonical_tableau(Partition({1, 1})));
    CHECK(row11 == GroupAlgebraElement::unit(2));

    auto row21 = row_symmetrizer(canonical_tableau(Partition({2, 1})));
    CHECK(row21.num_terms() == 2);
    CHECK(row21.coeff(Permutation::transposition(3, 1, 2)) == 1);

    auto col11 = column_antisymmetrizer(canonical_tableau(Partition({1, 1})));
    CHECK(col11.coeff(Permutation::transposition(2, 1, 2)) == -1);

    auto col2 = column_antisymmetrizer(canonical_tableau(Partition({2})));
    CHECK(col2 == GroupAlgebraElement::unit(2));

    auto col21 = column_antisymmetrizer(canonical_tableau(Partition({2, 1})));
    CHECK(col21.num_terms() == 2);
    CHECK(col21.coeff(Permutation::transposition(3, 1, 3)) == -1);
}

TEST_CASE("young idempotents square to themselves") {
    auto e2 = young_idempotent(Partition({2}));
    CHECK(e2.coeff(Permutation::identity(2)) == Rational(1, 2));
    auto e11 = young_idempotent(Partition({1, 1}));
    CHECK(e11.coeff(Permutation::transposition(2, 1, 2)) == Rational(-1, 2));
    for (unsigned long n = 1; n <= 5; ++n)
        for (const auto& lam : partitions_of(n)) {
            auto e = young_idempotent(lam);
            CHECK(e * e == e);
        }
    CHECK_THROWS(young_idempotent(Partition{}));
}

TEST_CASE("group algebra associativity and distributivity on random elements") {
    std::mt19937 rng(12345);
    for (std::size_t n = 2; n <= 5; ++n) {
        auto group = symmetric_group(n);
        auto random_elem = [&]() {
            GroupAlgebraElement x(n);
            std::uniform_int_distribution<std::size_t> pick(0, group.size() - 1);
            std::uniform_int_distribution<long> coef(-3, 3);
            for (int t = 0; t < 4; ++t) x.add_term(group[pick(rng)], Rational(coef(rng)));
            return x;
        };
        for (int trial = 0; trial < 5; ++trial) {
            auto a = random_elem(), b = random_elem(), c = random_elem();
            CHECK((a * b) * c == a * (b * c));
            CHECK(a * (b + c) == a * b + a * c);
        }
    }
}

TEST_CASE("group algebra JSON round trip") {
    auto e = young_idempotent(Partition({2, 1}));
    CHECK(GroupAlgebraElement::from_json_string(e.to_json_string()) == e);
}

TEST_CASE("tensor action basics") {
    auto id_action = TensorAction(GroupAlgebraElement::unit(2), 3);
    CHECK(id_action.dense() == Matrix::identity(9));

    GroupAlgebraElement swap(2);
    swap.add_term(Permutation::transposition(2, 1, 2), 1);
    auto m = TensorAction(swap, 2).dense();
    // Swaps the two middle basis vectors of the lexicographic basis.
    Matrix expect(4, 4);
    expect.at(0, 0) = 1;
    expect.at(2, 1) = 1;
    expect.at(1, 2) = 1;
    expect.at(3, 3) = 1;
    CHECK(m == expect);
}

TEST_CASE("antisymmetrizer on the square is a rank one projector") {
    auto e11 = young_idempotent(Partition({1, 1}));
    TensorAction action(e11, 2);
    CHECK(action.rank() == 1);
    auto complement = GroupAlgebraElement::unit(2) - e11;
    CHECK(TensorAction(complement, 2).rank() == 3);
}

TEST_CASE("tensor action is a right-action homomorphism") {
    std::mt19937 rng(99);
    for (std::size_t n = 2; n <= 3; ++n) {
        auto group = symmetric_group(n);
        std::uniform_int_distribution<std::size_t> pick(0, group.size() - 1);
        std::uniform_int_distribution<long> coef(-2, 2);
        auto random_elem = [&]() {
            GroupAlgebraElement x(n);
            for (int t = 0; t < 3; ++t) x.add_term(group[pick(rng)], Rational(coef(rng)));
            return x;
        };
        for (int trial = 0; trial < 4; ++trial) {
            auto x = random_elem(), y = random_elem();
            std::size_t e = 2 + trial % 2;
            auto lhs = TensorAction(x * y, e).dense();
            auto rhs = TensorAction(y, e).dense() * TensorAction(x, e).dense();
            CHECK(lhs == rhs);
        }
    }
}

TEST_CASE("projector rank splits the tensor power") {
    for (unsigned long n = 1; n <= 4; ++n)
        for (const auto& lam : partitions_of(n))
            for (std::size_t e = 2; e <= 3; ++e) {
                auto idem = young_idempotent(lam);
                std::size_t r1 = TensorAction(idem, e).rank();
                std::size_t r2 = TensorAction(GroupAlgebraElement::unit(n) - idem, e).rank();
                std::size_t total = 1;
                for (unsigned long k = 0; k < n; ++k) total *= e;
                CHECK(r1 + r2 == total);
            }
}

TEST_CASE("tensor cap is enforced") {
    auto e = young_idempotent(Partition({1, 1, 1, 1, 1, 1, 1}));
    CHECK_THROWS_AS(TensorAction(e, 4).dense(), std::length_error);
}

TEST_CASE("degree mismatch is rejected") {
    GroupAlgebraElement x(2);
    CHECK_THROWS(x.add_term(Permutation::identity(3), 1));
}
