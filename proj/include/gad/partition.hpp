#pragma once

#include <compare>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

namespace gad {

struct Cell {
    std::size_t row = 0;  // 1-based
    std::size_t col = 0;  // 1-based
};

// Nonincreasing sequence of naturals, trailing zeros stripped on
// construction. The empty sequence is the zero partition.
class Partition {
  public:
    Partition() = default;
    explicit Partition(std::vector<unsigned long> parts);

    static Partition parse(const std::string& text);  // "2,1"; "" is zero
    std::string to_string() const;

    const std::vector<unsigned long>& parts() const { return parts_; }
    unsigned long part(std::size_t i) const {  // 1-based, 0 past the end
        return (i >= 1 && i <= parts_.size()) ? parts_[i - 1] : 0;
    }
    std::size_t length() const { return parts_.size(); }
    unsigned long weight() const;
    bool is_zero() const { return parts_.empty(); }

    Partition conjugate() const;
    std::vector<Cell> cells() const;
    bool contains_cell(Cell c) const;
    unsigned long hook_length(Cell c) const;
    unsigned long long num_standard_tableaux() const;

    bool operator==(const Partition&) const = default;
    auto operator<=>(const Partition&) const = default;

  private:
    std::vector<unsigned long> parts_;
};

// (lambda_1 - lambda_e, ..., lambda_{e-1} - lambda_e, 0, ...).
Partition reduced(const Partition& lam, std::size_t e);

// length(lambda) <= e and lambda_e >= length(reduced(lambda, e)).
bool in_pos(const Partition& lam, std::size_t e);

// Index partition of the det-shifted power: first e parts each raised
// by length(lambda). Rejects the zero partition.
Partition plus_shift(const Partition& lam, std::size_t e);

// Jump positions k with lambda_k - lambda_{k+1} != 0 and the difference
// there; position e carries the det exponent lambda_e.
std::vector<std::pair<std::size_t, unsigned long>> to_twists(const Partition& lam,
                                                             std::size_t e);
Partition from_twists(const std::vector<std::pair<std::size_t, unsigned long>>& twists,
                      std::size_t e);

// lambda_d >= length(reduced(lambda, d)) + slack, slack in {1,2}.
bool qlambda_condition(const Partition& lam, std::size_t d, unsigned slack);

// All partitions of n, in lexicographically decreasing order.
std::vector<Partition> partitions_of(unsigned long n);

}  // namespace gad
