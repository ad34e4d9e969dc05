#pragma once

#include <compare>
#include <cstddef>
#include <string>
#include <vector>

namespace gad {

// Bijection of {1..n}, stored 0-based. Composition is function
// composition: (a*b)(i) = a(b(i)).
class Permutation {
  public:
    Permutation() = default;
    static Permutation identity(std::size_t n);
    explicit Permutation(std::vector<std::size_t> images_zero_based);
    // Transposition (i j), 1-based, within S_n.
    static Permutation transposition(std::size_t n, std::size_t i, std::size_t j);

    static Permutation parse(const std::string& one_line);  // "3,1,2"
    std::string to_string() const;

    std::size_t degree() const { return img_.size(); }
    std::size_t apply(std::size_t i) const { return img_[i]; }  // 0-based

    Permutation compose(const Permutation& other) const;  // this after other
    Permutation inverse() const;
    int sign() const;
    std::size_t num_cycles() const;

    bool operator==(const Permutation&) const = default;
    auto operator<=>(const Permutation&) const = default;

  private:
    std::vector<std::size_t> img_;
};

// All n! elements of S_n in lexicographic one-line order.
std::vector<Permutation> symmetric_group(std::size_t n);

}  // namespace gad
