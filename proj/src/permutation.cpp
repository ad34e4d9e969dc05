#include "gad/permutation.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace gad {

Permutation Permutation::identity(std::size_t n) {
    std::vector<std::size_t> img(n);
    std::iota(img.begin(), img.end(), 0);
    return Permutation(std::move(img));
}

Permutation::Permutation(std::vector<std::size_t> images) : img_(std::move(images)) {
    std::vector<bool> seen(img_.size(), false);
    for (std::size_t v : img_) {
        if (v >= img_.size() || seen[v])
            throw std::invalid_argument("permutation images are not a bijection");
        seen[v] = true;
    }
}

Permutation Permutation::transposition(std::size_t n, std::size_t i, std::size_t j) {
    if (i < 1 || j < 1 || i > n || j > n)
        throw std::invalid_argument("transposition indices out of range");
    auto p = identity(n);
    std::swap(p.img_[i - 1], p.img_[j - 1]);
    return p;
}

Permutation Permutation::parse(const std::string& one_line) {
    std::vector<std::size_t> img;
    std::stringstream ss(one_line);
    std::string item;
    while (std::getline(ss, item, ',')) {
        std::size_t v = std::stoul(item);
        if (v == 0) throw std::invalid_argument("one-line notation is 1-based");
        img.push_back(v - 1);
    }
    return Permutation(std::move(img));
}

std::string Permutation::to_string() const {
    std::string out;
    for (std::size_t i = 0; i < img_.size(); ++i) {
        if (i) out += ',';
        out += std::to_string(img_[i] + 1);
    }
    return out;
}

Permutation Permutation::compose(const Permutation& other) const {
    if (degree() != other.degree())
        throw std::invalid_argument("composition degree mismatch");
    std::vector<std::size_t> img(degree());
    for (std::size_t i = 0; i < degree(); ++i) img[i] = img_[other.img_[i]];
    return Permutation(std::move(img));
}

Permutation Permutation::inverse() const {
    std::vector<std::size_t> img(degree());
    for (std::size_t i = 0; i < degree(); ++i) img[img_[i]] = i;
    return Permutation(std::move(img));
}

int Permutation::sign() const {
    return (degree() - num_cycles()) % 2 == 0 ? 1 : -1;
}

std::size_t Permutation::num_cycles() const {
    std::vector<bool> seen(degree(), false);
    std::size_t cycles = 0;
    for (std::size_t i = 0; i < degree(); ++i) {
        if (seen[i]) continue;
        ++cycles;
        for (std::size_t j = i; !seen[j]; j = img_[j]) seen[j] = true;
    }
    return cycles;
}

std::vector<Permutation> symmetric_group(std::size_t n) {
    std::vector<std::size_t> img(n);
    std::iota(img.begin(), img.end(), 0);
    std::vector<Permutation> out;
    do {
        out.push_back(Permutation(img));
    } while (std::next_permutation(img.begin(), img.end()));
    return out;
}

}  // namespace gad
