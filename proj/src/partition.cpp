#include "gad/partition.hpp"

#include <numeric>
#include <sstream>
#include <stdexcept>

namespace gad {

Partition::Partition(std::vector<unsigned long> parts) : parts_(std::move(parts)) {
    for (std::size_t i = 0; i + 1 < parts_.size(); ++i) {
        if (parts_[i] < parts_[i + 1])
            throw std::invalid_argument("partition parts must be nonincreasing");
    }
    while (!parts_.empty() && parts_.back() == 0) parts_.pop_back();
}

Partition Partition::parse(const std::string& text) {
    std::vector<unsigned long> parts;
    if (text.empty()) return Partition{};
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty() || item.find_first_not_of("0123456789") != std::string::npos)
            throw std::invalid_argument("bad partition part: '" + item + "'");
        if (item.size() > 1 && item[0] == '0')
            throw std::invalid_argument("partition part with leading zero: '" + item + "'");
        parts.push_back(std::stoul(item));
    }
    return Partition(std::move(parts));
}

std::string Partition::to_string() const {
    std::string out;
    for (std::size_t i = 0; i < parts_.size(); ++i) {
        if (i) out += ',';
        out += std::to_string(parts_[i]);
    }
    return out;
}

unsigned long Partition::weight() const {
    return std::accumulate(parts_.begin(), parts_.end(), 0ul);
}

Partition Partition::conjugate() const {
    std::vector<unsigned long> cols;
    if (!parts_.empty()) {
        cols.resize(parts_[0], 0);
        for (unsigned long p : parts_)
            for (unsigned long j = 0; j < p; ++j) ++cols[j];
    }
    return Partition(std::move(cols));
}

std::vector<Cell> Partition::cells() const {
    std::vector<Cell> out;
    for (std::size_t i = 0; i < parts_.size(); ++i)
        for (std::size_t j = 0; j < parts_[i]; ++j) out.push_back({i + 1, j + 1});
    return out;
}

bool Partition::contains_cell(Cell c) const {
    return c.row >= 1 && c.col >= 1 && c.row <= parts_.size() && c.col <= parts_[c.row - 1];
}

unsigned long Partition::hook_length(Cell c) const {
    if (!contains_cell(c)) throw std::out_of_range("cell outside Young diagram");
    unsigned long arm = parts_[c.row - 1] - c.col;
    unsigned long leg = 0;
    for (std::size_t i = c.row; i < parts_.size(); ++i)
        if (parts_[i] >= c.col) ++leg;
    return arm + leg + 1;
}

unsigned long long Partition::num_standard_tableaux() const {
    unsigned long long num = 1;
    for (unsigned long k = 1; k <= weight(); ++k) num *= k;
    for (Cell c : cells()) num /= hook_length(c);  // exact: hook products divide |lambda|!
    return num;
}

Partition reduced(const Partition& lam, std::size_t e) {
    if (lam.length() > e) throw std::invalid_argument("reduced: length exceeds e");
    std::vector<unsigned long> parts;
    unsigned long last = lam.part(e);
    for (std::size_t i = 1; i < e; ++i) parts.push_back(lam.part(i) - last);
    return Partition(std::move(parts));
}

bool in_pos(const Partition& lam, std::size_t e) {
    if (e < 1) throw std::invalid_argument("in_pos: e must be >= 1");
    if (lam.length() > e) return false;
    return lam.part(e) >= reduced(lam, e).length();
}

Partition plus_shift(const Partition& lam, std::size_t e) {
    if (lam.is_zero()) throw std::invalid_argument("plus_shift: zero partition");
    if (lam.length() > e) throw std::invalid_argument("plus_shift: length exceeds e");
    unsigned long len = lam.length();
    std::vector<unsigned long> parts;
    for (std::size_t i = 1; i <= e; ++i) parts.push_back(lam.part(i) + len);
    return Partition(std::move(parts));
}

std::vector<std::pair<std::size_t, unsigned long>> to_twists(const Partition& lam,
                                                             std::size_t e) {
    if (lam.length() > e) throw std::invalid_argument("to_twists: length exceeds e");
    std::vector<std::pair<std::size_t, unsigned long>> out;
    for (std::size_t k = 1; k <= e; ++k) {
        unsigned long next = (k < e) ? lam.part(k + 1) : 0;
        unsigned long diff = lam.part(k) - next;
        if (diff != 0) out.emplace_back(k, diff);
    }
    return out;
}

Partition from_twists(const std::vector<std::pair<std::size_t, unsigned long>>& twists,
                      std::size_t e) {
    std::vector<unsigned long> parts(e, 0);
    for (auto [k, a] : twists) {
        if (k < 1 || k > e) throw std::out_of_range("from_twists: index out of range");
        for (std::size_t j = 0; j < k; ++j) parts[j] += a;
    }
    return Partition(std::move(parts));
}

bool qlambda_condition(const Partition& lam, std::size_t d, unsigned slack) {
    if (lam.length() > d) throw std::invalid_argument("qlambda_condition: length exceeds d");
    if (slack != 1 && slack != 2)
        throw std::invalid_argument("qlambda_condition: slack must be 1 or 2");
    return lam.part(d) >= reduced(lam, d).length() + slack;
}

namespace {
void partitions_rec(unsigned long n, unsigned long max_part,
                    std::vector<unsigned long>& cur, std::vector<Partition>& out) {
    if (n == 0) {
        out.emplace_back(cur);
        return;
    }
    for (unsigned long p = std::min(n, max_part); p >= 1; --p) {
        cur.push_back(p);
        partitions_rec(n - p, p, cur, out);
        cur.pop_back();
    }
}
}  // namespace

std::vector<Partition> partitions_of(unsigned long n) {
    std::vector<Partition> out;
    std::vector<unsigned long> cur;
    if (n == 0) {
        out.emplace_back();
        return out;
    }
    partitions_rec(n, n, cur, out);
    return out;
}

}  // namespace gad
