#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

// Mixed-radix arithmetic for a bounded Vilenkin group truncated at level N.
// A group element is identified with its coset of I_N, i.e. a digit vector
// (x_0,...,x_{N-1}) with x_k in {0,...,m_k-1}, or equivalently the linear
// index sum_k x_k M_k in [0, M_N).

namespace vilenkin {

class GroupSpec {
public:
    // Radices must all be >= 2; the truncation level is radices.size().
    explicit GroupSpec(std::vector<int> radices);

    static GroupSpec walsh(int level);
    // Repeats `pattern` cyclically until `level` radices are filled.
    static GroupSpec cyclic(const std::vector<int>& pattern, int level);

    int level() const { return static_cast<int>(m_.size()); }
    int radix(int k) const { return m_[static_cast<std::size_t>(k)]; }
    const std::vector<int>& radices() const { return m_; }

    // Generalized power M_k, valid for 0 <= k <= level().
    std::int64_t power(int k) const { return M_[static_cast<std::size_t>(k)]; }
    std::int64_t size() const { return M_.back(); }
    int lambda() const { return lambda_; }

    // Digit n_k of the mixed-radix expansion of n.
    int digit(std::int64_t n, int k) const {
        return static_cast<int>((n / power(k)) % radix(k));
    }
    std::vector<int> digits(std::int64_t n) const;

    // Highest nonzero digit position |n|; order(0) == -1.
    int order(std::int64_t n) const;

    // Digitwise modular group operation on linear indices.
    std::int64_t add_index(std::int64_t a, std::int64_t b) const;
    std::int64_t sub_index(std::int64_t a, std::int64_t b) const;

    // First nonzero digit position, or nullopt for 0.
    std::optional<int> first_nonzero_digit(std::int64_t x) const;

    bool operator==(const GroupSpec& other) const { return m_ == other.m_; }
    bool operator!=(const GroupSpec& other) const { return !(*this == other); }

    std::string str() const;

private:
    std::vector<int> m_;
    std::vector<std::int64_t> M_;
    int lambda_ = 0;
};

// make_group uses the first `level` entries of `radices` (which may be longer).
GroupSpec make_group(const std::vector<int>& radices, int level);

class Point {
public:
    Point(std::vector<int> digits, const GroupSpec& spec);
    static Point from_index(std::int64_t index, const GroupSpec& spec);

    const std::vector<int>& digits() const { return digits_; }
    std::int64_t index() const { return index_; }
    int level() const { return static_cast<int>(digits_.size()); }

    bool operator==(const Point& other) const { return digits_ == other.digits_; }

private:
    Point() = default;
    std::vector<int> digits_;
    std::int64_t index_ = 0;
};

Point add(const Point& x, const Point& y, const GroupSpec& spec);
Point sub(const Point& x, const Point& y, const GroupSpec& spec);

// e_n: digit 1 at position n, zero elsewhere.
Point basis_point(int position, const GroupSpec& spec);

// True iff the first `depth` digits of y and x agree (y in I_depth(x)).
bool in_interval(const Point& y, const Point& x, int depth);

// Classification of a coset by the region decomposition of the complement
// of I_N: (k,l) with k < l < N, (k,N) with a single nonzero digit, or the
// interior coset I_N itself (all digits zero).
struct Region {
    bool inside_IN = false;
    int k = -1;
    int l = -1;
    bool operator==(const Region&) const = default;
};

Region region_of(const Point& x, const GroupSpec& spec);

// Haar measure of a union of I_N-cosets, kept exact as count / M_N.
struct Measure {
    std::int64_t count = 0;
    std::int64_t denom = 1;
    double value() const { return static_cast<double>(count) / static_cast<double>(denom); }
};

Measure measure(std::span<const Point> cosets, const GroupSpec& spec);

}  // namespace vilenkin
