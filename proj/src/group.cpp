#include "vilenkin/group.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <stdexcept>

namespace vilenkin {

namespace {
constexpr std::int64_t kCapacity = std::int64_t{1} << 31;
}

GroupSpec::GroupSpec(std::vector<int> radices) : m_(std::move(radices)) {
    if (m_.empty()) {
        throw std::invalid_argument("GroupSpec: level must be >= 1");
    }
    M_.reserve(m_.size() + 1);
    M_.push_back(1);
    for (int mk : m_) {
        if (mk < 2) {
            throw std::invalid_argument("GroupSpec: invalid radix " + std::to_string(mk) +
                                        " (every m_k must be >= 2)");
        }
        if (M_.back() > kCapacity / mk) {
            throw std::overflow_error("GroupSpec: M_N exceeds index capacity");
        }
        M_.push_back(M_.back() * mk);
        lambda_ = std::max(lambda_, mk);
    }
}

GroupSpec GroupSpec::walsh(int level) {
    return GroupSpec(std::vector<int>(static_cast<std::size_t>(level), 2));
}

GroupSpec GroupSpec::cyclic(const std::vector<int>& pattern, int level) {
    if (pattern.empty() || level < 1) {
        throw std::invalid_argument("GroupSpec::cyclic: empty pattern or level < 1");
    }
    std::vector<int> m(static_cast<std::size_t>(level));
    for (int k = 0; k < level; ++k) {
        m[static_cast<std::size_t>(k)] = pattern[static_cast<std::size_t>(k) % pattern.size()];
    }
    return GroupSpec(std::move(m));
}

std::vector<int> GroupSpec::digits(std::int64_t n) const {
    if (n < 0 || n >= size()) {
        throw std::out_of_range("digits: index " + std::to_string(n) + " outside [0, M_N)");
    }
    std::vector<int> d(m_.size());
    for (int k = 0; k < level(); ++k) {
        d[static_cast<std::size_t>(k)] = static_cast<int>(n % m_[static_cast<std::size_t>(k)]);
        n /= m_[static_cast<std::size_t>(k)];
    }
    return d;
}

int GroupSpec::order(std::int64_t n) const {
    if (n < 0 || n >= size()) {
        throw std::out_of_range("order: index outside [0, M_N)");
    }
    for (int k = level() - 1; k >= 0; --k) {
        if (n >= power(k) && digit(n, k) != 0) return k;
    }
    return -1;
}

std::int64_t GroupSpec::add_index(std::int64_t a, std::int64_t b) const {
    std::int64_t out = 0;
    for (int k = 0; k < level(); ++k) {
        const int mk = radix(k);
        const int dk = static_cast<int>((a % mk + b % mk) % mk);
        out += dk * power(k);
        a /= mk;
        b /= mk;
    }
    return out;
}

std::int64_t GroupSpec::sub_index(std::int64_t a, std::int64_t b) const {
    std::int64_t out = 0;
    for (int k = 0; k < level(); ++k) {
        const int mk = radix(k);
        const int dk = static_cast<int>((a % mk - b % mk + mk) % mk);
        out += dk * power(k);
        a /= mk;
        b /= mk;
    }
    return out;
}

std::optional<int> GroupSpec::first_nonzero_digit(std::int64_t x) const {
    for (int k = 0; k < level(); ++k) {
        if (x % radix(k) != 0) return k;
        x /= radix(k);
    }
    return std::nullopt;
}

std::string GroupSpec::str() const {
    std::ostringstream os;
    os << "G(";
    for (std::size_t i = 0; i < m_.size(); ++i) {
        if (i) os << ",";
        os << m_[i];
    }
    os << ")";
    return os.str();
}

GroupSpec make_group(const std::vector<int>& radices, int level) {
    if (level < 1) {
        throw std::invalid_argument("make_group: level must be >= 1");
    }
    if (static_cast<int>(radices.size()) < level) {
        throw std::invalid_argument("make_group: radix list shorter than level");
    }
    return GroupSpec(std::vector<int>(radices.begin(), radices.begin() + level));
}

Point::Point(std::vector<int> digits, const GroupSpec& spec) : digits_(std::move(digits)) {
    if (static_cast<int>(digits_.size()) != spec.level()) {
        throw std::invalid_argument("Point: digit count does not match group level");
    }
    for (int k = 0; k < spec.level(); ++k) {
        const int d = digits_[static_cast<std::size_t>(k)];
        if (d < 0 || d >= spec.radix(k)) {
            throw std::out_of_range("Point: digit " + std::to_string(d) +
                                    " outside radix at position " + std::to_string(k));
        }
        index_ += static_cast<std::int64_t>(d) * spec.power(k);
    }
}

Point Point::from_index(std::int64_t index, const GroupSpec& spec) {
    Point p;
    p.digits_ = spec.digits(index);
    p.index_ = index;
    return p;
}

namespace {
void require_same_level(const Point& x, const Point& y, const GroupSpec& spec) {
    if (x.level() != spec.level() || y.level() != spec.level()) {
        throw std::invalid_argument("point/group spec mismatch");
    }
}
}  // namespace

Point add(const Point& x, const Point& y, const GroupSpec& spec) {
    require_same_level(x, y, spec);
    return Point::from_index(spec.add_index(x.index(), y.index()), spec);
}

Point sub(const Point& x, const Point& y, const GroupSpec& spec) {
    require_same_level(x, y, spec);
    return Point::from_index(spec.sub_index(x.index(), y.index()), spec);
}

Point basis_point(int position, const GroupSpec& spec) {
    if (position < 0 || position >= spec.level()) {
        throw std::out_of_range("basis_point: position outside [0, N)");
    }
    return Point::from_index(spec.power(position), spec);
}

bool in_interval(const Point& y, const Point& x, int depth) {
    if (depth < 0 || depth > y.level() || depth > x.level()) {
        throw std::out_of_range("in_interval: depth outside [0, N]");
    }
    return std::equal(y.digits().begin(), y.digits().begin() + depth, x.digits().begin());
}

Region region_of(const Point& x, const GroupSpec& spec) {
    Region r;
    const int N = spec.level();
    for (int j = 0; j < N; ++j) {
        if (x.digits()[static_cast<std::size_t>(j)] == 0) continue;
        if (r.k < 0) {
            r.k = j;
        } else {
            r.l = j;
            return r;
        }
    }
    if (r.k < 0) {
        r.inside_IN = true;
    } else {
        r.l = N;  // single nonzero digit: the l = N branch of the decomposition
    }
    return r;
}

Measure measure(std::span<const Point> cosets, const GroupSpec& spec) {
    std::set<std::int64_t> seen;
    for (const Point& p : cosets) seen.insert(p.index());
    return Measure{static_cast<std::int64_t>(seen.size()), spec.size()};
}

}  // namespace vilenkin
