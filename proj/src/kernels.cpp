#include "vilenkin/kernels.hpp"

#include <cmath>
#include <list>
#include <numbers>
#include <mutex>
#include <stdexcept>
#include <unordered_map>

namespace vilenkin {

namespace {

void check_kernel_order(std::int64_t n, const GroupSpec& g) {
    if (n < 1 || n > g.size()) {
        throw std::out_of_range("kernel order outside [1, M_N]");
    }
}

// ---- kernel table cache -------------------------------------------------

class KernelCache {
public:
    std::shared_ptr<const std::vector<cplx>> get(const std::string& key) {
        std::lock_guard lock(mu_);
        auto it = index_.find(key);
        if (it == index_.end()) return nullptr;
        lru_.splice(lru_.begin(), lru_, it->second);
        return it->second->second;
    }

    void put(const std::string& key, std::shared_ptr<const std::vector<cplx>> value) {
        std::lock_guard lock(mu_);
        if (index_.contains(key)) return;
        lru_.emplace_front(key, std::move(value));
        index_[key] = lru_.begin();
        while (lru_.size() > budget_) {
            index_.erase(lru_.back().first);
            lru_.pop_back();
        }
    }

    void set_budget(std::size_t tables) {
        std::lock_guard lock(mu_);
        budget_ = tables == 0 ? 1 : tables;
        while (lru_.size() > budget_) {
            index_.erase(lru_.back().first);
            lru_.pop_back();
        }
    }

    void clear() {
        std::lock_guard lock(mu_);
        lru_.clear();
        index_.clear();
    }

private:
    std::mutex mu_;
    std::size_t budget_ = 256;
    std::list<std::pair<std::string, std::shared_ptr<const std::vector<cplx>>>> lru_;
    std::unordered_map<std::string,
                       decltype(lru_)::iterator> index_;
};

KernelCache& cache() {
    static KernelCache c;
    return c;
}

std::string cache_key(const GroupSpec& g, KernelKind kind, std::int64_t n) {
    return g.str() + (kind == KernelKind::dirichlet ? "|D|" : "|K|") + std::to_string(n);
}

std::shared_ptr<const std::vector<cplx>> synthesize_kernel(const GroupSpec& g, KernelKind kind,
                                                           std::int64_t n) {
    Spectrum s(g);
    if (kind == KernelKind::dirichlet) {
        for (std::int64_t k = 0; k < n; ++k) s[k] = cplx{1.0, 0.0};
    } else {
        for (std::int64_t k = 0; k < n; ++k) {
            s[k] = cplx{static_cast<double>(n - k) / static_cast<double>(n), 0.0};
        }
    }
    Signal f = inverse(s);
    return std::make_shared<std::vector<cplx>>(f.values().begin(), f.values().end());
}

KernelTable kernel_table(std::int64_t n, const GroupSpec& g, KernelKind kind) {
    check_kernel_order(n, g);
    const std::string key = cache_key(g, kind, n);
    auto values = cache().get(key);
    if (!values) {
        values = synthesize_kernel(g, kind, n);
        cache().put(key, values);
    }
    return KernelTable{g, kind, n, std::move(values)};
}

}  // namespace

KernelTable dirichlet(std::int64_t n, const GroupSpec& spec) {
    return kernel_table(n, spec, KernelKind::dirichlet);
}

KernelTable fejer(std::int64_t n, const GroupSpec& spec) {
    return kernel_table(n, spec, KernelKind::fejer);
}

void set_kernel_cache_budget(std::size_t tables) { cache().set_budget(tables); }
void clear_kernel_cache() { cache().clear(); }

// ---- sweep --------------------------------------------------------------

KernelSweep::KernelSweep(const GroupSpec& spec)
    : spec_(spec),
      n_(1),
      d_(static_cast<std::size_t>(spec.size()), cplx{1.0, 0.0}),
      sum_d_(d_),
      k_(static_cast<std::size_t>(spec.size())) {}

void KernelSweep::advance() {
    if (n_ >= spec_.size()) {
        throw std::out_of_range("KernelSweep: advanced past M_N");
    }
    const auto psi = character_table(n_, spec_);
    ++n_;
    for (std::size_t i = 0; i < d_.size(); ++i) {
        d_[i] += psi[i];
        sum_d_[i] += d_[i];
    }
}

const std::vector<cplx>& KernelSweep::fejer() const {
    if (k_for_ != n_) {
        const double inv = 1.0 / static_cast<double>(n_);
        for (std::size_t i = 0; i < k_.size(); ++i) k_[i] = sum_d_[i] * inv;
        k_for_ = n_;
    }
    return k_;
}

// ---- closed forms -------------------------------------------------------

cplx dirichlet_closed(std::int64_t n, std::int64_t x, const GroupSpec& spec) {
    if (n < 1 || n >= spec.size()) {
        throw std::out_of_range("dirichlet_closed: order outside [1, M_N)");
    }
    const auto t0 = spec.first_nonzero_digit(x);
    const int j_max = t0 ? *t0 : spec.level() - 1;
    cplx acc{0.0, 0.0};
    std::int64_t rest = n;
    for (int j = 0; j <= j_max && rest > 0; ++j) {
        const int m = spec.radix(j);
        const int nj = static_cast<int>(rest % m);
        rest /= m;
        if (nj == 0) continue;
        const int xj = spec.digit(x, j);
        cplx inner{0.0, 0.0};
        for (int p = m - nj; p < m; ++p) {
            inner += std::polar(1.0, 2.0 * std::numbers::pi * ((p * xj) % m) / m);
        }
        acc += static_cast<double>(spec.power(j)) * inner;
    }
    return vilenkin_char(n, x, spec) * acc;
}

cplx dirichlet_closed(std::int64_t n, const Point& x, const GroupSpec& spec) {
    return dirichlet_closed(n, x.index(), spec);
}

std::optional<cplx> fejer_Mn_closed(int n, std::int64_t x, const GroupSpec& spec) {
    if (n < 0 || n > spec.level()) {
        throw std::out_of_range("fejer_Mn_closed: order outside [0, N]");
    }
    const auto t = spec.first_nonzero_digit(x);
    if (!t || *t >= n) return std::nullopt;  // x in I_n: not covered
    for (int j = *t + 1; j < n; ++j) {
        if (spec.digit(x, j) != 0) return cplx{0.0, 0.0};  // x - x_t e_t outside I_n
    }
    const int m = spec.radix(*t);
    const cplx r = std::polar(1.0, 2.0 * std::numbers::pi * spec.digit(x, *t) / m);
    return static_cast<double>(spec.power(*t)) / (cplx{1.0, 0.0} - r);
}

std::optional<cplx> fejer_Mn_closed(int n, const Point& x, const GroupSpec& spec) {
    return fejer_Mn_closed(n, x.index(), spec);
}

KernelDecomposition nK_decomposition(std::int64_t n, const GroupSpec& spec) {
    if (n < 1 || n >= spec.size()) {
        throw std::out_of_range("nK_decomposition: order outside [1, M_N)");
    }
    // Expansion n = sum_i s_i M_{t_i}, highest position first.
    std::vector<std::pair<int, int>> terms;  // (t_i, s_i)
    for (int t = spec.level() - 1; t >= 0; --t) {
        const int d = spec.digit(n, t);
        if (d != 0) terms.emplace_back(t, d);
    }
    const int r = static_cast<int>(terms.size());

    KernelDecomposition out{.kernel_terms = {},
                            .dirichlet_terms = {},
                            .reconstruction = Signal(spec)};
    std::int64_t prefix = 0;  // sum_{j<k} s_j M_{t_j}
    for (int k = 0; k < r; ++k) {
        const auto [t, s] = terms[static_cast<std::size_t>(k)];
        const std::int64_t block = static_cast<std::int64_t>(s) * spec.power(t);
        const auto chi = character_table(prefix, spec);
        const auto K = fejer(block, spec);
        for (std::int64_t i = 0; i < spec.size(); ++i) {
            out.reconstruction[i] +=
                chi[static_cast<std::size_t>(i)] * static_cast<double>(block) * K[i];
        }
        out.kernel_terms.push_back({prefix, t, s, 0});
        const std::int64_t tail = n - prefix - block;  // n^{(k)}
        if (k < r - 1) {
            const auto D = dirichlet(block, spec);
            for (std::int64_t i = 0; i < spec.size(); ++i) {
                out.reconstruction[i] +=
                    chi[static_cast<std::size_t>(i)] * static_cast<double>(tail) * D[i];
            }
            out.dirichlet_terms.push_back({prefix, t, s, tail});
        }
        prefix += block;
    }
    return out;
}

KernelTable dirichlet_sMn(int s, int n, const GroupSpec& spec) {
    if (n < 0 || n >= spec.level()) {
        throw std::out_of_range("dirichlet_sMn: position outside [0, N)");
    }
    if (s < 1 || s >= spec.radix(n)) {
        throw std::out_of_range("dirichlet_sMn: multiplier outside [1, m_n)");
    }
    const std::int64_t M = spec.size();
    const std::int64_t Mn = spec.power(n);
    auto values = std::make_shared<std::vector<cplx>>(static_cast<std::size_t>(M));
    const int m = spec.radix(n);
    for (std::int64_t x = 0; x < M; ++x) {
        if (x % Mn != 0) continue;  // D_{M_n} vanishes off I_n
        const int xn = spec.digit(x, n);
        cplx geo{0.0, 0.0};
        for (int k = 0; k < s; ++k) {
            geo += std::polar(1.0, 2.0 * std::numbers::pi * ((k * xn) % m) / m);
        }
        (*values)[static_cast<std::size_t>(x)] = static_cast<double>(Mn) * geo;
    }
    return KernelTable{spec, KernelKind::dirichlet, s * Mn, std::move(values)};
}

bool fejer_sMn_zero_check(int s, int n, int t, const Point& x, const GroupSpec& spec) {
    if (n < 0 || n >= spec.level() || s < 1 || s >= spec.radix(n)) {
        throw std::out_of_range("fejer_sMn_zero_check: (s, n) out of range");
    }
    if (t >= n) {
        throw std::domain_error("fejer_sMn_zero_check: requires n > t");
    }
    const auto first = spec.first_nonzero_digit(x.index());
    if (!first || *first != t) {
        throw std::domain_error("fejer_sMn_zero_check: x not in I_t \\ I_{t+1}");
    }
    for (int j = t + 1; j < n; ++j) {
        if (spec.digit(x.index(), j) == 0) continue;
        const auto K = fejer(static_cast<std::int64_t>(s) * spec.power(n), spec);
        return std::abs(K[x.index()]) <= 1e-10;
    }
    throw std::domain_error("fejer_sMn_zero_check: hypothesis x - x_t e_t not in I_n fails");
}

double kernel_l1_norm(std::int64_t n, const GroupSpec& spec) {
    const auto K = fejer(n, spec);
    double acc = 0.0;
    for (std::int64_t x = 0; x < spec.size(); ++x) acc += std::abs(K[x]);
    return acc / static_cast<double>(spec.size());
}

double lemma3_ratio(std::int64_t n, int k, int l, int inner_level, const GroupSpec& spec) {
    const int Ni = inner_level;
    if (Ni < 2 || Ni > spec.level() || k < 0 || k >= Ni || l <= k || l > Ni) {
        throw std::out_of_range("lemma3_ratio: region indices out of range");
    }
    if (n < spec.power(Ni)) {
        throw std::domain_error("lemma3_ratio: requires n >= M_inner");
    }
    check_kernel_order(n, spec);
    const auto K = fejer(n, spec);
    const std::int64_t M = spec.size();
    const std::int64_t Mi = spec.power(Ni);
    const double denom =
        (l == Ni)
            ? static_cast<double>(spec.power(k)) / static_cast<double>(Mi)
            : static_cast<double>(spec.power(l)) * static_cast<double>(spec.power(k)) /
                  (static_cast<double>(n) * static_cast<double>(Mi));

    auto in_region = [&](std::int64_t x) {
        for (int j = 0; j < k; ++j) {
            if (spec.digit(x, j) != 0) return false;
        }
        if (spec.digit(x, k) == 0) return false;
        const int stop = (l == Ni) ? Ni : l;
        for (int j = k + 1; j < stop; ++j) {
            if (spec.digit(x, j) != 0) return false;
        }
        if (l < Ni && spec.digit(x, l) == 0) return false;
        return true;
    };

    double sup = 0.0;
    for (std::int64_t x = 0; x < M; ++x) {
        if (!in_region(x)) continue;
        double integral = 0.0;
        for (std::int64_t c = 0; c * Mi < M; ++c) {
            integral += std::abs(K[spec.sub_index(x, c * Mi)]);
        }
        integral /= static_cast<double>(M);
        sup = std::max(sup, integral / denom);
    }
    return sup;
}

}  // namespace vilenkin
