#pragma once

#include <memory>
#include <optional>

#include "vilenkin/system.hpp"

// Dirichlet and Fejer kernels: production evaluation via spectral synthesis,
// an incremental character-summation sweep for exhaustive oracle scans, and
// every closed-form identity the kernel calculus provides.

namespace vilenkin {

enum class KernelKind { dirichlet, fejer };

struct KernelTable {
    GroupSpec spec;
    KernelKind kind;
    std::int64_t n;
    std::shared_ptr<const std::vector<cplx>> values;

    cplx operator[](std::int64_t x) const { return (*values)[static_cast<std::size_t>(x)]; }
    std::span<const cplx> span() const { return *values; }
};

// D_n = sum of the first n characters. Cached per (spec, kind, n).
KernelTable dirichlet(std::int64_t n, const GroupSpec& spec);

// K_n = average of D_1..D_n, computed through triangular weights.
KernelTable fejer(std::int64_t n, const GroupSpec& spec);

// LRU budget for the kernel table cache (number of tables kept).
void set_kernel_cache_budget(std::size_t tables);
void clear_kernel_cache();

// Incremental sweep over n = 1,2,...: maintains D_n and K_n by direct
// character accumulation, independent of the transform path. advance()
// moves from n to n+1; after construction the sweep is at n = 1.
class KernelSweep {
public:
    explicit KernelSweep(const GroupSpec& spec);
    void advance();
    std::int64_t n() const { return n_; }
    std::span<const cplx> dirichlet() const { return d_; }
    const std::vector<cplx>& fejer() const;

private:
    GroupSpec spec_;
    std::int64_t n_;
    std::vector<cplx> d_;        // D_n
    std::vector<cplx> sum_d_;    // D_1 + ... + D_n
    mutable std::vector<cplx> k_;
    mutable std::int64_t k_for_ = 0;
};

// Closed form for D_n(x): psi_n(x) sum_j D_{M_j}(x) sum_{p=m_j-n_j}^{m_j-1} r_j^p(x).
cplx dirichlet_closed(std::int64_t n, const Point& x, const GroupSpec& spec);
cplx dirichlet_closed(std::int64_t n, std::int64_t x, const GroupSpec& spec);

// K_{M_n}(x) for x outside I_n: 0 when x - x_t e_t is not in I_n, else
// M_t/(1 - r_t(x)), t the first nonzero digit position. nullopt for x in I_n,
// which the identity does not cover.
std::optional<cplx> fejer_Mn_closed(int n, const Point& x, const GroupSpec& spec);
std::optional<cplx> fejer_Mn_closed(int n, std::int64_t x, const GroupSpec& spec);

// Decomposition of n*K_n into scaled kernels and Dirichlet remainders along
// the digit expansion n = sum_i s_i M_{t_i}, t_1 > ... > t_r.
struct KernelDecomposition {
    struct Term {
        std::int64_t prefix_char;  // index of the character prefactor
        int position;              // t_i
        int coeff;                 // s_i
        std::int64_t tail;         // n^{(i)} (Dirichlet terms only)
    };
    std::vector<Term> kernel_terms;
    std::vector<Term> dirichlet_terms;
    Signal reconstruction;  // equals n * K_n
};

KernelDecomposition nK_decomposition(std::int64_t n, const GroupSpec& spec);

// D_{s M_n} = D_{M_n} * sum_{k<s} r_n^k, as a table.
KernelTable dirichlet_sMn(int s, int n, const GroupSpec& spec);

// Checks K_{s M_n}(x) = 0 under the hypothesis x in I_t \ I_{t+1}, n > t,
// s < m_n, x - x_t e_t not in I_n. Throws on hypothesis violations.
bool fejer_sMn_zero_check(int s, int n, int t, const Point& x, const GroupSpec& spec);

// (1/M_N) sum_x |K_n(x)|
double kernel_l1_norm(std::int64_t n, const GroupSpec& spec);

// Empirical constant for the kernel integral estimate: sup over cosets x in
// the region (k,l) at inner depth `inner_level` of
//   [int_{I_inner} |K_n(x-t)| dmu(t)] / [M_l M_k / (n M_inner)]
// (denominator M_k / M_inner when l == inner_level). Requires n >= M_inner.
double lemma3_ratio(std::int64_t n, int k, int l, int inner_level, const GroupSpec& spec);

}  // namespace vilenkin
