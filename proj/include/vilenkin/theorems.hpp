#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

#include "vilenkin/spaces.hpp"

// Numerical experiments around the two summability results: the weighted
// strong-convergence sum for Fejer means over H_p atoms, and the divergence
// counterexample built from scaled block atoms.

namespace vilenkin {

// Weight function grammar: "pow:<a>" -> n^a, "log" -> 1 + ln n, "const:<c>".
struct PhiFn {
    enum class Kind { pow, log, constant };
    Kind kind = Kind::constant;
    double param = 1.0;

    double operator()(double n) const;
    static PhiFn parse(std::string_view text);
    std::string str() const;
};

// (1/log^e n) sum_{k=1..n} ||sigma_k f||_p^p / k^{2-2p}, e = floor(1/2 + p),
// natural log. Requires 0 < p <= 1/2 and n >= 2.
double theorem1_sum(const Signal& f, double p, std::int64_t n);

// Values of the sum above for every n in [2, n_max] (index n-2).
std::vector<double> theorem1_curve(const Signal& f, double p, std::int64_t n_max);

// (1/log n) sum_{k=1..n} ||sigma_k f - f||_{1/2}^{1/2} / k
double corollary_sum(const Signal& f, std::int64_t n);
std::vector<double> corollary_curve(const Signal& f, std::int64_t n_max);

// Index set A_{0,2}: digit 0 and digit at position 2 equal 1, digit at
// position 1 zero; higher digits free.
bool in_A02(std::int64_t n, const GroupSpec& spec);

struct SelectionCaps {
    double summand = 1.0;  // per-term cap on Phi^{1/2}(M_{t+1}) / M_t^{1-p}
    double total = 4.0;    // cap on the partial sum of those terms
    int min_blocks = 2;
};

struct SelectionFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Greedy selection of block orders t >= 2 whose growth ratio
// M_t^{1-p} / Phi^{1/2}(M_{t+1}) strictly exceeds every earlier one while the
// reciprocal terms stay under the caps. Throws SelectionFailure with a
// diagnostic when fewer than min_blocks orders qualify.
std::vector<int> select_alphas(double p, const PhiFn& phi, const GroupSpec& spec,
                               const SelectionCaps& caps = {});

struct Counterexample {
    GroupSpec spec;
    double p;
    PhiFn phi;
    std::vector<int> orders;  // selected block orders t, all < A
    Spectrum spectrum;        // fhat: Phi^{1/2p}(M_{t+1}) on [M_t, M_{t+1})
    Signal f;
    std::vector<double> weights;
    std::vector<Atom> atoms;

    double block_coeff(int t) const;  // Phi^{1/2p}(M_{t+1})
    bool order_selected(int t) const;
};

// f_A = sum over selected t < A of lambda_t a_t with
// a_t = (M_t^{1/p-1}/lambda) (D_{M_{t+1}} - D_{M_t}).
Counterexample build_counterexample(double p, const PhiFn& phi, std::span<const int> orders,
                                    int level_cap, const GroupSpec& spec);

// Splits sigma_alpha f = I + II_1 + II_2 on the region {x_0 != 0, x_1 != 0}
// and reports the deviations from the exact evaluation: I and II_1 vanish
// there and |II_2| = Phi^{1/2p}(M_{|alpha|+1}) / alpha.
struct SplitReport {
    std::int64_t alpha = 0;
    double max_abs_I = 0.0;
    double max_abs_II1 = 0.0;
    double min_II2_ratio = 0.0;   // min over region of |II_2| / expected bound
    double max_split_error = 0.0; // |I + II_1 + II_2 - sigma_alpha f|
};

SplitReport sigma_split_check(const Counterexample& ce, std::int64_t alpha);

struct DivergencePoint {
    std::int64_t n = 0;
    double term = 0.0;
    double partial = 0.0;
    int block = -1;  // selected order whose block contains n, else -1
};

// Partial sums of ||sigma_k f||_{L_{p,inf}}^p / Phi(k), optionally restricted
// to k in A_{0,2} inside the selected blocks.
std::vector<DivergencePoint> divergence_sum(const Counterexample& ce, std::int64_t n_max,
                                            bool restrict_A02);

}  // namespace vilenkin
