#pragma once

#include <cstdint>
#include <span>

#include "vilenkin/system.hpp"

// L_p quasi-norms, weak-L_p, the martingale maximal function and H_p norm
// at truncation level N, p-atoms and verification of atomic decompositions.

namespace vilenkin {

double lp_norm(const Signal& f, double p);

// sup_v v^p mu{|f| >= v}, taken exactly over the distinct values of |f|
// (the distribution function of a simple function is a step function, so
// the sup over lambda is attained approaching a jump).
double weak_lp_norm(const Signal& f, double p);

// Levels f^{(0)}..f^{(N)} with f^{(n)} = E[f | F_n], each stored at
// resolution N.
class MartingaleSeq {
public:
    static MartingaleSeq from_signal(const Signal& f);

    const GroupSpec& spec() const { return levels_.front().spec(); }
    int top_level() const { return static_cast<int>(levels_.size()) - 1; }
    const Signal& level(int n) const { return levels_[static_cast<std::size_t>(n)]; }

private:
    explicit MartingaleSeq(std::vector<Signal> levels) : levels_(std::move(levels)) {}
    std::vector<Signal> levels_;
};

// f* = max over levels of |f^{(n)}|, pointwise (real-valued Signal).
Signal maximal_function(const MartingaleSeq& mart);

double hp_norm(const MartingaleSeq& mart, double p);

struct Atom {
    Signal signal;
    Point base;
    int depth;
    double p;
};

// Projects `raw` (which must already vanish outside I_depth(base)) to zero
// mean over the support interval and rescales to sup-norm mu(I)^{-1/p}.
Atom make_atom(const Point& base, int depth, double p, const Signal& raw);

// Throws unless all three atom conditions hold.
void validate_atom(const Atom& atom);

struct AtomSeed {
    std::vector<int> base_digits;
    int depth = 1;
    double p = 0.5;
    std::uint64_t seed = 0;
};

// Deterministic random atom: standard-normal values on the support cosets,
// then make_atom projection.
Atom random_atom(const AtomSeed& seed, const GroupSpec& spec);

struct DecompositionReport {
    double max_level_error = 0.0;  // worst |sum_k mu_k S_{M_n} a_k - f^{(n)}|
    double coeff_sum = 0.0;        // sum |mu_k|^p
    double hp_ratio = 0.0;         // hp_norm^p / coeff_sum
};

DecompositionReport verify_decomposition(const MartingaleSeq& mart,
                                         std::span<const double> weights,
                                         std::span<const Atom> atoms, double p);

}  // namespace vilenkin
