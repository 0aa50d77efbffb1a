#include "vilenkin/spaces.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

namespace vilenkin {

namespace {

void check_exponent(double p) {
    if (!(p > 0.0)) {
        throw std::invalid_argument("exponent p must be positive");
    }
}

// Mean of f over each I_depth-coset, broadcast back to resolution N.
Signal coset_average(const Signal& f, int depth) {
    const GroupSpec& g = f.spec();
    const std::int64_t Mn = g.power(depth);
    const std::int64_t M = g.size();
    std::vector<cplx> means(static_cast<std::size_t>(Mn));
    for (std::int64_t x = 0; x < M; ++x) {
        means[static_cast<std::size_t>(x % Mn)] += f[x];
    }
    const double inv = static_cast<double>(Mn) / static_cast<double>(M);
    Signal out(g);
    for (std::int64_t x = 0; x < M; ++x) {
        out[x] = means[static_cast<std::size_t>(x % Mn)] * inv;
    }
    return out;
}

}  // namespace

double lp_norm(const Signal& f, double p) {
    check_exponent(p);
    double acc = 0.0;
    for (const cplx v : f.values()) acc += std::pow(std::abs(v), p);
    return std::pow(acc / static_cast<double>(f.size()), 1.0 / p);
}

double weak_lp_norm(const Signal& f, double p) {
    check_exponent(p);
    std::vector<double> mags;
    mags.reserve(static_cast<std::size_t>(f.size()));
    for (const cplx v : f.values()) mags.push_back(std::abs(v));
    std::sort(mags.begin(), mags.end(), std::greater<>());
    double best = 0.0;
    for (std::size_t i = 0; i < mags.size(); ++i) {
        if (mags[i] == 0.0) break;
        // mu{|f| >= mags[i]} = (i+1)/M at the end of a run of equal values
        const double candidate = std::pow(mags[i], p) * static_cast<double>(i + 1) /
                                 static_cast<double>(f.size());
        best = std::max(best, candidate);
    }
    return std::pow(best, 1.0 / p);
}

MartingaleSeq MartingaleSeq::from_signal(const Signal& f) {
    std::vector<Signal> levels;
    levels.reserve(static_cast<std::size_t>(f.spec().level()) + 1);
    for (int n = 0; n < f.spec().level(); ++n) {
        levels.push_back(coset_average(f, n));
    }
    levels.push_back(f);
    return MartingaleSeq(std::move(levels));
}

Signal maximal_function(const MartingaleSeq& mart) {
    Signal out(mart.spec());
    for (int n = 0; n <= mart.top_level(); ++n) {
        const Signal& fn = mart.level(n);
        for (std::int64_t x = 0; x < out.size(); ++x) {
            out[x] = std::max(out[x].real(), std::abs(fn[x]));
        }
    }
    return out;
}

double hp_norm(const MartingaleSeq& mart, double p) {
    return lp_norm(maximal_function(mart), p);
}

Atom make_atom(const Point& base, int depth, double p, const Signal& raw) {
    check_exponent(p);
    const GroupSpec& g = raw.spec();
    if (depth < 0 || depth > g.level()) {
        throw std::out_of_range("make_atom: depth outside [0, N]");
    }
    const std::int64_t Mt = g.power(depth);
    const std::int64_t residue = base.index() % Mt;
    const std::int64_t M = g.size();

    double raw_sup = 0.0;
    for (std::int64_t x = 0; x < M; ++x) raw_sup = std::max(raw_sup, std::abs(raw[x]));
    for (std::int64_t x = 0; x < M; ++x) {
        if (x % Mt != residue && std::abs(raw[x]) > 1e-12 * raw_sup) {
            throw std::invalid_argument("make_atom: support leaks outside the interval");
        }
    }

    Signal a(g);
    const std::int64_t support_size = M / Mt;
    // Two projection passes keep the residual mean at roundoff of roundoff.
    for (std::int64_t x = 0; x < M; ++x) {
        if (x % Mt == residue) a[x] = raw[x];
    }
    for (int pass = 0; pass < 2; ++pass) {
        cplx mean{0.0, 0.0};
        for (std::int64_t x = residue; x < M; x += Mt) mean += a[x];
        mean /= static_cast<double>(support_size);
        for (std::int64_t x = residue; x < M; x += Mt) a[x] -= mean;
    }

    double sup = 0.0;
    for (std::int64_t x = residue; x < M; x += Mt) sup = std::max(sup, std::abs(a[x]));
    if (sup <= 1e-14 * std::max(raw_sup, 1.0)) {
        throw std::invalid_argument("make_atom: degenerate atom (constant on its interval)");
    }
    const double target = std::pow(static_cast<double>(Mt), 1.0 / p);  // mu(I)^{-1/p}
    const double scale = target / sup;
    for (std::int64_t x = residue; x < M; x += Mt) a[x] *= scale;

    Atom atom{std::move(a), base, depth, p};
    validate_atom(atom);
    return atom;
}

void validate_atom(const Atom& atom) {
    const GroupSpec& g = atom.signal.spec();
    const std::int64_t Mt = g.power(atom.depth);
    const std::int64_t residue = atom.base.index() % Mt;
    const std::int64_t M = g.size();
    const double bound = std::pow(static_cast<double>(Mt), 1.0 / atom.p);

    cplx integral{0.0, 0.0};
    double sup = 0.0;
    for (std::int64_t x = 0; x < M; ++x) {
        const double mag = std::abs(atom.signal[x]);
        if (x % Mt != residue) {
            if (mag > 1e-12 * bound) {
                throw std::invalid_argument("atom: support condition violated");
            }
            continue;
        }
        integral += atom.signal[x];
        sup = std::max(sup, mag);
    }
    integral /= static_cast<double>(M);
    if (std::abs(integral) > 1e-12 * std::max(1.0, bound)) {
        throw std::invalid_argument("atom: zero-mean condition violated");
    }
    if (sup > bound * (1.0 + 1e-12)) {
        throw std::invalid_argument("atom: size condition ||a||_inf <= mu(I)^{-1/p} violated");
    }
}

Atom random_atom(const AtomSeed& seed, const GroupSpec& spec) {
    Point base(seed.base_digits, spec);
    std::mt19937_64 rng(seed.seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    const std::int64_t Mt = spec.power(seed.depth);
    const std::int64_t residue = base.index() % Mt;
    Signal raw(spec);
    for (std::int64_t x = residue; x < spec.size(); x += Mt) {
        raw[x] = cplx{gauss(rng), 0.0};
    }
    return make_atom(base, seed.depth, seed.p, raw);
}

DecompositionReport verify_decomposition(const MartingaleSeq& mart,
                                         std::span<const double> weights,
                                         std::span<const Atom> atoms, double p) {
    check_exponent(p);
    if (weights.size() != atoms.size()) {
        throw std::invalid_argument("verify_decomposition: weight/atom count mismatch");
    }
    for (const Atom& a : atoms) {
        if (a.signal.spec() != mart.spec()) {
            throw std::invalid_argument("verify_decomposition: group spec mismatch");
        }
    }

    DecompositionReport report;
    for (int n = 0; n <= mart.top_level(); ++n) {
        Signal combo(mart.spec());
        for (std::size_t k = 0; k < atoms.size(); ++k) {
            // S_{M_n} a = E[a | F_n] for an F_N-measurable atom.
            const Signal cond = coset_average(atoms[k].signal, n);
            for (std::int64_t x = 0; x < combo.size(); ++x) {
                combo[x] += weights[k] * cond[x];
            }
        }
        const Signal& fn = mart.level(n);
        for (std::int64_t x = 0; x < combo.size(); ++x) {
            report.max_level_error = std::max(report.max_level_error, std::abs(combo[x] - fn[x]));
        }
    }
    for (const double w : weights) report.coeff_sum += std::pow(std::abs(w), p);
    if (report.coeff_sum > 0.0) {
        report.hp_ratio = std::pow(hp_norm(mart, p), p) / report.coeff_sum;
    }
    return report;
}

}  // namespace vilenkin
