#include "vilenkin/theorems.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <sstream>

namespace vilenkin {

namespace {

void check_theorem_exponent(double p) {
    if (!(p > 0.0) || p > 0.5) {
        throw std::invalid_argument("exponent p must lie in (0, 1/2]");
    }
}

double lp_p_mean(const Signal& f, double p) {
    double acc = 0.0;
    for (const cplx v : f.values()) acc += std::pow(std::abs(v), p);
    return acc / static_cast<double>(f.size());
}

}  // namespace

double PhiFn::operator()(double n) const {
    switch (kind) {
        case Kind::pow: return std::pow(n, param);
        case Kind::log: return 1.0 + std::log(n);
        case Kind::constant: return param;
    }
    return param;
}

PhiFn PhiFn::parse(std::string_view text) {
    auto parse_param = [](std::string_view s) {
        double value = 0.0;
        const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
        if (ec != std::errc{} || ptr != s.data() + s.size()) {
            throw std::invalid_argument("PhiFn: bad numeric parameter");
        }
        return value;
    };
    if (text == "log") return PhiFn{Kind::log, 0.0};
    if (text.starts_with("pow:")) {
        const double a = parse_param(text.substr(4));
        if (a < 0.0) throw std::invalid_argument("PhiFn: pow exponent must be >= 0");
        return PhiFn{Kind::pow, a};
    }
    if (text.starts_with("const:")) {
        const double c = parse_param(text.substr(6));
        if (c < 1.0) throw std::invalid_argument("PhiFn: constant must be >= 1");
        return PhiFn{Kind::constant, c};
    }
    throw std::invalid_argument("PhiFn: grammar is pow:<a> | log | const:<c>");
}

std::string PhiFn::str() const {
    std::ostringstream os;
    switch (kind) {
        case Kind::pow: os << "pow:" << param; break;
        case Kind::log: os << "log"; break;
        case Kind::constant: os << "const:" << param; break;
    }
    return os.str();
}

std::vector<double> theorem1_curve(const Signal& f, double p, std::int64_t n_max) {
    check_theorem_exponent(p);
    if (n_max < 2 || n_max > f.size()) {
        throw std::out_of_range("theorem1: n outside [2, M_N]");
    }
    const int log_exponent = static_cast<int>(std::floor(0.5 + p));
    const Spectrum spectrum = forward_fast(f);
    std::vector<double> out;
    out.reserve(static_cast<std::size_t>(n_max) - 1);
    double acc = 0.0;
    for (std::int64_t k = 1; k <= n_max; ++k) {
        acc += lp_p_mean(fejer_mean(spectrum, k), p) /
               std::pow(static_cast<double>(k), 2.0 - 2.0 * p);
        if (k >= 2) {
            out.push_back(log_exponent ? acc / std::log(static_cast<double>(k)) : acc);
        }
    }
    return out;
}

double theorem1_sum(const Signal& f, double p, std::int64_t n) {
    return theorem1_curve(f, p, n).back();
}

std::vector<double> corollary_curve(const Signal& f, std::int64_t n_max) {
    if (n_max < 2 || n_max > f.size()) {
        throw std::out_of_range("corollary: n outside [2, M_N]");
    }
    const Spectrum spectrum = forward_fast(f);
    std::vector<double> out;
    out.reserve(static_cast<std::size_t>(n_max) - 1);
    double acc = 0.0;
    for (std::int64_t k = 1; k <= n_max; ++k) {
        Signal diff = fejer_mean(spectrum, k);
        for (std::int64_t x = 0; x < diff.size(); ++x) diff[x] -= f[x];
        acc += lp_p_mean(diff, 0.5) / static_cast<double>(k);
        if (k >= 2) out.push_back(acc / std::log(static_cast<double>(k)));
    }
    return out;
}

double corollary_sum(const Signal& f, std::int64_t n) {
    return corollary_curve(f, n).back();
}

bool in_A02(std::int64_t n, const GroupSpec& spec) {
    if (n < 1 || n >= spec.size()) {
        throw std::out_of_range("in_A02: index outside [1, M_N)");
    }
    if (spec.level() < 3) return false;
    return spec.digit(n, 0) == 1 && spec.digit(n, 1) == 0 && spec.digit(n, 2) == 1;
}

std::vector<int> select_alphas(double p, const PhiFn& phi, const GroupSpec& spec,
                               const SelectionCaps& caps) {
    if (!(p > 0.0) || p >= 0.5) {
        throw std::invalid_argument("select_alphas: p must lie in (0, 1/2)");
    }
    std::vector<int> selected;
    double best_ratio = 0.0;
    double total = 0.0;
    int rejected_summand = 0;
    int rejected_growth = 0;
    int rejected_total = 0;
    for (int t = 2; t + 1 <= spec.level(); ++t) {
        const double summand = std::sqrt(phi(static_cast<double>(spec.power(t + 1)))) /
                               std::pow(static_cast<double>(spec.power(t)), 1.0 - p);
        const double ratio = 1.0 / summand;
        if (summand > caps.summand) {
            ++rejected_summand;
            continue;
        }
        if (ratio <= best_ratio) {
            ++rejected_growth;
            continue;
        }
        if (total + summand > caps.total) {
            ++rejected_total;
            continue;
        }
        selected.push_back(t);
        best_ratio = ratio;
        total += summand;
    }
    if (static_cast<int>(selected.size()) < caps.min_blocks) {
        std::ostringstream os;
        os << "select_alphas: only " << selected.size() << " block orders found (need "
           << caps.min_blocks << "); rejected " << rejected_summand << " by the summand cap, "
           << rejected_growth << " by the growth requirement, " << rejected_total
           << " by the partial-sum cap";
        throw SelectionFailure(os.str());
    }
    return selected;
}

double Counterexample::block_coeff(int t) const {
    return std::pow(phi(static_cast<double>(spec.power(t + 1))), 1.0 / (2.0 * p));
}

bool Counterexample::order_selected(int t) const {
    return std::find(orders.begin(), orders.end(), t) != orders.end();
}

Counterexample build_counterexample(double p, const PhiFn& phi, std::span<const int> orders,
                                    int level_cap, const GroupSpec& spec) {
    if (!(p > 0.0) || p >= 0.5) {
        throw std::invalid_argument("build_counterexample: p must lie in (0, 1/2)");
    }
    if (level_cap < 1 || level_cap > spec.level()) {
        throw std::out_of_range("build_counterexample: level cap outside [1, N]");
    }
    std::vector<int> kept;
    for (const int t : orders) {
        if (t < 2 || t + 1 > spec.level()) {
            throw std::out_of_range("build_counterexample: block order out of range");
        }
        if (t < level_cap) kept.push_back(t);
    }
    std::sort(kept.begin(), kept.end());
    if (kept.empty()) {
        throw SelectionFailure("build_counterexample: no admissible block order below the cap");
    }

    const double lambda = static_cast<double>(spec.lambda());
    Spectrum spectrum(spec);
    std::vector<double> weights;
    std::vector<Atom> atoms;
    for (const int t : kept) {
        const std::int64_t Mt = spec.power(t);
        const std::int64_t Mt1 = spec.power(t + 1);
        const double coeff = std::pow(phi(static_cast<double>(Mt1)), 1.0 / (2.0 * p));
        for (std::int64_t j = Mt; j < Mt1; ++j) spectrum[j] = coeff;

        const double scale = std::pow(static_cast<double>(Mt), 1.0 / p - 1.0) / lambda;
        Signal a(spec);
        for (std::int64_t x = 0; x < spec.size(); x += Mt) {
            // scale * (D_{M_{t+1}} - D_{M_t})
            a[x] = (x % Mt1 == 0) ? scale * static_cast<double>(Mt1 - Mt)
                                  : -scale * static_cast<double>(Mt);
        }
        Atom atom{std::move(a), Point::from_index(0, spec), t, p};
        validate_atom(atom);
        atoms.push_back(std::move(atom));
        weights.push_back(lambda * coeff / std::pow(static_cast<double>(Mt), 1.0 / p - 1.0));
    }

    Signal f = inverse(spectrum);
    return Counterexample{spec,   p, phi, std::move(kept), std::move(spectrum),
                          std::move(f), std::move(weights), std::move(atoms)};
}

SplitReport sigma_split_check(const Counterexample& ce, std::int64_t alpha) {
    const GroupSpec& g = ce.spec;
    if (!in_A02(alpha, g)) {
        throw std::domain_error("sigma_split_check: alpha not in A_{0,2}");
    }
    const int T = g.order(alpha);
    if (!ce.order_selected(T)) {
        throw std::domain_error("sigma_split_check: |alpha| is not a selected block order");
    }
    const std::int64_t MT = g.power(T);
    const double inv_alpha = 1.0 / static_cast<double>(alpha);
    const double coeff = ce.block_coeff(T);

    Spectrum wI(g);
    Spectrum wII1(g);
    Spectrum wII2(g);
    for (std::int64_t v = 0; v < MT; ++v) {
        wI[v] = ce.spectrum[v] * (static_cast<double>(MT - v) * inv_alpha);
        wII1[v] = ce.spectrum[v] * (static_cast<double>(alpha - MT) * inv_alpha);
    }
    for (std::int64_t v = MT; v < alpha; ++v) {
        wII2[v] = coeff * (static_cast<double>(alpha - v) * inv_alpha);
    }
    const Signal I = inverse(wI);
    const Signal II1 = inverse(wII1);
    const Signal II2 = inverse(wII2);
    const Signal sigma = fejer_mean(ce.spectrum, alpha);

    const double expected = coeff * inv_alpha;
    SplitReport report;
    report.alpha = alpha;
    report.min_II2_ratio = std::numeric_limits<double>::infinity();
    for (std::int64_t x = 0; x < g.size(); ++x) {
        if (g.digit(x, 0) == 0 || g.digit(x, 1) == 0) continue;  // region I_2^{0,1}
        report.max_abs_I = std::max(report.max_abs_I, std::abs(I[x]));
        report.max_abs_II1 = std::max(report.max_abs_II1, std::abs(II1[x]));
        report.min_II2_ratio = std::min(report.min_II2_ratio, std::abs(II2[x]) / expected);
        report.max_split_error =
            std::max(report.max_split_error, std::abs(I[x] + II1[x] + II2[x] - sigma[x]));
    }
    return report;
}

std::vector<DivergencePoint> divergence_sum(const Counterexample& ce, std::int64_t n_max,
                                            bool restrict_A02) {
    const GroupSpec& g = ce.spec;
    if (n_max < 1 || n_max > g.size()) {
        throw std::out_of_range("divergence_sum: n_max outside [1, M_N]");
    }
    std::vector<DivergencePoint> out;
    double partial = 0.0;
    for (std::int64_t k = 1; k <= n_max; ++k) {
        const int T = (k == g.size()) ? g.level() : g.order(k);
        const bool in_block = T < g.level() && ce.order_selected(T) && k > g.power(T);
        if (restrict_A02) {
            if (k >= g.size() || !in_A02(k, g) || !in_block) continue;
        }
        const double weak = weak_lp_norm(fejer_mean(ce.spectrum, k), ce.p);
        const double term = std::pow(weak, ce.p) / ce.phi(static_cast<double>(k));
        partial += term;
        out.push_back({k, term, partial, in_block ? T : -1});
    }
    return out;
}

}  // namespace vilenkin
