#include "vilenkin/system.hpp"

#include <algorithm>
#include <numbers>
#include <stdexcept>

namespace vilenkin {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// m-th roots of unity, exponent reduced mod m before evaluation so that
// equal angles give bitwise-equal values.
std::vector<cplx> roots_of_unity(int m, int sign) {
    std::vector<cplx> w(static_cast<std::size_t>(m));
    for (int r = 0; r < m; ++r) {
        w[static_cast<std::size_t>(r)] = std::polar(1.0, sign * kTwoPi * r / m);
    }
    return w;
}

// In-place small-DFT along every digit axis. sign=-1 analyses against
// conjugate characters, sign=+1 synthesizes.
void axis_dfts(std::vector<cplx>& a, const GroupSpec& g, int sign) {
    const std::int64_t M = g.size();
    std::vector<cplx> scratch(static_cast<std::size_t>(g.lambda()));
    for (int k = 0; k < g.level(); ++k) {
        const int m = g.radix(k);
        const std::int64_t S = g.power(k);
        const auto w = roots_of_unity(m, sign);
        for (std::int64_t hi = 0; hi < M; hi += S * m) {
            for (std::int64_t lo = 0; lo < S; ++lo) {
                cplx* base = a.data() + hi + lo;
                for (int d = 0; d < m; ++d) {
                    scratch[static_cast<std::size_t>(d)] = base[d * S];
                }
                for (int j = 0; j < m; ++j) {
                    cplx acc = scratch[0];
                    for (int d = 1; d < m; ++d) {
                        acc += scratch[static_cast<std::size_t>(d)] *
                               w[static_cast<std::size_t>((j * d) % m)];
                    }
                    base[j * S] = acc;
                }
            }
        }
    }
}

void check_count(std::int64_t n, std::int64_t M) {
    if (n == 0) {
        throw std::invalid_argument("partial sum S_0 is an empty sum and is rejected");
    }
    if (n < 0 || n > M) {
        throw std::out_of_range("count outside [1, M_N]");
    }
}

}  // namespace

Signal::Signal(GroupSpec spec, std::vector<cplx> values)
    : spec_(std::move(spec)), values_(std::move(values)) {
    if (static_cast<std::int64_t>(values_.size()) != spec_.size()) {
        throw std::invalid_argument("Signal: value count must equal M_N");
    }
}

Spectrum::Spectrum(GroupSpec spec, std::vector<cplx> coeffs)
    : spec_(std::move(spec)), coeffs_(std::move(coeffs)) {
    if (static_cast<std::int64_t>(coeffs_.size()) != spec_.size()) {
        throw std::invalid_argument("Spectrum: coefficient count must equal M_N");
    }
}

cplx rademacher(int k, const Point& x, const GroupSpec& spec) {
    if (k < 0 || k >= spec.level()) {
        throw std::out_of_range("rademacher: position outside [0, N)");
    }
    const int m = spec.radix(k);
    return std::polar(1.0, kTwoPi * x.digits()[static_cast<std::size_t>(k)] / m);
}

cplx vilenkin_char(std::int64_t n, std::int64_t x, const GroupSpec& spec) {
    if (n < 0 || n >= spec.size() || x < 0 || x >= spec.size()) {
        throw std::out_of_range("vilenkin_char: index outside [0, M_N)");
    }
    cplx out{1.0, 0.0};
    for (int k = 0; k < spec.level(); ++k) {
        const int m = spec.radix(k);
        const int nk = static_cast<int>(n % m);
        const int xk = static_cast<int>(x % m);
        if (nk != 0 && xk != 0) {
            out *= std::polar(1.0, kTwoPi * ((nk * xk) % m) / m);
        }
        n /= m;
        x /= m;
    }
    return out;
}

cplx vilenkin_char(std::int64_t n, const Point& x, const GroupSpec& spec) {
    return vilenkin_char(n, x.index(), spec);
}

cplx rademacher_sum(int pos, const Point& x, const GroupSpec& spec) {
    if (pos < 0 || pos >= spec.level()) {
        throw std::out_of_range("rademacher_sum: position outside [0, N)");
    }
    const int m = spec.radix(pos);
    cplx acc{0.0, 0.0};
    const cplx r = rademacher(pos, x, spec);
    cplx pw{1.0, 0.0};
    for (int k = 0; k < m; ++k) {
        acc += pw;
        pw *= r;
    }
    return acc;
}

std::vector<cplx> character_table(std::int64_t n, const GroupSpec& spec) {
    if (n < 0 || n >= spec.size()) {
        throw std::out_of_range("character_table: index outside [0, M_N)");
    }
    const std::int64_t M = spec.size();
    std::vector<cplx> out(static_cast<std::size_t>(M), cplx{1.0, 0.0});
    std::int64_t rest = n;
    for (int k = 0; k < spec.level(); ++k) {
        const int m = spec.radix(k);
        const int nk = static_cast<int>(rest % m);
        rest /= m;
        if (nk == 0) continue;
        const std::int64_t S = spec.power(k);
        const auto w = roots_of_unity(m, +1);
        for (std::int64_t hi = 0; hi < M; hi += S * m) {
            for (int d = 1; d < m; ++d) {
                const cplx factor = w[static_cast<std::size_t>((nk * d) % m)];
                cplx* base = out.data() + hi + d * S;
                for (std::int64_t lo = 0; lo < S; ++lo) base[lo] *= factor;
            }
        }
    }
    return out;
}

Spectrum forward_naive(const Signal& f) {
    const GroupSpec& g = f.spec();
    const std::int64_t M = g.size();
    Spectrum s(g);
    for (std::int64_t n = 0; n < M; ++n) {
        const auto psi = character_table(n, g);
        cplx acc{0.0, 0.0};
        for (std::int64_t x = 0; x < M; ++x) {
            acc += f[x] * std::conj(psi[static_cast<std::size_t>(x)]);
        }
        s[n] = acc / static_cast<double>(M);
    }
    return s;
}

Spectrum forward_fast(const Signal& f) {
    const GroupSpec& g = f.spec();
    std::vector<cplx> a(f.values().begin(), f.values().end());
    axis_dfts(a, g, -1);
    const double scale = 1.0 / static_cast<double>(g.size());
    for (cplx& v : a) v *= scale;
    return Spectrum(g, std::move(a));
}

Signal inverse(const Spectrum& s) {
    const GroupSpec& g = s.spec();
    std::vector<cplx> a(s.coeffs().begin(), s.coeffs().end());
    axis_dfts(a, g, +1);
    return Signal(g, std::move(a));
}

Signal partial_sum(const Spectrum& s, std::int64_t n) {
    check_count(n, s.size());
    std::vector<cplx> a(s.coeffs().begin(), s.coeffs().end());
    std::fill(a.begin() + n, a.end(), cplx{0.0, 0.0});
    axis_dfts(a, s.spec(), +1);
    return Signal(s.spec(), std::move(a));
}

Signal partial_sum(const Signal& f, std::int64_t n) {
    return partial_sum(forward_fast(f), n);
}

Signal fejer_mean(const Spectrum& s, std::int64_t n) {
    check_count(n, s.size());
    std::vector<cplx> a(static_cast<std::size_t>(s.size()), cplx{0.0, 0.0});
    for (std::int64_t k = 0; k < n; ++k) {
        a[static_cast<std::size_t>(k)] =
            s[k] * (static_cast<double>(n - k) / static_cast<double>(n));
    }
    axis_dfts(a, s.spec(), +1);
    return Signal(s.spec(), std::move(a));
}

Signal fejer_mean(const Signal& f, std::int64_t n) {
    return fejer_mean(forward_fast(f), n);
}

Signal convolve(const Signal& f, std::span<const cplx> kernel) {
    const GroupSpec& g = f.spec();
    const std::int64_t M = g.size();
    if (static_cast<std::int64_t>(kernel.size()) != M) {
        throw std::invalid_argument("convolve: kernel length must equal M_N");
    }
    Signal out(g);
    for (std::int64_t x = 0; x < M; ++x) {
        cplx acc{0.0, 0.0};
        for (std::int64_t t = 0; t < M; ++t) {
            acc += f[t] * kernel[static_cast<std::size_t>(g.sub_index(x, t))];
        }
        out[x] = acc / static_cast<double>(M);
    }
    return out;
}

Signal convolve(const Signal& f, const Signal& g) {
    if (f.spec() != g.spec()) {
        throw std::invalid_argument("convolve: group spec mismatch");
    }
    return convolve(f, g.values());
}

}  // namespace vilenkin
