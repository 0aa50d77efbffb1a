#pragma once

#include <complex>
#include <span>
#include <vector>

#include "vilenkin/group.hpp"

// Vilenkin characters and the forward/inverse Vilenkin-Fourier transform.
// Signals are F_N-measurable functions stored as one complex value per
// I_N-coset in linear-index order; spectra are coefficient vectors of the
// same length. The forward transform carries the 1/M_N factor, synthesis
// carries none.

namespace vilenkin {

using cplx = std::complex<double>;

class Signal {
public:
    explicit Signal(GroupSpec spec)
        : spec_(std::move(spec)), values_(static_cast<std::size_t>(spec_.size())) {}
    Signal(GroupSpec spec, std::vector<cplx> values);

    const GroupSpec& spec() const { return spec_; }
    std::int64_t size() const { return spec_.size(); }
    std::span<const cplx> values() const { return values_; }
    std::span<cplx> values() { return values_; }
    cplx operator[](std::int64_t i) const { return values_[static_cast<std::size_t>(i)]; }
    cplx& operator[](std::int64_t i) { return values_[static_cast<std::size_t>(i)]; }

private:
    GroupSpec spec_;
    std::vector<cplx> values_;
};

class Spectrum {
public:
    explicit Spectrum(GroupSpec spec)
        : spec_(std::move(spec)), coeffs_(static_cast<std::size_t>(spec_.size())) {}
    Spectrum(GroupSpec spec, std::vector<cplx> coeffs);

    const GroupSpec& spec() const { return spec_; }
    std::int64_t size() const { return spec_.size(); }
    std::span<const cplx> coeffs() const { return coeffs_; }
    std::span<cplx> coeffs() { return coeffs_; }
    cplx operator[](std::int64_t n) const { return coeffs_[static_cast<std::size_t>(n)]; }
    cplx& operator[](std::int64_t n) { return coeffs_[static_cast<std::size_t>(n)]; }

private:
    GroupSpec spec_;
    std::vector<cplx> coeffs_;
};

// r_k(x) = exp(2 pi i x_k / m_k)
cplx rademacher(int k, const Point& x, const GroupSpec& spec);

// psi_n(x) = prod_k r_k(x)^{n_k}
cplx vilenkin_char(std::int64_t n, const Point& x, const GroupSpec& spec);
cplx vilenkin_char(std::int64_t n, std::int64_t x, const GroupSpec& spec);

// sum_{k=0}^{m_pos - 1} r_pos(x)^k : m_pos when x_pos = 0, else 0.
cplx rademacher_sum(int pos, const Point& x, const GroupSpec& spec);

// Table of psi_n over every coset, linear-index order.
std::vector<cplx> character_table(std::int64_t n, const GroupSpec& spec);

// O(M_N^2) reference analysis; the oracle the fast path is checked against.
Spectrum forward_naive(const Signal& f);

// Mixed-radix decimation over digit positions, O(M_N * sum_k m_k).
Spectrum forward_fast(const Signal& f);

// Synthesis f(x) = sum_n fhat(n) psi_n(x), same fast decimation.
Signal inverse(const Spectrum& s);

// Synthesis of the first n coefficients only.
Signal partial_sum(const Spectrum& s, std::int64_t n);
Signal partial_sum(const Signal& f, std::int64_t n);

// Fejer (C,1) mean: triangular reweighting (n-k)/n of the first n coefficients.
Signal fejer_mean(const Spectrum& s, std::int64_t n);
Signal fejer_mean(const Signal& f, std::int64_t n);

// Group convolution (f*g)(x) = int f(t) g(x-t) dmu(t); O(M_N^2) oracle.
Signal convolve(const Signal& f, const Signal& g);
Signal convolve(const Signal& f, std::span<const cplx> kernel);

}  // namespace vilenkin
