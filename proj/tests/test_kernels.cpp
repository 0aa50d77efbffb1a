#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "vilenkin/kernels.hpp"

using namespace vilenkin;

namespace {

double max_diff(std::span<const cplx> a, std::span<const cplx> b) {
    double worst = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) worst = std::max(worst, std::abs(a[i] - b[i]));
    return worst;
}

}  // namespace

TEST_CASE("Dirichlet kernel basics") {
    const GroupSpec g = GroupSpec::walsh(3);
    const KernelTable d1 = dirichlet(1, g);
    for (std::int64_t x = 0; x < g.size(); ++x) CHECK(std::abs(d1[x] - 1.0) < 1e-12);

    // D_n(0) = n for all n
    for (std::int64_t n = 1; n <= g.size(); ++n) {
        CHECK(std::abs(dirichlet(n, g)[0] - static_cast<double>(n)) < 1e-10);
    }
    CHECK_THROWS_AS(dirichlet(0, g), std::out_of_range);
    CHECK_THROWS_AS(dirichlet(g.size() + 1, g), std::out_of_range);
}

TEST_CASE("D_{M_n} is the scaled interval indicator (Eq. 3)") {
    for (const GroupSpec& g : {GroupSpec::walsh(5), GroupSpec({2, 3, 4})}) {
        for (int n = 0; n <= g.level(); ++n) {
            const std::int64_t Mn = g.power(n);
            const KernelTable d = dirichlet(Mn, g);
            for (std::int64_t x = 0; x < g.size(); ++x) {
                const double expected = (x % Mn == 0) ? static_cast<double>(Mn) : 0.0;
                CHECK(std::abs(d[x] - expected) < 1e-12);
            }
        }
    }
}

TEST_CASE("D_3 on Walsh N=2 at (0,1)") {
    const GroupSpec g = GroupSpec::walsh(2);
    const std::int64_t x = Point({0, 1}, g).index();
    CHECK(std::abs(dirichlet(3, g)[x] - 1.0) < 1e-12);
}

TEST_CASE("closed form for D_n matches the character sweep") {
    for (const GroupSpec& g : {GroupSpec::walsh(6), GroupSpec({2, 3, 4})}) {
        KernelSweep sweep(g);
        for (;;) {
            const std::int64_t n = sweep.n();
            const std::span<const cplx> d = sweep.dirichlet();
            for (std::int64_t x = 0; x < g.size(); ++x) {
                CHECK(std::abs(d[static_cast<std::size_t>(x)] - dirichlet_closed(n, x, g)) <
                      1e-10);
            }
            if (n + 1 >= g.size()) break;
            sweep.advance();
        }
    }
}

TEST_CASE("closed form at n = M_k reduces to the block identity") {
    const GroupSpec g = GroupSpec::walsh(5);
    for (int k = 0; k < g.level(); ++k) {
        const std::int64_t Mk = g.power(k);
        for (std::int64_t x = 0; x < g.size(); ++x) {
            const double expected = (x % Mk == 0) ? static_cast<double>(Mk) : 0.0;
            CHECK(std::abs(dirichlet_closed(Mk, x, g) - expected) < 1e-10);
        }
    }
}

TEST_CASE("Fejer kernel basics") {
    const GroupSpec g = GroupSpec::walsh(6);
    const KernelTable k1 = fejer(1, g);
    for (std::int64_t x = 0; x < g.size(); ++x) CHECK(std::abs(k1[x] - 1.0) < 1e-12);
    for (std::int64_t n = 1; n <= g.size(); n += 5) {
        CHECK(std::abs(fejer(n, g)[0] - (static_cast<double>(n) + 1.0) / 2.0) < 1e-10);
    }
    // Walsh: K_2 at (1,0,...) = (D_1 + D_2)/2 = (1 + 0)/2
    CHECK(std::abs(fejer(2, g)[1] - 0.5) < 1e-12);
}

TEST_CASE("Fejer kernel equals the average of Dirichlet kernels") {
    const GroupSpec g({2, 3, 2});
    KernelSweep sweep(g);
    for (;;) {
        const std::int64_t n = sweep.n();
        const KernelTable k = fejer(n, g);
        CHECK(max_diff(k.span(), sweep.fejer()) < 1e-10);
        if (n + 1 > g.size()) break;
        sweep.advance();
    }
}

TEST_CASE("Lemma 2: K_{M_n} closed form off I_n") {
    const GroupSpec w3 = GroupSpec::walsh(3);
    // x = (1,0,0): x - e_0 = 0 in I_2, t = 0 -> M_0/(1 - r_0(x)) = 1/2
    const auto v = fejer_Mn_closed(2, Point({1, 0, 0}, w3), w3);
    REQUIRE(v.has_value());
    CHECK(std::abs(*v - cplx{0.5, 0.0}) < 1e-12);
    // x = (0,1,1): x - x_1 e_1 = (0,0,1) lies in I_2, t = 1 -> M_1/(1 - r_1(x)) = 1
    const auto v2 = fejer_Mn_closed(2, Point({0, 1, 1}, w3), w3);
    REQUIRE(v2.has_value());
    CHECK(std::abs(*v2 - cplx{1.0, 0.0}) < 1e-12);
    // x = (0,1,1) with n = 3: (0,0,1) is not in I_3 -> zero branch
    const auto z = fejer_Mn_closed(3, Point({0, 1, 1}, w3), w3);
    REQUIRE(z.has_value());
    CHECK(std::abs(*z) < 1e-12);
    // x in I_n is outside the lemma's domain
    CHECK(!fejer_Mn_closed(2, Point({0, 0, 1}, w3), w3).has_value());
}

TEST_CASE("Lemma 2 exhaustive agreement with brute force") {
    for (const GroupSpec& g : {GroupSpec::walsh(6), GroupSpec({2, 3, 4})}) {
        for (int n = 0; n <= g.level(); ++n) {
            const KernelTable k = fejer(g.power(n), g);
            for (std::int64_t x = 0; x < g.size(); ++x) {
                const auto closed = fejer_Mn_closed(n, x, g);
                if (closed) CHECK(std::abs(k[x] - *closed) < 1e-10);
            }
        }
    }
}

TEST_CASE("Lemma 4: single-block orders have no Dirichlet terms") {
    const GroupSpec g({2, 3, 4});
    const KernelDecomposition dec = nK_decomposition(2 * g.power(1), g);  // s=2, t=1
    CHECK(dec.kernel_terms.size() == 1);
    CHECK(dec.dirichlet_terms.empty());
    CHECK(dec.kernel_terms[0].coeff == 2);
    CHECK(dec.kernel_terms[0].position == 1);
}

TEST_CASE("Lemma 4: Walsh n = 3 structure and reconstruction") {
    const GroupSpec g = GroupSpec::walsh(3);
    const KernelDecomposition dec = nK_decomposition(3, g);
    CHECK(dec.kernel_terms.size() == 2);
    CHECK(dec.dirichlet_terms.size() == 1);
    const KernelTable k3 = fejer(3, g);
    for (std::int64_t x = 0; x < g.size(); ++x) {
        CHECK(std::abs(dec.reconstruction[x] - 3.0 * k3[x]) < 1e-9);
    }
}

TEST_CASE("Lemma 4 exhaustive reconstruction") {
    for (const GroupSpec& g : {GroupSpec::walsh(6), GroupSpec({3, 2, 3})}) {
        KernelSweep sweep(g);
        for (;;) {
            const std::int64_t n = sweep.n();
            const KernelDecomposition dec = nK_decomposition(n, g);
            const std::vector<cplx>& k = sweep.fejer();
            for (std::int64_t x = 0; x < g.size(); ++x) {
                CHECK(std::abs(dec.reconstruction[x] -
                               static_cast<double>(n) * k[static_cast<std::size_t>(x)]) < 1e-9);
            }
            if (n + 1 >= g.size()) break;
            sweep.advance();
        }
    }
}

TEST_CASE("Lemma 5: product formula for D_{sM_n}") {
    const GroupSpec mixed({2, 3, 2});
    // s = 1 degenerates to D_{M_n}
    CHECK(max_diff(dirichlet_sMn(1, 1, mixed).span(), dirichlet(2, mixed).span()) < 1e-12);
    // n=1, s=2: D_4 = D_2 (1 + r_1)
    CHECK(max_diff(dirichlet_sMn(2, 1, mixed).span(), dirichlet(4, mixed).span()) < 1e-10);
    CHECK_THROWS_AS(dirichlet_sMn(3, 1, mixed), std::out_of_range);

    for (const GroupSpec& g : {GroupSpec::walsh(6), GroupSpec({2, 3, 4, 2})}) {
        for (int n = 0; n < g.level(); ++n) {
            for (int s = 1; s < g.radix(n); ++s) {
                CHECK(max_diff(dirichlet_sMn(s, n, g).span(),
                               dirichlet(s * g.power(n), g).span()) < 1e-10);
            }
        }
    }
}

TEST_CASE("Lemma 6: K_{sM_n} vanishes under its hypothesis") {
    const GroupSpec w4 = GroupSpec::walsh(4);
    // x = (1,1,0,0): x - e_0 = (0,1,0,0) is outside I_2
    CHECK(fejer_sMn_zero_check(1, 2, 0, Point({1, 1, 0, 0}, w4), w4));
    const GroupSpec mixed({2, 3, 2});
    // x = (1,1,0): x - e_0 = (0,1,0) is outside I_2
    CHECK(fejer_sMn_zero_check(1, 2, 0, Point({1, 1, 0}, mixed), mixed));
    // hypothesis violations
    CHECK_THROWS_AS(fejer_sMn_zero_check(1, 0, 0, Point({1, 1, 0, 0}, w4), w4),
                    std::domain_error);  // n <= t
    CHECK_THROWS_AS(fejer_sMn_zero_check(1, 2, 1, Point({1, 0, 1, 0}, w4), w4),
                    std::domain_error);  // first nonzero digit is 0, not 1
    CHECK_THROWS_AS(fejer_sMn_zero_check(1, 2, 0, Point({1, 0, 1, 0}, w4), w4),
                    std::domain_error);  // x - e_0 lies inside I_2
}

TEST_CASE("Lemma 6 exhaustive scan") {
    for (const GroupSpec& g : {GroupSpec::walsh(6), GroupSpec({2, 3, 2})}) {
        for (std::int64_t x = 1; x < g.size(); ++x) {
            const int t = *g.first_nonzero_digit(x);
            const std::int64_t stripped =
                x - static_cast<std::int64_t>(g.digit(x, t)) * g.power(t);
            const Point px = Point::from_index(x, g);
            for (int n = t + 1; n < g.level(); ++n) {
                if (stripped % g.power(n) == 0) continue;
                for (int s = 1; s < g.radix(n); ++s) {
                    CHECK(fejer_sMn_zero_check(s, n, t, px, g));
                }
            }
        }
    }
}

TEST_CASE("kernel L1 norms") {
    const GroupSpec g = GroupSpec::walsh(6);
    CHECK(kernel_l1_norm(1, g) == doctest::Approx(1.0));
    double sup = 0.0;
    for (std::int64_t n = 1; n <= g.size(); ++n) sup = std::max(sup, kernel_l1_norm(n, g));
    CHECK(sup < 2.0 * g.lambda());  // uniform boundedness at desk scale
}

TEST_CASE("Lemma 3 ratios are finite and stable under doubling n") {
    const GroupSpec g = GroupSpec::walsh(6);
    const int inner = 3;
    CHECK_THROWS_AS(lemma3_ratio(4, 0, 1, inner, g), std::domain_error);
    for (int k = 0; k < inner; ++k) {
        for (int l = k + 1; l <= inner; ++l) {
            double prev = -1.0;
            for (std::int64_t n = g.power(inner); n <= g.size(); n *= 2) {
                const double r = lemma3_ratio(n, k, l, inner, g);
                CHECK(std::isfinite(r));
                if (prev > 0.0 && r > 0.0) {
                    CHECK(r <= 2.0 * prev);
                    CHECK(r >= prev / 2.0);
                }
                prev = r;
            }
        }
    }
}

TEST_CASE("kernel cache survives clearing and tiny budgets") {
    const GroupSpec g = GroupSpec::walsh(4);
    const KernelTable before = dirichlet(9, g);
    set_kernel_cache_budget(2);
    for (std::int64_t n = 1; n <= g.size(); ++n) (void)fejer(n, g);
    clear_kernel_cache();
    const KernelTable after = dirichlet(9, g);
    CHECK(max_diff(before.span(), after.span()) == 0.0);
    set_kernel_cache_budget(256);
}
