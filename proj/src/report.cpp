#include "vilenkin/report.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <random>
#include <sstream>

#include "vilenkin/kernels.hpp"

namespace vilenkin {

namespace {

std::string fmt_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

Signal deterministic_noise(const GroupSpec& spec, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    Signal f(spec);
    for (std::int64_t x = 0; x < f.size(); ++x) f[x] = cplx{unit(rng), unit(rng)};
    return f;
}

double max_abs_diff(std::span<const cplx> a, std::span<const cplx> b) {
    double worst = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) worst = std::max(worst, std::abs(a[i] - b[i]));
    return worst;
}

}  // namespace

void RunManifest::set(std::string key, std::string value) {
    for (auto& [k, v] : params) {
        if (k == key) {
            v = std::move(value);
            return;
        }
    }
    params.emplace_back(std::move(key), std::move(value));
}

nlohmann::ordered_json RunManifest::to_json() const {
    nlohmann::ordered_json j;
    j["command"] = command;
    j["group"] = {{"radices", radices}, {"level", radices.size()}};
    j["seed"] = seed;
    j["threads"] = threads;
    j["tol"] = tol;
    j["tool_version"] = kToolVersion;
    nlohmann::ordered_json p = nlohmann::ordered_json::object();
    for (const auto& [k, v] : params) p[k] = v;
    j["params"] = p;
    return j;
}

nlohmann::ordered_json CheckResult::to_json() const {
    nlohmann::ordered_json j;
    j["name"] = name;
    j["status"] = pass ? "pass" : "fail";
    j["max_error"] = max_error;
    j["scanned_count"] = scanned_count;
    if (!detail.empty()) j["detail"] = detail;
    return j;
}

bool VerifySummary::all_pass() const {
    return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.pass; });
}

nlohmann::ordered_json VerifySummary::to_json() const {
    nlohmann::ordered_json j;
    j["manifest"] = manifest.to_json();
    j["checks"] = nlohmann::ordered_json::array();
    for (const CheckResult& c : checks) j["checks"].push_back(c.to_json());
    j["all_pass"] = all_pass();
    return j;
}

VerifySummary run_verify_all(const GroupSpec& spec, const VerifyOptions& opts) {
    const std::int64_t M = spec.size();
    const std::int64_t cap = (opts.max_n > 0) ? std::min(opts.max_n, M) : M;
    const double tol = opts.tol;

    VerifySummary summary;
    summary.manifest.command = "verify-all";
    summary.manifest.radices = spec.radices();
    summary.manifest.tol = tol;
    summary.manifest.set("max_n", std::to_string(cap));

    auto add = [&](std::string name, double max_error, std::int64_t scanned, double bound,
                   std::string detail = {}) {
        summary.checks.push_back(
            {std::move(name), max_error <= bound, max_error, scanned, std::move(detail)});
    };

    {  // analysis/synthesis round trip on deterministic noise
        const Signal f = deterministic_noise(spec, 0x76696c6bULL);
        const Signal back = inverse(forward_fast(f));
        add("transform_roundtrip", max_abs_diff(f.values(), back.values()), M, tol);
    }
    {  // fast path against the quadratic reference analysis
        const Signal f = deterministic_noise(spec, 0x66617374ULL);
        const Spectrum slow = forward_naive(f);
        const Spectrum quick = forward_fast(f);
        add("fast_vs_naive", max_abs_diff(slow.coeffs(), quick.coeffs()), M, tol);
    }
    {  // D_{M_n} = M_n on I_n, 0 elsewhere
        double worst = 0.0;
        std::int64_t scanned = 0;
        for (int n = 0; n <= spec.level(); ++n) {
            const std::int64_t Mn = spec.power(n);
            std::vector<cplx> table(dirichlet(Mn, spec).span().begin(),
                                    dirichlet(Mn, spec).span().end());
            if (opts.corrupt_kernel && n == 1 && table.size() > 1) {
                table[1] += 1e-3;  // fault-injection fixture
            }
            for (std::int64_t x = 0; x < M; ++x, ++scanned) {
                const double expected = (x % Mn == 0) ? static_cast<double>(Mn) : 0.0;
                worst = std::max(worst, std::abs(table[static_cast<std::size_t>(x)] - expected));
            }
        }
        add("dirichlet_block_identity", worst, scanned,
            tol, opts.corrupt_kernel ? "fault injection enabled" : "");
    }
    {  // closed form for D_n against the incremental character sweep
        double worst = 0.0;
        std::int64_t scanned = 0;
        KernelSweep sweep(spec);
        for (;;) {
            const std::int64_t n = sweep.n();
            const std::span<const cplx> d = sweep.dirichlet();
            for (std::int64_t x = 0; x < M; ++x, ++scanned) {
                worst = std::max(worst, std::abs(d[static_cast<std::size_t>(x)] -
                                                 dirichlet_closed(n, x, spec)));
            }
            if (n + 1 >= cap) break;
            sweep.advance();
        }
        add("dirichlet_closed_form", worst, scanned, tol);
    }
    {  // K_{M_n}: closed form off I_n, (M_n + 1)/2 on it
        double worst = 0.0;
        std::int64_t scanned = 0;
        for (int n = 0; n <= spec.level(); ++n) {
            const std::int64_t Mn = spec.power(n);
            const KernelTable K = fejer(Mn, spec);
            for (std::int64_t x = 0; x < M; ++x, ++scanned) {
                const auto closed = fejer_Mn_closed(n, x, spec);
                const cplx expected =
                    closed ? *closed : cplx{(static_cast<double>(Mn) + 1.0) / 2.0, 0.0};
                worst = std::max(worst, std::abs(K[x] - expected));
            }
        }
        add("fejer_block_closed_form", worst, scanned, tol);
    }
    {  // nK_n decomposition rebuilt from scaled kernels vs the sweep
        double worst = 0.0;
        std::int64_t scanned = 0;
        KernelSweep sweep(spec);
        for (;;) {
            const std::int64_t n = sweep.n();
            const std::vector<cplx>& k = sweep.fejer();
            const KernelDecomposition dec = nK_decomposition(n, spec);
            for (std::int64_t x = 0; x < M; ++x, ++scanned) {
                worst = std::max(worst, std::abs(dec.reconstruction[x] -
                                                 static_cast<double>(n) *
                                                     k[static_cast<std::size_t>(x)]));
            }
            if (n + 1 >= cap) break;
            sweep.advance();
        }
        add("fejer_decomposition", worst, scanned, 10.0 * tol);
    }
    {  // D_{s M_n} product rule vs synthesis
        double worst = 0.0;
        std::int64_t scanned = 0;
        for (int n = 0; n < spec.level(); ++n) {
            for (int s = 1; s < spec.radix(n); ++s) {
                if (s * spec.power(n) > cap) continue;
                const KernelTable product = dirichlet_sMn(s, n, spec);
                const KernelTable direct = dirichlet(s * spec.power(n), spec);
                worst = std::max(worst, max_abs_diff(product.span(), direct.span()));
                scanned += M;
            }
        }
        add("dirichlet_product_rule", worst, scanned, tol);
    }
    {  // K_{s M_n}(x) = 0 on its hypothesis region
        std::int64_t scanned = 0;
        std::int64_t violations = 0;
        for (std::int64_t x = 1; x < M; ++x) {
            const int t = *spec.first_nonzero_digit(x);
            const Point px = Point::from_index(x, spec);
            const std::int64_t stripped = x - static_cast<std::int64_t>(spec.digit(x, t)) *
                                                  spec.power(t);
            for (int n = t + 1; n < spec.level(); ++n) {
                if (stripped % spec.power(n) == 0) continue;  // hypothesis needs x' outside I_n
                for (int s = 1; s < spec.radix(n); ++s) {
                    if (s * spec.power(n) > cap) continue;
                    ++scanned;
                    if (!fejer_sMn_zero_check(s, n, t, px, spec)) ++violations;
                }
            }
        }
        add("fejer_sMn_vanishing", static_cast<double>(violations), scanned, 0.0);
    }
    {  // L1 scan: sup_n int |K_n| stays under the boundedness ceiling
        double sup = 0.0;
        for (std::int64_t n = 1; n <= cap; ++n) sup = std::max(sup, kernel_l1_norm(n, spec));
        add("fejer_l1_scan", sup, cap, 2.0 * static_cast<double>(spec.lambda()),
            "value is the measured sup, bound 2*lambda");
    }
    return summary;
}

nlohmann::ordered_json BenchReport::to_json() const {
    nlohmann::ordered_json j;
    j["manifest"] = manifest.to_json();
    j["sizes"] = nlohmann::ordered_json::array();
    for (const BenchSize& s : sizes) {
        j["sizes"].push_back({{"level", s.level},
                              {"size", s.size},
                              {"naive_median_ms", s.naive_median_ms},
                              {"fast_median_ms", s.fast_median_ms},
                              {"speedup", s.speedup()},
                              {"max_deviation", s.max_deviation}});
    }
    j["fast_wins_at_largest"] = fast_wins_at_largest;
    return j;
}

BenchReport run_bench(int repetitions) {
    if (repetitions < 3) {
        throw std::invalid_argument("run_bench: repetitions must be >= 3");
    }
    BenchReport report;
    report.manifest.command = "bench";
    report.manifest.set("repetitions", std::to_string(repetitions));

    using clock = std::chrono::steady_clock;
    auto median_ms = [](std::vector<double>& v) {
        std::sort(v.begin(), v.end());
        return v[v.size() / 2];
    };

    for (const int level : {8, 10, 12}) {
        const GroupSpec spec = GroupSpec::walsh(level);
        const Signal f = deterministic_noise(spec, 0xbe7cULL + static_cast<unsigned>(level));
        std::vector<double> naive_ms;
        std::vector<double> fast_ms;
        double deviation = 0.0;
        for (int r = 0; r < repetitions; ++r) {
            const auto t0 = clock::now();
            const Spectrum slow = forward_naive(f);
            const auto t1 = clock::now();
            const Spectrum quick = forward_fast(f);
            const auto t2 = clock::now();
            naive_ms.push_back(std::chrono::duration<double, std::milli>(t1 - t0).count());
            fast_ms.push_back(std::chrono::duration<double, std::milli>(t2 - t1).count());
            deviation = std::max(deviation, max_abs_diff(slow.coeffs(), quick.coeffs()));
        }
        report.sizes.push_back(
            {level, spec.size(), median_ms(naive_ms), median_ms(fast_ms), deviation});
    }
    const BenchSize& largest = report.sizes.back();
    report.fast_wins_at_largest = largest.fast_median_ms < largest.naive_median_ms;
    return report;
}

void write_json(const std::filesystem::path& path, const nlohmann::ordered_json& doc) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open for writing: " + path.string());
    out << doc.dump(2) << '\n';
}

void write_signal_csv(const std::filesystem::path& path, const Signal& f) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open for writing: " + path.string());
    out << "index,re,im\n";
    for (std::int64_t x = 0; x < f.size(); ++x) {
        out << x << ',' << fmt_double(f[x].real()) << ',' << fmt_double(f[x].imag()) << '\n';
    }
}

Signal read_signal_csv(const std::filesystem::path& path, const GroupSpec& spec) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open for reading: " + path.string());
    Signal f(spec);
    std::string line;
    if (!std::getline(in, line)) throw std::runtime_error("empty signal file: " + path.string());
    std::int64_t rows = 0;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream row(line);
        std::string cell;
        std::getline(row, cell, ',');
        const std::int64_t idx = std::stoll(cell);
        if (idx < 0 || idx >= spec.size()) {
            throw std::out_of_range("signal row index outside [0, M_N)");
        }
        std::getline(row, cell, ',');
        const double re = std::stod(cell);
        std::getline(row, cell, ',');
        const double im = std::stod(cell);
        f[idx] = cplx{re, im};
        ++rows;
    }
    if (rows != spec.size()) {
        throw std::runtime_error("signal file row count does not match M_N");
    }
    return f;
}

void write_t1_csv(const std::filesystem::path& path, const std::vector<double>& curve,
                  int log_exponent) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open for writing: " + path.string());
    out << "n,term,partial_sum\n";
    double prev = 0.0;
    for (std::size_t i = 0; i < curve.size(); ++i) {
        const double n = static_cast<double>(i + 2);
        const double partial =
            log_exponent ? curve[i] * std::pow(std::log(n), log_exponent) : curve[i];
        out << (i + 2) << ',' << fmt_double(partial - prev) << ',' << fmt_double(partial)
            << '\n';
        prev = partial;
    }
}

void write_t2_csv(const std::filesystem::path& path,
                  const std::vector<DivergencePoint>& points) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open for writing: " + path.string());
    out << "n,term,partial_sum,block_id\n";
    for (const DivergencePoint& pt : points) {
        out << pt.n << ',' << fmt_double(pt.term) << ',' << fmt_double(pt.partial) << ','
            << pt.block << '\n';
    }
}

}  // namespace vilenkin
