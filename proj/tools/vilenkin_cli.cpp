// Command-line front end: transforms, kernel tables, lemma verification,
// theorem experiments, benchmarking, and the aggregated verify-all suite.
// Exit codes: 0 all checks pass, 1 a numeric check failed, 2 usage/config.

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include <CLI11.hpp>

#include "vilenkin/kernels.hpp"
#include "vilenkin/report.hpp"

namespace fs = std::filesystem;
using namespace vilenkin;
using nlohmann::ordered_json;

namespace {

std::vector<int> parse_int_list(const std::string& text) {
    std::vector<int> out;
    std::stringstream ss(text);
    std::string cell;
    while (std::getline(ss, cell, ',')) {
        if (cell.empty()) throw std::invalid_argument("empty entry in radix list");
        out.push_back(std::stoi(cell));
    }
    return out;
}

GroupSpec parse_group(const std::string& text) {
    if (text.rfind("walsh:", 0) == 0) {
        return GroupSpec::walsh(std::stoi(text.substr(6)));
    }
    if (text.rfind("cyclic:", 0) == 0) {
        const std::string rest = text.substr(7);
        const auto colon = rest.find(':');
        if (colon == std::string::npos) {
            throw std::invalid_argument("cyclic group spec needs cyclic:<m0,m1,..>:<level>");
        }
        return GroupSpec::cyclic(parse_int_list(rest.substr(0, colon)),
                                 std::stoi(rest.substr(colon + 1)));
    }
    if (fs::exists(text)) {
        std::ifstream in(text);
        ordered_json doc;
        try {
            in >> doc;
        } catch (const std::exception&) {
            throw std::invalid_argument("group spec file is not valid JSON: " + text);
        }
        const char* key = doc.contains("m") ? "m" : "radices";
        if (!doc.contains(key) || !doc[key].is_array() || doc[key].empty()) {
            throw std::invalid_argument("group spec file needs a nonempty \"m\" array");
        }
        const auto radices = doc[key].get<std::vector<int>>();
        const int level = doc.value("N", static_cast<int>(radices.size()));
        return make_group(radices, level);
    }
    if (text.find(',') != std::string::npos || !text.empty()) {
        return GroupSpec(parse_int_list(text));
    }
    throw std::invalid_argument("unrecognized group spec: " + text);
}

struct GlobalOpts {
    std::string group = "walsh:8";
    std::uint64_t seed = 0;
    int threads = 1;
    std::string out = ".";
    double tol = 1e-9;

    GroupSpec spec() const { return parse_group(group); }
    fs::path out_dir() const {
        fs::path dir(out);
        fs::create_directories(dir);
        return dir;
    }
    RunManifest manifest(std::string command, const GroupSpec& g) const {
        RunManifest m;
        m.command = std::move(command);
        m.radices = g.radices();
        m.seed = seed;
        m.threads = threads;
        m.tol = tol;
        return m;
    }
};

Signal noise_signal(const GroupSpec& spec, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    Signal f(spec);
    for (std::int64_t x = 0; x < f.size(); ++x) f[x] = cplx{unit(rng), unit(rng)};
    return f;
}

std::vector<Atom> load_suite(const std::string& path, int count, double p,
                             const GroupSpec& spec, std::uint64_t seed) {
    std::vector<Atom> suite;
    if (!path.empty()) {
        std::ifstream in(path);
        if (!in) throw std::invalid_argument("cannot open atom suite: " + path);
        ordered_json doc;
        in >> doc;
        for (const auto& entry : doc.at("atoms")) {
            AtomSeed s;
            s.base_digits = entry.value("base", std::vector<int>(spec.level(), 0));
            s.depth = entry.at("depth").get<int>();
            s.p = entry.value("p", p);
            s.seed = entry.value("seed", seed);
            suite.push_back(random_atom(s, spec));
        }
        return suite;
    }
    for (int i = 0; i < count; ++i) {
        AtomSeed s;
        s.base_digits.assign(spec.level(), 0);
        s.depth = 1 + i % std::max(1, spec.level() - 1);
        s.p = p;
        s.seed = seed + static_cast<std::uint64_t>(i) + 1;
        suite.push_back(random_atom(s, spec));
    }
    return suite;
}

int print_and_exit(const VerifySummary& summary, const fs::path& json_path) {
    write_json(json_path, summary.to_json());
    for (const CheckResult& c : summary.checks) {
        std::cout << (c.pass ? "pass" : "FAIL") << "  " << c.name
                  << "  max_error=" << c.max_error << "  scanned=" << c.scanned_count << '\n';
    }
    std::cout << (summary.all_pass() ? "all checks passed" : "checks FAILED") << '\n';
    return summary.all_pass() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Vilenkin-Fourier analysis toolkit"};
    app.require_subcommand(1);
    app.fallthrough();  // global flags may follow the subcommand name

    GlobalOpts g;
    app.add_option("--group", g.group, "group spec: walsh:<N>, cyclic:<m..>:<N>, <m,m,..>, or JSON path");
    app.add_option("--m", g.group, "inline radix list, e.g. 2,3,2 (alias of --group)");
    app.add_option("--seed", g.seed, "base seed for generated signals/atoms");
    app.add_option("--threads", g.threads, "worker count recorded in the manifest");
    app.add_option("--out", g.out, "output directory");
    app.add_option("--tol", g.tol, "comparison tolerance");

    // transform
    auto* transform = app.add_subcommand("transform", "forward/inverse transform of a signal");
    std::string tr_in;
    std::string tr_direction = "forward";
    bool tr_naive = false;
    transform->add_option("--in", tr_in, "input signal CSV (index,re,im); default: seeded noise");
    transform->add_option("--direction", tr_direction, "forward | inverse")
        ->check(CLI::IsMember({"forward", "inverse"}));
    transform->add_flag("--naive", tr_naive, "use the quadratic reference path");

    // kernels
    auto* kernels = app.add_subcommand("kernels", "emit a Dirichlet or Fejer kernel table");
    std::string k_kind = "dirichlet";
    std::int64_t k_n = 1;
    std::string k_dump;
    kernels->add_option("--kind", k_kind, "dirichlet | fejer")
        ->check(CLI::IsMember({"dirichlet", "fejer"}));
    kernels->add_option("--dump", k_dump, "D | K (alias of --kind)")
        ->check(CLI::IsMember({"D", "K"}));
    kernels->add_option("--n", k_n, "kernel order")->required();

    // verify-lemmas / verify-all
    auto* verify_lemmas = app.add_subcommand("verify-lemmas", "kernel identity suite");
    auto* verify_all = app.add_subcommand("verify-all", "full verification suite");
    std::int64_t v_max_n = 0;
    bool v_corrupt = false;
    std::string v_report;
    for (auto* cmd : {verify_lemmas, verify_all}) {
        cmd->add_option("--max-n,--max-M", v_max_n, "cap on scanned kernel orders (0 = M_N)");
        cmd->add_option("--report", v_report, "summary JSON filename (relative to --out)");
        cmd->add_flag("--corrupt-kernel", v_corrupt,
                      "fault-injection fixture: perturb one kernel table");
    }

    // theorem1
    auto* theorem1 = app.add_subcommand("theorem1", "weighted strong-convergence sums");
    double t1_p = 0.5;
    std::string t1_atoms;
    int t1_count = 10;
    std::int64_t t1_nmax = 0;
    theorem1->add_option("--p", t1_p, "exponent in (0, 1/2]");
    theorem1->add_option("--atoms", t1_atoms, "JSON atom suite {\"atoms\":[{base,depth,p,seed}..]}");
    theorem1->add_option("--suite-size", t1_count, "generated suite size when --atoms absent");
    theorem1->add_option("--nmax", t1_nmax, "curve length (default M_N)");

    // theorem2
    auto* theorem2 = app.add_subcommand("theorem2", "divergence counterexample");
    double t2_p = 0.25;
    std::string t2_phi = "pow:0.75";
    int t2_A = 0;
    double t2_cap_summand = 1.0;
    double t2_cap_total = 4.0;
    theorem2->add_option("--p", t2_p, "exponent in (0, 1/2)");
    theorem2->add_option("--phi", t2_phi, "weight: pow:<a> | log | const:<c>");
    theorem2->add_option("--A", t2_A, "level cap (default N)");
    theorem2->add_option("--cap-summand", t2_cap_summand, "per-term selection cap");
    theorem2->add_option("--cap-total", t2_cap_total, "partial-sum selection cap");

    // bench
    auto* bench = app.add_subcommand("bench", "naive vs fast transform timing");
    int b_reps = 5;
    bench->add_option("--reps", b_reps, "repetitions (>= 3, median reported)");

    CLI11_PARSE(app, argc, argv);

    try {
        const GroupSpec spec = g.spec();
        const fs::path out_dir = g.out_dir();

        if (*transform) {
            RunManifest m = g.manifest("transform", spec);
            m.set("direction", tr_direction);
            m.set("path", tr_naive ? "naive" : "fast");
            m.set("input", tr_in.empty() ? "<seeded-noise>" : tr_in);
            const Signal f =
                tr_in.empty() ? noise_signal(spec, g.seed) : read_signal_csv(tr_in, spec);
            Signal out_signal(spec);
            if (tr_direction == "forward") {
                const Spectrum s = tr_naive ? forward_naive(f) : forward_fast(f);
                out_signal = Signal(spec, {s.coeffs().begin(), s.coeffs().end()});
            } else {
                out_signal = inverse(Spectrum(spec, {f.values().begin(), f.values().end()}));
            }
            write_signal_csv(out_dir / "transform.csv", out_signal);
            ordered_json j;
            j["manifest"] = m.to_json();
            j["output"] = "transform.csv";
            write_json(out_dir / "transform.json", j);
            return 0;
        }

        if (*kernels) {
            if (k_dump == "D") k_kind = "dirichlet";
            if (k_dump == "K") k_kind = "fejer";
            RunManifest m = g.manifest("kernels", spec);
            m.set("kind", k_kind);
            m.set("n", std::to_string(k_n));
            const KernelTable table =
                (k_kind == "dirichlet") ? dirichlet(k_n, spec) : fejer(k_n, spec);
            Signal as_signal(spec, {table.span().begin(), table.span().end()});
            write_signal_csv(out_dir / "kernel.csv", as_signal);
            ordered_json j;
            j["manifest"] = m.to_json();
            j["l1_norm"] = kernel_l1_norm(k_n, spec);
            j["output"] = "kernel.csv";
            write_json(out_dir / "kernel.json", j);
            return 0;
        }

        if (*verify_lemmas || *verify_all) {
            VerifyOptions opts;
            opts.max_n = v_max_n;
            opts.tol = g.tol;
            opts.corrupt_kernel = v_corrupt;
            VerifySummary summary = run_verify_all(spec, opts);
            summary.manifest.seed = g.seed;
            summary.manifest.threads = g.threads;
            if (*verify_lemmas) {
                summary.manifest.command = "verify-lemmas";
                std::erase_if(summary.checks, [](const CheckResult& c) {
                    return c.name == "transform_roundtrip" || c.name == "fast_vs_naive";
                });
                return print_and_exit(
                    summary, out_dir / (v_report.empty() ? "verify_lemmas.json" : v_report));
            }
            return print_and_exit(summary,
                                  out_dir / (v_report.empty() ? "verify_all.json" : v_report));
        }

        if (*theorem1) {
            RunManifest m = g.manifest("theorem1", spec);
            m.set("p", std::to_string(t1_p));
            m.set("log_convention", "natural");
            const std::int64_t nmax = t1_nmax > 0 ? t1_nmax : spec.size();
            const std::vector<Atom> suite = load_suite(t1_atoms, t1_count, t1_p, spec, g.seed);
            const int log_exponent = static_cast<int>(std::floor(0.5 + t1_p));

            double c_p = 0.0;
            std::size_t worst = 0;
            ordered_json per_atom = ordered_json::array();
            std::vector<std::vector<double>> curves;
            for (std::size_t i = 0; i < suite.size(); ++i) {
                curves.push_back(theorem1_curve(suite[i].signal, t1_p, nmax));
                const double atom_sup =
                    *std::max_element(curves.back().begin(), curves.back().end());
                per_atom.push_back({{"atom", i},
                                    {"depth", suite[i].depth},
                                    {"sup", atom_sup},
                                    {"final", curves.back().back()}});
                if (atom_sup > c_p) {
                    c_p = atom_sup;
                    worst = i;
                }
            }
            write_t1_csv(out_dir / "t1.csv", curves[worst], log_exponent);
            ordered_json j;
            j["manifest"] = m.to_json();
            j["n_max"] = nmax;
            j["log_exponent"] = log_exponent;
            j["measured_c_p"] = c_p;
            j["worst_atom"] = worst;
            j["per_atom"] = per_atom;
            j["curve_csv"] = "t1.csv";
            write_json(out_dir / "t1_summary.json", j);
            return 0;
        }

        if (*theorem2) {
            RunManifest m = g.manifest("theorem2", spec);
            const PhiFn phi = PhiFn::parse(t2_phi);
            const int A = t2_A > 0 ? t2_A : spec.level();
            m.set("p", std::to_string(t2_p));
            m.set("phi", phi.str());
            m.set("A", std::to_string(A));

            SelectionCaps caps;
            caps.summand = t2_cap_summand;
            caps.total = t2_cap_total;
            const std::vector<int> orders = select_alphas(t2_p, phi, spec, caps);
            const Counterexample ce = build_counterexample(t2_p, phi, orders, A, spec);
            const std::vector<DivergencePoint> points =
                divergence_sum(ce, spec.size() - 1, /*restrict_A02=*/true);
            write_t2_csv(out_dir / "t2.csv", points);

            ordered_json blocks = ordered_json::array();
            double prev_partial = 0.0;
            int current = -2;
            double block_start = 0.0;
            std::int64_t example_alpha = 0;
            for (const DivergencePoint& pt : points) {
                if (pt.block != current) {
                    if (current >= 0) {
                        blocks.push_back({{"order", current},
                                          {"increment", prev_partial - block_start},
                                          {"alpha_example", example_alpha}});
                    }
                    current = pt.block;
                    block_start = prev_partial;
                    example_alpha = pt.n;
                }
                prev_partial = pt.partial;
            }
            if (current >= 0) {
                blocks.push_back({{"order", current},
                                  {"increment", prev_partial - block_start},
                                  {"alpha_example", example_alpha}});
            }

            ordered_json splits = ordered_json::array();
            bool split_ok = true;
            for (const auto& b : blocks) {
                const SplitReport r =
                    sigma_split_check(ce, b.at("alpha_example").get<std::int64_t>());
                const bool ok = r.max_abs_I <= 1e-9 && r.max_abs_II1 <= 1e-9 &&
                                r.min_II2_ratio >= 1.0 - 1e-9;
                split_ok = split_ok && ok;
                splits.push_back({{"alpha", r.alpha},
                                  {"max_abs_I", r.max_abs_I},
                                  {"max_abs_II1", r.max_abs_II1},
                                  {"min_II2_ratio", r.min_II2_ratio},
                                  {"max_split_error", r.max_split_error},
                                  {"pass", ok}});
            }

            ordered_json j;
            j["manifest"] = m.to_json();
            j["orders"] = ce.orders;
            j["weights"] = ce.weights;
            j["blocks"] = blocks;
            j["splits"] = splits;
            j["final_partial_sum"] = prev_partial;
            write_json(out_dir / "blocks.json", j);
            std::cout << (split_ok ? "sigma splits pass" : "sigma splits FAILED") << '\n';
            return split_ok ? 0 : 1;
        }

        if (*bench) {
            BenchReport report = run_bench(b_reps);
            report.manifest.seed = g.seed;
            report.manifest.threads = g.threads;
            write_json(out_dir / "bench.json", report.to_json());
            for (const BenchSize& s : report.sizes) {
                std::cout << "M_N=" << s.size << "  naive=" << s.naive_median_ms
                          << "ms  fast=" << s.fast_median_ms << "ms  speedup=" << s.speedup()
                          << "  max_deviation=" << s.max_deviation << '\n';
            }
            return report.fast_wins_at_largest ? 0 : 1;
        }
    } catch (const SelectionFailure& e) {
        std::cerr << "selection failure: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 2;
}
