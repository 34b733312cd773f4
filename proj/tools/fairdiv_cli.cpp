// fairdiv — solve, verify, generate, and benchmark fair-division instances.
//
// Exit codes: 0 success (verify: all checks passed), 2 malformed input or
// parameters, 3 infeasible instance (m < n), 4 enumeration budget exceeded.

#include <chrono>
#include <cmath>
#include <fstream>
#include <iostream>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "fairdiv/allocator.hpp"
#include "fairdiv/errors.hpp"
#include "fairdiv/exact.hpp"
#include "fairdiv/generators.hpp"
#include "fairdiv/instance_io.hpp"
#include "fairdiv/welfare.hpp"

using namespace fairdiv;
using nlohmann::json;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double parse_p(const std::string& text) {
    if (text == "-inf") return -kInf;
    size_t used = 0;
    double p = 0.0;
    try {
        p = std::stod(text, &used);
    } catch (const std::exception&) {
        throw std::invalid_argument("cannot parse p: " + text);
    }
    if (used != text.size()) throw std::invalid_argument("cannot parse p: " + text);
    if (p > 1.0) throw std::invalid_argument("p must lie in (-inf, 1]");
    return p;
}

std::string format_p(double p) {
    if (std::isinf(p)) return p < 0 ? "-inf" : "inf";
    return json(p).dump();
}

std::string format_number(double x) {
    if (std::isinf(x)) return x < 0 ? "-inf" : "inf";
    return json(x).dump();
}

std::vector<double> load_eta(const std::string& path, int n) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open weight file: " + path);
    json j;
    try {
        in >> j;
    } catch (const json::parse_error& e) {
        throw std::invalid_argument(std::string("malformed weight file: ") + e.what());
    }
    if (!j.is_array() || static_cast<int>(j.size()) != n)
        throw std::invalid_argument("weight file must be an array of n numbers");
    std::vector<double> eta;
    for (const auto& e : j) {
        if (!e.is_number() || !(e.get<double>() >= 0.0))
            throw std::invalid_argument("weights must be nonnegative numbers");
        eta.push_back(e.get<double>());
    }
    return eta;
}

struct SolveOutcome {
    Allocation allocation;
    long long iterations = 0;
    long long queries = 0;
};

SolveOutcome run_algorithm(const Instance& inst, const std::string& algorithm,
                           const WelfareParam& param, double cap_factor, long long budget) {
    std::vector<std::shared_ptr<CountingOracle>> counters;
    const Instance counted = with_counting(inst, counters);
    SolveOutcome out;
    if (algorithm == "alg") {
        SolveResult r = alg_solve(counted, param, cap_factor);
        out.allocation = r.allocation;
        out.iterations = static_cast<long long>(r.trace.iterations.size());
        out.queries = r.trace.value_queries;
        return out;
    }
    if (algorithm == "combined" &&
        static_cast<long long>(inst.m) >= static_cast<long long>(inst.n) * inst.n) {
        if (param.p != 0.0) throw std::invalid_argument("combined solve is defined for p = 0");
        SolveResult r = alg_solve(counted, param, cap_factor);
        out.allocation = r.allocation;
        out.iterations = static_cast<long long>(r.trace.iterations.size());
        out.queries = r.trace.value_queries;
        return out;
    }
    if (algorithm == "matching") {
        out.allocation = matching_baseline(counted, param);
    } else if (algorithm == "combined") {
        out.allocation = combined_solve(counted, param);
    } else if (algorithm == "exact") {
        out.allocation = exact_optimum(counted, param, budget).allocation;
    } else {
        throw std::invalid_argument("unknown algorithm: " + algorithm);
    }
    for (const auto& c : counters) out.queries += c->count();
    return out;
}

json solve_report(const Instance& inst, const std::string& algorithm, const WelfareParam& param,
                  const SolveOutcome& out, double ms) {
    json bundles = json::array();
    for (const auto& b : out.allocation.bundles) bundles.push_back(b.items());
    const std::vector<double> values = out.allocation.values(inst);
    return json{{"algorithm", algorithm},
                {"p", std::isinf(param.p) ? json("-inf") : json(param.p)},
                {"n", inst.n},
                {"m", inst.m},
                {"allocation", bundles},
                {"bundle_values", values},
                {"welfare", p_mean(values, param)},
                {"iterations", out.iterations},
                {"value_queries", out.queries},
                {"ms", ms}};
}

int cmd_solve(const std::string& instance_path, const std::string& p_text,
              const std::string& algorithm, const std::string& eta_path,
              const std::string& out_path, double cap_factor, long long budget) {
    Instance inst = load_instance(instance_path);
    WelfareParam param{parse_p(p_text), {}};
    if (!eta_path.empty()) param.weights = load_eta(eta_path, inst.n);

    const auto t0 = std::chrono::steady_clock::now();
    SolveOutcome out = run_algorithm(inst, algorithm, param, cap_factor, budget);
    const double ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();

    const json report = solve_report(inst, algorithm, param, out, ms);
    if (out_path.empty()) {
        std::cout << report.dump(2) << "\n";
    } else {
        std::ofstream f(out_path);
        if (!f) throw std::invalid_argument("cannot write report file: " + out_path);
        f << report.dump(2) << "\n";
    }
    return 0;
}

// lhs >= rhs up to a relative slack with an absolute floor
bool ge_tol(double lhs, double rhs, double tol) {
    return lhs >= rhs - tol * std::max(1.0, std::abs(rhs));
}

int cmd_verify(const std::string& instance_path, const std::string& p_text,
               const std::string& seeds_text, double tol, int samples, long long budget) {
    Instance inst = load_instance(instance_path);
    const double p = parse_p(p_text);
    std::vector<std::uint64_t> seeds;
    {
        std::stringstream ss(seeds_text);
        std::string item;
        while (std::getline(ss, item, ',')) {
            if (item.empty()) continue;
            seeds.push_back(std::stoull(item));
        }
        if (seeds.empty()) seeds.push_back(0);
    }

    int failures = 0;
    auto report = [&](bool ok, const std::string& name, const std::string& detail = "") {
        std::cout << (ok ? "PASS " : "FAIL ") << name;
        if (!ok && !detail.empty()) std::cout << "  [" << detail << "]";
        std::cout << "\n";
        if (!ok) ++failures;
    };

    for (int i = 0; i < inst.n; ++i) {
        for (std::uint64_t seed : seeds) {
            AxiomReport axioms =
                check_axioms(*inst.agents[static_cast<size_t>(i)], inst.m, samples, seed, tol);
            std::string detail;
            if (!axioms.ok()) {
                const auto& v = axioms.violations.front();
                std::ostringstream os;
                os << v.axiom << " violated: " << v.lhs << " vs " << v.rhs;
                detail = os.str();
            }
            report(axioms.ok(), "axioms agent=" + std::to_string(i) + " seed=" + std::to_string(seed),
                   detail);
        }
    }

    if (inst.m < inst.n || inst.m == 0) {
        std::cout << "SKIP algorithm checks (no left-perfect matching on m=" << inst.m
                  << ", n=" << inst.n << ")\n";
        return failures == 0 ? 0 : 1;
    }

    WelfareParam param{p, {}};
    SolveResult solved;
    bool terminated = true;
    try {
        solved = alg_solve(inst, param);
    } catch (const DivergenceError& e) {
        terminated = false;
        report(false, "termination", e.what());
    }
    if (terminated) {
        report(static_cast<long long>(solved.trace.iterations.size()) <= alg_iteration_bound(inst),
               "termination within analytic bound");

        bool partition_ok = true;
        try {
            validate_allocation(solved.allocation, inst.n, inst.m);
            GoodSet all;
            for (const auto& b : solved.allocation.bundles) all = all.unioned(b);
            partition_ok = all == GoodSet::all(inst.m);
        } catch (const std::invalid_argument&) {
            partition_ok = false;
        }
        report(partition_ok, "output is a partition of the goods");

        std::vector<double> ell(static_cast<size_t>(inst.n));
        for (int i = 0; i < inst.n; ++i) ell[static_cast<size_t>(i)] = exact_ell(inst, i, budget);

        bool bundle_floor = true, gamma_floor = true;
        std::string bundle_detail, gamma_detail;
        const double keep = 1.0 - 1.0 / static_cast<double>(inst.m);
        for (size_t t = 0; t < solved.trace.iterations.size(); ++t) {
            const auto& rec = solved.trace.iterations[t];
            for (int i = 0; i < inst.n; ++i) {
                const double have = inst.value(i, rec.phase_bundles[static_cast<size_t>(i)]);
                if (!(have >= ell[static_cast<size_t>(i)] * (1.0 - tol))) {
                    bundle_floor = false;
                    std::ostringstream os;
                    os << "t=" << t << " agent=" << i << " v(B)=" << have
                       << " ell=" << ell[static_cast<size_t>(i)];
                    bundle_detail = os.str();
                }
                if (!(rec.gamma[static_cast<size_t>(i)] >= keep * ell[static_cast<size_t>(i)] * (1.0 - tol))) {
                    gamma_floor = false;
                    std::ostringstream os;
                    os << "t=" << t << " agent=" << i << " gamma=" << rec.gamma[static_cast<size_t>(i)]
                       << " ell=" << ell[static_cast<size_t>(i)];
                    gamma_detail = os.str();
                }
            }
        }
        report(bundle_floor, "every iteration bundle reaches the proportional floor", bundle_detail);
        report(gamma_floor, "gamma estimates stay above (1-1/m) * floor", gamma_detail);

        const ExactResult opt = exact_optimum(inst, param, budget);
        const double achieved = p_mean(solved.allocation.values(inst), param);
        const double needed = (1.0 - 1.0 / inst.m) * opt.welfare / (8.0 * inst.n);
        {
            std::ostringstream os;
            os << "welfare=" << achieved << " optimum=" << opt.welfare << " required=" << needed;
            report(ge_tol(achieved, needed, tol), "welfare within (1-1/m)/(8n) of the optimum",
                   os.str());
        }

        bool single_good = true;
        std::string lemma_detail;
        for (int i = 0; i < inst.n; ++i) {
            double best = 0.0;
            for (int g : opt.allocation.bundles[static_cast<size_t>(i)].items())
                best = std::max(best, inst.value(i, GoodSet({g})));
            const double lhs = best + ell[static_cast<size_t>(i)];
            const double rhs =
                inst.value(i, opt.allocation.bundles[static_cast<size_t>(i)]) / (4.0 * inst.n);
            if (!ge_tol(lhs, rhs, tol)) {
                single_good = false;
                std::ostringstream os;
                os << "agent=" << i << " best+ell=" << lhs << " needed=" << rhs;
                lemma_detail = os.str();
            }
        }
        report(single_good, "some optimal good plus the floor covers v(opt)/(4n)", lemma_detail);
    }

    return failures == 0 ? 0 : 1;
}

int cmd_generate(const std::string& family, const std::string& kind, int n, int m,
                 std::uint64_t seed, double delta, bool identical, const std::string& s_text,
                 const RandomParams& params, const std::string& out_path) {
    Instance inst;
    if (family == "random") {
        inst = gen_random(oracle_kind_from_string(kind), n, m, seed, params);
    } else if (family == "xos_hard") {
        inst = gen_xos_hard(n, delta, seed, identical);
    } else if (family == "partition") {
        std::vector<long long> s;
        std::stringstream ss(s_text);
        std::string item;
        while (std::getline(ss, item, ',')) {
            if (item.empty()) continue;
            try {
                s.push_back(std::stoll(item));
            } catch (const std::exception&) {
                throw std::invalid_argument("cannot parse --s entry: " + item);
            }
        }
        inst = gen_partition_reduction(s);
    } else {
        throw std::invalid_argument("unknown family: " + family);
    }
    if (out_path.empty()) {
        std::cout << instance_to_string(inst);
    } else {
        save_instance(inst, out_path);
    }
    return 0;
}

Instance make_random_cell(const json& spec, std::uint64_t seed) {
    RandomParams params;
    if (spec.contains("clauses")) params.clauses = spec.at("clauses").get<int>();
    if (spec.contains("cap_fraction")) params.cap_fraction = spec.at("cap_fraction").get<double>();
    if (spec.contains("universe")) params.universe = spec.at("universe").get<int>();
    if (spec.contains("density")) params.density = spec.at("density").get<double>();
    return gen_random(oracle_kind_from_string(spec.at("kind").get<std::string>()),
                      spec.at("n").get<int>(), spec.at("m").get<int>(), seed, params);
}

Instance make_xos_hard_cell(const json& spec, std::uint64_t seed) {
    return gen_xos_hard(spec.at("n").get<int>(), spec.at("delta").get<double>(), seed,
                        spec.value("identical", false));
}

Instance make_partition_cell(const json& spec, std::uint64_t) {
    return gen_partition_reduction(spec.at("s").get<std::vector<long long>>());
}

struct BenchmarkCell {
    std::string label;
    Instance (*make)(const json&, std::uint64_t);
    json spec;
};

struct BenchmarkRow {
    std::string family;
    int n = 0, m = 0;
    double p = 0.0;
    std::uint64_t seed = 0;
    std::string algorithm;
    std::string welfare, opt, ratio, iterations, queries;
    double ms = 0.0;
};

int cmd_benchmark(const std::string& config_path, const std::string& out_path) {
    std::ifstream in(config_path);
    if (!in) throw std::invalid_argument("cannot open config: " + config_path);
    json cfg;
    try {
        in >> cfg;
    } catch (const json::parse_error& e) {
        throw std::invalid_argument(std::string("malformed config: ") + e.what());
    }
    for (const char* key : {"cells", "p_values", "seeds", "algorithms"})
        if (!cfg.contains(key))
            throw std::invalid_argument(std::string("config needs \"") + key + "\"");
    const long long budget = cfg.value("exact_budget", kDefaultEnumBudget);

    std::vector<BenchmarkCell> cells;
    for (const auto& spec : cfg.at("cells")) {
        const std::string family = spec.at("family").get<std::string>();
        if (family == "random")
            cells.push_back({spec.at("kind").get<std::string>(), &make_random_cell, spec});
        else if (family == "xos_hard")
            cells.push_back({"xos_hard", &make_xos_hard_cell, spec});
        else if (family == "partition")
            cells.push_back({"partition", &make_partition_cell, spec});
        else
            throw std::invalid_argument("unknown family: " + family);
    }
    std::vector<double> p_values;
    for (const auto& pv : cfg.at("p_values"))
        p_values.push_back(pv.is_string() ? parse_p(pv.get<std::string>()) : parse_p(pv.dump()));
    const auto seeds = cfg.at("seeds").get<std::vector<std::uint64_t>>();
    const auto algorithms = cfg.at("algorithms").get<std::vector<std::string>>();
    for (const auto& algorithm : algorithms)
        if (algorithm != "alg" && algorithm != "matching" && algorithm != "combined" &&
            algorithm != "exact")
            throw std::invalid_argument("unknown algorithm: " + algorithm);

    std::vector<BenchmarkRow> rows;
    for (const auto& cell : cells) {
        for (std::uint64_t seed : seeds) {
            const Instance inst = cell.make(cell.spec, seed);
            for (double p : p_values) {
                const WelfareParam param{p, {}};
                double opt_welfare = 0.0;
                bool have_opt = false;
                try {
                    opt_welfare = exact_optimum(inst, param, budget).welfare;
                    have_opt = true;
                } catch (const BudgetError&) {
                    have_opt = false;
                }
                for (const auto& algorithm : algorithms) {
                    BenchmarkRow row;
                    row.family = cell.label;
                    row.n = inst.n;
                    row.m = inst.m;
                    row.p = p;
                    row.seed = seed;
                    row.algorithm = algorithm;
                    const auto t0 = std::chrono::steady_clock::now();
                    try {
                        SolveOutcome out = run_algorithm(inst, algorithm, param, 2.0, budget);
                        const double welfare = p_mean(out.allocation.values(inst), param);
                        row.welfare = format_number(welfare);
                        row.iterations = std::to_string(out.iterations);
                        row.queries = std::to_string(out.queries);
                        if (have_opt) {
                            row.opt = format_number(opt_welfare);
                            double ratio;
                            if (welfare == 0.0)
                                ratio = opt_welfare == 0.0 ? 1.0 : kInf;
                            else
                                ratio = opt_welfare / welfare;
                            row.ratio = format_number(ratio);
                        }
                    } catch (const BudgetError&) {
                        // exact over budget: result columns stay blank
                    } catch (const std::invalid_argument&) {
                        // algorithm undefined at this p (e.g. matching at p > 0)
                    }
                    row.ms = std::chrono::duration<double, std::milli>(
                                 std::chrono::steady_clock::now() - t0)
                                 .count();
                    rows.push_back(std::move(row));
                }
            }
        }
    }

    std::stable_sort(rows.begin(), rows.end(), [](const BenchmarkRow& a, const BenchmarkRow& b) {
        auto key = [](const BenchmarkRow& r) {
            return std::tuple(r.family, r.n, r.m, r.p, r.seed, r.algorithm);
        };
        return key(a) < key(b);
    });

    std::ostringstream csv;
    csv << "family,n,m,p,seed,algorithm,welfare,opt_welfare,ratio,iterations,queries,ms\n";
    for (const auto& r : rows)
        csv << r.family << ',' << r.n << ',' << r.m << ',' << format_p(r.p) << ',' << r.seed << ','
            << r.algorithm << ',' << r.welfare << ',' << r.opt << ',' << r.ratio << ','
            << r.iterations << ',' << r.queries << ',' << r.ms << "\n";

    if (out_path.empty()) {
        std::cout << csv.str();
    } else {
        std::ofstream f(out_path);
        if (!f) throw std::invalid_argument("cannot write csv: " + out_path);
        f << csv.str();
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"p-mean welfare solvers for indivisible goods under subadditive valuations"};
    app.require_subcommand(1);

    std::string instance_path, p_text = "0", algorithm = "alg", eta_path, out_path;
    double cap_factor = 2.0;
    long long budget = kDefaultEnumBudget;
    auto* solve = app.add_subcommand("solve", "allocate one instance and report the result");
    solve->add_option("--instance", instance_path, "instance JSON file")->required();
    solve->add_option("--p", p_text, "welfare exponent (decimal or -inf)");
    solve->add_option("--algorithm", algorithm, "alg | matching | combined | exact")
        ->check(CLI::IsMember({"alg", "matching", "combined", "exact"}));
    solve->add_option("--eta", eta_path, "JSON array of per-agent weights");
    solve->add_option("--out", out_path, "write the report here instead of stdout");
    solve->add_option("--cap-factor", cap_factor, "iteration cap multiplier");
    solve->add_option("--budget", budget, "enumeration budget for --algorithm exact");

    std::string v_instance, v_p = "0", v_seeds = "0";
    double v_tol = 1e-9;
    int v_samples = 200;
    long long v_budget = kDefaultEnumBudget;
    auto* verify = app.add_subcommand("verify", "run the invariant suite against one instance");
    verify->add_option("--instance", v_instance, "instance JSON file")->required();
    verify->add_option("--p", v_p, "welfare exponent (decimal or -inf)");
    verify->add_option("--seeds", v_seeds, "comma-separated axiom-sampling seeds");
    verify->add_option("--tol", v_tol, "relative tolerance for the checks");
    verify->add_option("--samples", v_samples, "axiom-check sample pairs per seed");
    verify->add_option("--budget", v_budget, "enumeration budget for the exact oracles");

    std::string g_family, g_kind = "additive", g_s, g_out;
    int g_n = 2, g_m = 4;
    std::uint64_t g_seed = 0;
    double g_delta = 0.1;
    bool g_identical = false;
    RandomParams g_params;
    auto* generate = app.add_subcommand("generate", "write a seeded instance file");
    generate->add_option("--family", g_family, "random | xos_hard | partition")->required();
    generate->add_option("--kind", g_kind,
                         "random family: additive | xos | budget_additive | coverage");
    generate->add_option("--n", g_n, "agent count");
    generate->add_option("--m", g_m, "good count (random family)");
    generate->add_option("--seed", g_seed, "generator seed");
    generate->add_option("--delta", g_delta, "xos_hard delta in (0, 1/4)");
    generate->add_flag("--identical", g_identical, "xos_hard: all agents share the common function");
    generate->add_option("--s", g_s, "partition family: comma-separated positive integers");
    generate->add_option("--clauses", g_params.clauses, "xos clause count");
    generate->add_option("--cap-fraction", g_params.cap_fraction, "budget-additive cap fraction");
    generate->add_option("--universe", g_params.universe, "coverage universe size (0 = 2m)");
    generate->add_option("--density", g_params.density, "coverage inclusion probability");
    generate->add_option("--out", g_out, "output file (stdout when omitted)");

    std::string b_config, b_out;
    auto* benchmark = app.add_subcommand("benchmark", "run a grid of solves and emit CSV");
    benchmark->add_option("--config", b_config, "benchmark config JSON")->required();
    benchmark->add_option("--out", b_out, "output CSV file (stdout when omitted)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (solve->parsed())
            return cmd_solve(instance_path, p_text, algorithm, eta_path, out_path, cap_factor, budget);
        if (verify->parsed()) return cmd_verify(v_instance, v_p, v_seeds, v_tol, v_samples, v_budget);
        if (generate->parsed())
            return cmd_generate(g_family, g_kind, g_n, g_m, g_seed, g_delta, g_identical, g_s,
                                g_params, g_out);
        if (benchmark->parsed()) return cmd_benchmark(b_config, b_out);
    } catch (const BudgetError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 4;
    } catch (const InfeasibleError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
