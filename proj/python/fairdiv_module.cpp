#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <limits>
#include <memory>
#include <string>
#include <vector>

#include <json.hpp>

#include "fairdiv/allocator.hpp"
#include "fairdiv/errors.hpp"
#include "fairdiv/exact.hpp"
#include "fairdiv/generators.hpp"
#include "fairdiv/instance_io.hpp"
#include "fairdiv/matching.hpp"
#include "fairdiv/welfare.hpp"

namespace py = pybind11;
using namespace fairdiv;

namespace {

WelfareParam make_param(double p, const std::vector<double>& weights) {
    return WelfareParam{p, weights};
}

std::vector<std::vector<int>> bundles_to_lists(const Allocation& alloc) {
    std::vector<std::vector<int>> out;
    out.reserve(alloc.bundles.size());
    for (const auto& b : alloc.bundles) out.push_back(b.items());
    return out;
}

py::dict solve_dict(const Instance& inst, const WelfareParam& param, const Allocation& alloc,
                    long long iterations, long long queries) {
    py::dict d;
    d["allocation"] = bundles_to_lists(alloc);
    d["bundle_values"] = alloc.values(inst);
    d["welfare"] = p_mean(alloc.values(inst), param);
    d["iterations"] = iterations;
    d["value_queries"] = queries;
    return d;
}

WeightMatrix matrix_from_lists(const std::vector<std::vector<double>>& rows) {
    if (rows.empty()) throw std::invalid_argument("weight matrix needs at least one row");
    WeightMatrix w(static_cast<int>(rows.size()), static_cast<int>(rows.front().size()));
    for (int i = 0; i < w.rows(); ++i) {
        if (static_cast<int>(rows[static_cast<size_t>(i)].size()) != w.cols())
            throw std::invalid_argument("ragged weight matrix");
        for (int j = 0; j < w.cols(); ++j) w.at(i, j) = rows[static_cast<size_t>(i)][static_cast<size_t>(j)];
    }
    return w;
}

py::dict matching_dict(const MatchingResult& r) {
    py::dict d;
    d["assignment"] = r.assignment;
    d["objective"] = r.objective;
    d["used_sentinel"] = r.used_sentinel;
    return d;
}

}  // namespace

PYBIND11_MODULE(fairdiv, m) {
    m.doc() = "Approximate p-mean welfare maximization for indivisible goods under "
              "subadditive valuations, with exact small-scale oracles.";

    py::register_exception<InfeasibleError>(m, "InfeasibleError");
    py::register_exception<BudgetError>(m, "BudgetError");
    py::register_exception<DivergenceError>(m, "DivergenceError");

    py::class_<Instance>(m, "Instance")
        .def_readonly("n", &Instance::n)
        .def_readonly("m", &Instance::m)
        .def("value",
             [](const Instance& inst, int agent, const std::vector<int>& goods) {
                 if (agent < 0 || agent >= inst.n) throw std::invalid_argument("agent out of range");
                 return inst.value(agent, GoodSet(goods));
             },
             py::arg("agent"), py::arg("goods"))
        .def("to_json", [](const Instance& inst) { return instance_to_string(inst); })
        .def("__repr__", [](const Instance& inst) {
            return "<fairdiv.Instance n=" + std::to_string(inst.n) + " m=" + std::to_string(inst.m) + ">";
        });

    m.def("loads", [](const std::string& text) { return instance_from_json(nlohmann::json::parse(text)); },
          py::arg("text"), "Parse an instance from a JSON string.");
    m.def("load", &load_instance, py::arg("path"), "Load an instance JSON file.");
    m.def("save", &save_instance, py::arg("instance"), py::arg("path"));

    m.def("gen_random",
          [](const std::string& kind, int n, int m, std::uint64_t seed, int clauses,
             double cap_fraction, int universe, double density) {
              RandomParams params{clauses, cap_fraction, universe, density};
              return gen_random(oracle_kind_from_string(kind), n, m, seed, params);
          },
          py::arg("kind"), py::arg("n"), py::arg("m"), py::arg("seed"), py::arg("clauses") = 3,
          py::arg("cap_fraction") = 0.5, py::arg("universe") = 0, py::arg("density") = 0.3);
    m.def("gen_xos_hard", &gen_xos_hard, py::arg("n"), py::arg("delta"), py::arg("seed"),
          py::arg("identical"));
    m.def("gen_partition_reduction", &gen_partition_reduction, py::arg("s"));
    m.def("partition_target", &partition_target, py::arg("s"), py::arg("p"));

    m.def("p_mean",
          [](const std::vector<double>& values, double p, const std::vector<double>& weights) {
              return p_mean(values, make_param(p, weights));
          },
          py::arg("values"), py::arg("p"), py::arg("weights") = std::vector<double>{});
    m.def("nsw", [](const std::vector<double>& values) { return nsw(values); }, py::arg("values"));
    m.def("effective_p", &effective_p, py::arg("p"), py::arg("n"));

    m.def("alg_solve",
          [](const Instance& inst, double p, const std::vector<double>& weights, double cap_factor) {
              const WelfareParam param = make_param(p, weights);
              SolveResult r = alg_solve(inst, param, cap_factor);
              return solve_dict(inst, param, r.allocation,
                                static_cast<long long>(r.trace.iterations.size()),
                                r.trace.value_queries);
          },
          py::arg("instance"), py::arg("p") = 0.0, py::arg("weights") = std::vector<double>{},
          py::arg("cap_factor") = 2.0);
    m.def("matching_baseline",
          [](const Instance& inst, double p) {
              const WelfareParam param = make_param(p, {});
              return solve_dict(inst, param, matching_baseline(inst, param), 0, 0);
          },
          py::arg("instance"), py::arg("p") = 0.0);
    m.def("combined_solve",
          [](const Instance& inst, double p) {
              const WelfareParam param = make_param(p, {});
              return solve_dict(inst, param, combined_solve(inst, param), 0, 0);
          },
          py::arg("instance"), py::arg("p") = 0.0);

    m.def("exact_optimum",
          [](const Instance& inst, double p, const std::vector<double>& weights, long long budget) {
              const WelfareParam param = make_param(p, weights);
              ExactResult r = exact_optimum(inst, param, budget);
              py::dict d;
              d["allocation"] = bundles_to_lists(r.allocation);
              d["welfare"] = r.welfare;
              d["enumerated"] = r.enumerated;
              return d;
          },
          py::arg("instance"), py::arg("p") = 0.0, py::arg("weights") = std::vector<double>{},
          py::arg("budget") = kDefaultEnumBudget);
    m.def("exact_ell", &exact_ell, py::arg("instance"), py::arg("agent"),
          py::arg("budget") = kDefaultEnumBudget);
    m.def("measure_ratio",
          [](const Instance& inst, double p, const std::vector<std::vector<int>>& bundles,
             long long budget) {
              Allocation alloc;
              for (const auto& b : bundles) alloc.bundles.emplace_back(b);
              return measure_ratio(inst, make_param(p, {}), alloc, budget);
          },
          py::arg("instance"), py::arg("p"), py::arg("allocation"),
          py::arg("budget") = kDefaultEnumBudget);

    m.def("check_axioms",
          [](const Instance& inst, int agent, int samples, std::uint64_t seed) {
              if (agent < 0 || agent >= inst.n) throw std::invalid_argument("agent out of range");
              AxiomReport report =
                  check_axioms(*inst.agents[static_cast<size_t>(agent)], inst.m, samples, seed);
              std::vector<std::string> violations;
              for (const auto& v : report.violations) violations.push_back(v.axiom);
              py::dict d;
              d["ok"] = report.ok();
              d["checks"] = report.checks;
              d["exhaustive"] = report.exhaustive;
              d["violations"] = violations;
              return d;
          },
          py::arg("instance"), py::arg("agent"), py::arg("samples") = 200, py::arg("seed") = 0);

    m.def("max_weight_matching",
          [](const std::vector<std::vector<double>>& w) { return matching_dict(max_weight_matching(matrix_from_lists(w))); });
    m.def("min_weight_matching",
          [](const std::vector<std::vector<double>>& w) { return matching_dict(min_weight_matching(matrix_from_lists(w))); });
    m.def("bottleneck_matching",
          [](const std::vector<std::vector<double>>& w) { return matching_dict(bottleneck_matching(matrix_from_lists(w))); });

    m.def("alg_iteration_bound", &alg_iteration_bound, py::arg("instance"));

    m.attr("__version__") = "0.1.0";
}
