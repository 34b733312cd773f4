#include "fairdiv/instance_io.hpp"

#include <fstream>
#include <set>
#include <stdexcept>

#include <json.hpp>

#include "fairdiv/generators.hpp"

namespace fairdiv {

using nlohmann::json;

namespace {

void reject_unknown_keys(const json& obj, const std::set<std::string>& allowed,
                         const std::string& where) {
    for (auto it = obj.begin(); it != obj.end(); ++it)
        if (!allowed.contains(it.key()))
            throw std::invalid_argument("unknown field \"" + it.key() + "\" in " + where);
}

std::vector<double> read_value_vector(const json& j, int m, const std::string& where) {
    if (!j.is_array() || static_cast<int>(j.size()) != m)
        throw std::invalid_argument(where + " must be an array of length m");
    std::vector<double> out;
    out.reserve(j.size());
    for (const auto& e : j) {
        if (!e.is_number()) throw std::invalid_argument(where + " entries must be numbers");
        const double v = e.get<double>();
        if (!(v >= 0.0)) throw std::invalid_argument(where + " entries must be nonnegative");
        out.push_back(v);
    }
    return out;
}

std::shared_ptr<const Valuation> agent_from_json(const json& a, int n, int m, int index) {
    const std::string where = "agents[" + std::to_string(index) + "]";
    if (!a.is_object()) throw std::invalid_argument(where + " must be an object");
    if (!a.contains("kind") || !a.at("kind").is_string())
        throw std::invalid_argument(where + " needs a string \"kind\"");
    const std::string kind = a.at("kind").get<std::string>();

    if (kind == "additive") {
        reject_unknown_keys(a, {"kind", "values"}, where);
        if (!a.contains("values")) throw std::invalid_argument(where + " needs \"values\"");
        return std::make_shared<AdditiveValuation>(read_value_vector(a.at("values"), m, where + ".values"));
    }
    if (kind == "xos") {
        reject_unknown_keys(a, {"kind", "clauses"}, where);
        if (!a.contains("clauses") || !a.at("clauses").is_array() || a.at("clauses").empty())
            throw std::invalid_argument(where + " needs a nonempty \"clauses\" array");
        std::vector<std::vector<double>> clauses;
        for (const auto& c : a.at("clauses"))
            clauses.push_back(read_value_vector(c, m, where + ".clauses[]"));
        return std::make_shared<XosValuation>(std::move(clauses));
    }
    if (kind == "budget_additive") {
        reject_unknown_keys(a, {"kind", "values", "cap"}, where);
        if (!a.contains("values") || !a.contains("cap"))
            throw std::invalid_argument(where + " needs \"values\" and \"cap\"");
        if (!a.at("cap").is_number() || !(a.at("cap").get<double>() >= 0.0))
            throw std::invalid_argument(where + ".cap must be a nonnegative number");
        return std::make_shared<BudgetAdditiveValuation>(
            read_value_vector(a.at("values"), m, where + ".values"), a.at("cap").get<double>());
    }
    if (kind == "coverage") {
        reject_unknown_keys(a, {"kind", "universe", "goods"}, where);
        if (!a.contains("universe") || !a.at("universe").is_number_integer())
            throw std::invalid_argument(where + " needs an integer \"universe\"");
        if (!a.contains("goods") || !a.at("goods").is_array() ||
            static_cast<int>(a.at("goods").size()) != m)
            throw std::invalid_argument(where + ".goods must be an array of length m");
        const int universe = a.at("universe").get<int>();
        std::vector<std::vector<int>> covers;
        for (const auto& cover : a.at("goods")) {
            if (!cover.is_array()) throw std::invalid_argument(where + ".goods entries must be arrays");
            std::vector<int> elems;
            for (const auto& e : cover) {
                if (!e.is_number_integer())
                    throw std::invalid_argument(where + ".goods elements must be integers");
                elems.push_back(e.get<int>());
            }
            covers.push_back(std::move(elems));
        }
        return std::make_shared<CoverageValuation>(universe, std::move(covers));
    }
    if (kind == "xos_hard") {
        reject_unknown_keys(a, {"kind", "n", "delta", "seed", "identical"}, where);
        for (const char* key : {"n", "delta", "seed", "identical"})
            if (!a.contains(key)) throw std::invalid_argument(where + " needs \"" + key + "\"");
        const int fam_n = a.at("n").get<int>();
        if (fam_n != n || m != fam_n * fam_n)
            throw std::invalid_argument(where + ": xos_hard needs n agents and n^2 goods");
        return std::make_shared<XosHardValuation>(fam_n, a.at("delta").get<double>(),
                                                  a.at("seed").get<std::uint64_t>(),
                                                  a.at("identical").get<bool>(), index);
    }
    throw std::invalid_argument(where + ": unknown oracle kind \"" + kind + "\"");
}

}  // namespace

Instance instance_from_json(const json& j) {
    if (!j.is_object()) throw std::invalid_argument("instance must be a JSON object");
    reject_unknown_keys(j, {"n", "m", "agents"}, "instance");
    for (const char* key : {"n", "m", "agents"})
        if (!j.contains(key)) throw std::invalid_argument(std::string("instance needs \"") + key + "\"");
    if (!j.at("n").is_number_integer() || !j.at("m").is_number_integer())
        throw std::invalid_argument("n and m must be integers");

    Instance inst;
    inst.n = j.at("n").get<int>();
    inst.m = j.at("m").get<int>();
    if (inst.n < 1) throw std::invalid_argument("n must be >= 1");
    if (inst.m < 0) throw std::invalid_argument("m must be >= 0");
    if (!j.at("agents").is_array() || static_cast<int>(j.at("agents").size()) != inst.n)
        throw std::invalid_argument("agents array length must equal n");
    for (int i = 0; i < inst.n; ++i)
        inst.agents.push_back(agent_from_json(j.at("agents")[static_cast<size_t>(i)], inst.n, inst.m, i));
    validate_instance(inst);
    return inst;
}

json instance_to_json(const Instance& inst) {
    json agents = json::array();
    for (const auto& a : inst.agents) agents.push_back(a->to_json());
    return json{{"n", inst.n}, {"m", inst.m}, {"agents", agents}};
}

std::string instance_to_string(const Instance& inst) {
    return instance_to_json(inst).dump(2) + "\n";
}

Instance load_instance(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open instance file: " + path);
    json j;
    try {
        in >> j;
    } catch (const json::parse_error& e) {
        throw std::invalid_argument("malformed JSON in " + path + ": " + e.what());
    }
    return instance_from_json(j);
}

void save_instance(const Instance& inst, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::invalid_argument("cannot write instance file: " + path);
    out << instance_to_string(inst);
}

}  // namespace fairdiv
