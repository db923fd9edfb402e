#include "lcmident/model.hpp"

#include <algorithm>
#include <set>
#include <string>

#include "lcmident/errors.hpp"
#include "lcmident/rng.hpp"

namespace lcmident {

std::string Param::name() const {
    if (kind == Kind::Edge)
        return "a(" + std::to_string(to) + "," + std::to_string(from) + ")";
    return "a(0," + std::to_string(vertex) + ")";
}

CompartmentModel::CompartmentModel(Digraph graph, std::set<int> inputs, std::set<int> outputs,
                                   std::set<int> leaks)
    : graph_(std::move(graph)),
      inputs_(std::move(inputs)),
      outputs_(std::move(outputs)),
      leaks_(std::move(leaks)) {
    if (graph_.n() < 1) throw Error("model requires at least one compartment");
    const auto check = [&](const std::set<int>& s, const char* what) {
        for (const int v : s)
            if (v < 1 || v > graph_.n())
                throw Error(std::string(what) + " vertex out of range: " + std::to_string(v));
    };
    check(inputs_, "input");
    check(outputs_, "output");
    check(leaks_, "leak");
    for (const auto& [from, to] : graph_.edges()) params_.push_back(Param::edge(from, to));
    for (const int v : leaks_) params_.push_back(Param::leak(v));
    for (std::size_t s = 0; s < params_.size(); ++s) param_index_[params_[s]] = s;
}

std::size_t CompartmentModel::param_index(const Param& p) const {
    const auto it = param_index_.find(p);
    if (it == param_index_.end()) throw Error("unknown parameter " + p.name());
    return it->second;
}

std::vector<Rational> ParameterPoint::aligned(const CompartmentModel& model) const {
    if (edge_rates.size() != model.edge_count() ||
        leak_rates.size() != model.leaks().size())
        throw Error("parameter point does not match the model's edges and leaks");
    std::vector<Rational> values;
    values.reserve(model.param_count());
    for (const Param& p : model.params()) {
        if (p.kind == Param::Kind::Edge) {
            const auto it = edge_rates.find({p.from, p.to});
            if (it == edge_rates.end())
                throw Error("parameter point missing edge rate " + p.name());
            values.push_back(it->second);
        } else {
            const auto it = leak_rates.find(p.vertex);
            if (it == leak_rates.end())
                throw Error("parameter point missing leak rate " + p.name());
            values.push_back(it->second);
        }
    }
    return values;
}

ParameterPoint ParameterPoint::from_aligned(const CompartmentModel& model,
                                            const std::vector<Rational>& values) {
    if (values.size() != model.param_count()) throw Error("parameter value count mismatch");
    ParameterPoint point;
    const auto& params = model.params();
    for (std::size_t s = 0; s < params.size(); ++s) {
        if (params[s].kind == Param::Kind::Edge)
            point.edge_rates[{params[s].from, params[s].to}] = values[s];
        else
            point.leak_rates[params[s].vertex] = values[s];
    }
    return point;
}

ParameterPoint random_point(const CompartmentModel& model, std::uint64_t seed) {
    PointSampler sampler(seed);
    std::set<long> used;
    std::vector<Rational> values;
    values.reserve(model.param_count());
    for (std::size_t s = 0; s < model.param_count(); ++s) {
        long v = sampler.next();
        while (used.count(v) != 0) v = sampler.next();
        used.insert(v);
        values.push_back(Rational(v));
    }
    return ParameterPoint::from_aligned(model, values);
}

std::vector<std::string> validate(const CompartmentModel& model) {
    std::vector<std::string> out;
    const int n = model.n();
    const std::size_t e = model.edge_count();
    out.push_back("compartments: " + std::to_string(n) + ", edges: " + std::to_string(e) +
                  ", parameters: " + std::to_string(model.param_count()));

    const bool sc = is_strongly_connected(model.graph());
    out.push_back(sc ? "strongly connected" : "not strongly connected");

    const auto isc = inductively_strongly_connected(model.graph(), 1);
    if (isc) {
        std::string s = "inductively strongly connected w.r.t. 1, ordering (";
        for (std::size_t i = 0; i < isc->size(); ++i)
            s += (i ? "," : "") + std::to_string((*isc)[i]);
        out.push_back(s + ")");
    } else {
        out.push_back("not inductively strongly connected w.r.t. 1");
    }

    const std::size_t expected = 2 * static_cast<std::size_t>(n) - 2;
    if (e == expected) {
        out.push_back("|E| = 2|V|-2 = " + std::to_string(e));
    } else {
        out.push_back("|E| = " + std::to_string(e) + " (2|V|-2 = " + std::to_string(expected) +
                      ")");
    }

    const auto& leaks = model.leaks();
    if (leaks.empty()) {
        out.push_back("no leaks");
    } else if (leaks.size() == static_cast<std::size_t>(n)) {
        out.push_back("leaks in every compartment");
    } else if (leaks.size() == 1) {
        out.push_back("single leak at " + std::to_string(*leaks.begin()));
    } else {
        std::string s = "leaks at {";
        bool first = true;
        for (const int v : leaks) {
            s += (first ? "" : ",") + std::to_string(v);
            first = false;
        }
        out.push_back(s + "}");
    }

    if (model.inputs().empty()) out.push_back("no inputs: analysis unavailable");
    if (model.outputs().empty()) out.push_back("no outputs: analysis unavailable");

    const bool first_in_both = model.inputs().count(1) != 0 && model.outputs().count(1) != 0;
    out.push_back(first_in_both ? "1 in In and Out" : "1 not in In and Out");

    bool covered = true;
    for (const int v : leaks)
        if (model.inputs().count(v) == 0 && model.outputs().count(v) == 0) covered = false;
    out.push_back(covered ? "Leak within In union Out" : "Leak not within In union Out");
    return out;
}

Matrix<Rational> compartmental_matrix(const CompartmentModel& model, const ParameterPoint& point) {
    return compartmental_matrix<Rational>(model, point.aligned(model));
}

std::vector<Dual> seeded_values(const CompartmentModel& model, const ParameterPoint& point,
                                std::size_t deriv_param) {
    const std::vector<Rational> base = point.aligned(model);
    if (deriv_param >= base.size()) throw Error("derivative parameter index out of range");
    std::vector<Dual> values;
    values.reserve(base.size());
    for (std::size_t s = 0; s < base.size(); ++s)
        values.push_back(s == deriv_param ? Dual::seeded(base[s]) : Dual(base[s]));
    return values;
}

Matrix<Dual> compartmental_matrix_seeded(const CompartmentModel& model,
                                         const ParameterPoint& point, std::size_t deriv_param) {
    return compartmental_matrix<Dual>(model, seeded_values(model, point, deriv_param));
}

}  // namespace lcmident
