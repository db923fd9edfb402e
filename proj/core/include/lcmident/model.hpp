#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "lcmident/dual.hpp"
#include "lcmident/graph.hpp"
#include "lcmident/matrix.hpp"
#include "lcmident/rational.hpp"

namespace lcmident {

/// One independent model parameter: the rate a(to,from) of an edge
/// from -> to, or the leak rate a(0,vertex).
struct Param {
    enum class Kind { Edge, Leak };

    Kind kind = Kind::Edge;
    int from = 0;    // edges only
    int to = 0;      // edges only
    int vertex = 0;  // leaks only

    static Param edge(int from, int to) { return {Kind::Edge, from, to, 0}; }
    static Param leak(int vertex) { return {Kind::Leak, 0, 0, vertex}; }

    /// "a(i,j)" for the edge j->i, "a(0,i)" for the leak at i.
    std::string name() const;

    friend auto operator<=>(const Param&, const Param&) = default;
};

/// The quadruple (G, In, Out, Leak).
class CompartmentModel {
  public:
    CompartmentModel(Digraph graph, std::set<int> inputs, std::set<int> outputs,
                     std::set<int> leaks);

    const Digraph& graph() const { return graph_; }
    int n() const { return graph_.n(); }
    const std::set<int>& inputs() const { return inputs_; }
    const std::set<int>& outputs() const { return outputs_; }
    const std::set<int>& leaks() const { return leaks_; }

    std::size_t edge_count() const { return graph_.edge_count(); }

    /// |E| + |Leak|
    std::size_t param_count() const { return params_.size(); }

    /// Edges in canonical edge order, then leaks by vertex.
    const std::vector<Param>& params() const { return params_; }

    std::size_t param_index(const Param& p) const;

    friend bool operator==(const CompartmentModel& a, const CompartmentModel& b) {
        return a.graph_ == b.graph_ && a.inputs_ == b.inputs_ && a.outputs_ == b.outputs_ &&
               a.leaks_ == b.leaks_;
    }

  private:
    Digraph graph_;
    std::set<int> inputs_;
    std::set<int> outputs_;
    std::set<int> leaks_;
    std::vector<Param> params_;
    std::map<Param, std::size_t> param_index_;
};

/// Exact rational value for every parameter of a model.
struct ParameterPoint {
    std::map<std::pair<int, int>, Rational> edge_rates;  // keyed by (from, to)
    std::map<int, Rational> leak_rates;

    /// Values in the model's parameter order; errors when the key sets do not
    /// match the model's edges and leaks exactly.
    std::vector<Rational> aligned(const CompartmentModel& model) const;

    static ParameterPoint from_aligned(const CompartmentModel& model,
                                       const std::vector<Rational>& values);
};

/// Deterministic sample with integer values in [1, 10^6], pairwise distinct.
ParameterPoint random_point(const CompartmentModel& model, std::uint64_t seed);

/// Structural diagnostics: connectivity, leak placement, input/output
/// placement, the 2|V|-2 edge-count condition, ISC status.
std::vector<std::string> validate(const CompartmentModel& model);

/// The compartmental matrix A(G) at the given parameter values (aligned with
/// model.params()).  Off-diagonal (i,j) holds the rate of edge j->i; each
/// diagonal (j,j) collects -leak_j - sum of outflow rates of j.
template <typename R>
Matrix<R> compartmental_matrix(const CompartmentModel& model, const std::vector<R>& values) {
    if (values.size() != model.param_count()) throw Error("parameter value count mismatch");
    const std::size_t n = static_cast<std::size_t>(model.n());
    Matrix<R> a(n, n);
    const auto& params = model.params();
    for (std::size_t s = 0; s < params.size(); ++s) {
        const Param& p = params[s];
        if (p.kind == Param::Kind::Edge) {
            a.at(static_cast<std::size_t>(p.to - 1), static_cast<std::size_t>(p.from - 1)) +=
                values[s];
            a.at(static_cast<std::size_t>(p.from - 1), static_cast<std::size_t>(p.from - 1)) -=
                values[s];
        } else {
            a.at(static_cast<std::size_t>(p.vertex - 1), static_cast<std::size_t>(p.vertex - 1)) -=
                values[s];
        }
    }
    return a;
}

Matrix<Rational> compartmental_matrix(const CompartmentModel& model, const ParameterPoint& point);

/// Parameter values lifted to duals, with the derivative slot of one
/// designated parameter seeded to 1.
std::vector<Dual> seeded_values(const CompartmentModel& model, const ParameterPoint& point,
                                std::size_t deriv_param);

/// A(G) over duals, differentiating with respect to params()[deriv_param].
Matrix<Dual> compartmental_matrix_seeded(const CompartmentModel& model,
                                         const ParameterPoint& point, std::size_t deriv_param);

}  // namespace lcmident
