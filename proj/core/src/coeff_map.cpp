#include "lcmident/coeff_map.hpp"

#include <cstdint>
#include <string>

#include "lcmident/errors.hpp"
#include "lcmident/rng.hpp"

namespace lcmident {

namespace {

bool relatively_prime_expected(const CompartmentModel& model) {
    return is_strongly_connected(model.graph()) && !model.leaks().empty();
}

std::uint64_t fold_point(const ParameterPoint& point) {
    std::uint64_t h = 0x6c6d6964656e7421ULL;
    for (const auto& [key, value] : point.edge_rates)
        h = mix_seed(h, value.fold() ^ static_cast<std::uint64_t>(key.first * 131 + key.second));
    for (const auto& [vertex, value] : point.leak_rates)
        h = mix_seed(h, value.fold() ^ static_cast<std::uint64_t>(vertex));
    return h;
}

}  // namespace

template <typename R>
IoEquationT<R> io_equation_at(const CompartmentModel& model, const std::vector<R>& values,
                              int output) {
    if (model.outputs().count(output) == 0)
        throw Error("vertex " + std::to_string(output) + " is not an output");
    if (model.inputs().empty()) throw Error("model has no inputs");

    const Matrix<R> a = compartmental_matrix<R>(model, values);
    IoEquationT<R> eq;
    eq.output = output;
    eq.lhs = char_poly(a);

    for (const int j : model.inputs()) {
        Polynomial<R> m = minor_det_poly(a, j, output);
        if ((output + j) % 2 != 0) m = -m;
        eq.rhs.emplace_back(j, std::move(m));
    }

    Polynomial<R> g = eq.lhs;
    for (const auto& [j, rhs] : eq.rhs)
        if (!rhs.is_zero()) g = poly_gcd_monic(g, rhs);
    eq.gcd_degree = g.degree();

    if (eq.gcd_degree > 0) {
        if (relatively_prime_expected(model))
            throw DegeneratePointError(
                "common factor of degree " + std::to_string(eq.gcd_degree) +
                " at the sampled point; a strongly connected model with a leak has coprime "
                "input-output polynomials at generic points");
        auto [lq, lr] = poly_divmod(eq.lhs, g);
        if (!lr.is_zero()) throw DegeneratePointError("inexact removal of the common factor");
        eq.lhs = std::move(lq);
        for (auto& [j, rhs] : eq.rhs) {
            if (rhs.is_zero()) continue;
            auto [rq, rr] = poly_divmod(rhs, g);
            if (!rr.is_zero()) throw DegeneratePointError("inexact removal of the common factor");
            rhs = std::move(rq);
        }
        eq.warnings.push_back("removed a common factor of degree " +
                              std::to_string(eq.gcd_degree) +
                              " from the input-output equation; the model is not strongly "
                              "connected with a leak, so the reduced equation is the minimal one");
    }
    return eq;
}

template IoEquationT<Rational> io_equation_at(const CompartmentModel&,
                                              const std::vector<Rational>&, int);
template IoEquationT<Dual> io_equation_at(const CompartmentModel&, const std::vector<Dual>&, int);

IoEquationResult io_equation(const CompartmentModel& model, const ParameterPoint& point,
                             int output) {
    ParameterPoint current = point;
    for (int attempt = 0;; ++attempt) {
        try {
            return {io_equation_at<Rational>(model, current.aligned(model), output), current};
        } catch (const DegeneratePointError&) {
            if (attempt >= 5)
                throw Error(
                    "input-output equation kept a common factor across five fresh points; "
                    "giving up");
            current = random_point(model, mix_seed(fold_point(point),
                                                   static_cast<std::uint64_t>(attempt)));
        }
    }
}

IoEquationResult io_equation(const CompartmentModel& model, std::uint64_t seed, int output) {
    for (int attempt = 0;; ++attempt) {
        const ParameterPoint point =
            random_point(model, mix_seed(seed, static_cast<std::uint64_t>(attempt)));
        try {
            return {io_equation_at<Rational>(model, point.aligned(model), output), point};
        } catch (const DegeneratePointError&) {
            if (attempt >= 5)
                throw Error(
                    "input-output equation kept a common factor across five fresh points; "
                    "giving up");
        }
    }
}

CoeffLayout coefficient_layout(const CompartmentModel& model) {
    if (model.inputs().empty() || model.outputs().empty())
        throw Error("the coefficient map requires at least one input and one output");
    CoeffLayout layout;
    const int n = model.n();
    for (const int i : model.outputs()) {
        for (int p = 0; p < n; ++p) layout.slots.push_back({i, 0, p});
        for (const int j : model.inputs())
            for (int p = 0; p < n; ++p) layout.slots.push_back({i, j, p});
    }
    return layout;
}

template <typename R>
std::vector<R> coefficient_values(const CompartmentModel& model, const std::vector<R>& values,
                                  const CoeffLayout& layout) {
    std::vector<R> out;
    out.reserve(layout.size());
    int current_output = 0;
    IoEquationT<R> eq;
    for (const CoeffSlot& slot : layout.slots) {
        if (slot.output != current_output) {
            eq = io_equation_at<R>(model, values, slot.output);
            current_output = slot.output;
        }
        if (slot.input == 0) {
            out.push_back(eq.lhs.coeff(static_cast<std::size_t>(slot.power)));
        } else {
            const Polynomial<R>* rhs = nullptr;
            for (const auto& [j, poly] : eq.rhs)
                if (j == slot.input) rhs = &poly;
            if (rhs == nullptr) throw Error("layout slot for an unknown input");
            out.push_back(rhs->coeff(static_cast<std::size_t>(slot.power)));
        }
    }
    return out;
}

template std::vector<Rational> coefficient_values(const CompartmentModel&,
                                                  const std::vector<Rational>&,
                                                  const CoeffLayout&);
template std::vector<Dual> coefficient_values(const CompartmentModel&, const std::vector<Dual>&,
                                              const CoeffLayout&);

CoefficientVector coefficient_map(const CompartmentModel& model, const ParameterPoint& point) {
    CoefficientVector cv;
    cv.layout = coefficient_layout(model);
    cv.values = coefficient_values<Rational>(model, point.aligned(model), cv.layout);
    return cv;
}

Polynomial<Rational> char_poly_cycle_oracle(const CompartmentModel& model,
                                            const ParameterPoint& point) {
    const int n = model.n();
    if (n > 8) throw Error("oracle limited to small models");

    const Matrix<Rational> a = compartmental_matrix(model, point);

    struct CycleTerm {
        std::uint64_t vertex_mask = 0;
        int edge_count = 0;
        int sign = 1;  // +1 odd length, -1 even length
        Rational value;
    };
    std::vector<CycleTerm> terms;
    for (int v = 1; v <= n; ++v) {
        const Rational d = a.at(static_cast<std::size_t>(v - 1), static_cast<std::size_t>(v - 1));
        if (!d.is_zero()) terms.push_back({1ULL << v, 1, 1, d});
    }
    for (const auto& cycle : simple_cycles(model.graph())) {
        std::uint64_t mask = 0;
        Rational prod(1);
        for (std::size_t t = 0; t < cycle.size(); ++t) {
            mask |= 1ULL << cycle[t];
            const int from = cycle[t];
            const int to = cycle[(t + 1) % cycle.size()];
            prod *= a.at(static_cast<std::size_t>(to - 1), static_cast<std::size_t>(from - 1));
        }
        const int sign = (cycle.size() % 2 == 1) ? 1 : -1;
        terms.push_back({mask, static_cast<int>(cycle.size()), sign, prod});
    }

    // sums[k] collects the signed products over vertex-disjoint collections
    // covering exactly k edges; the empty collection contributes 1 to k = 0.
    std::vector<Rational> sums(static_cast<std::size_t>(n) + 1, Rational(0));
    sums[0] = Rational(1);
    const auto walk = [&](const auto& self, std::size_t idx, std::uint64_t used, int edges,
                          const Rational& prod) -> void {
        for (std::size_t t = idx; t < terms.size(); ++t) {
            const CycleTerm& term = terms[t];
            if ((term.vertex_mask & used) != 0) continue;
            if (edges + term.edge_count > n) continue;
            const Rational next =
                term.sign > 0 ? Rational(prod * term.value) : Rational(-(prod * term.value));
            sums[static_cast<std::size_t>(edges + term.edge_count)] += next;
            self(self, t + 1, used | term.vertex_mask, edges + term.edge_count, next);
        }
    };
    walk(walk, 0, 0, 0, Rational(1));

    std::vector<Rational> coeffs(static_cast<std::size_t>(n) + 1, Rational(0));
    for (int k = 0; k <= n; ++k) {
        const Rational c = sums[static_cast<std::size_t>(k)];
        coeffs[static_cast<std::size_t>(n - k)] = (k % 2 == 0) ? c : -c;
    }
    return Polynomial<Rational>(std::move(coeffs));
}

std::vector<Rational> cycle_map(const CompartmentModel& model, const ParameterPoint& point) {
    if (!is_strongly_connected(model.graph()))
        throw Error("cycle map requires strong connectivity");
    const std::vector<Rational> values = point.aligned(model);
    const Matrix<Rational> a = compartmental_matrix<Rational>(model, values);
    std::vector<Rational> out;
    for (int v = 1; v <= model.n(); ++v)
        out.push_back(a.at(static_cast<std::size_t>(v - 1), static_cast<std::size_t>(v - 1)));
    for (const auto& cycle : cycle_space_basis(model.graph()))
        out.push_back(cycle_monomial<Rational>(model, values, cycle));
    return out;
}

std::vector<Rational> sum_of_paths_map(const CompartmentModel& model,
                                       const ParameterPoint& point) {
    if (model.inputs().count(1) == 0 || model.outputs().count(1) == 0)
        throw Error("sum-of-paths map requires vertex 1 to be both an input and an output");
    const std::vector<Rational> values = point.aligned(model);
    std::vector<Rational> out;
    for (const int i : model.outputs()) {
        if (i == 1) continue;
        Rational sum(0);
        for (const auto& path : shortest_paths(model.graph(), 1, i).paths)
            sum += path_monomial<Rational>(model, values, path);
        out.push_back(sum);
    }
    for (const int j : model.inputs()) {
        if (j == 1) continue;
        Rational sum(0);
        for (const auto& path : shortest_paths(model.graph(), j, 1).paths)
            sum += path_monomial<Rational>(model, values, path);
        out.push_back(sum);
    }
    return out;
}

}  // namespace lcmident
