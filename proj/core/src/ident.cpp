#include "lcmident/ident.hpp"

#include <string>
#include <utility>

#include "lcmident/errors.hpp"
#include "lcmident/rng.hpp"

namespace lcmident {

namespace {

constexpr int kDegenerateRetries = 5;

bool wants_coefficients(MapKind kind) {
    return kind == MapKind::Coefficients || kind == MapKind::CoefficientsAndPaths;
}
bool wants_cycles(MapKind kind) {
    return kind == MapKind::Cycles || kind == MapKind::CyclesAndPaths;
}
bool wants_paths(MapKind kind) {
    return kind == MapKind::SumOfPaths || kind == MapKind::CoefficientsAndPaths ||
           kind == MapKind::CyclesAndPaths;
}

std::size_t count_nonzero_rows(const Matrix<Rational>& m) {
    std::size_t count = 0;
    for (std::size_t i = 0; i < m.rows(); ++i) {
        bool nonzero = false;
        for (std::size_t j = 0; j < m.cols(); ++j)
            if (!m.at(i, j).is_zero()) nonzero = true;
        if (nonzero) ++count;
    }
    return count;
}

}  // namespace

MapStructure map_structure(MapKind kind, const CompartmentModel& model) {
    MapStructure s;
    if (wants_coefficients(kind)) {
        s.layout = coefficient_layout(model);
        s.component_count += s.layout->size();
    }
    if (wants_cycles(kind)) {
        if (!is_strongly_connected(model.graph()))
            throw Error("cycle map requires strong connectivity");
        s.basis_cycles = cycle_space_basis(model.graph());
        s.component_count += static_cast<std::size_t>(model.n()) + s.basis_cycles.size();
    }
    if (wants_paths(kind)) {
        if (model.inputs().count(1) == 0 || model.outputs().count(1) == 0)
            throw Error("sum-of-paths map requires vertex 1 to be both an input and an output");
        for (const int i : model.outputs()) {
            if (i == 1) continue;
            s.path_blocks.push_back({1, i, shortest_paths(model.graph(), 1, i).paths});
        }
        for (const int j : model.inputs()) {
            if (j == 1) continue;
            s.path_blocks.push_back({j, 1, shortest_paths(model.graph(), j, 1).paths});
        }
        s.component_count += s.path_blocks.size();
    }
    return s;
}

template <typename R>
std::vector<R> map_components(MapKind kind, const CompartmentModel& model,
                              const MapStructure& structure, const std::vector<R>& values) {
    std::vector<R> out;
    out.reserve(structure.component_count);
    if (wants_coefficients(kind)) {
        auto coeffs = coefficient_values<R>(model, values, *structure.layout);
        out.insert(out.end(), coeffs.begin(), coeffs.end());
    }
    if (wants_cycles(kind)) {
        const Matrix<R> a = compartmental_matrix<R>(model, values);
        for (int v = 1; v <= model.n(); ++v)
            out.push_back(a.at(static_cast<std::size_t>(v - 1), static_cast<std::size_t>(v - 1)));
        for (const auto& cycle : structure.basis_cycles)
            out.push_back(cycle_monomial<R>(model, values, cycle));
    }
    if (wants_paths(kind)) {
        for (const auto& block : structure.path_blocks) {
            R sum(0);
            for (const auto& path : block.paths)
                sum += path_monomial<R>(model, values, path);
            out.push_back(sum);
        }
    }
    return out;
}

template std::vector<Rational> map_components(MapKind, const CompartmentModel&,
                                              const MapStructure&, const std::vector<Rational>&);
template std::vector<Dual> map_components(MapKind, const CompartmentModel&, const MapStructure&,
                                          const std::vector<Dual>&);

Matrix<Rational> jacobian(MapKind kind, const CompartmentModel& model,
                          const ParameterPoint& point) {
    const MapStructure structure = map_structure(kind, model);
    Matrix<Rational> j(structure.component_count, model.param_count());
    for (std::size_t s = 0; s < model.param_count(); ++s) {
        const std::vector<Dual> values = seeded_values(model, point, s);
        const std::vector<Dual> components = map_components<Dual>(kind, model, structure, values);
        if (components.size() != structure.component_count)
            throw Error("component count drifted between passes");
        for (std::size_t r = 0; r < components.size(); ++r) j.at(r, s) = components[r].der;
    }
    return j;
}

std::string to_string(Verdict v) {
    switch (v) {
        case Verdict::GenericallyLocallyIdentifiable: return "generically_locally_identifiable";
        case Verdict::Unidentifiable: return "unidentifiable";
        case Verdict::Inconclusive: return "inconclusive";
    }
    return "inconclusive";
}

IdentReport analyze(const CompartmentModel& model, std::uint64_t seed, unsigned trials) {
    if (model.inputs().empty()) throw Error("model has no inputs; analysis unavailable");
    if (model.outputs().empty()) throw Error("model has no outputs; analysis unavailable");
    if (trials == 0) throw Error("at least one trial required");

    IdentReport report;
    report.n_params = model.param_count();
    report.n_coeffs = coefficient_layout(model).size();
    report.seed = seed;
    report.trials = trials;

    for (unsigned t = 0; t < trials; ++t) {
        for (int attempt = 0;; ++attempt) {
            const ParameterPoint point = random_point(
                model, mix_seed(seed, t * 64ULL + static_cast<std::uint64_t>(attempt)));
            try {
                const Matrix<Rational> j = jacobian(MapKind::Coefficients, model, point);
                const int rank = static_cast<int>(exact_rank(j));
                report.trial_ranks.push_back(rank);
                if (rank >= report.rank) {
                    report.rank = rank;
                    report.n_nonconstant = count_nonzero_rows(j);
                }
                break;
            } catch (const DegeneratePointError&) {
                if (attempt >= kDegenerateRetries) break;  // trial abandoned
            }
        }
    }

    if (report.trial_ranks.empty()) {
        report.verdict = Verdict::Inconclusive;
        return report;
    }
    bool full = false;
    for (const int r : report.trial_ranks)
        if (static_cast<std::size_t>(r) == report.n_params) full = true;
    if (full) {
        report.verdict = Verdict::GenericallyLocallyIdentifiable;
        report.certified = true;
    } else {
        report.verdict = Verdict::Unidentifiable;
    }
    return report;
}

std::vector<bool> identifiable_monomials(const CompartmentModel& model,
                                         const std::vector<std::map<Param, int>>& monomials,
                                         std::uint64_t seed) {
    for (const auto& powers : monomials)
        for (const auto& [param, power] : powers) {
            (void)power;
            model.param_index(param);  // validates the monomial's parameters
        }

    std::vector<bool> verdicts(monomials.size(), false);
    // A failed membership is retried at one fresh point before it stands.
    for (unsigned t = 0; t < 2; ++t) {
        bool unresolved = false;
        for (const bool v : verdicts)
            if (!v) unresolved = true;
        if (!unresolved && !verdicts.empty()) break;

        for (int attempt = 0;; ++attempt) {
            const ParameterPoint point = random_point(
                model, mix_seed(seed, t * 64ULL + static_cast<std::uint64_t>(attempt)));
            try {
                const Matrix<Rational> j = jacobian(MapKind::Coefficients, model, point);
                const std::size_t base_rank = exact_rank(j);
                for (std::size_t m = 0; m < monomials.size(); ++m) {
                    if (verdicts[m]) continue;
                    Matrix<Rational> row(1, model.param_count());
                    for (std::size_t s = 0; s < model.param_count(); ++s) {
                        const std::vector<Dual> values = seeded_values(model, point, s);
                        Dual monomial(Rational(1));
                        for (const auto& [param, power] : monomials[m]) {
                            const Dual v = values[model.param_index(param)];
                            for (int k = 0; k < power; ++k) monomial *= v;
                            for (int k = 0; k > power; --k) monomial /= v;
                        }
                        row.at(0, s) = monomial.der;
                    }
                    if (exact_rank(stack_rows(j, row)) == base_rank) verdicts[m] = true;
                }
                break;
            } catch (const DegeneratePointError&) {
                if (attempt >= kDegenerateRetries) break;
            }
        }
    }
    return verdicts;
}

bool is_identifiable_function(const CompartmentModel& model, const std::map<Param, int>& powers,
                              std::uint64_t seed) {
    return identifiable_monomials(model, {powers}, seed)[0];
}

IcmCheck check_icm(const CompartmentModel& model, std::uint64_t seed) {
    IcmCheck check;
    check.strongly_connected = is_strongly_connected(model.graph());
    if (!check.strongly_connected) check.reasons.push_back("graph is not strongly connected");

    check.in_out_is_first = model.inputs() == std::set<int>{1} && model.outputs() == std::set<int>{1};
    if (!check.in_out_is_first) check.reasons.push_back("In = Out = {1} fails");

    check.leaks_everywhere = model.leaks().size() == static_cast<std::size_t>(model.n());
    if (!check.leaks_everywhere) check.reasons.push_back("Leak != V");

    check.expected_rank = model.edge_count() + 1;
    check.edge_count_saturated =
        model.edge_count() == 2 * static_cast<std::size_t>(model.n()) - 2;
    if (model.n() <= 62) check.isc_ordering = inductively_strongly_connected(model.graph(), 1);
    check.isc_shortcut = check.edge_count_saturated && check.isc_ordering.has_value();

    if (!(check.strongly_connected && check.in_out_is_first && check.leaks_everywhere))
        return check;

    for (int attempt = 0;; ++attempt) {
        const ParameterPoint point =
            random_point(model, mix_seed(seed, static_cast<std::uint64_t>(attempt)));
        try {
            check.rank = static_cast<int>(exact_rank(jacobian(MapKind::Coefficients, model, point)));
            break;
        } catch (const DegeneratePointError&) {
            if (attempt >= kDegenerateRetries) {
                check.reasons.push_back("coefficient-map rank could not be evaluated");
                return check;
            }
        }
    }
    if (static_cast<std::size_t>(check.rank) == check.expected_rank) {
        check.is_icm = true;
        if (check.isc_shortcut)
            check.reasons.push_back(
                "inductively strongly connected with |E| = 2|V|-2: the rank condition was "
                "guaranteed in advance");
    } else {
        check.reasons.push_back("coefficient-map rank " + std::to_string(check.rank) +
                                " falls short of |E|+1 = " + std::to_string(check.expected_rank));
    }
    return check;
}

int restricted_cycle_rank(const CompartmentModel& model, std::uint64_t seed) {
    if (!is_strongly_connected(model.graph()))
        throw Error("restricted cycle rank requires strong connectivity");
    const bool in_out_first_only =
        model.inputs() == std::set<int>{1} && model.outputs() == std::set<int>{1};
    MapKind kind = MapKind::Cycles;
    if (!in_out_first_only) {
        if (model.inputs().count(1) == 0 || model.outputs().count(1) == 0)
            throw Error("hypothesis violated: vertex 1 must be both an input and an output");
        for (const int v : model.leaks())
            if (model.inputs().count(v) == 0 && model.outputs().count(v) == 0)
                throw Error("hypothesis violated: Leak must lie within In union Out");
        kind = MapKind::CyclesAndPaths;
    }
    for (int attempt = 0;; ++attempt) {
        const ParameterPoint point =
            random_point(model, mix_seed(seed, static_cast<std::uint64_t>(attempt)));
        try {
            return static_cast<int>(exact_rank(jacobian(kind, model, point)));
        } catch (const DegeneratePointError&) {
            if (attempt >= kDegenerateRetries)
                throw Error("restricted cycle rank kept hitting degenerate points");
        }
    }
}

bool observability_check(const CompartmentModel& model, int output, std::uint64_t seed) {
    if (!is_strongly_connected(model.graph()))
        throw Error("observability check requires strong connectivity");
    if (model.outputs().count(output) == 0)
        throw Error("vertex " + std::to_string(output) + " is not an output");
    const std::size_t m = static_cast<std::size_t>(model.n());
    if (m <= 1) return true;

    const ParameterPoint point = random_point(model, seed);
    const Matrix<Rational> a = compartmental_matrix(model, point);
    const std::size_t i = static_cast<std::size_t>(output - 1);

    Matrix<Rational> row(1, m - 1);
    for (std::size_t j = 0, c = 0; j < m; ++j) {
        if (j == i) continue;
        row.at(0, c++) = a.at(i, j);
    }
    const Matrix<Rational> reduced = a.minor_removed(i, i);

    Matrix<Rational> krylov(m - 1, m - 1);
    Matrix<Rational> current = row;
    for (std::size_t k = 0; k < m - 1; ++k) {
        for (std::size_t j = 0; j < m - 1; ++j) krylov.at(k, j) = current.at(0, j);
        current = current * reduced;
    }
    return exact_rank(krylov) == m - 1;
}

}  // namespace lcmident
