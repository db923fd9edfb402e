#include "lcmident/transforms.hpp"

#include <algorithm>
#include <set>
#include <string>
#include <utility>

#include "lcmident/errors.hpp"
#include "lcmident/rng.hpp"

namespace lcmident {

namespace {

void require_structural_icm(const CompartmentModel& m, bool waived,
                            std::vector<std::string>* warnings) {
    std::vector<std::string> failures;
    if (!is_strongly_connected(m.graph())) failures.push_back("graph is not strongly connected");
    if (!(m.inputs() == std::set<int>{1} && m.outputs() == std::set<int>{1}))
        failures.push_back("In = Out = {1} fails");
    if (m.leaks().size() != static_cast<std::size_t>(m.n())) failures.push_back("Leak != V");
    if (failures.empty()) return;
    std::string joined;
    for (const auto& f : failures) joined += (joined.empty() ? "" : "; ") + f;
    if (!waived) throw Error("not an identifiable cycle model: " + joined);
    if (warnings != nullptr)
        warnings->push_back("identifiable-cycle-model check waived: " + joined);
}

std::set<int> all_vertices(int n) {
    std::set<int> v;
    for (int i = 1; i <= n; ++i) v.insert(i);
    return v;
}

}  // namespace

CompartmentModel single_leak_variant(const CompartmentModel& icm, int k, bool waive_icm_check) {
    if (k < 1 || k > icm.n()) throw Error("leak vertex out of range");
    require_structural_icm(icm, waive_icm_check, nullptr);
    return CompartmentModel(icm.graph(), {1}, {1}, {k});
}

CompartmentModel io_leak_variant(const CompartmentModel& icm, const std::set<int>& in_set,
                                 const std::set<int>& out_set, const std::set<int>& leak_set,
                                 bool waive_icm_check) {
    if (in_set.count(1) == 0) throw Error("hypothesis violated: 1 must be an input");
    if (out_set.count(1) == 0) throw Error("hypothesis violated: 1 must be an output");
    for (const int v : leak_set)
        if (in_set.count(v) == 0 && out_set.count(v) == 0)
            throw Error("hypothesis violated: Leak within In union Out fails at vertex " +
                        std::to_string(v));
    require_structural_icm(icm, waive_icm_check, nullptr);
    return CompartmentModel(icm.graph(), in_set, out_set, leak_set);
}

CompartmentModel tiered_union(const TieredUnionSpec& spec) {
    if (spec.w1.size() != spec.w2.size()) throw Error("bridge vertex lists differ in length");
    if (spec.w1.empty()) throw Error("bridge required");
    const int n1 = spec.m1.n();
    const int n2 = spec.m2.n();
    for (const int v : spec.w1) {
        if (v < 1 || v > n1) throw Error("bridge source out of range");
        if (spec.m1.leaks().count(v) == 0)
            throw Error("bridge source " + std::to_string(v) +
                        " must be passed as a leak compartment of the upper model");
    }
    for (const int v : spec.w2) {
        if (v < 1 || v > n2) throw Error("bridge target out of range");
        if (spec.m2.inputs().count(v) != 0)
            throw Error("bridge target " + std::to_string(v) +
                        " must not be an input of the lower model");
    }

    std::vector<std::pair<int, int>> edges = spec.m1.graph().edges();
    for (const auto& [from, to] : spec.m2.graph().edges()) edges.emplace_back(from + n1, to + n1);
    for (std::size_t l = 0; l < spec.w1.size(); ++l)
        edges.emplace_back(spec.w1[l], spec.w2[l] + n1);

    const auto shifted_union = [&](const std::set<int>& s1, const std::set<int>& s2) {
        std::set<int> out = s1;
        for (const int v : s2) out.insert(v + n1);
        return out;
    };
    return CompartmentModel(Digraph(n1 + n2, std::move(edges)),
                            shifted_union(spec.m1.inputs(), spec.m2.inputs()),
                            shifted_union(spec.m1.outputs(), spec.m2.outputs()),
                            shifted_union(spec.m1.leaks(), spec.m2.leaks()));
}

TierModels tier_submodels(const TieredUnionSpec& spec) {
    std::set<int> in2 = spec.m2.inputs();
    for (const int v : spec.w2) in2.insert(v);
    return {spec.m1,
            CompartmentModel(spec.m2.graph(), in2, spec.m2.outputs(), spec.m2.leaks())};
}

std::vector<Suggestion> suggest_variants(const CompartmentModel& icm, std::uint64_t seed,
                                         unsigned trials) {
    const IcmCheck check = check_icm(icm, seed);
    if (!check.is_icm) {
        std::string joined;
        for (const auto& r : check.reasons) joined += (joined.empty() ? "" : "; ") + r;
        throw Error("not an identifiable cycle model: " + joined);
    }

    std::vector<std::pair<std::string, CompartmentModel>> candidates;
    for (int k = 1; k <= icm.n(); ++k)
        candidates.emplace_back("single leak at " + std::to_string(k),
                                single_leak_variant(icm, k));
    for (int v = 2; v <= icm.n(); ++v)
        candidates.emplace_back(
            "output added at " + std::to_string(v) + ", leaks kept at {1," + std::to_string(v) +
                "}",
            io_leak_variant(icm, {1}, {1, v}, {1, v}));
    if (icm.n() > 1)
        candidates.emplace_back("outputs everywhere, all leaks kept",
                                io_leak_variant(icm, {1}, all_vertices(icm.n()),
                                                all_vertices(icm.n())));

    std::vector<Suggestion> suggestions;
    for (auto& [description, model] : candidates) {
        bool duplicate = false;
        for (const auto& existing : suggestions)
            if (existing.model == model) duplicate = true;
        if (duplicate) continue;
        IdentReport report = analyze(model, mix_seed(seed, suggestions.size()), trials);
        if (report.verdict != Verdict::GenericallyLocallyIdentifiable) continue;
        suggestions.push_back({std::move(description), std::move(model), std::move(report)});
    }
    return suggestions;
}

ScalingReparam scaling_reparam(const CompartmentModel& icm, std::uint64_t seed,
                               bool waive_icm_check) {
    ScalingReparam result;
    require_structural_icm(icm, waive_icm_check, &result.warnings);
    if (!is_strongly_connected(icm.graph()))
        throw Error("scaling reparametrization requires strong connectivity");

    const int n = icm.n();
    result.tree_parent.assign(static_cast<std::size_t>(n) + 1, -1);
    result.tree_parent[1] = 0;

    // Breadth-first shortest-path tree from vertex 1, ties broken by the
    // smallest parent (layer vertices are scanned in ascending order).
    std::vector<int> layer{1};
    while (!layer.empty()) {
        std::vector<int> next;
        for (const int u : layer)
            for (const int v : icm.graph().adjacency()[static_cast<std::size_t>(u)])
                if (result.tree_parent[static_cast<std::size_t>(v)] < 0) {
                    result.tree_parent[static_cast<std::size_t>(v)] = u;
                    next.push_back(v);
                }
        std::sort(next.begin(), next.end());
        layer = std::move(next);
    }
    for (int v = 1; v <= n; ++v)
        if (result.tree_parent[static_cast<std::size_t>(v)] < 0)
            throw Error("vertex " + std::to_string(v) + " unreachable from vertex 1");

    result.scale_exponents.assign(static_cast<std::size_t>(n) + 1, {});
    const auto scale_of = [&](const auto& self, int v) -> const std::map<Param, int>& {
        auto& scale = result.scale_exponents[static_cast<std::size_t>(v)];
        const int parent = result.tree_parent[static_cast<std::size_t>(v)];
        if (parent > 0 && scale.empty()) {
            scale = self(self, parent);
            scale[Param::edge(parent, v)] += 1;
        }
        return scale;
    };

    for (int row = 1; row <= n; ++row) {
        for (int col = 1; col <= n; ++col) {
            if (row == col) {
                result.entries.push_back({row, col, true, {}});
                continue;
            }
            if (!icm.graph().has_edge(col, row)) continue;  // entry (row,col) holds a(row,col)
            ReparamEntry entry{row, col, false, {}};
            entry.exponents[Param::edge(col, row)] += 1;
            for (const auto& [param, power] : scale_of(scale_of, col)) entry.exponents[param] += power;
            for (const auto& [param, power] : scale_of(scale_of, row)) entry.exponents[param] -= power;
            std::erase_if(entry.exponents, [](const auto& kv) { return kv.second == 0; });
            for (const auto& [param, power] : entry.exponents)
                if (power < 0) result.has_negative_exponents = true;
            result.entries.push_back(std::move(entry));
        }
    }

    // Tree edges must scale to 1 exactly.
    for (const ReparamEntry& entry : result.entries) {
        if (entry.diagonal) continue;
        if (result.tree_parent[static_cast<std::size_t>(entry.row)] == entry.col &&
            !entry.exponents.empty())
            throw Error("internal error: tree-edge entry failed to cancel");
    }

    result.entries_identifiable = true;
    std::vector<std::map<Param, int>> monomials;
    std::vector<const ReparamEntry*> checked;
    for (const ReparamEntry& entry : result.entries) {
        if (entry.diagonal || entry.exponents.empty()) continue;
        monomials.push_back(entry.exponents);
        checked.push_back(&entry);
    }
    const std::vector<bool> verdicts = identifiable_monomials(icm, monomials, seed);
    for (std::size_t k = 0; k < verdicts.size(); ++k) {
        if (verdicts[k]) continue;
        result.entries_identifiable = false;
        result.warnings.push_back("transformed entry (" + std::to_string(checked[k]->row) + "," +
                                  std::to_string(checked[k]->col) +
                                  ") failed the row-span identifiability check");
    }
    return result;
}

}  // namespace lcmident
