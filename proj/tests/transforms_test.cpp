#include <doctest.h>

#include <map>

#include <lcmident/transforms.hpp>

#include "support/reference_models.hpp"

using lcmident::CompartmentModel;
using lcmident::Digraph;
using lcmident::Param;
using lcmident::ReparamEntry;
using lcmident::ScalingReparam;
using lcmident::TieredUnionSpec;
using lcmident::Verdict;
using lcmident::analyze;
using lcmident::io_leak_variant;
using lcmident::scaling_reparam;
using lcmident::single_leak_variant;
using lcmident::suggest_variants;
using lcmident::tier_submodels;
using lcmident::tiered_union;
using namespace testsupport;

TEST_CASE("single-leak variants") {
    CHECK(single_leak_variant(fig1(), 1) == fig2());

    const CompartmentModel at3 = single_leak_variant(fig1(), 3);
    CHECK(at3.leaks() == std::set<int>{3});
    CHECK(at3.param_count() == 5);

    const CompartmentModel hori5 = single_leak_variant(fig6_ancestor(), 5);
    CHECK(hori5.param_count() == 7);
    CHECK(analyze(hori5, 1, 1).verdict == Verdict::GenericallyLocallyIdentifiable);

    CHECK_THROWS_AS(single_leak_variant(fig1(), 4), lcmident::Error);
    CHECK_THROWS_AS(single_leak_variant(fig2(), 1), lcmident::Error);  // ancestor not full-leak
    CHECK(single_leak_variant(fig2(), 1, /*waive_icm_check=*/true) == fig2());
}

TEST_CASE("input/output placement variants") {
    CHECK(io_leak_variant(fig1(), {1}, {1, 2}, {1, 2}) == fig3());
    CHECK(io_leak_variant(fig1(), {1}, {1}, {1}) == single_leak_variant(fig1(), 1));

    CHECK_THROWS_WITH_AS(io_leak_variant(fig1(), {1}, {1}, {1, 3}),
                         "hypothesis violated: Leak within In union Out fails at vertex 3",
                         lcmident::Error);
    CHECK_THROWS_AS(io_leak_variant(fig1(), {2}, {1, 2}, {1}), lcmident::Error);
    CHECK_THROWS_AS(io_leak_variant(fig1(), {1}, {2}, {1}), lcmident::Error);
}

TEST_CASE("placement variants of identifiable cycle models verify as identifiable") {
    for (const CompartmentModel& icm : {fig1(), fig6_ancestor()}) {
        const int n = icm.n();
        for (int v = 2; v <= n; ++v) {
            const CompartmentModel variant = io_leak_variant(icm, {1}, {1, v}, {1, v});
            const auto r = analyze(variant, 23, 1);
            CHECK(r.verdict == Verdict::GenericallyLocallyIdentifiable);
            CHECK(static_cast<std::size_t>(r.rank) == icm.edge_count() + 2);
        }
    }
}

TEST_CASE("tiered union reconstructs the five-compartment example") {
    // upper tier: chain 1 <-> 2 <-> 3, observed at 2, true leak at 1 which is
    // also the bridge source; lower tier: 1 <-> 2 with a leak at 2
    const CompartmentModel m1(Digraph(3, {{1, 2}, {2, 1}, {2, 3}, {3, 2}}), {2}, {2}, {1});
    const CompartmentModel m2(Digraph(2, {{1, 2}, {2, 1}}), {}, {1}, {2});
    const TieredUnionSpec spec{m1, m2, {1}, {1}};
    CHECK(tiered_union(spec) == fig4());

    const auto tiers = tier_submodels(spec);
    CHECK(tiers.tier1 == m1);
    CHECK(tiers.tier2.inputs() == std::set<int>{1});  // bridge target became an input
    CHECK(analyze(tiers.tier1, 3, 1).verdict == Verdict::GenericallyLocallyIdentifiable);
    CHECK(analyze(tiers.tier2, 3, 1).verdict == Verdict::GenericallyLocallyIdentifiable);
    CHECK(analyze(tiered_union(spec), 3, 1).verdict == Verdict::GenericallyLocallyIdentifiable);
}

TEST_CASE("tiered union input validation") {
    const CompartmentModel m1(Digraph(2, {{1, 2}, {2, 1}}), {1}, {1}, {2});
    const CompartmentModel m2(Digraph(2, {{1, 2}, {2, 1}}), {}, {1}, {2});
    CHECK_THROWS_WITH_AS(tiered_union({m1, m2, {}, {}}), "bridge required", lcmident::Error);
    CHECK_THROWS_AS(tiered_union({m1, m2, {1}, {}}), lcmident::Error);
    // bridge source must carry a leak slot
    CHECK_THROWS_AS(tiered_union({m1, m2, {1}, {1}}), lcmident::Error);
    // bridge target must not be an input
    const CompartmentModel m2_in(Digraph(2, {{1, 2}, {2, 1}}), {1}, {1}, {2});
    CHECK_THROWS_AS(tiered_union({m1, m2_in, {2}, {1}}), lcmident::Error);
}

TEST_CASE("a three-tier chain built from two unions stays identifiable") {
    const Digraph two_cycle(2, {{1, 2}, {2, 1}});
    const CompartmentModel tier(two_cycle, {1}, {1}, {2});
    const CompartmentModel lower(two_cycle, {}, {1}, {2});

    const CompartmentModel first = tiered_union({tier, lower, {2}, {1}});
    CHECK(first.n() == 4);
    CHECK(analyze(first, 29, 1).verdict == Verdict::GenericallyLocallyIdentifiable);

    // the second union bridges from vertex 4, which already leaks
    const CompartmentModel second = tiered_union({first, lower, {4}, {1}});
    CHECK(second.n() == 6);
    CHECK(second.param_count() == 11);
    const auto r = analyze(second, 29, 1);
    CHECK(r.rank == 11);
    CHECK(r.verdict == Verdict::GenericallyLocallyIdentifiable);
}

TEST_CASE("suggested variants are verified and cover the single-leak family") {
    const auto suggestions = suggest_variants(fig1(), 31);
    REQUIRE(suggestions.size() == 6);
    int single_leaks = 0;
    bool saw_fig3 = false;
    for (const auto& s : suggestions) {
        CHECK(s.report.verdict == Verdict::GenericallyLocallyIdentifiable);
        if (s.model.leaks().size() == 1) ++single_leaks;
        if (s.model == fig3()) saw_fig3 = true;
    }
    CHECK(single_leaks == 3);
    CHECK(saw_fig3);

    const CompartmentModel one(Digraph(1, {}), {1}, {1}, {1});
    const auto tiny = suggest_variants(one, 1);
    REQUIRE(tiny.size() == 1);
    CHECK(tiny[0].model == one);

    CHECK_THROWS_AS(suggest_variants(fig2(), 1), lcmident::Error);
}

TEST_CASE("the manganese ancestor's suggestions include the published single-leak model") {
    // one trial per variant: a full-rank point is already a certificate
    const auto suggestions = suggest_variants(fig5_ancestor(), 37, 1);
    bool found = false;
    for (const auto& s : suggestions)
        if (s.model.leaks() == std::set<int>{5}) found = true;
    CHECK(found);
}

TEST_CASE("scaling reparametrization of the three-compartment model") {
    const ScalingReparam r = scaling_reparam(fig1(), 41);
    CHECK(r.tree_parent[2] == 1);
    CHECK(r.tree_parent[3] == 2);
    CHECK(r.scale_exponents[1].empty());
    CHECK(r.scale_exponents[2] == std::map<Param, int>{{Param::edge(1, 2), 1}});
    CHECK(r.scale_exponents[3] ==
          std::map<Param, int>{{Param::edge(1, 2), 1}, {Param::edge(2, 3), 1}});

    const auto entry = [&](int row, int col) -> const ReparamEntry& {
        for (const auto& e : r.entries)
            if (e.row == row && e.col == col) return e;
        throw lcmident::Error("missing entry");
    };
    // row 1: self-cycle, the 2-cycle monomial, the 3-cycle monomial
    CHECK(entry(1, 1).diagonal);
    CHECK(entry(1, 2).exponents ==
          std::map<Param, int>{{Param::edge(1, 2), 1}, {Param::edge(2, 1), 1}});
    CHECK(entry(1, 3).exponents == std::map<Param, int>{{Param::edge(1, 2), 1},
                                                        {Param::edge(2, 3), 1},
                                                        {Param::edge(3, 1), 1}});
    // sub-diagonal tree entries collapse to 1
    CHECK(entry(2, 1).exponents.empty());
    CHECK(entry(3, 2).exponents.empty());
    CHECK_FALSE(r.has_negative_exponents);
    CHECK(r.entries_identifiable);
}

TEST_CASE("scaling reparametrization of a two-cycle") {
    const CompartmentModel two(Digraph(2, {{1, 2}, {2, 1}}), {1}, {1}, {1, 2});
    const ScalingReparam r = scaling_reparam(two, 1);
    CHECK(r.scale_exponents[1].empty());
    CHECK(r.scale_exponents[2] == std::map<Param, int>{{Param::edge(1, 2), 1}});
    for (const auto& e : r.entries) {
        if (e.row == 1 && e.col == 2)
            CHECK(e.exponents ==
                  std::map<Param, int>{{Param::edge(1, 2), 1}, {Param::edge(2, 1), 1}});
        if (e.row == 2 && e.col == 1) CHECK(e.exponents.empty());
    }
}

TEST_CASE("scalings cancel around every simple cycle") {
    for (const CompartmentModel& icm : {fig1(), fig6_ancestor(), fig5_ancestor()}) {
        const ScalingReparam r = scaling_reparam(icm, 43);
        for (const auto& cycle : lcmident::simple_cycles(icm.graph())) {
            std::map<Param, int> product;
            std::map<Param, int> original;
            for (std::size_t t = 0; t < cycle.size(); ++t) {
                const int from = cycle[t];
                const int to = cycle[(t + 1) % cycle.size()];
                original[Param::edge(from, to)] += 1;
                for (const auto& e : r.entries)
                    if (e.row == to && e.col == from && !e.diagonal)
                        for (const auto& [param, power] : e.exponents) product[param] += power;
            }
            std::erase_if(product, [](const auto& kv) { return kv.second == 0; });
            CHECK(product == original);
        }
    }
}

TEST_CASE("reparametrization requires the cycle-model shape") {
    CHECK_THROWS_AS(scaling_reparam(fig2(), 1), lcmident::Error);
    const ScalingReparam waived = scaling_reparam(fig2(), 1, /*waive_icm_check=*/true);
    CHECK_FALSE(waived.warnings.empty());
}
