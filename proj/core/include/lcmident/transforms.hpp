#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "lcmident/ident.hpp"
#include "lcmident/model.hpp"

namespace lcmident {

/// (G, {1}, {1}, {k}): keep the graph, leak only at k.  Guaranteed locally
/// identifiable whenever the Leak = V ancestor is an identifiable cycle
/// model.  The structural icm conditions are enforced unless waived; the rank
/// condition is the caller's to certify (check_icm).
CompartmentModel single_leak_variant(const CompartmentModel& icm, int k,
                                     bool waive_icm_check = false);

/// (G, In, Out, Leak) with 1 in In, 1 in Out and Leak within In union Out.
/// Guaranteed locally identifiable whenever the Leak = V ancestor is an
/// identifiable cycle model.
CompartmentModel io_leak_variant(const CompartmentModel& icm, const std::set<int>& in_set,
                                 const std::set<int>& out_set, const std::set<int>& leak_set,
                                 bool waive_icm_check = false);

/// Two models joined by one-way bridge edges w1[l] -> w2[l].  The bridge
/// sources must be passed as leak compartments of m1 (their outflow drains
/// m1 exactly like a leak when m1 is analyzed standalone); m2's inputs must
/// not contain bridge targets (standalone, the bridges act as m2's inputs).
struct TieredUnionSpec {
    CompartmentModel m1;
    CompartmentModel m2;
    std::vector<int> w1;  // bridge sources, in m1's numbering
    std::vector<int> w2;  // bridge targets, in m2's own 1..|V2| numbering
};

/// m2's vertices are shifted by |V1|; inputs, outputs and leaks are unioned
/// (bridge sources keep their leak slot, see TieredUnionSpec).
CompartmentModel tiered_union(const TieredUnionSpec& spec);

/// The two standalone models whose identifiability implies the union's:
/// m1 exactly as passed, m2 with the shifted bridge targets added as inputs.
struct TierModels {
    CompartmentModel tier1;
    CompartmentModel tier2;
};
TierModels tier_submodels(const TieredUnionSpec& spec);

/// Theorem-guaranteed identifiable variants of an identifiable cycle model:
/// all |V| single-leak models plus a minimal family of input/output
/// placements.  Every suggestion is re-verified by analyze before emission.
struct Suggestion {
    std::string description;
    CompartmentModel model;
    IdentReport report;
};
std::vector<Suggestion> suggest_variants(const CompartmentModel& icm, std::uint64_t seed,
                                         unsigned trials = 3);

/// Scaling reparametrization along the breadth-first shortest-path tree from
/// vertex 1: the state of vertex i is divided by the monomial of tree-edge
/// rates on the path 1 -> i.  Tree-edge entries of the transformed matrix
/// become 1, every other off-diagonal entry becomes a monomial whose product
/// around any cycle equals the original cycle monomial, and diagonals stay
/// put as the self-cycle symbols a(i,i).
struct ReparamEntry {
    int row = 0;
    int col = 0;
    bool diagonal = false;           // stands for the self-cycle a(row,row)
    std::map<Param, int> exponents;  // edge-parameter monomial; may be negative
};

struct ScalingReparam {
    std::vector<int> tree_parent;                       // 1-indexed; parent of 1 is 0
    std::vector<std::map<Param, int>> scale_exponents;  // s_i per vertex, 1-indexed
    std::vector<ReparamEntry> entries;                  // structural entries, row-major
    bool has_negative_exponents = false;
    bool entries_identifiable = false;  // numeric row-span verification of off-diagonals
    std::vector<std::string> warnings;
};

ScalingReparam scaling_reparam(const CompartmentModel& icm, std::uint64_t seed,
                               bool waive_icm_check = false);

}  // namespace lcmident
