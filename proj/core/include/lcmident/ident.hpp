#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "lcmident/coeff_map.hpp"
#include "lcmident/model.hpp"

namespace lcmident {

/// Maps whose exact Jacobian the engine can rank-test.
enum class MapKind {
    Coefficients,          // c
    Cycles,                // f
    SumOfPaths,            // g
    CoefficientsAndPaths,  // (c, g)
    CyclesAndPaths,        // (f, g)
};

/// Structure shared by every per-parameter differentiation pass: the
/// coefficient layout, the chosen cycle-space basis, and all shortest-path
/// sets, each enumerated once per model.
struct MapStructure {
    std::optional<CoeffLayout> layout;
    std::vector<std::vector<int>> basis_cycles;
    struct PathBlock {
        int from = 0;
        int to = 0;
        std::vector<std::vector<int>> paths;
    };
    std::vector<PathBlock> path_blocks;
    std::size_t component_count = 0;
};

MapStructure map_structure(MapKind kind, const CompartmentModel& model);

/// Components of the chosen map at the given parameter values.
template <typename R>
std::vector<R> map_components(MapKind kind, const CompartmentModel& model,
                              const MapStructure& structure, const std::vector<R>& values);

/// Exact Jacobian: one row per map component, one column per parameter
/// (edges in canonical order, then leaks), entries computed by one dual
/// evaluation pass per parameter.
Matrix<Rational> jacobian(MapKind kind, const CompartmentModel& model,
                          const ParameterPoint& point);

enum class Verdict {
    GenericallyLocallyIdentifiable,
    Unidentifiable,
    Inconclusive,
};

std::string to_string(Verdict v);

/// Result of the Jacobian-rank identifiability test.  A full-rank trial is a
/// certificate (a point rank lower-bounds the generic rank); sub-maximal rank
/// at every trial is strong probabilistic evidence, not a proof.
struct IdentReport {
    std::size_t n_params = 0;
    std::size_t n_coeffs = 0;       // layout length
    std::size_t n_nonconstant = 0;  // rows with a nonzero gradient
    int rank = 0;                   // best over trials
    std::vector<int> trial_ranks;
    unsigned trials = 0;
    std::uint64_t seed = 0;
    Verdict verdict = Verdict::Inconclusive;
    bool certified = false;
};

IdentReport analyze(const CompartmentModel& model, std::uint64_t seed, unsigned trials = 3);

/// Membership of the gradient of a parameter monomial in the row span of the
/// coefficient-map Jacobian; negative exponents are allowed.  Retried at a
/// second point before reporting false.
bool is_identifiable_function(const CompartmentModel& model, const std::map<Param, int>& powers,
                              std::uint64_t seed);

/// The same row-span test for many monomials at once; the coefficient-map
/// Jacobian is built once per evaluation point instead of once per monomial.
std::vector<bool> identifiable_monomials(const CompartmentModel& model,
                                         const std::vector<std::map<Param, int>>& monomials,
                                         std::uint64_t seed);

/// The four identifiable-cycle-model conditions, with the inductively-
/// strongly-connected shortcut reported alongside.
struct IcmCheck {
    bool is_icm = false;
    bool strongly_connected = false;
    bool in_out_is_first = false;   // In = Out = {1}
    bool leaks_everywhere = false;  // Leak = V
    std::size_t expected_rank = 0;  // |E| + 1
    int rank = -1;                  // coefficient-map rank; -1 when not computed
    std::optional<std::vector<int>> isc_ordering;
    bool edge_count_saturated = false;  // |E| == 2|V| - 2
    bool isc_shortcut = false;          // saturated and ISC: rank condition guaranteed
    std::vector<std::string> reasons;
};

IcmCheck check_icm(const CompartmentModel& model, std::uint64_t seed);

/// Rank of the cycle map f (In = Out = {1}) or of (f, g) otherwise, evaluated
/// on the variant model's own parameters, i.e. with non-leak diagonals tied
/// to the negated outflow sums.  Direct test of the restricted-subspace rank
/// statements behind the single-leak and input/output placement theorems.
int restricted_cycle_rank(const CompartmentModel& model, std::uint64_t seed);

/// Row-independence test of the Krylov rows a, a*Atil, ..., a*Atil^{m-2}
/// built from row i of A (column i removed) and A with row/column i removed;
/// full rank means every state is recoverable from this output's derivatives.
bool observability_check(const CompartmentModel& model, int output, std::uint64_t seed);

}  // namespace lcmident
