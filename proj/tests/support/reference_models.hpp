#pragma once

// Test-only helpers: the six regression models, random model generators, and
// independent brute-force oracles.  Nothing here may call into the code paths
// it is used to check.

#include <algorithm>
#include <cstdint>
#include <random>
#include <set>
#include <utility>
#include <vector>

#include <lcmident/lcmident.hpp>

namespace testsupport {

using lcmident::CompartmentModel;
using lcmident::Digraph;
using lcmident::Matrix;
using lcmident::Rational;

inline Digraph three_cycle_graph() {
    return Digraph(3, {{1, 2}, {2, 1}, {2, 3}, {3, 1}});
}

inline CompartmentModel fig1() { return {three_cycle_graph(), {1}, {1}, {1, 2, 3}}; }
inline CompartmentModel fig2() { return {three_cycle_graph(), {1}, {1}, {1}}; }
inline CompartmentModel fig3() { return {three_cycle_graph(), {1}, {1, 2}, {1, 2}}; }

inline CompartmentModel fig4() {
    return {Digraph(5, {{1, 2}, {1, 4}, {2, 1}, {2, 3}, {3, 2}, {4, 5}, {5, 4}}),
            {2},
            {2, 4},
            {1, 5}};
}

inline std::vector<std::pair<int, int>> mn_edges() {
    return {{1, 2}, {1, 3}, {1, 4}, {1, 6},  {1, 8},  {2, 1},  {3, 1},
            {4, 1}, {5, 6}, {6, 1}, {6, 5},  {7, 8},  {8, 1},  {8, 7},
            {8, 9}, {8, 11}, {9, 8}, {10, 11}, {11, 8}, {11, 10}};
}

inline CompartmentModel fig5_published() {
    return {Digraph(11, mn_edges()), {1, 10}, {1}, {5}};
}
inline CompartmentModel fig5_ancestor() {
    return {Digraph(11, mn_edges()), {1}, {1}, {1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11}};
}

inline Digraph hori_graph() {
    return Digraph(5, {{1, 2}, {2, 3}, {3, 4}, {4, 1}, {4, 5}, {5, 1}});
}
inline CompartmentModel fig6_ancestor() { return {hori_graph(), {1}, {1}, {1, 2, 3, 4, 5}}; }
inline CompartmentModel fig6_variant() { return {hori_graph(), {1}, {1, 2, 3}, {1, 2, 3}}; }

inline CompartmentModel degenerate_gcd_model() {
    return {Digraph(2, {}), {1}, {1}, {}};
}

// Every prefix {1..k} stays strongly connected by construction: vertex v > 1
// attaches with one outgoing and one incoming edge into the prefix, so the
// graph has exactly 2n-2 edges and is inductively strongly connected
// with respect to vertex 1 for the natural ordering.
inline Digraph random_isc_graph(int n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::vector<std::pair<int, int>> edges;
    for (int v = 2; v <= n; ++v) {
        const int u1 = 1 + static_cast<int>(rng() % static_cast<std::uint64_t>(v - 1));
        const int u2 = 1 + static_cast<int>(rng() % static_cast<std::uint64_t>(v - 1));
        edges.emplace_back(v, u1);
        edges.emplace_back(u2, v);
    }
    return Digraph(n, std::move(edges));
}

// Strongly connected graph: ISC skeleton plus a few random extra edges.
inline Digraph random_sc_graph(int n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    Digraph base = random_isc_graph(n, rng());
    std::vector<std::pair<int, int>> edges = base.edges();
    const int extras = static_cast<int>(rng() % 3);
    for (int k = 0; k < extras; ++k) {
        const int from = 1 + static_cast<int>(rng() % static_cast<std::uint64_t>(n));
        const int to = 1 + static_cast<int>(rng() % static_cast<std::uint64_t>(n));
        if (from == to) continue;
        if (std::find(edges.begin(), edges.end(), std::make_pair(from, to)) != edges.end())
            continue;
        edges.emplace_back(from, to);
    }
    return Digraph(n, std::move(edges));
}

inline std::set<int> random_subset(int n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::set<int> s;
    for (int v = 1; v <= n; ++v)
        if (rng() % 2 == 0) s.insert(v);
    return s;
}

// --- independent oracles ---

// Rank over the rationals by plain fraction Gaussian elimination.
inline std::size_t rank_by_gauss(const Matrix<Rational>& m) {
    Matrix<Rational> w = m;
    std::size_t r = 0;
    for (std::size_t c = 0; c < w.cols() && r < w.rows(); ++c) {
        std::size_t pivot = r;
        while (pivot < w.rows() && w.at(pivot, c).is_zero()) ++pivot;
        if (pivot == w.rows()) continue;
        if (pivot != r)
            for (std::size_t j = 0; j < w.cols(); ++j) std::swap(w.at(pivot, j), w.at(r, j));
        for (std::size_t i = r + 1; i < w.rows(); ++i) {
            if (w.at(i, c).is_zero()) continue;
            const Rational f = w.at(i, c) / w.at(r, c);
            for (std::size_t j = c; j < w.cols(); ++j) w.at(i, j) -= f * w.at(r, j);
        }
        ++r;
    }
    return r;
}

// Determinant by recursive cofactor expansion.
inline Rational det_by_cofactor(const Matrix<Rational>& m) {
    const std::size_t n = m.rows();
    if (n == 0) return Rational(1);
    if (n == 1) return m.at(0, 0);
    Rational acc(0);
    for (std::size_t i = 0; i < n; ++i) {
        if (m.at(i, 0).is_zero()) continue;
        const Rational term = m.at(i, 0) * det_by_cofactor(m.minor_removed(i, 0));
        if (i % 2 == 0)
            acc += term;
        else
            acc -= term;
    }
    return acc;
}

// Exhaustive simple-cycle count: every vertex subset, every rotation with the
// smallest vertex first.
inline std::size_t brute_force_cycle_count(const Digraph& g) {
    std::size_t count = 0;
    const int n = g.n();
    std::vector<int> vertices;
    const auto try_permutations = [&](const std::vector<int>& subset) {
        std::vector<int> rest(subset.begin() + 1, subset.end());
        std::sort(rest.begin(), rest.end());
        do {
            std::vector<int> cycle{subset[0]};
            cycle.insert(cycle.end(), rest.begin(), rest.end());
            bool ok = true;
            for (std::size_t t = 0; t < cycle.size(); ++t)
                if (!g.has_edge(cycle[t], cycle[(t + 1) % cycle.size()])) ok = false;
            if (ok) ++count;
        } while (std::next_permutation(rest.begin(), rest.end()));
    };
    const auto enumerate = [&](const auto& self, int next) -> void {
        if (vertices.size() >= 2) try_permutations(vertices);
        for (int v = next; v <= n; ++v) {
            vertices.push_back(v);
            self(self, v + 1);
            vertices.pop_back();
        }
    };
    enumerate(enumerate, 1);
    return count;
}

// All simple paths between two vertices, any length.
inline std::vector<std::vector<int>> brute_force_paths(const Digraph& g, int source, int target) {
    std::vector<std::vector<int>> out;
    std::vector<int> path{source};
    std::vector<char> used(static_cast<std::size_t>(g.n()) + 1, 0);
    used[static_cast<std::size_t>(source)] = 1;
    const auto dfs = [&](const auto& self, int u) -> void {
        if (u == target) {
            out.push_back(path);
            return;
        }
        for (const int v : g.adjacency()[static_cast<std::size_t>(u)]) {
            if (used[static_cast<std::size_t>(v)] != 0) continue;
            used[static_cast<std::size_t>(v)] = 1;
            path.push_back(v);
            self(self, v);
            path.pop_back();
            used[static_cast<std::size_t>(v)] = 0;
        }
    };
    dfs(dfs, source);
    return out;
}

// Derivative by coefficient shift; the independent route for dual checks.
inline lcmident::Polynomial<Rational> poly_derivative(const lcmident::Polynomial<Rational>& p) {
    std::vector<Rational> c;
    for (int k = 1; k <= p.degree(); ++k)
        c.push_back(Rational(k) * p.coeff(static_cast<std::size_t>(k)));
    return lcmident::Polynomial<Rational>(std::move(c));
}

}  // namespace testsupport
