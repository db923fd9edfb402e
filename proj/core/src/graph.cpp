#include "lcmident/graph.hpp"

#include <algorithm>
#include <cstdint>
#include <set>
#include <string>
#include <unordered_set>

#include "lcmident/errors.hpp"

namespace lcmident {

Digraph::Digraph(int n, std::vector<std::pair<int, int>> edges)
    : n_(n), edges_(std::move(edges)) {
    if (n_ < 0) throw Error("negative vertex count");
    std::sort(edges_.begin(), edges_.end());
    for (std::size_t k = 0; k < edges_.size(); ++k) {
        const auto [from, to] = edges_[k];
        if (from < 1 || from > n_ || to < 1 || to > n_)
            throw Error("edge endpoint out of range: " + std::to_string(from) + "->" +
                        std::to_string(to));
        if (from == to) throw Error("self-loop rejected at vertex " + std::to_string(from));
        if (k > 0 && edges_[k] == edges_[k - 1])
            throw Error("duplicate edge " + std::to_string(from) + "->" + std::to_string(to));
    }
    adj_.assign(static_cast<std::size_t>(n_) + 1, {});
    for (const auto& [from, to] : edges_) adj_[static_cast<std::size_t>(from)].push_back(to);
}

bool Digraph::has_edge(int from, int to) const {
    return std::binary_search(edges_.begin(), edges_.end(), std::make_pair(from, to));
}

std::size_t Digraph::edge_index(int from, int to) const {
    const auto it = std::lower_bound(edges_.begin(), edges_.end(), std::make_pair(from, to));
    if (it == edges_.end() || *it != std::make_pair(from, to))
        throw Error("no such edge: " + std::to_string(from) + "->" + std::to_string(to));
    return static_cast<std::size_t>(it - edges_.begin());
}

namespace {

// Forward/backward reachability of every masked vertex from the lowest one.
bool subset_strongly_connected(const Digraph& g, std::uint64_t mask) {
    int start = 0;
    int count = 0;
    for (int v = 1; v <= g.n(); ++v)
        if (mask & (1ULL << v)) {
            if (start == 0) start = v;
            ++count;
        }
    if (count <= 1) return true;

    const auto reach = [&](bool forward) {
        std::uint64_t seen = 1ULL << start;
        std::vector<int> stack{start};
        while (!stack.empty()) {
            const int u = stack.back();
            stack.pop_back();
            for (const auto& [from, to] : g.edges()) {
                const int a = forward ? from : to;
                const int b = forward ? to : from;
                if (a != u) continue;
                if (!(mask & (1ULL << b)) || (seen & (1ULL << b))) continue;
                seen |= 1ULL << b;
                stack.push_back(b);
            }
        }
        return seen;
    };
    return reach(true) == mask && reach(false) == mask;
}

struct IscSearch {
    const Digraph& g;
    std::unordered_set<std::uint64_t> dead;
    std::vector<int> order;

    bool extend(std::uint64_t mask) {
        if (order.size() == static_cast<std::size_t>(g.n())) return true;
        if (dead.count(mask) != 0) return false;
        for (int v = 1; v <= g.n(); ++v) {
            if (mask & (1ULL << v)) continue;
            const std::uint64_t next = mask | (1ULL << v);
            if (!subset_strongly_connected(g, next)) continue;
            order.push_back(v);
            if (extend(next)) return true;
            order.pop_back();
        }
        dead.insert(mask);
        return false;
    }
};

// Tarjan with explicit recursion, in the classical shape.
void tarjan_dfs(const Digraph& g, int v, std::vector<int>& index, std::vector<int>& low,
                std::vector<int>& on_stack, std::vector<int>& stack, int& counter,
                int& scc_count) {
    index[static_cast<std::size_t>(v)] = low[static_cast<std::size_t>(v)] = counter++;
    stack.push_back(v);
    on_stack[static_cast<std::size_t>(v)] = 1;
    for (const int w : g.adjacency()[static_cast<std::size_t>(v)]) {
        if (index[static_cast<std::size_t>(w)] < 0) {
            tarjan_dfs(g, w, index, low, on_stack, stack, counter, scc_count);
            low[static_cast<std::size_t>(v)] =
                std::min(low[static_cast<std::size_t>(v)], low[static_cast<std::size_t>(w)]);
        } else if (on_stack[static_cast<std::size_t>(w)] != 0) {
            low[static_cast<std::size_t>(v)] =
                std::min(low[static_cast<std::size_t>(v)], index[static_cast<std::size_t>(w)]);
        }
    }
    if (low[static_cast<std::size_t>(v)] == index[static_cast<std::size_t>(v)]) {
        ++scc_count;
        while (true) {
            const int w = stack.back();
            stack.pop_back();
            on_stack[static_cast<std::size_t>(w)] = 0;
            if (w == v) break;
        }
    }
}

struct JohnsonSearch {
    const Digraph& g;
    int start = 0;
    std::vector<char> blocked;
    std::vector<std::set<int>> b_lists;
    std::vector<int> stack;
    std::vector<std::vector<int>>& out;

    void unblock(int v) {
        blocked[static_cast<std::size_t>(v)] = 0;
        auto& b = b_lists[static_cast<std::size_t>(v)];
        while (!b.empty()) {
            const int w = *b.begin();
            b.erase(b.begin());
            if (blocked[static_cast<std::size_t>(w)] != 0) unblock(w);
        }
    }

    bool circuit(int v) {
        bool found = false;
        stack.push_back(v);
        blocked[static_cast<std::size_t>(v)] = 1;
        for (const int w : g.adjacency()[static_cast<std::size_t>(v)]) {
            if (w < start) continue;
            if (w == start) {
                out.push_back(stack);
                found = true;
            } else if (blocked[static_cast<std::size_t>(w)] == 0) {
                if (circuit(w)) found = true;
            }
        }
        if (found) {
            unblock(v);
        } else {
            for (const int w : g.adjacency()[static_cast<std::size_t>(v)]) {
                if (w < start) continue;
                b_lists[static_cast<std::size_t>(w)].insert(v);
            }
        }
        stack.pop_back();
        return found;
    }
};

}  // namespace

bool is_strongly_connected(const Digraph& g) {
    if (g.n() <= 1) return true;
    std::vector<int> index(static_cast<std::size_t>(g.n()) + 1, -1);
    std::vector<int> low(static_cast<std::size_t>(g.n()) + 1, 0);
    std::vector<int> on_stack(static_cast<std::size_t>(g.n()) + 1, 0);
    std::vector<int> stack;
    int counter = 0;
    int scc_count = 0;
    for (int v = 1; v <= g.n(); ++v)
        if (index[static_cast<std::size_t>(v)] < 0)
            tarjan_dfs(g, v, index, low, on_stack, stack, counter, scc_count);
    return scc_count == 1;
}

std::optional<std::vector<int>> inductively_strongly_connected(const Digraph& g, int root) {
    if (root < 1 || root > g.n()) throw Error("root vertex out of range");
    if (g.n() > 62) throw Error("inductively-strongly-connected search supports up to 62 vertices");
    IscSearch search{g, {}, {root}};
    if (search.extend(1ULL << root)) return search.order;
    return std::nullopt;
}

std::vector<std::vector<int>> simple_cycles(const Digraph& g) {
    std::vector<std::vector<int>> cycles;
    for (int s = 1; s <= g.n(); ++s) {
        JohnsonSearch search{g, s,
                             std::vector<char>(static_cast<std::size_t>(g.n()) + 1, 0),
                             std::vector<std::set<int>>(static_cast<std::size_t>(g.n()) + 1),
                             {},
                             cycles};
        search.circuit(s);
    }
    return cycles;
}

Matrix<Rational> incidence_matrix(const Digraph& g) {
    Matrix<Rational> m(static_cast<std::size_t>(g.n()), g.edge_count());
    for (std::size_t k = 0; k < g.edge_count(); ++k) {
        const auto [from, to] = g.edges()[k];
        m.at(static_cast<std::size_t>(from - 1), k) = Rational(1);
        m.at(static_cast<std::size_t>(to - 1), k) = Rational(-1);
    }
    return m;
}

std::vector<int> cycle_indicator(const Digraph& g, const std::vector<int>& cycle) {
    std::vector<int> ind(g.edge_count(), 0);
    for (std::size_t t = 0; t < cycle.size(); ++t) {
        const int from = cycle[t];
        const int to = cycle[(t + 1) % cycle.size()];
        ind[g.edge_index(from, to)] = 1;
    }
    return ind;
}

std::vector<std::vector<int>> cycle_space_basis(const Digraph& g) {
    if (!is_strongly_connected(g)) throw Error("cycle space basis requires strong connectivity");
    const std::size_t target =
        g.edge_count() - static_cast<std::size_t>(g.n()) + 1;
    std::vector<std::vector<int>> basis;
    if (target == 0) return basis;

    Matrix<Rational> rows(0, g.edge_count());
    std::size_t rank = 0;
    for (const auto& cycle : simple_cycles(g)) {
        const auto ind = cycle_indicator(g, cycle);
        Matrix<Rational> row(1, g.edge_count());
        for (std::size_t k = 0; k < ind.size(); ++k) row.at(0, k) = Rational(ind[k]);
        Matrix<Rational> candidate = stack_rows(rows, row);
        const std::size_t new_rank = exact_rank(candidate);
        if (new_rank > rank) {
            rows = std::move(candidate);
            rank = new_rank;
            basis.push_back(cycle);
            if (basis.size() == target) return basis;
        }
    }
    throw Error("cycle space basis incomplete; graph violates the expected cycle space dimension");
}

PathSet shortest_paths(const Digraph& g, int source, int target) {
    if (source < 1 || source > g.n() || target < 1 || target > g.n())
        throw Error("path endpoint out of range");
    if (source == target) throw Error("shortest paths require distinct endpoints");

    std::vector<int> dist(static_cast<std::size_t>(g.n()) + 1, -1);
    dist[static_cast<std::size_t>(source)] = 0;
    std::vector<int> frontier{source};
    while (!frontier.empty()) {
        std::vector<int> next;
        for (const int u : frontier)
            for (const int v : g.adjacency()[static_cast<std::size_t>(u)])
                if (dist[static_cast<std::size_t>(v)] < 0) {
                    dist[static_cast<std::size_t>(v)] = dist[static_cast<std::size_t>(u)] + 1;
                    next.push_back(v);
                }
        frontier = std::move(next);
    }
    const int d = dist[static_cast<std::size_t>(target)];
    if (d < 0) throw Error("target unreachable");

    PathSet result{source, target, d, {}};
    std::vector<int> path{source};
    const auto dfs = [&](const auto& self, int u) -> void {
        if (u == target) {
            result.paths.push_back(path);
            return;
        }
        for (const int v : g.adjacency()[static_cast<std::size_t>(u)]) {
            if (dist[static_cast<std::size_t>(v)] != dist[static_cast<std::size_t>(u)] + 1) continue;
            if (dist[static_cast<std::size_t>(v)] > d) continue;
            path.push_back(v);
            self(self, v);
            path.pop_back();
        }
    };
    dfs(dfs, source);
    return result;
}

}  // namespace lcmident
