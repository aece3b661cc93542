/**
 * One-dimensional specialization: forests and cycles, exact arboricity
 * with Nash-Williams lower bounding, and the spanning-tree bisection
 * subdivision.
 */

#ifndef SCATKIT_GRAPH_HPP
#define SCATKIT_GRAPH_HPP

#include <algorithm>
#include <deque>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "scatkit/complex.hpp"
#include "scatkit/constructions.hpp"

namespace scatkit {

/**
 * A read-only graph view over a complex whose facets all have dimension
 * at most one. Edges are listed in canonical facet order; facets of
 * dimension zero (isolated vertices) are kept separately.
 */
class GraphView {
public:
    explicit GraphView(const Complex& c) : complex_(&c) {
        for (std::size_t f = 0; f < c.facet_count(); ++f) {
            auto idx = c.facets()[f].indices();
            if (idx.size() > 2)
                throw std::invalid_argument("not a graph: a facet has dimension > 1");
            if (idx.size() == 2) {
                edges_.emplace_back(idx[0], idx[1]);
                edge_facets_.push_back(f);
            } else {
                isolated_facets_.push_back(f);
            }
        }
        adjacency_.resize(c.vertex_count());
        for (std::size_t e = 0; e < edges_.size(); ++e) {
            adjacency_[edges_[e].first].push_back(e);
            adjacency_[edges_[e].second].push_back(e);
        }
    }

    const Complex& complex() const { return *complex_; }
    std::size_t vertex_count() const { return complex_->vertex_count(); }
    std::size_t edge_count() const { return edges_.size(); }
    const std::vector<std::pair<std::size_t, std::size_t>>& edges() const { return edges_; }
    /// Facet index in the underlying complex of the e-th edge.
    std::size_t edge_facet(std::size_t e) const { return edge_facets_.at(e); }
    const std::vector<std::size_t>& isolated_facets() const { return isolated_facets_; }
    const std::vector<std::size_t>& edges_at(std::size_t v) const { return adjacency_.at(v); }

    std::size_t other_end(std::size_t e, std::size_t v) const {
        return edges_[e].first == v ? edges_[e].second : edges_[e].first;
    }

    std::pair<std::string, std::string> edge_labels(std::size_t e) const {
        return {complex_->label(edges_[e].first), complex_->label(edges_[e].second)};
    }

private:
    const Complex* complex_;
    std::vector<std::pair<std::size_t, std::size_t>> edges_;
    std::vector<std::size_t> edge_facets_;
    std::vector<std::size_t> isolated_facets_;
    std::vector<std::vector<std::size_t>> adjacency_;
};

/// Acyclicity of an edge subset via union-find.
inline bool is_forest(const GraphView& g, const std::vector<std::size_t>& edge_subset) {
    detail::UnionFind uf(g.vertex_count());
    for (auto e : edge_subset) {
        if (e >= g.edge_count()) throw std::invalid_argument("edge index out of range");
        if (!uf.unite(g.edges()[e].first, g.edges()[e].second)) return false;
    }
    return true;
}

/// A cycle witness as a closed vertex-label walk, or nothing if G is a
/// forest.
inline std::optional<std::vector<std::string>> find_cycle(const GraphView& g) {
    std::vector<int> state(g.vertex_count(), 0);
    std::vector<std::size_t> parent_vertex(g.vertex_count(), SIZE_MAX);
    std::vector<std::size_t> parent_edge(g.vertex_count(), SIZE_MAX);
    for (std::size_t root = 0; root < g.vertex_count(); ++root) {
        if (state[root]) continue;
        std::vector<std::size_t> stack{root};
        state[root] = 1;
        while (!stack.empty()) {
            std::size_t v = stack.back();
            stack.pop_back();
            for (auto e : g.edges_at(v)) {
                if (e == parent_edge[v]) continue;
                std::size_t w = g.other_end(e, v);
                if (state[w]) {
                    // Found a cycle: climb both endpoints to their meeting
                    // point along the DFS tree.
                    std::vector<std::size_t> path_v{v}, path_w{w};
                    auto depth = [&](std::size_t x) {
                        std::size_t d = 0;
                        while (parent_vertex[x] != SIZE_MAX) {
                            x = parent_vertex[x];
                            ++d;
                        }
                        return d;
                    };
                    std::size_t a = v, b = w;
                    std::size_t da = depth(a), db = depth(b);
                    while (da > db) { a = parent_vertex[a]; path_v.push_back(a); --da; }
                    while (db > da) { b = parent_vertex[b]; path_w.push_back(b); --db; }
                    while (a != b) {
                        a = parent_vertex[a];
                        b = parent_vertex[b];
                        path_v.push_back(a);
                        path_w.push_back(b);
                    }
                    std::vector<std::string> cycle;
                    for (auto x : path_v) cycle.push_back(g.complex().label(x));
                    for (auto it = path_w.rbegin(); it != path_w.rend(); ++it) {
                        if (*it == a) continue;
                        cycle.push_back(g.complex().label(*it));
                    }
                    cycle.push_back(g.complex().label(v));
                    return cycle;
                }
                state[w] = 1;
                parent_vertex[w] = v;
                parent_edge[w] = e;
                stack.push_back(w);
            }
        }
    }
    return std::nullopt;
}

/**
 * Lower bound for the arboricity from the Nash-Williams formula
 * max_n ceil(q_n / (n-1)), with q_n the maximum edge count over induced
 * subgraphs on n vertices. The whole graph always contributes; the inner
 * maximization is exhaustive over all vertex subsets up to 12 vertices
 * and over subsets of size at most 8 beyond that, so the result is exact
 * whenever that range covers the optimizer and a valid lower bound
 * always.
 */
inline std::size_t nash_williams_bound(const GraphView& g) {
    std::size_t n = g.vertex_count();
    std::size_t m = g.edge_count();
    if (n < 2 || m == 0) throw std::invalid_argument("nash_williams_bound needs a nontrivial graph");
    auto ceil_div = [](std::size_t a, std::size_t b) { return (a + b - 1) / b; };
    std::size_t best = ceil_div(m, n - 1);

    std::size_t cap = n <= 12 ? n : 8;
    std::vector<bool> in_subset(n, false);
    std::size_t subset_size = 0;
    std::size_t inside_edges = 0;
    std::function<void(std::size_t)> descend = [&](std::size_t next) {
        if (subset_size >= 2 && inside_edges > 0)
            best = std::max(best, ceil_div(inside_edges, subset_size - 1));
        if (subset_size == cap) return;
        for (std::size_t v = next; v < n; ++v) {
            std::size_t gained = 0;
            for (auto e : g.edges_at(v))
                if (in_subset[g.other_end(e, v)]) ++gained;
            in_subset[v] = true;
            ++subset_size;
            inside_edges += gained;
            descend(v + 1);
            inside_edges -= gained;
            --subset_size;
            in_subset[v] = false;
        }
    };
    descend(0);
    return best;
}

/// Edge-disjoint spanning forests; the union of the parts is the whole
/// edge set and each part is acyclic.
struct ForestDecomposition {
    std::vector<std::vector<std::size_t>> forests;  // edge indices per forest

    std::vector<std::vector<std::pair<std::string, std::string>>> edge_labels(
        const GraphView& g) const {
        std::vector<std::vector<std::pair<std::string, std::string>>> out;
        for (const auto& forest : forests) {
            std::vector<std::pair<std::string, std::string>> part;
            for (auto e : forest) part.push_back(g.edge_labels(e));
            out.push_back(std::move(part));
        }
        return out;
    }
};

namespace detail {

struct ArborSearch {
    const GraphView* g;
    std::size_t k;
    std::vector<std::vector<std::size_t>> forests;
    std::vector<UnionFind> uf;
    std::vector<std::size_t> forest_sizes;

    bool assign(std::size_t e, std::size_t used) {
        if (e == g->edge_count()) return true;
        // Capacity: a forest on V vertices holds at most V-1 edges.
        std::size_t capacity = 0;
        for (std::size_t j = 0; j < k; ++j)
            capacity += (g->vertex_count() - 1) - forest_sizes[j];
        if (capacity < g->edge_count() - e) return false;

        auto [u, v] = g->edges()[e];
        std::size_t limit = std::min(k, used + 1);  // symmetry: open forests in order
        for (std::size_t j = 0; j < limit; ++j) {
            if (uf[j].same(u, v)) continue;
            auto saved = uf[j];
            uf[j].unite(u, v);
            forests[j].push_back(e);
            ++forest_sizes[j];
            if (assign(e + 1, std::max(used, j + 1))) return true;
            --forest_sizes[j];
            forests[j].pop_back();
            uf[j] = std::move(saved);
        }
        return false;
    }
};

}  // namespace detail

/**
 * Exact arboricity with a verified decomposition: edges are assigned to
 * forests by backtracking in canonical order, starting from the
 * Nash-Williams lower bound, with acyclicity pruning and forest-symmetry
 * breaking. An edgeless graph has arboricity 0.
 */
inline std::pair<std::size_t, ForestDecomposition> arboricity(const GraphView& g) {
    if (g.edge_count() == 0) return {0, ForestDecomposition{}};
    std::size_t start = g.vertex_count() >= 2 ? nash_williams_bound(g) : 1;
    for (std::size_t k = std::max<std::size_t>(start, 1);; ++k) {
        detail::ArborSearch search{
            &g, k,
            std::vector<std::vector<std::size_t>>(k),
            std::vector<detail::UnionFind>(k, detail::UnionFind(g.vertex_count())),
            std::vector<std::size_t>(k, 0)};
        if (search.assign(0, 0)) {
            ForestDecomposition d{std::move(search.forests)};
            // The decomposition must partition the edges into forests.
            std::vector<bool> seen(g.edge_count(), false);
            for (const auto& forest : d.forests) {
                if (!is_forest(g, forest)) throw std::logic_error("arboricity produced a cycle");
                for (auto e : forest) {
                    if (seen[e]) throw std::logic_error("arboricity duplicated an edge");
                    seen[e] = true;
                }
            }
            for (bool s : seen)
                if (!s) throw std::logic_error("arboricity dropped an edge");
            return {k, std::move(d)};
        }
    }
}

/**
 * Turns a forest decomposition of a connected graph into a covering by
 * the same number of trees: within each forest, two of its trees are
 * linked by a path of G, dropping path edges that would close a cycle,
 * until the forest is connected. The outputs are no longer edge-disjoint.
 */
inline std::vector<std::vector<std::size_t>> forests_to_trees(const GraphView& g,
                                                              const ForestDecomposition& d) {
    if (!g.complex().connected()) throw std::invalid_argument("forests_to_trees needs a connected graph");
    std::vector<std::vector<std::size_t>> trees;
    for (const auto& forest : d.forests) {
        std::vector<std::size_t> tree = forest;
        detail::UnionFind uf(g.vertex_count());
        for (auto e : tree) uf.unite(g.edges()[e].first, g.edges()[e].second);
        for (;;) {
            std::size_t root_class = uf.find(0);
            std::size_t outside = SIZE_MAX;
            for (std::size_t v = 0; v < g.vertex_count(); ++v)
                if (uf.find(v) != root_class) { outside = v; break; }
            if (outside == SIZE_MAX) break;
            // Shortest G-path from the root class to any other class.
            std::vector<std::size_t> via_edge(g.vertex_count(), SIZE_MAX);
            std::vector<std::size_t> via_vertex(g.vertex_count(), SIZE_MAX);
            std::vector<bool> visited(g.vertex_count(), false);
            std::deque<std::size_t> queue;
            for (std::size_t v = 0; v < g.vertex_count(); ++v)
                if (uf.find(v) == root_class) { visited[v] = true; queue.push_back(v); }
            std::size_t reached = SIZE_MAX;
            while (!queue.empty() && reached == SIZE_MAX) {
                std::size_t v = queue.front();
                queue.pop_front();
                for (auto e : g.edges_at(v)) {
                    std::size_t w = g.other_end(e, v);
                    if (visited[w]) continue;
                    visited[w] = true;
                    via_edge[w] = e;
                    via_vertex[w] = v;
                    if (uf.find(w) != root_class) { reached = w; break; }
                    queue.push_back(w);
                }
            }
            if (reached == SIZE_MAX) throw std::logic_error("connected graph ran out of paths");
            for (std::size_t at = reached; via_edge[at] != SIZE_MAX; at = via_vertex[at]) {
                std::size_t e = via_edge[at];
                if (uf.unite(g.edges()[e].first, g.edges()[e].second)) tree.push_back(e);
            }
        }
        std::sort(tree.begin(), tree.end());
        if (!is_forest(g, tree)) throw std::logic_error("tree cover produced a cycle");
        trees.push_back(std::move(tree));
    }
    return trees;
}

/// scat of a connected graph: arboricity - 1 (0 for a single vertex).
inline std::size_t graph_scat(const GraphView& g) {
    if (!g.complex().connected()) throw std::invalid_argument("graph_scat needs a connected graph");
    if (g.edge_count() == 0) return 0;
    return arboricity(g).first - 1;
}

/// gscat of a connected graph coincides with scat there.
inline std::size_t graph_gscat(const GraphView& g) { return graph_scat(g); }

namespace detail {

/// Canonical spanning tree: BFS from the least vertex, neighbors in
/// canonical order. Returns edge indices.
inline std::vector<std::size_t> bfs_spanning_tree(const GraphView& g) {
    std::vector<bool> visited(g.vertex_count(), false);
    std::vector<std::size_t> tree;
    std::deque<std::size_t> queue{0};
    visited[0] = true;
    while (!queue.empty()) {
        std::size_t v = queue.front();
        queue.pop_front();
        std::vector<std::pair<std::size_t, std::size_t>> nexts;  // (neighbor, edge)
        for (auto e : g.edges_at(v)) nexts.emplace_back(g.other_end(e, v), e);
        std::sort(nexts.begin(), nexts.end());
        for (auto [w, e] : nexts) {
            if (visited[w]) continue;
            visited[w] = true;
            tree.push_back(e);
            queue.push_back(w);
        }
    }
    return tree;
}

}  // namespace detail

/// Bisects the listed edges, replacing {u,w} by {u,m},{m,w} with a fresh
/// midpoint labelled like the subdivision vertex of that edge.
inline Complex bisect_edges(const Complex& c, const std::vector<std::size_t>& edge_subset) {
    GraphView g(c);
    std::vector<bool> split(g.edge_count(), false);
    for (auto e : edge_subset) {
        if (e >= g.edge_count()) throw std::invalid_argument("edge index out of range");
        split[e] = true;
    }
    std::set<std::string> taken(c.labels().begin(), c.labels().end());
    std::vector<std::vector<std::string>> gens;
    for (auto f : g.isolated_facets()) gens.push_back(c.facet_vertices(f));
    for (std::size_t e = 0; e < g.edge_count(); ++e) {
        auto [u, w] = g.edge_labels(e);
        if (!split[e]) {
            gens.push_back({u, w});
            continue;
        }
        std::string mid = detail::fresh_label(simplex_label({u, w}), taken);
        taken.insert(mid);
        gens.push_back({u, mid});
        gens.push_back({mid, w});
    }
    return Complex::from_facets(gens);
}

/// Bisects exactly the edges outside the canonical spanning tree. For a
/// tree the graph is returned unchanged; otherwise the result realizes
/// the category of the geometric realization (scat = 1).
inline Complex bisect_off_tree(const Complex& c) {
    GraphView g(c);
    if (!c.connected()) throw std::invalid_argument("bisect_off_tree needs a connected graph");
    if (g.edge_count() == 0) return c;
    auto tree = detail::bfs_spanning_tree(g);
    std::vector<bool> in_tree(g.edge_count(), false);
    for (auto e : tree) in_tree[e] = true;
    std::vector<std::size_t> off;
    for (std::size_t e = 0; e < g.edge_count(); ++e)
        if (!in_tree[e]) off.push_back(e);
    if (off.empty()) return c;
    return bisect_edges(c, off);
}

}  // namespace scatkit

#endif  // SCATKIT_GRAPH_HPP
