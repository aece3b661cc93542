/**
 * The category engine: categorical-subcomplex decisions, simplicial
 * LS-category (scat) by facet-partition search, geometric simplicial
 * category (gscat), bounded Whitehead category decisions (wscat), and an
 * inequality test harness.
 *
 * Partition search space: by maximality of facets, covers may be assumed
 * to consist of facet-disjoint unions of facets, so candidate covers are
 * exactly the set partitions of the facet list. Partitions are
 * enumerated with restricted-growth symmetry breaking (the smallest
 * unassigned facet opens the next block). Sub-facet-sets of categorical
 * sets are categorical, so a block that tests No can be pruned as soon
 * as it appears.
 *
 * scat is invariant under strong homotopy type, so it is computed on the
 * core and both the value and the witness cover are transferred back
 * along the collapse retraction. gscat is not homotopy invariant and is
 * always computed on the complex itself.
 */

#ifndef SCATKIT_CATEGORY_HPP
#define SCATKIT_CATEGORY_HPP

#include <deque>
#include <map>
#include <mutex>
#include <optional>
#include <sstream>
#include <string>
#include <unordered_map>
#include <vector>

#include "scatkit/complex.hpp"
#include "scatkit/constructions.hpp"
#include "scatkit/graph.hpp"
#include "scatkit/maps.hpp"

namespace scatkit {

/// A facet partition of an ambient complex: nonempty disjoint blocks
/// whose union is the whole facet list. Each block generates a
/// subcomplex.
struct Cover {
    Complex ambient;
    std::vector<std::vector<std::size_t>> blocks;

    bool is_partition() const {
        std::vector<bool> seen(ambient.facet_count(), false);
        if (blocks.empty()) return false;
        for (const auto& block : blocks) {
            if (block.empty()) return false;
            for (auto f : block) {
                if (f >= ambient.facet_count() || seen[f]) return false;
                seen[f] = true;
            }
        }
        for (bool s : seen)
            if (!s) return false;
        return true;
    }
};

/// Interval result of a budgeted category computation. `exact` means
/// every partition with fewer blocks than the witness was refuted with
/// no budget exhaustion below the upper bound.
struct CatResult {
    std::size_t lower = 0;
    std::size_t upper = 0;
    bool exact = false;
    std::optional<Cover> witness;
};

struct CategoricalWitness {
    std::string vertex;     // image of the constant map reached
    ContiguityChain chain;  // from the inclusion to that constant
};

struct CategoricalOptions {
    std::size_t budget = kDefaultBudget;
    /// Forests in connected graphs are exactly the categorical
    /// subcomplexes; lets cyclic blocks be refuted without a search.
    bool forest_fast_path = true;
    /// Blocks whose components are strongly collapsible get their chain
    /// from the collapse log instead of a search.
    bool collapse_fast_path = true;
    bool memoize = true;
};

namespace detail {

// Chain from the inclusion of `sub` to a constant, built from strong
// collapses: each component is collapsed to a point by replaying its
// core log (everything sitting on a removed vertex moves to the
// dominator), then each collapsed component slides along a path of K to
// the least vertex of the enclosing K-component. Succeeds only when
// every component of `sub` is strongly collapsible and all of them live
// in one component of K.
inline std::optional<CategoricalWitness> collapse_based_chain(const Complex& k,
                                                              const Complex& sub) {
    std::vector<std::size_t> sub_to_k(sub.vertex_count());
    for (std::size_t v = 0; v < sub.vertex_count(); ++v) {
        auto idx = k.index_of(sub.label(v));
        if (!idx) return std::nullopt;
        sub_to_k[v] = *idx;
    }

    auto k_components = k.component_ids();
    std::size_t home = k_components[sub_to_k[0]];
    for (auto v : sub_to_k)
        if (k_components[v] != home) return std::nullopt;
    std::size_t target = SIZE_MAX;
    for (std::size_t v = 0; v < k.vertex_count(); ++v)
        if (k_components[v] == home) { target = v; break; }

    // Components of sub, in canonical order of their least vertex.
    auto ids = sub.component_ids();
    std::vector<std::size_t> reps;
    for (std::size_t v = 0; v < sub.vertex_count(); ++v)
        if (std::find(reps.begin(), reps.end(), ids[v]) == reps.end()) reps.push_back(ids[v]);

    struct ComponentPlan {
        std::vector<CollapseStep> steps;
        std::string core_vertex;
        std::vector<std::size_t> members;  // sub vertex indices
    };
    std::vector<ComponentPlan> plans;
    for (auto rep : reps) {
        std::vector<std::vector<std::string>> gens;
        for (std::size_t f = 0; f < sub.facet_count(); ++f) {
            auto idx = sub.facets()[f].indices();
            if (ids[idx[0]] == rep) gens.push_back(sub.facet_vertices(f));
        }
        Complex piece = Complex::from_facets(gens);
        auto cr = core(piece);
        if (cr.complex.vertex_count() != 1) return std::nullopt;
        ComponentPlan plan{std::move(cr.steps), cr.complex.label(0), {}};
        for (std::size_t v = 0; v < sub.vertex_count(); ++v)
            if (ids[v] == rep) plan.members.push_back(v);
        plans.push_back(std::move(plan));
    }

    // Co-facet adjacency of K for the slide phase.
    std::vector<Bitset> adjacency(k.vertex_count(), Bitset(k.vertex_count()));
    for (const auto& facet : k.facets())
        facet.for_each([&](std::size_t v) { adjacency[v] |= facet; });

    auto sub_ptr = std::make_shared<const Complex>(sub);
    auto k_ptr = std::make_shared<const Complex>(k);
    std::vector<std::uint16_t> pos(sub.vertex_count());
    for (std::size_t v = 0; v < sub.vertex_count(); ++v)
        pos[v] = static_cast<std::uint16_t>(sub_to_k[v]);

    std::vector<VertexMap> maps;
    maps.emplace_back(sub_ptr, k_ptr, pos);

    for (const auto& plan : plans) {
        for (const auto& step : plan.steps) {
            std::uint16_t from = static_cast<std::uint16_t>(*k.index_of(step.removed));
            std::uint16_t to = static_cast<std::uint16_t>(*k.index_of(step.dominator));
            bool moved = false;
            for (auto v : plan.members)
                if (pos[v] == from) { pos[v] = to; moved = true; }
            if (moved) maps.emplace_back(sub_ptr, k_ptr, pos);
        }
        // Slide the collapsed component along a shortest K-path.
        std::size_t at = *k.index_of(plan.core_vertex);
        if (at == target) continue;
        std::vector<std::size_t> parent(k.vertex_count(), SIZE_MAX);
        std::vector<bool> visited(k.vertex_count(), false);
        std::deque<std::size_t> queue{at};
        visited[at] = true;
        while (!queue.empty() && !visited[target]) {
            std::size_t v = queue.front();
            queue.pop_front();
            adjacency[v].for_each([&](std::size_t w) {
                if (visited[w]) return;
                visited[w] = true;
                parent[w] = v;
                queue.push_back(w);
            });
        }
        if (!visited[target]) return std::nullopt;
        std::vector<std::size_t> path;
        for (std::size_t x = target; x != SIZE_MAX; x = parent[x]) path.push_back(x);
        std::reverse(path.begin(), path.end());
        for (std::size_t i = 1; i < path.size(); ++i) {
            for (auto v : plan.members)
                pos[v] = static_cast<std::uint16_t>(path[i]);
            maps.emplace_back(sub_ptr, k_ptr, pos);
        }
    }

    return CategoricalWitness{k.label(target), ContiguityChain(std::move(maps))};
}

inline std::string facet_subset_key(const std::vector<std::size_t>& subset) {
    std::ostringstream out;
    for (auto f : subset) out << f << ',';
    return out.str();
}

struct CategoricalMemo {
    std::mutex mutex;
    std::unordered_map<std::string, Decision3<CategoricalWitness>> entries;

    static CategoricalMemo& instance() {
        static CategoricalMemo memo;
        return memo;
    }
};

}  // namespace detail

/**
 * Is the subcomplex generated by the given facet subset categorical in
 * K, i.e. is its inclusion in the contiguity class of a constant map?
 * Decided by a goal-set search from the inclusion with all constants as
 * goals, after the two sound fast paths. Memoized on (K, subset).
 */
inline Decision3<CategoricalWitness> is_categorical(const Complex& k,
                                                    std::vector<std::size_t> facet_subset,
                                                    const CategoricalOptions& opts = {}) {
    if (facet_subset.empty()) throw std::invalid_argument("facet subset must be nonempty");
    std::sort(facet_subset.begin(), facet_subset.end());
    facet_subset.erase(std::unique(facet_subset.begin(), facet_subset.end()), facet_subset.end());
    for (auto f : facet_subset)
        if (f >= k.facet_count()) throw std::invalid_argument("facet index out of range");

    std::string memo_key;
    if (opts.memoize) {
        memo_key = k.canonical_text() + '#' + detail::facet_subset_key(facet_subset) + '#' +
                   (opts.forest_fast_path ? '1' : '0') + (opts.collapse_fast_path ? '1' : '0');
        auto& memo = detail::CategoricalMemo::instance();
        std::lock_guard<std::mutex> lock(memo.mutex);
        auto it = memo.entries.find(memo_key);
        if (it != memo.entries.end() &&
            (it->second.outcome != Outcome::unknown || it->second.budget >= opts.budget))
            return it->second;
    }

    Complex sub = k.subcomplex(facet_subset);
    Decision3<CategoricalWitness> result;
    result.budget = opts.budget;

    bool decided = false;
    if (opts.collapse_fast_path) {
        if (auto witness = detail::collapse_based_chain(k, sub)) {
            result.outcome = Outcome::yes;
            result.witness = std::move(witness);
            decided = true;
        }
    }
    if (!decided && opts.forest_fast_path && k.dimension() <= 1 && k.connected()) {
        // Connected graph: categorical subcomplexes are exactly forests,
        // and a forest would have been certified by the collapse path.
        GraphView g(sub);
        std::vector<std::size_t> all_edges(g.edge_count());
        for (std::size_t e = 0; e < g.edge_count(); ++e) all_edges[e] = e;
        if (!is_forest(g, all_edges)) {
            result.outcome = Outcome::no;
            decided = true;
        }
    }
    if (!decided) {
        auto inclusion = VertexMap::inclusion(sub, k);
        auto search = contiguity_class_reachable(
            inclusion, [](const VertexMap& m) { return m.is_constant(); }, opts.budget);
        result.outcome = search.outcome;
        result.visited = search.visited;
        if (search.yes()) {
            const auto& last = search.witness->back();
            result.witness =
                CategoricalWitness{last.target().label(last.assignment()[0]), *search.witness};
        }
    }

    if (opts.memoize) {
        auto& memo = detail::CategoricalMemo::instance();
        std::lock_guard<std::mutex> lock(memo.mutex);
        memo.entries[memo_key] = result;
    }
    return result;
}

struct ScatOptions {
    std::size_t budget = kDefaultBudget;
    /// scat is a strong homotopy invariant: compute on the core and
    /// transfer the answer (and the cover) back.
    bool use_core = true;
    /// Connected graphs: scat = arboricity - 1, witnessed by the forest
    /// decomposition.
    bool graph_fast_path = true;
    /// Passes the sound shortcuts down to the block tests.
    bool categorical_fast_paths = true;
    /// Cap on partition-search nodes per level; 0 means `budget`.
    std::size_t partition_node_cap = 0;
};

inline CatResult gscat(const Complex& k);

namespace detail {

enum class LevelOutcome { found, refuted, tainted };

struct LevelResult {
    LevelOutcome outcome;
    std::optional<Cover> cover;
};

struct LevelSearch {
    const Complex* k;
    std::size_t block_count;
    CategoricalOptions cat;
    std::size_t node_cap;
    std::size_t nodes = 0;
    bool taint = false;
    std::vector<std::vector<std::size_t>> blocks;
    std::vector<Outcome> status;
    std::optional<Cover> found;

    // RGS enumeration: facet i may join an open block or open the next
    // one; a block whose test comes back No can never become categorical
    // again, so the branch is cut.
    void assign(std::size_t facet, std::size_t used) {
        if (found || taint) return;
        if (++nodes > node_cap) {
            taint = true;
            return;
        }
        std::size_t m = k->facet_count();
        if (used + (m - facet) < block_count) return;  // cannot fill all blocks
        if (facet == m) {
            if (used != block_count) return;
            for (std::size_t b = 0; b < used; ++b) {
                if (status[b] == Outcome::unknown) {
                    taint_partition();
                    return;
                }
            }
            Cover cover{*k, blocks};
            cover.blocks.resize(used);
            found = std::move(cover);
            return;
        }
        std::size_t limit = std::min(block_count - 1, used);
        for (std::size_t b = 0; b <= limit && !found && !taint; ++b) {
            blocks[b].push_back(facet);
            Outcome previous = status[b];
            auto test = is_categorical(*k, blocks[b], cat);
            status[b] = test.outcome;
            if (test.outcome != Outcome::no)
                assign(facet + 1, std::max(used, b + 1));
            status[b] = previous;
            blocks[b].pop_back();
        }
    }

    void taint_partition() { partial_taint = true; }
    bool partial_taint = false;
};

inline LevelResult search_level(const Complex& k, std::size_t block_count,
                                const CategoricalOptions& cat, std::size_t node_cap) {
    LevelSearch search{&k, block_count, cat, node_cap};
    search.blocks.resize(block_count);
    search.status.assign(block_count, Outcome::unknown);
    search.assign(0, 0);
    if (search.found) return {LevelOutcome::found, std::move(search.found)};
    if (search.taint || search.partial_taint) return {LevelOutcome::tainted, std::nullopt};
    return {LevelOutcome::refuted, std::nullopt};
}

/// Retraction K -> core(K) composed from the collapse log.
inline std::vector<std::size_t> core_retraction(const Complex& k, const CoreResult& cr) {
    std::vector<std::string> position(k.vertex_count());
    for (std::size_t v = 0; v < k.vertex_count(); ++v) position[v] = k.label(v);
    for (const auto& step : cr.steps)
        for (auto& p : position)
            if (p == step.removed) p = step.dominator;
    std::vector<std::size_t> out(k.vertex_count());
    for (std::size_t v = 0; v < k.vertex_count(); ++v) out[v] = *cr.complex.index_of(position[v]);
    return out;
}

/// Carries a cover of the core back to a cover of K: each facet of K is
/// assigned to the block of the canonically least core facet containing
/// its image under the retraction.
inline Cover transfer_cover(const Complex& k, const CoreResult& cr, const Cover& inner) {
    auto retraction = core_retraction(k, cr);
    const Complex& k0 = cr.complex;
    std::vector<std::size_t> block_of_core_facet(k0.facet_count(), SIZE_MAX);
    for (std::size_t b = 0; b < inner.blocks.size(); ++b)
        for (auto f : inner.blocks[b]) block_of_core_facet[f] = b;

    Cover out{k, std::vector<std::vector<std::size_t>>(inner.blocks.size())};
    for (std::size_t f = 0; f < k.facet_count(); ++f) {
        Bitset image(k0.vertex_count());
        k.facets()[f].for_each([&](std::size_t v) { image.set(retraction[v]); });
        std::size_t host = SIZE_MAX;
        for (std::size_t g = 0; g < k0.facet_count(); ++g)
            if (image.is_subset_of(k0.facets()[g])) { host = g; break; }
        if (host == SIZE_MAX) throw std::logic_error("retraction image missed the core");
        out.blocks[block_of_core_facet[host]].push_back(f);
    }
    out.blocks.erase(std::remove_if(out.blocks.begin(), out.blocks.end(),
                                    [](const auto& b) { return b.empty(); }),
                     out.blocks.end());
    return out;
}

inline CatResult scat_on(const Complex& k, const ScatOptions& opts) {
    if (k.vertex_count() == 1) {
        std::vector<std::size_t> all(k.facet_count());
        for (std::size_t f = 0; f < k.facet_count(); ++f) all[f] = f;
        return CatResult{0, 0, true, Cover{k, {all}}};
    }

    if (opts.graph_fast_path && k.dimension() <= 1 && k.connected()) {
        GraphView g(k);
        auto [count, decomposition] = arboricity(g);
        Cover cover{k, {}};
        for (const auto& forest : decomposition.forests) {
            std::vector<std::size_t> block;
            for (auto e : forest) block.push_back(g.edge_facet(e));
            std::sort(block.begin(), block.end());
            cover.blocks.push_back(std::move(block));
        }
        return CatResult{count - 1, count - 1, true, std::move(cover)};
    }

    CategoricalOptions cat;
    cat.budget = opts.budget;
    cat.forest_fast_path = opts.categorical_fast_paths;
    cat.collapse_fast_path = opts.categorical_fast_paths;
    std::size_t node_cap = opts.partition_node_cap ? opts.partition_node_cap : opts.budget;

    // Upper bound: gscat when affordable, otherwise the singleton cover
    // (every facet is categorical on its own).
    CatResult bound;
    if (k.dimension() <= 1 || k.facet_count() <= 12) {
        bound = gscat(k);
    } else {
        Cover singletons{k, {}};
        for (std::size_t f = 0; f < k.facet_count(); ++f) singletons.blocks.push_back({f});
        bound = CatResult{0, k.facet_count() - 1, false, std::move(singletons)};
    }

    for (std::size_t level = 0; level < bound.upper; ++level) {
        auto res = search_level(k, level + 1, cat, node_cap);
        if (res.outcome == LevelOutcome::found)
            return CatResult{level, level, true, std::move(res.cover)};
        if (res.outcome == LevelOutcome::tainted)
            return CatResult{level, bound.upper, false, bound.witness};
    }
    return CatResult{bound.upper, bound.upper, true, bound.witness};
}

}  // namespace detail

/**
 * Simplicial LS-category of K: the least n such that n+1 categorical
 * facet blocks cover K, as an interval with a revalidatable cover
 * witness for the upper bound.
 */
inline CatResult scat(const Complex& k, const ScatOptions& opts = {}) {
    if (opts.budget == 0) throw std::invalid_argument("budget must be at least 1");
    if (!opts.use_core) return detail::scat_on(k, opts);
    auto cr = core(k);
    CatResult inner = detail::scat_on(cr.complex, opts);
    if (cr.steps.empty()) return inner;
    CatResult out = inner;
    if (inner.witness) out.witness = detail::transfer_cover(k, cr, *inner.witness);
    return out;
}

namespace detail {

struct GscatSearch {
    const Complex* k;
    std::size_t block_count;
    bool graph_prune;
    std::vector<std::vector<std::size_t>> blocks;
    std::map<std::vector<std::size_t>, bool>* sc_memo;
    std::optional<Cover> found;

    bool block_strongly_collapsible(const std::vector<std::size_t>& block) {
        auto it = sc_memo->find(block);
        if (it != sc_memo->end()) return it->second;
        bool ok = is_strongly_collapsible(k->subcomplex(block));
        sc_memo->emplace(block, ok);
        return ok;
    }

    bool block_has_cycle(const std::vector<std::size_t>& block) {
        detail::UnionFind uf(k->vertex_count());
        for (auto f : block) {
            auto idx = k->facets()[f].indices();
            if (idx.size() == 2 && !uf.unite(idx[0], idx[1])) return true;
        }
        return false;
    }

    void assign(std::size_t facet, std::size_t used) {
        if (found) return;
        std::size_t m = k->facet_count();
        if (used + (m - facet) < block_count) return;
        if (facet == m) {
            if (used != block_count) return;
            for (std::size_t b = 0; b < used; ++b)
                if (!block_strongly_collapsible(blocks[b])) return;
            Cover cover{*k, blocks};
            cover.blocks.resize(used);
            found = std::move(cover);
            return;
        }
        std::size_t limit = std::min(block_count - 1, used);
        for (std::size_t b = 0; b <= limit && !found; ++b) {
            blocks[b].push_back(facet);
            // In a 1-complex a strongly collapsible block is a tree, so a
            // cyclic partial block is a dead end. In higher dimension no
            // hereditary prune is sound: blocks may become collapsible
            // only once later facets join them.
            if (!graph_prune || !block_has_cycle(blocks[b]))
                assign(facet + 1, std::max(used, b + 1));
            blocks[b].pop_back();
        }
    }
};

}  // namespace detail

/**
 * Geometric simplicial category: the partition search with every block
 * required to be strongly collapsible in itself. Always exact. Not a
 * strong homotopy invariant, hence never computed on the core.
 */
inline CatResult gscat(const Complex& k) {
    std::map<std::vector<std::size_t>, bool> sc_memo;
    bool graph_prune = k.dimension() <= 1;
    for (std::size_t blocks = 1; blocks <= k.facet_count(); ++blocks) {
        detail::GscatSearch search{&k, blocks, graph_prune, {}, &sc_memo, std::nullopt};
        search.blocks.resize(blocks);
        search.assign(0, 0);
        if (search.found) return CatResult{blocks - 1, blocks - 1, true, std::move(search.found)};
    }
    throw std::logic_error("gscat found no cover, including the singleton one");
}

struct WscatWitness {
    VertexMap delta;        // K -> T^{n+1}K
    ContiguityChain chain;  // diagonal to (inclusion o delta) inside K^{n+1}
};

/**
 * Decides wscat K <= n: does the diagonal K -> K^{n+1} factor through
 * the fat wedge T^{n+1}K up to contiguity class? All simplicial maps
 * delta: K -> T^{n+1}K are enumerated as the goal set of one search from
 * the diagonal. Exhaustive only at very small scale (roughly up to 4
 * vertices and n <= 2).
 */
inline Decision3<WscatWitness> wscat_le(const Complex& k, const std::string& basepoint,
                                        std::size_t n, std::size_t budget = kDefaultBudget) {
    if (!k.connected()) throw std::invalid_argument("wscat needs a connected complex");
    if (!k.has_vertex(basepoint)) throw std::invalid_argument("basepoint is not a vertex");
    if (budget == 0) throw std::invalid_argument("budget must be at least 1");

    auto wedge = fat_wedge(k, basepoint, n + 1);
    const Complex& big = wedge.inclusion.target();

    // Every simplicial delta: K -> T^{n+1}K, indexed by the assignment of
    // its composition with the inclusion.
    std::vector<std::optional<std::uint16_t>> free_all(k.vertex_count());
    bool complete = true;
    auto deltas = detail::simplicial_extensions(k, wedge.complex, free_all, budget, &complete);
    Decision3<WscatWitness> out;
    out.budget = budget;
    if (!complete) {
        out.outcome = Outcome::unknown;
        return out;
    }

    std::unordered_map<std::vector<std::uint16_t>, std::vector<std::uint16_t>,
                       detail::AssignmentHash>
        goal_to_delta;
    for (const auto& d : deltas) {
        std::vector<std::uint16_t> composed(k.vertex_count());
        for (std::size_t v = 0; v < k.vertex_count(); ++v)
            composed[v] = wedge.inclusion.assignment()[d[v]];
        goal_to_delta.emplace(std::move(composed), d);
    }

    auto diag = diagonal(k, n + 1);
    // The diagonal and the goal maps must live in the same map space.
    auto big_ptr = std::make_shared<const Complex>(big);
    VertexMap start(diag.source_ptr(), big_ptr, diag.assignment());

    auto search = contiguity_class_reachable(
        start, [&](const VertexMap& m) { return goal_to_delta.count(m.assignment()) > 0; },
        budget);
    out.visited = search.visited;
    out.outcome = search.outcome;
    if (search.yes()) {
        auto delta_assignment = goal_to_delta.at(search.witness->back().assignment());
        VertexMap delta(diag.source_ptr(), std::make_shared<const Complex>(wedge.complex),
                        delta_assignment);
        out.witness = WscatWitness{std::move(delta), *search.witness};
    }
    return out;
}

struct Interval {
    std::size_t lower = 0;
    std::size_t upper = 0;
    bool exact = false;
};

struct InequalityLine {
    std::string name;
    Interval lhs;
    Interval rhs;
    bool has_rhs = true;
    std::string status;  // confirmed | compatible | violated
    std::string note;
};

struct InequalityReport {
    std::vector<InequalityLine> lines;
    bool any_violated = false;
};

namespace detail {

inline Interval to_interval(const CatResult& r) { return Interval{r.lower, r.upper, r.exact}; }

inline InequalityLine compare(const std::string& name, Interval lhs, Interval rhs,
                              const std::string& note = "") {
    InequalityLine line{name, lhs, rhs, true, "", note};
    if (lhs.upper <= rhs.lower)
        line.status = "confirmed";
    else if (lhs.lower > rhs.upper)
        line.status = "violated";
    else
        line.status = "compatible";
    return line;
}

}  // namespace detail

/**
 * Evaluates the inequality suite relating scat, gscat, subdivision,
 * products, fat-wedge factorizations and the core bounds, with interval
 * semantics: an inequality is only reported violated when the two
 * intervals are disjoint in the wrong order.
 */
inline InequalityReport verify_inequalities(const Complex& k, const Complex& l,
                                            std::size_t budget = kDefaultBudget) {
    ScatOptions opts;
    opts.budget = budget;
    InequalityReport report;
    auto push = [&](InequalityLine line) {
        report.any_violated = report.any_violated || line.status == "violated";
        report.lines.push_back(std::move(line));
    };

    auto scat_k = scat(k, opts);
    auto scat_l = scat(l, opts);

    push(detail::compare("scat(sd K) <= scat K", detail::to_interval(scat(sd(k), opts)),
                         detail::to_interval(scat_k)));
    push(detail::compare("scat(sd L) <= scat L", detail::to_interval(scat(sd(l), opts)),
                         detail::to_interval(scat_l)));

    auto scat_kl = scat(product(k, l), opts);
    Interval lhs{scat_kl.lower + 1, scat_kl.upper + 1, scat_kl.exact};
    Interval rhs{(scat_k.lower + 1) * (scat_l.lower + 1), (scat_k.upper + 1) * (scat_l.upper + 1),
                 scat_k.exact && scat_l.exact};
    push(detail::compare("scat(K x L) + 1 <= (scat K + 1)(scat L + 1)", lhs, rhs));

    auto core_bounds = [&](const std::string& name, const Complex& cx, const CatResult& res) {
        auto cr = core(cx);
        Interval vertices{cr.complex.vertex_count() - 1, cr.complex.vertex_count() - 1, true};
        Interval facets{cr.complex.facet_count() - 1, cr.complex.facet_count() - 1, true};
        push(detail::compare("scat " + name + " < core vertex count", detail::to_interval(res),
                             vertices));
        push(detail::compare("scat " + name + " < core facet count", detail::to_interval(res),
                             facets));
        if (cx.dimension() <= 1 || cx.facet_count() <= 12) {
            auto g = gscat(cx);
            push(detail::compare("scat " + name + " <= gscat " + name, detail::to_interval(res),
                                 detail::to_interval(g)));
        }
    };
    core_bounds("K", k, scat_k);
    core_bounds("L", l, scat_l);

    // Fat-wedge factorization bound, attempted only at very small scale.
    if (k.vertex_count() <= 4 && k.connected()) {
        const std::string& basepoint = k.label(0);
        std::optional<std::size_t> wscat_upper;
        for (std::size_t n = 0; n <= 2 && !wscat_upper; ++n) {
            auto d = wscat_le(k, basepoint, n, budget);
            if (d.yes()) wscat_upper = n;
            if (d.unknown()) break;
        }
        if (wscat_upper) {
            push(detail::compare("scat K <= wscat K", detail::to_interval(scat_k),
                                 Interval{*wscat_upper, *wscat_upper, true},
                                 "wscat bound from the first fat-wedge factorization"));
        } else {
            InequalityLine line{"scat K <= wscat K", detail::to_interval(scat_k), Interval{}, false,
                                "compatible", "no fat-wedge factorization found for n <= 2"};
            push(std::move(line));
        }
    }

    return report;
}

}  // namespace scatkit

#endif  // SCATKIT_CATEGORY_HPP
