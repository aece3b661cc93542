/**
 * Simplicial maps between complexes, direct contiguity, and budgeted
 * contiguity-class searches.
 *
 * Contiguity classes are decided by breadth-first search on the map
 * graph: nodes are simplicial maps with a fixed source and target, edges
 * are direct contiguity. Searches are deterministic (canonical neighbor
 * order) and budget-sound: a No answer means the whole component of the
 * start map was exhausted.
 */

#ifndef SCATKIT_MAPS_HPP
#define SCATKIT_MAPS_HPP

#include <cstdint>
#include <deque>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "scatkit/complex.hpp"

namespace scatkit {

inline constexpr std::size_t kDefaultBudget = 200000;

/**
 * A total vertex map between two complexes. Simpliciality is a checked
 * property, not assumed. Maps are value types; equality requires equal
 * assignments and equal source/target complexes, which prevents
 * accidental reuse across subdivision or product constructions.
 */
class VertexMap {
public:
    using ComplexPtr = std::shared_ptr<const Complex>;

    VertexMap(Complex source, Complex target, const std::map<std::string, std::string>& assignment)
        : VertexMap(std::make_shared<const Complex>(std::move(source)),
                    std::make_shared<const Complex>(std::move(target)), assignment) {}

    VertexMap(ComplexPtr source, ComplexPtr target,
              const std::map<std::string, std::string>& assignment)
        : source_(std::move(source)), target_(std::move(target)) {
        assignment_.resize(source_->vertex_count());
        for (std::size_t v = 0; v < source_->vertex_count(); ++v) {
            auto it = assignment.find(source_->label(v));
            if (it == assignment.end())
                throw std::invalid_argument("assignment is not total: missing '" +
                                            source_->label(v) + "'");
            auto w = target_->index_of(it->second);
            if (!w)
                throw std::invalid_argument("assignment image '" + it->second +
                                            "' is not a vertex of the target");
            assignment_[v] = static_cast<std::uint16_t>(*w);
        }
    }

    VertexMap(ComplexPtr source, ComplexPtr target, std::vector<std::uint16_t> assignment)
        : source_(std::move(source)),
          target_(std::move(target)),
          assignment_(std::move(assignment)) {
        if (assignment_.size() != source_->vertex_count())
            throw std::invalid_argument("assignment size does not match the source");
        for (auto w : assignment_)
            if (w >= target_->vertex_count())
                throw std::invalid_argument("assignment image out of range");
    }

    static VertexMap identity(const Complex& k) {
        auto ptr = std::make_shared<const Complex>(k);
        std::vector<std::uint16_t> id(k.vertex_count());
        for (std::size_t v = 0; v < id.size(); ++v) id[v] = static_cast<std::uint16_t>(v);
        return VertexMap(ptr, ptr, std::move(id));
    }

    static VertexMap constant(const Complex& source, const Complex& target,
                              const std::string& vertex) {
        auto w = target.index_of(vertex);
        if (!w) throw std::invalid_argument("constant image '" + vertex + "' not in target");
        std::vector<std::uint16_t> a(source.vertex_count(), static_cast<std::uint16_t>(*w));
        return VertexMap(std::make_shared<const Complex>(source),
                         std::make_shared<const Complex>(target), std::move(a));
    }

    /// Inclusion of a subcomplex; throws if `sub` is not a subcomplex.
    static VertexMap inclusion(const Complex& sub, const Complex& ambient) {
        if (!ambient.contains_subcomplex(sub))
            throw std::invalid_argument("inclusion source is not a subcomplex of the ambient");
        std::vector<std::uint16_t> a(sub.vertex_count());
        for (std::size_t v = 0; v < sub.vertex_count(); ++v)
            a[v] = static_cast<std::uint16_t>(*ambient.index_of(sub.label(v)));
        return VertexMap(std::make_shared<const Complex>(sub),
                         std::make_shared<const Complex>(ambient), std::move(a));
    }

    const Complex& source() const { return *source_; }
    const Complex& target() const { return *target_; }
    const ComplexPtr& source_ptr() const { return source_; }
    const ComplexPtr& target_ptr() const { return target_; }
    const std::vector<std::uint16_t>& assignment() const { return assignment_; }

    std::string apply(const std::string& label) const {
        auto v = source_->index_of(label);
        if (!v) throw std::invalid_argument("unknown vertex '" + label + "'");
        return target_->label(assignment_[*v]);
    }

    std::map<std::string, std::string> assignment_labels() const {
        std::map<std::string, std::string> out;
        for (std::size_t v = 0; v < assignment_.size(); ++v)
            out[source_->label(v)] = target_->label(assignment_[v]);
        return out;
    }

    bool is_constant() const {
        for (auto w : assignment_)
            if (w != assignment_[0]) return false;
        return true;
    }

    bool same_frame(const VertexMap& other) const {
        return (source_ == other.source_ || *source_ == *other.source_) &&
               (target_ == other.target_ || *target_ == *other.target_);
    }

    bool operator==(const VertexMap& other) const {
        return assignment_ == other.assignment_ && same_frame(other);
    }
    bool operator!=(const VertexMap& other) const { return !(*this == other); }

private:
    ComplexPtr source_;
    ComplexPtr target_;
    std::vector<std::uint16_t> assignment_;
};

/// True iff the image of every facet of the source is a simplex of the
/// target. Faces are covered automatically: simplices are closed under
/// subsets.
inline bool is_simplicial(const VertexMap& f) {
    const Complex& src = f.source();
    const Complex& tgt = f.target();
    for (const auto& facet : src.facets()) {
        detail::Bitset image(tgt.vertex_count());
        facet.for_each([&](std::size_t v) { image.set(f.assignment()[v]); });
        if (!tgt.is_simplex_mask(image)) return false;
    }
    return true;
}

/// Direct contiguity: f(s) + g(s) spans a simplex of the target for every
/// simplex s. Checking facets suffices because the condition is monotone
/// under faces.
inline bool is_contiguous(const VertexMap& f, const VertexMap& g) {
    if (!f.same_frame(g))
        throw std::invalid_argument("contiguity requires equal source and target");
    if (!is_simplicial(f) || !is_simplicial(g))
        throw std::invalid_argument("contiguity requires simplicial maps");
    const Complex& src = f.source();
    const Complex& tgt = f.target();
    for (const auto& facet : src.facets()) {
        detail::Bitset image(tgt.vertex_count());
        facet.for_each([&](std::size_t v) {
            image.set(f.assignment()[v]);
            image.set(g.assignment()[v]);
        });
        if (!tgt.is_simplex_mask(image)) return false;
    }
    return true;
}

/// Restriction of f to a subcomplex of its source.
inline VertexMap restrict(const VertexMap& f, const Complex& sub) {
    if (!f.source().contains_subcomplex(sub))
        throw std::invalid_argument("restriction domain is not a subcomplex of the source");
    std::vector<std::uint16_t> a(sub.vertex_count());
    for (std::size_t v = 0; v < sub.vertex_count(); ++v) {
        auto idx = f.source().index_of(sub.label(v));
        a[v] = f.assignment()[*idx];
    }
    return VertexMap(std::make_shared<const Complex>(sub), f.target_ptr(), std::move(a));
}

inline VertexMap compose(const VertexMap& g, const VertexMap& f) {
    if (!(f.target_ptr() == g.source_ptr() || f.target() == g.source()))
        throw std::invalid_argument("compose: target of the inner map must equal the source of the outer map");
    std::vector<std::uint16_t> a(f.source().vertex_count());
    for (std::size_t v = 0; v < a.size(); ++v) a[v] = g.assignment()[f.assignment()[v]];
    return VertexMap(f.source_ptr(), g.target_ptr(), std::move(a));
}

/**
 * A witness that two maps lie in the same contiguity class: a nonempty
 * sequence of simplicial maps with shared source and target in which
 * every consecutive pair is directly contiguous. Validated on
 * construction.
 */
class ContiguityChain {
public:
    explicit ContiguityChain(std::vector<VertexMap> maps) : maps_(std::move(maps)) {
        std::string why;
        if (!valid(maps_, &why)) throw std::invalid_argument("invalid contiguity chain: " + why);
    }

    static bool valid(const std::vector<VertexMap>& maps, std::string* why = nullptr) {
        auto fail = [&](const std::string& reason) {
            if (why) *why = reason;
            return false;
        };
        if (maps.empty()) return fail("chain is empty");
        for (std::size_t i = 0; i < maps.size(); ++i) {
            if (!maps[i].same_frame(maps[0])) return fail("maps do not share source and target");
            if (!is_simplicial(maps[i])) return fail("map " + std::to_string(i) + " is not simplicial");
        }
        for (std::size_t i = 0; i + 1 < maps.size(); ++i)
            if (!is_contiguous(maps[i], maps[i + 1]))
                return fail("maps " + std::to_string(i) + " and " + std::to_string(i + 1) +
                            " are not directly contiguous");
        return true;
    }

    const std::vector<VertexMap>& maps() const { return maps_; }
    std::size_t length() const { return maps_.size(); }
    const VertexMap& front() const { return maps_.front(); }
    const VertexMap& back() const { return maps_.back(); }

private:
    std::vector<VertexMap> maps_;
};

enum class Outcome { yes, no, unknown };

/// Three-valued answer for budgeted searches. Yes carries a witness that
/// revalidates under the relevant checker; No is only returned when the
/// search provably exhausted its space; Unknown reports how much of the
/// budget was spent.
template <class Witness>
struct Decision3 {
    Outcome outcome = Outcome::unknown;
    std::optional<Witness> witness;
    std::size_t visited = 0;
    std::size_t budget = 0;

    bool yes() const { return outcome == Outcome::yes; }
    bool no() const { return outcome == Outcome::no; }
    bool unknown() const { return outcome == Outcome::unknown; }
};

namespace detail {

struct AssignmentHash {
    std::size_t operator()(const std::vector<std::uint16_t>& a) const {
        std::size_t h = 1469598103934665603ull;
        for (auto x : a) {
            h ^= x;
            h *= 1099511628211ull;
        }
        return h;
    }
};

/**
 * Enumerates, in canonical order, the assignments g that are directly
 * contiguous to f: for every facet s of the source, f(s) + g(s) must span
 * a simplex of the target. Such a g is automatically simplicial.
 */
class NeighborEnumerator {
public:
    NeighborEnumerator(const Complex& source, const Complex& target)
        : source_(&source), target_(&target) {
        facets_of_vertex_.resize(source.vertex_count());
        for (std::size_t fi = 0; fi < source.facet_count(); ++fi)
            source.facets()[fi].for_each(
                [&](std::size_t v) { facets_of_vertex_[v].push_back(fi); });
    }

    template <class Emit>
    void for_each_neighbor(const std::vector<std::uint16_t>& f, Emit&& emit) const {
        std::size_t n = source_->vertex_count();
        std::vector<Bitset> unions(source_->facet_count(), Bitset(target_->vertex_count()));
        for (std::size_t fi = 0; fi < source_->facet_count(); ++fi)
            source_->facets()[fi].for_each([&](std::size_t v) { unions[fi].set(f[v]); });
        std::vector<std::uint16_t> g(n, 0);
        descend(f, unions, g, 0, emit);
    }

private:
    template <class Emit>
    void descend(const std::vector<std::uint16_t>& f, std::vector<Bitset>& unions,
                 std::vector<std::uint16_t>& g, std::size_t v, Emit&& emit) const {
        if (v == source_->vertex_count()) {
            emit(g);
            return;
        }
        std::vector<std::size_t> touched;
        touched.reserve(facets_of_vertex_[v].size());
        for (std::size_t w = 0; w < target_->vertex_count(); ++w) {
            touched.clear();
            bool feasible = true;
            for (auto fi : facets_of_vertex_[v]) {
                if (!unions[fi].test(w)) {
                    unions[fi].set(w);
                    touched.push_back(fi);
                }
                if (!extendable(unions[fi])) {
                    feasible = false;
                    break;
                }
            }
            if (feasible) {
                g[v] = static_cast<std::uint16_t>(w);
                descend(f, unions, g, v + 1, emit);
            }
            for (auto fi : touched) unions[fi].reset(w);
        }
    }

    bool extendable(const Bitset& mask) const {
        for (const auto& facet : target_->facets())
            if (mask.is_subset_of(facet)) return true;
        return false;
    }

    const Complex* source_;
    const Complex* target_;
    std::vector<std::vector<std::size_t>> facets_of_vertex_;
};

}  // namespace detail

using ReachDecision = Decision3<ContiguityChain>;

/**
 * Breadth-first search over the map graph starting at f. Returns Yes with
 * a shortest chain to the first map satisfying `goal` (canonically least
 * among shortest), No if the component of f was exhausted, or Unknown
 * once `budget` distinct maps have been visited.
 */
inline ReachDecision contiguity_class_reachable(
    const VertexMap& f, const std::function<bool(const VertexMap&)>& goal, std::size_t budget) {
    if (budget == 0) throw std::invalid_argument("budget must be at least 1");
    if (!is_simplicial(f)) throw std::invalid_argument("start map must be simplicial");

    auto source = f.source_ptr();
    auto target = f.target_ptr();
    auto make_map = [&](const std::vector<std::uint16_t>& a) {
        return VertexMap(source, target, a);
    };

    std::vector<std::vector<std::uint16_t>> nodes;
    std::vector<std::size_t> parent;
    std::unordered_map<std::vector<std::uint16_t>, std::size_t, detail::AssignmentHash> seen;

    auto build_chain = [&](std::size_t idx) {
        std::vector<VertexMap> maps;
        for (std::size_t at = idx; at != SIZE_MAX; at = parent[at]) maps.push_back(make_map(nodes[at]));
        std::reverse(maps.begin(), maps.end());
        return ContiguityChain(std::move(maps));
    };

    nodes.push_back(f.assignment());
    parent.push_back(SIZE_MAX);
    seen.emplace(f.assignment(), 0);
    if (goal(f)) {
        ReachDecision d;
        d.outcome = Outcome::yes;
        d.witness = build_chain(0);
        d.visited = 1;
        d.budget = budget;
        return d;
    }

    detail::NeighborEnumerator enumerator(*source, *target);
    std::deque<std::size_t> frontier{0};
    bool exhausted_budget = false;
    std::optional<std::size_t> goal_index;

    while (!frontier.empty() && !goal_index && !exhausted_budget) {
        std::size_t at = frontier.front();
        frontier.pop_front();
        auto current = nodes[at];
        enumerator.for_each_neighbor(current, [&](const std::vector<std::uint16_t>& g) {
            if (goal_index || exhausted_budget) return;
            if (seen.count(g)) return;
            if (nodes.size() >= budget) {
                exhausted_budget = true;
                return;
            }
            std::size_t idx = nodes.size();
            nodes.push_back(g);
            parent.push_back(at);
            seen.emplace(g, idx);
            if (goal(make_map(g))) {
                goal_index = idx;
                return;
            }
            frontier.push_back(idx);
        });
    }

    ReachDecision d;
    d.budget = budget;
    d.visited = nodes.size();
    if (goal_index) {
        d.outcome = Outcome::yes;
        d.witness = build_chain(*goal_index);
    } else if (exhausted_budget) {
        d.outcome = Outcome::unknown;
    } else {
        d.outcome = Outcome::no;
    }
    return d;
}

/// Wrapper over the reachability search with the single goal {g}.
inline ReachDecision in_same_contiguity_class(const VertexMap& f, const VertexMap& g,
                                              std::size_t budget = kDefaultBudget) {
    if (!f.same_frame(g))
        throw std::invalid_argument("maps must share source and target");
    if (!is_simplicial(g)) throw std::invalid_argument("goal map must be simplicial");
    return contiguity_class_reachable(
        f, [&](const VertexMap& m) { return m.assignment() == g.assignment(); }, budget);
}

struct ExtensionWitness {
    VertexMap extension;
    ContiguityChain chain;
};

namespace detail {

// All simplicial maps K -> M agreeing with `fixed` wherever it is set.
// Stops after `node_cap` search nodes (0 = unlimited) and reports whether
// the enumeration completed.
inline std::vector<std::vector<std::uint16_t>> simplicial_extensions(
    const Complex& k, const Complex& m, const std::vector<std::optional<std::uint16_t>>& fixed,
    std::size_t node_cap = 0, bool* complete = nullptr) {
    std::vector<std::vector<std::size_t>> facets_of_vertex(k.vertex_count());
    for (std::size_t fi = 0; fi < k.facet_count(); ++fi)
        k.facets()[fi].for_each([&](std::size_t v) { facets_of_vertex[v].push_back(fi); });

    std::vector<Bitset> images(k.facet_count(), Bitset(m.vertex_count()));
    std::vector<std::vector<std::uint16_t>> out;
    std::vector<std::uint16_t> g(k.vertex_count(), 0);
    std::size_t nodes = 0;
    bool capped = false;

    auto extendable = [&](const Bitset& mask) {
        for (const auto& facet : m.facets())
            if (mask.is_subset_of(facet)) return true;
        return false;
    };

    std::function<void(std::size_t)> descend = [&](std::size_t v) {
        if (capped) return;
        if (node_cap && ++nodes > node_cap) {
            capped = true;
            return;
        }
        if (v == k.vertex_count()) {
            out.push_back(g);
            return;
        }
        std::size_t lo = 0, hi = m.vertex_count();
        if (fixed[v]) {
            lo = *fixed[v];
            hi = lo + 1;
        }
        for (std::size_t w = lo; w < hi; ++w) {
            std::vector<std::size_t> touched;
            bool feasible = true;
            for (auto fi : facets_of_vertex[v]) {
                if (!images[fi].test(w)) {
                    images[fi].set(w);
                    touched.push_back(fi);
                }
                if (!extendable(images[fi])) {
                    feasible = false;
                    break;
                }
            }
            if (feasible) {
                g[v] = static_cast<std::uint16_t>(w);
                descend(v + 1);
            }
            for (auto fi : touched) images[fi].reset(w);
        }
    };
    descend(0);
    if (complete) *complete = !capped;
    return out;
}

}  // namespace detail

/**
 * Contiguity extension decision for a subcomplex inclusion L of K and
 * maps phi ~ psi: L -> M with a given extension phi_ext of phi to K.
 * Decides whether some simplicial extension psi_ext of psi lies in the
 * contiguity class of phi_ext, by enumerating all extensions of psi and
 * running one goal-set search from phi_ext.
 */
inline Decision3<ExtensionWitness> has_contiguity_extension(const Complex& sub, const Complex& k,
                                                            const VertexMap& phi,
                                                            const VertexMap& psi,
                                                            const VertexMap& phi_ext,
                                                            std::size_t budget = kDefaultBudget) {
    if (!k.contains_subcomplex(sub))
        throw std::invalid_argument("L must be a subcomplex of K");
    if (!phi.same_frame(psi))
        throw std::invalid_argument("phi and psi must share source and target");
    if (phi.source() != sub || phi_ext.source() != k || !(phi_ext.target() == phi.target()))
        throw std::invalid_argument("maps do not fit the extension frame");
    if (!is_simplicial(phi) || !is_simplicial(psi) || !is_simplicial(phi_ext))
        throw std::invalid_argument("all maps must be simplicial");
    for (std::size_t v = 0; v < sub.vertex_count(); ++v)
        if (phi_ext.apply(sub.label(v)) != phi.target().label(phi.assignment()[v]))
            throw std::invalid_argument("phi_ext does not restrict to phi");

    auto pre = in_same_contiguity_class(phi, psi, budget);
    if (pre.no())
        throw std::invalid_argument("phi and psi are not in the same contiguity class");
    if (pre.unknown()) {
        Decision3<ExtensionWitness> d;
        d.outcome = Outcome::unknown;
        d.visited = pre.visited;
        d.budget = budget;
        return d;
    }

    const Complex& m = phi.target();
    std::vector<std::optional<std::uint16_t>> fixed(k.vertex_count());
    for (std::size_t v = 0; v < sub.vertex_count(); ++v)
        fixed[*k.index_of(sub.label(v))] = psi.assignment()[v];
    bool complete = true;
    auto extensions = detail::simplicial_extensions(k, m, fixed, budget, &complete);

    Decision3<ExtensionWitness> d;
    d.budget = budget;
    if (!complete) {
        d.outcome = Outcome::unknown;
        return d;
    }
    if (extensions.empty()) {
        d.outcome = Outcome::no;
        return d;
    }

    std::unordered_map<std::vector<std::uint16_t>, bool, detail::AssignmentHash> goal_set;
    for (auto& a : extensions) goal_set.emplace(a, true);

    auto search = contiguity_class_reachable(
        phi_ext, [&](const VertexMap& g) { return goal_set.count(g.assignment()) > 0; }, budget);
    d.visited = search.visited;
    d.outcome = search.outcome;
    if (search.yes()) {
        d.witness = ExtensionWitness{search.witness->back(), *search.witness};
    }
    return d;
}

}  // namespace scatkit

#endif  // SCATKIT_MAPS_HPP
