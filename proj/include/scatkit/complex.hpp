/**
 * Finite abstract simplicial complexes stored by their facets, and the
 * strong-collapse calculus on them: links, stars, dominated vertices,
 * cores, isomorphism and (simple) collapsibility.
 *
 * A complex is immutable after construction; every operation here is a
 * pure function and safe to call concurrently.
 */

#ifndef SCATKIT_COMPLEX_HPP
#define SCATKIT_COMPLEX_HPP

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace scatkit {

namespace detail {

/// Dynamic bitset sized to a fixed universe. Desk-scale complexes keep
/// this to one or two 64-bit words.
class Bitset {
public:
    Bitset() = default;
    explicit Bitset(std::size_t universe)
        : size_(universe), words_((universe + 63) / 64, 0) {}

    std::size_t universe() const { return size_; }

    void set(std::size_t i) { words_[i >> 6] |= (std::uint64_t{1} << (i & 63)); }
    void reset(std::size_t i) { words_[i >> 6] &= ~(std::uint64_t{1} << (i & 63)); }
    bool test(std::size_t i) const {
        return (words_[i >> 6] >> (i & 63)) & 1;
    }

    std::size_t count() const {
        std::size_t c = 0;
        for (auto w : words_) c += static_cast<std::size_t>(__builtin_popcountll(w));
        return c;
    }

    bool none() const {
        for (auto w : words_) if (w) return false;
        return true;
    }

    bool is_subset_of(const Bitset& other) const {
        for (std::size_t i = 0; i < words_.size(); ++i)
            if (words_[i] & ~other.words_[i]) return false;
        return true;
    }

    bool intersects(const Bitset& other) const {
        for (std::size_t i = 0; i < words_.size(); ++i)
            if (words_[i] & other.words_[i]) return true;
        return false;
    }

    Bitset& operator|=(const Bitset& other) {
        for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= other.words_[i];
        return *this;
    }

    Bitset& operator&=(const Bitset& other) {
        for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= other.words_[i];
        return *this;
    }

    bool operator==(const Bitset& other) const {
        return size_ == other.size_ && words_ == other.words_;
    }

    std::vector<std::size_t> indices() const {
        std::vector<std::size_t> out;
        out.reserve(count());
        for (std::size_t w = 0; w < words_.size(); ++w) {
            std::uint64_t word = words_[w];
            while (word) {
                out.push_back(w * 64 + static_cast<std::size_t>(__builtin_ctzll(word)));
                word &= word - 1;
            }
        }
        return out;
    }

    template <class Fn>
    void for_each(Fn&& fn) const {
        for (std::size_t w = 0; w < words_.size(); ++w) {
            std::uint64_t word = words_[w];
            while (word) {
                fn(w * 64 + static_cast<std::size_t>(__builtin_ctzll(word)));
                word &= word - 1;
            }
        }
    }

private:
    std::size_t size_ = 0;
    std::vector<std::uint64_t> words_;
};

// Canonical order on simplices: lexicographic on the increasing vertex
// index sequences, shorter prefixes first ({a,b} < {a,b,c} < {b,c}).
inline bool simplex_less(const Bitset& a, const Bitset& b) {
    auto ia = a.indices();
    auto ib = b.indices();
    return std::lexicographical_compare(ia.begin(), ia.end(), ib.begin(), ib.end());
}

class UnionFind {
public:
    explicit UnionFind(std::size_t n) : parent_(n), size_(n, 1) {
        for (std::size_t i = 0; i < n; ++i) parent_[i] = i;
    }

    std::size_t find(std::size_t x) {
        while (parent_[x] != x) {
            parent_[x] = parent_[parent_[x]];
            x = parent_[x];
        }
        return x;
    }

    // Returns false if x and y were already in the same set.
    bool unite(std::size_t x, std::size_t y) {
        x = find(x);
        y = find(y);
        if (x == y) return false;
        if (size_[x] < size_[y]) std::swap(x, y);
        parent_[y] = x;
        size_[x] += size_[y];
        return true;
    }

    bool same(std::size_t x, std::size_t y) { return find(x) == find(y); }

private:
    std::vector<std::size_t> parent_;
    std::vector<std::size_t> size_;
};

inline void check_label(const std::string& label) {
    if (label.empty())
        throw std::invalid_argument("vertex label must be nonempty");
    for (char c : label)
        if (std::isspace(static_cast<unsigned char>(c)))
            throw std::invalid_argument("vertex label must not contain whitespace: '" + label + "'");
}

}  // namespace detail

/**
 * A finite abstract simplicial complex over string vertex labels.
 *
 * Only the facets (maximal simplices) are stored; a vertex set S is a
 * simplex iff it is contained in some facet. Invariants: the facet set is
 * an antichain, every vertex lies in at least one facet, labels are unique
 * and iteration follows the canonical (lexicographic) label order. The
 * empty complex is rejected at construction.
 */
class Complex {
public:
    using Bitset = detail::Bitset;

    /// Builds the complex generated by the given simplices; non-maximal
    /// inputs are absorbed into maximal ones.
    static Complex from_facets(const std::vector<std::vector<std::string>>& facet_lists) {
        if (facet_lists.empty())
            throw std::invalid_argument("a complex needs at least one facet");
        std::set<std::string> label_set;
        for (const auto& facet : facet_lists) {
            if (facet.empty())
                throw std::invalid_argument("a facet needs at least one vertex");
            for (const auto& label : facet) {
                detail::check_label(label);
                label_set.insert(label);
            }
        }
        Complex k;
        k.labels_.assign(label_set.begin(), label_set.end());
        if (k.labels_.size() > 60000)
            throw std::invalid_argument("complex too large");
        for (std::size_t i = 0; i < k.labels_.size(); ++i)
            k.index_[k.labels_[i]] = i;
        std::vector<Bitset> candidates;
        for (const auto& facet : facet_lists) {
            Bitset b(k.labels_.size());
            for (const auto& label : facet) b.set(k.index_.at(label));
            candidates.push_back(std::move(b));
        }
        k.facets_ = maximalize(std::move(candidates));
        return k;
    }

    std::size_t vertex_count() const { return labels_.size(); }
    const std::vector<std::string>& labels() const { return labels_; }

    const std::string& label(std::size_t index) const { return labels_.at(index); }

    std::optional<std::size_t> index_of(const std::string& label) const {
        auto it = index_.find(label);
        if (it == index_.end()) return std::nullopt;
        return it->second;
    }

    bool has_vertex(const std::string& label) const { return index_.count(label) > 0; }

    std::size_t facet_count() const { return facets_.size(); }
    const std::vector<Bitset>& facets() const { return facets_; }

    std::vector<std::string> facet_vertices(std::size_t facet) const {
        std::vector<std::string> out;
        facets_.at(facet).for_each([&](std::size_t i) { out.push_back(labels_[i]); });
        return out;
    }

    std::vector<std::vector<std::string>> facet_lists() const {
        std::vector<std::vector<std::string>> out;
        out.reserve(facets_.size());
        for (std::size_t f = 0; f < facets_.size(); ++f) out.push_back(facet_vertices(f));
        return out;
    }

    /// dim K = max facet cardinality - 1.
    int dimension() const {
        std::size_t best = 0;
        for (const auto& f : facets_) best = std::max(best, f.count());
        return static_cast<int>(best) - 1;
    }

    bool is_simplex_mask(const Bitset& mask) const {
        if (mask.none()) return false;
        for (const auto& f : facets_)
            if (mask.is_subset_of(f)) return true;
        return false;
    }

    /// True iff all listed vertices belong to K and span a simplex.
    /// Labels outside K are allowed and make the answer false.
    bool is_simplex(const std::vector<std::string>& vertices) const {
        if (vertices.empty()) return false;
        Bitset mask(labels_.size());
        for (const auto& label : vertices) {
            auto idx = index_of(label);
            if (!idx) return false;
            mask.set(*idx);
        }
        return is_simplex_mask(mask);
    }

    /// Link of v: all simplices s with v not in s and s + {v} a simplex.
    Complex link(const std::string& v) const {
        std::size_t vi = require_vertex(v);
        std::vector<std::vector<std::string>> gens;
        for (const auto& f : facets_) {
            if (!f.test(vi)) continue;
            std::vector<std::string> rest;
            f.for_each([&](std::size_t i) { if (i != vi) rest.push_back(labels_[i]); });
            if (!rest.empty()) gens.push_back(std::move(rest));
        }
        if (gens.empty())
            throw std::domain_error("link of an isolated vertex is empty");
        return from_facets(gens);
    }

    /// Star of v: the subcomplex generated by the facets containing v.
    Complex star(const std::string& v) const {
        std::size_t vi = require_vertex(v);
        std::vector<std::vector<std::string>> gens;
        for (std::size_t f = 0; f < facets_.size(); ++f)
            if (facets_[f].test(vi)) gens.push_back(facet_vertices(f));
        return from_facets(gens);
    }

    /// True iff every facet containing v also contains w.
    bool dominated_by(const std::string& v, const std::string& w) const {
        if (v == w) throw std::invalid_argument("a vertex cannot dominate itself");
        std::size_t vi = require_vertex(v);
        std::size_t wi = require_vertex(w);
        for (const auto& f : facets_)
            if (f.test(vi) && !f.test(wi)) return false;
        return true;
    }

    /// Canonically least vertex dominating v, if any.
    std::optional<std::string> dominator_of(const std::string& v) const {
        std::size_t vi = require_vertex(v);
        Bitset common(labels_.size());
        bool first = true;
        for (const auto& f : facets_) {
            if (!f.test(vi)) continue;
            if (first) {
                common = f;
                first = false;
            } else {
                common &= f;
            }
        }
        common.reset(vi);
        if (common.none()) return std::nullopt;
        return labels_[common.indices().front()];
    }

    /// Deletes the open star of v: facets are restricted to the remaining
    /// vertices and re-maximalized.
    Complex without_vertex(const std::string& v) const {
        std::size_t vi = require_vertex(v);
        std::vector<std::vector<std::string>> gens;
        for (const auto& f : facets_) {
            std::vector<std::string> rest;
            f.for_each([&](std::size_t i) { if (i != vi) rest.push_back(labels_[i]); });
            if (!rest.empty()) gens.push_back(std::move(rest));
        }
        if (gens.empty())
            throw std::domain_error("deleting the only vertex would leave an empty complex");
        return from_facets(gens);
    }

    /// Subcomplex generated by the facets with the given indices.
    Complex subcomplex(const std::vector<std::size_t>& facet_indices) const {
        if (facet_indices.empty())
            throw std::invalid_argument("a subcomplex needs at least one facet");
        std::vector<std::vector<std::string>> gens;
        for (auto f : facet_indices) gens.push_back(facet_vertices(f));
        return from_facets(gens);
    }

    /// True iff every facet of `sub` is a simplex of this complex.
    bool contains_subcomplex(const Complex& sub) const {
        for (std::size_t f = 0; f < sub.facet_count(); ++f)
            if (!is_simplex(sub.facet_vertices(f))) return false;
        return true;
    }

    /// Vertex component ids under "shares a facet" adjacency.
    std::vector<std::size_t> component_ids() const {
        detail::UnionFind uf(labels_.size());
        for (const auto& f : facets_) {
            auto idx = f.indices();
            for (std::size_t i = 1; i < idx.size(); ++i) uf.unite(idx[0], idx[i]);
        }
        std::vector<std::size_t> ids(labels_.size());
        for (std::size_t i = 0; i < labels_.size(); ++i) ids[i] = uf.find(i);
        return ids;
    }

    bool connected() const {
        auto ids = component_ids();
        for (auto id : ids)
            if (id != ids[0]) return false;
        return true;
    }

    bool operator==(const Complex& other) const {
        return labels_ == other.labels_ && facet_key() == other.facet_key();
    }
    bool operator!=(const Complex& other) const { return !(*this == other); }

    /// Canonical text form: one facet per line, labels space-separated,
    /// facets in canonical order. Doubles as a hash key for memo tables.
    std::string canonical_text() const {
        std::ostringstream out;
        for (std::size_t f = 0; f < facets_.size(); ++f) {
            bool first = true;
            facets_[f].for_each([&](std::size_t i) {
                if (!first) out << ' ';
                out << labels_[i];
                first = false;
            });
            out << '\n';
        }
        return out.str();
    }

private:
    Complex() = default;

    std::size_t require_vertex(const std::string& v) const {
        auto idx = index_of(v);
        if (!idx) throw std::invalid_argument("unknown vertex '" + v + "'");
        return *idx;
    }

    std::vector<std::vector<std::size_t>> facet_key() const {
        std::vector<std::vector<std::size_t>> key;
        key.reserve(facets_.size());
        for (const auto& f : facets_) key.push_back(f.indices());
        return key;
    }

    static std::vector<Bitset> maximalize(std::vector<Bitset> candidates) {
        // Dedupe, then drop anything contained in another candidate.
        std::sort(candidates.begin(), candidates.end(),
                  [](const Bitset& a, const Bitset& b) { return detail::simplex_less(a, b); });
        candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());
        std::vector<Bitset> keep;
        for (std::size_t i = 0; i < candidates.size(); ++i) {
            bool maximal = true;
            for (std::size_t j = 0; j < candidates.size() && maximal; ++j) {
                if (i == j) continue;
                if (candidates[i].is_subset_of(candidates[j]) && !(candidates[i] == candidates[j]))
                    maximal = false;
            }
            if (maximal) keep.push_back(candidates[i]);
        }
        return keep;
    }

    std::vector<std::string> labels_;
    std::map<std::string, std::size_t> index_;
    std::vector<Bitset> facets_;
};

/// One elementary strong collapse: at the moment of application every
/// facet containing `removed` contains `dominator`.
struct CollapseStep {
    std::string removed;
    std::string dominator;
};

struct CoreResult {
    Complex complex;
    std::vector<CollapseStep> steps;
};

/// Picks which dominated vertex to delete next; used to check that the
/// core is independent of the elimination order. Receives all candidate
/// steps (each dominated vertex paired with its least dominator) and
/// returns the index of the chosen one.
using CollapsePicker =
    std::function<std::size_t(const Complex&, const std::vector<CollapseStep>&)>;

/// Repeatedly deletes a dominated vertex until none is left. The default
/// policy removes the canonically smallest dominated vertex, dominated by
/// the canonically smallest dominator, so the result is deterministic.
inline CoreResult core(const Complex& k, const CollapsePicker& picker = {}) {
    Complex current = k;
    std::vector<CollapseStep> steps;
    for (;;) {
        std::vector<CollapseStep> candidates;
        for (const auto& v : current.labels()) {
            if (auto w = current.dominator_of(v))
                candidates.push_back(CollapseStep{v, *w});
        }
        if (candidates.empty()) break;
        std::size_t chosen = picker ? picker(current, candidates) : 0;
        if (chosen >= candidates.size())
            throw std::invalid_argument("collapse picker chose an invalid candidate");
        steps.push_back(candidates[chosen]);
        current = current.without_vertex(candidates[chosen].removed);
    }
    return CoreResult{std::move(current), std::move(steps)};
}

/// scat K = 0 iff K is strongly collapsible iff its core is a vertex.
inline bool is_strongly_collapsible(const Complex& k) {
    return core(k).complex.vertex_count() == 1;
}

namespace detail {

struct IsoState {
    const Complex* a;
    const Complex* b;
    std::vector<std::size_t> image;     // a-vertex -> b-vertex
    std::vector<bool> used;             // b-vertex taken
};

// Sorted multiset of the sizes of the facets containing each vertex.
inline std::vector<std::vector<std::size_t>> vertex_signatures(const Complex& k) {
    std::vector<std::vector<std::size_t>> sig(k.vertex_count());
    for (const auto& f : k.facets()) {
        std::size_t size = f.count();
        f.for_each([&](std::size_t i) { sig[i].push_back(size); });
    }
    for (auto& s : sig) std::sort(s.begin(), s.end());
    return sig;
}

inline bool iso_consistent(IsoState& st, std::size_t just_assigned) {
    const Complex& a = *st.a;
    const Complex& b = *st.b;
    for (const auto& f : a.facets()) {
        if (!f.test(just_assigned)) continue;
        Bitset mapped(b.vertex_count());
        bool complete = true;
        f.for_each([&](std::size_t i) {
            if (st.image[i] != SIZE_MAX)
                mapped.set(st.image[i]);
            else
                complete = false;
        });
        if (complete) {
            // A facet must land exactly on a facet of b.
            bool hit = false;
            for (const auto& g : b.facets())
                if (mapped == g) { hit = true; break; }
            if (!hit) return false;
        } else {
            // The mapped part must fit inside some facet of b of the
            // right cardinality.
            std::size_t want = f.count();
            bool feasible = false;
            for (const auto& g : b.facets())
                if (g.count() == want && mapped.is_subset_of(g)) { feasible = true; break; }
            if (!feasible) return false;
        }
    }
    return true;
}

inline bool iso_search(IsoState& st, std::size_t next,
                       const std::vector<std::vector<std::size_t>>& sig_a,
                       const std::vector<std::vector<std::size_t>>& sig_b) {
    if (next == st.a->vertex_count()) return true;
    for (std::size_t cand = 0; cand < st.b->vertex_count(); ++cand) {
        if (st.used[cand] || sig_a[next] != sig_b[cand]) continue;
        st.image[next] = cand;
        st.used[cand] = true;
        if (iso_consistent(st, next) && iso_search(st, next + 1, sig_a, sig_b)) return true;
        st.image[next] = SIZE_MAX;
        st.used[cand] = false;
    }
    return false;
}

}  // namespace detail

/// Exact backtracking isomorphism test with degree/facet-size pruning.
/// Returns the canonically first vertex bijection carrying facets onto
/// facets, or nothing if the complexes are not isomorphic.
inline std::optional<std::map<std::string, std::string>> isomorphic(const Complex& a,
                                                                    const Complex& b) {
    if (a.vertex_count() != b.vertex_count()) return std::nullopt;
    if (a.facet_count() != b.facet_count()) return std::nullopt;
    auto sizes = [](const Complex& k) {
        std::vector<std::size_t> s;
        for (const auto& f : k.facets()) s.push_back(f.count());
        std::sort(s.begin(), s.end());
        return s;
    };
    if (sizes(a) != sizes(b)) return std::nullopt;
    auto sig_a = detail::vertex_signatures(a);
    auto sig_b = detail::vertex_signatures(b);
    {
        auto sa = sig_a;
        auto sb = sig_b;
        std::sort(sa.begin(), sa.end());
        std::sort(sb.begin(), sb.end());
        if (sa != sb) return std::nullopt;
    }
    detail::IsoState st{&a, &b, std::vector<std::size_t>(a.vertex_count(), SIZE_MAX),
                        std::vector<bool>(b.vertex_count(), false)};
    if (!detail::iso_search(st, 0, sig_a, sig_b)) return std::nullopt;
    std::map<std::string, std::string> out;
    for (std::size_t i = 0; i < a.vertex_count(); ++i) out[a.label(i)] = b.label(st.image[i]);
    return out;
}

/// Cores are unique up to isomorphism, so strong homotopy equivalence
/// reduces to comparing them.
inline bool strong_homotopy_equivalent(const Complex& a, const Complex& b) {
    return isomorphic(core(a).complex, core(b).complex).has_value();
}

namespace detail {

// Free pairs (s, t): s is a codimension-one face of the facet t and of no
// other facet, so (s, t) can be removed by an elementary simple collapse.
inline std::vector<std::pair<Bitset, std::size_t>> free_pairs(const Complex& k) {
    std::vector<std::pair<Bitset, std::size_t>> out;
    for (std::size_t t = 0; t < k.facet_count(); ++t) {
        const Bitset& facet = k.facets()[t];
        if (facet.count() < 2) continue;
        facet.for_each([&](std::size_t drop) {
            Bitset face = facet;
            face.reset(drop);
            bool free_face = true;
            for (std::size_t other = 0; other < k.facet_count(); ++other) {
                if (other == t) continue;
                if (face.is_subset_of(k.facets()[other])) { free_face = false; break; }
            }
            if (free_face) out.emplace_back(face, t);
        });
    }
    return out;
}

inline Complex collapse_pair(const Complex& k, const Bitset& face, std::size_t t) {
    std::vector<std::vector<std::string>> gens;
    for (std::size_t f = 0; f < k.facet_count(); ++f)
        if (f != t) gens.push_back(k.facet_vertices(f));
    const Bitset& facet = k.facets()[t];
    facet.for_each([&](std::size_t drop) {
        Bitset boundary = facet;
        boundary.reset(drop);
        if (boundary == face) return;
        std::vector<std::string> verts;
        boundary.for_each([&](std::size_t i) { verts.push_back(k.label(i)); });
        gens.push_back(std::move(verts));
    });
    return Complex::from_facets(gens);
}

inline bool collapsible_search(const Complex& k, std::set<std::string>& dead) {
    if (k.vertex_count() == 1) return true;
    std::string key = k.canonical_text();
    if (dead.count(key)) return false;
    for (const auto& [face, t] : free_pairs(k)) {
        if (collapsible_search(collapse_pair(k, face, t), dead)) return true;
    }
    dead.insert(key);
    return false;
}

}  // namespace detail

/// True iff K reduces to a single vertex by elementary simple collapses.
/// Exact backtracking over collapse sequences, memoized on the canonical
/// form of the intermediate complexes. Intended for fixture certification
/// at desk scale.
inline bool is_collapsible(const Complex& k) {
    std::set<std::string> dead;
    return detail::collapsible_search(k, dead);
}

}  // namespace scatkit

#endif  // SCATKIT_COMPLEX_HPP
