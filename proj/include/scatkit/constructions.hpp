/**
 * Complex constructors: barycentric subdivision and induced maps, the
 * constructive subdivision contiguity chain, categorical products with
 * projections/diagonals, joins (cone, suspension) and fat wedges.
 *
 * Vertex labels of derived complexes are canonical serializations of the
 * underlying data ("{a,b}" for the subdivision vertex of simplex {a,b},
 * "(a,b)" for a product pair), so outputs are self-describing and round
 * trip through the file formats.
 */

#ifndef SCATKIT_CONSTRUCTIONS_HPP
#define SCATKIT_CONSTRUCTIONS_HPP

#include <algorithm>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "scatkit/complex.hpp"
#include "scatkit/maps.hpp"

namespace scatkit {

/// Canonical label of a simplex: sorted vertex labels, brace-wrapped.
inline std::string simplex_label(std::vector<std::string> labels) {
    std::sort(labels.begin(), labels.end());
    std::ostringstream out;
    out << '{';
    for (std::size_t i = 0; i < labels.size(); ++i) {
        if (i) out << ',';
        out << labels[i];
    }
    out << '}';
    return out.str();
}

namespace detail {

/// The subdivision together with the underlying base simplex of each of
/// its vertices (base vertex indices, aligned with the vertex order of
/// the subdivision complex).
struct SdStructure {
    Complex complex;
    std::vector<std::vector<std::size_t>> underlying;
};

inline SdStructure build_sd(const Complex& k) {
    // All simplices of k, as sorted base index vectors.
    std::set<std::vector<std::size_t>> simplices;
    for (const auto& facet : k.facets()) {
        auto idx = facet.indices();
        if (idx.size() > 22)
            throw std::invalid_argument("facet too large to subdivide");
        std::size_t subsets = (std::size_t{1} << idx.size());
        for (std::size_t mask = 1; mask < subsets; ++mask) {
            std::vector<std::size_t> s;
            for (std::size_t b = 0; b < idx.size(); ++b)
                if (mask & (std::size_t{1} << b)) s.push_back(idx[b]);
            simplices.insert(std::move(s));
        }
    }

    auto label_of = [&](const std::vector<std::size_t>& s) {
        std::vector<std::string> labels;
        for (auto i : s) labels.push_back(k.label(i));
        return simplex_label(std::move(labels));
    };

    // Facets of sd k are the maximal inclusion chains; in a simplicial
    // complex these run from a vertex up to a facet, one vertex added per
    // step, so they correspond to permutations of facet vertex lists.
    std::vector<std::vector<std::string>> gens;
    for (const auto& facet : k.facets()) {
        auto idx = facet.indices();
        std::sort(idx.begin(), idx.end());
        do {
            std::vector<std::string> chain;
            std::vector<std::size_t> prefix;
            for (auto i : idx) {
                prefix.push_back(i);
                auto sorted = prefix;
                std::sort(sorted.begin(), sorted.end());
                chain.push_back(label_of(sorted));
            }
            gens.push_back(std::move(chain));
        } while (std::next_permutation(idx.begin(), idx.end()));
    }

    SdStructure out{Complex::from_facets(gens), {}};
    std::map<std::string, std::vector<std::size_t>> by_label;
    for (const auto& s : simplices) by_label[label_of(s)] = s;
    if (by_label.size() != simplices.size())
        throw std::invalid_argument("vertex labels make subdivision labels ambiguous");
    out.underlying.resize(out.complex.vertex_count());
    for (std::size_t v = 0; v < out.complex.vertex_count(); ++v)
        out.underlying[v] = by_label.at(out.complex.label(v));
    return out;
}

}  // namespace detail

/// First barycentric subdivision: vertices are the simplices of K,
/// simplices are the inclusion chains.
inline Complex sd(const Complex& k) { return detail::build_sd(k).complex; }

inline Complex sd_iter(const Complex& k, std::size_t n) {
    Complex out = k;
    for (std::size_t i = 0; i < n; ++i) out = sd(out);
    return out;
}

/// Induced map on subdivisions: the vertex {s} goes to {phi(s)}.
/// Functorial: sd(id) = id and sd(g o f) = sd(g) o sd(f).
inline VertexMap sd_map(const VertexMap& phi) {
    if (!is_simplicial(phi)) throw std::invalid_argument("sd_map needs a simplicial map");
    auto src = detail::build_sd(phi.source());
    auto tgt = detail::build_sd(phi.target());
    std::vector<std::uint16_t> assignment(src.complex.vertex_count());
    for (std::size_t v = 0; v < src.complex.vertex_count(); ++v) {
        std::set<std::size_t> image;
        for (auto i : src.underlying[v]) image.insert(phi.assignment()[i]);
        std::vector<std::string> labels;
        for (auto i : image) labels.push_back(phi.target().label(i));
        auto idx = tgt.complex.index_of(simplex_label(std::move(labels)));
        if (!idx) throw std::logic_error("image simplex missing from the subdivided target");
        assignment[v] = static_cast<std::uint16_t>(*idx);
    }
    return VertexMap(std::make_shared<const Complex>(src.complex),
                     std::make_shared<const Complex>(tgt.complex), std::move(assignment));
}

/**
 * Constructive witness that subdivision preserves contiguity: for
 * directly contiguous phi, psi the returned chain connects sd(phi) to
 * sd(psi) through the map F({s}) = {phi(s) + psi(s)}, flipping one
 * vertex per step. Among the not-yet-flipped vertices whose images
 * disagree with F, the flip always picks one of maximal dimension
 * (canonically least on ties), which keeps every intermediate map
 * simplicial and every consecutive pair directly contiguous.
 */
inline ContiguityChain sd_contiguity_chain(const VertexMap& phi, const VertexMap& psi) {
    if (!phi.same_frame(psi))
        throw std::invalid_argument("maps must share source and target");
    if (!is_contiguous(phi, psi))
        throw std::invalid_argument("maps must be directly contiguous");

    auto src = detail::build_sd(phi.source());
    auto tgt = detail::build_sd(phi.target());
    auto src_ptr = std::make_shared<const Complex>(src.complex);
    auto tgt_ptr = std::make_shared<const Complex>(tgt.complex);

    auto induced = [&](const VertexMap& f) {
        std::vector<std::uint16_t> a(src.complex.vertex_count());
        for (std::size_t v = 0; v < a.size(); ++v) {
            std::set<std::size_t> image;
            for (auto i : src.underlying[v]) image.insert(f.assignment()[i]);
            std::vector<std::string> labels;
            for (auto i : image) labels.push_back(f.target().label(i));
            a[v] = static_cast<std::uint16_t>(*tgt.complex.index_of(simplex_label(std::move(labels))));
        }
        return a;
    };

    auto sd_phi = induced(phi);
    auto sd_psi = induced(psi);

    std::vector<std::uint16_t> middle(src.complex.vertex_count());
    for (std::size_t v = 0; v < middle.size(); ++v) {
        std::set<std::size_t> image;
        for (auto i : src.underlying[v]) {
            image.insert(phi.assignment()[i]);
            image.insert(psi.assignment()[i]);
        }
        std::vector<std::string> labels;
        for (auto i : image) labels.push_back(phi.target().label(i));
        middle[v] = static_cast<std::uint16_t>(*tgt.complex.index_of(simplex_label(std::move(labels))));
    }

    auto flip_order = [&](const std::vector<std::uint16_t>& from) {
        std::vector<std::size_t> violators;
        for (std::size_t v = 0; v < from.size(); ++v)
            if (from[v] != middle[v]) violators.push_back(v);
        std::sort(violators.begin(), violators.end(), [&](std::size_t a, std::size_t b) {
            if (src.underlying[a].size() != src.underlying[b].size())
                return src.underlying[a].size() > src.underlying[b].size();
            return src.underlying[a] < src.underlying[b];
        });
        return violators;
    };

    auto half_chain = [&](const std::vector<std::uint16_t>& from) {
        std::vector<std::vector<std::uint16_t>> maps{from};
        auto current = from;
        for (auto v : flip_order(from)) {
            current[v] = middle[v];
            maps.push_back(current);
        }
        return maps;
    };

    auto down = half_chain(sd_phi);            // sd(phi) ... F
    auto up = half_chain(sd_psi);              // sd(psi) ... F
    std::vector<std::vector<std::uint16_t>> all = down;
    for (auto it = up.rbegin(); it != up.rend(); ++it) all.push_back(*it);

    std::vector<VertexMap> maps;
    for (const auto& a : all) {
        if (!maps.empty() && maps.back().assignment() == a) continue;
        maps.emplace_back(src_ptr, tgt_ptr, a);
    }
    return ContiguityChain(std::move(maps));
}

namespace detail {

/// A product of factors with the underlying factor-vertex tuple of each
/// product vertex (aligned with the product's vertex order).
struct ProductStructure {
    Complex complex;
    std::vector<std::vector<std::size_t>> tuples;
};

inline std::string tuple_label(const std::vector<const Complex*>& factors,
                               const std::vector<std::size_t>& tuple) {
    std::ostringstream out;
    out << '(';
    for (std::size_t i = 0; i < tuple.size(); ++i) {
        if (i) out << ',';
        out << factors[i]->label(tuple[i]);
    }
    out << ')';
    return out.str();
}

inline ProductStructure build_product(const std::vector<const Complex*>& factors) {
    if (factors.empty()) throw std::invalid_argument("product needs at least one factor");
    if (factors.size() == 1) {
        ProductStructure out{*factors[0], {}};
        out.tuples.resize(out.complex.vertex_count());
        for (std::size_t v = 0; v < out.complex.vertex_count(); ++v) out.tuples[v] = {v};
        return out;
    }

    // Facets are the grids s_1 x ... x s_n over facet tuples; the facet
    // antichain of each factor makes every grid maximal.
    std::vector<std::vector<std::string>> gens;
    std::vector<std::size_t> facet_choice(factors.size(), 0);
    for (;;) {
        std::vector<std::vector<std::size_t>> axes;
        for (std::size_t i = 0; i < factors.size(); ++i)
            axes.push_back(factors[i]->facets()[facet_choice[i]].indices());
        std::vector<std::string> grid;
        std::vector<std::size_t> pick(factors.size(), 0);
        for (;;) {
            std::vector<std::size_t> tuple(factors.size());
            for (std::size_t i = 0; i < factors.size(); ++i) tuple[i] = axes[i][pick[i]];
            grid.push_back(tuple_label(factors, tuple));
            std::size_t axis = 0;
            while (axis < factors.size() && ++pick[axis] == axes[axis].size()) {
                pick[axis] = 0;
                ++axis;
            }
            if (axis == factors.size()) break;
        }
        gens.push_back(std::move(grid));
        std::size_t slot = 0;
        while (slot < factors.size() && ++facet_choice[slot] == factors[slot]->facet_count()) {
            facet_choice[slot] = 0;
            ++slot;
        }
        if (slot == factors.size()) break;
    }

    ProductStructure out{Complex::from_facets(gens), {}};
    std::map<std::string, std::vector<std::size_t>> by_label;
    std::size_t tuple_count = 0;
    std::vector<std::size_t> tuple(factors.size(), 0);
    for (;;) {
        by_label[tuple_label(factors, tuple)] = tuple;
        ++tuple_count;
        std::size_t slot = 0;
        while (slot < factors.size() && ++tuple[slot] == factors[slot]->vertex_count()) {
            tuple[slot] = 0;
            ++slot;
        }
        if (slot == factors.size()) break;
    }
    if (by_label.size() != tuple_count)
        throw std::invalid_argument("vertex labels make product labels ambiguous");
    out.tuples.resize(out.complex.vertex_count());
    for (std::size_t v = 0; v < out.complex.vertex_count(); ++v)
        out.tuples[v] = by_label.at(out.complex.label(v));
    return out;
}

inline std::size_t tuple_index(const Complex& product,
                               const std::vector<const Complex*>& factors,
                               const std::vector<std::size_t>& tuple) {
    auto idx = product.index_of(tuple_label(factors, tuple));
    if (!idx) throw std::logic_error("tuple missing from product complex");
    return *idx;
}

}  // namespace detail

/// Categorical product: simplices are the vertex-pair sets whose two
/// coordinate projections are simplices.
inline Complex product(const Complex& k, const Complex& l) {
    return detail::build_product({&k, &l}).complex;
}

/// Iterated categorical product with flattened tuple labels; power(K, 1)
/// is K itself.
inline Complex power(const Complex& k, std::size_t n) {
    if (n == 0) throw std::invalid_argument("power needs n >= 1");
    std::vector<const Complex*> factors(n, &k);
    return detail::build_product(factors).complex;
}

/// Projection of K^n onto the j-th factor (0-based).
inline VertexMap power_projection(const Complex& k, std::size_t n, std::size_t j) {
    if (n == 0 || j >= n) throw std::invalid_argument("bad projection index");
    std::vector<const Complex*> factors(n, &k);
    auto p = detail::build_product(factors);
    std::vector<std::uint16_t> a(p.complex.vertex_count());
    for (std::size_t v = 0; v < a.size(); ++v)
        a[v] = static_cast<std::uint16_t>(p.tuples[v][j]);
    return VertexMap(std::make_shared<const Complex>(p.complex),
                     std::make_shared<const Complex>(k), std::move(a));
}

/// Projection of K x L onto a factor: which = 0 for K, 1 for L.
inline VertexMap product_projection(const Complex& k, const Complex& l, std::size_t which) {
    if (which > 1) throw std::invalid_argument("bad projection index");
    auto p = detail::build_product({&k, &l});
    const Complex& tgt = which == 0 ? k : l;
    std::vector<std::uint16_t> a(p.complex.vertex_count());
    for (std::size_t v = 0; v < a.size(); ++v)
        a[v] = static_cast<std::uint16_t>(p.tuples[v][which]);
    return VertexMap(std::make_shared<const Complex>(p.complex),
                     std::make_shared<const Complex>(tgt), std::move(a));
}

/// Diagonal v -> (v, ..., v) into K^n.
inline VertexMap diagonal(const Complex& k, std::size_t n) {
    if (n == 0) throw std::invalid_argument("diagonal needs n >= 1");
    if (n == 1) return VertexMap::identity(k);
    std::vector<const Complex*> factors(n, &k);
    auto p = detail::build_product(factors);
    std::vector<std::uint16_t> a(k.vertex_count());
    for (std::size_t v = 0; v < k.vertex_count(); ++v) {
        std::vector<std::size_t> tuple(n, v);
        a[v] = static_cast<std::uint16_t>(detail::tuple_index(p.complex, factors, tuple));
    }
    return VertexMap(std::make_shared<const Complex>(k),
                     std::make_shared<const Complex>(p.complex), std::move(a));
}

/// (f_1, ..., f_n): K -> L^n, all maps sharing source and target.
inline VertexMap tuple_map(const std::vector<VertexMap>& fs) {
    if (fs.empty()) throw std::invalid_argument("tuple_map needs n >= 1");
    for (const auto& f : fs)
        if (!f.same_frame(fs[0]))
            throw std::invalid_argument("tuple_map components must share source and target");
    if (fs.size() == 1) return fs[0];
    const Complex& k = fs[0].source();
    const Complex& l = fs[0].target();
    std::vector<const Complex*> factors(fs.size(), &l);
    auto p = detail::build_product(factors);
    std::vector<std::uint16_t> a(k.vertex_count());
    for (std::size_t v = 0; v < k.vertex_count(); ++v) {
        std::vector<std::size_t> tuple(fs.size());
        for (std::size_t i = 0; i < fs.size(); ++i) tuple[i] = fs[i].assignment()[v];
        a[v] = static_cast<std::uint16_t>(detail::tuple_index(p.complex, factors, tuple));
    }
    return VertexMap(fs[0].source_ptr(), std::make_shared<const Complex>(p.complex), std::move(a));
}

/// f x g: K x K' -> L x L'.
inline VertexMap product_map(const VertexMap& f, const VertexMap& g) {
    std::vector<const Complex*> src_factors{&f.source(), &g.source()};
    std::vector<const Complex*> tgt_factors{&f.target(), &g.target()};
    auto src = detail::build_product(src_factors);
    auto tgt = detail::build_product(tgt_factors);
    std::vector<std::uint16_t> a(src.complex.vertex_count());
    for (std::size_t v = 0; v < a.size(); ++v) {
        std::vector<std::size_t> tuple{f.assignment()[src.tuples[v][0]],
                                       g.assignment()[src.tuples[v][1]]};
        a[v] = static_cast<std::uint16_t>(detail::tuple_index(tgt.complex, tgt_factors, tuple));
    }
    return VertexMap(std::make_shared<const Complex>(src.complex),
                     std::make_shared<const Complex>(tgt.complex), std::move(a));
}

namespace detail {

inline std::string fresh_label(std::string base, const std::set<std::string>& taken) {
    if (!taken.count(base)) return base;
    for (std::size_t j = 1;; ++j) {
        std::string candidate = base + "_" + std::to_string(j);
        if (!taken.count(candidate)) return candidate;
    }
}

}  // namespace detail

/// Join K * L: facets are the unions of a facet of K and a facet of L.
/// Label clashes in L are renamed with a deterministic numeric suffix.
inline Complex join(const Complex& k, const Complex& l) {
    std::set<std::string> taken(k.labels().begin(), k.labels().end());
    std::map<std::string, std::string> renamed;
    for (const auto& label : l.labels()) {
        std::string fresh = detail::fresh_label(label, taken);
        renamed[label] = fresh;
        taken.insert(fresh);
    }
    std::vector<std::vector<std::string>> gens;
    for (std::size_t fk = 0; fk < k.facet_count(); ++fk) {
        for (std::size_t fl = 0; fl < l.facet_count(); ++fl) {
            std::vector<std::string> facet = k.facet_vertices(fk);
            for (const auto& label : l.facet_vertices(fl)) facet.push_back(renamed.at(label));
            gens.push_back(std::move(facet));
        }
    }
    return Complex::from_facets(gens);
}

inline Complex cone(const Complex& k, const std::string& apex = "apex") {
    detail::check_label(apex);
    return join(k, Complex::from_facets({{apex}}));
}

inline Complex suspension(const Complex& k, const std::string& pole0 = "pole0",
                          const std::string& pole1 = "pole1") {
    detail::check_label(pole0);
    detail::check_label(pole1);
    if (pole0 == pole1) throw std::invalid_argument("suspension poles must differ");
    return join(k, Complex::from_facets({{pole0}, {pole1}}));
}

struct FatWedge {
    Complex complex;
    VertexMap inclusion;  // into power(K, n)
    std::vector<std::vector<std::size_t>> tuples;  // base-vertex tuples per wedge vertex
};

/// n-th fat wedge of (K, v0): the union inside K^n of the subcomplexes
/// spanned by the vertex tuples whose j-th coordinate is the base point.
inline FatWedge fat_wedge(const Complex& k, const std::string& basepoint, std::size_t n) {
    if (n == 0) throw std::invalid_argument("fat wedge needs n >= 1");
    auto v0 = k.index_of(basepoint);
    if (!v0) throw std::invalid_argument("basepoint '" + basepoint + "' is not a vertex");

    std::vector<const Complex*> factors(n, &k);
    auto p = detail::build_product(factors);

    std::vector<std::vector<std::string>> gens;
    for (std::size_t j = 0; j < n; ++j) {
        std::vector<std::size_t> facet_choice(n, 0);
        for (;;) {
            std::vector<std::vector<std::size_t>> axes(n);
            for (std::size_t i = 0; i < n; ++i) {
                if (i == j)
                    axes[i] = {*v0};
                else
                    axes[i] = k.facets()[facet_choice[i]].indices();
            }
            std::vector<std::string> grid;
            std::vector<std::size_t> pick(n, 0);
            for (;;) {
                std::vector<std::size_t> tuple(n);
                for (std::size_t i = 0; i < n; ++i) tuple[i] = axes[i][pick[i]];
                grid.push_back(n == 1 ? k.label(tuple[0]) : detail::tuple_label(factors, tuple));
                std::size_t axis = 0;
                while (axis < n && ++pick[axis] == axes[axis].size()) {
                    pick[axis] = 0;
                    ++axis;
                }
                if (axis == n) break;
            }
            gens.push_back(std::move(grid));
            std::size_t slot = 0;
            while (slot < n) {
                if (slot == j) {
                    ++slot;
                    continue;
                }
                if (++facet_choice[slot] < k.facet_count()) break;
                facet_choice[slot] = 0;
                ++slot;
            }
            if (slot == n) break;
        }
    }

    FatWedge out{Complex::from_facets(gens), VertexMap::identity(k), {}};
    out.inclusion = VertexMap::inclusion(out.complex, p.complex);
    out.tuples.resize(out.complex.vertex_count());
    for (std::size_t v = 0; v < out.complex.vertex_count(); ++v) {
        auto idx = p.complex.index_of(out.complex.label(v));
        out.tuples[v] = p.tuples[*idx];
    }
    return out;
}

/// Induced map on fat wedges of a pointed map: the restriction of phi^n.
inline VertexMap fat_wedge_map(const VertexMap& phi, const std::string& source_basepoint,
                               const std::string& target_basepoint, std::size_t n) {
    if (phi.apply(source_basepoint) != target_basepoint)
        throw std::invalid_argument("map does not preserve the base point");
    auto src = fat_wedge(phi.source(), source_basepoint, n);
    auto tgt = fat_wedge(phi.target(), target_basepoint, n);
    std::vector<const Complex*> tgt_factors(n, &phi.target());
    std::vector<std::uint16_t> a(src.complex.vertex_count());
    for (std::size_t v = 0; v < a.size(); ++v) {
        std::vector<std::size_t> tuple(n);
        for (std::size_t i = 0; i < n; ++i) tuple[i] = phi.assignment()[src.tuples[v][i]];
        std::string label =
            n == 1 ? phi.target().label(tuple[0]) : detail::tuple_label(tgt_factors, tuple);
        auto idx = tgt.complex.index_of(label);
        if (!idx) throw std::logic_error("fat wedge image vertex missing");
        a[v] = static_cast<std::uint16_t>(*idx);
    }
    return VertexMap(std::make_shared<const Complex>(src.complex),
                     std::make_shared<const Complex>(tgt.complex), std::move(a));
}

}  // namespace scatkit

#endif  // SCATKIT_CONSTRUCTIONS_HPP
