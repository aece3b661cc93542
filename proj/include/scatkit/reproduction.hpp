/**
 * The built-in verification suite: sixteen checks reproducing the known
 * values and structural facts this library is built around, from scat of
 * small fixtures through arboricity of complete graphs to the
 * forest/categorical equivalence on all connected graphs with up to six
 * edges. Every check runs offline on embedded fixtures and certifies its
 * own witnesses.
 */

#ifndef SCATKIT_REPRODUCTION_HPP
#define SCATKIT_REPRODUCTION_HPP

#include <chrono>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "scatkit/category.hpp"
#include "scatkit/complex.hpp"
#include "scatkit/constructions.hpp"
#include "scatkit/fixtures.hpp"
#include "scatkit/graph.hpp"
#include "scatkit/maps.hpp"

namespace scatkit::verify {

struct CheckResult {
    std::string id;
    std::string description;
    bool pass = false;
    std::string detail;
    double millis = 0.0;
};

namespace detail {

using scatkit::detail::AssignmentHash;

inline Complex random_complex(std::mt19937& rng, std::size_t max_vertices,
                              std::size_t max_facets) {
    std::uniform_int_distribution<std::size_t> nv(1, max_vertices);
    std::size_t n = nv(rng);
    auto letters = fixtures::letters(n);
    std::uniform_int_distribution<std::size_t> nf(1, max_facets);
    std::size_t facet_count = nf(rng);
    std::uniform_int_distribution<std::size_t> mask_dist(1, (std::size_t{1} << n) - 1);
    std::vector<std::vector<std::string>> facets;
    for (std::size_t f = 0; f < facet_count; ++f) {
        std::size_t mask = mask_dist(rng);
        std::vector<std::string> facet;
        for (std::size_t b = 0; b < n; ++b)
            if (mask & (std::size_t{1} << b)) facet.push_back(letters[b]);
        facets.push_back(std::move(facet));
    }
    return Complex::from_facets(facets);
}

inline std::vector<VertexMap> all_simplicial_maps(const Complex& k, const Complex& l) {
    std::vector<std::optional<std::uint16_t>> free_all(k.vertex_count());
    auto assignments = scatkit::detail::simplicial_extensions(k, l, free_all);
    auto kp = std::make_shared<const Complex>(k);
    auto lp = std::make_shared<const Complex>(l);
    std::vector<VertexMap> out;
    out.reserve(assignments.size());
    for (auto& a : assignments) out.emplace_back(kp, lp, std::move(a));
    return out;
}

/// All connected graphs with 1..max_edges edges, one per isomorphism
/// class, grown edge by edge.
inline std::vector<Complex> connected_graphs_up_to(std::size_t max_edges) {
    std::vector<Complex> all;
    std::vector<Complex> level{Complex::from_facets({{"a", "b"}})};
    all.push_back(level[0]);
    for (std::size_t e = 2; e <= max_edges; ++e) {
        std::vector<Complex> next;
        for (const auto& g : level) {
            std::size_t n = g.vertex_count();
            auto labels = fixtures::letters(n + 1);
            std::vector<std::vector<std::string>> base = g.facet_lists();
            auto try_add = [&](const std::string& u, const std::string& v) {
                if (g.is_simplex({u, v})) return;
                auto facets = base;
                facets.push_back({u, v});
                Complex candidate = Complex::from_facets(facets);
                for (const auto& seen : next)
                    if (isomorphic(candidate, seen)) return;
                next.push_back(std::move(candidate));
            };
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = i + 1; j < n; ++j) try_add(g.label(i), g.label(j));
            for (std::size_t i = 0; i < n; ++i) try_add(g.label(i), labels[n]);
        }
        for (const auto& g : next) all.push_back(g);
        level = std::move(next);
    }
    return all;
}

inline std::string interval_text(const CatResult& r) {
    std::ostringstream out;
    out << '[' << r.lower << ',' << r.upper << ']' << (r.exact ? " exact" : "");
    return out.str();
}

}  // namespace detail

inline std::vector<CheckResult> run_all() {
    std::vector<CheckResult> results;
    auto run = [&](const std::string& id, const std::string& description, auto&& body) {
        CheckResult r{id, description, false, "", 0.0};
        auto t0 = std::chrono::steady_clock::now();
        try {
            body(r);
        } catch (const std::exception& e) {
            r.pass = false;
            r.detail = std::string("exception: ") + e.what();
        }
        r.millis =
            std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
                .count();
        results.push_back(std::move(r));
    };

    run("A1", "scat of the boundary of the 2-simplex is exactly 1", [](CheckResult& r) {
        auto res = scat(fixtures::boundary_delta2());
        r.pass = res.exact && res.upper == 1 && res.witness && res.witness->is_partition();
        r.detail = "scat = " + detail::interval_text(res);
    });

    run("A2", "cones are strongly collapsible: scat(K * apex) = 0", [](CheckResult& r) {
        std::vector<std::pair<std::string, Complex>> bases;
        bases.emplace_back("boundary of the 2-simplex", fixtures::boundary_delta2());
        bases.emplace_back("5-cycle", fixtures::cycle(5));
        bases.emplace_back("K4", fixtures::complete_graph(4));
        r.pass = true;
        std::ostringstream detail;
        for (const auto& [name, base] : bases) {
            auto res = scat(cone(base));
            bool ok = res.exact && res.upper == 0;
            r.pass = r.pass && ok;
            detail << name << ": " << detail::interval_text(res) << "  ";
        }
        r.detail = detail.str();
    });

    run("A3", "scat of the suspension of the 2-simplex boundary is exactly 1",
        [](CheckResult& r) {
            ScatOptions opts;
            opts.budget = 1000000;
            auto res = scat(suspension(fixtures::boundary_delta2()), opts);
            r.pass = res.exact && res.upper == 1;
            r.detail = "scat = " + detail::interval_text(res);
        });

    run("A4", "arboricity of complete graphs: K4=2 K5=3 K6=3 K7=4", [](CheckResult& r) {
        std::vector<std::pair<std::size_t, std::size_t>> expected{{4, 2}, {5, 3}, {6, 3}, {7, 4}};
        r.pass = true;
        std::ostringstream detail;
        for (auto [n, want] : expected) {
            GraphView g(fixtures::complete_graph(n));
            auto [count, decomposition] = arboricity(g);
            bool ok = count == want && decomposition.forests.size() == want;
            r.pass = r.pass && ok;
            detail << "K" << n << "=" << count << " ";
        }
        r.detail = detail.str();
    });

    run("A5", "scat(K5) = 2 and scat(sd K5) = 1 by both the graph path and the partition engine",
        [](CheckResult& r) {
            auto k5 = fixtures::complete_graph(5);
            auto sdk5 = sd(k5);
            ScatOptions generic;
            generic.graph_fast_path = false;
            auto a = scat(k5);
            auto b = scat(k5, generic);
            auto c = scat(sdk5);
            auto d = scat(sdk5, generic);
            auto ok = [](const CatResult& res, std::size_t want) {
                return res.exact && res.upper == want && res.witness && res.witness->is_partition();
            };
            r.pass = ok(a, 2) && ok(b, 2) && ok(c, 1) && ok(d, 1);
            r.detail = "K5: " + detail::interval_text(a) + " / " + detail::interval_text(b) +
                       "; sd K5: " + detail::interval_text(c) + " / " + detail::interval_text(d);
        });

    run("A6", "gscat(K5) = 2 = arboricity(K5) - 1 and gscat(sd K5) = 1", [](CheckResult& r) {
        auto k5 = fixtures::complete_graph(5);
        auto g1 = gscat(k5);
        auto g2 = gscat(sd(k5));
        GraphView g(k5);
        auto [upsilon, unused] = arboricity(g);
        r.pass = g1.exact && g1.upper == 2 && g1.upper == upsilon - 1 && g2.exact && g2.upper == 1;
        r.detail = "gscat(K5) = " + detail::interval_text(g1) +
                   ", gscat(sd K5) = " + detail::interval_text(g2);
    });

    run("A7", "the 2-simplex boundary and its subdivision are minimal and non-isomorphic",
        [](CheckResult& r) {
            auto k = fixtures::boundary_delta2();
            auto sk = sd(k);
            auto ck = core(k);
            auto csk = core(sk);
            r.pass = ck.steps.empty() && csk.steps.empty() && ck.complex == k &&
                     csk.complex == sk && !isomorphic(k, sk).has_value();
            r.detail = "cores are identities; isomorphic = no";
        });

    run("A8", "on minimal complexes the contiguity component of the identity is a single map",
        [](CheckResult& r) {
            std::vector<std::pair<std::string, Complex>> minimal;
            minimal.emplace_back("boundary of the 2-simplex", fixtures::boundary_delta2());
            minimal.emplace_back("its subdivision", sd(fixtures::boundary_delta2()));
            minimal.emplace_back("K5", fixtures::complete_graph(5));
            r.pass = true;
            std::ostringstream detail;
            for (const auto& [name, k] : minimal) {
                auto res = contiguity_class_reachable(
                    VertexMap::identity(k), [](const VertexMap&) { return false; }, 1000000);
                bool ok = res.no() && res.visited == 1;
                r.pass = r.pass && ok;
                detail << name << ": component size " << res.visited << "  ";
            }
            r.detail = detail.str();
        });

    run("A9", "200 random contiguous pairs: the subdivision chain revalidates end to end",
        [](CheckResult& r) {
            std::mt19937 rng(20240901);
            std::size_t done = 0;
            while (done < 200) {
                Complex k = detail::random_complex(rng, 4, 3);
                Complex l = detail::random_complex(rng, 4, 3);
                auto maps = detail::all_simplicial_maps(k, l);
                if (maps.empty()) continue;
                std::vector<std::pair<std::size_t, std::size_t>> contiguous;
                for (std::size_t i = 0; i < maps.size(); ++i)
                    for (std::size_t j = 0; j < maps.size(); ++j)
                        if (is_contiguous(maps[i], maps[j])) contiguous.emplace_back(i, j);
                if (contiguous.empty()) continue;
                std::uniform_int_distribution<std::size_t> pick(0, contiguous.size() - 1);
                auto [i, j] = contiguous[pick(rng)];
                auto chain = sd_contiguity_chain(maps[i], maps[j]);
                if (!(chain.front() == sd_map(maps[i])) || !(chain.back() == sd_map(maps[j]))) {
                    r.pass = false;
                    r.detail = "chain endpoints drifted at sample " + std::to_string(done);
                    return;
                }
                ++done;
            }
            r.pass = true;
            r.detail = "200 chains validated";
        });

    run("A10", "subdivision never raises scat on graph fixtures and 50 random complexes",
        [](CheckResult& r) {
            std::vector<Complex> cases{fixtures::complete_graph(4),
                                       fixtures::complete_graph(5),
                                       fixtures::cycle(3),
                                       fixtures::cycle(4),
                                       fixtures::cycle(5),
                                       fixtures::cycle(6),
                                       fixtures::path(4),
                                       fixtures::path(5),
                                       Complex::from_facets({{"a", "b"}, {"a", "c"}, {"a", "d"}}),
                                       sd(fixtures::complete_graph(5))};
            std::mt19937 rng(20240902);
            for (std::size_t i = 0; i < 50; ++i) cases.push_back(detail::random_complex(rng, 4, 4));
            r.pass = true;
            std::size_t checked = 0;
            for (const auto& k : cases) {
                auto base = scat(k);
                auto subdivided = scat(sd(k));
                ++checked;
                if (subdivided.lower > base.upper) {
                    r.pass = false;
                    r.detail = "violated at case " + std::to_string(checked) + ": sd " +
                               detail::interval_text(subdivided) + " vs " +
                               detail::interval_text(base);
                    return;
                }
            }
            r.detail = std::to_string(checked) + " cases, no violation";
        });

    run("A11", "products: D1 x D1 is the 3-simplex and the product inequality holds",
        [](CheckResult& r) {
            auto d1 = fixtures::simplex(1);
            auto bd2 = fixtures::boundary_delta2();
            bool iso = isomorphic(product(d1, d1), fixtures::simplex(3)).has_value();
            auto rk = scat(bd2);
            auto rl = scat(d1);
            auto rp = scat(product(bd2, d1));
            bool inequality = rp.lower + 1 <= (rk.upper + 1) * (rl.upper + 1);
            r.pass = iso && inequality && rp.exact && rp.upper == 1;
            r.detail = "iso = " + std::string(iso ? "yes" : "no") +
                       ", scat(bd2 x D1) = " + detail::interval_text(rp);
        });

    run("A12", "fat wedge factorizations: D1 at n=0 yes; the 2-simplex boundary no at n=0,1",
        [](CheckResult& r) {
            auto d1 = fixtures::simplex(1);
            auto bd2 = fixtures::boundary_delta2();
            auto a = wscat_le(d1, "a", 0, 1000000);
            auto b = wscat_le(bd2, "a", 0, 1000000);
            auto c = wscat_le(bd2, "a", 1, 1000000);
            r.pass = a.yes() && b.no() && c.no();
            std::ostringstream detail;
            detail << "D1 n=0: " << (a.yes() ? "yes" : "not-yes") << "; bd2 n=0: "
                   << (b.no() ? "no" : "not-no") << "; bd2 n=1: " << (c.no() ? "no" : "not-no");
            r.detail = detail.str();
        });

    run("A13", "the triangle minus an edge has no contiguity extension", [](CheckResult& r) {
        auto k = fixtures::cycle(3);
        auto l = Complex::from_facets({{"a", "b"}, {"a", "c"}});
        auto phi = VertexMap::inclusion(l, k);
        auto psi = VertexMap::constant(l, k, "a");
        auto res = has_contiguity_extension(l, k, phi, psi, VertexMap::identity(k), 1000000);
        r.pass = res.no();
        r.detail = res.no() ? "exhaustive no" : "not refuted";
    });

    run("A14", "on every connected graph with <= 6 edges, categorical = forest for all blocks",
        [](CheckResult& r) {
            auto graphs = detail::connected_graphs_up_to(6);
            CategoricalOptions pure;
            pure.budget = 1000000;
            pure.forest_fast_path = false;
            pure.collapse_fast_path = false;
            pure.memoize = false;
            std::size_t blocks_checked = 0;
            for (const auto& g : graphs) {
                GraphView view(g);
                std::size_t m = g.facet_count();
                for (std::size_t mask = 1; mask < (std::size_t{1} << m); ++mask) {
                    std::vector<std::size_t> subset;
                    std::vector<std::size_t> edge_subset;
                    for (std::size_t f = 0; f < m; ++f)
                        if (mask & (std::size_t{1} << f)) subset.push_back(f);
                    for (std::size_t e = 0; e < view.edge_count(); ++e)
                        if (mask & (std::size_t{1} << view.edge_facet(e))) edge_subset.push_back(e);
                    auto decision = is_categorical(g, subset, pure);
                    bool forest = is_forest(view, edge_subset);
                    ++blocks_checked;
                    if (decision.unknown() || decision.yes() != forest) {
                        r.pass = false;
                        r.detail = "disagreement on a " + std::to_string(m) + "-edge graph";
                        return;
                    }
                }
            }
            r.pass = true;
            r.detail = std::to_string(graphs.size()) + " graphs, " +
                       std::to_string(blocks_checked) + " facet subsets";
        });

    run("A15", "bisection: off-tree bisections have scat 1, trees 0, and K5 needs only 3 edges",
        [](CheckResult& r) {
            r.pass = true;
            std::ostringstream detail;
            for (auto [name, g] : {std::pair<std::string, Complex>{"C3", fixtures::cycle(3)},
                                   {"K4", fixtures::complete_graph(4)},
                                   {"K5", fixtures::complete_graph(5)}}) {
                auto res = scat(bisect_off_tree(g));
                bool ok = res.exact && res.upper == 1;
                r.pass = r.pass && ok;
                detail << name << "'=" << res.upper << " ";
            }
            for (auto [name, t] : {std::pair<std::string, Complex>{"path5", fixtures::path(5)},
                                   {"star", Complex::from_facets({{"a", "b"}, {"a", "c"}, {"a", "d"}})}}) {
                auto bisected = bisect_off_tree(t);
                auto res = scat(bisected);
                bool ok = res.exact && res.upper == 0 && bisected == t;
                r.pass = r.pass && ok;
                detail << name << "'=" << res.upper << " ";
            }
            // Three bisected edges suffice for K5.
            auto k5 = fixtures::complete_graph(5);
            GraphView g5(k5);
            bool found = false;
            for (std::size_t a = 0; a < g5.edge_count() && !found; ++a)
                for (std::size_t b = a + 1; b < g5.edge_count() && !found; ++b)
                    for (std::size_t c = b + 1; c < g5.edge_count() && !found; ++c) {
                        auto res = scat(bisect_edges(k5, {a, b, c}));
                        if (res.exact && res.upper == 1) {
                            found = true;
                            detail << "3-edge witness: {" << g5.edge_labels(a).first << g5.edge_labels(a).second
                                   << "," << g5.edge_labels(b).first << g5.edge_labels(b).second << ","
                                   << g5.edge_labels(c).first << g5.edge_labels(c).second << "}";
                        }
                    }
            r.pass = r.pass && found;
            r.detail = detail.str();
        });

    run("A16", "a collapsible, minimal complex with scat exactly 1 is certified", [](CheckResult& r) {
        auto m = fixtures::mother();
        bool collapsible = is_collapsible(m);
        auto cr = core(m);
        bool minimal = cr.steps.empty() && cr.complex == m && m.vertex_count() > 1;
        auto res = scat(m);
        bool category = res.exact && res.upper == 1;
        bool strong = is_strongly_collapsible(m);
        r.pass = collapsible && minimal && category && !strong;
        std::ostringstream detail;
        detail << "collapsible = " << (collapsible ? "yes" : "no") << ", minimal = "
               << (minimal ? "yes" : "no") << ", scat = " << detail::interval_text(res);
        r.detail = detail.str();
    });

    return results;
}

}  // namespace scatkit::verify

#endif  // SCATKIT_REPRODUCTION_HPP
