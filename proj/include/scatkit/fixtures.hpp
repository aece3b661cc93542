/**
 * Embedded example complexes used by the tests and by the built-in
 * verification suite; everything runs offline with no input files.
 */

#ifndef SCATKIT_FIXTURES_HPP
#define SCATKIT_FIXTURES_HPP

#include <string>
#include <vector>

#include "scatkit/complex.hpp"

namespace scatkit::fixtures {

inline std::vector<std::string> letters(std::size_t n) {
    std::vector<std::string> out;
    for (std::size_t i = 0; i < n; ++i) {
        if (i < 26)
            out.push_back(std::string(1, static_cast<char>('a' + i)));
        else
            out.push_back("v" + std::to_string(i));
    }
    return out;
}

/// Full simplex on n+1 vertices.
inline Complex simplex(std::size_t dim) {
    return Complex::from_facets({letters(dim + 1)});
}

/// Boundary of the n-simplex: all facets of the full simplex.
inline Complex boundary(std::size_t dim) {
    auto verts = letters(dim + 1);
    std::vector<std::vector<std::string>> facets;
    for (std::size_t skip = 0; skip < verts.size(); ++skip) {
        std::vector<std::string> face;
        for (std::size_t i = 0; i < verts.size(); ++i)
            if (i != skip) face.push_back(verts[i]);
        facets.push_back(std::move(face));
    }
    return Complex::from_facets(facets);
}

inline Complex boundary_delta2() { return boundary(2); }

inline Complex cycle(std::size_t n) {
    auto verts = letters(n);
    std::vector<std::vector<std::string>> facets;
    for (std::size_t i = 0; i < n; ++i) facets.push_back({verts[i], verts[(i + 1) % n]});
    return Complex::from_facets(facets);
}

inline Complex path(std::size_t vertices) {
    auto verts = letters(vertices);
    if (vertices == 1) return Complex::from_facets({{verts[0]}});
    std::vector<std::vector<std::string>> facets;
    for (std::size_t i = 0; i + 1 < vertices; ++i) facets.push_back({verts[i], verts[i + 1]});
    return Complex::from_facets(facets);
}

inline Complex complete_graph(std::size_t n) {
    std::vector<std::string> verts;
    for (std::size_t i = 1; i <= n; ++i) verts.push_back("v" + std::to_string(i));
    std::vector<std::vector<std::string>> facets;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) facets.push_back({verts[i], verts[j]});
    return Complex::from_facets(facets);
}

inline Complex point() { return Complex::from_facets({{"a"}}); }

inline Complex s0() { return Complex::from_facets({{"a"}, {"b"}}); }

/// A triangulated disk with no dominated vertices: outer triangle a,b,c,
/// inner triangle o,p,q, seven 2-simplices. Collapsible (it is a disk)
/// but not strongly collapsible, with scat = 1; the smallest fixture
/// separating simple from strong collapsibility here.
inline Complex mother() {
    return Complex::from_facets({{"a", "b", "o"},
                                 {"b", "o", "p"},
                                 {"b", "c", "p"},
                                 {"c", "p", "q"},
                                 {"c", "a", "q"},
                                 {"a", "q", "o"},
                                 {"o", "p", "q"}});
}

}  // namespace scatkit::fixtures

#endif  // SCATKIT_FIXTURES_HPP
