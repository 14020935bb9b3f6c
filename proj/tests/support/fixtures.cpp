#include "fixtures.hpp"

#include "abg/orientation.hpp"

namespace abg::testing {

RationalVector moment_point(long t, int dim)
{
    RationalVector p(static_cast<std::size_t>(dim));
    Rational power = 1;
    for (int i = 0; i < dim; ++i) {
        power *= t;
        p[static_cast<std::size_t>(i)] = power;
    }
    return p;
}

namespace {

std::vector<RationalVector> moment_vertices(int n)
{
    std::vector<RationalVector> out;
    for (int i = 0; i < n; ++i)
        out.push_back(moment_point(i + 1, 5));
    return out;
}

std::vector<RationalVector> tet_vertices()
{
    return {RationalVector::from_ints({0, 0, 0}), RationalVector::from_ints({1, 0, 0}),
            RationalVector::from_ints({0, 1, 0}), RationalVector::from_ints({0, 0, 1})};
}

} // namespace

SimplicialComplex single_edge()
{
    return make_complex(1, {RationalVector::from_ints({0}), RationalVector::from_ints({1})}, {{0, 1}});
}

SimplicialComplex solid_tetrahedron()
{
    return make_complex(3, tet_vertices(), {{0, 1, 2, 3}});
}

SimplicialComplex tetrahedron_boundary()
{
    return make_complex(3, tet_vertices(), {{0, 1, 2}, {0, 1, 3}, {0, 2, 3}, {1, 2, 3}});
}

SimplicialComplex hexagon_fan()
{
    std::vector<RationalVector> v = {RationalVector::from_ints({0, 0}), RationalVector::from_ints({2, 0}),
                                     RationalVector::from_ints({1, 2}), RationalVector::from_ints({-1, 2}),
                                     RationalVector::from_ints({-2, 0}), RationalVector::from_ints({-1, -2}),
                                     RationalVector::from_ints({1, -2})};
    std::vector<std::vector<VertexId>> tris;
    for (VertexId i = 1; i <= 6; ++i)
        tris.push_back({0, i, i % 6 + 1});
    return make_complex(2, v, tris);
}

SimplicialComplex wedge_of_spheres()
{
    std::vector<RationalVector> v = tet_vertices();
    v.push_back(RationalVector::from_ints({-1, 0, 0}));
    v.push_back(RationalVector::from_ints({0, -1, 0}));
    v.push_back(RationalVector::from_ints({0, 0, -1}));
    return make_complex(3, v,
                        {{0, 1, 2}, {0, 1, 3}, {0, 2, 3}, {1, 2, 3}, {0, 4, 5}, {0, 4, 6}, {0, 5, 6}, {4, 5, 6}});
}

SimplicialComplex projective_plane6()
{
    const std::vector<std::vector<VertexId>> one_based = {{1, 2, 4}, {1, 2, 6}, {1, 3, 5}, {1, 3, 6}, {1, 4, 5},
                                                          {2, 3, 4}, {2, 3, 5}, {2, 5, 6}, {3, 4, 6}, {4, 5, 6}};
    std::vector<std::vector<VertexId>> tris;
    for (const auto& t : one_based)
        tris.push_back({t[0] - 1, t[1] - 1, t[2] - 1});
    return make_complex(5, moment_vertices(6), tris);
}

SimplicialComplex torus7()
{
    std::vector<std::vector<VertexId>> tris;
    for (VertexId i = 0; i < 7; ++i) {
        tris.push_back({i, (i + 1) % 7, (i + 3) % 7});
        tris.push_back({i, (i + 2) % 7, (i + 3) % 7});
    }
    return make_complex(5, moment_vertices(7), tris);
}

std::pair<std::vector<long>, std::vector<long>> torus7_cocycles(const SimplicialComplex& torus)
{
    // Vertex i sits at (i, 0) in Z^2 / <(7, 0), (-2, 1)>, labels x + 2y mod 7.
    const CellTable& edges = torus.cells(1);
    std::vector<long> alpha(edges.size()), beta(edges.size());
    for (std::size_t r = 0; r < edges.size(); ++r) {
        const long a = edges.ids(r)[0], b = edges.ids(r)[1];
        long dx = 0, dy = 0;
        switch (((b - a) % 7 + 7) % 7) {
        case 1: dx = 1; break;
        case 6: dx = -1; break;
        case 2: dy = 1; break;
        case 5: dy = -1; break;
        case 3: dx = 1; dy = 1; break;
        case 4: dx = -1; dy = -1; break;
        }
        beta[r] = dy;
        alpha[r] = (a + dx - b + 2 * dy) / 7;
    }
    return {alpha, beta};
}

std::vector<long> fundamental_cycle(const SimplicialComplex& complex)
{
    const auto orient = orientation_character(complex);
    const int d = complex.dimension();
    const CellTable& tops = complex.maximal(d);
    std::vector<long> chain(complex.cells(d).size(), 0);
    for (std::size_t f = 0; f < tops.size(); ++f)
        chain[*complex.cells(d).find(tops.ids(f))] = orient.facet_signs[f];
    return chain;
}

} // namespace abg::testing
