#include "catch_amalgamated.hpp"

#include "abg/error.hpp"
#include "abg/homology.hpp"
#include "abg/intersection.hpp"
#include "abg/neighborhood.hpp"
#include "abg/orientation.hpp"
#include "abg/pseudomanifold.hpp"
#include "abg/quotient.hpp"
#include "fixtures.hpp"

using namespace abg;
using namespace abg::testing;

namespace {

/// Matrix of the simplicial chain map induced by a vertex map, in degree d.
SparseIntegerMatrix chain_map(const SimplicialComplex& from, const SimplicialComplex& to,
                              std::span<const VertexId> vertex_map, int d)
{
    SparseIntegerMatrix m{to.cells(d).size(), from.cells(d).size(), {}};
    const CellTable& cells = from.cells(d);
    for (std::size_t r = 0; r < cells.size(); ++r) {
        std::vector<VertexId> ids;
        for (VertexId v : cells.ids(r))
            ids.push_back(vertex_map[v]);
        const int sign = sort_sign(ids);
        if (sign == 0)
            continue;
        const auto idx = to.find(ids);
        REQUIRE(idx);
        m.entries.push_back({*idx, static_cast<std::uint32_t>(r), sign});
    }
    m.canonicalize();
    return m;
}

Segment segment(std::initializer_list<long> a, std::initializer_list<long> b, long denominator)
{
    return {RationalVector::scaled(a, denominator), RationalVector::scaled(b, denominator)};
}

} // namespace

TEST_CASE("pseudomanifold checks")
{
    const auto sphere = verify_closed_pseudomanifold(tetrahedron_boundary(), 2);
    CHECK(sphere.ok);
    CHECK(sphere.components == 1);
    CHECK(verify_closed_pseudomanifold(wedge_of_spheres(), 2).components == 2);
    const auto disk = verify_closed_pseudomanifold(hexagon_fan(), 2);
    CHECK_FALSE(disk.ok);
    CHECK(disk.bad_ridges == 6);
    CHECK_FALSE(verify_closed_pseudomanifold(tetrahedron_boundary(), 3).ok);

    const auto rp2 = projective_plane6();
    const auto sample = sample_vertices(rp2, 6);
    CHECK(sample.size() == 6);
    CHECK(vertex_link_homology_check(rp2, 2, sample).ok);
    const auto wedge = wedge_of_spheres();
    CHECK_FALSE(vertex_link_homology_check(wedge, 2, sample_vertices(wedge, 7)).ok);
}

TEST_CASE("orientation character of closed surfaces")
{
    const auto sphere = orientation_character(tetrahedron_boundary());
    CHECK(sphere.orientable);
    CHECK(sphere.components == 1);
    CHECK(orientation_character(torus7()).orientable);
    CHECK_FALSE(orientation_character(projective_plane6()).orientable);
    // coherent signs make the fundamental chain a cycle
    const auto t = torus7();
    const auto d2 = chain_boundary_matrix(t, 2);
    const auto cycle = fundamental_cycle(t);
    std::vector<long> image(d2.rows, 0);
    for (const auto& e : d2.entries)
        image[e.row] += e.value * cycle[e.col];
    CHECK(std::all_of(image.begin(), image.end(), [](long v) { return v == 0; }));
    CHECK_THROWS_AS(orientation_character(hexagon_fan()), Error);
}

TEST_CASE("orientation double covers")
{
    const auto rp2 = projective_plane6();
    const auto cover = orientation_double_cover(rp2);
    CHECK(cover.complex.maximal(2).size() == 20);
    CHECK(euler_characteristic(cover.complex) == 2);
    CHECK(orientation_character(cover.complex).orientable);
    CHECK(verify_closed_pseudomanifold(cover.complex, 2).components == 1);

    const auto sphere = tetrahedron_boundary();
    const auto two = orientation_double_cover(sphere);
    CHECK(two.complex.maximal(2).size() == 8);
    CHECK(verify_closed_pseudomanifold(two.complex, 2).components == 2);

    for (const auto& c : {rp2, torus7()}) {
        const auto dc = orientation_double_cover(c);
        for (int d = 1; d <= 2; ++d) {
            const auto down = multiply(chain_boundary_matrix(c, d), chain_map(dc.complex, c, dc.vertex_map, d));
            const auto up = multiply(chain_map(dc.complex, c, dc.vertex_map, d - 1), chain_boundary_matrix(dc.complex, d));
            CHECK(down == up);
        }
    }
    CHECK(matches_double_cover(cover.complex, cover.vertex_map, rp2, cover));
}

TEST_CASE("the cover hypersurface is the orientation double cover of the base")
{
    const ConstructionParams g{1, 1, GroupKind::G};
    const auto pair = build_neighborhoods(triangulate_quotient(g), g);
    const auto cover_x = direct_X(pair.subdivision, pair.cover_params);
    const auto fold = fold_to_G(cover_x, g);
    CHECK_FALSE(orientation_character(fold.base).orientable);
    CHECK(orientation_character(cover_x).orientable);
    const auto dc = orientation_double_cover(fold.base);
    CHECK(matches_double_cover(cover_x, fold.vertex_map, fold.base, dc));
    CHECK(euler_characteristic(cover_x) == 2 * euler_characteristic(fold.base));
}

TEST_CASE("sort sign")
{
    std::vector<VertexId> a = {2, 0, 1};
    CHECK(sort_sign(a) == 1);
    CHECK(a == std::vector<VertexId>{0, 1, 2});
    std::vector<VertexId> b = {1, 0, 2};
    CHECK(sort_sign(b) == -1);
    std::vector<VertexId> c = {1, 1};
    CHECK(sort_sign(c) == 0);
}

TEST_CASE("segment intersections with the tetrahedron boundary")
{
    const auto sphere = tetrahedron_boundary();
    const auto out = mod2_segment_intersection(sphere, segment({1, 1, 1}, {40, 30, 20}, 8));
    CHECK(out.parity == 1);
    const auto through = mod2_segment_intersection(sphere, segment({-1, 1, 1}, {10, 1, 1}, 8));
    CHECK(through.parity == 0);
    CHECK(through.crossings == 2);
    // through an edge: the unperturbed segment is degenerate
    const auto edge = mod2_segment_intersection(sphere, segment({1, 1, -4}, {1, 1, 4}, 2));
    CHECK(edge.perturbation >= first_perturbation);
    CHECK(edge.parity == 0);
    CHECK_FALSE(count_crossings(sphere, segment({1, 1, -4}, {1, 1, 4}, 2)));
    try {
        mod2_segment_intersection(sphere, segment({0, 0, 0}, {5, 5, 5}, 1));
        FAIL("expected EndpointsOnSurface");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::EndpointsOnSurface);
    }
    CHECK(point_on_complex(sphere, RationalVector::scaled({1, 1, 1}, 3)));
    CHECK_FALSE(point_on_complex(sphere, RationalVector::scaled({1, 1, 1}, 8)));
}

TEST_CASE("perturbation does not change the parity of a generic segment")
{
    const auto sphere = tetrahedron_boundary();
    const auto s = segment({1, 1, 1}, {40, 30, 20}, 8);
    const auto base = count_crossings(sphere, s);
    REQUIRE(base);
    for (int level = first_perturbation; level <= last_perturbation; level += 11) {
        const auto moved = count_crossings(sphere, perturbed(s, level));
        REQUIRE(moved);
        CHECK(*moved % 2 == *base % 2);
    }
}

TEST_CASE("segments across the hypersurface in the quotient")
{
    for (int L : {1, 2}) {
        const ConstructionParams g{1, L, GroupKind::G};
        const auto x = extract_X(build_neighborhoods(triangulate_quotient(g), g));
        const RationalVector origin(3);
        const auto across = mod2_segment_intersection(x, g, {origin, LatticeGroup(g).last_generator()});
        CHECK(across.parity == 1);
        RationalVector loop(3);
        loop[0] = L;
        CHECK(mod2_segment_intersection(x, g, {origin, loop}).parity == 0);
        try {
            mod2_segment_intersection(x, {1, L, GroupKind::Ghat}, {origin, loop});
            FAIL("expected ParamMismatch");
        } catch (const Error& e) {
            CHECK(e.code() == ErrorCode::ParamMismatch);
        }
    }
}
