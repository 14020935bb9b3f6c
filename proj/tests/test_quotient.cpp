#include "catch_amalgamated.hpp"

#include "abg/error.hpp"
#include "abg/geometry.hpp"
#include "abg/homology.hpp"
#include "abg/kuhn.hpp"
#include "abg/lattice.hpp"
#include "abg/neighborhood.hpp"
#include "abg/quotient.hpp"
#include "abg/subdivision.hpp"
#include "fixtures.hpp"
#include "oracles.hpp"

#include <random>

using namespace abg;
using namespace abg::testing;

namespace {

RationalVector random_point(std::mt19937& rng, int n)
{
    std::uniform_int_distribution<long> num(-40, 40), den(1, 6);
    RationalVector p(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i)
        p[static_cast<std::size_t>(i)] = Rational(num(rng), den(rng));
    for (int i = 0; i < n; ++i)
        p[static_cast<std::size_t>(i)].canonicalize();
    return p;
}

} // namespace

TEST_CASE("lattice basis and covolume")
{
    for (int k : {1, 2})
        for (int L : {1, 2, 3}) {
            LatticeGroup g(k, L, GroupKind::G), h(k, L, GroupKind::Ghat);
            const Rational side_power = Rational(static_cast<long>(std::pow(L, 2 * k)));
            CHECK(g.covolume() == side_power * Rational(2 * L + 1, 2));
            CHECK(h.covolume() == side_power * Rational(2 * L + 1));
            CHECK(h.contains(g.last_generator() * Rational(2)));
            CHECK_FALSE(h.contains(g.last_generator()));
        }
}

TEST_CASE("canonical representatives are idempotent and lattice-invariant")
{
    std::mt19937 rng(7);
    for (auto kind : {GroupKind::G, GroupKind::Ghat})
        for (int L : {1, 2}) {
            QuotientChart chart(LatticeGroup(1, L, kind));
            const auto& basis = chart.group().basis();
            for (int trial = 0; trial < 200; ++trial) {
                const auto p = random_point(rng, 3);
                LatticeCoeffs shift;
                const auto rep = chart.canonical_rep(p, shift);
                CHECK(chart.is_canonical(rep));
                CHECK(chart.canonical_rep(rep) == rep);
                CHECK(rep + chart.group().combine(shift) == p);
                auto moved = p;
                for (std::size_t b = 0; b < basis.size(); ++b)
                    moved += basis[b] * Rational(static_cast<long>(trial % 5) - 2 + static_cast<long>(b));
                CHECK(chart.canonical_rep(moved) == rep);
            }
        }
}

TEST_CASE("lift_near finds the unique close translate")
{
    QuotientChart chart(LatticeGroup(1, 2, GroupKind::Ghat));
    const auto anchor = RationalVector::from_ints({0, 0, 0});
    const auto far = RationalVector::scaled({3, 1, 0}, 2);
    const auto c = chart.lift_near(anchor, far);
    const auto lifted = far + chart.group().combine(c);
    CHECK((lifted - anchor).max_norm() < 1);
    try {
        chart.lift_near(anchor, RationalVector::from_ints({1, 0, 0}));
        FAIL("expected AmbiguousLift");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::AmbiguousLift);
    }
}

TEST_CASE("Kuhn triangulation of the cube")
{
    std::size_t fact = 1;
    for (int m = 1; m <= 6; ++m) {
        fact *= static_cast<std::size_t>(m);
        const auto cube = kuhn_triangulation(m);
        CHECK(cube.maximal(m).size() == fact);
        CHECK(total_volume(cube) == 1);
        if (m <= 5) {
            CHECK(validate_geometry(cube).ok);
            CHECK(kuhn_faces_are_subcomplexes(cube, m));
            CHECK(kuhn_symmetric(cube, m));
        }
    }
}

TEST_CASE("cube triangulation is symmetric in the chosen diagonal")
{
    const auto origin = RationalVector::scaled({1, 1, 1}, 2);
    const auto corner = origin + RationalVector::from_ints({1, 0, 1});
    const auto opposite = origin + RationalVector::from_ints({0, 1, 0});
    const auto a = cube_triangulation(origin, Rational(1), corner, opposite);
    const auto b = cube_triangulation(origin, Rational(1), opposite, corner);
    CHECK(a == b);
    CHECK(total_volume(a) == 1);
    CHECK(monotone_paths(corner, opposite).size() == 6);
}

TEST_CASE("quotient complexes for k = 1")
{
    const ConstructionParams ghat{1, 1, GroupKind::Ghat};
    const auto x = triangulate_quotient(ghat);
    CHECK(x.num_vertices() == 24);
    CHECK(x.maximal(3).size() == 144);
    CHECK(euler_characteristic(x) == 0);
    CHECK(total_volume(x) == LatticeGroup(ghat).covolume());
    const auto h = homology_up_to(x, 3);
    CHECK(h[0].betti == 1);
    CHECK(h[3].betti == 1);
    CHECK(h[1].betti == 3);
    CHECK(h[2].betti == 3);

    const ConstructionParams g{1, 1, GroupKind::G};
    const auto y = triangulate_quotient(g);
    CHECK(y.num_vertices() == 12);
    CHECK(y.maximal(3).size() == 72);
    CHECK(total_volume(y) == LatticeGroup(g).covolume());
    CHECK(euler_characteristic(y) == 0);

    for (int L : {1, 2})
        for (auto kind : {GroupKind::G, GroupKind::Ghat}) {
            const ConstructionParams p{1, L, kind};
            const auto q = triangulate_quotient(p);
            CHECK(verify_dual_split(q, p));
            CHECK(skeleton_full_on_lifts(q, p, Skeleton::Z));
            CHECK(skeleton_full_on_lifts(q, p, Skeleton::Zprime));
            CHECK(total_volume(q) == LatticeGroup(p).covolume());
        }
}

TEST_CASE("L = 2 quotients are simplicial and geometrically valid")
{
    const ConstructionParams p{1, 2, GroupKind::Ghat};
    const auto q = triangulate_quotient(p, {.require_simplicial = true});
    CHECK_FALSE(q.has_offsets());
    CHECK(validate_geometry(q).ok);
    const auto z = skeleton_subcomplex(q, p, Skeleton::Z);
    CHECK(is_full_subcomplex(q, z));
    CHECK(is_full_subcomplex(q, skeleton_subcomplex(q, p, Skeleton::Zprime)));
    CHECK_THROWS_AS(triangulate_quotient({1, 1, GroupKind::Ghat}, {.require_simplicial = true}), Error);
}

TEST_CASE("quotient commutes with the box construction")
{
    for (int L : {1, 2}) {
        const ConstructionParams p{1, L, GroupKind::Ghat};
        const auto q = triangulate_quotient(p, {.require_simplicial = L > 1});
        const auto box = triangulate_box(1, RationalVector::scaled({-1, -1, -1}, 2),
                                         RationalVector::scaled({2 * L + 1, 2 * L + 1, 4 * L + 3}, 2));
        std::set<std::vector<VertexId>> tops;
        const auto& table = q.maximal(3);
        for (std::size_t r = 0; r < table.size(); ++r) {
            auto ids = table.ids(r);
            tops.emplace(ids.begin(), ids.end());
        }
        CHECK(box_image(box, q) == tops);
    }
}

TEST_CASE("cubical cell counts match the closed form")
{
    for (int L : {1, 2, 3})
        for (int i = 0; i <= 1; ++i) {
            const ConstructionParams p{1, L, GroupKind::Ghat};
            CHECK(cubical_cell_count(p, i) == cubical_cell_formula(p, i));
        }
    const ConstructionParams p2{2, 1, GroupKind::Ghat};
    for (int i = 0; i <= 2; ++i)
        CHECK(cubical_cell_count(p2, i) == cubical_cell_formula(p2, i));
    CHECK_THROWS_AS(cubical_cell_count({1, 1, GroupKind::Ghat}, 2), Error);
    CHECK_THROWS_AS(cubical_cell_count({1, 1, GroupKind::G}, 0), Error);
}

TEST_CASE("skeleta do not descend to G")
{
    const ConstructionParams g{1, 1, GroupKind::G};
    const auto q = triangulate_quotient(g);
    try {
        skeleton_subcomplex(q, g, Skeleton::Z);
        FAIL("expected ParamMismatch");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::ParamMismatch);
    }
}

TEST_CASE("neighborhoods on the k = 1 quotients")
{
    for (int L : {1, 2})
        for (auto kind : {GroupKind::Ghat, GroupKind::G}) {
            const ConstructionParams p{1, L, kind};
            const auto q = triangulate_quotient(p);
            const auto pair = build_neighborhoods(q, p);
            const auto boundary = common_boundary(pair);
            CHECK(neighborhoods_cover(pair));
            CHECK(neighborhoods_meet_in(pair, boundary));
            const auto cover_q = pair.subdivision.parent;
            CHECK(pair.n_z.count(3) == neighborhood_cells_by_flags(cover_q, pair.cover_params, false));
            CHECK(pair.n_zprime.count(3) == neighborhood_cells_by_flags(cover_q, pair.cover_params, true));
            const auto x = extract_X(pair);
            const auto direct = direct_X(pair.subdivision, pair.cover_params);
            if (kind == GroupKind::Ghat)
                CHECK(x == direct);
            else
                CHECK(x == fold_to_G(direct, p).base);
        }
}

TEST_CASE("neighborhood construction rejects a skeleton that is not full")
{
    const ConstructionParams p{1, 2, GroupKind::Ghat};
    const auto q = triangulate_quotient(p);
    const auto z = skeleton_subcomplex(q, p, Skeleton::Z);
    // two vertices of an edge but not the edge
    std::vector<CellTable> points(1, CellTable(0, 0));
    const auto& edges = q.cells(1);
    for (std::size_t r = 0; r < edges.size(); ++r) {
        auto ids = edges.ids(r);
        points[0].push_back(ids.subspan(0, 1));
        points[0].push_back(ids.subspan(1, 1));
        break;
    }
    points[0].sort_unique();
    const auto bad = Subcomplex::closure_of(q, points);
    try {
        build_neighborhoods(q, p, bad, z);
        FAIL("expected SkeletonNotFull");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::SkeletonNotFull);
    }
}

TEST_CASE("the hypersurface built upstairs descends to the quotient one")
{
    const ConstructionParams p{1, 2, GroupKind::Ghat};
    const auto x = extract_X(build_neighborhoods(triangulate_quotient(p), p));
    REQUIRE_FALSE(x.has_offsets());
    const QuotientChart& chart = *x.chart();

    // a box around one fundamental domain with a margin of one unit
    const auto lo = RationalVector::from_ints({-1, -1, -1});
    const auto hi = RationalVector::from_ints({2 * p.L + 1, 2 * p.L + 1, 4 * p.L + 3});
    const auto box = triangulate_box(p.k, lo, hi);
    const auto sd = barycentric_subdivision(box);
    const auto n_z = simplicial_neighborhood(sd.complex, subdivide(sd, skeleton_subcomplex(box, p, Skeleton::Z)));
    const auto n_zp = simplicial_neighborhood(sd.complex, subdivide(sd, skeleton_subcomplex(box, p, Skeleton::Zprime)));
    const CellTable upstairs = n_z.cells(2).intersect(n_zp.cells(2));

    auto inner = [&](const RationalVector& q) {
        for (std::size_t i = 0; i < q.size(); ++i)
            if (q[i] < lo[i] + 1 || q[i] > hi[i] - 1)
                return false;
        return true;
    };
    std::set<std::vector<VertexId>> image, inner_image;
    for (std::size_t r = 0; r < upstairs.size(); ++r) {
        std::vector<VertexId> ids;
        bool all_inner = true;
        for (VertexId v : upstairs.ids(r)) {
            const auto& q = sd.complex.vertex(v);
            all_inner = all_inner && inner(q);
            const auto found = x.find_vertex(chart.canonical_rep(q));
            REQUIRE(found);
            ids.push_back(*found);
        }
        std::sort(ids.begin(), ids.end());
        image.insert(ids);
        if (all_inner)
            inner_image.insert(ids);
    }
    std::set<std::vector<VertexId>> downstairs;
    const CellTable& tops = x.maximal(2);
    for (std::size_t r = 0; r < tops.size(); ++r) {
        auto ids = tops.ids(r);
        downstairs.emplace(ids.begin(), ids.end());
    }
    CHECK(inner_image == downstairs);
    CHECK(image == downstairs);
}
