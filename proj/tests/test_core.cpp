#include "catch_amalgamated.hpp"

#include "abg/complex.hpp"
#include "abg/error.hpp"
#include "abg/geometry.hpp"
#include "abg/homology.hpp"
#include "abg/parallel.hpp"
#include "abg/subdivision.hpp"
#include "abg/quotient.hpp"
#include "fixtures.hpp"
#include "oracles.hpp"

#include <functional>
#include <numeric>

using namespace abg;
using namespace abg::testing;

namespace {

ErrorCode code_of(const std::function<void()>& fn)
{
    try {
        fn();
    } catch (const Error& e) {
        return e.code();
    }
    FAIL("expected an abg::Error");
    return ErrorCode::InvalidInput;
}

} // namespace

TEST_CASE("rationals print and parse only as p/q")
{
    Rational r;
    CHECK(parse_rational("3/4", r));
    CHECK(r == Rational(3, 4));
    CHECK(parse_rational("-1/2", r));
    CHECK(format_rational(Rational(3)) == "3/1");
    CHECK(format_rational(Rational(0)) == "0/1");
    CHECK_FALSE(parse_rational("3", r));
    CHECK_FALSE(parse_rational("2/4", r));
    CHECK_FALSE(parse_rational("1/-2", r));
    CHECK_FALSE(parse_rational("1/0", r));
    CHECK_FALSE(parse_rational(" 1/2", r));
}

TEST_CASE("make_complex on small inputs")
{
    auto tri = make_complex(2, {RationalVector::from_ints({0, 0}), RationalVector::from_ints({1, 0}),
                                RationalVector::from_ints({0, 1})},
                            {{0, 1, 2}});
    CHECK(tri.f_vector() == std::vector<std::size_t>{3, 3, 1});

    auto disk = make_complex(2, {RationalVector::from_ints({0, 0}), RationalVector::from_ints({1, 0}),
                                 RationalVector::from_ints({0, 1}), RationalVector::from_ints({1, 1})},
                             {{0, 1, 2}, {1, 2, 3}});
    CHECK(euler_characteristic(disk) == 1);

    CHECK(code_of([] {
              make_complex(2, {RationalVector::from_ints({0, 0}), RationalVector::from_ints({2, 0}),
                               RationalVector::from_ints({0, 2}), RationalVector::from_ints({1, -1}),
                               RationalVector::from_ints({1, 2}), RationalVector::from_ints({2, 2})},
                           {{0, 1, 2}, {3, 4, 5}});
          }) == ErrorCode::NotAComplex);
    CHECK(code_of([] {
              make_complex(2, {RationalVector::from_ints({0, 0}), RationalVector::from_ints({1, 1}),
                               RationalVector::from_ints({2, 2})},
                           {{0, 1, 2}});
          }) == ErrorCode::DegenerateSimplex);
    CHECK(code_of([] {
              make_complex(1, {RationalVector::from_ints({0}), RationalVector::from_ints({0})}, {{0, 1}});
          }) == ErrorCode::DuplicateVertexCoordinates);
    CHECK(code_of([] { make_complex(1, {RationalVector::from_ints({0})}, {{0, 3}}); }) == ErrorCode::InvalidInput);
}

TEST_CASE("vertex ids follow the lexicographic order of coordinates")
{
    auto c = make_complex(2, {RationalVector::from_ints({1, 0}), RationalVector::from_ints({0, 1}),
                              RationalVector::from_ints({0, 0})},
                          {{0, 1, 2}});
    for (VertexId v = 1; v < c.num_vertices(); ++v)
        CHECK(c.vertex(v - 1) < c.vertex(v));
}

TEST_CASE("fixtures are valid complexes with the expected shape")
{
    CHECK(tetrahedron_boundary().f_vector() == std::vector<std::size_t>{4, 6, 4});
    CHECK(projective_plane6().f_vector() == std::vector<std::size_t>{6, 15, 10});
    CHECK(torus7().f_vector() == std::vector<std::size_t>{7, 21, 14});
    CHECK(euler_characteristic(wedge_of_spheres()) == 3);
    CHECK(euler_characteristic(hexagon_fan()) == 1);
    for (const auto& c : {tetrahedron_boundary(), projective_plane6(), torus7(), wedge_of_spheres(), hexagon_fan()}) {
        CHECK(validate_geometry(c).ok);
        CHECK(euler_characteristic(c) == euler_by_subsets(c));
    }
}

TEST_CASE("star and link")
{
    const auto sphere = tetrahedron_boundary();
    const VertexId v0[] = {0};
    auto [star, link] = star_link(sphere, v0);
    CHECK(link.f_vector() == std::vector<std::size_t>{3, 3});
    CHECK(star.count(2) == 3);

    const auto edge = single_edge();
    auto [estar, elink] = star_link(edge, v0);
    CHECK(elink.f_vector() == std::vector<std::size_t>{1});

    const auto fan = hexagon_fan();
    const VertexId center[] = {*fan.find_vertex(RationalVector::from_ints({0, 0}))};
    auto [fstar, flink] = star_link(fan, center);
    CHECK(flink.f_vector() == std::vector<std::size_t>{6, 6});

    const VertexId missing[] = {0, 99};
    CHECK(code_of([&] { star_link(sphere, missing); }) == ErrorCode::SimplexNotInComplex);

    // star is the join of the simplex with its link
    const VertexId e[] = {0, 1};
    auto [s, l] = star_link(sphere, e);
    CHECK(l.f_vector() == std::vector<std::size_t>{2});
    for (int d = 0; d <= s.dimension(); ++d)
        for (std::size_t r = 0; r < s.cells(d).size(); ++r) {
            auto ids = s.cells(d).ids(r);
            std::vector<VertexId> rest;
            for (VertexId v : ids)
                if (v != 0 && v != 1)
                    rest.push_back(v);
            CHECK((rest.empty() || l.contains(rest)));
        }
}

TEST_CASE("full subcomplexes and simplicial neighborhoods")
{
    const auto sphere = tetrahedron_boundary();
    std::vector<CellTable> two_points(1, CellTable(0, 0));
    const VertexId a[] = {0}, b[] = {1};
    two_points[0].push_back(a);
    two_points[0].push_back(b);
    two_points[0].sort_unique();
    const auto endpoints = Subcomplex::closure_of(sphere, two_points);
    CHECK_FALSE(is_full_subcomplex(sphere, endpoints));
    CHECK(is_full_subcomplex(sphere, Subcomplex::whole(sphere)));

    std::vector<CellTable> one(1, CellTable(0, 0));
    one[0].push_back(a);
    const auto nbhd = simplicial_neighborhood(sphere, Subcomplex::closure_of(sphere, one));
    CHECK(nbhd.count(2) == 3);
    CHECK(simplicial_neighborhood(sphere, Subcomplex(sphere)).empty());
}

TEST_CASE("boundary subcomplex")
{
    const auto solid = solid_tetrahedron();
    const auto b = boundary_subcomplex(solid);
    CHECK(b.f_vector() == std::vector<std::size_t>{4, 6, 4});
    CHECK(boundary_subcomplex(tetrahedron_boundary()).empty());
    // the boundary of a pure complex is closed
    CHECK(boundary_subcomplex(b).empty());
    auto mixed = make_complex(2, {RationalVector::from_ints({0, 0}), RationalVector::from_ints({1, 0}),
                                  RationalVector::from_ints({0, 1}), RationalVector::from_ints({3, 3})},
                              {{0, 1, 2}, {1, 3}});
    CHECK(code_of([&] { boundary_subcomplex(mixed); }) == ErrorCode::NotPure);
}

TEST_CASE("barycentric subdivision has (d+1)! cells per simplex")
{
    for (int d = 1; d <= 5; ++d) {
        std::vector<RationalVector> pts;
        pts.push_back(RationalVector(static_cast<std::size_t>(d)));
        for (int i = 0; i < d; ++i) {
            RationalVector e(static_cast<std::size_t>(d));
            e[static_cast<std::size_t>(i)] = 1;
            pts.push_back(e);
        }
        std::vector<VertexId> all(static_cast<std::size_t>(d + 1));
        std::iota(all.begin(), all.end(), 0);
        const auto simplex = make_complex(d, pts, {all});
        const auto sd = barycentric_subdivision(simplex);
        CHECK(sd.complex.maximal(d).size() == maximal_chains(d));
        CHECK(total_volume(sd.complex) == total_volume(simplex));
        CHECK(euler_characteristic(sd.complex) == 1);
    }
    const auto edge = barycentric_subdivision(single_edge());
    CHECK(edge.complex.f_vector() == std::vector<std::size_t>{3, 2});
}

TEST_CASE("subdivision preserves Euler characteristic and homology")
{
    for (const auto& c : {tetrahedron_boundary(), projective_plane6(), torus7(), wedge_of_spheres(), hexagon_fan()}) {
        const auto sd = barycentric_subdivision(c);
        CHECK(euler_characteristic(sd.complex) == euler_characteristic(c));
        CHECK(homology_up_to(sd.complex, c.dimension()) == homology_up_to(c, c.dimension()));
        // each new vertex is the barycenter of its origin cell
        for (VertexId v = 0; v < sd.complex.num_vertices(); ++v) {
            const CellRef o = sd.origin[v];
            CHECK(sd.vertex_of[static_cast<std::size_t>(o.dim)][o.index] == v);
        }
    }
}

TEST_CASE("face enumeration matches subset enumeration and ignores thread count")
{
    const auto sd = barycentric_subdivision(projective_plane6()).complex;
    for (int d = 0; d <= 2; ++d) {
        const auto expected = faces_by_subsets(sd, d);
        const CellTable& cells = sd.cells(d);
        REQUIRE(cells.size() == expected.size());
        std::size_t i = 0;
        for (const auto& f : expected) {
            auto ids = cells.ids(i++);
            CHECK(std::vector<VertexId>(ids.begin(), ids.end()) == f);
        }
    }
    set_thread_count(1);
    const auto one = barycentric_subdivision(torus7()).complex;
    set_thread_count(3);
    const auto three = barycentric_subdivision(torus7()).complex;
    set_thread_count(0);
    CHECK(one == three);
}

TEST_CASE("exact LP and proper intersection")
{
    // maximize x + y with x + y + s = 1
    RationalMatrix a = {{Rational(1), Rational(1), Rational(1)}};
    auto r = maximize_lp(a, {Rational(1)}, {Rational(1), Rational(1), Rational(0)});
    CHECK(r.status == LpStatus::Optimal);
    CHECK(r.value == 1);
    const std::vector<RationalVector> t1 = {RationalVector::from_ints({0, 0}), RationalVector::from_ints({2, 0}),
                                            RationalVector::from_ints({0, 2})};
    const std::vector<RationalVector> t2 = {RationalVector::from_ints({2, 0}), RationalVector::from_ints({0, 2}),
                                            RationalVector::from_ints({2, 2})};
    const std::vector<RationalVector> t3 = {RationalVector::from_ints({1, 0}), RationalVector::from_ints({3, 0}),
                                            RationalVector::from_ints({1, 2})};
    CHECK(simplices_meet_properly(t1, t2));
    CHECK_FALSE(simplices_meet_properly(t1, t3));
}
