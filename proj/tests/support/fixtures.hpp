#pragma once

#include "abg/cochain.hpp"
#include "abg/complex.hpp"

#include <utility>
#include <vector>

namespace abg::testing {

RationalVector moment_point(long t, int dim);

SimplicialComplex single_edge();
SimplicialComplex solid_tetrahedron();
SimplicialComplex tetrahedron_boundary();
/// Six triangles around an interior vertex in the plane.
SimplicialComplex hexagon_fan();
/// Two tetrahedron boundaries sharing one vertex.
SimplicialComplex wedge_of_spheres();
/// Minimal triangulations on the moment curve in R^5 (vertex i at t = i + 1).
SimplicialComplex projective_plane6();
SimplicialComplex torus7();

/// The two integral 1-cocycles of torus7 dual to the generators of its
/// fundamental group lattice.
std::pair<std::vector<long>, std::vector<long>> torus7_cocycles(const SimplicialComplex& torus);

/// Sum of facet_signs * facets, as a chain on cells(d).
std::vector<long> fundamental_cycle(const SimplicialComplex& complex);

} // namespace abg::testing
