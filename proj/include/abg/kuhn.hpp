#pragma once

#include "abg/complex.hpp"

namespace abg {

/// Triangulation of [0,1]^m into m! simplices, one per permutation s of
/// 1..m, with vertices p_0 = 0 and p_i = p_{i-1} + e_{s_i}. 1 <= m <= 7.
SimplicialComplex kuhn_triangulation(int m);

/// Affine image of kuhn_triangulation(m) on the cube origin + side*[0,1]^m
/// sending 0 to v and (1,...,1) to v_prime. Symmetric in (v, v_prime).
SimplicialComplex cube_triangulation(const RationalVector& cube_origin, const Rational& side, const RationalVector& v,
                                     const RationalVector& v_prime);

/// Vertex lists (as coordinates) of the simplices of the cube triangulation
/// from corner v to the opposite corner v_prime, in path order.
std::vector<std::vector<RationalVector>> monotone_paths(const RationalVector& v, const RationalVector& v_prime);

} // namespace abg
