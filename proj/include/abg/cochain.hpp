#pragma once

#include "abg/complex.hpp"
#include "abg/homology.hpp"
#include "abg/lattice.hpp"

#include <span>
#include <vector>

namespace abg {

/// Cochain values aligned with complex.cells(degree). Z2 values are 0 or 1.
struct Cocycle {
    SimplicialComplex complex;
    int degree = 0;
    Ring ring = Ring::Z;
    std::vector<long> values;
};

/// (delta c)(s) = sum_i (-1)^i c(face_i s), on the (degree+1)-cells.
std::vector<long> coboundary(const SimplicialComplex& complex, int degree, std::span<const long> values, Ring ring);

/// Checks the coboundary vanishes (NotACocycle otherwise).
Cocycle make_cocycle(const SimplicialComplex& complex, int degree, Ring ring, std::vector<long> values);

/// The degree-0 constant 1.
Cocycle unit_cocycle(const SimplicialComplex& complex, Ring ring);

/// Integer 1-cocycle on a lattice-quotient complex: on an edge a < b, the
/// coefficient of L e_axis in the translation that carries b next to a.
/// Axis is 1-based, 1 <= axis <= 2k.
Cocycle coordinate_cocycle(const SimplicialComplex& complex, const ConstructionParams& params, int axis);

/// Alexander-Whitney product in the vertex order. Throws RingMismatch if the
/// factors disagree on ring or complex, DegreeOverflow past the dimension.
Cocycle cup_product(std::span<const Cocycle> factors);
Cocycle cup_product(const Cocycle& a, const Cocycle& b);

/// True iff c is not a coboundary.
bool cohomology_class_is_nonzero(const Cocycle& c);

/// Cochain on `domain` given by composing with the simplicial map
/// vertex_map: domain vertex -> c.complex vertex.
Cocycle pullback(const SimplicialComplex& domain, std::span<const VertexId> vertex_map, const Cocycle& c);

/// Pairing of a cochain with a chain on the same cells.
long evaluate(const Cocycle& c, std::span<const long> chain);

} // namespace abg
