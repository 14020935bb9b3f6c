#pragma once

#include "abg/complex.hpp"

#include <vector>

namespace abg {

/// Barycentric subdivision together with the cell each new vertex is the
/// barycenter of.
struct Subdivision {
    SimplicialComplex parent;
    SimplicialComplex complex;
    /// New vertex id -> parent cell.
    std::vector<CellRef> origin;
    /// Parent cell (per dimension, by index) -> new vertex id.
    std::vector<std::vector<VertexId>> vertex_of;
};

/// New vertices are the barycenters of all cells (reduced to the chart for
/// quotients); maximal cells are the full flags of faces of each maximal
/// cell. Throws BarycenterCollision if two cells share a barycenter.
Subdivision barycentric_subdivision(const SimplicialComplex& complex);

/// The subdivision of a subcomplex of the parent, as a subcomplex of the
/// subdivided complex.
Subcomplex subdivide(const Subdivision& subdivision, const Subcomplex& sub);

} // namespace abg
