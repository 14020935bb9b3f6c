#pragma once

#include "abg/complex.hpp"

#include <cstdint>
#include <vector>

namespace abg {

struct OrientationData {
    bool orientable = false;
    /// Per maximal cell (row of maximal(d)): +1 if the vertex order is the
    /// chosen orientation, -1 otherwise. Coherent when orientable.
    std::vector<std::int8_t> facet_signs;
    /// Ridges outside the spanning forest (row of cells(d-1)) and whether
    /// going around the corresponding cycle preserves orientation.
    std::vector<std::pair<CellIndex, std::int8_t>> character;
    std::size_t components = 0;
};

/// Requires a closed pseudomanifold without lattice coefficients on cells
/// (NotPseudomanifold / InvalidInput).
OrientationData orientation_character(const SimplicialComplex& complex);

struct DoubleCover {
    /// Vertex (v, sheet) has id 2v + sheet and coordinates (coords of v, sheet).
    SimplicialComplex complex;
    /// Cover vertex -> base vertex.
    std::vector<VertexId> vertex_map;
    /// Per base facet and vertex position, the sign of a fixed coherent
    /// orientation of that vertex's star.
    std::vector<std::int8_t> star_signs;
};

/// The cover by (facet, orientation) pairs. An orientable input yields two
/// disjoint copies. Throws NotPseudomanifold if a vertex star is not a
/// connected orientable pseudomanifold.
DoubleCover orientation_double_cover(const SimplicialComplex& base);

/// Whether `upstairs` (orientable, with projection onto base vertices) is
/// carried isomorphically onto the cover: each upstairs vertex goes to its
/// projection plus the sheet picked out by a coherent orientation.
bool matches_double_cover(const SimplicialComplex& upstairs, std::span<const VertexId> projection,
                          const SimplicialComplex& base, const DoubleCover& cover);

/// Parity of the permutation sorting `ids` (+1 even, -1 odd, 0 if repeated).
int sort_sign(std::vector<VertexId>& ids);

} // namespace abg
