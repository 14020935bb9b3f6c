#pragma once

#include "abg/complex.hpp"
#include "abg/lattice.hpp"
#include "abg/quotient.hpp"
#include "abg/subdivision.hpp"

#include <vector>

namespace abg {

/// Simplicial neighborhoods of the two skeleta after one barycentric
/// subdivision. The skeleta only descend to the Ghat quotient, so for G the
/// construction runs on the Ghat cover (`cover_params`) and the hypersurface
/// is folded down afterwards.
struct NeighborhoodPair {
    ConstructionParams params;
    ConstructionParams cover_params;
    Subdivision subdivision;
    Subcomplex z;
    Subcomplex zprime;
    Subcomplex z_subdivided;
    Subcomplex zprime_subdivided;
    Subcomplex n_z;
    Subcomplex n_zprime;
};

/// Builds the neighborhoods for `params`. `quotient` must be the quotient for
/// `params`; for G the Ghat cover is built internally. Throws SkeletonNotFull
/// if a skeleton is not full.
NeighborhoodPair build_neighborhoods(const SimplicialComplex& quotient, const ConstructionParams& params);

/// Same, with explicitly supplied skeleta (subcomplexes of a Ghat quotient).
NeighborhoodPair build_neighborhoods(const SimplicialComplex& cover_quotient, const ConstructionParams& params,
                                     const Subcomplex& z, const Subcomplex& zprime);

/// Common boundary of both neighborhoods, as a subcomplex of the subdivided
/// cover. Throws BoundariesDiffer or NotPseudomanifold.
Subcomplex common_boundary(const NeighborhoodPair& pair);

/// The hypersurface for pair.params as a standalone complex in that group's
/// chart (folded from the cover for G).
SimplicialComplex extract_X(const NeighborhoodPair& pair);

/// Cells of the subdivision whose lowest flag element is neither in Z nor in
/// Z' (decided on the barycenter's coordinates, which is invariant under both
/// groups). Needs no neighborhoods.
SimplicialComplex direct_X(const Subdivision& subdivided, const ConstructionParams& params);

/// Image of a complex on the Ghat quotient in the G quotient with the same
/// (k, L); every maximal cell of the image must have exactly two preimages.
struct Fold {
    SimplicialComplex base;
    /// Cover vertex id -> base vertex id.
    std::vector<VertexId> vertex_map;
};
Fold fold_to_G(const SimplicialComplex& cover, const ConstructionParams& params);

/// N(Z) and N(Z') together contain every maximal cell of the subdivision.
bool neighborhoods_cover(const NeighborhoodPair& pair);
/// In every dimension, the cells lying in both neighborhoods are exactly the
/// cells of `boundary`.
bool neighborhoods_meet_in(const NeighborhoodPair& pair, const Subcomplex& boundary);

} // namespace abg
