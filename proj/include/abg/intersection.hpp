#pragma once

#include "abg/complex.hpp"
#include "abg/lattice.hpp"

#include <optional>
#include <utility>

namespace abg {

using Segment = std::pair<RationalVector, RationalVector>;

struct IntersectionResult {
    int parity = 0;
    std::size_t crossings = 0;
    /// 0 when the segment itself was generic, else the j of the shift 2^-j.
    int perturbation = 0;
};

/// Perturbation levels tried after the unperturbed segment.
inline constexpr int first_perturbation = 10;
inline constexpr int last_perturbation = 32;

/// Shifts both endpoints by e (1, e, e^2, ...) with e = 2^-level (level 0:
/// unchanged).
Segment perturbed(const Segment& segment, int level);

/// Transverse crossings of the segment with the maximal cells of x (and
/// their lattice translates when x is charted). nullopt when the segment
/// touches x non-transversally: through a lower face, tangentially, or at
/// an endpoint.
std::optional<std::size_t> count_crossings(const SimplicialComplex& x, const Segment& segment);

/// Parity of the crossings, retrying along the perturbation schedule until
/// the segment is generic. Throws EndpointsOnSurface if an original endpoint
/// lies on x, PerturbationExhausted if no level is generic, and
/// ParamMismatch if x is charted by a different group.
IntersectionResult mod2_segment_intersection(const SimplicialComplex& x, const ConstructionParams& params,
                                             const Segment& segment);
/// Same for an uncharted complex.
IntersectionResult mod2_segment_intersection(const SimplicialComplex& x, const Segment& segment);

/// Whether the point lies on some (translate of a) maximal cell of x.
bool point_on_complex(const SimplicialComplex& x, const RationalVector& p);

} // namespace abg
