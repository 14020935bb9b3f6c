#pragma once

#include "abg/complex.hpp"
#include "abg/homology.hpp"

#include <span>
#include <string>
#include <vector>

namespace abg {

struct PseudomanifoldReport {
    bool pure = false;
    bool ridges_ok = false;
    std::size_t bad_ridges = 0;
    std::size_t components = 0;
    bool ok = false;
    std::string message;
};

/// Pure of dimension d with every (d-1)-cell in exactly two d-cells. Also
/// counts the components of the facet adjacency graph.
PseudomanifoldReport verify_closed_pseudomanifold(const SimplicialComplex& complex, int d);

struct LinkEntry {
    VertexId vertex = 0;
    bool ok = false;
    std::vector<HomologyDescriptor> homology;
    std::string note;
};

struct LinkReport {
    bool ok = true;
    std::vector<LinkEntry> entries;
};

/// For each sampled vertex, the link must have the integral homology of the
/// (d-1)-sphere; for d = 2 it must also be a single cycle.
LinkReport vertex_link_homology_check(const SimplicialComplex& complex, int d, std::span<const VertexId> sample);

/// Evenly spaced vertex ids, deterministic.
std::vector<VertexId> sample_vertices(const SimplicialComplex& complex, std::size_t count);

} // namespace abg
