#pragma once

#include "abg/complex.hpp"

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

namespace abg {

/// Text form: a header line "scx 1 <ambient> <vertices> <maximal cells>",
/// one vertex per line as "p/q" coordinates, then one maximal cell per line
/// as increasing 0-based vertex ids. Vertex lines follow the vertex order and
/// cell lines are sorted lexicographically, so the text is canonical.
/// Complexes whose cells carry lattice coefficients cannot be written
/// (InvalidInput).
std::string write_scx(const SimplicialComplex& complex);

/// Strict inverse of write_scx. Throws ParseError (with the line number) or
/// FormatVersionUnsupported. With a chart, every vertex must already be a
/// canonical representative (ParamMismatch).
SimplicialComplex parse_scx(std::string_view text, std::optional<QuotientChart> chart = std::nullopt);

void save_scx(const SimplicialComplex& complex, const std::filesystem::path& path);
SimplicialComplex load_scx(const std::filesystem::path& path, std::optional<QuotientChart> chart = std::nullopt);

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::string_view text);

} // namespace abg
