#include "abg/scx.hpp"

#include "abg/error.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>

namespace abg {

std::string write_scx(const SimplicialComplex& complex)
{
    if (complex.has_offsets())
        fail(ErrorCode::InvalidInput, "cells with lattice coefficients have no .scx form");
    std::vector<std::vector<VertexId>> rows;
    for (const CellTable* table : complex.maximal_tables())
        for (std::size_t r = 0; r < table->size(); ++r) {
            auto ids = table->ids(r);
            rows.emplace_back(ids.begin(), ids.end());
        }
    std::sort(rows.begin(), rows.end());
    std::string out = "scx 1 " + std::to_string(complex.ambient_dim()) + " " + std::to_string(complex.num_vertices()) +
                      " " + std::to_string(rows.size()) + "\n";
    for (const auto& v : complex.vertices()) {
        for (std::size_t i = 0; i < v.size(); ++i) {
            if (i)
                out += ' ';
            out += format_rational(v[i]);
        }
        out += '\n';
    }
    for (const auto& row : rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i)
                out += ' ';
            out += std::to_string(row[i]);
        }
        out += '\n';
    }
    return out;
}

namespace {

class LineReader {
public:
    explicit LineReader(std::string_view text) : text_(text) {}

    std::size_t line() const { return line_; }

    std::vector<std::string_view> next(std::string_view what)
    {
        if (pos_ >= text_.size())
            error("missing " + std::string(what));
        const auto end = text_.find('\n', pos_);
        if (end == std::string_view::npos)
            error("line does not end with a newline");
        std::string_view content = text_.substr(pos_, end - pos_);
        pos_ = end + 1;
        ++line_;
        std::vector<std::string_view> tokens;
        std::size_t p = 0;
        while (true) {
            const auto sp = content.find(' ', p);
            const auto tok = content.substr(p, sp == std::string_view::npos ? std::string_view::npos : sp - p);
            if (tok.empty())
                error("empty field");
            tokens.push_back(tok);
            if (sp == std::string_view::npos)
                break;
            p = sp + 1;
        }
        return tokens;
    }

    bool at_end() const { return pos_ >= text_.size(); }

    [[noreturn]] void error(const std::string& msg) const
    {
        fail(ErrorCode::ParseError, "line " + std::to_string(line_ == 0 ? 1 : line_) + ": " + msg);
    }

private:
    std::string_view text_;
    std::size_t pos_ = 0;
    std::size_t line_ = 0;
};

std::size_t parse_count(const LineReader& in, std::string_view tok)
{
    std::size_t v = 0;
    if (tok.size() > 1 && tok[0] == '0')
        in.error("leading zero in '" + std::string(tok) + "'");
    const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (ec != std::errc() || ptr != tok.data() + tok.size())
        in.error("expected a non-negative integer, got '" + std::string(tok) + "'");
    return v;
}

} // namespace

SimplicialComplex parse_scx(std::string_view text, std::optional<QuotientChart> chart)
{
    LineReader in(text);
    const auto header = in.next("header");
    if (header.empty() || header[0] != "scx")
        in.error("header must start with 'scx'");
    if (header.size() >= 2 && header[1] != "1")
        fail(ErrorCode::FormatVersionUnsupported, "scx version '" + std::string(header[1]) + "'");
    if (header.size() != 5)
        in.error("header needs 5 fields");
    const std::size_t ambient = parse_count(in, header[2]);
    const std::size_t nv = parse_count(in, header[3]);
    const std::size_t nt = parse_count(in, header[4]);
    if (ambient == 0)
        in.error("ambient dimension must be positive");

    std::vector<RationalVector> vertices;
    vertices.reserve(nv);
    for (std::size_t i = 0; i < nv; ++i) {
        const auto tokens = in.next("vertex line");
        if (tokens.size() != ambient)
            in.error("expected " + std::to_string(ambient) + " coordinates");
        RationalVector v(ambient);
        for (std::size_t j = 0; j < ambient; ++j)
            if (!parse_rational(tokens[j], v[j]))
                in.error("bad coordinate '" + std::string(tokens[j]) + "'");
        if (!vertices.empty() && !(vertices.back() < v))
            in.error("vertex lines are not strictly increasing");
        if (chart && !chart->is_canonical(v))
            fail(ErrorCode::ParamMismatch, "vertex on line " + std::to_string(in.line()) + " is not canonical");
        vertices.push_back(std::move(v));
    }

    std::vector<CellTable> tables(ambient + 1);
    for (std::size_t d = 0; d <= ambient; ++d)
        tables[d] = CellTable(static_cast<int>(d), 0);
    std::vector<VertexId> prev, row;
    for (std::size_t i = 0; i < nt; ++i) {
        const auto tokens = in.next("simplex line");
        if (tokens.size() > ambient + 1)
            in.error("simplex has more vertices than the ambient dimension allows");
        row.clear();
        for (auto tok : tokens) {
            const std::size_t id = parse_count(in, tok);
            if (id >= nv)
                in.error("vertex id " + std::to_string(id) + " out of range");
            if (!row.empty() && row.back() >= id)
                in.error("vertex ids are not strictly increasing");
            row.push_back(static_cast<VertexId>(id));
        }
        if (!prev.empty() && !(prev < row))
            in.error("simplex lines are not sorted");
        tables[row.size() - 1].push_back(row);
        prev = row;
    }
    if (!in.at_end())
        in.error("trailing content");
    const auto count_before = nt;
    SimplicialComplex complex =
        SimplicialComplex::assemble(static_cast<int>(ambient), std::move(vertices), std::move(tables), std::move(chart));
    if (complex.num_maximal() != count_before)
        fail(ErrorCode::ParseError, "a listed simplex is a face of another");
    return complex;
}

std::string read_file(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        fail(ErrorCode::IoError, "cannot open " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::filesystem::path& path, std::string_view text)
{
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
        fail(ErrorCode::IoError, "cannot write " + path.string());
    out.write(text.data(), static_cast<std::streamsize>(text.size()));
    if (!out)
        fail(ErrorCode::IoError, "write failed for " + path.string());
}

void save_scx(const SimplicialComplex& complex, const std::filesystem::path& path)
{
    write_file(path, write_scx(complex));
}

SimplicialComplex load_scx(const std::filesystem::path& path, std::optional<QuotientChart> chart)
{
    return parse_scx(read_file(path), std::move(chart));
}

} // namespace abg
