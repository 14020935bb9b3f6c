#include "abg/quotient.hpp"

#include "abg/error.hpp"
#include "abg/geometry.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <set>

namespace abg {

namespace {

/// Half-integer points in doubled integer coordinates, with the lattice
/// reduction done in machine integers.
struct HalfGrid {
    int n;
    long axis_period; // doubled L
    long height;      // doubled last coordinate of the last generator
    std::vector<long> last;

    explicit HalfGrid(const ConstructionParams& p)
        : n(p.ambient_dim()), axis_period(2L * p.L), height(0), last(static_cast<std::size_t>(n), 1)
    {
        last.back() = 2L * p.L + 1;
        if (p.group == GroupKind::Ghat)
            for (auto& c : last)
                c *= 2;
        height = last.back();
    }

    std::uint64_t num_points() const
    {
        std::uint64_t count = static_cast<std::uint64_t>(height);
        for (int i = 0; i + 1 < n; ++i)
            count *= static_cast<std::uint64_t>(axis_period);
        return count;
    }

    static long floor_div(long a, long b)
    {
        long q = a / b;
        if ((a % b != 0) && ((a < 0) != (b < 0)))
            --q;
        return q;
    }

    /// Reduces x in place; coeff receives c with x_old = x_new + basis * c.
    void reduce(std::vector<long>& x, std::vector<long>& coeff) const
    {
        coeff.assign(static_cast<std::size_t>(n), 0);
        const long m_last = floor_div(x.back(), height);
        for (std::size_t i = 0; i < x.size(); ++i)
            x[i] -= m_last * last[i];
        coeff.back() = m_last;
        for (std::size_t i = 0; i + 1 < x.size(); ++i) {
            const long m = floor_div(x[i], axis_period);
            x[i] -= m * axis_period;
            coeff[i] = m;
        }
    }

    /// Mixed-radix index; the first coordinate is most significant, so index
    /// order is lexicographic order.
    std::uint64_t index(const std::vector<long>& x) const
    {
        std::uint64_t id = 0;
        for (std::size_t i = 0; i + 1 < x.size(); ++i)
            id = id * static_cast<std::uint64_t>(axis_period) + static_cast<std::uint64_t>(x[i]);
        return id * static_cast<std::uint64_t>(height) + static_cast<std::uint64_t>(x.back());
    }

    std::vector<long> point(std::uint64_t id) const
    {
        std::vector<long> x(static_cast<std::size_t>(n));
        x.back() = static_cast<long>(id % static_cast<std::uint64_t>(height));
        id /= static_cast<std::uint64_t>(height);
        for (int i = n - 2; i >= 0; --i) {
            x[static_cast<std::size_t>(i)] = static_cast<long>(id % static_cast<std::uint64_t>(axis_period));
            id /= static_cast<std::uint64_t>(axis_period);
        }
        return x;
    }
};

RationalVector halve(const std::vector<long>& x)
{
    RationalVector out(x.size());
    for (std::size_t i = 0; i < x.size(); ++i)
        out[i] = Rational(x[i], 2);
    for (std::size_t i = 0; i < x.size(); ++i)
        out[i].canonicalize();
    return out;
}

/// Monotone paths across the half-cube with doubled origin o: from the
/// integer corner to the opposite corner, one per permutation.
template <typename Fn>
void for_each_half_cube_simplex(const std::vector<long>& o, Fn&& fn)
{
    const std::size_t n = o.size();
    std::vector<long> v(n), w(n);
    for (std::size_t i = 0; i < n; ++i) {
        const bool even = (o[i] % 2 + 2) % 2 == 0;
        v[i] = even ? o[i] : o[i] + 1;
        w[i] = even ? o[i] + 1 : o[i];
    }
    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), std::size_t{0});
    std::vector<std::vector<long>> path(n + 1);
    do {
        path[0] = v;
        for (std::size_t j = 0; j < n; ++j) {
            path[j + 1] = path[j];
            path[j + 1][perm[j]] = w[perm[j]];
        }
        fn(path);
    } while (std::next_permutation(perm.begin(), perm.end()));
}

Offset narrow(long c)
{
    if (c < -127 || c > 127)
        fail(ErrorCode::InvalidInput, "lattice coefficient out of range");
    return static_cast<Offset>(c);
}

} // namespace

PointClass classify_point(const RationalVector& p, int k)
{
    int non_integer = 0, non_half = 0;
    for (const auto& c : p) {
        if (!is_integer(c))
            ++non_integer;
        if (!is_integer(c - Rational(1, 2)))
            ++non_half;
    }
    if (non_integer <= k)
        return PointClass::InZ;
    if (non_half <= k)
        return PointClass::InZprime;
    return PointClass::Neither;
}

bool in_skeleton(const RationalVector& p, int k, Skeleton which)
{
    return classify_point(p, k) == (which == Skeleton::Z ? PointClass::InZ : PointClass::InZprime);
}

SimplicialComplex triangulate_quotient(const ConstructionParams& params, const QuotientOptions& options)
{
    params.validate();
    const HalfGrid grid(params);
    const int n = grid.n;
    const std::size_t nn = static_cast<std::size_t>(n);
    const std::uint64_t num_points = grid.num_points();
    if (num_points > (1ull << 31))
        fail(ErrorCode::InvalidInput, "quotient too large");

    std::vector<RationalVector> vertices;
    vertices.reserve(num_points);
    for (std::uint64_t id = 0; id < num_points; ++id)
        vertices.push_back(halve(grid.point(id)));

    CellTable tops(n, n);
    CellTable ridges(n - 1, n);
    std::vector<std::uint32_t> ridge_source;
    std::vector<long> coeff;
    std::vector<std::pair<VertexId, std::size_t>> order(nn + 1);
    std::vector<VertexId> ids(nn + 1);
    std::vector<std::vector<long>> coeffs(nn + 1);
    std::vector<Offset> offs((nn + 1) * nn);
    std::vector<VertexId> face_ids;
    std::vector<Offset> face_offs;
    for (std::uint64_t cube = 0; cube < num_points; ++cube) {
        const auto origin = grid.point(cube);
        for_each_half_cube_simplex(origin, [&](const std::vector<std::vector<long>>& path) {
            for (std::size_t j = 0; j <= nn; ++j) {
                std::vector<long> x = path[j];
                grid.reduce(x, coeffs[j]);
                order[j] = {static_cast<VertexId>(grid.index(x)), j};
            }
            std::sort(order.begin(), order.end());
            for (std::size_t j = 0; j < nn; ++j)
                if (order[j].first == order[j + 1].first)
                    fail(ErrorCode::QuotientNotSimplicial,
                         "a simplex meets the lattice orbit of vertex " + format_vector(vertices[order[j].first]) + " twice");
            for (std::size_t j = 0; j <= nn; ++j) {
                ids[j] = order[j].first;
                for (std::size_t a = 0; a < nn; ++a)
                    offs[j * nn + a] = narrow(coeffs[order[j].second][a] - coeffs[order[0].second][a]);
            }
            tops.push_back(ids, offs);
            const std::size_t row = tops.size() - 1;
            // faces opposite the two path ends lie on the half-cube boundary
            for (std::size_t end : {std::size_t{0}, nn}) {
                unsigned mask = (1u << (nn + 1)) - 1;
                for (std::size_t j = 0; j <= nn; ++j)
                    if (order[j].second == end)
                        mask &= ~(1u << j);
                tops.face(row, mask, face_ids, face_offs);
                ridges.push_back(face_ids, face_offs);
                ridge_source.push_back(static_cast<std::uint32_t>(cube));
            }
        });
    }

    // gluing: every boundary ridge is produced by exactly two half-cubes
    {
        std::vector<std::uint32_t> idx(ridges.size());
        std::iota(idx.begin(), idx.end(), 0u);
        std::sort(idx.begin(), idx.end(), [&](std::uint32_t a, std::uint32_t b) {
            const int c = ridges.compare_rows(a, ridges, b);
            return c != 0 ? c < 0 : ridge_source[a] < ridge_source[b];
        });
        for (std::size_t i = 0; i < idx.size();) {
            std::size_t j = i + 1;
            while (j < idx.size() && ridges.compare_rows(idx[i], ridges, idx[j]) == 0)
                ++j;
            if (j - i != 2 || ridge_source[idx[i]] == ridge_source[idx[i + 1]])
                fail(ErrorCode::QuotientNotSimplicial, "half-cube triangulations disagree on a shared facet");
            i = j;
        }
    }

    const std::size_t expected = tops.size();
    tops.sort_unique();
    if (tops.size() != expected)
        fail(ErrorCode::QuotientNotSimplicial, "two half-cube simplices have the same lattice orbit");

    // drop coefficients when vertex sets already determine the cells
    CellTable plain(n, 0);
    plain.reserve(tops.size());
    for (std::size_t r = 0; r < tops.size(); ++r)
        plain.push_back(tops.ids(r));
    plain.sort_unique();
    const bool vertex_sets_unique = plain.size() == tops.size();
    if (!vertex_sets_unique && options.require_simplicial)
        fail(ErrorCode::QuotientNotSimplicial, "distinct simplex orbits share a vertex set (L = 1)");
    std::vector<CellTable> gens;
    if (vertex_sets_unique && params.L >= 2)
        gens.push_back(std::move(plain));
    else
        gens.push_back(std::move(tops));
    return SimplicialComplex::assemble(n, std::move(vertices), std::move(gens), QuotientChart(LatticeGroup(params)));
}

SimplicialComplex triangulate_box(int k, const RationalVector& lo, const RationalVector& hi)
{
    const std::size_t n = static_cast<std::size_t>(2 * k + 1);
    if (lo.size() != n || hi.size() != n)
        fail(ErrorCode::InvalidInput, "box corners have the wrong dimension");
    std::vector<long> dlo(n), extent(n);
    for (std::size_t i = 0; i < n; ++i) {
        Rational a = lo[i] * 2, b = hi[i] * 2;
        if (!is_integer(a) || !is_integer(b) || b <= a)
            fail(ErrorCode::InvalidInput, "box corners must be half-integer with lo < hi");
        dlo[i] = a.get_num().get_si();
        extent[i] = b.get_num().get_si() - dlo[i] + 1;
    }
    auto index = [&](const std::vector<long>& x) {
        std::uint64_t id = 0;
        for (std::size_t i = 0; i < n; ++i)
            id = id * static_cast<std::uint64_t>(extent[i]) + static_cast<std::uint64_t>(x[i] - dlo[i]);
        return static_cast<VertexId>(id);
    };
    std::uint64_t total = 1;
    for (long e : extent)
        total *= static_cast<std::uint64_t>(e);
    std::vector<RationalVector> vertices;
    std::vector<long> x(n);
    for (std::uint64_t id = 0; id < total; ++id) {
        std::uint64_t rest = id;
        for (std::size_t i = n; i-- > 0;) {
            x[i] = dlo[i] + static_cast<long>(rest % static_cast<std::uint64_t>(extent[i]));
            rest /= static_cast<std::uint64_t>(extent[i]);
        }
        vertices.push_back(halve(x));
    }
    CellTable tops(static_cast<int>(n), 0);
    std::vector<VertexId> ids(n + 1);
    std::vector<long> o(n, 0);
    // origins range over lo .. hi - 1/2 in every coordinate
    std::vector<long> cur(dlo);
    while (true) {
        for_each_half_cube_simplex(cur, [&](const std::vector<std::vector<long>>& path) {
            for (std::size_t j = 0; j <= n; ++j)
                ids[j] = index(path[j]);
            std::sort(ids.begin(), ids.end());
            tops.push_back(ids);
        });
        std::size_t i = 0;
        for (; i < n; ++i) {
            if (cur[i] < dlo[i] + extent[i] - 2) {
                ++cur[i];
                break;
            }
            cur[i] = dlo[i];
        }
        if (i == n)
            break;
    }
    std::vector<CellTable> gens;
    gens.push_back(std::move(tops));
    return SimplicialComplex::assemble(static_cast<int>(n), std::move(vertices), std::move(gens));
}

void require_chart(const SimplicialComplex& quotient, const ConstructionParams& params)
{
    if (!quotient.chart() || !(quotient.chart()->group() == LatticeGroup(params)))
        fail(ErrorCode::ParamMismatch, "complex is not a quotient for the given parameters");
}

namespace {

void require_chart_or_region(const SimplicialComplex& complex, const ConstructionParams& params)
{
    if (complex.ambient_dim() != params.ambient_dim())
        fail(ErrorCode::ParamMismatch, "ambient dimension does not match the parameters");
    if (complex.chart())
        require_chart(complex, params);
}

RationalVector average(const std::vector<RationalVector>& pts)
{
    RationalVector sum(pts[0].size());
    for (const auto& p : pts)
        sum += p;
    sum *= Rational(1, static_cast<long>(pts.size()));
    return sum;
}

} // namespace

Subcomplex skeleton_subcomplex(const SimplicialComplex& quotient, const ConstructionParams& params, Skeleton which)
{
    require_chart_or_region(quotient, params);
    if (quotient.chart() && params.group == GroupKind::G)
        fail(ErrorCode::ParamMismatch, "the skeleta are not invariant under G; use the Ghat quotient");
    std::vector<CellTable> cells;
    for (int d = 0; d <= std::min(params.k, quotient.dimension()); ++d) {
        const CellTable& all = quotient.cells(d);
        std::vector<CellIndex> rows;
        for (std::size_t r = 0; r < all.size(); ++r)
            if (in_skeleton(average(quotient.lift(all, r)), params.k, which))
                rows.push_back(static_cast<CellIndex>(r));
        cells.push_back(all.select(rows));
    }
    return Subcomplex::closure_of(quotient, std::move(cells), true);
}

bool verify_dual_split(const SimplicialComplex& quotient, const ConstructionParams& params)
{
    require_chart_or_region(quotient, params);
    for (const CellTable* table : quotient.maximal_tables()) {
        for (std::size_t r = 0; r < table->size(); ++r) {
            int in_z = 0, in_zp = 0;
            for (const auto& p : quotient.lift(*table, r)) {
                const auto c = classify_point(p, params.k);
                in_z += c == PointClass::InZ;
                in_zp += c == PointClass::InZprime;
            }
            if (in_z != params.k + 1 || in_zp != params.k + 1)
                return false;
        }
    }
    return true;
}

bool skeleton_full_on_lifts(const SimplicialComplex& quotient, const ConstructionParams& params, Skeleton which)
{
    require_chart_or_region(quotient, params);
    for (const CellTable* table : quotient.maximal_tables()) {
        for (std::size_t r = 0; r < table->size(); ++r) {
            std::vector<RationalVector> inside;
            for (const auto& p : quotient.lift(*table, r))
                if (in_skeleton(p, params.k, which))
                    inside.push_back(p);
            if (!inside.empty() && !in_skeleton(average(inside), params.k, which))
                return false;
        }
    }
    return true;
}

Rational total_volume(const SimplicialComplex& complex)
{
    Rational sum = 0;
    const CellTable& tops = complex.maximal(complex.ambient_dim());
    for (std::size_t r = 0; r < tops.size(); ++r)
        sum += simplex_volume(complex.lift(tops, r));
    return sum;
}

std::uint64_t cubical_cell_count(const ConstructionParams& params, int i)
{
    params.validate();
    if (params.group != GroupKind::Ghat)
        fail(ErrorCode::ParamMismatch, "the cell count is defined for the Ghat quotient");
    if (i < 0 || i > params.k)
        fail(ErrorCode::IndexOutOfRange, "cell dimension must lie in 0..k");
    const HalfGrid grid(params);
    const std::size_t n = static_cast<std::size_t>(grid.n);
    // integer base points over a box one unit wider than the canonical region
    std::vector<long> lo(n, -2), hi(n);
    for (std::size_t a = 0; a + 1 < n; ++a)
        hi[a] = grid.axis_period + 2;
    hi[n - 1] = grid.height + 2;
    std::set<std::pair<std::uint64_t, unsigned>> orbits;
    std::vector<long> b(lo), x, coeff;
    while (true) {
        x = b;
        grid.reduce(x, coeff);
        const std::uint64_t id = grid.index(x);
        for (unsigned mask = 0; mask < (1u << n); ++mask)
            if (std::popcount(mask) == i)
                orbits.emplace(id, mask);
        std::size_t a = 0;
        for (; a < n; ++a) {
            if (b[a] + 2 <= hi[a]) {
                b[a] += 2;
                break;
            }
            b[a] = lo[a];
        }
        if (a == n)
            break;
    }
    return orbits.size();
}

namespace {

std::uint64_t binomial(int n, int r)
{
    std::uint64_t c = 1;
    for (int j = 1; j <= r; ++j)
        c = c * static_cast<std::uint64_t>(n - r + j) / static_cast<std::uint64_t>(j);
    return c;
}

std::uint64_t power(std::uint64_t base, int e)
{
    std::uint64_t out = 1;
    while (e-- > 0)
        out *= base;
    return out;
}

} // namespace

std::uint64_t cubical_cell_formula(const ConstructionParams& params, int i)
{
    const auto L = static_cast<std::uint64_t>(params.L);
    return power(L, 2 * params.k) * (2 * L + 1) * binomial(2 * params.k + 1, i);
}

std::uint64_t printed_cell_formula(const ConstructionParams& params, int i)
{
    const auto L = static_cast<std::uint64_t>(params.L);
    return power(L, 2 * params.k) * (L + 1) * binomial(2 * params.k + 1, i);
}

long cubical_euler(const ConstructionParams& params)
{
    long chi = 0;
    for (int i = 0; i <= params.k; ++i)
        chi += (i % 2 == 0 ? 1 : -1) * static_cast<long>(cubical_cell_count(params, i));
    return chi;
}

} // namespace abg
