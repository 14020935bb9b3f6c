#include "abg/intersection.hpp"

#include "abg/error.hpp"
#include "abg/geometry.hpp"

namespace abg {

namespace {

std::vector<LatticeCoeffs> translations(const SimplicialComplex& x, const Box& region, const Box& cell)
{
    if (!x.chart())
        return {LatticeCoeffs(static_cast<std::size_t>(x.ambient_dim()), 0)};
    return x.chart()->overlapping_translations(region, cell);
}

/// Is some point of the segment a convex combination of the points?
bool touches(const std::vector<RationalVector>& pts, const RationalVector& a, const RationalVector& b)
{
    const std::size_t n = a.size();
    const std::size_t m = pts.size();
    // variables: lambda_0..lambda_{m-1}, t, s
    RationalMatrix rows(n + 2, std::vector<Rational>(m + 2, Rational(0)));
    std::vector<Rational> rhs(n + 2);
    for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t i = 0; i < m; ++i)
            rows[r][i] = pts[i][r];
        rows[r][m] = a[r] - b[r];
        rhs[r] = a[r];
    }
    for (std::size_t i = 0; i < m; ++i)
        rows[n][i] = 1;
    rhs[n] = 1;
    rows[n + 1][m] = 1;
    rows[n + 1][m + 1] = 1;
    rhs[n + 1] = 1;
    const std::vector<Rational> zero(m + 2, Rational(0));
    return maximize_lp(rows, rhs, zero).status != LpStatus::Infeasible;
}

enum class Hit { None, Transverse, Degenerate };

Hit segment_vs_simplex(const std::vector<RationalVector>& q, const RationalVector& a, const RationalVector& b)
{
    const std::size_t n = a.size();
    if (q.size() != n)
        fail(ErrorCode::InvalidInput, "maximal cells must have codimension one");
    // a + t (b - a) = q0 + sum_{i>=1} l_i (q_i - q0)
    RationalMatrix m(n, std::vector<Rational>(n));
    std::vector<Rational> rhs(n);
    for (std::size_t r = 0; r < n; ++r) {
        m[r][0] = b[r] - a[r];
        for (std::size_t i = 1; i < n; ++i)
            m[r][i] = q[0][r] - q[i][r];
        rhs[r] = q[0][r] - a[r];
    }
    auto sol = solve_square(std::move(m), std::move(rhs));
    if (!sol)
        return touches(q, a, b) ? Hit::Degenerate : Hit::None;
    const Rational& t = (*sol)[0];
    Rational l0 = 1;
    bool boundary = false;
    if (t < 0 || t > 1)
        return Hit::None;
    if (t == 0 || t == 1)
        boundary = true;
    for (std::size_t i = 1; i < n; ++i) {
        const Rational& l = (*sol)[i];
        if (l < 0)
            return Hit::None;
        if (l == 0)
            boundary = true;
        l0 -= l;
    }
    if (l0 < 0)
        return Hit::None;
    if (l0 == 0)
        boundary = true;
    return boundary ? Hit::Degenerate : Hit::Transverse;
}

void require_group(const SimplicialComplex& x, const ConstructionParams& params)
{
    if (!x.chart() || !(x.chart()->group() == LatticeGroup(params)))
        fail(ErrorCode::ParamMismatch, "complex is not charted by the group of the parameters");
}

IntersectionResult run_schedule(const SimplicialComplex& x, const Segment& segment)
{
    if (point_on_complex(x, segment.first) || point_on_complex(x, segment.second))
        fail(ErrorCode::EndpointsOnSurface, "a segment endpoint lies on the complex");
    if (auto c = count_crossings(x, segment))
        return {static_cast<int>(*c % 2), *c, 0};
    for (int level = first_perturbation; level <= last_perturbation; ++level)
        if (auto c = count_crossings(x, perturbed(segment, level)))
            return {static_cast<int>(*c % 2), *c, level};
    fail(ErrorCode::PerturbationExhausted, "no perturbation level gave a generic segment");
}

} // namespace

Segment perturbed(const Segment& segment, int level)
{
    if (level == 0)
        return segment;
    const Rational eps(BigInt(1), BigInt(1) << level);
    RationalVector shift(segment.first.size());
    Rational power = eps;
    for (std::size_t i = 0; i < shift.size(); ++i) {
        shift[i] = power;
        power *= eps;
    }
    return {segment.first + shift, segment.second + shift};
}

bool point_on_complex(const SimplicialComplex& x, const RationalVector& p)
{
    const Box point{p, p};
    for (const CellTable* table : x.maximal_tables()) {
        for (std::size_t r = 0; r < table->size(); ++r) {
            const auto pts = x.lift(*table, r);
            const Box cell = Box::of_points(pts);
            for (const auto& c : translations(x, point, cell)) {
                std::vector<RationalVector> moved = pts;
                if (x.chart()) {
                    const RationalVector shift = x.chart()->group().combine(c);
                    for (auto& q : moved)
                        q += shift;
                }
                if (!Box::of_points(moved).intersects(point))
                    continue;
                if (touches(moved, p, p))
                    return true;
            }
        }
    }
    return false;
}

std::optional<std::size_t> count_crossings(const SimplicialComplex& x, const Segment& segment)
{
    const auto& [a, b] = segment;
    if (a.size() != static_cast<std::size_t>(x.ambient_dim()) || b.size() != a.size())
        fail(ErrorCode::InvalidInput, "segment dimension does not match the complex");
    const Box region = Box::of_points({a, b});
    std::size_t crossings = 0;
    for (const CellTable* table : x.maximal_tables()) {
        for (std::size_t r = 0; r < table->size(); ++r) {
            const auto pts = x.lift(*table, r);
            const Box cell = Box::of_points(pts);
            for (const auto& c : translations(x, region, cell)) {
                std::vector<RationalVector> moved = pts;
                if (x.chart()) {
                    const RationalVector shift = x.chart()->group().combine(c);
                    for (auto& q : moved)
                        q += shift;
                }
                if (!Box::of_points(moved).intersects(region))
                    continue;
                if (table->dim() != x.ambient_dim() - 1) {
                    if (touches(moved, a, b))
                        return std::nullopt;
                    continue;
                }
                switch (segment_vs_simplex(moved, a, b)) {
                case Hit::None: break;
                case Hit::Transverse: ++crossings; break;
                case Hit::Degenerate: return std::nullopt;
                }
            }
        }
    }
    return crossings;
}

IntersectionResult mod2_segment_intersection(const SimplicialComplex& x, const ConstructionParams& params,
                                             const Segment& segment)
{
    require_group(x, params);
    return run_schedule(x, segment);
}

IntersectionResult mod2_segment_intersection(const SimplicialComplex& x, const Segment& segment)
{
    if (x.chart())
        fail(ErrorCode::ParamMismatch, "charted complex needs construction parameters");
    return run_schedule(x, segment);
}

} // namespace abg
