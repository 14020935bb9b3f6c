#include "abg/kuhn.hpp"

#include "abg/error.hpp"

#include <algorithm>
#include <numeric>

namespace abg {

std::vector<std::vector<RationalVector>> monotone_paths(const RationalVector& v, const RationalVector& v_prime)
{
    const std::size_t m = v.size();
    std::vector<std::size_t> perm(m);
    std::iota(perm.begin(), perm.end(), std::size_t{0});
    std::vector<std::vector<RationalVector>> out;
    do {
        std::vector<RationalVector> path{v};
        RationalVector p = v;
        for (std::size_t axis : perm) {
            p[axis] = v_prime[axis];
            path.push_back(p);
        }
        out.push_back(std::move(path));
    } while (std::next_permutation(perm.begin(), perm.end()));
    return out;
}

SimplicialComplex cube_triangulation(const RationalVector& cube_origin, const Rational& side, const RationalVector& v,
                                     const RationalVector& v_prime)
{
    const std::size_t m = cube_origin.size();
    if (m < 1 || m > 7)
        fail(ErrorCode::DimensionOutOfRange, "cube dimension must be between 1 and 7");
    if (v.size() != m || v_prime.size() != m || side <= 0)
        fail(ErrorCode::InvalidInput, "cube data has inconsistent dimensions");
    for (std::size_t i = 0; i < m; ++i) {
        const bool v_low = v[i] == cube_origin[i];
        const bool v_high = v[i] == cube_origin[i] + side;
        const bool w_low = v_prime[i] == cube_origin[i];
        const bool w_high = v_prime[i] == cube_origin[i] + side;
        if (!((v_low && w_high) || (v_high && w_low)))
            fail(ErrorCode::NotOppositeVertices, "corners are not opposite vertices of the cube");
    }
    // canonical form: start the paths at the lexicographically smaller corner
    const RationalVector& start = v < v_prime ? v : v_prime;
    const RationalVector& end = v < v_prime ? v_prime : v;
    std::vector<RationalVector> corners;
    for (unsigned mask = 0; mask < (1u << m); ++mask) {
        RationalVector c = cube_origin;
        for (std::size_t i = 0; i < m; ++i)
            if (mask >> i & 1u)
                c[i] += side;
        corners.push_back(std::move(c));
    }
    std::sort(corners.begin(), corners.end());
    CellTable tops(static_cast<int>(m), 0);
    std::vector<VertexId> ids;
    for (const auto& path : monotone_paths(start, end)) {
        ids.clear();
        for (const auto& p : path)
            ids.push_back(static_cast<VertexId>(std::lower_bound(corners.begin(), corners.end(), p) - corners.begin()));
        std::sort(ids.begin(), ids.end());
        tops.push_back(ids);
    }
    std::vector<CellTable> gens;
    gens.push_back(std::move(tops));
    return SimplicialComplex::assemble(static_cast<int>(m), std::move(corners), std::move(gens));
}

SimplicialComplex kuhn_triangulation(int m)
{
    if (m < 1 || m > 7)
        fail(ErrorCode::DimensionOutOfRange, "kuhn_triangulation needs 1 <= m <= 7");
    const std::size_t n = static_cast<std::size_t>(m);
    RationalVector zero(n), one(n);
    for (std::size_t i = 0; i < n; ++i)
        one[i] = 1;
    return cube_triangulation(zero, Rational(1), zero, one);
}

} // namespace abg
