#pragma once

#include <cassert>
#include <cstdint>
#include <vector>

#include "quadric/exact.hpp"
#include "quadric/fp.hpp"

namespace quadric {

// Rank kernels. Both walk the columns left to right, so the rank of every
// column prefix falls out of a single elimination: after processing the
// first k columns the pivot count equals the rank of the k-column
// submatrix. `cuts` lists prefix lengths (in columns, ascending); the
// result holds one rank per cut.

// Fraction-free (Bareiss) elimination over Z. Entries after k pivot steps
// are (k+1)x(k+1) minors of the input, so the two-term update divides
// exactly by the previous pivot. Reference path: no probabilistic step.
inline std::vector<long long> prefix_ranks_bareiss(
    std::vector<std::vector<Int>> m, const std::vector<std::size_t>& cuts) {
    const std::size_t rows = m.size();
    const std::size_t cols = rows ? m[0].size() : 0;
    std::vector<long long> out;
    out.reserve(cuts.size());
    std::size_t cut_at = 0;
    std::size_t rank = 0;
    Int prev(1);
    Int num;
    for (std::size_t c = 0; c < cols; ++c) {
        while (cut_at < cuts.size() && cuts[cut_at] == c) {
            out.push_back(static_cast<long long>(rank));
            ++cut_at;
        }
        if (rank < rows) {
            std::size_t piv = rank;
            while (piv < rows && m[piv][c] == 0) ++piv;
            if (piv < rows) {
                std::swap(m[rank], m[piv]);
                const Int& pivot = m[rank][c];
                for (std::size_t r = rank + 1; r < rows; ++r) {
                    if (m[r][c] == 0) {
                        // Still rescale so the minor invariant holds.
                        for (std::size_t cc = c + 1; cc < cols; ++cc) {
                            num = pivot * m[r][cc];
                            mpz_divexact(m[r][cc].get_mpz_t(), num.get_mpz_t(),
                                         prev.get_mpz_t());
                        }
                    } else {
                        for (std::size_t cc = c + 1; cc < cols; ++cc) {
                            num = pivot * m[r][cc] - m[r][c] * m[rank][cc];
                            mpz_divexact(m[r][cc].get_mpz_t(), num.get_mpz_t(),
                                         prev.get_mpz_t());
                        }
                        m[r][c] = 0;
                    }
                }
                prev = pivot;
                ++rank;
            }
        }
    }
    while (cut_at < cuts.size()) {
        out.push_back(static_cast<long long>(rank));
        ++cut_at;
    }
    return out;
}

// Plain row reduction over F_p.
inline std::vector<long long> prefix_ranks_fp(
    std::vector<std::vector<std::uint64_t>> m, std::uint64_t p,
    const std::vector<std::size_t>& cuts) {
    const std::size_t rows = m.size();
    const std::size_t cols = rows ? m[0].size() : 0;
    std::vector<long long> out;
    out.reserve(cuts.size());
    std::size_t cut_at = 0;
    std::size_t rank = 0;
    for (std::size_t c = 0; c < cols; ++c) {
        while (cut_at < cuts.size() && cuts[cut_at] == c) {
            out.push_back(static_cast<long long>(rank));
            ++cut_at;
        }
        if (rank < rows) {
            std::size_t piv = rank;
            while (piv < rows && m[piv][c] == 0) ++piv;
            if (piv < rows) {
                std::swap(m[rank], m[piv]);
                std::uint64_t pinv = fp::inv(m[rank][c], p);
                for (std::size_t r = rank + 1; r < rows; ++r) {
                    if (m[r][c] == 0) continue;
                    std::uint64_t f = fp::mul(m[r][c], pinv, p);
                    m[r][c] = 0;
                    for (std::size_t cc = c + 1; cc < cols; ++cc) {
                        if (m[rank][cc] == 0) continue;
                        m[r][cc] = fp::sub(m[r][cc], fp::mul(f, m[rank][cc], p), p);
                    }
                }
                ++rank;
            }
        }
    }
    while (cut_at < cuts.size()) {
        out.push_back(static_cast<long long>(rank));
        ++cut_at;
    }
    return out;
}

inline long long rank_bareiss(std::vector<std::vector<Int>> m) {
    std::size_t cols = m.empty() ? 0 : m[0].size();
    return prefix_ranks_bareiss(std::move(m), {cols})[0];
}

inline long long rank_fp(std::vector<std::vector<std::uint64_t>> m,
                         std::uint64_t p) {
    std::size_t cols = m.empty() ? 0 : m[0].size();
    return prefix_ranks_fp(std::move(m), p, {cols})[0];
}

} // namespace quadric
