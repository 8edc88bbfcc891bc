#pragma once

#include <cassert>
#include <cstdint>
#include <vector>

#include "quadric/bigraded.hpp"
#include "quadric/errors.hpp"
#include "quadric/exact.hpp"
#include "quadric/fp.hpp"
#include "quadric/grid.hpp"
#include "quadric/rank.hpp"

namespace quadric {

// Ground truth: M_X(i,j) is the rank of the evaluation map sending the
// (i+1)(j+1) monomials x^s y^t (s <= i, t <= j) to their values at the
// points. All points sit at finite distinct coordinates, so the affine
// monomial basis spans every evaluation that matters.
enum class Field { Rational, Prime };

struct OracleOptions {
    Field field = Field::Rational;
    std::uint64_t prime = kDefaultPrime;
};

namespace detail {

// Power tables over Q, with per-point denominator clearing: row r of the
// (i,j) matrix is scaled by den(u_r)^i * den(v_r)^j, which leaves ranks
// untouched and all entries integral.
struct RationalPoint {
    std::vector<Int> unum, uden, vnum, vden;  // k-th powers
};

inline std::vector<RationalPoint> rational_points(const GridConfig& cfg,
                                                  int max_i, int max_j) {
    std::vector<RationalPoint> pts;
    pts.reserve(cfg.points.size());
    for (auto [r, c] : cfg.points) {
        const Rat& u = cfg.row_coords[r];
        const Rat& v = cfg.col_coords[c];
        RationalPoint p;
        auto powers = [](const Int& base, int upto) {
            std::vector<Int> w(upto + 1);
            w[0] = 1;
            for (int k = 1; k <= upto; ++k) w[k] = w[k - 1] * base;
            return w;
        };
        p.unum = powers(u.get_num(), max_i);
        p.uden = powers(u.get_den(), max_i);
        p.vnum = powers(v.get_num(), max_j);
        p.vden = powers(v.get_den(), max_j);
        pts.push_back(std::move(p));
    }
    return pts;
}

struct PrimePoint {
    std::vector<std::uint64_t> upow, vpow;
};

inline std::vector<PrimePoint> prime_points(const GridConfig& cfg, int max_i,
                                            int max_j, std::uint64_t p) {
    if (!fp::is_prime(p)) throw ParseError("modulus is not prime");
    if (p <= (1ULL << 60))
        throw ParseError("fast-path modulus must exceed 2^60");
    // Distinct rationals may collide as residues; that would silently
    // change the scheme, so refuse.
    std::vector<std::uint64_t> rres, cres;
    for (const Rat& u : cfg.row_coords) rres.push_back(residue(u, p));
    for (const Rat& v : cfg.col_coords) cres.push_back(residue(v, p));
    for (std::size_t i = 0; i < rres.size(); ++i)
        for (std::size_t k = i + 1; k < rres.size(); ++k)
            if (rres[i] == rres[k])
                throw Error("row coordinates collide modulo the prime");
    for (std::size_t i = 0; i < cres.size(); ++i)
        for (std::size_t k = i + 1; k < cres.size(); ++k)
            if (cres[i] == cres[k])
                throw Error("column coordinates collide modulo the prime");
    std::vector<PrimePoint> pts;
    pts.reserve(cfg.points.size());
    for (auto [r, c] : cfg.points) {
        PrimePoint q;
        q.upow.resize(max_i + 1);
        q.vpow.resize(max_j + 1);
        q.upow[0] = 1 % p;
        q.vpow[0] = 1 % p;
        for (int k = 1; k <= max_i; ++k) q.upow[k] = fp::mul(q.upow[k - 1], rres[r], p);
        for (int k = 1; k <= max_j; ++k) q.vpow[k] = fp::mul(q.vpow[k - 1], cres[c], p);
        pts.push_back(std::move(q));
    }
    return pts;
}

// Columns for fixed i, grouped in blocks by j: block j holds monomials
// (0,j)..(i,j), so the prefix of j+1 blocks spans exactly s<=i, t<=j.
inline std::vector<long long> hilbert_row_rational(
    const std::vector<RationalPoint>& pts, int i, int max_j) {
    std::size_t n = pts.size();
    std::vector<std::vector<Int>> m(n);
    for (std::size_t r = 0; r < n; ++r) {
        const auto& pt = pts[r];
        m[r].reserve(static_cast<std::size_t>(i + 1) * (max_j + 1));
        for (int j = 0; j <= max_j; ++j)
            for (int s = 0; s <= i; ++s)
                m[r].push_back(pt.unum[s] * pt.uden[i - s] * pt.vnum[j] *
                               pt.vden[max_j - j]);
    }
    std::vector<std::size_t> cuts;
    for (int j = 0; j <= max_j; ++j)
        cuts.push_back(static_cast<std::size_t>(i + 1) * (j + 1));
    return prefix_ranks_bareiss(std::move(m), cuts);
}

inline std::vector<long long> hilbert_row_prime(
    const std::vector<PrimePoint>& pts, int i, int max_j, std::uint64_t p) {
    std::size_t n = pts.size();
    std::vector<std::vector<std::uint64_t>> m(n);
    for (std::size_t r = 0; r < n; ++r) {
        const auto& pt = pts[r];
        m[r].reserve(static_cast<std::size_t>(i + 1) * (max_j + 1));
        for (int j = 0; j <= max_j; ++j)
            for (int s = 0; s <= i; ++s)
                m[r].push_back(fp::mul(pt.upow[s], pt.vpow[j], p));
    }
    std::vector<std::size_t> cuts;
    for (int j = 0; j <= max_j; ++j)
        cuts.push_back(static_cast<std::size_t>(i + 1) * (j + 1));
    return prefix_ranks_fp(std::move(m), p, cuts);
}

} // namespace detail

inline long long evaluation_rank(const GridConfig& cfg, int i, int j,
                                 const OracleOptions& opt = {}) {
    if (i < 0 || j < 0) throw ParseError("bidegree components must be >= 0");
    if (opt.field == Field::Rational) {
        auto pts = detail::rational_points(cfg, i, j);
        return detail::hilbert_row_rational(pts, i, j).back();
    }
    auto pts = detail::prime_points(cfg, i, j, opt.prime);
    return detail::hilbert_row_prime(pts, i, j, opt.prime).back();
}

// Full first difference. Hilbert values are computed on the window
// [0..rows] x [0..cols]; the support rectangle ends at (rows-1, cols-1),
// so the guard row/column are stabilized and differencing trims exactly.
inline DeltaMatrix hilbert_matrix(const GridConfig& cfg,
                                  const OracleOptions& opt = {}) {
    cfg.validate();
    int R = cfg.rows(), C = cfg.cols();
    IntGrid m(R + 1, std::vector<long long>(C + 1, 0));
    if (opt.field == Field::Rational) {
        auto pts = detail::rational_points(cfg, R, C);
        for (int i = 0; i <= R; ++i)
            m[i] = detail::hilbert_row_rational(pts, i, C);
    } else {
        auto pts = detail::prime_points(cfg, R, C, opt.prime);
        for (int i = 0; i <= R; ++i)
            m[i] = detail::hilbert_row_prime(pts, i, C, opt.prime);
    }
    DeltaMatrix d = delta_from_hilbert(m);
    if (d.degree() != cfg.degree())
        throw Error("internal: delta entries do not sum to the point count");
    return d;
}

} // namespace quadric
