#pragma once

#include <algorithm>
#include <cassert>
#include <numeric>
#include <utility>
#include <vector>

#include "quadric/bigraded.hpp"
#include "quadric/engine.hpp"
#include "quadric/errors.hpp"
#include "quadric/grid.hpp"

namespace quadric {

// Conjugate of a partition given as a non-increasing vector.
inline std::vector<long long> conjugate_partition(
    const std::vector<long long>& p) {
    std::vector<long long> q;
    if (p.empty()) return q;
    q.resize(p[0], 0);
    for (long long part : p)
        for (long long j = 0; j < part; ++j) q[j]++;
    return q;
}

// Points-per-line profile of a staircase scheme: row counts and column
// counts are conjugate partitions of the degree.
struct StaircaseProfile {
    std::vector<long long> row_counts;  // p_0 >= ... >= p_a >= 1
    std::vector<long long> col_counts;  // conjugate

    long long degree() const {
        return std::accumulate(row_counts.begin(), row_counts.end(), 0LL);
    }

    static StaircaseProfile from_rows(std::vector<long long> p) {
        if (p.empty()) throw ParseError("empty staircase profile");
        for (long long v : p)
            if (v < 1) throw ParseError("staircase row count below 1");
        std::sort(p.begin(), p.end(), std::greater<>());
        StaircaseProfile s;
        s.col_counts = conjugate_partition(p);
        s.row_counts = std::move(p);
        return s;
    }

    static StaircaseProfile from_cols(std::vector<long long> q) {
        StaircaseProfile s = from_rows(std::move(q));
        std::swap(s.row_counts, s.col_counts);
        return s;
    }

    friend bool operator==(const StaircaseProfile&, const StaircaseProfile&) = default;
};

// ACM decision for a reduced grid-supported scheme: the incidence is ACM
// exactly when independent row and column permutations left-justify it
// into a staircase. Sorting both families by point count (descending,
// stable) decides this: in a staircase, lines with equal counts have
// identical supports, so any count-sorted order works or none does.
struct AcmVerdict {
    bool acm = false;
    std::vector<int> row_order;  // witness: position k displays original row_order[k]
    std::vector<int> col_order;
    StaircaseProfile profile;             // filled when acm
    std::pair<int, int> counter_cell{-1, -1};  // failing cell, original labels
};

inline AcmVerdict is_acm(int rows, int cols,
                         const std::vector<std::pair<int, int>>& pts) {
    std::vector<long long> rc(rows, 0), cc(cols, 0);
    std::vector<std::vector<char>> occ(rows, std::vector<char>(cols, 0));
    for (auto [r, c] : pts) {
        rc[r]++;
        cc[c]++;
        occ[r][c] = 1;
    }
    AcmVerdict v;
    v.row_order.resize(rows);
    v.col_order.resize(cols);
    std::iota(v.row_order.begin(), v.row_order.end(), 0);
    std::iota(v.col_order.begin(), v.col_order.end(), 0);
    std::stable_sort(v.row_order.begin(), v.row_order.end(),
                     [&](int a, int b) { return rc[a] > rc[b]; });
    std::stable_sort(v.col_order.begin(), v.col_order.end(),
                     [&](int a, int b) { return cc[a] > cc[b]; });
    for (int si = 0; si < rows; ++si)
        for (int sj = 0; sj < cols; ++sj) {
            bool expect = sj < rc[v.row_order[si]];
            if (occ[v.row_order[si]][v.col_order[sj]] != expect) {
                v.acm = false;
                v.counter_cell = {v.row_order[si], v.col_order[sj]};
                return v;
            }
        }
    v.acm = true;
    std::vector<long long> p;
    for (int r : v.row_order) p.push_back(rc[r]);
    v.profile = StaircaseProfile::from_rows(std::move(p));
    return v;
}

inline AcmVerdict is_acm(const GridConfig& cfg) {
    return is_acm(cfg.rows(), cfg.cols(), cfg.points);
}

// Closed form: delta(i,j) = 1 exactly on the Young diagram of the
// profile, 0 elsewhere.
inline DeltaMatrix delta_acm(const StaircaseProfile& s) {
    IntGrid g(s.row_counts.size(),
              std::vector<long long>(s.col_counts.size(), 0));
    for (std::size_t i = 0; i < s.row_counts.size(); ++i)
        for (long long j = 0; j < s.row_counts[i]; ++j) g[i][j] = 1;
    return DeltaMatrix::from_rows(g);
}

// Line additions on an ACM base hold unconditionally: no hypothesis check
// is needed, the engine formula is always the truth.
inline DeltaMatrix acm_add_partial_row(const DeltaMatrix& d,
                                       const LineAdditionSpec& spec) {
    return add_partial_row(d, spec, AddMode::Predict).delta;
}

inline DeltaMatrix acm_add_partial_col(const DeltaMatrix& d,
                                       const LineAdditionSpec& spec) {
    return add_partial_col(d, spec, AddMode::Predict).delta;
}

// Staircase incidence on fresh coordinates, for oracle cross-checks.
inline GridConfig staircase_config(const StaircaseProfile& s,
                                   std::uint64_t seed) {
    GridConfig cfg;
    Rng rng(seed);
    for (std::size_t i = 0; i < s.row_counts.size(); ++i)
        cfg.row_coords.push_back(detail::draw_fresh_coord(rng, cfg.row_coords));
    for (std::size_t j = 0; j < s.col_counts.size(); ++j)
        cfg.col_coords.push_back(detail::draw_fresh_coord(rng, cfg.col_coords));
    for (std::size_t i = 0; i < s.row_counts.size(); ++i)
        for (long long j = 0; j < s.row_counts[i]; ++j)
            cfg.points.emplace_back(static_cast<int>(i), static_cast<int>(j));
    cfg.seed = seed;
    cfg.normalize();
    cfg.validate();
    return cfg;
}

} // namespace quadric
