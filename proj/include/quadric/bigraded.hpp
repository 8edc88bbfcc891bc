#pragma once

#include <algorithm>
#include <array>
#include <cassert>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "quadric/errors.hpp"

namespace quadric {

using IntGrid = std::vector<std::vector<long long>>;

enum class Direction { Row, Col };

// First difference of a Hilbert function, stored trimmed: the last row and
// the last column each carry a nonzero entry. Entry (i,j) pairs the first
// bidegree component with rows and the second with columns; queries
// outside the support rectangle return 0.
class DeltaMatrix {
public:
    DeltaMatrix() = default;

    static DeltaMatrix from_rows(const IntGrid& grid) {
        std::size_t rows = grid.size();
        std::size_t cols = rows ? grid[0].size() : 0;
        for (const auto& r : grid)
            if (r.size() != cols) throw ParseError("ragged matrix rows");
        // Trim trailing all-zero rows/columns.
        auto row_zero = [&](std::size_t i) {
            for (std::size_t j = 0; j < cols; ++j)
                if (grid[i][j] != 0) return false;
            return true;
        };
        auto col_zero = [&](std::size_t j, std::size_t upto_rows) {
            for (std::size_t i = 0; i < upto_rows; ++i)
                if (grid[i][j] != 0) return false;
            return true;
        };
        while (rows > 0 && row_zero(rows - 1)) --rows;
        while (cols > 0 && col_zero(cols - 1, rows)) --cols;
        DeltaMatrix d;
        d.rows_ = static_cast<int>(rows);
        d.cols_ = static_cast<int>(rows ? cols : 0);
        d.entries_.reserve(rows * d.cols_);
        for (std::size_t i = 0; i < rows; ++i)
            for (std::size_t j = 0; j < static_cast<std::size_t>(d.cols_); ++j)
                d.entries_.push_back(grid[i][j]);
        return d;
    }

    int rows() const { return rows_; }   // a + 1
    int cols() const { return cols_; }   // b + 1
    bool empty() const { return rows_ == 0; }

    long long at(long long i, long long j) const {
        if (i < 0 || j < 0 || i >= rows_ || j >= cols_) return 0;
        return entries_[static_cast<std::size_t>(i) * cols_ + j];
    }

    long long degree() const {
        long long s = 0;
        for (long long e : entries_) s += e;
        return s;
    }

    DeltaMatrix transposed() const {
        IntGrid g(cols_, std::vector<long long>(rows_, 0));
        for (int i = 0; i < rows_; ++i)
            for (int j = 0; j < cols_; ++j) g[j][i] = at(i, j);
        return from_rows(g);
    }

    IntGrid to_grid() const {
        IntGrid g(rows_, std::vector<long long>(cols_, 0));
        for (int i = 0; i < rows_; ++i)
            for (int j = 0; j < cols_; ++j) g[i][j] = at(i, j);
        return g;
    }

    friend bool operator==(const DeltaMatrix&, const DeltaMatrix&) = default;

private:
    int rows_ = 0;
    int cols_ = 0;
    std::vector<long long> entries_;
};

inline DeltaMatrix transpose(const DeltaMatrix& d) { return d.transposed(); }

// Query view on the full Hilbert matrix: m(i,j) is the partial sum of the
// first difference over [0,i]x[0,j], clamped to the support rectangle, so
// it is defined for every (i,j) and constant equal to deg X out there.
class HilbertMatrix {
public:
    explicit HilbertMatrix(DeltaMatrix d) : delta_(std::move(d)) {
        int r = delta_.rows(), c = delta_.cols();
        prefix_.assign(r, std::vector<long long>(c, 0));
        for (int i = 0; i < r; ++i)
            for (int j = 0; j < c; ++j)
                prefix_[i][j] = delta_.at(i, j)
                    + (i ? prefix_[i - 1][j] : 0)
                    + (j ? prefix_[i][j - 1] : 0)
                    - (i && j ? prefix_[i - 1][j - 1] : 0);
    }

    long long operator()(long long i, long long j) const {
        if (i < 0 || j < 0 || delta_.empty()) return 0;
        i = std::min<long long>(i, delta_.rows() - 1);
        j = std::min<long long>(j, delta_.cols() - 1);
        return prefix_[i][j];
    }

    const DeltaMatrix& delta() const { return delta_; }

private:
    DeltaMatrix delta_;
    std::vector<std::vector<long long>> prefix_;
};

inline long long hilbert_from_delta(const DeltaMatrix& d, long long i, long long j) {
    return HilbertMatrix(d)(i, j);
}

// Inverse direction: difference a raw grid of Hilbert values. The grid
// must extend one step past the support in each direction; the guard row
// and column must repeat their predecessors, otherwise the support was
// cut off and the result would be wrong.
inline DeltaMatrix delta_from_hilbert(const IntGrid& m) {
    std::size_t rows = m.size();
    std::size_t cols = rows ? m[0].size() : 0;
    for (const auto& r : m)
        if (r.size() != cols) throw ParseError("ragged Hilbert grid");
    if (rows < 2 || cols < 2)
        throw StabilizationNotReached("Hilbert grid needs a guard row and column");
    for (std::size_t j = 0; j < cols; ++j)
        if (m[rows - 1][j] != m[rows - 2][j])
            throw StabilizationNotReached("guard row not stabilized");
    for (std::size_t i = 0; i < rows; ++i)
        if (m[i][cols - 1] != m[i][cols - 2])
            throw StabilizationNotReached("guard column not stabilized");
    auto val = [&](long long i, long long j) -> long long {
        if (i < 0 || j < 0) return 0;
        return m[i][j];
    };
    IntGrid c(rows, std::vector<long long>(cols, 0));
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j)
            c[i][j] = val(i, j) - val((long long)i - 1, j)
                    - val(i, (long long)j - 1) + val((long long)i - 1, (long long)j - 1);
    return DeltaMatrix::from_rows(c);
}

// Directional differences a(i,j) = m(i,j) - m(i,j-1) and
// b(i,j) = m(i,j) - m(i-1,j) on the support plus one guard line.
struct DirectionalDifference {
    Direction direction;
    IntGrid values;
};

inline DirectionalDifference directional_difference(const DeltaMatrix& d,
                                                    Direction dir) {
    int r = d.rows(), c = d.cols();
    DirectionalDifference out{dir, {}};
    if (dir == Direction::Row) {
        // a(i,j) = sum_{h<=i} delta(h,j); guard column j = c.
        out.values.assign(r, std::vector<long long>(c + 1, 0));
        for (int j = 0; j < c; ++j) {
            long long acc = 0;
            for (int i = 0; i < r; ++i) {
                acc += d.at(i, j);
                out.values[i][j] = acc;
            }
        }
    } else {
        // b(i,j) = sum_{k<=j} delta(i,k); guard row i = r.
        out.values.assign(r + 1, std::vector<long long>(c, 0));
        for (int i = 0; i < r; ++i) {
            long long acc = 0;
            for (int j = 0; j < c; ++j) {
                acc += d.at(i, j);
                out.values[i][j] = acc;
            }
        }
    }
    return out;
}

// i(j): least t with m(t,j) = m(t+1,j).
inline long long row_stabilization(const HilbertMatrix& m, long long j) {
    long long t = 0;
    while (m(t, j) != m(t + 1, j)) ++t;
    return t;
}

// j(i): least t with m(i,t) = m(i,t+1).
inline long long col_stabilization(const HilbertMatrix& m, long long i) {
    long long t = 0;
    while (m(i, t) != m(i, t + 1)) ++t;
    return t;
}

// Structural constraints every first difference of a reduced subscheme
// satisfies: entries bounded by 1; non-positive entries propagate to the
// dominated quadrant; partial row/column sums non-negative and
// non-increasing in the other index. Checked on the support plus one
// guard index each way. Failures are reported, not thrown.
struct CheckReport {
    bool pass = true;
    int violated = 0;                       // first failing condition, 1..3
    std::array<long long, 2> where{0, 0};   // failing cell
    std::array<long long, 2> origin{0, 0};  // condition 2: earlier cell
    std::string message;
};

inline CheckReport check_first_difference(const DeltaMatrix& d) {
    CheckReport rep;
    const long long R = d.rows(), C = d.cols();
    // 1: entries <= 1 (finite support holds by storage).
    for (long long i = 0; i < R; ++i)
        for (long long j = 0; j < C; ++j)
            if (d.at(i, j) > 1) {
                rep.pass = false;
                rep.violated = 1;
                rep.where = {i, j};
                std::ostringstream os;
                os << "entry (" << i << "," << j << ") = " << d.at(i, j) << " exceeds 1";
                rep.message = os.str();
                return rep;
            }
    // 2: once an entry is <= 0, everything to its lower right stays <= 0.
    {
        // np[i][j] = row-major first non-positive cell dominating-below (i,j).
        std::vector<std::vector<std::array<long long, 2>>> np(
            R, std::vector<std::array<long long, 2>>(C, {-1, -1}));
        auto better = [](std::array<long long, 2> a, std::array<long long, 2> b) {
            if (a[0] < 0) return b;
            if (b[0] < 0) return a;
            return a < b ? a : b;
        };
        for (long long i = 0; i < R; ++i)
            for (long long j = 0; j < C; ++j) {
                std::array<long long, 2> cand{-1, -1};
                if (i > 0) cand = better(cand, np[i - 1][j]);
                if (j > 0) cand = better(cand, np[i][j - 1]);
                if (d.at(i, j) > 0 && cand[0] >= 0) {
                    rep.pass = false;
                    rep.violated = 2;
                    rep.origin = cand;
                    rep.where = {i, j};
                    std::ostringstream os;
                    os << "entry (" << cand[0] << "," << cand[1] << ") <= 0 but ("
                       << i << "," << j << ") = " << d.at(i, j) << " > 0";
                    rep.message = os.str();
                    return rep;
                }
                if (d.at(i, j) <= 0) cand = better(cand, {i, j});
                np[i][j] = cand;
            }
    }
    // 3: partial sums along rows (and transposed) are >= 0 and, from the
    // second line on, dominated by the previous line.
    auto row_ps = [&](long long i, long long j) {
        long long s = 0;
        for (long long t = 0; t <= j; ++t) s += d.at(i, t);
        return s;
    };
    auto col_ps = [&](long long i, long long j) {
        long long s = 0;
        for (long long t = 0; t <= i; ++t) s += d.at(t, j);
        return s;
    };
    for (long long i = 0; i <= R; ++i)
        for (long long j = 0; j <= C; ++j) {
            long long cur = row_ps(i, j);
            if (cur < 0 || (i >= 1 && cur > row_ps(i - 1, j))) {
                rep.pass = false;
                rep.violated = 3;
                rep.where = {i, j};
                std::ostringstream os;
                os << "row partial sum at (" << i << "," << j << ") = " << cur
                   << (cur < 0 ? " is negative" : " exceeds the row above");
                rep.message = os.str();
                return rep;
            }
            long long curc = col_ps(i, j);
            if (curc < 0 || (j >= 1 && curc > col_ps(i, j - 1))) {
                rep.pass = false;
                rep.violated = 3;
                rep.where = {i, j};
                std::ostringstream os;
                os << "column partial sum at (" << i << "," << j << ") = " << curc
                   << (curc < 0 ? " is negative" : " exceeds the column to the left");
                rep.message = os.str();
                return rep;
            }
        }
    rep.message = "ok";
    return rep;
}

// Line count histograms recovered from the first difference alone: the
// number of (1,0)-lines meeting the scheme in exactly j+1 points is the
// difference of consecutive column sums, and symmetrically for rows.
struct ProfileReport {
    std::map<long long, long long> row_profile;  // points-per-(1,0)-line -> count
    std::map<long long, long long> col_profile;  // points-per-(0,1)-line -> count

    friend bool operator==(const ProfileReport&, const ProfileReport&) = default;
};

inline ProfileReport line_profiles(const DeltaMatrix& d) {
    ProfileReport rep;
    const long long R = d.rows(), C = d.cols();
    std::vector<long long> colsum(C + 1, 0), rowsum(R + 1, 0);
    for (long long j = 0; j < C; ++j)
        for (long long i = 0; i < R; ++i) colsum[j] += d.at(i, j);
    for (long long i = 0; i < R; ++i)
        for (long long j = 0; j < C; ++j) rowsum[i] += d.at(i, j);
    for (long long j = 0; j < C; ++j) {
        long long n = colsum[j] - colsum[j + 1];
        if (n < 0)
            throw NegativeCount("negative count of lines with " +
                                std::to_string(j + 1) + " points");
        if (n > 0) rep.row_profile[j + 1] = n;
    }
    for (long long i = 0; i < R; ++i) {
        long long n = rowsum[i] - rowsum[i + 1];
        if (n < 0)
            throw NegativeCount("negative count of lines with " +
                                std::to_string(i + 1) + " points");
        if (n > 0) rep.col_profile[i + 1] = n;
    }
    return rep;
}

} // namespace quadric
