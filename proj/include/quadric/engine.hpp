#pragma once

#include <algorithm>
#include <cassert>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "quadric/bigraded.hpp"
#include "quadric/errors.hpp"

namespace quadric {

// One line-addition instance, coordinate-free: the engine sees only the
// first difference of X and the claimed point counts on the excluded
// lines. Row direction adds a new (1,0)-line meeting the columns
// 0..target_index except the excluded ones; Col is the mirror image.
struct LineAdditionSpec {
    Direction direction = Direction::Row;
    long long target_index = 0;                          // n (Row) or m (Col)
    std::vector<std::pair<long long, long long>> excluded;  // (line index, count)

    long long exclusions() const { return static_cast<long long>(excluded.size()); }

    static LineAdditionSpec make(Direction dir, long long target,
                                 std::vector<std::pair<long long, long long>> exc) {
        LineAdditionSpec s;
        s.direction = dir;
        s.target_index = target;
        s.excluded = std::move(exc);
        // Ties keep index order; only the count order matters downstream.
        std::stable_sort(s.excluded.begin(), s.excluded.end(),
                         [](const auto& a, const auto& b) {
                             return a.second < b.second;
                         });
        std::set<long long> seen;
        for (auto [idx, cnt] : s.excluded) {
            if (idx < 0 || idx > target)
                throw ParseError("excluded line index out of range");
            if (!seen.insert(idx).second)
                throw ParseError("excluded line listed twice");
            if (cnt < 1) throw ParseError("excluded line must carry a point");
        }
        return s;
    }
};

// Cells where the new first difference drops by one against the plain
// shift: the k-th smallest excluded count pairs with the k-th column from
// the right end of the new support, so the cells are pairwise distinct.
struct ExceptionSet {
    std::vector<std::pair<long long, long long>> cells;

    friend bool operator==(const ExceptionSet&, const ExceptionSet&) = default;
};

inline ExceptionSet exception_set(const LineAdditionSpec& spec) {
    ExceptionSet t;
    long long n = spec.target_index;
    long long k = 1;
    for (auto [idx, cnt] : spec.excluded) {
        (void)idx;
        if (spec.direction == Direction::Row)
            t.cells.emplace_back(cnt, n - k + 1);
        else
            t.cells.emplace_back(n - k + 1, cnt);
        ++k;
    }
    return t;
}

enum class Hypothesis { Cond1, Cond2, Cond3, NotSatisfied };

struct HypothesisVerdict {
    Hypothesis kind = Hypothesis::Cond1;
    // Witness for NotSatisfied: delta(i, j) = value != 0, found while
    // checking exclusion k.
    long long k = 0, i = 0, j = 0;
    long long value = 0;

    bool satisfied() const { return kind != Hypothesis::NotSatisfied; }
};

inline const char* to_string(Hypothesis h) {
    switch (h) {
        case Hypothesis::Cond1: return "single exclusion or none";
        case Hypothesis::Cond2: return "distinct top counts, vanishing tail";
        case Hypothesis::Cond3: return "tied top counts, vanishing tail";
        default: return "not satisfied";
    }
}

struct HypothesisNotMet : Error {
    HypothesisVerdict verdict;
    explicit HypothesisNotMet(const HypothesisVerdict& v)
        : Error(describe(v)), verdict(v) {}

    static std::string describe(const HypothesisVerdict& v) {
        std::ostringstream os;
        os << "hypothesis not met: delta(" << v.i << "," << v.j
           << ") = " << v.value << " != 0 (exclusion " << v.k << ")";
        return os.str();
    }
};

// Hypothesis test. With r exclusions of counts q_1 <= ... <= q_r against
// target n, the single-exclusion case always qualifies; otherwise every
// checked exclusion k needs delta(i, n-k+1) = 0 for all i >= q_k, where k
// runs to r-1 when q_{r-1} < q_r and to r when the top counts tie.
inline HypothesisVerdict hypothesis_holds(const DeltaMatrix& d,
                                          const LineAdditionSpec& spec) {
    if (spec.direction == Direction::Col) {
        LineAdditionSpec mirrored = spec;
        mirrored.direction = Direction::Row;
        HypothesisVerdict v = hypothesis_holds(d.transposed(), mirrored);
        std::swap(v.i, v.j);
        return v;
    }
    long long r = spec.exclusions();
    if (r <= 1) return {Hypothesis::Cond1, 0, 0, 0, 0};
    bool tied = spec.excluded[r - 2].second == spec.excluded[r - 1].second;
    long long upto = tied ? r : r - 1;
    long long n = spec.target_index;
    for (long long k = 1; k <= upto; ++k) {
        long long q = spec.excluded[k - 1].second;
        long long j = n - k + 1;
        for (long long i = q; i < d.rows(); ++i)
            if (d.at(i, j) != 0)
                return {Hypothesis::NotSatisfied, k, i, j, d.at(i, j)};
    }
    return {tied ? Hypothesis::Cond3 : Hypothesis::Cond2, 0, 0, 0, 0};
}

// Numeric shortcut: enough slack between the target index and the old
// support bound makes the vanishing automatic, because the checked
// columns fall outside the support entirely.
inline bool sufficient_condition(const DeltaMatrix& d,
                                 const LineAdditionSpec& spec) {
    long long r = spec.exclusions();
    if (r <= 1) return true;
    long long bound = (spec.direction == Direction::Row ? d.cols() : d.rows()) - 1;
    long long n = spec.target_index;
    bool tied = spec.excluded[r - 2].second == spec.excluded[r - 1].second;
    return tied ? n >= bound + r : n >= bound + r - 1;
}

// Full-line additions need no hypothesis: the new first difference is a
// row of ones on top of the old one shifted down.
inline DeltaMatrix add_full_row(const DeltaMatrix& d, long long n) {
    if (n < d.cols() - 1)
        throw IndexTooSmall("target index " + std::to_string(n) +
                            " is below the column support bound " +
                            std::to_string(d.cols() - 1));
    IntGrid g(d.rows() + 1, std::vector<long long>(n + 1, 0));
    for (long long j = 0; j <= n; ++j) g[0][j] = 1;
    for (int i = 0; i < d.rows(); ++i)
        for (int j = 0; j < d.cols(); ++j) g[i + 1][j] = d.at(i, j);
    return DeltaMatrix::from_rows(g);
}

inline DeltaMatrix add_full_col(const DeltaMatrix& d, long long m) {
    return add_full_row(d.transposed(), m).transposed();
}

enum class AddMode { Strict, Predict };

struct AdditionResult {
    DeltaMatrix delta;
    ExceptionSet exceptions;
    HypothesisVerdict verdict;
    bool verified = false;  // Predict results with a failed hypothesis stay unverified
};

// Partial-line addition: shift rows down, put ones on top, subtract one
// at each exception cell. A subtraction may land outside the stored
// support of d, where the shifted value is 0 and the result entry -1.
inline AdditionResult add_partial_row(const DeltaMatrix& d,
                                      const LineAdditionSpec& spec,
                                      AddMode mode) {
    if (spec.direction != Direction::Row)
        throw ParseError("row addition given a column spec");
    long long n = spec.target_index;
    if (n < d.cols() - 1)
        throw IndexTooSmall("target index " + std::to_string(n) +
                            " is below the column support bound " +
                            std::to_string(d.cols() - 1));
    for (auto [idx, cnt] : spec.excluded) {
        if (idx >= d.cols())
            throw ParseError("excluded line index beyond the support");
        if (cnt > d.rows())
            throw ParseError("claimed point count exceeds the line budget");
    }
    HypothesisVerdict verdict = hypothesis_holds(d, spec);
    if (mode == AddMode::Strict && !verdict.satisfied())
        throw HypothesisNotMet(verdict);
    ExceptionSet t = exception_set(spec);
    IntGrid g(d.rows() + 1, std::vector<long long>(n + 1, 0));
    for (long long j = 0; j <= n; ++j) g[0][j] = 1;
    for (int i = 0; i < d.rows(); ++i)
        for (int j = 0; j < d.cols(); ++j) g[i + 1][j] = d.at(i, j);
    std::set<std::pair<long long, long long>> seen;
    for (auto [ti, tj] : t.cells) {
        assert(seen.insert({ti, tj}).second);
        assert(ti >= 1 && ti <= d.rows() && tj >= 0 && tj <= n);
        g[ti][tj] -= 1;
    }
    return {DeltaMatrix::from_rows(g), std::move(t), verdict,
            verdict.satisfied()};
}

inline AdditionResult add_partial_col(const DeltaMatrix& d,
                                      const LineAdditionSpec& spec,
                                      AddMode mode) {
    if (spec.direction != Direction::Col)
        throw ParseError("column addition given a row spec");
    LineAdditionSpec mirrored = spec;
    mirrored.direction = Direction::Row;
    AdditionResult res;
    try {
        res = add_partial_row(d.transposed(), mirrored, mode);
    } catch (const HypothesisNotMet& e) {
        HypothesisVerdict v = e.verdict;
        std::swap(v.i, v.j);
        throw HypothesisNotMet(v);
    }
    ExceptionSet t;
    for (auto [i, j] : res.exceptions.cells) t.cells.emplace_back(j, i);
    HypothesisVerdict v = res.verdict;
    std::swap(v.i, v.j);
    return {res.delta.transposed(), std::move(t), v, res.verified};
}

// --- step line syntax ---------------------------------------------------
//
//   add-row n=<int> hit=<comma separated indices>
//   add-col m=<int> hit=<...>            (n= accepted for both)
//
// `hit` lists the lines of the other family the new line meets, in the
// labeling 0..n; indices past the old support denote fresh lines and are
// mandatory members of the hit set.

struct StepSpec {
    Direction direction = Direction::Row;
    long long target_index = 0;
    std::vector<long long> hits;
};

inline StepSpec parse_step(const std::string& text) {
    std::istringstream is(text);
    std::string word;
    if (!(is >> word)) throw ParseError("empty step");
    StepSpec s;
    if (word == "add-row") s.direction = Direction::Row;
    else if (word == "add-col") s.direction = Direction::Col;
    else throw ParseError("unknown step: " + word);
    bool have_n = false, have_hit = false;
    while (is >> word) {
        auto eq = word.find('=');
        if (eq == std::string::npos) throw ParseError("bad step token: " + word);
        std::string key = word.substr(0, eq);
        std::string val = word.substr(eq + 1);
        try {
            if (key == "n" || key == "m") {
                s.target_index = std::stoll(val);
                have_n = true;
            } else if (key == "hit") {
                std::istringstream vs(val);
                std::string item;
                while (std::getline(vs, item, ','))
                    if (!item.empty()) s.hits.push_back(std::stoll(item));
                have_hit = true;
            } else {
                throw ParseError("unknown step key: " + key);
            }
        } catch (const ParseError&) {
            throw;
        } catch (const std::exception&) {
            throw ParseError("bad step value: " + word);
        }
    }
    if (!have_n) throw ParseError("step is missing n=");
    if (!have_hit) throw ParseError("step is missing hit=");
    std::sort(s.hits.begin(), s.hits.end());
    return s;
}

// Turn a step into a line-addition instance against the current incidence:
// `counts` holds the per-line point counts of the crossed family (columns
// for add-row). Excluded lines are the old ones the step does not hit.
inline LineAdditionSpec spec_from_step(const StepSpec& step,
                                       const std::vector<long long>& counts) {
    long long bound = static_cast<long long>(counts.size()) - 1;
    long long n = step.target_index;
    if (n < bound)
        throw IndexTooSmall("step target below the current support bound");
    std::set<long long> hit(step.hits.begin(), step.hits.end());
    if (hit.size() != step.hits.size())
        throw ParseError("duplicate hit index");
    for (long long h : hit)
        if (h < 0 || h > n) throw ParseError("hit index out of range");
    for (long long h = bound + 1; h <= n; ++h)
        if (!hit.count(h))
            throw ParseError("fresh line " + std::to_string(h) +
                             " must be in the hit set");
    std::vector<std::pair<long long, long long>> excluded;
    for (long long idx = 0; idx <= bound; ++idx)
        if (!hit.count(idx)) excluded.emplace_back(idx, counts[idx]);
    return LineAdditionSpec::make(step.direction, n, std::move(excluded));
}

} // namespace quadric
