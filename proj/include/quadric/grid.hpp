#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "quadric/bigraded.hpp"
#include "quadric/errors.hpp"
#include "quadric/exact.hpp"
#include "quadric/rng.hpp"

namespace quadric {

// Fresh coordinates are drawn as distinct integers from [1, 2^20]; the
// same pool serves the rational and the prime-field oracle paths, so
// cross-checks compare identical configurations.
inline constexpr std::uint64_t kCoordinatePool = 1u << 20;

// A reduced set of points supported on a grid of (1,0)-lines (rows, each
// pinned to a first-factor coordinate) and (0,1)-lines (columns, second
// factor). Every listed line carries at least one point.
struct GridConfig {
    std::vector<Rat> row_coords;
    std::vector<Rat> col_coords;
    std::vector<std::pair<int, int>> points;  // (row, col), sorted, unique
    std::optional<std::uint64_t> prime;       // file header, if present
    std::optional<std::uint64_t> seed;
    bool pinned_coords = false;               // file listed explicit coordinates

    int rows() const { return static_cast<int>(row_coords.size()); }
    int cols() const { return static_cast<int>(col_coords.size()); }
    long long degree() const { return static_cast<long long>(points.size()); }

    bool occupied(int r, int c) const {
        return std::binary_search(points.begin(), points.end(),
                                  std::make_pair(r, c));
    }

    std::vector<long long> row_counts() const {
        std::vector<long long> n(rows(), 0);
        for (auto [r, c] : points) n[r]++;
        return n;
    }

    std::vector<long long> col_counts() const {
        std::vector<long long> n(cols(), 0);
        for (auto [r, c] : points) n[c]++;
        return n;
    }

    void normalize() { std::sort(points.begin(), points.end()); }

    void validate() const {
        if (rows() == 0 || cols() == 0 || points.empty())
            throw ParseError("configuration has no points");
        for (auto [r, c] : points)
            if (r < 0 || r >= rows() || c < 0 || c >= cols())
                throw ParseError("point index out of range");
        for (std::size_t k = 1; k < points.size(); ++k)
            if (points[k] == points[k - 1])
                throw ParseError("duplicate point");
        for (std::size_t i = 0; i < row_coords.size(); ++i)
            for (std::size_t k = i + 1; k < row_coords.size(); ++k)
                if (row_coords[i] == row_coords[k])
                    throw ParseError("duplicate row coordinate");
        for (std::size_t i = 0; i < col_coords.size(); ++i)
            for (std::size_t k = i + 1; k < col_coords.size(); ++k)
                if (col_coords[i] == col_coords[k])
                    throw ParseError("duplicate column coordinate");
        auto rc = row_counts();
        auto cc = col_counts();
        if (std::find(rc.begin(), rc.end(), 0) != rc.end())
            throw ParseError("a (1,0)-line carries no point");
        if (std::find(cc.begin(), cc.end(), 0) != cc.end())
            throw ParseError("a (0,1)-line carries no point");
    }
};

// Swap the two factors: rows become columns.
inline GridConfig swap_factors(const GridConfig& cfg) {
    GridConfig out;
    out.row_coords = cfg.col_coords;
    out.col_coords = cfg.row_coords;
    out.prime = cfg.prime;
    out.seed = cfg.seed;
    out.pinned_coords = cfg.pinned_coords;
    for (auto [r, c] : cfg.points) out.points.emplace_back(c, r);
    out.normalize();
    return out;
}

namespace detail {

inline Rat draw_fresh_coord(Rng& rng, const std::vector<Rat>& taken,
                            std::uint64_t pool = kCoordinatePool) {
    for (int attempt = 0; attempt < 256; ++attempt) {
        Rat cand(static_cast<unsigned long>(rng.below(pool) + 1));
        if (std::find(taken.begin(), taken.end(), cand) == taken.end())
            return cand;
    }
    throw CoordinateCollision("could not draw a fresh line coordinate");
}

} // namespace detail

// Seeded random configuration: distinct coordinates, Bernoulli incidence
// at the given density, then a repair pass so every line is occupied.
inline GridConfig random_config(int rows, int cols, double density,
                                std::uint64_t seed) {
    if (rows < 1 || cols < 1) throw InfeasibleDensity("grid must be at least 1x1");
    if (!(density > 0.0) || density > 1.0)
        throw InfeasibleDensity("density must lie in (0,1]");
    Rng rng(seed);
    GridConfig cfg;
    cfg.seed = seed;
    for (int i = 0; i < rows; ++i)
        cfg.row_coords.push_back(detail::draw_fresh_coord(rng, cfg.row_coords));
    for (int j = 0; j < cols; ++j)
        cfg.col_coords.push_back(detail::draw_fresh_coord(rng, cfg.col_coords));
    std::set<std::pair<int, int>> pts;
    for (int r = 0; r < rows; ++r)
        for (int c = 0; c < cols; ++c)
            if (rng.chance(density)) pts.insert({r, c});
    for (int r = 0; r < rows; ++r) {
        bool hit = false;
        for (int c = 0; c < cols && !hit; ++c) hit = pts.count({r, c}) > 0;
        if (!hit) pts.insert({r, static_cast<int>(rng.below(cols))});
    }
    for (int c = 0; c < cols; ++c) {
        bool hit = false;
        for (int r = 0; r < rows && !hit; ++r) hit = pts.count({r, c}) > 0;
        if (!hit) pts.insert({static_cast<int>(rng.below(rows)), c});
    }
    cfg.points.assign(pts.begin(), pts.end());
    cfg.validate();
    return cfg;
}

// Attach one fresh disjoint line plus `extra_lines` fresh lines of the
// other kind. For Direction::Row the new (1,0)-line receives a point on
// every existing column listed in `hits` and on each of the new columns.
// The new line must end up occupied: hits may be empty only when
// extra_lines >= 1.
inline GridConfig extend_with_line(const GridConfig& cfg, Direction dir,
                                   const std::vector<int>& hits,
                                   int extra_lines, std::uint64_t seed) {
    if (dir == Direction::Col)
        return swap_factors(
            extend_with_line(swap_factors(cfg), Direction::Row, hits,
                             extra_lines, seed));
    if (extra_lines < 0) throw ParseError("negative number of new lines");
    if (hits.empty() && extra_lines == 0)
        throw ParseError("new line would carry no point");
    std::set<int> hitset(hits.begin(), hits.end());
    if (hitset.size() != hits.size()) throw ParseError("duplicate hit index");
    for (int h : hits)
        if (h < 0 || h >= cfg.cols())
            throw ParseError("hit index out of range");
    Rng rng(seed);
    GridConfig out = cfg;
    out.row_coords.push_back(detail::draw_fresh_coord(rng, out.row_coords));
    int new_row = out.rows() - 1;
    for (int h : hits) out.points.emplace_back(new_row, h);
    for (int k = 0; k < extra_lines; ++k) {
        out.col_coords.push_back(detail::draw_fresh_coord(rng, out.col_coords));
        out.points.emplace_back(new_row, out.cols() - 1);
    }
    out.normalize();
    out.validate();
    return out;
}

// --- configuration file ----------------------------------------------
//
//   # optional comment lines
//   prime: 2305843009213693951
//   seed: 7
//   grid:
//   X X .
//   . X X
//   rowcoords: 3 5
//   colcoords: 1/2 4 9
//
// The grid block runs until the first line that is not made of 'X', '.'
// and spaces. Top row is R_0, leftmost column is C_0.

namespace detail {

inline bool is_grid_line(const std::string& line) {
    bool seen = false;
    for (char ch : line) {
        if (ch == 'X' || ch == '.') seen = true;
        else if (ch != ' ' && ch != '\t' && ch != '\r') return false;
    }
    return seen;
}

inline std::vector<std::string> split_ws(const std::string& s) {
    std::istringstream is(s);
    std::vector<std::string> out;
    std::string tok;
    while (is >> tok) out.push_back(tok);
    return out;
}

inline std::string strip(const std::string& s) {
    std::size_t a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    std::size_t b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

} // namespace detail

inline GridConfig parse_config(const std::string& text) {
    GridConfig cfg;
    std::vector<std::string> grid_rows;
    std::optional<std::vector<Rat>> rowcoords, colcoords;
    std::istringstream is(text);
    std::string raw;
    bool in_grid = false;
    while (std::getline(is, raw)) {
        std::string line = detail::strip(raw);
        // Blank lines and comments are transparent, also inside a grid block.
        if (line.empty() || line[0] == '#') continue;
        if (in_grid && detail::is_grid_line(line)) {
            std::string row;
            for (char ch : line)
                if (ch == 'X' || ch == '.') row.push_back(ch);
            grid_rows.push_back(row);
            continue;
        }
        in_grid = false;
        auto colon = line.find(':');
        if (colon == std::string::npos)
            throw ParseError("unrecognized line: " + line);
        std::string key = detail::strip(line.substr(0, colon));
        std::string val = detail::strip(line.substr(colon + 1));
        if (key == "grid") {
            if (!grid_rows.empty()) throw ParseError("second grid block");
            if (!val.empty()) throw ParseError("grid: takes no value");
            in_grid = true;
        } else if (key == "rowcoords" || key == "colcoords") {
            std::vector<Rat> coords;
            for (const auto& tok : detail::split_ws(val))
                coords.push_back(parse_rational(tok));
            (key == "rowcoords" ? rowcoords : colcoords) = std::move(coords);
        } else if (key == "prime") {
            try {
                cfg.prime = std::stoull(val);
            } catch (const std::exception&) {
                throw ParseError("bad prime: " + val);
            }
        } else if (key == "seed") {
            try {
                cfg.seed = std::stoull(val);
            } catch (const std::exception&) {
                throw ParseError("bad seed: " + val);
            }
        } else {
            throw ParseError("unknown key: " + key);
        }
    }
    if (grid_rows.empty()) throw ParseError("missing grid block");
    std::size_t width = grid_rows[0].size();
    for (const auto& row : grid_rows)
        if (row.size() != width) throw ParseError("ragged grid block");
    int rows = static_cast<int>(grid_rows.size());
    int cols = static_cast<int>(width);
    for (int r = 0; r < rows; ++r)
        for (int c = 0; c < cols; ++c)
            if (grid_rows[r][c] == 'X') cfg.points.emplace_back(r, c);
    // Pinned coordinates if given, otherwise drawn from the seed.
    Rng rng(cfg.seed.value_or(0));
    cfg.pinned_coords = rowcoords.has_value() || colcoords.has_value();
    if (rowcoords) {
        if (static_cast<int>(rowcoords->size()) != rows)
            throw ParseError("rowcoords count does not match the grid");
        cfg.row_coords = *rowcoords;
    } else {
        for (int i = 0; i < rows; ++i)
            cfg.row_coords.push_back(detail::draw_fresh_coord(rng, cfg.row_coords));
    }
    if (colcoords) {
        if (static_cast<int>(colcoords->size()) != cols)
            throw ParseError("colcoords count does not match the grid");
        cfg.col_coords = *colcoords;
    } else {
        for (int j = 0; j < cols; ++j)
            cfg.col_coords.push_back(detail::draw_fresh_coord(rng, cfg.col_coords));
    }
    cfg.normalize();
    cfg.validate();
    return cfg;
}

// Re-coordinatize from a seed, keeping the incidence. Used when the same
// file is evaluated under several seeds.
inline GridConfig with_seed(const GridConfig& cfg, std::uint64_t seed) {
    GridConfig out = cfg;
    out.seed = seed;
    Rng rng(seed);
    out.row_coords.clear();
    out.col_coords.clear();
    for (int i = 0; i < cfg.rows(); ++i)
        out.row_coords.push_back(detail::draw_fresh_coord(rng, out.row_coords));
    for (int j = 0; j < cfg.cols(); ++j)
        out.col_coords.push_back(detail::draw_fresh_coord(rng, out.col_coords));
    return out;
}

} // namespace quadric
