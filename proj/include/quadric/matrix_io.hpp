#pragma once

#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "quadric/bigraded.hpp"
#include "quadric/errors.hpp"

namespace quadric {

// Shared ASCII grid format: one matrix row per line, entries right-aligned
// to a common width, single space between columns. Emission is canonical,
// so emit(parse(s)) == s for emitted text.
inline std::string grid_to_ascii(const IntGrid& g) {
    std::size_t width = 1;
    for (const auto& row : g)
        for (long long v : row)
            width = std::max(width, std::to_string(v).size());
    std::ostringstream os;
    for (const auto& row : g) {
        for (std::size_t j = 0; j < row.size(); ++j) {
            std::string s = std::to_string(row[j]);
            if (j) os << ' ';
            os << std::string(width - s.size(), ' ') << s;
        }
        os << '\n';
    }
    return os.str();
}

inline IntGrid grid_from_ascii(const std::string& text) {
    IntGrid g;
    std::istringstream is(text);
    std::string line;
    while (std::getline(is, line)) {
        std::istringstream ls(line);
        std::vector<long long> row;
        std::string tok;
        while (ls >> tok) {
            try {
                std::size_t used = 0;
                long long v = std::stoll(tok, &used);
                if (used != tok.size()) throw std::invalid_argument(tok);
                row.push_back(v);
            } catch (const std::exception&) {
                throw ParseError("bad matrix entry: " + tok);
            }
        }
        if (!row.empty()) g.push_back(std::move(row));
    }
    if (g.empty()) throw ParseError("empty matrix block");
    std::size_t cols = g[0].size();
    for (const auto& r : g)
        if (r.size() != cols) throw ParseError("ragged matrix block");
    return g;
}

inline std::string to_ascii(const DeltaMatrix& d) {
    return grid_to_ascii(d.to_grid());
}

inline DeltaMatrix delta_from_ascii(const std::string& text) {
    return DeltaMatrix::from_rows(grid_from_ascii(text));
}

inline std::string to_json(const DeltaMatrix& d) {
    nlohmann::json j;
    j["rows"] = d.rows();
    j["cols"] = d.cols();
    j["delta"] = d.to_grid();
    return j.dump();
}

inline DeltaMatrix delta_from_json(const std::string& text) {
    try {
        nlohmann::json j = nlohmann::json::parse(text);
        IntGrid g = j.at("delta").get<IntGrid>();
        DeltaMatrix d = DeltaMatrix::from_rows(g);
        if (j.at("rows").get<int>() != d.rows() ||
            j.at("cols").get<int>() != d.cols())
            throw ParseError("rows/cols fields disagree with the delta array");
        return d;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("bad matrix json: ") + e.what());
    }
}

} // namespace quadric
