#pragma once

#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "quadric/acm.hpp"
#include "quadric/bigraded.hpp"
#include "quadric/engine.hpp"
#include "quadric/errors.hpp"
#include "quadric/grid.hpp"
#include "quadric/matrix_io.hpp"
#include "quadric/oracle.hpp"

namespace quadric {

// Replay scripts drive multi-step constructions: a base scheme (either a
// grid block, evaluated through the oracle, or an `acm profile:` line,
// expanded in closed form), then step lines, each optionally followed by
// an `expect:` matrix block for golden comparison.
//
//   acm profile: 5 5 4 3
//   expect:
//   1 1 1 1 1
//   1 1 1 1 1
//   1 1 1 1 0
//   1 1 1 0 0
//   step: add-row n=5 hit=5
//   ...

struct ReplayStep {
    StepSpec step;
    std::string source;
    std::optional<DeltaMatrix> expect;
};

struct ReplayScript {
    std::optional<GridConfig> base_grid;
    std::optional<StaircaseProfile> base_profile;
    std::optional<DeltaMatrix> base_expect;
    std::vector<ReplayStep> steps;
    std::optional<std::uint64_t> prime;
    std::optional<std::uint64_t> seed;
};

namespace detail {

inline bool is_numeric_row(const std::string& line) {
    std::istringstream is(line);
    std::string tok;
    bool any = false;
    while (is >> tok) {
        any = true;
        try {
            std::size_t used = 0;
            (void)std::stoll(tok, &used);
            if (used != tok.size()) return false;
        } catch (const std::exception&) {
            return false;
        }
    }
    return any;
}

} // namespace detail

inline ReplayScript parse_replay(const std::string& text) {
    ReplayScript script;
    std::vector<std::string> lines;
    {
        std::istringstream is(text);
        std::string raw;
        while (std::getline(is, raw)) lines.push_back(detail::strip(raw));
    }
    std::string config_text;
    bool have_grid = false;
    std::size_t idx = 0;
    auto read_matrix_block = [&]() -> DeltaMatrix {
        std::string block;
        while (idx < lines.size() && detail::is_numeric_row(lines[idx])) {
            block += lines[idx];
            block += '\n';
            ++idx;
        }
        if (block.empty()) throw ParseError("expect: without a matrix block");
        return delta_from_ascii(block);
    };
    while (idx < lines.size()) {
        const std::string line = lines[idx];
        if (line.empty() || line[0] == '#') { ++idx; continue; }
        auto colon = line.find(':');
        std::string key = colon == std::string::npos
                              ? std::string()
                              : detail::strip(line.substr(0, colon));
        if (key == "grid") {
            if (script.base_profile)
                throw ParseError("both grid and acm profile bases given");
            have_grid = true;
            config_text += "grid:\n";
            ++idx;
            while (idx < lines.size() &&
                   (detail::is_grid_line(lines[idx]) || lines[idx].empty() ||
                    lines[idx][0] == '#')) {
                if (detail::is_grid_line(lines[idx])) {
                    config_text += lines[idx];
                    config_text += '\n';
                }
                ++idx;
            }
        } else if (key == "acm profile") {
            if (have_grid)
                throw ParseError("both grid and acm profile bases given");
            if (script.base_profile) throw ParseError("second acm profile");
            std::vector<long long> counts;
            for (const auto& tok : detail::split_ws(line.substr(colon + 1))) {
                try {
                    counts.push_back(std::stoll(tok));
                } catch (const std::exception&) {
                    throw ParseError("bad profile entry: " + tok);
                }
            }
            script.base_profile = StaircaseProfile::from_rows(counts);
            ++idx;
        } else if (key == "rowcoords" || key == "colcoords") {
            config_text += line;
            config_text += '\n';
            ++idx;
        } else if (key == "prime" || key == "seed") {
            std::uint64_t v;
            try {
                v = std::stoull(detail::strip(line.substr(colon + 1)));
            } catch (const std::exception&) {
                throw ParseError("bad " + key + " value");
            }
            (key == "prime" ? script.prime : script.seed) = v;
            config_text += line;
            config_text += '\n';
            ++idx;
        } else if (key == "step") {
            ReplayStep st;
            st.source = detail::strip(line.substr(colon + 1));
            st.step = parse_step(st.source);
            script.steps.push_back(std::move(st));
            ++idx;
        } else if (key == "expect") {
            if (!detail::strip(line.substr(colon + 1)).empty())
                throw ParseError("expect: takes a matrix block on the next lines");
            ++idx;
            DeltaMatrix m = read_matrix_block();
            if (script.steps.empty()) {
                if (script.base_expect) throw ParseError("second base expect");
                script.base_expect = m;
            } else {
                if (script.steps.back().expect)
                    throw ParseError("second expect for one step");
                script.steps.back().expect = m;
            }
        } else {
            throw ParseError("unrecognized line: " + line);
        }
    }
    if (have_grid) {
        script.base_grid = parse_config(config_text);
    } else if (!script.base_profile) {
        throw ParseError("replay script has no base scheme");
    }
    return script;
}

struct ReplayStage {
    std::string label;
    DeltaMatrix delta;
    HypothesisVerdict verdict;
    bool verified = true;
    bool has_expect = false;
    bool expect_ok = true;
};

struct ReplayOutcome {
    std::vector<ReplayStage> stages;

    bool all_expects_ok() const {
        for (const auto& s : stages)
            if (s.has_expect && !s.expect_ok) return false;
        return true;
    }

    bool all_verified() const {
        for (const auto& s : stages)
            if (!s.verified) return false;
        return true;
    }
};

// Execute a script. Strict mode refuses (throws HypothesisNotMet) on the
// first step whose hypothesis fails; Predict mode keeps going and marks
// those stages unverified.
inline ReplayOutcome run_replay(const ReplayScript& script, AddMode mode,
                                const OracleOptions& oracle_opt,
                                std::uint64_t seed) {
    ReplayOutcome out;
    DeltaMatrix current;
    std::vector<long long> row_counts, col_counts;
    if (script.base_grid) {
        GridConfig cfg = *script.base_grid;
        if (!cfg.pinned_coords && seed != cfg.seed.value_or(0))
            cfg = with_seed(cfg, seed);
        OracleOptions opt = oracle_opt;
        if (script.prime) opt.prime = *script.prime;
        current = hilbert_matrix(cfg, opt);
        row_counts = cfg.row_counts();
        col_counts = cfg.col_counts();
    } else {
        current = delta_acm(*script.base_profile);
        row_counts = script.base_profile->row_counts;
        col_counts = script.base_profile->col_counts;
    }
    ReplayStage base{"base", current, {}, true, script.base_expect.has_value(),
                     true};
    if (script.base_expect) base.expect_ok = (*script.base_expect == current);
    out.stages.push_back(std::move(base));
    for (const auto& st : script.steps) {
        const bool row_step = st.step.direction == Direction::Row;
        LineAdditionSpec spec =
            spec_from_step(st.step, row_step ? col_counts : row_counts);
        AdditionResult res = row_step ? add_partial_row(current, spec, mode)
                                      : add_partial_col(current, spec, mode);
        current = res.delta;
        long long n = st.step.target_index;
        if (!st.step.hits.empty()) {
            if (row_step) {
                if (static_cast<long long>(col_counts.size()) < n + 1)
                    col_counts.resize(n + 1, 0);
                for (long long h : st.step.hits) col_counts[h]++;
                row_counts.push_back(static_cast<long long>(st.step.hits.size()));
            } else {
                if (static_cast<long long>(row_counts.size()) < n + 1)
                    row_counts.resize(n + 1, 0);
                for (long long h : st.step.hits) row_counts[h]++;
                col_counts.push_back(static_cast<long long>(st.step.hits.size()));
            }
        }
        ReplayStage stage{st.source, current, res.verdict, res.verified,
                          st.expect.has_value(), true};
        if (st.expect) stage.expect_ok = (*st.expect == current);
        out.stages.push_back(std::move(stage));
    }
    return out;
}

} // namespace quadric
