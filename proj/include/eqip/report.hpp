#ifndef EQIP_REPORT_HPP
#define EQIP_REPORT_HPP

#include <cstdint>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "eqip/instance.hpp"
#include "eqip/solve.hpp"
#include "eqip/vector_equality.hpp"

namespace eqip {

constexpr const char* version_string = "0.3.1";

/// Everything needed to reproduce a reported number.
struct ResultReport {
    SolveOutcome outcome;
    Algorithm algorithm = Algorithm::sort2;
    Goal goal = Goal::optimize;
    std::string mode;
    std::size_t n = 0;
    std::size_t m = 0;
    std::string input;
    std::vector<std::string> provenance; // comment lines carried by the instance file
};

inline nlohmann::json stats_json(const SolveStats& s) {
    return {
        {"table_sizes", s.table_sizes},
        {"table_entries_built", s.table_entries_built},
        {"comparisons", s.comparisons},
        {"peak_live_entries", s.peak_live_entries},
        {"peak_queue_entries", s.peak_queue_entries},
        {"match_blocks", s.match_blocks},
        {"recursion_nodes", s.recursion_nodes},
        {"early_exit", s.early_exit},
        {"witness_verified", s.witness_verified},
        {"wall_seconds", s.wall_seconds},
    };
}

/// Machine-readable form. Scalars and counts are strings so exact values survive.
inline nlohmann::json report_json(const ResultReport& r) {
    const auto& o = r.outcome;
    nlohmann::json j;
    j["status"] = to_string(o.status);
    j["objective"] = o.objective ? nlohmann::json(o.objective->str()) : nlohmann::json(nullptr);
    j["witness"] = o.witness ? nlohmann::json(o.witness->str()) : nlohmann::json(nullptr);
    j["count"] = o.solution_count ? nlohmann::json(o.solution_count->get_str()) : nlohmann::json(nullptr);
    if (r.goal == Goal::enumerate) {
        std::vector<std::string> sols;
        for (const auto& x : o.solutions) sols.push_back(x.str());
        j["solutions"] = sols;
    }
    j["stats"] = stats_json(o.stats);
    j["solver"] = to_string(r.algorithm);
    j["goal"] = to_string(r.goal);
    j["mode"] = r.mode;
    j["instance"] = {{"n", r.n}, {"m", r.m}, {"input", r.input}};
    j["provenance"] = {{"tool", "eqip"}, {"version", version_string}, {"comments", r.provenance}};
    return j;
}

inline std::string report_text(const ResultReport& r) {
    const auto& o = r.outcome;
    const auto& s = o.stats;
    std::ostringstream os;
    os << "status: " << to_string(o.status) << "\n";
    if (o.objective) os << "objective: " << o.objective->str() << "\n";
    if (o.witness) os << "witness: " << o.witness->str() << "\n";
    if (o.solution_count) os << "count: " << o.solution_count->get_str() << "\n";
    os << "solver: " << to_string(r.algorithm) << " (" << to_string(r.goal) << ", " << r.mode << ")\n";
    os << "tables:";
    for (auto t : s.table_sizes) os << " " << t;
    os << " (entries built " << s.table_entries_built << ", peak live " << s.peak_live_entries << ")\n";
    os << "comparisons: " << s.comparisons << ", blocks: " << s.match_blocks;
    if (s.recursion_nodes) os << ", recursion nodes: " << s.recursion_nodes;
    if (s.peak_queue_entries) os << ", peak queue: " << s.peak_queue_entries;
    if (s.early_exit) os << ", early exit";
    os << "\n";
    if (!s.witness_verified) os << "warning: a matched pair failed the tolerance check\n";
    os << "time: " << s.wall_seconds << " s\n";
    return os.str();
}

/// Compressed view of a match list, one block per line:
/// "block <k> u[<begin>,<end>) v[<begin>,<end>) pairs <count>".
inline std::string render_blocks(const MatchList& list) {
    std::ostringstream os;
    for (std::size_t k = 0; k < list.blocks.size(); ++k) {
        const auto& b = list.blocks[k];
        os << "block " << k << " u[" << b.u_begin << "," << b.u_end << ") v[" << b.v_begin << "," << b.v_end
           << ") pairs " << static_cast<std::uint64_t>(b.u_size()) * b.v_size() << "\n";
    }
    return os.str();
}

} // namespace eqip

#endif // EQIP_REPORT_HPP
