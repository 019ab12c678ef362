#ifndef EQIP_SOLVE_HPP
#define EQIP_SOLVE_HPP

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "eqip/errors.hpp"
#include "eqip/four_table.hpp"
#include "eqip/instance.hpp"
#include "eqip/oracle.hpp"
#include "eqip/scalar.hpp"
#include "eqip/two_table.hpp"

namespace eqip {

enum class Algorithm { automatic, sort2, recursive2, four_table, brute };

inline const char* to_string(Algorithm a) {
    switch (a) {
    case Algorithm::automatic: return "auto";
    case Algorithm::sort2: return "sort2";
    case Algorithm::recursive2: return "recursive2";
    case Algorithm::four_table: return "four-table";
    case Algorithm::brute: return "brute";
    }
    return "?";
}

inline std::optional<Algorithm> parse_algorithm(std::string_view s) {
    for (auto a : {Algorithm::automatic, Algorithm::sort2, Algorithm::recursive2, Algorithm::four_table,
                   Algorithm::brute}) {
        if (s == to_string(a)) return a;
    }
    return std::nullopt;
}

struct SolveRequest {
    Algorithm algorithm = Algorithm::automatic;
    Goal goal = Goal::optimize;
    std::uint64_t limit = 1000;
    bool float_mode = false;
    Rational tolerance = Rational(1, 1000000000);
    BuildOptions build;
    PivotRule pivot = PivotRule::median_of_medians;
    std::uint64_t memory_budget_bytes = std::uint64_t{1} << 30;
    std::size_t brute_cap = default_brute_force_cap;

    CompareMode mode() const { return float_mode ? CompareMode::tolerant(tolerance) : CompareMode::exact(); }
};

/// Rough resident size of both half tables: per entry m coordinates, a
/// weight, a code and a permutation slot.
inline std::uint64_t estimated_two_table_bytes(const Instance& inst, bool float_mode) {
    auto part = split_variables(inst.n(), 2);
    if (part.parts[0].size >= 40) return UINT64_MAX;
    std::uint64_t entries = (std::uint64_t{1} << part.parts[0].size) + (std::uint64_t{1} << part.parts[1].size);
    std::uint64_t scalar = float_mode ? sizeof(double) : sizeof(Rational);
    return entries * ((inst.m() + 1) * scalar + sizeof(std::uint64_t) + sizeof(std::uint32_t));
}

/// Concrete algorithm for a request: auto picks four-table when the half
/// tables would exceed the memory budget (exact mode only), sort2 otherwise.
inline Algorithm resolve_algorithm(const Instance& inst, const SolveRequest& req) {
    if (req.algorithm != Algorithm::automatic) return req.algorithm;
    if (req.float_mode) return Algorithm::sort2;
    bool four_ok = req.goal == Goal::feasibility || req.goal == Goal::optimize;
    if (four_ok && estimated_two_table_bytes(inst, false) > req.memory_budget_bytes) return Algorithm::four_table;
    return Algorithm::sort2;
}

/// Rejects combinations the solvers do not support, before any work is done.
inline void check_request(const SolveRequest& req, Algorithm algo) {
    if (req.float_mode && (algo == Algorithm::recursive2 || algo == Algorithm::four_table)) {
        throw UnsupportedConfiguration(std::string(to_string(algo)) +
                                       " requires exact mode; float mode is supported by sort2 only");
    }
    if (algo == Algorithm::four_table && req.goal != Goal::feasibility && req.goal != Goal::optimize) {
        throw UnsupportedConfiguration(std::string("four-table does not support the ") + to_string(req.goal) +
                                       " goal; use sort2 or recursive2");
    }
    if (req.tolerance.sign() < 0) throw UnsupportedConfiguration("tolerance must be nonnegative");
}

struct DispatchResult {
    Algorithm algorithm;
    SolveOutcome outcome;
};

inline DispatchResult solve(const Instance& inst, const SolveRequest& req) {
    Algorithm algo = resolve_algorithm(inst, req);
    check_request(req, algo);
    switch (algo) {
    case Algorithm::brute: return {algo, brute_force_solve(inst, req.goal, req.brute_cap, req.limit)};
    case Algorithm::four_table: {
        FourTableOptions o{req.goal, CompareMode::exact(), req.build};
        return {algo, solve_four_table<Rational>(inst, o)};
    }
    case Algorithm::sort2:
    case Algorithm::recursive2:
    case Algorithm::automatic: {
        TwoTableOptions o;
        o.goal = req.goal;
        o.limit = req.limit;
        o.algorithm = algo == Algorithm::recursive2 ? MatchAlgorithm::recursive : MatchAlgorithm::sort;
        o.mode = req.mode();
        o.build = req.build;
        o.pivot = req.pivot;
        if (req.float_mode) return {algo, solve_two_table<double>(inst, o)};
        return {algo, solve_two_table<Rational>(inst, o)};
    }
    }
    throw ContractViolation("unknown algorithm");
}

} // namespace eqip

#endif // EQIP_SOLVE_HPP
