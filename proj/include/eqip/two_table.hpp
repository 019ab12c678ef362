#ifndef EQIP_TWO_TABLE_HPP
#define EQIP_TWO_TABLE_HPP

#include <chrono>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>

#include "eqip/errors.hpp"
#include "eqip/instance.hpp"
#include "eqip/scalar.hpp"
#include "eqip/tables.hpp"
#include "eqip/vector_equality.hpp"

namespace eqip {

/// U holds the left-half sums, V holds b minus the right-half sums; a pair of
/// equal vectors is exactly a solution of Ax = b.
template <typename S>
struct HalfTables {
    Table<S> U;
    Table<S> V;
    VariablePartition partition;
};

template <typename S>
HalfTables<S> build_half_tables(const Instance& inst, const BuildOptions& options = {}) {
    auto partition = split_variables(inst.n(), 2);
    auto U = build_table<S>(inst, partition.parts[0], TableSide::plus, true, options);
    auto V = build_table<S>(inst, partition.parts[1], TableSide::minus_from_b, true, options);
    return {std::move(U), std::move(V), std::move(partition)};
}

enum class MatchAlgorithm { sort, recursive };

struct TwoTableOptions {
    Goal goal = Goal::optimize;
    std::uint64_t limit = 1000; // enumerate only
    MatchAlgorithm algorithm = MatchAlgorithm::sort;
    CompareMode mode = CompareMode::exact();
    BuildOptions build;
    PivotRule pivot = PivotRule::median_of_medians;
};

/// Tables plus the compressed match list, before any goal-specific pass.
template <typename S>
struct TwoTableRun {
    HalfTables<S> tables;
    MatchList matches;
    MatchCounters counters;
};

template <typename S>
TwoTableRun<S> match_two_table(const Instance& inst, const TwoTableOptions& options) {
    if (options.algorithm == MatchAlgorithm::recursive && !options.mode.is_exact()) {
        throw UnsupportedConfiguration("the recursive matcher requires exact mode");
    }
    TwoTableRun<S> run{build_half_tables<S>(inst, options.build), {}, {}};
    MatchOptions mo;
    mo.pivot = options.pivot;
    // a tolerant first block may hold no pair that survives the residual check
    mo.stop_after_first = options.goal == Goal::feasibility && options.mode.is_exact();
    if (options.algorithm == MatchAlgorithm::sort) {
        run.matches = sort_vector_equality(run.tables.U.vectors, run.tables.V.vectors, options.mode, mo, &run.counters);
    } else {
        run.matches =
            recursive_vector_equality(run.tables.U.vectors, run.tables.V.vectors, options.mode, nullptr, mo, &run.counters);
    }
    return run;
}

/// Best (weight, code) entry of one side of a block; ties go to the lowest code.
template <typename S>
std::size_t block_argmin(const Table<S>& table, const std::vector<std::uint32_t>& order, std::size_t begin,
                         std::size_t end) {
    std::size_t best = order[begin];
    for (std::size_t p = begin + 1; p < end; ++p) {
        std::size_t k = order[p];
        if (table.weights[k] < table.weights[best] ||
            (!(table.weights[best] < table.weights[k]) && table.code(k) < table.code(best))) {
            best = k;
        }
    }
    return best;
}

/// Calls `visit` with each matched assignment, block by block, until it returns false.
template <typename S>
void for_each_solution(const TwoTableRun<S>& run, const std::function<bool(const Assignment&)>& visit) {
    const auto& m = run.matches;
    for (const auto& blk : m.blocks) {
        for (std::size_t i = blk.u_begin; i < blk.u_end; ++i) {
            for (std::size_t j = blk.v_begin; j < blk.v_end; ++j) {
                auto x = decode_witness(run.tables.U.code(m.u_order[i]), run.tables.V.code(m.v_order[j]),
                                        run.tables.partition);
                if (!visit(x)) return;
            }
        }
    }
}

namespace detail {

inline void require_verified(const Instance& inst, const Assignment& x, const CompareMode& mode, SolveStats& stats) {
    if (verify_assignment(inst, x, mode)) return;
    if (mode.is_exact()) throw std::logic_error("matched assignment " + x.str() + " does not satisfy Ax = b");
    stats.witness_verified = false;
}

} // namespace detail

/// Meet-in-the-middle solve over two half tables.
template <typename S>
SolveOutcome solve_two_table(const Instance& inst, const TwoTableOptions& options = {}) {
    auto start = std::chrono::steady_clock::now();
    auto run = match_two_table<S>(inst, options);
    const auto& tab = run.tables;
    const auto& m = run.matches;

    SolveOutcome out;
    out.stats.table_sizes = {tab.U.size(), tab.V.size()};
    out.stats.table_entries_built = tab.U.size() + tab.V.size();
    out.stats.peak_live_entries = out.stats.table_entries_built;
    out.stats.comparisons = run.counters.comparisons;
    out.stats.recursion_nodes = run.counters.nodes;
    out.stats.early_exit = run.counters.early_exit;
    out.stats.match_blocks = m.blocks.size();

    auto finish = [&](Assignment x, Status status) {
        auto ev = evaluate(inst, x);
        out.objective = ev.objective;
        out.witness = std::move(x);
        out.status = status;
    };

    switch (options.goal) {
    case Goal::feasibility:
    case Goal::count: {
        if (options.goal == Goal::count) out.solution_count = pair_count(m);
        if (options.mode.is_exact()) {
            if (!m.empty()) {
                const auto& blk = m.blocks.front();
                finish(decode_witness(tab.U.code(m.u_at(blk, 0)), tab.V.code(m.v_at(blk, 0)), tab.partition),
                       Status::feasible);
                detail::require_verified(inst, *out.witness, options.mode, out.stats);
            }
        } else {
            // first matched pair whose residual is within tolerance
            for_each_solution(run, [&](const Assignment& x) {
                if (!verify_assignment(inst, x, options.mode)) {
                    out.stats.witness_verified = false;
                    return true;
                }
                finish(x, Status::feasible);
                return false;
            });
        }
        break;
    }
    case Goal::optimize: {
        std::optional<S> best;
        std::size_t best_u = 0, best_v = 0;
        for (const auto& blk : m.blocks) {
            std::size_t bu = block_argmin(tab.U, m.u_order, blk.u_begin, blk.u_end);
            std::size_t bv = block_argmin(tab.V, m.v_order, blk.v_begin, blk.v_end);
            S value = tab.U.weights[bu] + tab.V.weights[bv];
            if (!best || value < *best) {
                best = value;
                best_u = bu;
                best_v = bv;
            }
        }
        if (best) {
            finish(decode_witness(tab.U.code(best_u), tab.V.code(best_v), tab.partition), Status::optimal);
            detail::require_verified(inst, *out.witness, options.mode, out.stats);
            if constexpr (ScalarTraits<S>::exact) {
                if (*out.objective != *best) throw std::logic_error("block optimum disagrees with c^T x");
            }
        }
        break;
    }
    case Goal::enumerate: {
        out.solution_count = pair_count(m);
        for_each_solution(run, [&](const Assignment& x) {
            if (out.solutions.size() >= options.limit) return false;
            if (!verify_assignment(inst, x, options.mode)) {
                if (options.mode.is_exact()) {
                    throw std::logic_error("matched assignment " + x.str() + " does not satisfy Ax = b");
                }
                out.stats.witness_verified = false;
                return true;
            }
            out.solutions.push_back(x);
            return true;
        });
        if (!out.solutions.empty()) finish(out.solutions.front(), Status::feasible);
        break;
    }
    }

    out.stats.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return out;
}

} // namespace eqip

#endif // EQIP_TWO_TABLE_HPP
