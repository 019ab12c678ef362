#ifndef EQIP_ORACLE_HPP
#define EQIP_ORACLE_HPP

#include <chrono>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>

#include "eqip/errors.hpp"
#include "eqip/instance.hpp"

namespace eqip {

constexpr std::size_t default_brute_force_cap = 24;

/// Exhaustive search over all 2^n assignments. Always reports the full
/// solution count, the optimum of c^T x, and the lexicographically least
/// optimal assignment (x_1 most significant). Enumerate collects up to
/// `limit` solutions in lexicographic order.
inline SolveOutcome brute_force_solve(const Instance& inst, Goal goal, std::size_t cap = default_brute_force_cap,
                                      std::uint64_t limit = 1000) {
    if (inst.n() > cap) {
        throw UnsupportedConfiguration("brute force refuses n = " + std::to_string(inst.n()) + " (cap " +
                                       std::to_string(cap) + ")");
    }
    auto start = std::chrono::steady_clock::now();
    const std::size_t n = inst.n();
    const std::uint64_t total = std::uint64_t{1} << n;

    SolveOutcome out;
    mpz_class count = 0;
    std::optional<Rational> best;
    std::optional<Assignment> best_x;

    // rank r maps x_1 to the top bit so ascending r is lexicographic order on x
    for (std::uint64_t r = 0; r < total; ++r) {
        Assignment x(n);
        for (std::size_t j = 0; j < n; ++j) x.set(j, (r >> (n - 1 - j)) & 1u);
        bool feasible = true;
        for (std::size_t i = 0; i < inst.m() && feasible; ++i) {
            Rational s;
            for (std::size_t j = 0; j < n; ++j) {
                if (x[j]) s += inst.a(i, j);
            }
            feasible = s == inst.b()[i];
        }
        if (!feasible) continue;
        ++count;
        Rational obj;
        for (std::size_t j = 0; j < n; ++j) {
            if (x[j]) obj += inst.cost(j);
        }
        if (!best || obj < *best) {
            best = obj;
            best_x = x;
        }
        if (goal == Goal::enumerate && out.solutions.size() < limit) out.solutions.push_back(x);
    }

    out.stats.table_entries_built = total;
    out.stats.peak_live_entries = 1;
    out.solution_count = count;
    if (best_x) {
        out.status = goal == Goal::optimize ? Status::optimal : Status::feasible;
        out.objective = best;
        out.witness = best_x;
    }
    out.stats.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return out;
}

} // namespace eqip

#endif // EQIP_ORACLE_HPP
