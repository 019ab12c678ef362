#ifndef EQIP_FOUR_TABLE_HPP
#define EQIP_FOUR_TABLE_HPP

#include <algorithm>
#include <array>
#include <chrono>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "eqip/errors.hpp"
#include "eqip/instance.hpp"
#include "eqip/scalar.hpp"
#include "eqip/tables.hpp"

namespace eqip {

/// Quarter tables for u + v = s + t, each sorted by (vector, code):
/// u, v are plain block sums, s is the negated block sum, t is b minus the block sum.
template <typename S>
struct QuarterTables {
    Table<S> u, v, s, t;
    VariablePartition partition;

    std::uint64_t total_entries() const { return u.size() + v.size() + s.size() + t.size(); }
};

template <typename S>
QuarterTables<S> build_quarter_tables(const Instance& inst, bool with_weights = true, const BuildOptions& options = {},
                                      std::uint64_t* comparisons = nullptr) {
    auto partition = split_variables(inst.n(), 4);
    QuarterTables<S> q{build_table<S>(inst, partition.parts[0], TableSide::plus, with_weights, options),
                       build_table<S>(inst, partition.parts[1], TableSide::plus, with_weights, options),
                       build_table<S>(inst, partition.parts[2], TableSide::minus, with_weights, options),
                       build_table<S>(inst, partition.parts[3], TableSide::minus_from_b, with_weights, options),
                       std::move(partition)};
    sort_table(q.u, comparisons);
    sort_table(q.v, comparisons);
    sort_table(q.s, comparisons);
    sort_table(q.t, comparisons);
    return q;
}

namespace detail {

/// Min-queue of index pairs (left, right) over two sorted tables, keyed by
/// the lexicographic pair sum and then by (left, right). At most one entry
/// per left index is ever live, so sums live in a slab indexed by left.
template <typename S>
class PairSumQueue {
public:
    PairSumQueue(const Table<S>& left, const Table<S>& right, std::uint64_t& comparisons)
        : left_(left), right_(right), dim_(left.vectors.dim()), sums_(left.size() * left.vectors.dim()),
          last_right_(left.size(), 0), pushed_(left.size(), false), comparisons_(comparisons) {
        heap_.reserve(left.size());
        if (right.size() == 0) return;
        for (std::uint32_t k = 0; k < left.size(); ++k) push(k, 0);
    }

    bool empty() const noexcept { return heap_.empty(); }
    std::size_t size() const noexcept { return heap_.size(); }
    std::pair<std::uint32_t, std::uint32_t> top() const { return {heap_.front().left, heap_.front().right}; }
    std::span<const S> top_sum() const { return sum(heap_.front().left); }

    /// Removes the top pair and pushes its right successor, if any.
    void pop_advance() {
        std::pop_heap(heap_.begin(), heap_.end(), after_);
        Entry e = heap_.back();
        heap_.pop_back();
        if (e.right + 1 < right_.size()) push(e.left, e.right + 1);
    }

    std::uint64_t pushes() const noexcept { return pushes_; }
    std::uint64_t push_violations() const noexcept { return push_violations_; }

private:
    struct Entry {
        std::uint32_t left;
        std::uint32_t right;
    };

    struct After {
        const PairSumQueue* q;
        bool operator()(const Entry& a, const Entry& b) const {
            ++q->comparisons_;
            auto sa = q->sum(a.left);
            auto sb = q->sum(b.left);
            if (lex_less(sb, sa)) return true;
            if (lex_less(sa, sb)) return false;
            return std::pair(a.left, a.right) > std::pair(b.left, b.right);
        }
    };

    std::span<const S> sum(std::uint32_t left) const { return {sums_.data() + std::size_t(left) * dim_, dim_}; }

    void push(std::uint32_t l, std::uint32_t r) {
        // each (l, r) enters once: r strictly increases per l
        if (pushed_[l] && r <= last_right_[l]) ++push_violations_;
        pushed_[l] = true;
        last_right_[l] = r;
        ++pushes_;
        auto a = left_.vectors[l];
        auto b = right_.vectors[r];
        S* dst = sums_.data() + std::size_t(l) * dim_;
        for (std::size_t i = 0; i < dim_; ++i) dst[i] = a[i] + b[i];
        heap_.push_back({l, r});
        std::push_heap(heap_.begin(), heap_.end(), after_);
    }

    const Table<S>& left_;
    const Table<S>& right_;
    std::size_t dim_;
    std::vector<S> sums_;
    std::vector<std::uint32_t> last_right_;
    std::vector<bool> pushed_;
    std::vector<Entry> heap_;
    After after_{this};
    std::uint64_t& comparisons_;
    std::uint64_t pushes_ = 0;
    std::uint64_t push_violations_ = 0;
};

} // namespace detail

/// One collision block of the sweep: every queued pair whose sum equals `sum`.
template <typename S>
struct DrainedBlock {
    std::vector<S> sum;
    S min_left{};  // min w(u) + w(v) over the drained left pairs
    S min_right{}; // min w(s) + w(t) over the drained right pairs
    std::array<std::uint32_t, 4> argmin{}; // sorted positions in U, V, S, T
    std::uint64_t left_pairs = 0;
    std::uint64_t right_pairs = 0;
};

template <typename S>
struct SweepTrace {
    std::vector<DrainedBlock<S>> blocks;
};

template <typename S>
struct SweepResult {
    std::optional<S> min;                            // empty means infeasible
    std::optional<std::array<std::uint32_t, 4>> sol; // sorted positions in U, V, S, T
    std::uint64_t peak_queue_entries = 0;
    std::uint64_t comparisons = 0;
    std::uint64_t pushes = 0;
    std::uint64_t push_violations = 0;
    std::uint64_t drained_blocks = 0;
    mpz_class collisions = 0; // sum of left_pairs * right_pairs; all solutions after a full sweep
    bool early_exit = false;
};

/// Two-queue sweep over the sums u + v and s + t in ascending order. Whenever
/// the queue tops agree, both queues are drained of that sum, the best weight
/// of each side is taken, and the running minimum updated.
template <typename S>
SweepResult<S> vector_sum_equality_min(const QuarterTables<S>& tables, Goal goal, SweepTrace<S>* trace = nullptr) {
    if (goal != Goal::feasibility && goal != Goal::optimize) {
        throw UnsupportedConfiguration("the four-table sweep supports feasibility and optimize goals only");
    }
    SweepResult<S> res;
    detail::PairSumQueue<S> q1(tables.u, tables.v, res.comparisons);
    detail::PairSumQueue<S> q2(tables.s, tables.t, res.comparisons);
    auto track = [&] { res.peak_queue_entries = std::max<std::uint64_t>(res.peak_queue_entries, q1.size() + q2.size()); };
    track();

    const auto exact = CompareMode::exact();
    while (!q1.empty() && !q2.empty()) {
        ++res.comparisons;
        auto c = compare_lex(q1.top_sum(), q2.top_sum(), exact);
        if (c < 0) {
            q1.pop_advance();
        } else if (c > 0) {
            q2.pop_advance();
        } else {
            const std::vector<S> w(q1.top_sum().begin(), q1.top_sum().end());
            const std::span<const S> ws(w);
            DrainedBlock<S> blk;

            std::optional<S> min1;
            while (!q1.empty() && compare_lex(q1.top_sum(), ws, exact) == 0) {
                auto [a, b] = q1.top();
                S value = tables.u.weights[a] + tables.v.weights[b];
                if (!min1 || value < *min1) {
                    min1 = value;
                    blk.argmin[0] = a;
                    blk.argmin[1] = b;
                }
                ++blk.left_pairs;
                q1.pop_advance();
                track();
            }
            std::optional<S> min2;
            while (!q2.empty() && compare_lex(q2.top_sum(), ws, exact) == 0) {
                auto [g, d] = q2.top();
                S value = tables.s.weights[g] + tables.t.weights[d];
                if (!min2 || value < *min2) {
                    min2 = value;
                    blk.argmin[2] = g;
                    blk.argmin[3] = d;
                }
                ++blk.right_pairs;
                q2.pop_advance();
                track();
            }

            ++res.drained_blocks;
            res.collisions += mpz_class(static_cast<unsigned long>(blk.left_pairs)) *
                              static_cast<unsigned long>(blk.right_pairs);
            S total = *min1 + *min2;
            if (!res.min || total < *res.min) {
                res.min = total;
                res.sol = blk.argmin;
            }
            if (trace) {
                blk.sum = w;
                blk.min_left = *min1;
                blk.min_right = *min2;
                trace->blocks.push_back(std::move(blk));
            }
            if (goal == Goal::feasibility) {
                res.early_exit = true;
                break;
            }
        }
        track();
    }
    res.pushes = q1.pushes() + q2.pushes();
    res.push_violations = q1.push_violations() + q2.push_violations();
    return res;
}

struct FourTableOptions {
    Goal goal = Goal::optimize;
    CompareMode mode = CompareMode::exact();
    BuildOptions build;
};

/// Schroeppel-Shamir style solve: O(2^(n/4)) live entries, O(2^(n/2)) sweep.
template <typename S>
SolveOutcome solve_four_table(const Instance& inst, const FourTableOptions& options = {},
                              SweepTrace<S>* trace = nullptr) {
    if (!options.mode.is_exact()) {
        throw UnsupportedConfiguration("the four-table solver requires exact mode");
    }
    if (options.goal != Goal::feasibility && options.goal != Goal::optimize) {
        throw UnsupportedConfiguration(std::string("the four-table solver does not support the ") +
                                       to_string(options.goal) + " goal; use a two-table algorithm");
    }
    auto start = std::chrono::steady_clock::now();
    SolveOutcome out;
    std::uint64_t sort_comparisons = 0;
    auto tables = build_quarter_tables<S>(inst, options.goal == Goal::optimize, options.build, &sort_comparisons);
    auto res = vector_sum_equality_min(tables, options.goal, trace);

    out.stats.table_sizes = {tables.u.size(), tables.v.size(), tables.s.size(), tables.t.size()};
    out.stats.table_entries_built = tables.total_entries();
    out.stats.peak_queue_entries = res.peak_queue_entries;
    out.stats.peak_live_entries = tables.total_entries() + res.peak_queue_entries;
    out.stats.comparisons = sort_comparisons + res.comparisons;
    out.stats.match_blocks = res.drained_blocks;
    out.stats.early_exit = res.early_exit;
    // an optimize sweep drains every collision block, so the count comes for free
    if (options.goal == Goal::optimize) out.solution_count = res.collisions;

    if (res.sol) {
        const auto& s = *res.sol;
        const std::uint64_t codes[4] = {tables.u.code(s[0]), tables.v.code(s[1]), tables.s.code(s[2]),
                                        tables.t.code(s[3])};
        Assignment x = decode_codes(codes, tables.partition);
        auto ev = evaluate(inst, x);
        if (!ev.feasible()) throw std::logic_error("four-table witness " + x.str() + " does not satisfy Ax = b");
        if constexpr (ScalarTraits<S>::exact) {
            if (options.goal == Goal::optimize && ev.objective != *res.min) {
                throw std::logic_error("four-table optimum disagrees with c^T x");
            }
        }
        out.status = options.goal == Goal::optimize ? Status::optimal : Status::feasible;
        out.objective = ev.objective;
        out.witness = std::move(x);
    }
    out.stats.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return out;
}

} // namespace eqip

#endif // EQIP_FOUR_TABLE_HPP
