#ifndef EQIP_VECTOR_EQUALITY_HPP
#define EQIP_VECTOR_EQUALITY_HPP

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "eqip/errors.hpp"
#include "eqip/scalar.hpp"
#include "eqip/weighted_median.hpp"

namespace eqip {

/// A set of m-dimensional vectors stored row-major, each tagged with an id
/// (the original index, or an assignment code for solver tables).
template <typename S>
class VectorSet {
public:
    explicit VectorSet(std::size_t dim = 0) : dim_(dim) {}

    static VectorSet from_rows(const std::vector<std::vector<S>>& rows, std::size_t dim) {
        VectorSet set(dim);
        for (std::size_t i = 0; i < rows.size(); ++i) set.push_back(rows[i], i);
        return set;
    }

    void push_back(std::span<const S> v, std::uint64_t id) {
        if (v.size() != dim_) throw ContractViolation("VectorSet: vector dimension mismatch");
        coords_.insert(coords_.end(), v.begin(), v.end());
        ids_.push_back(id);
    }
    void push_back(const std::vector<S>& v, std::uint64_t id) { push_back(std::span<const S>(v), id); }

    /// Grows to `count` zero vectors with ids 0..count-1; rows are then filled in place.
    void resize(std::size_t count) {
        coords_.resize(count * dim_);
        ids_.resize(count);
        std::iota(ids_.begin(), ids_.end(), std::uint64_t{0});
    }

    std::size_t size() const noexcept { return ids_.size(); }
    bool empty() const noexcept { return ids_.empty(); }
    std::size_t dim() const noexcept { return dim_; }

    std::span<const S> operator[](std::size_t i) const { return {coords_.data() + i * dim_, dim_}; }
    std::span<S> row(std::size_t i) { return {coords_.data() + i * dim_, dim_}; }
    std::uint64_t id(std::size_t i) const { return ids_[i]; }
    void set_id(std::size_t i, std::uint64_t id) { ids_[i] = id; }

private:
    std::size_t dim_;
    std::vector<S> coords_;
    std::vector<std::uint64_t> ids_;
};

/// A Cartesian product of equal vectors: positions [u_begin, u_end) of
/// MatchList::u_order times positions [v_begin, v_end) of MatchList::v_order.
struct MatchBlock {
    std::size_t u_begin = 0;
    std::size_t u_end = 0;
    std::size_t v_begin = 0;
    std::size_t v_end = 0;

    std::size_t u_size() const noexcept { return u_end - u_begin; }
    std::size_t v_size() const noexcept { return v_end - v_begin; }

    friend bool operator==(const MatchBlock&, const MatchBlock&) = default;
};

/// Compressed representation of every equal (u, v) pair. u_order and v_order
/// are permutations of the input positions; blocks index into them and are
/// pairwise disjoint on both sides.
struct MatchList {
    std::vector<MatchBlock> blocks;
    std::vector<std::uint32_t> u_order;
    std::vector<std::uint32_t> v_order;

    bool empty() const noexcept { return blocks.empty(); }

    /// Input position of the j-th element of block b on each side.
    std::uint32_t u_at(const MatchBlock& b, std::size_t j) const { return u_order[b.u_begin + j]; }
    std::uint32_t v_at(const MatchBlock& b, std::size_t j) const { return v_order[b.v_begin + j]; }
};

/// The shared vector value of a block.
template <typename S>
std::span<const S> block_key(const MatchList& list, const MatchBlock& block, const VectorSet<S>& U) {
    return U[list.u_order[block.u_begin]];
}

/// Number of pairs represented by the list.
inline mpz_class pair_count(const MatchList& list) {
    mpz_class total = 0;
    for (const auto& b : list.blocks) {
        total += mpz_class(static_cast<unsigned long>(b.u_size())) * static_cast<unsigned long>(b.v_size());
    }
    return total;
}

struct MatchOptions {
    bool stop_after_first = false;
    PivotRule pivot = PivotRule::median_of_medians;
};

struct MatchCounters {
    std::uint64_t comparisons = 0;
    std::uint64_t nodes = 0;
    bool early_exit = false;
};

namespace detail {

template <typename S>
void check_dims(const VectorSet<S>& U, const VectorSet<S>& V) {
    if (U.dim() != V.dim()) {
        throw ContractViolation("vector equality: dimension mismatch (" + std::to_string(U.dim()) + " vs " +
                                std::to_string(V.dim()) + ")");
    }
}

/// Ascending value order, equal vectors by id.
template <typename S>
std::vector<std::uint32_t> sorted_order(const VectorSet<S>& set, std::uint64_t& comparisons) {
    std::vector<std::uint32_t> order(set.size());
    std::iota(order.begin(), order.end(), 0u);
    std::sort(order.begin(), order.end(), [&](std::uint32_t a, std::uint32_t b) {
        ++comparisons;
        auto ra = set[a];
        auto rb = set[b];
        if (lex_less(ra, rb)) return true;
        if (lex_less(rb, ra)) return false;
        return set.id(a) < set.id(b);
    });
    return order;
}

} // namespace detail

/// Sort both sides, then walk them with two cursors, emitting one block per
/// maximal run of equal vectors. Runs are delimited by comparing against the
/// first vector of the run under `mode`.
template <typename S>
MatchList sort_vector_equality(const VectorSet<S>& U, const VectorSet<S>& V, const CompareMode& mode,
                               const MatchOptions& options = {}, MatchCounters* counters = nullptr) {
    detail::check_dims(U, V);
    MatchCounters local;
    MatchCounters& ctr = counters ? *counters : local;

    MatchList out;
    out.u_order = detail::sorted_order(U, ctr.comparisons);
    out.v_order = detail::sorted_order(V, ctr.comparisons);

    auto cmp = [&](std::span<const S> a, std::span<const S> b) {
        ++ctr.comparisons;
        return compare_lex(a, b, mode);
    };

    std::size_t alpha = 0;
    std::size_t beta = 0;
    while (alpha < U.size() && beta < V.size()) {
        auto c = cmp(U[out.u_order[alpha]], V[out.v_order[beta]]);
        if (c > 0) {
            ++beta;
        } else if (c < 0) {
            ++alpha;
        } else {
            MatchBlock blk{alpha, alpha, beta, beta};
            auto w = U[out.u_order[alpha]];
            while (alpha < U.size() && cmp(w, U[out.u_order[alpha]]) == 0) ++alpha;
            while (beta < V.size() && cmp(w, V[out.v_order[beta]]) == 0) ++beta;
            blk.u_end = alpha;
            blk.v_end = beta;
            out.blocks.push_back(blk);
            if (options.stop_after_first) {
                ctr.early_exit = true;
                break;
            }
        }
    }
    return out;
}

/// One internal node of the recursive matcher: the subproblem sizes and how
/// the pivot split each side on coordinate `coord` (0-based).
struct RecursionNode {
    std::size_t depth = 0;
    std::size_t coord = 0;
    std::size_t remaining_dims = 0; // m - coord
    std::size_t u_size = 0, v_size = 0;
    std::size_t u_less = 0, u_equal = 0, u_greater = 0;
    std::size_t v_less = 0, v_equal = 0, v_greater = 0;
};

struct RecursionTrace {
    std::size_t dim = 0;
    std::size_t top_u = 0, top_v = 0;
    std::vector<RecursionNode> nodes;
    std::size_t max_depth = 0; // deepest call, leaves included
};

namespace detail {

template <typename S>
class RecursiveMatcher {
public:
    RecursiveMatcher(const VectorSet<S>& U, const VectorSet<S>& V, const MatchOptions& options,
                     MatchCounters& counters, RecursionTrace* trace)
        : U_(U), V_(V), options_(options), counters_(counters), trace_(trace) {}

    MatchList run() {
        out_.u_order.resize(U_.size());
        out_.v_order.resize(V_.size());
        std::iota(out_.u_order.begin(), out_.u_order.end(), 0u);
        std::iota(out_.v_order.begin(), out_.v_order.end(), 0u);
        if (trace_) {
            trace_->dim = U_.dim();
            trace_->top_u = U_.size();
            trace_->top_v = V_.size();
        }
        solve(0, U_.size(), 0, V_.size(), 0, 0);
        return std::move(out_);
    }

private:
    struct Item {
        const S* value;
        bool from_u;
    };

    void solve(std::size_t ub, std::size_t ue, std::size_t vb, std::size_t ve, std::size_t coord, std::size_t depth) {
        if (done_) return;
        ++counters_.nodes;
        if (trace_) trace_->max_depth = std::max(trace_->max_depth, depth);
        if (ub == ue || vb == ve) return;
        if (coord >= U_.dim()) {
            out_.blocks.push_back({ub, ue, vb, ve});
            if (options_.stop_after_first) {
                counters_.early_exit = true;
                done_ = true;
            }
            return;
        }

        const std::uint64_t nu = ue - ub;
        const std::uint64_t nv = ve - vb;
        scratch_.clear();
        for (std::size_t p = ub; p < ue; ++p) scratch_.push_back({&U_[out_.u_order[p]][coord], true});
        for (std::size_t p = vb; p < ve; ++p) scratch_.push_back({&V_[out_.v_order[p]][coord], false});
        auto less = [this](const Item& a, const Item& b) {
            ++counters_.comparisons;
            return *a.value < *b.value;
        };
        auto weight = [nu, nv](const Item& it) { return it.from_u ? nv : nu; };
        const S pivot = *weighted_median_select(scratch_.begin(), scratch_.end(), less, weight, options_.pivot)->value;

        auto key = [coord](std::span<const S> row) -> const S& { return row[coord]; };
        auto [u_lo, u_hi] = split(out_.u_order, ub, ue, U_, pivot, key);
        auto [v_lo, v_hi] = split(out_.v_order, vb, ve, V_, pivot, key);

        if (trace_) {
            RecursionNode node;
            node.depth = depth;
            node.coord = coord;
            node.remaining_dims = U_.dim() - coord;
            node.u_size = nu;
            node.v_size = nv;
            node.u_less = u_lo - ub;
            node.u_equal = u_hi - u_lo;
            node.u_greater = ue - u_hi;
            node.v_less = v_lo - vb;
            node.v_equal = v_hi - v_lo;
            node.v_greater = ve - v_hi;
            trace_->nodes.push_back(node);
        }

        solve(ub, u_lo, vb, v_lo, coord, depth + 1);
        solve(u_lo, u_hi, v_lo, v_hi, coord + 1, depth + 1);
        solve(u_hi, ue, v_hi, ve, coord, depth + 1);
    }

    template <typename Key>
    std::pair<std::size_t, std::size_t> split(std::vector<std::uint32_t>& order, std::size_t b, std::size_t e,
                                              const VectorSet<S>& set, const S& pivot, Key key) {
        auto first = order.begin() + static_cast<std::ptrdiff_t>(b);
        auto last = order.begin() + static_cast<std::ptrdiff_t>(e);
        auto lt = first;
        auto i = first;
        auto gt = last;
        while (i != gt) {
            const S& x = key(set[*i]);
            if (x < pivot) {
                std::iter_swap(lt++, i++);
            } else if (pivot < x) {
                std::iter_swap(i, --gt);
            } else {
                ++i;
            }
        }
        return {static_cast<std::size_t>(lt - order.begin()), static_cast<std::size_t>(gt - order.begin())};
    }

    const VectorSet<S>& U_;
    const VectorSet<S>& V_;
    const MatchOptions& options_;
    MatchCounters& counters_;
    RecursionTrace* trace_;
    MatchList out_;
    std::vector<Item> scratch_;
    bool done_ = false;
};

} // namespace detail

/// Quicksort-like matcher: pivot each subproblem on the weighted median of the
/// current coordinate (U elements weighted |V|, V elements weighted |U|),
/// split both sides three ways, and recurse; the equal part advances to the
/// next coordinate. Exact comparison only.
template <typename S>
MatchList recursive_vector_equality(const VectorSet<S>& U, const VectorSet<S>& V, const CompareMode& mode,
                                    RecursionTrace* trace = nullptr, const MatchOptions& options = {},
                                    MatchCounters* counters = nullptr) {
    detail::check_dims(U, V);
    if (!mode.is_exact()) {
        throw UnsupportedConfiguration("the recursive matcher requires exact comparison");
    }
    MatchCounters local;
    detail::RecursiveMatcher<S> matcher(U, V, options, counters ? *counters : local, trace);
    return matcher.run();
}

/// Thrown by canonical_pair_set when the pair set exceeds the cap.
class CapExceeded : public std::runtime_error {
public:
    explicit CapExceeded(mpz_class count)
        : std::runtime_error("pair set has " + count.get_str() + " pairs, above the cap"), count_(std::move(count)) {}
    const mpz_class& count() const noexcept { return count_; }

private:
    mpz_class count_;
};

/// Materializes the matched (u_id, v_id) pairs, refusing above `cap`.
template <typename S>
std::set<std::pair<std::uint64_t, std::uint64_t>> canonical_pair_set(const MatchList& list, const VectorSet<S>& U,
                                                                      const VectorSet<S>& V, std::size_t cap) {
    mpz_class count = pair_count(list);
    if (count > static_cast<unsigned long>(cap)) throw CapExceeded(count);
    std::set<std::pair<std::uint64_t, std::uint64_t>> pairs;
    for (const auto& b : list.blocks) {
        for (std::size_t i = b.u_begin; i < b.u_end; ++i) {
            for (std::size_t j = b.v_begin; j < b.v_end; ++j) {
                pairs.emplace(U.id(list.u_order[i]), V.id(list.v_order[j]));
            }
        }
    }
    return pairs;
}

} // namespace eqip

#endif // EQIP_VECTOR_EQUALITY_HPP
