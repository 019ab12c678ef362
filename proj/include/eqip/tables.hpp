#ifndef EQIP_TABLES_HPP
#define EQIP_TABLES_HPP

#include <algorithm>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <span>
#include <string>
#include <thread>
#include <vector>

#include "eqip/errors.hpp"
#include "eqip/instance.hpp"
#include "eqip/scalar.hpp"
#include "eqip/vector_equality.hpp"

namespace eqip {

/// Partial-assignment table for one variable block. Entry k has vector
/// vectors[k], weight weights[k] and assignment code vectors.id(k); bit t of a
/// code is the value of variable block.begin + t.
template <typename S>
struct Table {
    VectorSet<S> vectors;
    std::vector<S> weights;
    VariableBlock block;

    std::size_t size() const noexcept { return vectors.size(); }
    std::uint64_t code(std::size_t k) const { return vectors.id(k); }
};

enum class TableBuild {
    incremental, // each entry = an earlier entry plus one column
    recompute    // each entry summed from scratch
};

struct BuildOptions {
    TableBuild mode = TableBuild::incremental;
    unsigned threads = 1;
};

/// Which side of the equation a table sits on: entries are
/// offset + sign * sum of the block's columns.
enum class TableSide { plus, minus, minus_from_b };

// Codes are stored in 32-bit permutation slots by the matchers.
constexpr std::size_t max_block_size = 31;

namespace detail {

template <typename S>
struct ColumnData {
    std::vector<std::vector<S>> columns; // signed column per block variable
    std::vector<S> costs;
    std::vector<S> offset;
};

template <typename S>
ColumnData<S> column_data(const Instance& inst, const VariableBlock& block, TableSide side, bool with_weights) {
    using T = ScalarTraits<S>;
    ColumnData<S> d;
    const std::size_t m = inst.m();
    d.offset.assign(m, S{});
    if (side == TableSide::minus_from_b) {
        for (std::size_t i = 0; i < m; ++i) d.offset[i] = T::from_rational(inst.b()[i]);
    }
    for (std::size_t t = 0; t < block.size; ++t) {
        std::size_t j = block.begin + t;
        std::vector<S> col(m);
        for (std::size_t i = 0; i < m; ++i) {
            S a = T::from_rational(inst.a(i, j));
            col[i] = side == TableSide::plus ? a : S{} - a;
        }
        d.columns.push_back(std::move(col));
        d.costs.push_back(with_weights ? S(T::from_rational(inst.cost(j))) : S{});
    }
    return d;
}

template <typename S>
void fill_range(Table<S>& table, const ColumnData<S>& d, std::uint64_t begin, std::uint64_t end, TableBuild mode) {
    const std::size_t m = d.offset.size();
    for (std::uint64_t code = begin; code < end; ++code) {
        auto row = table.vectors.row(code);
        // chunk starts are always recomputed so chunks stay independent
        if (mode == TableBuild::recompute || code == begin) {
            S w{};
            for (std::size_t i = 0; i < m; ++i) row[i] = d.offset[i];
            for (std::size_t t = 0; t < d.columns.size(); ++t) {
                if ((code >> t) & 1u) {
                    for (std::size_t i = 0; i < m; ++i) row[i] += d.columns[t][i];
                    w += d.costs[t];
                }
            }
            table.weights[code] = w;
        } else {
            std::uint64_t low = code & (~code + 1);
            auto t = static_cast<std::size_t>(std::countr_zero(low));
            std::uint64_t prev = code ^ low;
            auto prev_row = table.vectors[prev];
            for (std::size_t i = 0; i < m; ++i) row[i] = prev_row[i] + d.columns[t][i];
            table.weights[code] = table.weights[prev] + d.costs[t];
        }
    }
}

} // namespace detail

/// Enumerates all 2^|block| assignments of `block` in code order.
template <typename S>
Table<S> build_table(const Instance& inst, const VariableBlock& block, TableSide side, bool with_weights = true,
                     const BuildOptions& options = {}) {
    if (block.size > max_block_size) {
        throw UnsupportedConfiguration("variable block of " + std::to_string(block.size) +
                                       " exceeds the table limit of " + std::to_string(max_block_size));
    }
    auto data = detail::column_data<S>(inst, block, side, with_weights);
    const std::uint64_t count = std::uint64_t{1} << block.size;

    Table<S> table{VectorSet<S>(inst.m()), {}, block};
    table.vectors.resize(count);
    table.weights.assign(count, S{});

    unsigned threads = std::max(1u, options.threads);
    // chunks are aligned powers of two so every incremental predecessor stays inside its chunk
    std::uint64_t chunk = count;
    while (threads > 1 && chunk > 1024 && count / chunk < threads) chunk >>= 1;
    if (chunk == count) {
        detail::fill_range(table, data, 0, count, options.mode);
    } else {
        std::vector<std::jthread> pool;
        for (std::uint64_t start = 0; start < count; start += chunk) {
            pool.emplace_back([&, start] { detail::fill_range(table, data, start, start + chunk, options.mode); });
        }
    }
    return table;
}

/// Reorders a table ascending by (vector, code).
template <typename S>
void sort_table(Table<S>& table, std::uint64_t* comparisons = nullptr) {
    std::uint64_t local = 0;
    auto order = detail::sorted_order(table.vectors, comparisons ? *comparisons : local);
    Table<S> sorted{VectorSet<S>(table.vectors.dim()), {}, table.block};
    sorted.vectors.resize(table.size());
    sorted.weights.resize(table.size());
    for (std::size_t k = 0; k < order.size(); ++k) {
        auto src = table.vectors[order[k]];
        std::copy(src.begin(), src.end(), sorted.vectors.row(k).begin());
        sorted.vectors.set_id(k, table.vectors.id(order[k]));
        sorted.weights[k] = std::move(table.weights[order[k]]);
    }
    table = std::move(sorted);
}

/// Rebuilds the full assignment from one code per partition block.
inline Assignment decode_codes(std::span<const std::uint64_t> codes, const VariablePartition& partition) {
    if (codes.size() != partition.parts.size()) {
        throw ContractViolation("decode: expected " + std::to_string(partition.parts.size()) + " codes");
    }
    Assignment x(partition.n);
    for (std::size_t p = 0; p < codes.size(); ++p) {
        const auto& blk = partition.parts[p];
        if (blk.size < 64 && (codes[p] >> blk.size) != 0) {
            throw ContractViolation("decode: code " + std::to_string(codes[p]) + " out of range for a block of " +
                                    std::to_string(blk.size) + " variables");
        }
        for (std::size_t t = 0; t < blk.size; ++t) x.set(blk.begin + t, (codes[p] >> t) & 1u);
    }
    return x;
}

inline Assignment decode_witness(std::uint64_t u_code, std::uint64_t v_code, const VariablePartition& partition) {
    const std::uint64_t codes[2] = {u_code, v_code};
    return decode_codes(codes, partition);
}

/// Exact residual check, or |Ax - b|_i <= eps per row in tolerant mode.
inline bool verify_assignment(const Instance& inst, const Assignment& x, const CompareMode& mode) {
    auto ev = evaluate(inst, x);
    if (mode.is_exact()) return ev.feasible();
    return std::all_of(ev.residual.begin(), ev.residual.end(),
                       [&](const Rational& r) { return abs(r) <= mode.epsilon(); });
}

} // namespace eqip

#endif // EQIP_TABLES_HPP
