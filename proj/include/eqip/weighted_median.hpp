#ifndef EQIP_WEIGHTED_MEDIAN_HPP
#define EQIP_WEIGHTED_MEDIAN_HPP

#include <algorithm>
#include <cstddef>
#include <iterator>
#include <tuple>
#include <utility>
#include <vector>

#include "eqip/errors.hpp"

namespace eqip {

/// Pivot choice inside weighted selection. median_of_medians gives the
/// worst-case linear bound; median_of_three is a cheaper heuristic without one.
enum class PivotRule { median_of_medians, median_of_three };

namespace detail {

template <typename It, typename Less>
void insertion_sort(It first, It last, Less less) {
    if (first == last) return;
    for (It i = std::next(first); i != last; ++i) {
        for (It j = i; j != first && less(*j, *std::prev(j)); --j) std::iter_swap(j, std::prev(j));
    }
}

/// Rearranges [first, last) into [< pivot | == pivot | > pivot]; returns the
/// bounds of the middle run.
template <typename It, typename T, typename Less>
std::pair<It, It> partition3(It first, It last, const T& pivot, Less less) {
    It lt = first;
    It i = first;
    It gt = last;
    while (i != gt) {
        if (less(*i, pivot)) {
            std::iter_swap(lt++, i++);
        } else if (less(pivot, *i)) {
            std::iter_swap(i, --gt);
        } else {
            ++i;
        }
    }
    return {lt, gt};
}

/// Deterministic linear-time selection (groups of five, median of medians).
/// Places the k-th smallest element at first + k and returns it.
template <typename It, typename Less>
It mom_select(It first, It last, std::size_t k, Less less) {
    for (;;) {
        auto n = static_cast<std::size_t>(std::distance(first, last));
        if (n <= 10) {
            insertion_sort(first, last, less);
            return first + k;
        }
        std::size_t groups = 0;
        for (std::size_t g = 0; g < n; g += 5) {
            It gb = first + g;
            It ge = first + std::min(g + 5, n);
            insertion_sort(gb, ge, less);
            std::iter_swap(first + groups, gb + (std::distance(gb, ge) - 1) / 2);
            ++groups;
        }
        auto pivot = *mom_select(first, first + groups, (groups - 1) / 2, less);
        auto [eq_begin, eq_end] = partition3(first, last, pivot, less);
        auto lt_size = static_cast<std::size_t>(std::distance(first, eq_begin));
        auto eq_size = static_cast<std::size_t>(std::distance(eq_begin, eq_end));
        if (k < lt_size) {
            last = eq_begin;
        } else if (k < lt_size + eq_size) {
            return first + k;
        } else {
            k -= lt_size + eq_size;
            first = eq_end;
        }
    }
}

} // namespace detail

/// Weighted selection over [first, last): returns an iterator to an element k
/// such that the total weight of elements strictly below k and the total
/// weight strictly above k are each at most half the total weight.
/// Reorders the range. Weights must be positive.
template <typename It, typename Less, typename WeightOf>
It weighted_median_select(It first, It last, Less less, WeightOf weight_of,
                          PivotRule rule = PivotRule::median_of_medians) {
    using W = std::decay_t<decltype(weight_of(*first))>;
    if (first == last) throw ContractViolation("weighted median of an empty set");

    W total{};
    for (It i = first; i != last; ++i) total += weight_of(*i);
    auto exceeds_half = [&](const W& w) { return total < w + w; };

    W below{};
    W above{};
    for (;;) {
        auto n = static_cast<std::size_t>(std::distance(first, last));
        if (n <= 5) {
            detail::insertion_sort(first, last, less);
            W before = below;
            for (It g = first; g != last;) {
                It h = g;
                W run{};
                while (h != last && !less(*g, *h)) run += weight_of(*h++);
                W after{};
                for (It t = h; t != last; ++t) after += weight_of(*t);
                if (!exceeds_half(before) && !exceeds_half(after + above)) return g;
                before += run;
                g = h;
            }
            throw ContractViolation("weighted median: nonpositive weight");
        }

        auto pivot = [&] {
            if (rule == PivotRule::median_of_three) {
                auto a = *first;
                auto b = *(first + n / 2);
                auto c = *(last - 1);
                if (less(b, a)) std::swap(a, b);
                if (less(c, b)) std::swap(b, c);
                if (less(b, a)) std::swap(a, b);
                return b;
            }
            return *detail::mom_select(first, last, (n - 1) / 2, less);
        }();

        auto [eq_begin, eq_end] = detail::partition3(first, last, pivot, less);
        W w_lt{}, w_eq{}, w_gt{};
        for (It i = first; i != eq_begin; ++i) w_lt += weight_of(*i);
        for (It i = eq_begin; i != eq_end; ++i) w_eq += weight_of(*i);
        for (It i = eq_end; i != last; ++i) w_gt += weight_of(*i);

        if (exceeds_half(below + w_lt)) {
            above += w_eq + w_gt;
            last = eq_begin;
        } else if (exceeds_half(above + w_gt)) {
            below += w_lt + w_eq;
            first = eq_end;
        } else {
            return eq_begin;
        }
    }
}

/// Value form: items are (value, weight) pairs with positive weights.
template <typename T, typename W>
T weighted_median(std::vector<std::pair<T, W>> items, PivotRule rule = PivotRule::median_of_medians) {
    if (items.empty()) throw ContractViolation("weighted median of an empty set");
    for (const auto& it : items) {
        if (!(W{} < it.second)) throw ContractViolation("weighted median: weights must be positive");
    }
    auto less = [](const std::pair<T, W>& a, const std::pair<T, W>& b) { return a.first < b.first; };
    auto weight = [](const std::pair<T, W>& a) -> const W& { return a.second; };
    return weighted_median_select(items.begin(), items.end(), less, weight, rule)->first;
}

} // namespace eqip

#endif // EQIP_WEIGHTED_MEDIAN_HPP
