#ifndef EQIP_INSTANCE_HPP
#define EQIP_INSTANCE_HPP

#include <algorithm>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "eqip/errors.hpp"
#include "eqip/rational.hpp"

namespace eqip {

/// Unvalidated instance fields as they come out of a parser or generator.
struct RawInstance {
    std::size_t n = 0;
    std::size_t m = 0;
    std::vector<std::vector<Rational>> rows; // coefficient rows, b excluded
    std::vector<Rational> b;
    std::optional<std::vector<Rational>> c;
};

/// A 0-1 program: find x in {0,1}^n with Ax = b, optionally minimizing c^T x.
/// Immutable once built by validate_instance.
class Instance {
public:
    std::size_t n() const noexcept { return n_; }
    std::size_t m() const noexcept { return m_; }

    const Rational& a(std::size_t row, std::size_t col) const { return a_[row * n_ + col]; }
    std::span<const Rational> row(std::size_t i) const { return {a_.data() + i * n_, n_}; }
    std::span<const Rational> b() const noexcept { return b_; }

    bool has_objective() const noexcept { return c_.has_value(); }
    const std::optional<std::vector<Rational>>& objective() const noexcept { return c_; }

    /// c_j, or zero when the instance has no objective.
    Rational cost(std::size_t j) const { return c_ ? (*c_)[j] : Rational(0); }

    /// Advisory: the constraint count is expected to be polynomial in n.
    std::optional<std::string> size_warning() const {
        if (n_ < 63 && m_ >= (std::size_t{1} << n_)) {
            return "m = " + std::to_string(m_) + " is at least 2^n; the input dominates the search space";
        }
        return std::nullopt;
    }

    friend bool operator==(const Instance&, const Instance&) = default;

private:
    friend Instance validate_instance(const RawInstance& raw);

    std::size_t n_ = 0;
    std::size_t m_ = 0;
    std::vector<Rational> a_; // row-major m x n
    std::vector<Rational> b_;
    std::optional<std::vector<Rational>> c_;
};

inline Instance validate_instance(const RawInstance& raw) {
    std::vector<std::string> violations;
    if (raw.n == 0) violations.push_back("n must be positive");
    if (raw.rows.size() != raw.m) {
        violations.push_back("declared " + std::to_string(raw.m) + " rows, found " + std::to_string(raw.rows.size()));
    }
    for (std::size_t i = 0; i < raw.rows.size(); ++i) {
        if (raw.rows[i].size() != raw.n) {
            violations.push_back("row " + std::to_string(i + 1) + " has " + std::to_string(raw.rows[i].size()) +
                                 " of " + std::to_string(raw.n) + " entries");
        }
    }
    if (raw.b.size() != raw.m) {
        violations.push_back("b has " + std::to_string(raw.b.size()) + " of " + std::to_string(raw.m) + " entries");
    }
    if (raw.c && raw.c->size() != raw.n) {
        violations.push_back("c has " + std::to_string(raw.c->size()) + " of " + std::to_string(raw.n) + " entries");
    }
    if (!violations.empty()) throw ValidationError(std::move(violations));

    Instance inst;
    inst.n_ = raw.n;
    inst.m_ = raw.m;
    inst.a_.reserve(raw.n * raw.m);
    for (const auto& r : raw.rows) inst.a_.insert(inst.a_.end(), r.begin(), r.end());
    inst.b_ = raw.b;
    inst.c_ = raw.c;
    return inst;
}

/// A point of {0,1}^n, x_1 first.
class Assignment {
public:
    Assignment() = default;
    explicit Assignment(std::size_t n) : bits_(n, 0) {}
    explicit Assignment(std::vector<std::uint8_t> bits) : bits_(std::move(bits)) {
        for (auto b : bits_) {
            if (b > 1) throw ContractViolation("assignment bits must be 0 or 1");
        }
    }

    /// Parses a "0101" string.
    static Assignment from_string(const std::string& s) {
        std::vector<std::uint8_t> bits;
        bits.reserve(s.size());
        for (char ch : s) {
            if (ch != '0' && ch != '1') throw ContractViolation("assignment string must contain only 0 and 1");
            bits.push_back(static_cast<std::uint8_t>(ch - '0'));
        }
        return Assignment(std::move(bits));
    }

    std::size_t size() const noexcept { return bits_.size(); }
    std::uint8_t operator[](std::size_t j) const { return bits_[j]; }
    void set(std::size_t j, bool value) { bits_.at(j) = value ? 1 : 0; }
    std::span<const std::uint8_t> bits() const noexcept { return bits_; }

    std::string str() const {
        std::string s;
        s.reserve(bits_.size());
        for (auto b : bits_) s.push_back(static_cast<char>('0' + b));
        return s;
    }

    friend bool operator==(const Assignment&, const Assignment&) = default;
    friend auto operator<=>(const Assignment&, const Assignment&) = default;

private:
    std::vector<std::uint8_t> bits_;
};

struct Evaluation {
    std::vector<Rational> residual; // Ax - b
    Rational objective;             // c^T x, 0 without objective

    bool feasible() const {
        return std::all_of(residual.begin(), residual.end(), [](const Rational& r) { return r.is_zero(); });
    }
};

inline Evaluation evaluate(const Instance& inst, const Assignment& x) {
    if (x.size() != inst.n()) {
        throw ContractViolation("evaluate: assignment has " + std::to_string(x.size()) + " bits, instance has " +
                                std::to_string(inst.n()) + " variables");
    }
    Evaluation ev;
    ev.residual.reserve(inst.m());
    for (std::size_t i = 0; i < inst.m(); ++i) {
        Rational s;
        for (std::size_t j = 0; j < inst.n(); ++j) {
            if (x[j]) s += inst.a(i, j);
        }
        ev.residual.push_back(s - inst.b()[i]);
    }
    if (inst.has_objective()) {
        for (std::size_t j = 0; j < inst.n(); ++j) {
            if (x[j]) ev.objective += inst.cost(j);
        }
    }
    return ev;
}

/// Contiguous block [begin, begin + size) of 0-based variable indices.
struct VariableBlock {
    std::size_t begin = 0;
    std::size_t size = 0;

    friend bool operator==(const VariableBlock&, const VariableBlock&) = default;
};

struct VariablePartition {
    std::size_t n = 0;
    std::vector<VariableBlock> parts;

    friend bool operator==(const VariablePartition&, const VariablePartition&) = default;
};

/// Splits x_1..x_n into k in {2, 4} contiguous blocks whose sizes differ by at
/// most one; the larger blocks come first.
inline VariablePartition split_variables(std::size_t n, std::size_t k) {
    if (n == 0) throw ContractViolation("split_variables: n must be positive");
    if (k != 2 && k != 4) throw ContractViolation("split_variables: k must be 2 or 4");
    VariablePartition p;
    p.n = n;
    std::size_t base = n / k;
    std::size_t extra = n % k;
    std::size_t at = 0;
    for (std::size_t i = 0; i < k; ++i) {
        std::size_t sz = base + (i < extra ? 1 : 0);
        p.parts.push_back({at, sz});
        at += sz;
    }
    return p;
}

enum class Status { infeasible, feasible, optimal };

inline const char* to_string(Status s) {
    switch (s) {
    case Status::infeasible: return "Infeasible";
    case Status::feasible: return "Feasible";
    case Status::optimal: return "Optimal";
    }
    return "?";
}

enum class Goal { feasibility, optimize, count, enumerate };

inline const char* to_string(Goal g) {
    switch (g) {
    case Goal::feasibility: return "feasibility";
    case Goal::optimize: return "optimize";
    case Goal::count: return "count";
    case Goal::enumerate: return "enumerate";
    }
    return "?";
}

/// Runtime counters attached to every outcome.
struct SolveStats {
    std::vector<std::uint64_t> table_sizes;
    std::uint64_t table_entries_built = 0; // for brute force: assignments scanned
    std::uint64_t comparisons = 0;         // vector comparisons during matching
    std::uint64_t peak_live_entries = 0;   // tables plus queue entries
    std::uint64_t peak_queue_entries = 0;
    std::uint64_t match_blocks = 0;
    std::uint64_t recursion_nodes = 0;
    bool early_exit = false;
    bool witness_verified = true; // float mode: residual within tolerance
    double wall_seconds = 0.0;
};

struct SolveOutcome {
    Status status = Status::infeasible;
    std::optional<Assignment> witness;
    std::optional<Rational> objective;
    std::optional<mpz_class> solution_count;
    std::vector<Assignment> solutions; // populated by the enumerate goal
    SolveStats stats;
};

} // namespace eqip

#endif // EQIP_INSTANCE_HPP
