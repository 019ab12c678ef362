#ifndef EQIP_GENERATOR_HPP
#define EQIP_GENERATOR_HPP

#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "eqip/errors.hpp"
#include "eqip/instance.hpp"

namespace eqip {

enum class Family { random, planted, subset_sum };

inline const char* to_string(Family f) {
    switch (f) {
    case Family::random: return "random";
    case Family::planted: return "planted";
    case Family::subset_sum: return "subset-sum";
    }
    return "?";
}

struct GenSpec {
    Family family = Family::random;
    std::size_t n = 8;
    std::size_t m = 1;
    std::uint64_t seed = 1;
    std::int64_t range = 5;     // coefficients drawn from [-range, range]
    double density = 1.0;       // probability an entry of A (or b, for random) is nonzero-eligible
    bool with_objective = false; // c uniform in [-range, range]
    bool planted_target = true;  // subset-sum: target is a subset sum (else uniform in [0, sum])
};

/// Name of the pseudo-random stream; recorded with every generated instance.
constexpr const char* generator_rng_name = "mt19937_64";

inline void validate_gen_spec(const GenSpec& spec) {
    std::vector<std::string> v;
    if (spec.n == 0) v.push_back("n must be positive");
    if (spec.range < 1) v.push_back("range must be at least 1");
    if (!(spec.density > 0.0 && spec.density <= 1.0)) v.push_back("density must lie in (0, 1]");
    if (!v.empty()) throw ValidationError(std::move(v));
}

inline std::string describe(const GenSpec& spec) {
    std::ostringstream os;
    os << "gen family=" << to_string(spec.family) << " n=" << spec.n
       << " m=" << (spec.family == Family::subset_sum ? 1 : spec.m) << " seed=" << spec.seed
       << " range=" << spec.range << " density=" << spec.density << " objective=" << (spec.with_objective ? 1 : 0);
    if (spec.family == Family::subset_sum) os << " target=" << (spec.planted_target ? "planted" : "uniform");
    os << " rng=" << generator_rng_name;
    return os.str();
}

namespace detail {

/// Draw sequence is part of the reproducibility contract: uniform integers use
/// rejection on the raw 64-bit output, Bernoulli trials use its top 53 bits.
class GenStream {
public:
    explicit GenStream(std::uint64_t seed) : rng_(seed) {}

    std::int64_t uniform(std::int64_t lo, std::int64_t hi) {
        const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
        const std::uint64_t threshold = (std::uint64_t{0} - span) % span;
        std::uint64_t x;
        do {
            x = rng_();
        } while (x < threshold);
        return lo + static_cast<std::int64_t>(x % span);
    }

    bool bernoulli(double p) { return static_cast<double>(rng_() >> 11) * 0x1.0p-53 < p; }
    bool bit() { return (rng_() & 1u) != 0; }

private:
    std::mt19937_64 rng_;
};

inline std::vector<std::vector<Rational>> draw_matrix(GenStream& g, const GenSpec& spec) {
    std::vector<std::vector<Rational>> rows(spec.m, std::vector<Rational>(spec.n));
    for (auto& row : rows) {
        for (auto& a : row) {
            if (g.bernoulli(spec.density)) a = g.uniform(-spec.range, spec.range);
        }
    }
    return rows;
}

inline std::optional<std::vector<Rational>> draw_objective(GenStream& g, const GenSpec& spec) {
    if (!spec.with_objective) return std::nullopt;
    std::vector<Rational> c(spec.n);
    for (auto& v : c) v = g.uniform(-spec.range, spec.range);
    return c;
}

} // namespace detail

/// Uniform integer instance; A and b entries are zeroed with probability 1 - density.
inline Instance gen_random(const GenSpec& spec) {
    validate_gen_spec(spec);
    if (spec.family != Family::random) throw ContractViolation("gen_random needs the random family");
    detail::GenStream g(spec.seed);
    RawInstance raw;
    raw.n = spec.n;
    raw.m = spec.m;
    raw.rows = detail::draw_matrix(g, spec);
    raw.b.resize(spec.m);
    for (auto& v : raw.b) {
        if (g.bernoulli(spec.density)) v = g.uniform(-spec.range, spec.range);
    }
    raw.c = detail::draw_objective(g, spec);
    return validate_instance(raw);
}

/// Random A and x*, with b := A x*. Feasible by construction.
inline std::pair<Instance, Assignment> gen_planted(const GenSpec& spec) {
    validate_gen_spec(spec);
    if (spec.family != Family::planted) throw ContractViolation("gen_planted needs the planted family");
    detail::GenStream g(spec.seed);
    RawInstance raw;
    raw.n = spec.n;
    raw.m = spec.m;
    raw.rows = detail::draw_matrix(g, spec);
    Assignment x(spec.n);
    for (std::size_t j = 0; j < spec.n; ++j) x.set(j, g.bit());
    raw.b.resize(spec.m);
    for (std::size_t i = 0; i < spec.m; ++i) {
        for (std::size_t j = 0; j < spec.n; ++j) {
            if (x[j]) raw.b[i] += raw.rows[i][j];
        }
    }
    raw.c = detail::draw_objective(g, spec);
    return {validate_instance(raw), std::move(x)};
}

/// Single-row instance sum_{j in subset} weights_j with the given target.
inline Instance subset_sum_instance(const std::vector<Rational>& weights, const Rational& target,
                                    std::optional<std::vector<Rational>> c = std::nullopt) {
    RawInstance raw;
    raw.n = weights.size();
    raw.m = 1;
    raw.rows = {weights};
    raw.b = {target};
    raw.c = std::move(c);
    return validate_instance(raw);
}

/// Subset-sum: positive weights in [1, range], m = 1. The target is either the
/// sum of a random subset (always feasible) or uniform in [0, sum of weights].
inline Instance gen_subset_sum(const GenSpec& spec) {
    validate_gen_spec(spec);
    if (spec.family != Family::subset_sum) throw ContractViolation("gen_subset_sum needs the subset-sum family");
    detail::GenStream g(spec.seed);
    std::vector<Rational> w(spec.n);
    std::int64_t total = 0;
    for (auto& v : w) {
        auto a = g.uniform(1, spec.range);
        v = a;
        total += a;
    }
    Rational target;
    if (spec.planted_target) {
        for (std::size_t j = 0; j < spec.n; ++j) {
            if (g.bit()) target += w[j];
        }
    } else {
        target = g.uniform(0, total);
    }
    return subset_sum_instance(w, target, detail::draw_objective(g, spec));
}

} // namespace eqip

#endif // EQIP_GENERATOR_HPP
