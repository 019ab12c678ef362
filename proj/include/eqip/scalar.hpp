#ifndef EQIP_SCALAR_HPP
#define EQIP_SCALAR_HPP

#include <charconv>
#include <cmath>
#include <compare>
#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "eqip/errors.hpp"
#include "eqip/rational.hpp"

namespace eqip {

/// How two scalars are tested for equality.
///
/// Exact compares by value. Tolerant(eps) treats |a - b| <= eps as equal and
/// otherwise falls back to the sign of a - b. Tolerant equality is not
/// transitive, so nothing in the library sorts under it.
class CompareMode {
public:
    enum class Kind { exact, tolerant };

    static CompareMode exact() { return CompareMode(); }

    static CompareMode tolerant(const Rational& epsilon) {
        if (epsilon.sign() < 0) throw ContractViolation("tolerance must be nonnegative");
        CompareMode m;
        m.kind_ = Kind::tolerant;
        m.epsilon_ = epsilon;
        m.epsilon_d_ = epsilon.to_double();
        return m;
    }

    static CompareMode tolerant(double epsilon) { return tolerant(Rational::from_double(epsilon)); }

    Kind kind() const noexcept { return kind_; }
    bool is_exact() const noexcept { return kind_ == Kind::exact; }
    const Rational& epsilon() const noexcept { return epsilon_; }
    double epsilon_double() const noexcept { return epsilon_d_; }

    std::string name() const { return is_exact() ? "exact" : "tolerant(" + epsilon_.str() + ")"; }

private:
    CompareMode() = default;

    Kind kind_ = Kind::exact;
    Rational epsilon_;
    double epsilon_d_ = 0.0;
};

/// Compile-time facts about the scalar types the solvers are instantiated with.
template <typename S>
struct ScalarTraits;

template <>
struct ScalarTraits<Rational> {
    static constexpr bool exact = true;
    static constexpr const char* name = "exact";
    static const Rational& from_rational(const Rational& r) { return r; }
};

template <>
struct ScalarTraits<double> {
    static constexpr bool exact = false;
    static constexpr const char* name = "float";
    static double from_rational(const Rational& r) { return r.to_double(); }
};

inline std::weak_ordering compare_scalars(const Rational& a, const Rational& b, const CompareMode& mode) {
    if (mode.is_exact()) return a <=> b;
    Rational diff = a - b;
    if (abs(diff) <= mode.epsilon()) return std::weak_ordering::equivalent;
    return diff.sign() < 0 ? std::weak_ordering::less : std::weak_ordering::greater;
}

inline std::weak_ordering compare_scalars(double a, double b, const CompareMode& mode) {
    if (mode.is_exact()) {
        if (a < b) return std::weak_ordering::less;
        if (b < a) return std::weak_ordering::greater;
        return std::weak_ordering::equivalent;
    }
    double diff = a - b;
    if (std::fabs(diff) <= mode.epsilon_double()) return std::weak_ordering::equivalent;
    return diff < 0 ? std::weak_ordering::less : std::weak_ordering::greater;
}

/// Lexicographic comparison: the first coordinate that differs (under `mode`) decides.
template <typename S>
std::weak_ordering compare_lex(std::span<const S> u, std::span<const S> v, const CompareMode& mode) {
    if (u.size() != v.size()) {
        throw ContractViolation("compare_lex: dimension mismatch (" + std::to_string(u.size()) + " vs " +
                                std::to_string(v.size()) + ")");
    }
    for (std::size_t i = 0; i < u.size(); ++i) {
        auto c = compare_scalars(u[i], v[i], mode);
        if (c != 0) return c;
    }
    return std::weak_ordering::equivalent;
}

template <typename S>
std::weak_ordering compare_lex(const std::vector<S>& u, const std::vector<S>& v, const CompareMode& mode) {
    return compare_lex(std::span<const S>(u), std::span<const S>(v), mode);
}

/// Strict value order on vectors, used for every sort regardless of mode.
template <typename S>
bool lex_less(std::span<const S> u, std::span<const S> v) {
    for (std::size_t i = 0; i < u.size(); ++i) {
        if (u[i] < v[i]) return true;
        if (v[i] < u[i]) return false;
    }
    return false;
}

/// Parses "-?d+", "-?d+.d+" or "-?d+/d+" into an exact rational.
/// Errors report the 1-based column of the offending character.
inline Rational parse_scalar(std::string_view token) {
    std::size_t pos = 0;
    bool negative = false;
    if (pos < token.size() && token[pos] == '-') {
        negative = true;
        ++pos;
    }
    auto digits = [&](const char* what) {
        std::size_t start = pos;
        while (pos < token.size() && token[pos] >= '0' && token[pos] <= '9') ++pos;
        if (pos == start) {
            if (pos < token.size()) {
                throw ParseError(std::string("expected digit in ") + what + ", found '" + token[pos] + "'", 0,
                                 pos + 1);
            }
            throw ParseError(std::string("expected digit in ") + what + ", found end of token", 0, pos + 1);
        }
        return std::string(token.substr(start, pos - start));
    };

    std::string whole = digits("integer part");
    mpz_class num(whole, 10);
    mpz_class den(1);
    if (pos < token.size()) {
        char sep = token[pos];
        if (sep == '.') {
            ++pos;
            std::string frac = digits("fractional part");
            mpz_class scale;
            mpz_ui_pow_ui(scale.get_mpz_t(), 10, frac.size());
            num = num * scale + mpz_class(frac, 10);
            den = scale;
        } else if (sep == '/') {
            ++pos;
            std::size_t den_col = pos + 1;
            den = mpz_class(digits("denominator"), 10);
            if (den == 0) throw ParseError("zero denominator", 0, den_col);
        } else {
            throw ParseError(std::string("unexpected character '") + sep + "'", 0, pos + 1);
        }
        if (pos < token.size()) {
            throw ParseError(std::string("unexpected character '") + token[pos] + "'", 0, pos + 1);
        }
    }
    if (negative) num = -num;
    return Rational(mpq_class(num, den));
}

inline std::string render_scalar(const Rational& r) { return r.str(); }

/// Shortest round-trip decimal.
inline std::string render_scalar(double d) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof buf, d);
    return std::string(buf, res.ptr);
}

} // namespace eqip

#endif // EQIP_SCALAR_HPP
