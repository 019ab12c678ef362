#ifndef EQIP_RATIONAL_HPP
#define EQIP_RATIONAL_HPP

#include <cmath>
#include <compare>
#include <concepts>
#include <cstdint>
#include <limits>
#include <ostream>
#include <stdexcept>
#include <string>
#include <utility>

#include <gmpxx.h>

namespace eqip {

namespace detail {

using i128 = __int128;
using u128 = unsigned __int128;

inline u128 gcd_u128(u128 a, u128 b) noexcept {
    while (b != 0) {
        u128 t = a % b;
        a = b;
        b = t;
    }
    return a;
}

inline u128 abs_u128(i128 v) noexcept {
    return v < 0 ? u128(0) - u128(v) : u128(v);
}

inline mpz_class mpz_from_u128(u128 v) {
    mpz_class hi(static_cast<unsigned long>(static_cast<std::uint64_t>(v >> 64)));
    mpz_class lo(static_cast<unsigned long>(static_cast<std::uint64_t>(v)));
    return (hi << 64) + lo;
}

inline mpz_class mpz_from_i128(i128 v) {
    mpz_class r = mpz_from_u128(abs_u128(v));
    if (v < 0) r = -r;
    return r;
}

// Small values exclude INT64_MIN so negation never overflows.
constexpr std::int64_t small_max = std::numeric_limits<std::int64_t>::max();

inline bool fits_small(const mpz_class& z) {
    return mpz_fits_slong_p(z.get_mpz_t()) != 0 && z.get_si() != std::numeric_limits<long>::min();
}

} // namespace detail

/// Exact rational number in canonical form (reduced, positive denominator).
///
/// Values whose numerator and denominator fit in 63 bits are stored inline and
/// handled with 128-bit intermediates; anything larger is promoted to a GMP
/// rational. Results are demoted again whenever they fit, so equal values have
/// identical representations.
class Rational {
public:
    Rational() noexcept : num_(0), den_(1) {}

    template <std::integral I>
    Rational(I value) : num_(0), den_(1) { // NOLINT: implicit by design of the numeric tower
        if constexpr (std::is_signed_v<I>) {
            assign_i128(detail::i128(value), 1);
        } else {
            assign_i128(detail::i128(static_cast<std::uint64_t>(value)), 1);
        }
    }

    Rational(std::int64_t numerator, std::int64_t denominator) : num_(0), den_(1) {
        if (denominator == 0) throw std::domain_error("rational with zero denominator");
        assign_i128(numerator, denominator);
    }

    explicit Rational(const mpq_class& q) : num_(0), den_(1) { assign_mpq(mpq_class(q)); }

    Rational(const Rational& other) : den_(other.den_) {
        if (other.is_small()) {
            num_ = other.num_;
        } else {
            big_ = new mpq_class(*other.big_);
        }
    }

    Rational(Rational&& other) noexcept : den_(other.den_) {
        if (other.is_small()) {
            num_ = other.num_;
        } else {
            big_ = other.big_;
            other.den_ = 1;
            other.num_ = 0;
        }
    }

    Rational& operator=(const Rational& other) {
        if (this != &other) {
            Rational tmp(other);
            swap(tmp);
        }
        return *this;
    }

    Rational& operator=(Rational&& other) noexcept {
        if (this != &other) {
            release();
            den_ = other.den_;
            if (other.is_small()) {
                num_ = other.num_;
            } else {
                big_ = other.big_;
                other.den_ = 1;
                other.num_ = 0;
            }
        }
        return *this;
    }

    ~Rational() { release(); }

    void swap(Rational& other) noexcept {
        std::swap(den_, other.den_);
        std::swap(num_, other.num_); // both union members are 8 bytes
    }

    /// Exact conversion of a finite double.
    static Rational from_double(double value) {
        if (!std::isfinite(value)) throw std::domain_error("non-finite double has no rational value");
        return Rational(mpq_class(value));
    }

    mpq_class to_mpq() const {
        if (is_small()) {
            mpq_class q(static_cast<long>(num_), static_cast<unsigned long>(den_));
            return q; // already canonical
        }
        return *big_;
    }

    mpz_class numerator() const { return is_small() ? mpz_class(static_cast<long>(num_)) : mpz_class(big_->get_num()); }
    mpz_class denominator() const { return is_small() ? mpz_class(static_cast<long>(den_)) : mpz_class(big_->get_den()); }

    double to_double() const {
        if (is_small()) return static_cast<double>(num_) / static_cast<double>(den_);
        return big_->get_d();
    }

    bool is_integer() const { return is_small() ? den_ == 1 : big_->get_den() == 1; }
    bool is_zero() const { return is_small() && num_ == 0; }
    bool is_inline() const noexcept { return is_small(); }

    int sign() const {
        if (is_small()) return (num_ > 0) - (num_ < 0);
        return sgn(*big_);
    }

    /// "p" for integers, "p/q" otherwise.
    std::string str() const {
        if (is_small()) {
            if (den_ == 1) return std::to_string(num_);
            return std::to_string(num_) + "/" + std::to_string(den_);
        }
        if (big_->get_den() == 1) return big_->get_num().get_str();
        return big_->get_num().get_str() + "/" + big_->get_den().get_str();
    }

    Rational operator-() const {
        if (is_small()) {
            Rational r;
            r.num_ = -num_;
            r.den_ = den_;
            return r;
        }
        return Rational(mpq_class(-*big_));
    }

    friend Rational operator+(const Rational& a, const Rational& b) {
        if (a.is_small() && b.is_small()) {
            if (a.den_ == 1 && b.den_ == 1) return from_i128(detail::i128(a.num_) + b.num_, 1);
            if (a.den_ == b.den_) return from_i128(detail::i128(a.num_) + b.num_, a.den_);
            return from_i128(detail::i128(a.num_) * b.den_ + detail::i128(b.num_) * a.den_,
                             detail::i128(a.den_) * b.den_);
        }
        return Rational(mpq_class(a.to_mpq() + b.to_mpq()));
    }

    friend Rational operator-(const Rational& a, const Rational& b) {
        if (a.is_small() && b.is_small()) {
            if (a.den_ == 1 && b.den_ == 1) return from_i128(detail::i128(a.num_) - b.num_, 1);
            if (a.den_ == b.den_) return from_i128(detail::i128(a.num_) - b.num_, a.den_);
            return from_i128(detail::i128(a.num_) * b.den_ - detail::i128(b.num_) * a.den_,
                             detail::i128(a.den_) * b.den_);
        }
        return Rational(mpq_class(a.to_mpq() - b.to_mpq()));
    }

    friend Rational operator*(const Rational& a, const Rational& b) {
        if (a.is_small() && b.is_small()) {
            return from_i128(detail::i128(a.num_) * b.num_, detail::i128(a.den_) * b.den_);
        }
        return Rational(mpq_class(a.to_mpq() * b.to_mpq()));
    }

    friend Rational operator/(const Rational& a, const Rational& b) {
        if (b.is_zero()) throw std::domain_error("division by zero");
        if (a.is_small() && b.is_small()) {
            return from_i128(detail::i128(a.num_) * b.den_, detail::i128(a.den_) * b.num_);
        }
        return Rational(mpq_class(a.to_mpq() / b.to_mpq()));
    }

    Rational& operator+=(const Rational& o) {
        if (is_small() && o.is_small() && den_ == 1 && o.den_ == 1) {
            detail::i128 s = detail::i128(num_) + o.num_;
            if (s <= detail::small_max && s >= -detail::small_max) {
                num_ = static_cast<std::int64_t>(s);
                return *this;
            }
        }
        return *this = *this + o;
    }
    Rational& operator-=(const Rational& o) {
        if (is_small() && o.is_small() && den_ == 1 && o.den_ == 1) {
            detail::i128 s = detail::i128(num_) - o.num_;
            if (s <= detail::small_max && s >= -detail::small_max) {
                num_ = static_cast<std::int64_t>(s);
                return *this;
            }
        }
        return *this = *this - o;
    }
    Rational& operator*=(const Rational& o) { return *this = *this * o; }
    Rational& operator/=(const Rational& o) { return *this = *this / o; }

    friend bool operator==(const Rational& a, const Rational& b) {
        // canonical form makes representation equality value equality
        if (a.is_small() != b.is_small()) return false;
        if (a.is_small()) return a.num_ == b.num_ && a.den_ == b.den_;
        return *a.big_ == *b.big_;
    }

    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
        if (a.is_small() && b.is_small()) {
            if (a.den_ == b.den_) return a.num_ <=> b.num_;
            detail::i128 l = detail::i128(a.num_) * b.den_;
            detail::i128 r = detail::i128(b.num_) * a.den_;
            return l < r ? std::strong_ordering::less
                         : (l > r ? std::strong_ordering::greater : std::strong_ordering::equal);
        }
        int c = cmp(a.to_mpq(), b.to_mpq());
        return c < 0 ? std::strong_ordering::less
                     : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
    }

    friend std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

private:
    bool is_small() const noexcept { return den_ != 0; }

    void release() noexcept {
        if (!is_small()) {
            delete big_;
            den_ = 1;
            num_ = 0;
        }
    }

    static Rational from_i128(detail::i128 num, detail::i128 den) {
        Rational r;
        r.assign_i128(num, den);
        return r;
    }

    // den != 0; magnitudes below 2^127
    void assign_i128(detail::i128 num, detail::i128 den) {
        if (den < 0) {
            num = -num;
            den = -den;
        }
        if (den != 1) {
            detail::u128 g = detail::gcd_u128(detail::abs_u128(num), detail::u128(den));
            if (g > 1) {
                num /= detail::i128(g);
                den /= detail::i128(g);
            }
        }
        if (num <= detail::small_max && num >= -detail::small_max && den <= detail::small_max) {
            release();
            num_ = static_cast<std::int64_t>(num);
            den_ = static_cast<std::int64_t>(den);
            return;
        }
        mpq_class q(detail::mpz_from_i128(num), detail::mpz_from_i128(den));
        assign_mpq(std::move(q)); // already reduced
    }

    void assign_mpq(mpq_class q) {
        q.canonicalize();
        if (detail::fits_small(q.get_num()) && detail::fits_small(q.get_den())) {
            release();
            num_ = q.get_num().get_si();
            den_ = q.get_den().get_si();
            return;
        }
        if (is_small()) {
            big_ = new mpq_class(std::move(q));
            den_ = 0;
        } else {
            *big_ = std::move(q);
        }
    }

    union {
        std::int64_t num_;
        mpq_class* big_;
    };
    std::int64_t den_; // 0 marks the GMP representation
};

inline void swap(Rational& a, Rational& b) noexcept { a.swap(b); }

inline Rational abs(const Rational& r) { return r.sign() < 0 ? -r : r; }

} // namespace eqip

#endif // EQIP_RATIONAL_HPP
