#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace hdist {

inline constexpr unsigned kDefaultPrecisionBits = 53;

enum class Rounding { down, up };

// Exact binary fraction mantissa * 2^exponent. The mantissa is kept odd
// (or zero with exponent 0), so structural equality is value equality.
class Dyadic {
public:
    Dyadic() = default;
    Dyadic(mpz_class mantissa, long exponent);
    explicit Dyadic(long value) : Dyadic(mpz_class(value), 0) {}
    explicit Dyadic(const mpz_class& value) : Dyadic(value, 0) {}

    const mpz_class& mantissa() const noexcept { return mantissa_; }
    long exponent() const noexcept { return exponent_; }
    int sign() const noexcept { return sgn(mantissa_); }
    bool is_zero() const noexcept { return sign() == 0; }

    mpq_class to_rational() const;
    double to_double() const;

    // Round to at most `bits` significant bits in the given direction.
    Dyadic rounded(unsigned bits, Rounding dir) const;

    // Directed rational approximation of an exact rational, `bits`
    // significant bits beyond the integer part of the denominator.
    static Dyadic from_rational(const mpq_class& q, unsigned bits, Rounding dir);

    // a / b rounded in direction dir; b must be nonzero.
    static Dyadic quotient(const Dyadic& a, const Dyadic& b, unsigned bits, Rounding dir);

    // Decimal text with at most `frac_digits` digits after the point,
    // rounded in direction dir; trailing zeros trimmed.
    std::string to_decimal(Rounding dir, unsigned frac_digits = 20) const;

    friend Dyadic operator+(const Dyadic& a, const Dyadic& b);
    friend Dyadic operator-(const Dyadic& a, const Dyadic& b);
    friend Dyadic operator*(const Dyadic& a, const Dyadic& b);
    Dyadic operator-() const { return Dyadic(-mantissa_, exponent_); }

    friend std::strong_ordering operator<=>(const Dyadic& a, const Dyadic& b);
    friend bool operator==(const Dyadic& a, const Dyadic& b) {
        return a.exponent_ == b.exponent_ && a.mantissa_ == b.mantissa_;
    }

private:
    mpz_class mantissa_{0};
    long exponent_ = 0;
};

std::strong_ordering compare(const Dyadic& a, const mpq_class& q);

const Dyadic& min(const Dyadic& a, const Dyadic& b);
const Dyadic& max(const Dyadic& a, const Dyadic& b);

// Certified enclosure [lo, hi] of a real height value, in nats.
class HeightInterval {
public:
    HeightInterval() = default;  // exact zero
    HeightInterval(Dyadic lo, Dyadic hi);
    static HeightInterval exact(const Dyadic& v) { return {v, v}; }
    static HeightInterval exact_zero() { return {}; }

    const Dyadic& lo() const noexcept { return lo_; }
    const Dyadic& hi() const noexcept { return hi_; }

    bool is_exact_zero() const noexcept { return lo_.is_zero() && hi_.is_zero(); }
    bool is_point() const noexcept { return lo_ == hi_; }
    Dyadic width() const { return hi_ - lo_; }
    Dyadic midpoint_times_two() const { return lo_ + hi_; }

    bool contains(const Dyadic& v) const { return lo_ <= v && v <= hi_; }
    bool contains(const mpq_class& v) const;
    bool contains(const HeightInterval& other) const {
        return lo_ <= other.lo_ && other.hi_ <= hi_;
    }
    bool overlaps(const HeightInterval& other) const {
        return lo_ <= other.hi_ && other.lo_ <= hi_;
    }

    friend bool operator==(const HeightInterval&, const HeightInterval&) = default;

private:
    Dyadic lo_;
    Dyadic hi_;
};

// Operations on enclosures. Results enclose the exact real operation applied
// to every pair of reals drawn from the operands.
namespace interval {

inline constexpr unsigned kScaleBits = 128;

HeightInterval add(const HeightInterval& a, const HeightInterval& b);
HeightInterval sub(const HeightInterval& a, const HeightInterval& b);
HeightInterval scale(const HeightInterval& a, const mpq_class& q, unsigned bits = kScaleBits);
HeightInterval abs_diff(const HeightInterval& a, const HeightInterval& b);
HeightInterval max(const HeightInterval& a, const HeightInterval& b);
HeightInterval abs(const HeightInterval& a);
// Widen both ends by a nonnegative amount.
HeightInterval widen(const HeightInterval& a, const Dyadic& by);

}  // namespace interval

// Enclosure of log(n) with outward rounding; width is at most
// 2^(1-precision_bits) * max(1, log n). log 1 is the exact-zero interval.
HeightInterval log_enclosure(const mpz_class& n, unsigned precision_bits = kDefaultPrecisionBits);

// log(q) for a positive rational, via log(num) - log(den).
HeightInterval log_enclosure(const mpq_class& q, unsigned precision_bits = kDefaultPrecisionBits);

// Parses "3", "-2/7", "0.001", "1e-6", "2.5E3" exactly.
mpq_class parse_rational(std::string_view text);

std::string to_string(const mpq_class& q);

mpz_class ipow(const mpz_class& base, unsigned long exponent);

inline int cmpabs(const mpz_class& a, const mpz_class& b) { return mpz_cmpabs(a.get_mpz_t(), b.get_mpz_t()); }

}  // namespace hdist
