#include "numerics.hpp"

#include <cmath>
#include <utility>

#include <mpfr.h>

#include "errors.hpp"

namespace hdist {

namespace {

std::size_t bit_length(const mpz_class& v) {
    return sgn(v) == 0 ? 0 : mpz_sizeinbase(v.get_mpz_t(), 2);
}

mpz_class shifted_left(const mpz_class& v, unsigned long bits) {
    mpz_class out;
    mpz_mul_2exp(out.get_mpz_t(), v.get_mpz_t(), bits);
    return out;
}

// RAII holder for an mpfr_t.
class MpfrValue {
public:
    explicit MpfrValue(mpfr_prec_t precision) { mpfr_init2(value_, precision); }
    ~MpfrValue() { mpfr_clear(value_); }
    MpfrValue(const MpfrValue&) = delete;
    MpfrValue& operator=(const MpfrValue&) = delete;

    mpfr_ptr get() { return value_; }

    Dyadic to_dyadic() const {
        mpz_class mantissa;
        mpfr_exp_t exponent = mpfr_get_z_2exp(mantissa.get_mpz_t(), value_);
        return Dyadic(mantissa, static_cast<long>(exponent));
    }

private:
    mpfr_t value_;
};

}  // namespace

const char* to_string(ErrorKind kind) noexcept {
    switch (kind) {
        case ErrorKind::invalid_argument: return "invalid-argument";
        case ErrorKind::parse: return "parse";
        case ErrorKind::domain: return "domain";
        case ErrorKind::inhomogeneous: return "inhomogeneous";
        case ErrorKind::degree_mismatch: return "degree-mismatch";
        case ErrorKind::degenerate_point: return "degenerate-point";
        case ErrorKind::base_locus: return "base-locus";
        case ErrorKind::not_morphism: return "not-a-morphism";
        case ErrorKind::unverified_morphism: return "unverified-morphism";
        case ErrorKind::invalid_certificate: return "invalid-certificate";
        case ErrorKind::wrong_point_count: return "wrong-point-count";
        case ErrorKind::degenerate_configuration: return "degenerate-configuration";
        case ErrorKind::inconsistent_values: return "inconsistent-values";
        case ErrorKind::singular_matrix: return "singular-matrix";
        case ErrorKind::empty_sample: return "empty-sample";
        case ErrorKind::resource_ceiling: return "resource-ceiling";
        case ErrorKind::internal: return "internal";
    }
    return "unknown";
}

// ---------------------------------------------------------------------------
// Dyadic

Dyadic::Dyadic(mpz_class mantissa, long exponent)
    : mantissa_(std::move(mantissa)), exponent_(exponent) {
    if (sgn(mantissa_) == 0) {
        exponent_ = 0;
        return;
    }
    mp_bitcnt_t zeros = mpz_scan1(mantissa_.get_mpz_t(), 0);
    if (zeros > 0) {
        mpz_tdiv_q_2exp(mantissa_.get_mpz_t(), mantissa_.get_mpz_t(), zeros);
        exponent_ += static_cast<long>(zeros);
    }
}

mpq_class Dyadic::to_rational() const {
    if (exponent_ >= 0) {
        return mpq_class(shifted_left(mantissa_, static_cast<unsigned long>(exponent_)));
    }
    mpq_class q(mantissa_, shifted_left(mpz_class(1), static_cast<unsigned long>(-exponent_)));
    q.canonicalize();
    return q;
}

double Dyadic::to_double() const {
    if (is_zero()) return 0.0;
    mpz_class m = mantissa_;
    long e = exponent_;
    std::size_t bits = bit_length(m);
    if (bits > 62) {
        mpz_tdiv_q_2exp(m.get_mpz_t(), m.get_mpz_t(), bits - 62);
        e += static_cast<long>(bits - 62);
    }
    return std::ldexp(static_cast<double>(m.get_si()), static_cast<int>(e));
}

Dyadic Dyadic::rounded(unsigned bits, Rounding dir) const {
    std::size_t size = bit_length(mantissa_);
    if (size <= bits) return *this;
    mp_bitcnt_t drop = size - bits;
    mpz_class m;
    if (dir == Rounding::down) {
        mpz_fdiv_q_2exp(m.get_mpz_t(), mantissa_.get_mpz_t(), drop);
    } else {
        mpz_cdiv_q_2exp(m.get_mpz_t(), mantissa_.get_mpz_t(), drop);
    }
    return Dyadic(m, exponent_ + static_cast<long>(drop));
}

Dyadic Dyadic::from_rational(const mpq_class& q, unsigned bits, Rounding dir) {
    if (sgn(q) == 0) return Dyadic();
    const mpz_class& num = q.get_num();
    const mpz_class& den = q.get_den();
    if (den == 1) return Dyadic(num, 0);
    long shift = static_cast<long>(bits) + static_cast<long>(bit_length(den)) -
                 static_cast<long>(bit_length(num)) + 1;
    mpz_class n = num;
    mpz_class dd = den;
    if (shift >= 0) {
        n = shifted_left(num, static_cast<unsigned long>(shift));
    } else {
        dd = shifted_left(den, static_cast<unsigned long>(-shift));
    }
    mpz_class out;
    if (dir == Rounding::down) {
        mpz_fdiv_q(out.get_mpz_t(), n.get_mpz_t(), dd.get_mpz_t());
    } else {
        mpz_cdiv_q(out.get_mpz_t(), n.get_mpz_t(), dd.get_mpz_t());
    }
    return Dyadic(out, -shift);
}

Dyadic Dyadic::quotient(const Dyadic& a, const Dyadic& b, unsigned bits, Rounding dir) {
    if (b.is_zero()) throw Error(ErrorKind::domain, "division by zero");
    mpq_class q(a.mantissa_, b.mantissa_);
    q.canonicalize();
    Dyadic r = from_rational(q, bits, dir);
    return Dyadic(r.mantissa_, r.exponent_ + a.exponent_ - b.exponent_);
}

std::string Dyadic::to_decimal(Rounding dir, unsigned frac_digits) const {
    if (exponent_ >= 0) {
        return shifted_left(mantissa_, static_cast<unsigned long>(exponent_)).get_str();
    }
    mpz_class ten_k;
    mpz_ui_pow_ui(ten_k.get_mpz_t(), 10, frac_digits);
    mpz_class scaled = mantissa_ * ten_k;
    mpz_class q;
    if (dir == Rounding::down) {
        mpz_fdiv_q_2exp(q.get_mpz_t(), scaled.get_mpz_t(), static_cast<mp_bitcnt_t>(-exponent_));
    } else {
        mpz_cdiv_q_2exp(q.get_mpz_t(), scaled.get_mpz_t(), static_cast<mp_bitcnt_t>(-exponent_));
    }
    bool negative = sgn(q) < 0;
    mpz_class mag = abs(q);
    std::string digits = mag.get_str();
    if (digits.size() <= frac_digits) {
        digits.insert(0, frac_digits + 1 - digits.size(), '0');
    }
    std::string int_part = digits.substr(0, digits.size() - frac_digits);
    std::string frac_part = digits.substr(digits.size() - frac_digits);
    while (!frac_part.empty() && frac_part.back() == '0') frac_part.pop_back();
    std::string out = negative ? "-" : "";
    out += int_part;
    if (!frac_part.empty()) out += "." + frac_part;
    if (out == "-0") out = "0";
    return out;
}

Dyadic operator+(const Dyadic& a, const Dyadic& b) {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    long e = std::min(a.exponent_, b.exponent_);
    mpz_class sum = shifted_left(a.mantissa_, static_cast<unsigned long>(a.exponent_ - e)) +
                    shifted_left(b.mantissa_, static_cast<unsigned long>(b.exponent_ - e));
    return Dyadic(sum, e);
}

Dyadic operator-(const Dyadic& a, const Dyadic& b) { return a + (-b); }

Dyadic operator*(const Dyadic& a, const Dyadic& b) {
    return Dyadic(a.mantissa_ * b.mantissa_, a.exponent_ + b.exponent_);
}

std::strong_ordering operator<=>(const Dyadic& a, const Dyadic& b) {
    int s = (a - b).sign();
    if (s < 0) return std::strong_ordering::less;
    if (s > 0) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
}

std::strong_ordering compare(const Dyadic& a, const mpq_class& q) {
    int c = cmp(a.to_rational(), q);
    if (c < 0) return std::strong_ordering::less;
    if (c > 0) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
}

const Dyadic& min(const Dyadic& a, const Dyadic& b) { return b < a ? b : a; }
const Dyadic& max(const Dyadic& a, const Dyadic& b) { return a < b ? b : a; }

// ---------------------------------------------------------------------------
// HeightInterval

HeightInterval::HeightInterval(Dyadic lo, Dyadic hi) : lo_(std::move(lo)), hi_(std::move(hi)) {
    if (hi_ < lo_) throw Error(ErrorKind::invalid_argument, "interval with lo > hi");
}

bool HeightInterval::contains(const mpq_class& v) const {
    return compare(lo_, v) <= 0 && compare(hi_, v) >= 0;
}

namespace interval {

HeightInterval add(const HeightInterval& a, const HeightInterval& b) {
    return {a.lo() + b.lo(), a.hi() + b.hi()};
}

HeightInterval sub(const HeightInterval& a, const HeightInterval& b) {
    return {a.lo() - b.hi(), a.hi() - b.lo()};
}

HeightInterval scale(const HeightInterval& a, const mpq_class& q, unsigned bits) {
    if (sgn(q) == 0) return HeightInterval::exact_zero();
    mpq_class lo = a.lo().to_rational() * q;
    mpq_class hi = a.hi().to_rational() * q;
    if (sgn(q) < 0) std::swap(lo, hi);
    return {Dyadic::from_rational(lo, bits, Rounding::down),
            Dyadic::from_rational(hi, bits, Rounding::up)};
}

HeightInterval abs(const HeightInterval& a) {
    if (a.lo().sign() >= 0) return a;
    if (a.hi().sign() <= 0) return {-a.hi(), -a.lo()};
    return {Dyadic(), hdist::max(-a.lo(), a.hi())};
}

HeightInterval abs_diff(const HeightInterval& a, const HeightInterval& b) {
    return abs(sub(a, b));
}

HeightInterval max(const HeightInterval& a, const HeightInterval& b) {
    return {hdist::max(a.lo(), b.lo()), hdist::max(a.hi(), b.hi())};
}

HeightInterval widen(const HeightInterval& a, const Dyadic& by) {
    return {a.lo() - by, a.hi() + by};
}

}  // namespace interval

// ---------------------------------------------------------------------------
// Logarithms

HeightInterval log_enclosure(const mpz_class& n, unsigned precision_bits) {
    if (sgn(n) <= 0) throw Error(ErrorKind::domain, "log of a non-positive integer");
    if (precision_bits == 0) throw Error(ErrorKind::invalid_argument, "precision must be positive");
    if (n == 1) return HeightInterval::exact_zero();

    // Four guard bits absorb the input rounding of n so the stated width
    // bound holds at the requested precision.
    const mpfr_prec_t work = static_cast<mpfr_prec_t>(precision_bits) + 4;
    MpfrValue arg(work);
    MpfrValue lo(work);
    MpfrValue hi(work);
    mpfr_set_z(arg.get(), n.get_mpz_t(), MPFR_RNDD);
    mpfr_log(lo.get(), arg.get(), MPFR_RNDD);
    mpfr_set_z(arg.get(), n.get_mpz_t(), MPFR_RNDU);
    mpfr_log(hi.get(), arg.get(), MPFR_RNDU);
    return {lo.to_dyadic(), hi.to_dyadic()};
}

HeightInterval log_enclosure(const mpq_class& q, unsigned precision_bits) {
    if (sgn(q) <= 0) throw Error(ErrorKind::domain, "log of a non-positive rational");
    if (q.get_den() == 1) return log_enclosure(q.get_num(), precision_bits);
    return interval::sub(log_enclosure(q.get_num(), precision_bits),
                         log_enclosure(q.get_den(), precision_bits));
}

// ---------------------------------------------------------------------------
// Misc

mpz_class ipow(const mpz_class& base, unsigned long exponent) {
    mpz_class out;
    mpz_pow_ui(out.get_mpz_t(), base.get_mpz_t(), exponent);
    return out;
}

std::string to_string(const mpq_class& q) { return q.get_str(); }

mpq_class parse_rational(std::string_view text) {
    auto fail = [&]() -> Error {
        return Error(ErrorKind::parse, "not a rational number: '" + std::string(text) + "'");
    };
    std::string s;
    for (char c : text) {
        if (c != ' ' && c != '\t') s.push_back(c);
    }
    if (s.empty()) throw fail();

    auto slash = s.find('/');
    if (slash != std::string::npos) {
        mpq_class num = parse_rational(s.substr(0, slash));
        mpq_class den = parse_rational(s.substr(slash + 1));
        if (sgn(den) == 0) throw Error(ErrorKind::domain, "zero denominator");
        return num / den;
    }

    std::size_t pos = 0;
    bool negative = false;
    if (s[pos] == '+' || s[pos] == '-') {
        negative = s[pos] == '-';
        ++pos;
    }
    std::string digits;
    long frac_len = 0;
    bool seen_point = false;
    bool any_digit = false;
    for (; pos < s.size(); ++pos) {
        char c = s[pos];
        if (c >= '0' && c <= '9') {
            digits.push_back(c);
            any_digit = true;
            if (seen_point) ++frac_len;
        } else if (c == '.' && !seen_point) {
            seen_point = true;
        } else {
            break;
        }
    }
    if (!any_digit) throw fail();
    long exp10 = 0;
    if (pos < s.size()) {
        if (s[pos] != 'e' && s[pos] != 'E') throw fail();
        ++pos;
        std::string exp_text = s.substr(pos);
        if (exp_text.empty()) throw fail();
        std::size_t used = 0;
        try {
            exp10 = std::stol(exp_text, &used);
        } catch (const std::exception&) {
            throw fail();
        }
        if (used != exp_text.size()) throw fail();
    }
    mpz_class mantissa(digits, 10);
    if (negative) mantissa = -mantissa;
    long power = exp10 - frac_len;
    mpq_class out(mantissa);
    if (power > 0) {
        out *= mpq_class(ipow(10, static_cast<unsigned long>(power)));
    } else if (power < 0) {
        out /= mpq_class(ipow(10, static_cast<unsigned long>(-power)));
    }
    out.canonicalize();
    return out;
}

}  // namespace hdist
