#include "polynomial.hpp"

#include <cctype>
#include <numeric>
#include <set>

#include "errors.hpp"

namespace hdist {

namespace {

mpz_class binomial(unsigned long n, unsigned long k) {
    mpz_class out;
    mpz_bin_uiui(out.get_mpz_t(), n, k);
    return out;
}

void fill_monomials(std::size_t var, unsigned remaining, Monomial& current,
                    std::vector<Monomial>& out) {
    if (var + 1 == current.size()) {
        current[var] = remaining;
        out.push_back(current);
        return;
    }
    for (unsigned e = remaining + 1; e-- > 0;) {
        current[var] = e;
        fill_monomials(var + 1, remaining - e, current, out);
    }
}

}  // namespace

unsigned total_degree(const Monomial& m) { return std::accumulate(m.begin(), m.end(), 0u); }

std::size_t monomial_count(std::size_t dim, unsigned degree) {
    return binomial(dim + degree, dim).get_ui();
}

std::vector<Monomial> monomials(std::size_t dim, unsigned degree) {
    std::vector<Monomial> out;
    out.reserve(monomial_count(dim, degree));
    Monomial current(dim + 1, 0);
    fill_monomials(0, degree, current, out);
    return out;
}

std::size_t monomial_index(const Monomial& m) {
    const std::size_t vars = m.size();
    unsigned remaining = total_degree(m);
    std::size_t index = 0;
    for (std::size_t k = 0; k + 1 < vars; ++k) {
        const std::size_t rest = vars - k - 1;  // variables after position k
        for (unsigned e = m[k] + 1; e <= remaining; ++e) {
            index += binomial(remaining - e + rest - 1, rest - 1).get_ui();
        }
        remaining -= m[k];
    }
    return index;
}

mpz_class evaluate_monomial(const Monomial& m, std::span<const mpz_class> point) {
    mpz_class out = 1;
    mpz_class tmp;
    for (std::size_t k = 0; k < m.size(); ++k) {
        if (m[k] == 0) continue;
        mpz_pow_ui(tmp.get_mpz_t(), point[k].get_mpz_t(), m[k]);
        out *= tmp;
    }
    return out;
}

// ---------------------------------------------------------------------------
// Poly

Poly Poly::from_dense(std::size_t dim, unsigned degree, std::span<const mpz_class> coeffs) {
    auto mons = monomials(dim, degree);
    if (coeffs.size() != mons.size()) {
        throw Error(ErrorKind::invalid_argument, "dense coefficient vector has wrong length");
    }
    Poly p(dim, degree);
    for (std::size_t k = 0; k < mons.size(); ++k) {
        if (sgn(coeffs[k]) != 0) p.terms_.emplace(mons[k], coeffs[k]);
    }
    return p;
}

Poly Poly::monomial(std::size_t dim, const Monomial& m, const mpz_class& coeff) {
    Poly p(dim, total_degree(m));
    p.add_term(m, coeff);
    return p;
}

Poly Poly::linear(std::span<const mpz_class> row) {
    Poly p(row.size() - 1, 1);
    for (std::size_t k = 0; k < row.size(); ++k) {
        Monomial m(row.size(), 0);
        m[k] = 1;
        p.add_term(m, row[k]);
    }
    return p;
}

mpz_class Poly::coefficient(const Monomial& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? mpz_class(0) : it->second;
}

void Poly::add_term(const Monomial& m, const mpz_class& coeff) {
    if (sgn(coeff) == 0) return;
    auto [it, inserted] = terms_.try_emplace(m, coeff);
    if (!inserted) {
        it->second += coeff;
        if (sgn(it->second) == 0) terms_.erase(it);
    }
}

std::vector<mpz_class> Poly::dense() const {
    std::vector<mpz_class> out(monomial_count(dim_, degree_), 0);
    for (const auto& [m, c] : terms_) out[monomial_index(m)] = c;
    return out;
}

mpz_class Poly::abs_coefficient_sum() const {
    mpz_class sum = 0;
    for (const auto& [m, c] : terms_) sum += abs(c);
    return sum;
}

mpz_class Poly::max_abs_coefficient() const {
    mpz_class best = 0;
    for (const auto& [m, c] : terms_) {
        if (abs(c) > best) best = abs(c);
    }
    return best;
}

mpz_class Poly::evaluate(std::span<const mpz_class> point) const {
    mpz_class sum = 0;
    for (const auto& [m, c] : terms_) sum += c * evaluate_monomial(m, point);
    return sum;
}

Poly operator+(const Poly& a, const Poly& b) {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    if (a.degree_ != b.degree_ || a.dim_ != b.dim_) {
        throw Error(ErrorKind::invalid_argument, "adding polynomials of different shape");
    }
    Poly out = a;
    for (const auto& [m, c] : b.terms_) out.add_term(m, c);
    return out;
}

Poly operator-(const Poly& a, const Poly& b) { return a + mpz_class(-1) * b; }

Poly operator*(const Poly& a, const Poly& b) {
    Poly out(a.dim_, a.degree_ + b.degree_);
    for (const auto& [ma, ca] : a.terms_) {
        for (const auto& [mb, cb] : b.terms_) {
            Monomial m(ma.size());
            for (std::size_t k = 0; k < m.size(); ++k) m[k] = ma[k] + mb[k];
            out.add_term(m, ca * cb);
        }
    }
    return out;
}

Poly operator*(const mpz_class& c, const Poly& p) {
    Poly out(p.dim_, p.degree_);
    if (sgn(c) == 0) return out;
    for (const auto& [m, coeff] : p.terms_) out.terms_.emplace(m, c * coeff);
    return out;
}

Poly Poly::pow(unsigned exponent) const {
    Monomial one(dim_ + 1, 0);
    Poly out = Poly::monomial(dim_, one, 1);
    for (unsigned k = 0; k < exponent; ++k) out = out * *this;
    return out;
}

std::string Poly::to_text() const {
    if (terms_.empty()) return "0";
    std::string out;
    // std::map orders ascending lex; graded lex descending is the reverse.
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
        const auto& [m, c] = *it;
        std::string factors;
        for (std::size_t k = 0; k < m.size(); ++k) {
            if (m[k] == 0) continue;
            if (!factors.empty()) factors += "*";
            factors += "x" + std::to_string(k);
            if (m[k] > 1) factors += "^" + std::to_string(m[k]);
        }
        mpz_class mag = abs(c);
        std::string term;
        if (factors.empty()) {
            term = mag.get_str();
        } else if (mag == 1) {
            term = factors;
        } else {
            term = mag.get_str() + "*" + factors;
        }
        if (out.empty()) {
            out = (sgn(c) < 0 ? "-" : "") + term;
        } else {
            out += (sgn(c) < 0 ? " - " : " + ") + term;
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Parsing

namespace {

class PolyParser {
public:
    PolyParser(std::string_view text, std::size_t dim) : text_(text), dim_(dim) {}

    std::map<Monomial, mpq_class> parse_terms(std::vector<unsigned>& degrees) {
        std::map<Monomial, mpq_class> terms;
        skip_space();
        if (at_end()) fail("empty polynomial");
        bool first = true;
        while (!at_end()) {
            int sign = 1;
            if (peek() == '+' || peek() == '-') {
                sign = peek() == '-' ? -1 : 1;
                ++pos_;
                skip_space();
            } else if (!first) {
                fail("expected '+' or '-'");
            }
            auto [m, c] = parse_term();
            degrees.push_back(total_degree(m));
            c *= sign;
            terms[m] += c;
            first = false;
            skip_space();
        }
        return terms;
    }

private:
    bool at_end() const { return pos_ >= text_.size(); }
    char peek() const { return text_[pos_]; }
    void skip_space() {
        while (!at_end() && std::isspace(static_cast<unsigned char>(peek()))) ++pos_;
    }

    [[noreturn]] void fail(const std::string& why) const {
        throw Error(ErrorKind::parse, "polynomial '" + std::string(text_) + "': " + why +
                                          " at offset " + std::to_string(pos_));
    }

    std::string read_digits() {
        std::string digits;
        while (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) {
            digits.push_back(peek());
            ++pos_;
        }
        return digits;
    }

    std::pair<Monomial, mpq_class> parse_term() {
        Monomial m(dim_ + 1, 0);
        mpq_class coeff = 1;
        while (true) {
            skip_space();
            if (at_end()) fail("expected a factor");
            if (std::isdigit(static_cast<unsigned char>(peek()))) {
                mpq_class value(mpz_class(read_digits(), 10));
                skip_space();
                if (!at_end() && peek() == '/') {
                    ++pos_;
                    skip_space();
                    std::string den = read_digits();
                    if (den.empty()) fail("expected a denominator");
                    mpz_class d(den, 10);
                    if (d == 0) fail("zero denominator");
                    value /= mpq_class(d);
                }
                coeff *= value;
            } else {
                std::size_t var = parse_variable();
                skip_space();
                unsigned exponent = 1;
                if (!at_end() && peek() == '^') {
                    ++pos_;
                    skip_space();
                    std::string digits = read_digits();
                    if (digits.empty()) fail("expected an exponent");
                    exponent = static_cast<unsigned>(std::stoul(digits));
                }
                m[var] += exponent;
            }
            skip_space();
            if (!at_end() && peek() == '/') {
                // x^2/3
                ++pos_;
                skip_space();
                std::string den = read_digits();
                if (den.empty()) fail("expected a denominator");
                mpz_class d(den, 10);
                if (d == 0) fail("zero denominator");
                coeff /= mpq_class(d);
                skip_space();
            }
            if (!at_end() && peek() == '*') {
                ++pos_;
                continue;
            }
            break;
        }
        coeff.canonicalize();
        return {m, coeff};
    }

    std::size_t parse_variable() {
        char c = peek();
        if (c == 'x' || c == 'X') {
            ++pos_;
            std::string digits = read_digits();
            if (digits.empty()) {
                if (dim_ > 2) fail("bare 'x' is only accepted for N <= 2");
                return 0;
            }
            std::size_t k = std::stoul(digits);
            if (k > dim_) fail("variable x" + digits + " out of range");
            return k;
        }
        if ((c == 'y' || c == 'Y') && dim_ >= 1 && dim_ <= 2) {
            ++pos_;
            return 1;
        }
        if ((c == 'z' || c == 'Z') && dim_ == 2) {
            ++pos_;
            return 2;
        }
        fail(std::string("unexpected character '") + c + "'");
    }

    std::string_view text_;
    std::size_t dim_;
    std::size_t pos_ = 0;
};

}  // namespace

RationalPoly parse_polynomial(std::string_view text, std::size_t dim, unsigned degree) {
    std::vector<unsigned> degrees;
    PolyParser parser(text, dim);
    auto terms = parser.parse_terms(degrees);

    std::set<unsigned> distinct(degrees.begin(), degrees.end());
    // A bare "0" is the zero polynomial of any degree.
    bool zero_literal = true;
    for (const auto& [m, c] : terms) {
        if (sgn(c) != 0 || total_degree(m) != 0) zero_literal = false;
    }
    if (!zero_literal) {
        if (distinct.size() > 1) {
            throw Error(ErrorKind::inhomogeneous,
                        "polynomial '" + std::string(text) + "' is not homogeneous");
        }
        if (*distinct.begin() != degree) {
            throw Error(ErrorKind::degree_mismatch,
                        "polynomial '" + std::string(text) + "' has degree " +
                            std::to_string(*distinct.begin()) + ", expected " +
                            std::to_string(degree));
        }
    }
    RationalPoly out;
    out.dim = dim;
    out.degree = degree;
    for (auto& [m, c] : terms) {
        if (sgn(c) != 0) out.terms.emplace(m, c);
    }
    return out;
}

std::optional<unsigned> polynomial_degree(std::string_view text, std::size_t dim) {
    std::vector<unsigned> degrees;
    PolyParser parser(text, dim);
    auto terms = parser.parse_terms(degrees);
    std::set<unsigned> distinct;
    for (const auto& [m, c] : terms) {
        if (sgn(c) != 0) distinct.insert(total_degree(m));
    }
    if (distinct.empty()) return std::nullopt;
    if (distinct.size() > 1) {
        throw Error(ErrorKind::inhomogeneous, "polynomial '" + std::string(text) + "' is not homogeneous");
    }
    return *distinct.begin();
}

}  // namespace hdist
