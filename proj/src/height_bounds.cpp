#include "height_bounds.hpp"

#include <map>

#include "errors.hpp"
#include "linalg.hpp"

namespace hdist {

namespace {

unsigned macaulay_degree(const Morphism& phi) {
    return static_cast<unsigned>((phi.dim() + 1) * (phi.degree() - 1) + 1);
}

// Matrix of (G_0, ..., G_N) -> sum_i G_i phi_i on coefficient vectors:
// columns are the unknowns (i, m) with m of degree t-d, rows are the
// monomials of degree t, both in graded lex order.
IntMatrix multiplication_matrix(const Morphism& phi, unsigned t) {
    const std::size_t dim = phi.dim();
    const auto cofactor_monomials = monomials(dim, t - phi.degree());
    const auto map_monomials = monomials(dim, phi.degree());
    const std::size_t unknowns = (dim + 1) * cofactor_monomials.size();
    IntMatrix a(monomial_count(dim, t), unknowns);
    Monomial sum(dim + 1);
    for (std::size_t i = 0; i <= dim; ++i) {
        for (std::size_t m = 0; m < cofactor_monomials.size(); ++m) {
            const std::size_t col = i * cofactor_monomials.size() + m;
            for (std::size_t k = 0; k < map_monomials.size(); ++k) {
                const mpz_class& c = phi.coeffs()[i][k];
                if (sgn(c) == 0) continue;
                for (std::size_t v = 0; v <= dim; ++v) sum[v] = cofactor_monomials[m][v] + map_monomials[k][v];
                a(monomial_index(sum), col) += c;
            }
        }
    }
    return a;
}

std::size_t pure_power_row(std::size_t dim, std::size_t j, unsigned t) {
    Monomial m(dim + 1, 0);
    m[j] = t;
    return monomial_index(m);
}

// Splits one solution vector into the polynomials G_{0j}..G_{Nj}.
std::vector<Poly> split_solution(const Morphism& phi, unsigned t, const std::vector<mpz_class>& x) {
    const std::size_t per = monomial_count(phi.dim(), t - phi.degree());
    std::vector<Poly> out;
    for (std::size_t i = 0; i <= phi.dim(); ++i) {
        std::span<const mpz_class> slice(x.data() + i * per, per);
        out.push_back(Poly::from_dense(phi.dim(), t - phi.degree(), slice));
    }
    return out;
}

// Divides (R, x) by their common content and makes R positive.
void reduce(mpz_class& r, std::vector<mpz_class>& x) {
    mpz_class g = r;
    for (const auto& v : x) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.get_mpz_t());
    if (sgn(r) < 0) g = -g;
    if (g != 1) {
        mpz_divexact(r.get_mpz_t(), r.get_mpz_t(), g.get_mpz_t());
        for (auto& v : x) mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), g.get_mpz_t());
    }
}

void fill_factors(const Morphism& phi, OffsetCertificate& cert, unsigned precision_bits) {
    const std::size_t dim = phi.dim();
    cert.upper_factor = mpz_class(static_cast<unsigned long>(phi.monomial_count())) * phi.max_abs_coefficient();

    cert.row_sum_factor = 0;
    for (const auto& row : phi.coeffs()) {
        mpz_class s = 0;
        for (const auto& c : row) s += abs(c);
        if (s > cert.row_sum_factor) cert.row_sum_factor = s;
    }

    cert.lcm_r = 1;
    for (const auto& r : cert.r) mpz_lcm(cert.lcm_r.get_mpz_t(), cert.lcm_r.get_mpz_t(), r.get_mpz_t());

    cert.c_g = 0;
    mpq_class best_ratio = 0;
    for (std::size_t j = 0; j <= dim; ++j) {
        mpz_class s = 0;
        for (std::size_t i = 0; i <= dim; ++i) s += cert.g[i][j].abs_coefficient_sum();
        if (s > cert.c_g) cert.c_g = s;
        mpq_class ratio(s, cert.r[j]);
        ratio.canonicalize();
        if (ratio > best_ratio) best_ratio = ratio;
    }
    cert.lower_factor = mpz_class(static_cast<unsigned long>(dim + 1)) * cert.c_g * cert.lcm_r;
    cert.sharp_lower_factor = mpq_class(cert.lcm_r) * best_ratio;

    cert.c_up = log_enclosure(cert.upper_factor, precision_bits);
    cert.c_low = log_enclosure(cert.lower_factor, precision_bits);
    cert.sharp_up = log_enclosure(cert.row_sum_factor, precision_bits);
    cert.sharp_low = log_enclosure(cert.sharp_lower_factor, precision_bits);
}

[[noreturn]] void not_a_morphism() {
    throw Error(ErrorKind::not_morphism, "the coordinate polynomials have a common zero over Q-bar");
}

OffsetCertificate sylvester_certificate(const Morphism& phi) {
    const unsigned t = macaulay_degree(phi);
    const IntMatrix s = multiplication_matrix(phi, t);  // square for N = 1
    const mpz_class resultant = determinant(s);
    if (sgn(resultant) == 0) not_a_morphism();
    const IntMatrix adj = adjugate(s);

    OffsetCertificate cert;
    cert.t = t;
    cert.method = "sylvester";
    cert.g.assign(2, {});
    for (std::size_t j = 0; j <= 1; ++j) {
        const std::size_t row = pure_power_row(1, j, t);
        std::vector<mpz_class> x(s.cols());
        for (std::size_t k = 0; k < s.cols(); ++k) x[k] = adj(k, row);
        mpz_class r = resultant;
        reduce(r, x);
        cert.r.push_back(r);
        auto polys = split_solution(phi, t, x);
        for (std::size_t i = 0; i <= 1; ++i) cert.g[i].push_back(std::move(polys[i]));
    }
    return cert;
}

OffsetCertificate macaulay_certificate(const Morphism& phi) {
    const unsigned t = macaulay_degree(phi);
    const IntMatrix a = multiplication_matrix(phi, t);
    std::vector<std::vector<mpz_class>> rhs;
    for (std::size_t j = 0; j <= phi.dim(); ++j) {
        std::vector<mpz_class> e(a.rows(), 0);
        e[pure_power_row(phi.dim(), j, t)] = 1;
        rhs.push_back(std::move(e));
    }
    auto solutions = solve_rational(a, rhs);

    OffsetCertificate cert;
    cert.t = t;
    cert.method = "macaulay";
    cert.g.assign(phi.dim() + 1, {});
    for (std::size_t j = 0; j <= phi.dim(); ++j) {
        if (!solutions[j]) not_a_morphism();
        const auto& sol = *solutions[j];
        mpz_class denominators = 1;
        for (const auto& q : sol) mpz_lcm(denominators.get_mpz_t(), denominators.get_mpz_t(), q.get_den_mpz_t());
        std::vector<mpz_class> x;
        x.reserve(sol.size());
        for (const auto& q : sol) x.push_back(q.get_num() * (denominators / q.get_den()));
        mpz_class r = denominators;
        reduce(r, x);
        cert.r.push_back(r);
        auto polys = split_solution(phi, t, x);
        for (std::size_t i = 0; i <= phi.dim(); ++i) cert.g[i].push_back(std::move(polys[i]));
    }
    return cert;
}

}  // namespace

OffsetCertificate find_certificate(const Morphism& phi, unsigned precision_bits, CertificateMethod method) {
    if (method == CertificateMethod::sylvester && phi.dim() != 1) {
        throw Error(ErrorKind::invalid_argument, "the Sylvester construction needs N = 1");
    }
    const bool use_sylvester = method == CertificateMethod::sylvester ||
                               (method == CertificateMethod::automatic && phi.dim() == 1);
    OffsetCertificate cert = use_sylvester ? sylvester_certificate(phi) : macaulay_certificate(phi);
    fill_factors(phi, cert, precision_bits);
    verify_certificate(phi, cert);
    return cert;
}

bool identity_holds(const Morphism& phi, const OffsetCertificate& cert) {
    const std::size_t dim = phi.dim();
    if (cert.t != macaulay_degree(phi) || cert.r.size() != dim + 1 || cert.g.size() != dim + 1) return false;
    std::vector<Poly> coords;
    for (std::size_t i = 0; i <= dim; ++i) coords.push_back(phi.coordinate(i));
    for (std::size_t j = 0; j <= dim; ++j) {
        if (sgn(cert.r[j]) <= 0) return false;
        Poly sum(dim, cert.t);
        for (std::size_t i = 0; i <= dim; ++i) {
            if (cert.g[i].size() != dim + 1) return false;
            const Poly& g = cert.g[i][j];
            if (!g.is_zero() && (g.degree() != cert.t - phi.degree() || g.dim() != dim)) return false;
            sum = sum + g * coords[i];
        }
        Monomial m(dim + 1, 0);
        m[j] = cert.t;
        if (!(sum == Poly::monomial(dim, m, cert.r[j]))) return false;
    }
    return true;
}

void verify_certificate(const Morphism& phi, const OffsetCertificate& cert) {
    if (!identity_holds(phi, cert)) {
        throw Error(ErrorKind::invalid_certificate, "certificate identity R_j x_j^t = sum_i G_ij phi_i fails");
    }
    OffsetCertificate recomputed = cert;
    fill_factors(phi, recomputed, kDefaultPrecisionBits);
    if (recomputed.upper_factor != cert.upper_factor || recomputed.lower_factor != cert.lower_factor ||
        recomputed.row_sum_factor != cert.row_sum_factor ||
        recomputed.sharp_lower_factor != cert.sharp_lower_factor || recomputed.lcm_r != cert.lcm_r ||
        recomputed.c_g != cert.c_g) {
        throw Error(ErrorKind::invalid_certificate, "certificate factors do not match its polynomials");
    }
    // Stored enclosures must contain a much tighter fresh enclosure of the
    // same logarithm.
    constexpr unsigned kCheckBits = 256;
    const HeightInterval fresh_up = log_enclosure(cert.upper_factor, kCheckBits);
    const HeightInterval fresh_low = log_enclosure(cert.lower_factor, kCheckBits);
    const HeightInterval fresh_sharp_up = log_enclosure(cert.row_sum_factor, kCheckBits);
    const HeightInterval fresh_sharp_low = log_enclosure(cert.sharp_lower_factor, kCheckBits);
    const std::pair<const HeightInterval*, const HeightInterval*> pairs[] = {
        {&cert.c_up, &fresh_up},
        {&cert.c_low, &fresh_low},
        {&cert.sharp_up, &fresh_sharp_up},
        {&cert.sharp_low, &fresh_sharp_low},
    };
    for (const auto& [stored, fresh] : pairs) {
        if (!stored->contains(*fresh)) {
            throw Error(ErrorKind::invalid_certificate, "stored offset enclosure does not contain the offset");
        }
    }
}

Offsets offsets(const Morphism& phi, const OffsetCertificate& cert, unsigned precision_bits) {
    verify_certificate(phi, cert);
    return {log_enclosure(cert.upper_factor, precision_bits), log_enclosure(cert.lower_factor, precision_bits)};
}

OffsetCheck check_offsets_at(const Morphism& phi, const OffsetCertificate& cert, const ProjPoint& p) {
    std::vector<mpz_class> raw = phi.evaluate_raw(p.coords());
    mpz_class g = make_primitive(raw);
    if (sgn(g) == 0) throw Error(ErrorKind::base_locus, "point lies in the base locus of the map");
    g = abs(g);
    mpz_class image_height = 0;
    for (const auto& v : raw)
        if (cmpabs(v, image_height) > 0) image_height = abs(v);
    const mpz_class hd = ipow(p.naive_height(), phi.degree());

    OffsetCheck out;
    out.upper = image_height <= cert.upper_factor * hd;
    out.lower = cert.lower_factor * image_height >= hd;
    out.sharp_upper = image_height <= cert.row_sum_factor * hd;
    out.sharp_lower = cert.sharp_lower_factor.get_num() * image_height >= cert.sharp_lower_factor.get_den() * hd;
    out.gcd_divides = mpz_divisible_p(cert.lcm_r.get_mpz_t(), g.get_mpz_t()) != 0;
    return out;
}

Dyadic CertifiedMap::telescoping_constant() const {
    return max(cert.sharp_up.hi(), cert.sharp_low.hi());
}

CertifiedMap certify(const Morphism& phi, unsigned precision_bits) {
    OffsetCertificate cert = find_certificate(phi, precision_bits);
    return {phi.with_status(MorphismStatus::verified), std::move(cert)};
}

Morphism classify(const Morphism& phi) {
    try {
        (void)find_certificate(phi);
        return phi.with_status(MorphismStatus::verified);
    } catch (const Error& e) {
        if (e.kind() == ErrorKind::not_morphism) return phi.with_status(MorphismStatus::not_morphism);
        throw;
    }
}

}  // namespace hdist
