#include "conjugation.hpp"

#include <set>
#include <sstream>

#include "errors.hpp"
#include "polynomial.hpp"

namespace hdist {

namespace {

IntMatrix normalized(IntMatrix m) {
    if (m.rows() != m.cols() || m.rows() < 2) {
        throw Error(ErrorKind::invalid_argument, "a PGL matrix must be square of size at least 2");
    }
    std::vector<mpz_class> flat;
    for (std::size_t r = 0; r < m.rows(); ++r)
        for (std::size_t c = 0; c < m.cols(); ++c) flat.push_back(m(r, c));
    if (make_primitive(flat) == 0) throw Error(ErrorKind::singular_matrix, "zero matrix");
    std::size_t k = 0;
    for (std::size_t r = 0; r < m.rows(); ++r)
        for (std::size_t c = 0; c < m.cols(); ++c) m(r, c) = flat[k++];
    return m;
}

}  // namespace

PglMap::PglMap(IntMatrix matrix) : matrix_(normalized(std::move(matrix))) {
    if (sgn(determinant(matrix_)) == 0) throw Error(ErrorKind::singular_matrix, "matrix is singular");
}

PglMap PglMap::identity(std::size_t dim) { return PglMap(IntMatrix::identity(dim + 1)); }

PglMap PglMap::parse(std::string_view text) {
    std::vector<std::vector<mpz_class>> rows;
    std::string all(text);
    std::stringstream by_row(all);
    std::string row_text;
    while (std::getline(by_row, row_text, ';')) {
        std::vector<mpz_class> row;
        std::stringstream by_entry(row_text);
        std::string entry;
        while (std::getline(by_entry, entry, ',')) {
            const auto first = entry.find_first_not_of(" \t");
            const auto last = entry.find_last_not_of(" \t");
            if (first == std::string::npos) throw Error(ErrorKind::parse, "empty matrix entry in '" + all + "'");
            mpz_class v;
            if (v.set_str(entry.substr(first, last - first + 1), 10) != 0) {
                throw Error(ErrorKind::parse, "bad matrix entry '" + entry + "'");
            }
            row.push_back(v);
        }
        rows.push_back(std::move(row));
    }
    const std::size_t n = rows.size();
    IntMatrix m(n, n);
    for (std::size_t r = 0; r < n; ++r) {
        if (rows[r].size() != n) throw Error(ErrorKind::parse, "matrix '" + all + "' is not square");
        for (std::size_t c = 0; c < n; ++c) m(r, c) = rows[r][c];
    }
    return PglMap(std::move(m));
}

ProjPoint PglMap::apply(const ProjPoint& p) const {
    if (p.dim() != dim()) throw Error(ErrorKind::invalid_argument, "point dimension does not match matrix");
    const auto image = matrix_.apply(p.coords());
    return ProjPoint::normalize(std::span<const mpz_class>(image));
}

PglMap PglMap::inverse() const { return PglMap(adjugate(matrix_)); }

std::string PglMap::to_string() const {
    std::string out;
    for (std::size_t r = 0; r < matrix_.rows(); ++r) {
        if (r) out += ';';
        for (std::size_t c = 0; c < matrix_.cols(); ++c) {
            if (c) out += ',';
            out += matrix_(r, c).get_str();
        }
    }
    return out;
}

PglMap operator*(const PglMap& f, const PglMap& g) {
    if (f.dim() != g.dim()) throw Error(ErrorKind::invalid_argument, "matrix sizes differ");
    return PglMap(f.matrix_ * g.matrix_);
}

Morphism conjugate(const Morphism& phi, const PglMap& f) {
    const std::size_t n = phi.dim();
    if (f.dim() != n) throw Error(ErrorKind::invalid_argument, "matrix size does not match map");
    std::vector<Poly> linear;
    for (std::size_t r = 0; r <= n; ++r) linear.push_back(Poly::linear(f.matrix().row(r)));

    // phi_i(f x)
    const auto monos = monomials(n, phi.degree());
    std::vector<Poly> inner;
    for (std::size_t i = 0; i <= n; ++i) {
        Poly sum(n, phi.degree());
        for (std::size_t c = 0; c < monos.size(); ++c) {
            const mpz_class& a = phi.coeffs()[i][c];
            if (sgn(a) == 0) continue;
            Poly term = Poly::monomial(n, Monomial(n + 1, 0), a);
            for (std::size_t r = 0; r <= n; ++r)
                if (monos[c][r]) term = term * linear[r].pow(monos[c][r]);
            sum = sum + term;
        }
        inner.push_back(std::move(sum));
    }

    const IntMatrix inv = adjugate(f.matrix());
    std::vector<Poly> outer;
    for (std::size_t i = 0; i <= n; ++i) {
        Poly sum(n, phi.degree());
        for (std::size_t k = 0; k <= n; ++k)
            if (sgn(inv(i, k)) != 0) sum = sum + inv(i, k) * inner[k];
        outer.push_back(std::move(sum));
    }
    return Morphism::from_polys(outer).with_status(phi.status());
}

std::vector<PglMap> enumerate_pgl(std::size_t dim, long bound) {
    if (bound < 1) throw Error(ErrorKind::invalid_argument, "entry bound must be at least 1");
    const std::size_t size = (dim + 1) * (dim + 1);
    std::vector<long> entries(size, -bound);
    std::vector<PglMap> out;
    std::set<std::vector<mpz_class>> seen;
    for (;;) {
        IntMatrix m(dim + 1, dim + 1);
        for (std::size_t k = 0; k < size; ++k) m(k / (dim + 1), k % (dim + 1)) = entries[k];
        std::vector<mpz_class> flat(m.row(0).begin(), m.row(0).end());
        for (std::size_t r = 1; r <= dim; ++r) flat.insert(flat.end(), m.row(r).begin(), m.row(r).end());
        if (make_primitive(flat) != 0 && sgn(determinant(m)) != 0 && seen.insert(flat).second) {
            out.emplace_back(std::move(m));
        }
        std::size_t k = size;
        while (k > 0 && entries[k - 1] == bound) entries[--k] = -bound;
        if (k == 0) break;
        ++entries[k - 1];
    }
    return out;
}

ClassSearchResult class_distance_search(const CertifiedMap& phi, const CertifiedMap& psi, long entry_bound,
                                        const SampleSpec& spec) {
    if (phi.map.dim() != psi.map.dim()) throw Error(ErrorKind::invalid_argument, "maps act on different spaces");
    ClassSearchResult out;
    CanonicalHeightCache cache;
    for (const auto& f : enumerate_pgl(phi.map.dim(), entry_bound)) {
        const CertifiedMap conj = certify(conjugate(phi.map, f));
        auto estimate = estimate_delta_hat(conj, psi, spec, &cache);
        if (!out.table.empty() && estimate.upper < out.table[out.best].estimate.upper) out.best = out.table.size();
        out.table.push_back({f, std::move(estimate)});
    }
    return out;
}

}  // namespace hdist
