#include "linalg.hpp"

#include <utility>

#include "errors.hpp"

namespace hdist {

IntMatrix IntMatrix::identity(std::size_t n) {
    IntMatrix m(n, n);
    for (std::size_t k = 0; k < n; ++k) m(k, k) = 1;
    return m;
}

IntMatrix IntMatrix::transposed() const {
    IntMatrix t(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
    return t;
}

IntMatrix IntMatrix::without(std::size_t row, std::size_t col) const {
    IntMatrix m(rows_ - 1, cols_ - 1);
    for (std::size_t r = 0, rr = 0; r < rows_; ++r) {
        if (r == row) continue;
        for (std::size_t c = 0, cc = 0; c < cols_; ++c) {
            if (c == col) continue;
            m(rr, cc++) = (*this)(r, c);
        }
        ++rr;
    }
    return m;
}

std::vector<mpz_class> IntMatrix::apply(std::span<const mpz_class> v) const {
    if (v.size() != cols_) throw Error(ErrorKind::invalid_argument, "matrix/vector size mismatch");
    std::vector<mpz_class> out(rows_, 0);
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = 0; c < cols_; ++c) out[r] += (*this)(r, c) * v[c];
    return out;
}

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
    if (a.cols_ != b.rows_) throw Error(ErrorKind::invalid_argument, "matrix product size mismatch");
    IntMatrix out(a.rows_, b.cols_);
    for (std::size_t r = 0; r < a.rows_; ++r)
        for (std::size_t k = 0; k < a.cols_; ++k) {
            if (sgn(a(r, k)) == 0) continue;
            for (std::size_t c = 0; c < b.cols_; ++c) out(r, c) += a(r, k) * b(k, c);
        }
    return out;
}

namespace {

struct Echelon {
    IntMatrix m;                       // eliminated augmented matrix
    std::vector<std::size_t> pivots;   // pivot column of each leading row
    int swap_sign = 1;
};

// Bareiss forward elimination; pivots are searched only in the first
// `pivot_cols` columns, the remaining columns ride along.
Echelon bareiss(IntMatrix m, std::size_t pivot_cols) {
    Echelon e;
    const std::size_t rows = m.rows();
    const std::size_t cols = m.cols();
    mpz_class prev = 1;
    mpz_class tmp;
    std::size_t r = 0;
    for (std::size_t c = 0; c < pivot_cols && r < rows; ++c) {
        std::size_t p = r;
        while (p < rows && sgn(m(p, c)) == 0) ++p;
        if (p == rows) continue;
        if (p != r) {
            for (std::size_t j = 0; j < cols; ++j) std::swap(m(p, j), m(r, j));
            e.swap_sign = -e.swap_sign;
        }
        const mpz_class pivot = m(r, c);
        for (std::size_t i = r + 1; i < rows; ++i) {
            const mpz_class factor = m(i, c);
            for (std::size_t j = c + 1; j < cols; ++j) {
                tmp = pivot * m(i, j) - factor * m(r, j);
                mpz_divexact(m(i, j).get_mpz_t(), tmp.get_mpz_t(), prev.get_mpz_t());
            }
            m(i, c) = 0;
        }
        // Rows above the new pivot keep their scale; rows below were divided
        // by prev, so the invariant "entries are minors" is preserved.
        prev = pivot;
        e.pivots.push_back(c);
        ++r;
    }
    e.m = std::move(m);
    return e;
}

}  // namespace

mpz_class determinant(const IntMatrix& a) {
    if (a.rows() != a.cols()) throw Error(ErrorKind::invalid_argument, "determinant of a non-square matrix");
    if (a.rows() == 0) return 1;
    Echelon e = bareiss(a, a.cols());
    if (e.pivots.size() < a.rows()) return 0;
    const std::size_t n = a.rows() - 1;
    return e.swap_sign * e.m(n, n);
}

std::size_t rank(const IntMatrix& a) { return bareiss(a, a.cols()).pivots.size(); }

std::vector<std::optional<std::vector<mpq_class>>> solve_rational(
    const IntMatrix& a, const std::vector<std::vector<mpz_class>>& rhs) {
    const std::size_t n = a.cols();
    IntMatrix aug(a.rows(), n + rhs.size());
    for (std::size_t r = 0; r < a.rows(); ++r) {
        for (std::size_t c = 0; c < n; ++c) aug(r, c) = a(r, c);
        for (std::size_t k = 0; k < rhs.size(); ++k) {
            if (rhs[k].size() != a.rows()) throw Error(ErrorKind::invalid_argument, "rhs size mismatch");
            aug(r, n + k) = rhs[k][r];
        }
    }
    Echelon e = bareiss(std::move(aug), n);
    const std::size_t rk = e.pivots.size();

    std::vector<std::optional<std::vector<mpq_class>>> out;
    out.reserve(rhs.size());
    for (std::size_t k = 0; k < rhs.size(); ++k) {
        bool consistent = true;
        for (std::size_t r = rk; r < a.rows(); ++r) {
            if (sgn(e.m(r, n + k)) != 0) {
                consistent = false;
                break;
            }
        }
        if (!consistent) {
            out.emplace_back(std::nullopt);
            continue;
        }
        std::vector<mpq_class> x(n, 0);
        for (std::size_t r = rk; r-- > 0;) {
            const std::size_t c = e.pivots[r];
            mpq_class acc(e.m(r, n + k));
            for (std::size_t j = c + 1; j < n; ++j) {
                if (sgn(e.m(r, j)) != 0 && sgn(x[j]) != 0) acc -= mpq_class(e.m(r, j)) * x[j];
            }
            x[c] = acc / mpq_class(e.m(r, c));
        }
        out.emplace_back(std::move(x));
    }
    return out;
}

std::optional<std::vector<mpq_class>> solve_rational(const IntMatrix& a, std::span<const mpz_class> b) {
    std::vector<std::vector<mpz_class>> rhs{std::vector<mpz_class>(b.begin(), b.end())};
    return std::move(solve_rational(a, rhs).front());
}

IntMatrix adjugate(const IntMatrix& a) {
    const std::size_t n = a.rows();
    if (n != a.cols()) throw Error(ErrorKind::invalid_argument, "adjugate of a non-square matrix");
    if (n == 0) return {};
    if (n == 1) return IntMatrix::identity(1);

    const mpz_class det = determinant(a);
    if (sgn(det) != 0) {
        // adj(a) = det * a^{-1}; solve a * X = det * I column by column.
        std::vector<std::vector<mpz_class>> rhs(n, std::vector<mpz_class>(n, 0));
        for (std::size_t k = 0; k < n; ++k) rhs[k][k] = det;
        auto cols = solve_rational(a, rhs);
        IntMatrix adj(n, n);
        for (std::size_t k = 0; k < n; ++k) {
            const auto& col = *cols[k];
            for (std::size_t r = 0; r < n; ++r) {
                if (col[r].get_den() != 1) throw Error(ErrorKind::invalid_argument, "non-integral adjugate entry");
                adj(r, k) = col[r].get_num();
            }
        }
        return adj;
    }
    IntMatrix adj(n, n);
    if (rank(a) < n - 1) return adj;
    for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t c = 0; c < n; ++c) {
            mpz_class minor = determinant(a.without(r, c));
            adj(c, r) = ((r + c) % 2 == 0) ? minor : mpz_class(-minor);
        }
    }
    return adj;
}

mpz_class content(std::span<const mpz_class> values) {
    mpz_class g = 0;
    for (const auto& v : values) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.get_mpz_t());
    return g;
}

}  // namespace hdist
