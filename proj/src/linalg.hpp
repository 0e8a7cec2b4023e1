#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include <gmpxx.h>

namespace hdist {

// Dense row-major integer matrix.
class IntMatrix {
public:
    IntMatrix() = default;
    IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, 0) {}

    static IntMatrix identity(std::size_t n);

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }

    mpz_class& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const mpz_class& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    std::span<const mpz_class> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }

    IntMatrix transposed() const;
    IntMatrix without(std::size_t row, std::size_t col) const;
    std::vector<mpz_class> apply(std::span<const mpz_class> v) const;

    friend IntMatrix operator*(const IntMatrix& a, const IntMatrix& b);
    friend bool operator==(const IntMatrix&, const IntMatrix&) = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<mpz_class> data_;
};

// Fraction-free (Bareiss) determinant with row pivoting.
mpz_class determinant(const IntMatrix& a);

std::size_t rank(const IntMatrix& a);

// Transposed cofactor matrix: a * adjugate(a) == det(a) * I exactly, also
// for singular a.
IntMatrix adjugate(const IntMatrix& a);

// One rational solution of a * x = b (free variables set to zero), or
// nullopt when the system is inconsistent. Elimination is fraction-free;
// only the back substitution works in Q.
std::optional<std::vector<mpq_class>> solve_rational(const IntMatrix& a, std::span<const mpz_class> b);

// Solves for several right-hand sides at once, sharing the elimination.
std::vector<std::optional<std::vector<mpq_class>>> solve_rational(
    const IntMatrix& a, const std::vector<std::vector<mpz_class>>& rhs);

mpz_class content(std::span<const mpz_class> values);

}  // namespace hdist
