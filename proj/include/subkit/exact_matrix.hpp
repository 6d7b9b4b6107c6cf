#pragma once

#include <gmpxx.h>

#include <string>
#include <vector>

namespace subkit {

// Dense matrix of arbitrary-precision integers. Substitution matrices are
// non-negative; signed entries are allowed for polynomial and cofactor work.
class ExactMatrix {
public:
    ExactMatrix() : rows_(0), cols_(0) {}
    ExactMatrix(int rows, int cols);
    ExactMatrix(int rows, int cols, std::vector<mpz_class> entries);
    // Row-major initializer for literals in tests and tools.
    ExactMatrix(std::initializer_list<std::initializer_list<long>> rows);

    static ExactMatrix identity(int n);

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    bool square() const { return rows_ == cols_; }

    const mpz_class& operator()(int i, int j) const { return a_[idx(i, j)]; }
    mpz_class& operator()(int i, int j) { return a_[idx(i, j)]; }

    ExactMatrix transpose() const;
    ExactMatrix operator*(const ExactMatrix& rhs) const;
    bool operator==(const ExactMatrix& rhs) const;
    bool operator!=(const ExactMatrix& rhs) const { return !(*this == rhs); }

    bool is_nonnegative() const;
    bool has_zero_row() const;
    bool has_zero_column() const;
    // Square, non-negative, no zero row or column.
    bool is_substitution_matrix() const;

    std::vector<mpz_class> row_sums() const;
    std::vector<mpz_class> col_sums() const;
    mpz_class max_entry() const;

    // d -> M * d for label recursions.
    std::vector<mpz_class> apply(const std::vector<mpz_class>& v) const;
    // d -> M^T * d.
    std::vector<mpz_class> apply_transposed(const std::vector<mpz_class>& v) const;

    std::string to_string() const;

private:
    size_t idx(int i, int j) const;
    int rows_, cols_;
    std::vector<mpz_class> a_;
};

ExactMatrix multiply(const ExactMatrix& a, const ExactMatrix& b);
ExactMatrix matrix_power(const ExactMatrix& a, unsigned long k);
mpz_class determinant(const ExactMatrix& a);
ExactMatrix transpose(const ExactMatrix& a);

// Exact rank over the rationals (fraction-free elimination).
int matrix_rank(const ExactMatrix& a);
// Rank of M^n for an n x n matrix: the rank of the non-nilpotent part.
int non_nilpotent_rank(const ExactMatrix& a);

// Least k with M^k entrywise positive, searched up to the Wielandt bound
// n^2 - 2n + 2; nullopt exponent means not primitive.
struct PrimitivityResult {
    bool primitive = false;
    int exponent = 0; // valid when primitive
};
PrimitivityResult is_primitive(const ExactMatrix& m);

// Permutation helpers. perm maps index i of `a` to perm[i] of `b` such that
// a(i,j) == b(perm[i], perm[j]).
ExactMatrix permutation_matrix(const std::vector<int>& perm);
ExactMatrix conjugate_by_permutation(const ExactMatrix& m, const std::vector<int>& perm);

} // namespace subkit
