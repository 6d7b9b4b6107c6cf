#include "subkit/exact_matrix.hpp"

#include <sstream>
#include <stdexcept>

namespace subkit {

ExactMatrix::ExactMatrix(int rows, int cols) : rows_(rows), cols_(cols) {
    if (rows < 1 || cols < 1)
        throw std::invalid_argument("matrix dimensions must be positive");
    a_.assign(static_cast<size_t>(rows) * cols, mpz_class(0));
}

ExactMatrix::ExactMatrix(int rows, int cols, std::vector<mpz_class> entries)
    : rows_(rows), cols_(cols), a_(std::move(entries)) {
    if (rows < 1 || cols < 1)
        throw std::invalid_argument("matrix dimensions must be positive");
    if (a_.size() != static_cast<size_t>(rows) * cols)
        throw std::invalid_argument("entry count does not match dimensions");
}

ExactMatrix::ExactMatrix(std::initializer_list<std::initializer_list<long>> rows) {
    rows_ = static_cast<int>(rows.size());
    if (rows_ == 0) throw std::invalid_argument("matrix must be nonempty");
    cols_ = static_cast<int>(rows.begin()->size());
    if (cols_ == 0) throw std::invalid_argument("matrix rows must be nonempty");
    a_.reserve(static_cast<size_t>(rows_) * cols_);
    for (const auto& r : rows) {
        if (static_cast<int>(r.size()) != cols_)
            throw std::invalid_argument("ragged matrix initializer");
        for (long v : r) a_.emplace_back(v);
    }
}

ExactMatrix ExactMatrix::identity(int n) {
    ExactMatrix m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = 1;
    return m;
}

size_t ExactMatrix::idx(int i, int j) const {
    if (i < 0 || i >= rows_ || j < 0 || j >= cols_)
        throw std::out_of_range("matrix index out of range");
    return static_cast<size_t>(i) * cols_ + j;
}

ExactMatrix ExactMatrix::transpose() const {
    ExactMatrix t(cols_, rows_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j)
            t(j, i) = (*this)(i, j);
    return t;
}

ExactMatrix ExactMatrix::operator*(const ExactMatrix& rhs) const {
    if (cols_ != rhs.rows_)
        throw std::domain_error("matrix dimension mismatch in multiply");
    ExactMatrix out(rows_, rhs.cols_);
    mpz_class acc, tmp;
    for (int i = 0; i < rows_; ++i) {
        for (int j = 0; j < rhs.cols_; ++j) {
            acc = 0;
            for (int k = 0; k < cols_; ++k) {
                tmp = (*this)(i, k) * rhs(k, j);
                acc += tmp;
            }
            out(i, j) = acc;
        }
    }
    return out;
}

bool ExactMatrix::operator==(const ExactMatrix& rhs) const {
    return rows_ == rhs.rows_ && cols_ == rhs.cols_ && a_ == rhs.a_;
}

bool ExactMatrix::is_nonnegative() const {
    for (const auto& v : a_)
        if (v < 0) return false;
    return true;
}

bool ExactMatrix::has_zero_row() const {
    for (int i = 0; i < rows_; ++i) {
        bool all_zero = true;
        for (int j = 0; j < cols_; ++j)
            if ((*this)(i, j) != 0) { all_zero = false; break; }
        if (all_zero) return true;
    }
    return false;
}

bool ExactMatrix::has_zero_column() const {
    for (int j = 0; j < cols_; ++j) {
        bool all_zero = true;
        for (int i = 0; i < rows_; ++i)
            if ((*this)(i, j) != 0) { all_zero = false; break; }
        if (all_zero) return true;
    }
    return false;
}

bool ExactMatrix::is_substitution_matrix() const {
    return square() && is_nonnegative() && !has_zero_row() && !has_zero_column();
}

std::vector<mpz_class> ExactMatrix::row_sums() const {
    std::vector<mpz_class> s(rows_, mpz_class(0));
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j)
            s[i] += (*this)(i, j);
    return s;
}

std::vector<mpz_class> ExactMatrix::col_sums() const {
    std::vector<mpz_class> s(cols_, mpz_class(0));
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j)
            s[j] += (*this)(i, j);
    return s;
}

mpz_class ExactMatrix::max_entry() const {
    mpz_class m = a_.empty() ? mpz_class(0) : a_[0];
    for (const auto& v : a_)
        if (v > m) m = v;
    return m;
}

std::vector<mpz_class> ExactMatrix::apply(const std::vector<mpz_class>& v) const {
    if (static_cast<int>(v.size()) != cols_)
        throw std::domain_error("vector length mismatch in apply");
    std::vector<mpz_class> out(rows_, mpz_class(0));
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j)
            out[i] += (*this)(i, j) * v[j];
    return out;
}

std::vector<mpz_class> ExactMatrix::apply_transposed(const std::vector<mpz_class>& v) const {
    if (static_cast<int>(v.size()) != rows_)
        throw std::domain_error("vector length mismatch in apply_transposed");
    std::vector<mpz_class> out(cols_, mpz_class(0));
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j)
            out[j] += (*this)(i, j) * v[i];
    return out;
}

std::string ExactMatrix::to_string() const {
    std::ostringstream os;
    os << "[";
    for (int i = 0; i < rows_; ++i) {
        if (i) os << "; ";
        for (int j = 0; j < cols_; ++j) {
            if (j) os << " ";
            os << (*this)(i, j);
        }
    }
    os << "]";
    return os.str();
}

ExactMatrix multiply(const ExactMatrix& a, const ExactMatrix& b) { return a * b; }

ExactMatrix matrix_power(const ExactMatrix& a, unsigned long k) {
    if (!a.square())
        throw std::domain_error("matrix power requires a square matrix");
    ExactMatrix result = ExactMatrix::identity(a.rows());
    ExactMatrix base = a;
    while (k > 0) {
        if (k & 1UL) result = result * base;
        k >>= 1UL;
        if (k > 0) base = base * base;
    }
    return result;
}

ExactMatrix transpose(const ExactMatrix& a) { return a.transpose(); }

namespace {

// Bareiss fraction-free elimination. Returns the rank; when det_out is given
// the matrix must be square and receives the exact determinant.
int bareiss(ExactMatrix m, mpz_class* det_out) {
    const int n = m.rows(), c = m.cols();
    mpz_class prev_pivot = 1;
    int sign = 1;
    int rank = 0;
    int row = 0;
    for (int col = 0; col < c && row < n; ++col) {
        int pivot = -1;
        for (int i = row; i < n; ++i)
            if (m(i, col) != 0) { pivot = i; break; }
        if (pivot < 0) {
            if (det_out) { *det_out = 0; return rank; }
            continue;
        }
        if (pivot != row) {
            for (int j = 0; j < c; ++j) std::swap(m(pivot, j), m(row, j));
            sign = -sign;
        }
        for (int i = row + 1; i < n; ++i) {
            for (int j = col + 1; j < c; ++j) {
                mpz_class num = m(row, col) * m(i, j) - m(i, col) * m(row, j);
                mpz_class q;
                mpz_divexact(q.get_mpz_t(), num.get_mpz_t(), prev_pivot.get_mpz_t());
                m(i, j) = q;
            }
            m(i, col) = 0;
        }
        prev_pivot = m(row, col);
        ++row;
        ++rank;
    }
    if (det_out) {
        if (rank < n) *det_out = 0;
        else *det_out = sign > 0 ? prev_pivot : mpz_class(-prev_pivot);
    }
    return rank;
}

} // namespace

mpz_class determinant(const ExactMatrix& a) {
    if (!a.square())
        throw std::domain_error("determinant requires a square matrix");
    mpz_class det;
    bareiss(a, &det);
    return det;
}

int matrix_rank(const ExactMatrix& a) { return bareiss(a, nullptr); }

int non_nilpotent_rank(const ExactMatrix& a) {
    if (!a.square())
        throw std::domain_error("non_nilpotent_rank requires a square matrix");
    return matrix_rank(matrix_power(a, static_cast<unsigned long>(a.rows())));
}

PrimitivityResult is_primitive(const ExactMatrix& m) {
    if (!m.square())
        throw std::domain_error("primitivity requires a square matrix");
    if (!m.is_nonnegative())
        throw std::domain_error("primitivity requires a non-negative matrix");
    const int n = m.rows();
    const long bound = static_cast<long>(n) * n - 2L * n + 2; // Wielandt
    std::vector<char> base(static_cast<size_t>(n) * n), cur;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            base[static_cast<size_t>(i) * n + j] = m(i, j) > 0 ? 1 : 0;
    cur = base;
    auto all_positive = [&](const std::vector<char>& b) {
        for (char v : b) if (!v) return false;
        return true;
    };
    for (long k = 1; k <= bound; ++k) {
        if (all_positive(cur)) return {true, static_cast<int>(k)};
        if (k == bound) break;
        // boolean product cur * base
        std::vector<char> next(static_cast<size_t>(n) * n, 0);
        for (int i = 0; i < n; ++i)
            for (int t = 0; t < n; ++t)
                if (cur[static_cast<size_t>(i) * n + t])
                    for (int j = 0; j < n; ++j)
                        if (base[static_cast<size_t>(t) * n + j])
                            next[static_cast<size_t>(i) * n + j] = 1;
        cur.swap(next);
    }
    return {false, 0};
}

ExactMatrix permutation_matrix(const std::vector<int>& perm) {
    const int n = static_cast<int>(perm.size());
    ExactMatrix p(n, n);
    std::vector<char> seen(n, 0);
    for (int i = 0; i < n; ++i) {
        if (perm[i] < 0 || perm[i] >= n || seen[perm[i]])
            throw std::invalid_argument("not a permutation");
        seen[perm[i]] = 1;
        p(i, perm[i]) = 1;
    }
    return p;
}

ExactMatrix conjugate_by_permutation(const ExactMatrix& m, const std::vector<int>& perm) {
    if (!m.square() || static_cast<int>(perm.size()) != m.rows())
        throw std::domain_error("permutation size mismatch");
    const int n = m.rows();
    ExactMatrix out(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            out(perm[i], perm[j]) = m(i, j);
    return out;
}

} // namespace subkit
