#pragma once

#include <gmpxx.h>

#include <string>
#include <vector>

#include "subkit/cancellation.hpp"

namespace subkit {

// Polynomial with arbitrary-precision integer coefficients, stored low to
// high degree with a nonzero leading coefficient (the zero polynomial is the
// empty coefficient list).
class IntPolynomial {
public:
    IntPolynomial() = default;
    explicit IntPolynomial(std::vector<mpz_class> coeffs);

    static IntPolynomial zero() { return IntPolynomial(); }
    static IntPolynomial constant(const mpz_class& c);
    // x - r
    static IntPolynomial linear_root(const mpz_class& r);

    bool is_zero() const { return coeffs_.empty(); }
    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
    const mpz_class& coeff(int i) const;
    const mpz_class& leading() const;
    const std::vector<mpz_class>& coeffs() const { return coeffs_; }

    mpz_class eval(const mpz_class& x) const;
    mpq_class eval(const mpq_class& x) const;
    int sign_at(const mpq_class& x) const;

    IntPolynomial derivative() const;
    IntPolynomial primitive_part() const; // divide by content, keep sign of leading coeff
    mpz_class content() const;            // gcd of coefficients, nonnegative

    IntPolynomial operator+(const IntPolynomial& o) const;
    IntPolynomial operator-(const IntPolynomial& o) const;
    IntPolynomial operator*(const IntPolynomial& o) const;
    IntPolynomial operator-() const;
    bool operator==(const IntPolynomial& o) const { return coeffs_ == o.coeffs_; }

    // Exact division; throws if the remainder is nonzero.
    IntPolynomial divide_exact(const IntPolynomial& divisor) const;
    // Deflate by a known integer root r: p / (x - r); throws if p(r) != 0.
    IntPolynomial deflate(const mpz_class& r) const;

    std::string to_string(const std::string& var = "x") const;

private:
    void normalize();
    std::vector<mpz_class> coeffs_;
};

// Greatest common divisor, primitive with positive leading coefficient.
IntPolynomial poly_gcd(IntPolynomial a, IntPolynomial b);

// Square-free part: p / gcd(p, p').
IntPolynomial square_free_part(const IntPolynomial& p);

// Yun's algorithm: factors[i] is the (square-free) product of the irreducible
// factors of multiplicity i+1; trivial entries are constant 1.
std::vector<IntPolynomial> square_free_factorization(const IntPolynomial& p);

// Sturm chain of a square-free polynomial (built from any polynomial via its
// square-free part). Counts real roots in half-open intervals (a, b].
class SturmChain {
public:
    explicit SturmChain(const IntPolynomial& p, const Cancellation& cancel = {});

    int variations_at(const mpq_class& x) const;
    int count_roots(const mpq_class& a, const mpq_class& b) const; // roots in (a, b]
    const IntPolynomial& polynomial() const { return p_; }

private:
    IntPolynomial p_;
    std::vector<IntPolynomial> chain_;
};

// All real roots of p isolated into disjoint intervals (lo, hi] with
// lo < root <= hi and hi - lo <= width. Returned in increasing order.
struct RootInterval {
    mpq_class lo, hi;
};
std::vector<RootInterval> isolate_real_roots(const IntPolynomial& p,
                                             const mpq_class& width,
                                             const Cancellation& cancel = {});

// Integer roots of p (each listed once), in increasing order.
std::vector<mpz_class> integer_roots(const IntPolynomial& p,
                                     const Cancellation& cancel = {});

} // namespace subkit
