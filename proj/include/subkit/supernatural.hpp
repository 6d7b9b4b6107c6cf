#pragma once

#include <map>
#include <optional>
#include <string>

#include "subkit/exact_matrix.hpp"

namespace subkit {

// Formal product of primes with exponents in N u {infinity}. Complete
// invariant for single-tower (UHF) diagrams.
class SupernaturalNumber {
public:
    struct Exponent {
        bool infinite = false;
        unsigned long value = 0; // meaningful when finite
        bool operator==(const Exponent&) const = default;
    };

    SupernaturalNumber() = default; // represents 1

    void set_infinite(const mpz_class& prime);
    void add_finite(const mpz_class& prime, unsigned long exponent);
    // Multiply in every prime of n with infinite exponent.
    void absorb_infinite(const mpz_class& n);
    // Multiply in the finite factorization of n (primes already infinite stay so).
    void absorb_finite(const mpz_class& n);

    const std::map<mpz_class, Exponent>& exponents() const { return exps_; }
    bool is_one() const { return exps_.empty(); }

    bool operator==(const SupernaturalNumber& o) const { return exps_ == o.exps_; }
    bool operator!=(const SupernaturalNumber& o) const { return !(*this == o); }

    std::string to_string() const; // e.g. "2·3^∞"

private:
    std::map<mpz_class, Exponent> exps_;
};

// Trial-division factorization; throws when a composite cofactor cannot be
// resolved (far outside the sizes this library targets).
std::map<mpz_class, unsigned long> factorize(const mpz_class& n);

// Outer-product decomposition m = c * r of a rank-one non-negative integer
// matrix, with r primitive (gcd of entries 1). s = r . c is the tower ratio.
struct RankOneSplit {
    std::vector<mpz_class> c; // column
    std::vector<mpz_class> r; // row
    mpz_class sum_c;
    mpz_class s;
};
std::optional<RankOneSplit> rank_one_split(const ExactMatrix& m);

// The UHF invariant of the single-tower diagram reachable from m read as a
// transition matrix: defined for 1x1 matrices and for rank-one m = c*r, where
// the tower dimensions are (sum c) * s^k. Absent otherwise.
std::optional<SupernaturalNumber> supernatural(const ExactMatrix& m);

} // namespace subkit
