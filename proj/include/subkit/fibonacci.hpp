#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "subkit/exact_matrix.hpp"
#include "subkit/ordered_equiv.hpp"
#include "subkit/substitution.hpp"

namespace subkit {

// F = [[1,1],[1,0]], J the swap, and the factorization primes P = JF, Q = FJ.
ExactMatrix fibonacci_matrix();
ExactMatrix swap_matrix();
ExactMatrix pq_p();
ExactMatrix pq_q();

// Word over {P, Q} with optional J factors on either side; every non-negative
// integer 2x2 matrix of determinant +-1 has exactly one canonical form (J on
// the right when the determinant is -1).
struct PQWord {
    std::string letters; // 'P' and 'Q'
    bool left_j = false;
    bool right_j = false;

    std::string to_string() const;
    bool operator==(const PQWord&) const = default;
};

ExactMatrix evaluate_pq(const PQWord& w);
// Parse a string like "QPQJ" or "JQP"; throws on malformed input.
PQWord parse_pq(const std::string& s);

// Euclidean peel; nullopt when |det| != 1 or the peel leaves the cone.
std::optional<PQWord> pq_factorize(const ExactMatrix& m);

// Split classification of A B = F^m: either (F^k, F^l) or (F^k J, J F^l).
struct FibFactorClass {
    enum Kind { PlainSplit, TwistedSplit } kind;
    int k = 0, l = 0;
    bool operator==(const FibFactorClass&) const = default;
};
std::optional<FibFactorClass> classify_fib_factors(const ExactMatrix& a,
                                                   const ExactMatrix& b);

// Exponent m with x == F^m (m >= 0), recovered from entry growth.
std::optional<int> fibonacci_power_of(const ExactMatrix& x);

// All ordered substitutions on {a, b} with abelianization F^l, canonically
// ordered. Guarded at l <= 6.
std::vector<Substitution> enumerate_ordered_fib(int l);
// Streaming form used by the search; fn returning true stops and the index of
// that candidate is reported.
std::optional<size_t> for_each_ordered_fib(int l, const std::function<bool(const Substitution&)>& fn);
unsigned long count_ordered_fib(int l);

// Ordered telescope equivalence specialized to Fibonacci powers: every chain
// member carries a matrix F^{l_i}, the first one a multiple of the right
// input's power. Certificates re-verify letter by letter.
OrderedOutcome fib_ordered_equivalence(const Substitution& s1, const Substitution& s2,
                                       const OrderedBudget& budget = {},
                                       const Cancellation& cancel = {});

} // namespace subkit
