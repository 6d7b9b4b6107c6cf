#pragma once

#include <optional>

#include "subkit/cancellation.hpp"
#include "subkit/exact_matrix.hpp"
#include "subkit/polynomial.hpp"

namespace subkit {

// Exact characteristic polynomial det(xI - M), monic, via Faddeev-LeVerrier.
IntPolynomial characteristic_polynomial(const ExactMatrix& m);

// Exact spectral data of a primitive matrix. The dominant eigenvalue of a
// monic integer polynomial is rational iff it is an integer, so rationality
// is decidable by Sturm root counting alone.
struct PFReport {
    bool is_primitive = false;
    std::optional<int> primitivity_exponent;
    bool pf_is_rational = false;
    std::optional<mpz_class> pf_integer_value;
    mpq_class isolation_lo, isolation_hi;  // lo < lambda < hi
    int minimal_polynomial_degree = 0;
    IntPolynomial pf_minimal_polynomial;
    IntPolynomial characteristic; // convenience copy
};

PFReport pf_report(const ExactMatrix& m, const Cancellation& cancel = {});

// Primitive with irrational dominant eigenvalue.
bool purely_aperiodic(const ExactMatrix& m, const Cancellation& cancel = {});

enum class FieldCompatibility { Compatible, Incompatible, Indeterminate };

// Compares Q[lambda_M] and Q[lambda_N]; fully decided for minimal-polynomial
// degrees 1 and 2, Indeterminate when both degrees are >= 3 and equal.
FieldCompatibility field_compatible(const ExactMatrix& m, const ExactMatrix& n,
                                    const Cancellation& cancel = {});

enum class EigenvectorSide { Left, Right };

// Rational enclosure of the dominant eigenvector. Right eigenvectors satisfy
// M^T v = lambda v and are normalized to sum 1 (letter frequencies); left
// eigenvectors satisfy M u = lambda u and are normalized so the minimum entry
// is 1 (tile lengths).
struct EigenvectorApprox {
    EigenvectorSide side;
    std::vector<mpq_class> entries;
    mpq_class error_bound;
};

EigenvectorApprox pf_eigenvector(const ExactMatrix& m, EigenvectorSide side,
                                 const mpq_class& tolerance,
                                 const Cancellation& cancel = {});

// Square-free kernel of a positive integer (trial division backed; throws on
// inputs whose unfactored part cannot be certified square-free).
mpz_class square_free_kernel(const mpz_class& n);

} // namespace subkit
