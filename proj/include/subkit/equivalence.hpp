#pragma once

#include <optional>
#include <string>

#include "subkit/cancellation.hpp"
#include "subkit/certificate.hpp"
#include "subkit/pf.hpp"
#include "subkit/supernatural.hpp"

namespace subkit {

// State splitting: m = nFactor * sFactor with unit column sums on nFactor
// yields the telescope-equivalent generator sFactor * nFactor plus a
// machine-checkable interleaving certificate.
struct StateSplitResult {
    ExactMatrix result;
    UnorderedCertificate certificate;
};
StateSplitResult state_split(const ExactMatrix& m, const ExactMatrix& n_factor,
                             const ExactMatrix& s_factor);

// Equivalent primitive generator on target_letters letters: pass to a power
// with entries >= target_letters, then split through the explicit unit-column
// factor. Returns the certificate chain alongside.
struct EnlargeResult {
    ExactMatrix result;
    UnorderedCertificate certificate;
    int power_used;
};
EnlargeResult enlarge(const ExactMatrix& m, int target_letters);

enum class Verdict { Equivalent, Distinguished, Unknown };

struct MatrixInvariants {
    bool primitive = false;
    std::optional<int> primitivity_exponent;
    bool invertible = false;
    int non_nilpotent_rank = 0;
    std::optional<bool> purely_aperiodic; // primitive inputs only
    std::optional<SupernaturalNumber> supernat;
};
MatrixInvariants matrix_invariants(const ExactMatrix& m, const Cancellation& cancel = {});

struct SearchBudget {
    int max_power = 8;
    int max_alphabet = 8;
    int max_chain = 12;
    long max_split_nodes = 200000;
};

// Optional user-supplied witness for the invertible-case characterization:
// J nonneg invertible, exponent sequences k_n = k1 + n*dk, l_n = l1 + n*dl.
struct InvertibleWitness {
    ExactMatrix j;
    unsigned k1 = 1, l1 = 1, dk = 1, dl = 1;
};

struct EquivalenceOutcome {
    Verdict verdict = Verdict::Unknown;
    std::string distinguished_by;                      // when Distinguished
    std::optional<UnorderedCertificate> certificate;   // when Equivalent
    MatrixInvariants left, right;
};

// Invariant battery (primitivity, invertibility, non-nilpotent rank, pure
// aperiodicity + field, supernatural) followed by a bounded certificate
// search: equal powers up to isomorphism, single state-splitting bridges, and
// rank-one reduction through a common single-vertex tower. Sound: every
// Equivalent answer carries a certificate that re-verifies.
EquivalenceOutcome analyze_equivalence(const ExactMatrix& m, const ExactMatrix& n,
                                       const SearchBudget& budget = {},
                                       const Cancellation& cancel = {});

// Verifies a witness as above and converts it into an interleaving
// certificate; nullopt when any of the matrix conditions fail.
std::optional<UnorderedCertificate> certificate_from_witness(const ExactMatrix& m,
                                                             const ExactMatrix& n,
                                                             const InvertibleWitness& w);

} // namespace subkit
