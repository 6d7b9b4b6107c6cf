#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "subkit/bratteli.hpp"
#include "subkit/exact_matrix.hpp"

namespace subkit {

// Equivalence certificates operate in the transition-matrix reading: the
// diagram described by generator g has incidence g at every level and labels
// l_{k+1} = g^T l_k from all-ones. An eventually stationary diagram may carry
// a finite prefix of transitions before the generator repeats.
class DiagramSpec {
public:
    DiagramSpec() = default;
    explicit DiagramSpec(ExactMatrix generator);
    DiagramSpec(std::vector<ExactMatrix> prefix, std::optional<ExactMatrix> generator);

    static DiagramSpec from_diagram(const BratteliDiagram& d);

    bool eventually_stationary() const { return generator_.has_value(); }
    const std::optional<ExactMatrix>& generator() const { return generator_; }
    const std::vector<ExactMatrix>& prefix() const { return prefix_; }

    // Transition k in the transition-matrix reading (|V_k| x |V_{k+1}|).
    const ExactMatrix& transition_at(size_t k) const;
    bool has_transition(size_t k) const;
    int level_size(size_t k) const;
    std::vector<mpz_class> labels_at(size_t level) const;
    // Product of transitions [from, from + count).
    ExactMatrix composite(size_t from, size_t count) const;

    bool operator==(const DiagramSpec& o) const;
    bool operator!=(const DiagramSpec& o) const { return !(*this == o); }

private:
    void normalize();
    std::vector<ExactMatrix> prefix_;
    std::optional<ExactMatrix> generator_;
};

// Interleaving chain C_1..C_K: adjacent products C_i C_{i+1} reproduce
// consecutive telescoped transitions of the two diagrams, odd products on the
// left diagram from its base, even products on the right diagram entered at
// right_offset. A declared period (two materialized copies are required)
// extends the identities to all levels.
struct InterleaveLink {
    DiagramSpec left, right;
    std::vector<ExactMatrix> chain;
    std::vector<int> left_counts;
    std::vector<int> right_counts;
    size_t right_offset = 0;
    size_t period_start = 0;
    size_t period_len = 0; // 0 = finite prefix claim only
};

// right.generator == left.generator ^ stride (stride telescoping).
struct PowerLink {
    DiagramSpec left, right;
    unsigned stride = 1;
};

// right.generator == relabeling of left.generator by perm.
struct IsoLink {
    DiagramSpec left, right;
    std::vector<int> perm;
};

using CertificateLink = std::variant<InterleaveLink, PowerLink, IsoLink>;

struct UnorderedCertificate {
    std::vector<CertificateLink> links;
};

const DiagramSpec& link_left(const CertificateLink& l);
const DiagramSpec& link_right(const CertificateLink& l);

// Checks one link in isolation.
bool verify_link(const CertificateLink& link, std::string* why = nullptr);

// Checks every link and that the links chain d1 to d2 (links may be traversed
// in either direction). Malformed shapes raise std::invalid_argument.
bool verify_certificate(const UnorderedCertificate& cert, const DiagramSpec& d1,
                        const DiagramSpec& d2, std::string* why = nullptr);
bool verify_certificate(const UnorderedCertificate& cert, const BratteliDiagram& d1,
                        const BratteliDiagram& d2, std::string* why = nullptr);

} // namespace subkit
