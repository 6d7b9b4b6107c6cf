#pragma once

#include <optional>
#include <vector>

#include "subkit/exact_matrix.hpp"

namespace subkit {

// A leveled diagram with unital label rule d_{n+1}(j) = sum_i T_n(i,j) d_n(i),
// d_0 = all-ones. Transition incidence T_n has shape |V_n| x |V_{n+1}|; a
// substitution matrix M (rows = new letters) enters as its transpose, so the
// label recursion reads d_{n+1} = M d_n. Stationary diagrams carry their
// generator and answer depth-independent questions symbolically.
class BratteliDiagram {
public:
    static BratteliDiagram stationary(ExactMatrix generator);
    static BratteliDiagram finite(std::vector<ExactMatrix> incidences);

    bool stationary() const { return stationary_; }
    // Generator in substitution orientation; throws for finite diagrams.
    const ExactMatrix& generator() const;
    // Number of transition steps for finite diagrams.
    std::optional<int> depth() const;

    // Incidence |V_n| x |V_{n+1}|.
    ExactMatrix transition(int n) const;
    int level_size(int n) const;
    std::vector<mpz_class> labels(int n) const;

    bool operator==(const BratteliDiagram& o) const;

private:
    BratteliDiagram() = default;
    bool stationary_ = false;
    ExactMatrix generator_;
    std::vector<ExactMatrix> incid_;
};

// Validates the generator (square, non-negative, no zero row or column).
BratteliDiagram stationary_diagram(const ExactMatrix& m);

// Transitions of the result are products of the spanned transitions; labels
// restrict. cut_levels must be strictly increasing and start at 0. A constant
// stride k on a stationary diagram yields the stationary diagram of M^k.
BratteliDiagram telescope(const BratteliDiagram& d, const std::vector<int>& cut_levels);
BratteliDiagram telescope_stride(const BratteliDiagram& d, int stride, int steps = 0);

// Permutation p with m(i,j) == n(p[i], p[j]) for all i,j (the two stationary
// diagrams are isomorphic by relabeling); backtracking with row/column
// multiset pruning. Size mismatch yields nullopt.
std::optional<std::vector<int>> isomorphic_stationary(const ExactMatrix& m,
                                                      const ExactMatrix& n);

} // namespace subkit
