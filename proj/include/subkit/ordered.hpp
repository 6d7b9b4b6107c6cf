#pragma once

#include <optional>
#include <string>
#include <vector>

#include "subkit/bratteli.hpp"
#include "subkit/substitution.hpp"

namespace subkit {

// Ordered Bratteli diagram presented by its chain of step substitutions:
// step k maps level-(k+1) letters to words over level-k letters, and the
// order word at a vertex is exactly its image word. Stationary diagrams are
// generated by one square substitution.
class OrderedDiagram {
public:
    static OrderedDiagram stationary(Substitution generator);
    static OrderedDiagram chain(std::vector<Substitution> steps);

    bool stationary() const { return stationary_; }
    const Substitution& generator() const;
    std::optional<int> depth() const;
    // Step substitution from level k+1 down to level k.
    const Substitution& step(int k) const;
    int level_size(int level) const;
    // Ordered list of incoming-edge sources for a vertex at level >= 1.
    const Word& order_word(int level, int vertex) const;
    std::vector<mpz_class> labels(int level) const;

    BratteliDiagram base() const;

private:
    OrderedDiagram() = default;
    bool stationary_ = false;
    Substitution gen_ = Substitution::identity(Alphabet::latin(1));
    std::vector<Substitution> steps_;
};

OrderedDiagram ordered_from_substitution(const Substitution& s);

// Path order is decided by the last differing edge; for stationary diagrams a
// constant stride k telescoping equals the diagram of power(sigma, k), which
// is the implementation route.
OrderedDiagram ordered_telescope(const OrderedDiagram& d, const std::vector<int>& cut_levels);

// Counts of maximal/minimal infinite paths of a stationary ordered diagram:
// cycle vertices of the last-/first-letter maps.
struct PathCounts {
    int max_count = 0;
    int min_count = 0;
    std::vector<int> max_cycle_vertices;
    std::vector<int> min_cycle_vertices;
};
PathCounts path_counts(const Substitution& s);

// True iff no infinite path is simultaneously maximal and minimal. Requires a
// primitive square substitution with some image longer than one letter.
bool max_min_disjoint(const Substitution& s);

// Edge into a level: the range vertex and the rank of the edge within the
// range vertex's order word.
struct PathEdge {
    int range_vertex = 0;
    int rank = 0;
    bool operator==(const PathEdge&) const = default;
};

// Finite path from the base level; edges[i] enters level i+1.
class FinitePath {
public:
    FinitePath() = default;
    explicit FinitePath(std::vector<PathEdge> edges) : edges_(std::move(edges)) {}

    int length() const { return static_cast<int>(edges_.size()); }
    const std::vector<PathEdge>& edges() const { return edges_; }
    std::vector<PathEdge>& edges() { return edges_; }
    int top_vertex() const;
    bool operator==(const FinitePath&) const = default;

private:
    std::vector<PathEdge> edges_;
};

// Throws std::invalid_argument when the path is inconsistent with d.
void validate_path(const OrderedDiagram& d, const FinitePath& p);
// Base vertex the path starts from.
int path_source(const OrderedDiagram& d, const FinitePath& p);

FinitePath minimal_path_into(const OrderedDiagram& d, int length, int top_vertex);
FinitePath maximal_path_into(const OrderedDiagram& d, int length, int top_vertex);

// Order-successor: increment the lowest non-maximal edge, reset everything
// below to minimal; nullopt for the maximal path into its top vertex.
std::optional<FinitePath> vershik_successor(const OrderedDiagram& d, const FinitePath& p);

// -1, 0, +1 under the last-differing-edge order; throws for incomparable
// paths (different lengths or top vertices).
int compare_paths(const OrderedDiagram& d, const FinitePath& a, const FinitePath& b);

// Chain description of the standard triangular tower: level algebras and the
// ordered embedding lists.
std::string taf_description(const OrderedDiagram& d, int depth);

} // namespace subkit
