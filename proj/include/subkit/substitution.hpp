#pragma once

#include <map>
#include <set>
#include <vector>

#include "subkit/exact_matrix.hpp"
#include "subkit/word.hpp"

namespace subkit {

// A symbolic substitution: each domain letter maps to a nonempty word over
// the codomain alphabet. Square when domain == codomain; rectangular
// substitutions carry the level maps of interleaved diagram chains.
class Substitution {
public:
    Substitution(Alphabet domain, Alphabet codomain, std::vector<Word> images);
    // Square substitution given by image words over one alphabet.
    Substitution(Alphabet alphabet, std::vector<Word> images);

    static Substitution identity(const Alphabet& alphabet);

    const Alphabet& domain() const { return domain_; }
    const Alphabet& codomain() const { return codomain_; }
    bool square() const { return domain_ == codomain_; }
    const Word& image(int letter) const { return images_.at(letter); }
    const std::vector<Word>& images() const { return images_; }

    // Extension to words by concatenation.
    Word apply(const Word& w) const;

    bool operator==(const Substitution& other) const;
    bool operator!=(const Substitution& other) const { return !(*this == other); }
    bool operator<(const Substitution& other) const; // canonical ordering for search

    std::string to_string() const;

private:
    Alphabet domain_, codomain_;
    std::vector<Word> images_;
};

// compose(outer, inner): l -> outer(inner(l)). Requires inner.codomain ==
// outer.domain. Abelianizations satisfy
//   abelianize(compose(outer, inner)) == abelianize(inner) * abelianize(outer).
Substitution compose(const Substitution& outer, const Substitution& inner);

// k-fold self composition of a square substitution; k = 0 gives the identity.
Substitution power(const Substitution& s, unsigned int k);

// Letter-count matrix: entry (i, j) = occurrences of codomain letter j in the
// image of domain letter i.
ExactMatrix abelianize(const Substitution& s);

// The exact set of admissible words of length <= k, with their closure data.
class FactorLanguage {
public:
    FactorLanguage(Substitution substitution, int max_length, std::set<Word> factors);

    const Substitution& substitution() const { return substitution_; }
    int max_length() const { return max_length_; }
    const std::set<Word>& factors() const { return factors_; }
    bool contains(const Word& w) const { return factors_.count(w) > 0; }

private:
    Substitution substitution_;
    int max_length_;
    std::set<Word> factors_;
};

// Least fixpoint of S |-> S u { factors of sigma(w) of length <= k : w in S },
// seeded with the single letters. Requires a square substitution and k >= 1.
FactorLanguage factor_language(const Substitution& s, int k);

// first_letter_map(s)[l] = first letter of s(l); likewise last_letter_map.
std::vector<int> first_letter_map(const Substitution& s);
std::vector<int> last_letter_map(const Substitution& s);

// Letters lying on cycles of a functional graph f: L -> L.
std::vector<int> cycle_vertices(const std::vector<int>& f);

// True iff both letter-boundary maps have a unique cycle which is a fixed
// point: all sigma^n(l) eventually share one first and one last letter.
bool is_proper(const Substitution& s);

} // namespace subkit
