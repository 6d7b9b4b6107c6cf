#pragma once

#include <optional>
#include <string>
#include <vector>

#include "subkit/cancellation.hpp"
#include "subkit/equivalence.hpp"
#include "subkit/ordered.hpp"

namespace subkit {

// Interleaving chain of rectangular ordered substitutions tau_1, tau_2, ...
// with compose(tau_{2i}, tau_{2i-1}) == power(left, p_i) and
// compose(tau_{2i+1}, tau_{2i}) == power(right, q_i), letter for letter.
// A pure relabeling (empty chain) is recorded through `relabel`.
struct OrderedLink {
    Substitution left, right;
    std::vector<int> relabel;             // nonempty: right == relabeling of left
    std::vector<Substitution> chain;      // prefix + two materialized periods
    std::vector<int> left_powers, right_powers;
    size_t period_start = 0, period_len = 0;

    OrderedLink() : left(Substitution::identity(Alphabet::latin(1))),
                    right(Substitution::identity(Alphabet::latin(1))) {}
};

struct OrderedCertificate {
    std::vector<OrderedLink> links;
};

bool verify_ordered_link(const OrderedLink& link, std::string* why = nullptr);
bool verify_ordered_certificate(const OrderedCertificate& cert, const Substitution& s1,
                                const Substitution& s2, std::string* why = nullptr);

struct OrderedBudget {
    int max_alphabet = 3;
    int max_chain = 8;
    int max_power = 4;
    long max_nodes = 200000;
    int threads = 1;
};

struct OrderedOutcome {
    Verdict verdict = Verdict::Unknown;
    std::string distinguished_by;
    std::optional<OrderedCertificate> certificate;
    PathCounts left_counts, right_counts;
};

// Unordered invariant battery on the abelianizations, then max/min path
// count comparison, then a bounded search for interleaving chains (pure
// relabelings, single-letter tower bridges, and period-two chains). Sound:
// certificates re-verify by letter-level composition.
OrderedOutcome analyze_ordered_equivalence(const Substitution& s1, const Substitution& s2,
                                           const OrderedBudget& budget = {},
                                           const Cancellation& cancel = {});

} // namespace subkit
