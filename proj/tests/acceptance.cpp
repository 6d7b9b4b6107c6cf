// Acceptance suite: runs every criterion end to end and prints one line per
// criterion. Exits nonzero if any fails or overruns its time allowance.

#include <chrono>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>
#include <vector>

#include "subkit/fibonacci.hpp"
#include "subkit/io.hpp"

using namespace subkit;

namespace {

struct Criterion {
    int number;
    std::string title;
    double seconds_allowed;
    std::function<void(std::ostream&)> run; // throws on failure
};

struct Failure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

void require(bool ok, const std::string& what) {
    if (!ok) throw Failure(what);
}

Substitution make_sub(const std::vector<std::string>& images) {
    Alphabet a = Alphabet::latin(static_cast<int>(images.size()));
    std::vector<Word> ws;
    for (const auto& im : images) {
        std::vector<int32_t> syms;
        for (char c : im) syms.push_back(c - 'a');
        ws.emplace_back(a, std::move(syms));
    }
    return Substitution(a, std::move(ws));
}

Substitution fib1() { return make_sub({"ab", "a"}); }
Substitution fib2() { return make_sub({"ba", "a"}); }
ExactMatrix F() { return ExactMatrix{{1, 1}, {1, 0}}; }

std::vector<mpz_class> mpz_vec(std::initializer_list<long> xs) {
    std::vector<mpz_class> out;
    for (long x : xs) out.emplace_back(x);
    return out;
}

// every Equivalent verdict produced anywhere in this suite re-verifies here
int g_equivalents_checked = 0;

void check_unordered(const EquivalenceOutcome& res, const ExactMatrix& a,
                     const ExactMatrix& b) {
    if (res.verdict != Verdict::Equivalent) return;
    require(res.certificate.has_value(), "equivalent verdict without certificate");
    std::string why;
    require(verify_certificate(*res.certificate, DiagramSpec(a), DiagramSpec(b), &why),
            "certificate failed re-verification: " + why);
    ++g_equivalents_checked;
}

void check_ordered(const OrderedOutcome& res, const Substitution& a, const Substitution& b) {
    if (res.verdict != Verdict::Equivalent) return;
    require(res.certificate.has_value(), "equivalent verdict without certificate");
    std::string why;
    require(verify_ordered_certificate(*res.certificate, a, b, &why),
            "ordered certificate failed re-verification: " + why);
    ++g_equivalents_checked;
}

void criterion_1(std::ostream& log) {
    require(abelianize(fib1()) == F(), "abelianize(sigma1) != F");
    std::vector<long> fb{1, 1};
    for (int i = 2; i < 24; ++i) fb.push_back(fb[i - 1] + fb[i - 2]);
    for (int n = 0; n <= 20; ++n)
        require(power(fib1(), n).image(0).length() == fb[n + 1],
                "|sigma1^n(a)| != f_{n+2} at n=" + std::to_string(n));
    require(matrix_power(F(), 5) == ExactMatrix{{8, 5}, {5, 3}}, "F^5 mismatch");
    log << "Fibonacci arithmetic exact";
}

void criterion_2(std::ostream& log) {
    BratteliDiagram d = stationary_diagram(F());
    BratteliDiagram t = telescope(d, {0, 2, 4, 6, 8});
    require(t.stationary(), "even-level telescope should stay stationary");
    require(t.generator() == ExactMatrix{{2, 1}, {1, 1}}, "telescoped generator mismatch");
    require(t.labels(0) == mpz_vec({1, 1}), "label 0");
    require(t.labels(1) == mpz_vec({3, 2}), "label 1");
    require(t.labels(2) == mpz_vec({8, 5}), "label 2");
    require(t.labels(3) == mpz_vec({21, 13}), "label 3");
    require(t.labels(4) == mpz_vec({55, 34}), "label 4");
    log << "telescoping law with the figure labels";
}

void criterion_3(std::ostream& log) {
    ExactMatrix f5 = matrix_power(F(), 5);
    StateSplitResult res = state_split(f5, ExactMatrix{{1, 1, 0}, {0, 0, 1}},
                                       ExactMatrix{{7, 4}, {1, 1}, {5, 3}});
    require(res.result == ExactMatrix{{7, 7, 4}, {1, 1, 1}, {5, 5, 3}},
            "split result mismatch");
    require(is_primitive(res.result).primitive, "split result not primitive");
    std::string why;
    require(verify_certificate(res.certificate, DiagramSpec(f5), DiagramSpec(res.result), &why),
            "split certificate: " + why);
    ++g_equivalents_checked;
    log << "state splitting reproduces the worked example";
}

void criterion_4(std::ostream& log) {
    auto s12 = supernatural(ExactMatrix{{1, 2}, {1, 2}});
    auto s21 = supernatural(ExactMatrix{{1, 1}, {2, 2}});
    require(s12 && s12->to_string() == "2·3^∞", "supernatural([[1,2],[1,2]])");
    require(s21 && s21->to_string() == "3^∞", "supernatural([[1,1],[2,2]])");
    EquivalenceOutcome tr =
        analyze_equivalence(ExactMatrix{{1, 2}, {1, 2}}, ExactMatrix{{1, 1}, {2, 2}});
    require(tr.verdict == Verdict::Distinguished && tr.distinguished_by == "supernatural",
            "transpose pair must be distinguished by the supernatural invariant");

    auto s33 = supernatural(ExactMatrix{{3, 3}, {3, 3}});
    auto s24 = supernatural(ExactMatrix{{2, 2}, {4, 4}});
    auto s6 = supernatural(ExactMatrix{{6}});
    require(s33 && s24 && s6, "supernatural applicability");
    require(*s33 == *s6 && *s24 == *s6, "2^inf 3^inf values must coincide");
    require(s6->to_string() == "2^∞·3^∞", "supernatural([6]) rendering");
    EquivalenceOutcome eq =
        analyze_equivalence(ExactMatrix{{3, 3}, {3, 3}}, ExactMatrix{{2, 2}, {4, 4}});
    require(eq.verdict == Verdict::Equivalent, "scalar bridge must certify");
    check_unordered(eq, ExactMatrix{{3, 3}, {3, 3}}, ExactMatrix{{2, 2}, {4, 4}});
    log << "supernatural invariants and the [6] bridge";
}

void criterion_5(std::ostream& log) {
    for (int k = 1; k <= 6; ++k)
        require(purely_aperiodic(matrix_power(F(), k)),
                "F^k must be purely aperiodic, k=" + std::to_string(k));
    require(!purely_aperiodic(ExactMatrix{{2, 2}, {2, 2}}), "[[2,2],[2,2]] is rational");
    require(field_compatible(F(), ExactMatrix{{2, 2}, {2, 2}}) ==
                FieldCompatibility::Incompatible,
            "field separation");
    log << "pure aperiodicity of Fibonacci powers";
}

void criterion_6(std::ostream& log) {
    auto counts = [](const Substitution& s) {
        PathCounts pc = path_counts(s);
        return std::pair(pc.max_count, pc.min_count);
    };
    require(counts(fib1()) == std::pair(2, 1), "sigma1 counts");
    require(counts(fib2()) == std::pair(1, 2), "sigma2 counts");
    require(counts(make_sub({"ab", "ba"})) == std::pair(2, 2), "swap counts");

    std::vector<Substitution> battery{
        fib1(), fib2(), make_sub({"ab", "ba"}), make_sub({"aaab", "aaab"}),
        make_sub({"abc", "ca", "b"}), make_sub({"ba", "cb", "ac"}),
        make_sub({"abcd", "a", "b", "c"}), make_sub({"aba", "bab"}),
        make_sub({"abca", "bc", "cab", "d"}), make_sub({"bb", "aa"})};
    for (const auto& s : battery)
        for (int k = 1; k <= 5; ++k) {
            require(counts(power(s, k)) == counts(s), "counts not power-invariant");
        }
    // depth-stabilized brute force agreement
    for (const auto& s : battery) {
        for (bool maximal : {true, false}) {
            auto f = maximal ? last_letter_map(s) : first_letter_map(s);
            int prev = -1, stable = -1;
            for (int d = 1; d <= 12; ++d) {
                std::set<int> image;
                for (int l = 0; l < s.domain().size(); ++l) {
                    int x = l;
                    for (int i = 0; i < d; ++i) x = f[x];
                    image.insert(x);
                }
                if (static_cast<int>(image.size()) == prev) {
                    stable = prev;
                    break;
                }
                prev = static_cast<int>(image.size());
            }
            require(stable >= 0, "brute-force count did not stabilize by depth 12");
            int exact = maximal ? path_counts(s).max_count : path_counts(s).min_count;
            require(exact == stable, "cycle count disagrees with brute force");
        }
    }
    log << "max/min path counts, power-invariant and brute-force checked";
}

void criterion_7(std::ostream& log) {
    Substitution a = make_sub({"aaab", "aaab"});
    Substitution b = make_sub({"aabb", "aabb"});
    OrderedOutcome res = analyze_ordered_equivalence(a, b);
    require(res.verdict == Verdict::Equivalent, "aaab vs aabb must certify");
    check_ordered(res, a, b);

    Substitution left = compose(fib2(), power(fib1(), 2));
    Substitution right = compose(fib1(), power(fib2(), 2));
    OrderedOutcome fib = fib_ordered_equivalence(left, right);
    require(fib.verdict == Verdict::Equivalent, "fibonacci composite pair must certify");
    check_ordered(fib, left, right);
    // letter-by-letter identities behind it
    require(compose(power(fib1(), 2), fib2()) == compose(power(fib2(), 2), fib1()),
            "sigma1^2 o sigma2 == sigma2^2 o sigma1");
    require(power(left, 2) == compose(power(fib2(), 3), power(fib1(), 3)),
            "(sigma2 o sigma1^2)^2 == sigma2^3 o sigma1^3");
    require(power(right, 2) == compose(power(fib1(), 3), power(fib2(), 3)),
            "(sigma1 o sigma2^2)^2 == sigma1^3 o sigma2^3");
    log << "ordered equivalence positives with verified chains";
}

void criterion_8(std::ostream& log) {
    OrderedOutcome res = fib_ordered_equivalence(fib1(), fib2());
    require(res.verdict == Verdict::Distinguished &&
                res.distinguished_by == "max/min path counts",
            "sigma1 vs sigma2 must be distinguished by path counts");
    OrderedOutcome gen = analyze_ordered_equivalence(fib1(), fib2());
    require(gen.verdict == Verdict::Distinguished &&
                gen.distinguished_by == "max/min path counts",
            "general analyzer must agree on sigma1 vs sigma2");

    Substitution o1 = make_sub({"aabb", "abab"});
    Substitution o2 = make_sub({"abab", "aabb"});
    OrderedOutcome res22 = analyze_ordered_equivalence(o1, o2);
    require(res22.verdict != Verdict::Equivalent,
            "the all-twos orders must never come back Equivalent");
    log << "ordered distinguishing honors the cited inequivalence";
}

void criterion_9(std::ostream& log) {
    // round-trip uniqueness on 1000 random canonical words
    std::mt19937 rng(20260809);
    std::uniform_int_distribution<int> len_d(0, 20), bit(0, 1);
    for (int trial = 0; trial < 1000; ++trial) {
        PQWord w;
        int len = len_d(rng);
        for (int i = 0; i < len; ++i) w.letters += bit(rng) ? 'Q' : 'P';
        w.right_j = bit(rng) == 1;
        auto back = pq_factorize(evaluate_pq(w));
        require(back.has_value() && *back == w, "round trip failed for " + w.to_string());
    }

    // generated splits recover exactly
    ExactMatrix f = F(), j = swap_matrix();
    for (int m = 1; m <= 10; ++m)
        for (int k = 0; k <= m; ++k) {
            auto plain = classify_fib_factors(matrix_power(f, k), matrix_power(f, m - k));
            require(plain && plain->kind == FibFactorClass::PlainSplit && plain->k == k &&
                        plain->l == m - k,
                    "plain split recovery failed");
            auto tw = classify_fib_factors(matrix_power(f, k) * j,
                                           j * matrix_power(f, m - k));
            require(tw && tw->kind == FibFactorClass::TwistedSplit && tw->k == k &&
                        tw->l == m - k,
                    "twisted split recovery failed");
        }

    // brute force over all non-negative 2x2 pairs with entries <= 34 whose
    // product is a Fibonacci power: |det A| = 1 is forced, so enumerate those
    // and solve for B = A^{-1} F^m exactly
    long pairs = 0;
    for (long a = 0; a <= 34; ++a)
        for (long b = 0; b <= 34; ++b)
            for (long c = 0; c <= 34; ++c)
                for (long d = 0; d <= 34; ++d) {
                    long det = a * d - b * c;
                    if (det != 1 && det != -1) continue;
                    // A^{-1} = det * [[d, -b], [-c, a]]
                    ExactMatrix fm = ExactMatrix::identity(2);
                    for (int m = 0; m <= 17; ++m) {
                        if (m > 0) fm = fm * f;
                        if (m == 0) continue;
                        long e00 = det * (d * fm(0, 0).get_si() - b * fm(1, 0).get_si());
                        long e01 = det * (d * fm(0, 1).get_si() - b * fm(1, 1).get_si());
                        long e10 = det * (-c * fm(0, 0).get_si() + a * fm(1, 0).get_si());
                        long e11 = det * (-c * fm(0, 1).get_si() + a * fm(1, 1).get_si());
                        if (e00 < 0 || e01 < 0 || e10 < 0 || e11 < 0) continue;
                        if (e00 > 34 || e01 > 34 || e10 > 34 || e11 > 34) continue;
                        ExactMatrix A{{a, b}, {c, d}};
                        ExactMatrix B{{e00, e01}, {e10, e11}};
                        require((A * B) == fm, "enumeration arithmetic slip");
                        auto cls = classify_fib_factors(A, B);
                        require(cls.has_value(),
                                "dichotomy counterexample at " + A.to_string() + " * " +
                                    B.to_string());
                        require(cls->k + cls->l == m, "split exponents must sum to m");
                        ++pairs;
                    }
                }
    require(pairs >= 100, "brute force enumeration looks too small");
    log << "P/Q machinery, " << pairs << " brute-force pairs with no counterexample";
}

void criterion_10(std::ostream& log) {
    // a battery of analyzer runs; every Equivalent must re-verify
    std::mt19937 rng(60609);
    std::uniform_int_distribution<int> entry_d(0, 4);
    int equivalents_before = g_equivalents_checked;
    for (int trial = 0; trial < 60; ++trial) {
        int n = 1 + trial % 3;
        ExactMatrix m(n, n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                m(i, j) = entry_d(rng);
        if (!m.is_substitution_matrix()) continue;
        std::vector<int> perm(n);
        for (int i = 0; i < n; ++i) perm[i] = i;
        std::shuffle(perm.begin(), perm.end(), rng);
        ExactMatrix pm = conjugate_by_permutation(m, perm);
        EquivalenceOutcome res = analyze_equivalence(m, pm);
        require(res.verdict == Verdict::Equivalent, "conjugates must certify");
        check_unordered(res, m, pm);

        EquivalenceOutcome self_power = analyze_equivalence(m, matrix_power(m, 2));
        check_unordered(self_power, m, matrix_power(m, 2));
    }
    // ordered positives re-checked once more through the soundness gate
    OrderedOutcome towers =
        analyze_ordered_equivalence(make_sub({"ab", "ab"}), make_sub({"abab", "abab"}));
    require(towers.verdict == Verdict::Equivalent, "tower pair must certify");
    check_ordered(towers, make_sub({"ab", "ab"}), make_sub({"abab", "abab"}));
    require(g_equivalents_checked > equivalents_before,
            "the soundness battery produced no equivalences");
    log << "soundness gate: " << g_equivalents_checked
        << " equivalence certificates re-verified";
}

} // namespace

int main() {
    std::vector<Criterion> criteria{
        {1, "Fibonacci arithmetic", 1.0, criterion_1},
        {2, "telescoping law", 1.0, criterion_2},
        {3, "state splitting", 1.0, criterion_3},
        {4, "supernatural numbers", 1.0, criterion_4},
        {5, "pure aperiodicity", 1.0, criterion_5},
        {6, "max/min path counts", 5.0, criterion_6},
        {7, "ordered equivalence positives", 30.0, criterion_7},
        {8, "ordered distinguishing", 10.0, criterion_8},
        {9, "P/Q machinery", 60.0, criterion_9},
        {10, "soundness gate", 60.0, criterion_10},
    };
    int failures = 0;
    for (const auto& c : criteria) {
        auto start = std::chrono::steady_clock::now();
        std::ostringstream detail;
        std::string error;
        try {
            c.run(detail);
        } catch (const std::exception& e) {
            error = e.what();
        }
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
                          .count();
        bool ok = error.empty() && secs <= c.seconds_allowed;
        if (!ok) ++failures;
        std::cout << "criterion " << c.number << " (" << c.title << "): "
                  << (ok ? "PASS" : "FAIL") << "  [" << secs << "s"
                  << (secs > c.seconds_allowed ? ", over budget" : "") << "]";
        if (!error.empty()) std::cout << "  " << error;
        else if (detail.str().size()) std::cout << "  " << detail.str();
        std::cout << "\n";
    }
    if (failures) {
        std::cout << failures << " criterion(s) failed\n";
        return 1;
    }
    std::cout << "all criteria passed\n";
    return 0;
}
