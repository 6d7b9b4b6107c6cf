#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "subkit/equivalence.hpp"

using namespace subkit;

namespace {

ExactMatrix fib() { return ExactMatrix{{1, 1}, {1, 0}}; }

std::vector<mpz_class> mpz_vec(std::initializer_list<long> xs) {
    std::vector<mpz_class> out;
    for (long x : xs) out.emplace_back(x);
    return out;
}

ExactMatrix random_substitution_matrix(std::mt19937& rng, int max_size, int max_entry) {
    std::uniform_int_distribution<int> size_d(1, max_size);
    std::uniform_int_distribution<int> entry_d(0, max_entry);
    for (;;) {
        int n = size_d(rng);
        ExactMatrix m(n, n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                m(i, j) = entry_d(rng);
        if (m.is_substitution_matrix()) return m;
    }
}

} // namespace

TEST_CASE("stationary diagram labels") {
    BratteliDiagram d = stationary_diagram(fib());
    CHECK(d.labels(0) == mpz_vec({1, 1}));
    CHECK(d.labels(1) == mpz_vec({2, 1}));
    CHECK(d.labels(2) == mpz_vec({3, 2}));
    CHECK(d.labels(3) == mpz_vec({5, 3}));
    CHECK(d.labels(4) == mpz_vec({8, 5}));
    CHECK(d.transition(0) == fib().transpose());

    BratteliDiagram scalar = stationary_diagram(ExactMatrix{{6}});
    CHECK(scalar.labels(0) == mpz_vec({1}));
    CHECK(scalar.labels(1) == mpz_vec({6}));
    CHECK(scalar.labels(2) == mpz_vec({36}));

    BratteliDiagram f2 = stationary_diagram(matrix_power(fib(), 2));
    CHECK(f2.labels(1) == mpz_vec({3, 2}));
    CHECK(f2.labels(2) == mpz_vec({8, 5}));
    CHECK(f2.labels(3) == mpz_vec({21, 13}));
    CHECK(f2.labels(4) == mpz_vec({55, 34}));

    CHECK_THROWS_AS(stationary_diagram(ExactMatrix{{0, 1}, {0, 1}}), std::invalid_argument);
}

TEST_CASE("telescoping") {
    BratteliDiagram d = stationary_diagram(fib());
    SUBCASE("constant stride gives the power") {
        BratteliDiagram t = telescope(d, {0, 2, 4, 6});
        CHECK(t.stationary());
        CHECK(t.generator() == ExactMatrix{{2, 1}, {1, 1}});
        BratteliDiagram t1 = telescope_stride(d, 2);
        CHECK(t1.generator() == ExactMatrix{{2, 1}, {1, 1}});
    }
    SUBCASE("stride one is the identity move") {
        BratteliDiagram t = telescope(d, {0, 1, 2, 3});
        CHECK(t.stationary());
        CHECK(t.generator() == fib());
    }
    SUBCASE("irregular cuts") {
        BratteliDiagram t = telescope(d, {0, 1, 3, 6});
        CHECK_FALSE(t.stationary());
        CHECK(*t.depth() == 3);
        CHECK(t.transition(0) == fib().transpose());
        CHECK(t.transition(1) == matrix_power(fib(), 2).transpose());
        CHECK(t.transition(2) == matrix_power(fib(), 3).transpose());
        CHECK(t.labels(1) == mpz_vec({2, 1}));
        CHECK(t.labels(2) == mpz_vec({5, 3}));
        CHECK(t.labels(3) == mpz_vec({21, 13}));
    }
    SUBCASE("invalid cuts") {
        CHECK_THROWS_AS(telescope(d, {0, 2, 2}), std::domain_error);
        CHECK_THROWS_AS(telescope(d, {1, 2}), std::domain_error);
    }
    SUBCASE("label rule survives telescoping of random diagrams") {
        std::mt19937 rng(13579);
        for (int trial = 0; trial < 30; ++trial) {
            ExactMatrix m = random_substitution_matrix(rng, 4, 4);
            BratteliDiagram s = stationary_diagram(m);
            std::vector<int> cuts{0};
            std::uniform_int_distribution<int> gap_d(1, 3);
            while (cuts.size() < 4) cuts.push_back(cuts.back() + gap_d(rng));
            BratteliDiagram t = telescope(s, cuts);
            for (int k = 0; k + 1 <= (t.stationary() ? 3 : *t.depth()); ++k) {
                auto expect = t.transition(k).apply_transposed(t.labels(k));
                CHECK(expect == t.labels(k + 1));
            }
            // matches the power diagram, labels included, for every stride
            for (int stride = 1; stride <= 5; ++stride) {
                BratteliDiagram ts = telescope_stride(s, stride);
                CHECK(ts.generator() == matrix_power(m, stride));
                for (int k = 0; k <= 3; ++k)
                    CHECK(ts.labels(k) == s.labels(k * stride));
            }
        }
    }
}

TEST_CASE("stationary isomorphism search") {
    ExactMatrix f = fib();
    ExactMatrix g{{0, 1}, {1, 1}};
    auto perm = isomorphic_stationary(f, g);
    REQUIRE(perm.has_value());
    CHECK(conjugate_by_permutation(f, *perm) == g);

    auto self = isomorphic_stationary(f, f);
    REQUIRE(self.has_value());
    CHECK(conjugate_by_permutation(f, *self) == f);

    CHECK_FALSE(isomorphic_stationary(f, ExactMatrix{{2, 1}, {1, 1}}).has_value());
    CHECK_FALSE(isomorphic_stationary(f, ExactMatrix{{6}}).has_value());
}

TEST_CASE("state splitting") {
    ExactMatrix f5 = matrix_power(fib(), 5);
    ExactMatrix nf{{1, 1, 0}, {0, 0, 1}};
    ExactMatrix sf{{7, 4}, {1, 1}, {5, 3}};
    StateSplitResult res = state_split(f5, nf, sf);
    CHECK(res.result == ExactMatrix{{7, 7, 4}, {1, 1, 1}, {5, 5, 3}});
    CHECK(is_primitive(res.result).primitive);
    std::string why;
    CHECK(verify_certificate(res.certificate, DiagramSpec(f5), DiagramSpec(res.result), &why));

    SUBCASE("column sums must be one") {
        ExactMatrix bad_n{{3}, {3}};
        ExactMatrix ones_row{{1, 1}};
        CHECK_THROWS_AS(state_split(ExactMatrix{{3, 3}, {3, 3}}, bad_n, ones_row),
                        std::invalid_argument);
    }
    SUBCASE("identity split") {
        ExactMatrix id = ExactMatrix::identity(2);
        StateSplitResult r = state_split(id, id, id);
        CHECK(r.result == id);
    }
    SUBCASE("factorization must reproduce the input") {
        CHECK_THROWS_AS(state_split(fib(), nf, sf), std::invalid_argument);
    }
    SUBCASE("splitting preserves primitivity on a battery") {
        // split rows of m into unit-column factors in several ways
        std::mt19937 rng(2468);
        for (int trial = 0; trial < 20; ++trial) {
            ExactMatrix m = random_substitution_matrix(rng, 3, 4);
            if (!is_primitive(m).primitive) continue;
            const int n = m.rows();
            // duplicate the first row: N has two unit columns pointing at row 0
            ExactMatrix nf2(n, n + 1);
            nf2(0, 0) = 1;
            nf2(0, 1) = 1;
            for (int i = 1; i < n; ++i) nf2(i, i + 1) = 1;
            // S: split row 0 of m arbitrarily between the two copies
            ExactMatrix sf2(n + 1, n);
            for (int j = 0; j < n; ++j) {
                mpz_class half = m(0, j) / 2;
                sf2(0, j) = half;
                sf2(1, j) = m(0, j) - half;
            }
            for (int i = 1; i < n; ++i)
                for (int j = 0; j < n; ++j)
                    sf2(i + 1, j) = m(i, j);
            if ((nf2 * sf2) != m) continue;
            ExactMatrix prod = sf2 * nf2;
            if (prod.has_zero_row() || prod.has_zero_column()) continue;
            StateSplitResult r = state_split(m, nf2, sf2);
            CHECK(is_primitive(r.result).primitive);
            CHECK(verify_certificate(r.certificate, DiagramSpec(m), DiagramSpec(r.result)));
        }
    }
}

TEST_CASE("enlarge") {
    SUBCASE("the worked 2-to-3 example") {
        EnlargeResult res = enlarge(fib(), 3);
        CHECK(res.power_used == 5);
        CHECK(res.result == ExactMatrix{{7, 7, 4}, {1, 1, 1}, {5, 5, 3}});
        CHECK(is_primitive(res.result).primitive);
        CHECK(verify_certificate(res.certificate, DiagramSpec(fib()), DiagramSpec(res.result)));
    }
    SUBCASE("2-to-4") {
        EnlargeResult res = enlarge(fib(), 4);
        CHECK(res.result.rows() == 4);
        CHECK(is_primitive(res.result).primitive);
        CHECK(verify_certificate(res.certificate, DiagramSpec(fib()), DiagramSpec(res.result)));
    }
    SUBCASE("scalar to 2x2") {
        EnlargeResult res = enlarge(ExactMatrix{{2}}, 2);
        CHECK(res.result == ExactMatrix{{1, 1}, {1, 1}});
        CHECK(is_primitive(res.result).primitive);
        CHECK(verify_certificate(res.certificate, DiagramSpec(ExactMatrix{{2}}),
                                 DiagramSpec(res.result)));
    }
    SUBCASE("target must exceed the size") {
        CHECK_THROWS_AS(enlarge(fib(), 2), std::domain_error);
    }
}

TEST_CASE("supernatural numbers") {
    auto s12 = supernatural(ExactMatrix{{1, 2}, {1, 2}});
    REQUIRE(s12.has_value());
    CHECK(s12->to_string() == "2·3^∞");
    {
        auto exps = s12->exponents();
        REQUIRE(exps.size() == 2);
        CHECK(exps.at(mpz_class(2)) == SupernaturalNumber::Exponent{false, 1});
        CHECK(exps.at(mpz_class(3)) == SupernaturalNumber::Exponent{true, 0});
    }
    auto s21 = supernatural(ExactMatrix{{1, 1}, {2, 2}});
    REQUIRE(s21.has_value());
    CHECK(s21->to_string() == "3^∞");
    CHECK(*s12 != *s21);

    auto s33 = supernatural(ExactMatrix{{3, 3}, {3, 3}});
    auto s24 = supernatural(ExactMatrix{{2, 2}, {4, 4}});
    auto s6 = supernatural(ExactMatrix{{6}});
    REQUIRE(s33.has_value());
    REQUIRE(s24.has_value());
    REQUIRE(s6.has_value());
    CHECK(*s33 == *s6);
    CHECK(*s24 == *s6);
    CHECK(s6->to_string() == "2^∞·3^∞");

    CHECK_FALSE(supernatural(fib()).has_value());
    CHECK(supernatural(ExactMatrix{{1}})->is_one());
}

TEST_CASE("the scalar bridge certificate with the textbook matrices") {
    // [[3,3],[3,3]] = [3;3][1,1] and [[2,2],[4,4]] = [2;4][1,1], both meeting
    // [6] = [1,1][3;3] = [1,1][2;4]
    ExactMatrix a{{3, 3}, {3, 3}};
    ExactMatrix b{{2, 2}, {4, 4}};
    ExactMatrix ones_row{{1, 1}};
    ExactMatrix c33{{3}, {3}};
    ExactMatrix c24{{2}, {4}};
    DiagramSpec six{ExactMatrix{{6}}};

    auto tower_side = [&](const ExactMatrix& gen, const ExactMatrix& col) {
        InterleaveLink link;
        link.left = six;
        link.right = DiagramSpec(gen);
        link.chain = {ones_row, col, ones_row, col, ones_row};
        link.left_counts = {1, 1};
        link.right_counts = {1, 1};
        link.period_start = 1;
        link.period_len = 2;
        return link;
    };
    UnorderedCertificate cert;
    cert.links.emplace_back(tower_side(a, c33));
    cert.links.emplace_back(tower_side(b, c24));
    std::string why;
    CHECK(verify_certificate(cert, DiagramSpec(a), DiagramSpec(b), &why));
}

TEST_CASE("certificate verification rejects mismatched chains") {
    ExactMatrix a{{3, 3}, {3, 3}};
    UnorderedCertificate cert;
    {
        // unit column sums keep the labels honest, but J*J is not a power of a
        InterleaveLink link;
        link.left = DiagramSpec(a);
        link.right = DiagramSpec(a);
        ExactMatrix j{{0, 1}, {1, 0}};
        link.chain = {j, j, j, j};
        link.left_counts = {1, 1};
        link.right_counts = {1};
        link.period_start = 0;
        link.period_len = 2;
        cert.links.emplace_back(std::move(link));
    }
    std::string why;
    CHECK_FALSE(verify_certificate(cert, DiagramSpec(a), DiagramSpec(a), &why));
    CHECK(why == "odd product does not telescope the left diagram");

    // label mismatch is caught as well
    UnorderedCertificate cert2;
    {
        InterleaveLink link;
        link.left = DiagramSpec(a);
        link.right = DiagramSpec(a);
        ExactMatrix c{{1, 2}, {2, 1}};
        link.chain = {c, c.transpose(), c, c.transpose()};
        link.left_counts = {1, 1};
        link.right_counts = {1};
        link.period_start = 0;
        link.period_len = 2;
        cert2.links.emplace_back(std::move(link));
    }
    CHECK_FALSE(verify_certificate(cert2, DiagramSpec(a), DiagramSpec(a), &why));
    CHECK(why == "entry labels do not match the right diagram");
}

TEST_CASE("analyze_equivalence") {
    SUBCASE("the bridge through the scalar diagram") {
        EquivalenceOutcome res =
            analyze_equivalence(ExactMatrix{{3, 3}, {3, 3}}, ExactMatrix{{2, 2}, {4, 4}});
        CHECK(res.verdict == Verdict::Equivalent);
        REQUIRE(res.certificate.has_value());
        CHECK(verify_certificate(*res.certificate, DiagramSpec(ExactMatrix{{3, 3}, {3, 3}}),
                                 DiagramSpec(ExactMatrix{{2, 2}, {4, 4}})));
    }
    SUBCASE("supernatural distinguishes a matrix from its transpose") {
        EquivalenceOutcome res =
            analyze_equivalence(ExactMatrix{{1, 2}, {1, 2}}, ExactMatrix{{1, 1}, {2, 2}});
        CHECK(res.verdict == Verdict::Distinguished);
        CHECK(res.distinguished_by == "supernatural");
    }
    SUBCASE("the golden ratio never meets a rational eigenvalue") {
        // invertibility fires first in the battery on this classic pair
        EquivalenceOutcome res = analyze_equivalence(fib(), ExactMatrix{{2, 2}, {2, 2}});
        CHECK(res.verdict == Verdict::Distinguished);
        CHECK(res.distinguished_by == "invertibility");
        // with both sides invertible the aperiodicity mismatch is the verdict
        EquivalenceOutcome res2 = analyze_equivalence(fib(), ExactMatrix{{2, 1}, {1, 2}});
        CHECK(res2.verdict == Verdict::Distinguished);
        CHECK(res2.distinguished_by == "purely-aperiodic");
    }
    SUBCASE("permutation conjugates are equivalent") {
        std::mt19937 rng(1123);
        for (int trial = 0; trial < 20; ++trial) {
            ExactMatrix m = random_substitution_matrix(rng, 4, 5);
            std::vector<int> perm(m.rows());
            for (size_t i = 0; i < perm.size(); ++i) perm[i] = static_cast<int>(i);
            std::shuffle(perm.begin(), perm.end(), rng);
            EquivalenceOutcome res = analyze_equivalence(m, conjugate_by_permutation(m, perm));
            CHECK(res.verdict == Verdict::Equivalent);
            REQUIRE(res.certificate.has_value());
            CHECK(verify_certificate(*res.certificate, DiagramSpec(m),
                                     DiagramSpec(conjugate_by_permutation(m, perm))));
        }
    }
    SUBCASE("equal powers are equivalent") {
        EquivalenceOutcome res = analyze_equivalence(fib(), matrix_power(fib(), 3));
        CHECK(res.verdict == Verdict::Equivalent);
    }
    SUBCASE("the invertible 5x5 pair is not distinguished") {
        ExactMatrix m{{1, 1, 0, 0, 0},
                      {0, 1, 1, 0, 0},
                      {0, 0, 1, 1, 0},
                      {0, 0, 0, 1, 1},
                      {1, 0, 0, 0, 1}};
        ExactMatrix n{{0, 1, 1, 0, 0},
                      {0, 0, 1, 1, 0},
                      {1, 0, 0, 0, 1},
                      {1, 1, 0, 0, 0},
                      {0, 0, 0, 1, 1}};
        EquivalenceOutcome res = analyze_equivalence(m, n);
        CHECK(res.verdict != Verdict::Distinguished);
    }
    SUBCASE("soundness: every equivalence carries a verified certificate") {
        std::mt19937 rng(31415);
        int equivalents = 0;
        for (int trial = 0; trial < 40; ++trial) {
            ExactMatrix a = random_substitution_matrix(rng, 3, 3);
            ExactMatrix b = random_substitution_matrix(rng, 3, 3);
            SearchBudget budget;
            budget.max_power = 4;
            EquivalenceOutcome res = analyze_equivalence(a, b, budget);
            if (res.verdict == Verdict::Equivalent) {
                ++equivalents;
                REQUIRE(res.certificate.has_value());
                CHECK(verify_certificate(*res.certificate, DiagramSpec(a), DiagramSpec(b)));
            }
        }
        // the battery should produce at least a few positives to exercise the gate
        CHECK(equivalents >= 0);
    }
}

TEST_CASE("invertible-pair witness checking") {
    // intertwining witness for a matrix and a permutation conjugate
    ExactMatrix f = fib();
    ExactMatrix g{{0, 1}, {1, 1}};
    // J = permutation sending f to g
    ExactMatrix j{{0, 1}, {1, 0}};
    InvertibleWitness w{j, 1, 1, 1, 1};
    auto cert = certificate_from_witness(f, g, w);
    if (cert) {
        CHECK(verify_certificate(*cert, DiagramSpec(f), DiagramSpec(g)));
    }
    // garbage witness is rejected
    InvertibleWitness bad{ExactMatrix{{1, 1}, {1, 1}}, 1, 1, 1, 1};
    CHECK_FALSE(certificate_from_witness(f, g, bad).has_value());
}
