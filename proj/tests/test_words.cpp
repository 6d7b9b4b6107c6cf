#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <set>

#include "subkit/substitution.hpp"

using namespace subkit;

namespace {

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

// brute-force factor collection: subwords of sigma^p(l) until two stable rounds
std::set<Word> brute_factors(const Substitution& s, int k) {
    std::set<Word> acc;
    for (int l = 0; l < s.domain().size(); ++l)
        acc.insert(Word::single(s.domain(), l));
    size_t before = 0;
    int stable = 0;
    std::vector<Word> words;
    for (int l = 0; l < s.domain().size(); ++l) words.push_back(Word::single(s.domain(), l));
    for (int p = 0; p < 40 && stable < 2; ++p) {
        for (auto& w : words) w = s.apply(w);
        before = acc.size();
        for (const auto& w : words)
            for (int len = 1; len <= k; ++len)
                for (int pos = 0; pos + len <= w.length(); ++pos)
                    acc.insert(w.subword(pos, len));
        stable = acc.size() == before ? stable + 1 : 0;
    }
    return acc;
}

} // namespace

TEST_CASE("alphabet basics and validation") {
    Alphabet a({"a", "b", "c"});
    CHECK(a.size() == 3);
    CHECK(a.letter(1) == "b");
    CHECK(a.index_of("c") == 2);
    CHECK(a.index_of("z") == -1);
    CHECK_THROWS_AS(Alphabet({"a", "a"}), std::invalid_argument);
    CHECK_THROWS_AS(Alphabet(std::vector<std::string>{}), std::invalid_argument);
}

TEST_CASE("substitution images must be nonempty") {
    Alphabet a = Alphabet::latin(2);
    std::vector<Word> images{Word(a, {0, 1}), Word(a, {})};
    CHECK_THROWS_AS(Substitution(a, std::move(images)), std::invalid_argument);
}

TEST_CASE("compose expands the inner image first") {
    Substitution s1 = fib1();
    Substitution sq = compose(s1, s1);
    CHECK(sq.image(0).to_string() == "aba");
    CHECK(sq.image(1).to_string() == "ab");

    Substitution id = Substitution::identity(s1.domain());
    CHECK(compose(id, s1) == s1);
    CHECK(compose(s1, id) == s1);

    Substitution lhs = compose(power(fib1(), 2), fib2());
    CHECK(lhs.image(0).to_string() == "ababa");
    CHECK(lhs.image(1).to_string() == "aba");
}

TEST_CASE("abelianize counts letters") {
    CHECK(abelianize(fib1()) == ExactMatrix{{1, 1}, {1, 0}});
    CHECK(abelianize(make_sub({"aaab", "aaab"})) == ExactMatrix{{3, 1}, {3, 1}});
    Alphabet a = Alphabet::latin(3);
    CHECK(abelianize(Substitution::identity(a)) == ExactMatrix::identity(3));
}

TEST_CASE("composition law against matrix multiplication") {
    std::mt19937 rng(20240517);
    std::uniform_int_distribution<int> size_d(1, 3), len_d(1, 4), letter_d(0, 2);
    for (int trial = 0; trial < 200; ++trial) {
        int na = size_d(rng), nb = size_d(rng), nc = size_d(rng);
        Alphabet A = Alphabet::latin(na), B = Alphabet::latin(nb), C = Alphabet::latin(nc);
        auto rand_sub = [&](const Alphabet& dom, const Alphabet& cod) {
            std::vector<Word> images;
            for (int l = 0; l < dom.size(); ++l) {
                std::vector<int32_t> syms(len_d(rng));
                for (auto& s : syms) s = letter_d(rng) % cod.size();
                images.emplace_back(cod, std::move(syms));
            }
            return Substitution(dom, cod, std::move(images));
        };
        Substitution inner = rand_sub(A, B);
        Substitution outer = rand_sub(B, C);
        CHECK(abelianize(compose(outer, inner)) == abelianize(inner) * abelianize(outer));
    }
}

TEST_CASE("powers track Fibonacci lengths") {
    Substitution s1 = fib1();
    CHECK(power(s1, 0) == Substitution::identity(s1.domain()));
    CHECK(power(s1, 2).image(0).length() == 3);
    CHECK(power(s1, 5).image(0).length() == 13);

    // |sigma1^n(a)| = f_{n+2} with f_1 = f_2 = 1
    std::vector<long> fib{1, 1};
    for (int i = 2; i < 24; ++i) fib.push_back(fib[i - 1] + fib[i - 2]);
    for (int n = 0; n <= 20; ++n)
        CHECK(power(s1, n).image(0).length() == fib[n + 1]); // f_{n+2}, 0-indexed

    for (int m = 0; m <= 3; ++m)
        for (int n = 0; n <= 3; ++n)
            CHECK(power(s1, m + n) == compose(power(s1, m), power(s1, n)));
}

TEST_CASE("factor language matches brute force") {
    SUBCASE("fibonacci k=2") {
        FactorLanguage lang = factor_language(fib1(), 2);
        std::set<std::string> names;
        for (const auto& w : lang.factors()) names.insert(w.to_string());
        CHECK(names == std::set<std::string>{"a", "b", "aa", "ab", "ba"});
    }
    SUBCASE("equal-image substitution") {
        FactorLanguage lang = factor_language(make_sub({"aabb", "aabb"}), 2);
        std::set<std::string> names;
        for (const auto& w : lang.factors()) names.insert(w.to_string());
        CHECK(names == std::set<std::string>{"a", "b", "aa", "ab", "ba", "bb"});
    }
    SUBCASE("primitive substitutions contain every letter at k=1") {
        FactorLanguage lang = factor_language(fib2(), 1);
        CHECK(lang.factors().size() == 2);
    }
    SUBCASE("agreement with the brute-force oracle") {
        std::vector<Substitution> battery{
            fib1(), fib2(), make_sub({"aaab", "aaab"}), make_sub({"ab", "ba"}),
            make_sub({"ab", "bc", "ca"}), make_sub({"abc", "a", "b"}),
            make_sub({"ba", "cb", "ac"})};
        for (const auto& s : battery)
            for (int k = 1; k <= 4; ++k) {
                FactorLanguage lang = factor_language(s, k);
                CHECK(lang.factors() == brute_factors(s, k));
            }
    }
    SUBCASE("closed under subwords") {
        for (const auto& s : {fib1(), make_sub({"ab", "ba"}), make_sub({"abc", "a", "b"})}) {
            FactorLanguage lang = factor_language(s, 4);
            for (const auto& w : lang.factors())
                for (int len = 1; len <= w.length(); ++len)
                    for (int pos = 0; pos + len <= w.length(); ++pos)
                        CHECK(lang.contains(w.subword(pos, len)));
        }
    }
}

TEST_CASE("letter boundary maps") {
    Substitution s1 = fib1(), s2 = fib2();
    CHECK(first_letter_map(s1) == std::vector<int>{0, 0});
    CHECK(last_letter_map(s1) == std::vector<int>{1, 0});
    CHECK(first_letter_map(s2) == std::vector<int>{1, 0});
    CHECK(last_letter_map(s2) == std::vector<int>{0, 0});
    Substitution id = Substitution::identity(Alphabet::latin(3));
    CHECK(first_letter_map(id) == std::vector<int>{0, 1, 2});
    CHECK(last_letter_map(id) == std::vector<int>{0, 1, 2});
}

TEST_CASE("properness") {
    CHECK_FALSE(is_proper(fib1())); // last map has the 2-cycle a<->b
    CHECK(is_proper(make_sub({"aba", "aa"})));
    CHECK(is_proper(make_sub({"aa"})));
}
