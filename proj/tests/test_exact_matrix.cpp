#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <random>

#include "subkit/pf.hpp"

using namespace subkit;

namespace {

ExactMatrix fib() { return ExactMatrix{{1, 1}, {1, 0}}; }

// floating-point spectral radius via power iteration, test oracle only
double spectral_radius_estimate(const ExactMatrix& m) {
    const int n = m.rows();
    std::vector<double> v(n, 1.0);
    double lambda = 0;
    for (int it = 0; it < 2000; ++it) {
        std::vector<double> w(n, 0.0);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                w[i] += m(i, j).get_d() * v[j];
        double norm = 0;
        for (double x : w) norm = std::max(norm, std::fabs(x));
        for (double& x : w) x /= norm;
        lambda = norm;
        v = std::move(w);
    }
    return lambda;
}

ExactMatrix random_primitive(std::mt19937& rng, int max_size, int max_entry) {
    std::uniform_int_distribution<int> size_d(1, max_size);
    std::uniform_int_distribution<int> entry_d(0, max_entry);
    for (;;) {
        int n = size_d(rng);
        ExactMatrix m(n, n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                m(i, j) = entry_d(rng);
        if (m.is_substitution_matrix() && is_primitive(m).primitive) return m;
    }
}

} // namespace

TEST_CASE("arithmetic basics") {
    ExactMatrix f = fib();
    CHECK(matrix_power(f, 2) == ExactMatrix{{2, 1}, {1, 1}});
    CHECK(matrix_power(f, 5) == ExactMatrix{{8, 5}, {5, 3}});
    CHECK(determinant(ExactMatrix::identity(4)) == 1);
    CHECK(determinant(f) == -1);
    CHECK(f.transpose() == f);
    CHECK(ExactMatrix{{1, 2}, {3, 4}}.transpose() == ExactMatrix{{1, 3}, {2, 4}});
    ExactMatrix wide{{1, 2}};
    CHECK_THROWS_AS(wide * wide, std::domain_error);
}

TEST_CASE("Fibonacci power identity") {
    // F^n = [[f_{n+1}, f_n], [f_n, f_{n-1}]]
    std::vector<mpz_class> fb{0, 1};
    for (int i = 2; i <= 22; ++i) fb.push_back(fb[i - 1] + fb[i - 2]);
    for (int n = 1; n <= 20; ++n) {
        ExactMatrix fn = matrix_power(fib(), n);
        CHECK(fn(0, 0) == fb[n + 1]);
        CHECK(fn(0, 1) == fb[n]);
        CHECK(fn(1, 0) == fb[n]);
        CHECK(fn(1, 1) == fb[n - 1]);
    }
}

TEST_CASE("primitivity with least exponent") {
    auto rf = is_primitive(fib());
    CHECK(rf.primitive);
    CHECK(rf.exponent == 2);
    CHECK_FALSE(is_primitive(ExactMatrix::identity(2)).primitive);
    auto r22 = is_primitive(ExactMatrix{{2, 2}, {2, 2}});
    CHECK(r22.primitive);
    CHECK(r22.exponent == 1);
    // cyclic permutation matrices never become positive
    CHECK_FALSE(is_primitive(ExactMatrix{{0, 1}, {1, 0}}).primitive);
    auto r1 = is_primitive(ExactMatrix{{7}});
    CHECK(r1.primitive);
    CHECK(r1.exponent == 1);
}

TEST_CASE("characteristic polynomial") {
    CHECK(characteristic_polynomial(fib()) ==
          IntPolynomial({mpz_class(-1), mpz_class(-1), mpz_class(1)}));
    CHECK(characteristic_polynomial(ExactMatrix{{6}}) ==
          IntPolynomial({mpz_class(-6), mpz_class(1)}));
    CHECK(characteristic_polynomial(ExactMatrix{{2, 2}, {4, 4}}) ==
          IntPolynomial({mpz_class(0), mpz_class(-6), mpz_class(1)}));
    CHECK(characteristic_polynomial(fib()).to_string() == "x^2 - x - 1");
}

TEST_CASE("pf_report decides rationality exactly") {
    SUBCASE("golden ratio is irrational") {
        PFReport r = pf_report(fib());
        CHECK_FALSE(r.pf_is_rational);
        CHECK(r.minimal_polynomial_degree == 2);
        CHECK(r.pf_minimal_polynomial ==
              IntPolynomial({mpz_class(-1), mpz_class(-1), mpz_class(1)}));
        // interval must contain (1+sqrt 5)/2 ~ 1.618...
        CHECK(r.isolation_lo < mpq_class(1618034, 1000000));
        CHECK(r.isolation_hi > mpq_class(1618033, 1000000));
        CHECK(r.isolation_lo >= 1); // min row sum
        CHECK(r.isolation_hi <= 3); // max row sum + 1
    }
    SUBCASE("constant row sums give the integer eigenvalue") {
        PFReport r = pf_report(ExactMatrix{{2, 2}, {2, 2}});
        CHECK(r.pf_is_rational);
        CHECK(*r.pf_integer_value == 4);
        CHECK(r.minimal_polynomial_degree == 1);
    }
    SUBCASE("1x1") {
        PFReport r = pf_report(ExactMatrix{{6}});
        CHECK(r.pf_is_rational);
        CHECK(*r.pf_integer_value == 6);
    }
    SUBCASE("singular rational case") {
        PFReport r = pf_report(ExactMatrix{{2, 2}, {4, 4}});
        CHECK(r.pf_is_rational);
        CHECK(*r.pf_integer_value == 6);
    }
    SUBCASE("non-primitive input is a precondition error") {
        CHECK_THROWS_AS(pf_report(ExactMatrix::identity(2)), std::domain_error);
    }
    SUBCASE("interval isolates exactly one root of the minimal polynomial") {
        for (const auto& m : {fib(), ExactMatrix{{1, 2}, {1, 1}}, ExactMatrix{{2, 1}, {1, 1}},
                              ExactMatrix{{1, 1, 0}, {0, 1, 1}, {1, 0, 1}}}) {
            PFReport r = pf_report(m);
            SturmChain chain(r.pf_minimal_polynomial);
            CHECK(chain.count_roots(r.isolation_lo, r.isolation_hi) == 1);
            if (r.pf_is_rational)
                CHECK(r.characteristic.eval(*r.pf_integer_value) == 0);
        }
    }
}

TEST_CASE("purely aperiodic") {
    CHECK(purely_aperiodic(fib()));
    CHECK_FALSE(purely_aperiodic(ExactMatrix{{3, 3}, {3, 3}}));
    for (int k = 1; k <= 6; ++k)
        CHECK(purely_aperiodic(matrix_power(fib(), k)));
}

TEST_CASE("pf interval sits within the row-sum bounds") {
    std::mt19937 rng(987654);
    for (int trial = 0; trial < 60; ++trial) {
        ExactMatrix m = random_primitive(rng, 4, 9);
        PFReport r = pf_report(m);
        auto sums = m.row_sums();
        mpz_class lo = sums[0], hi = sums[0];
        for (const auto& s : sums) {
            if (s < lo) lo = s;
            if (s > hi) hi = s;
        }
        if (!r.pf_is_rational) {
            // distinct row sums: the bisection never leaves [min, max+1]
            CHECK(r.isolation_lo >= mpq_class(lo));
            CHECK(r.isolation_hi <= mpq_class(hi) + 1);
        } else {
            CHECK(mpq_class(lo) <= mpq_class(*r.pf_integer_value));
            CHECK(mpq_class(*r.pf_integer_value) <= mpq_class(hi));
        }
    }
}

TEST_CASE("exact rationality agrees with the floating heuristic") {
    std::mt19937 rng(424242);
    for (int trial = 0; trial < 200; ++trial) {
        ExactMatrix m = random_primitive(rng, 4, 9);
        bool exact_rational = !purely_aperiodic(m);
        double lam = spectral_radius_estimate(m);
        bool near_integer = std::fabs(lam - std::round(lam)) < 1e-6;
        // the exact method is authoritative; the heuristic must agree here
        CHECK(exact_rational == near_integer);
    }
}

TEST_CASE("non-nilpotent rank") {
    CHECK(non_nilpotent_rank(ExactMatrix{{1, 2}, {1, 2}}) == 1);
    CHECK(non_nilpotent_rank(fib()) == 2);
    CHECK(non_nilpotent_rank(ExactMatrix{{0, 1}, {0, 0}}) == 0);

    std::mt19937 rng(777);
    std::uniform_int_distribution<int> entry_d(0, 5);
    for (int trial = 0; trial < 40; ++trial) {
        int n = 1 + trial % 4;
        ExactMatrix m(n, n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                m(i, j) = entry_d(rng);
        std::vector<int> perm(n);
        for (int i = 0; i < n; ++i) perm[i] = i;
        std::shuffle(perm.begin(), perm.end(), rng);
        CHECK(non_nilpotent_rank(m) == non_nilpotent_rank(conjugate_by_permutation(m, perm)));
    }
}

TEST_CASE("field compatibility") {
    ExactMatrix f = fib();
    CHECK(field_compatible(f, matrix_power(f, 3)) == FieldCompatibility::Compatible);
    CHECK(field_compatible(f, ExactMatrix{{2, 2}, {2, 2}}) == FieldCompatibility::Incompatible);
    CHECK(field_compatible(ExactMatrix{{6}}, ExactMatrix{{6}}) ==
          FieldCompatibility::Compatible);
    // sqrt 2 shifted vs golden ratio: both degree 2, different square-free parts
    CHECK(field_compatible(ExactMatrix{{1, 1}, {2, 1}}, f) == FieldCompatibility::Incompatible);
}

TEST_CASE("square-free kernel") {
    CHECK(square_free_kernel(mpz_class(5)) == 5);
    CHECK(square_free_kernel(mpz_class(45)) == 5);
    CHECK(square_free_kernel(mpz_class(20)) == 5);
    CHECK(square_free_kernel(mpz_class(1)) == 1);
    CHECK(square_free_kernel(mpz_class(49)) == 1);
}

TEST_CASE("pf eigenvectors with certified error bounds") {
    SUBCASE("frequencies of the Fibonacci matrix") {
        mpq_class tol(1, 1000000);
        EigenvectorApprox v = pf_eigenvector(fib(), EigenvectorSide::Right, tol);
        CHECK(v.error_bound <= tol);
        mpq_class sum = v.entries[0] + v.entries[1];
        CHECK(sum == 1);
        // a-frequency = 1/phi = 0.618033988...
        CHECK(std::fabs(v.entries[0].get_d() - 0.6180339887) < 2e-6);
        CHECK(std::fabs(v.entries[1].get_d() - 0.3819660113) < 2e-6);
    }
    SUBCASE("symmetric matrix frequencies are exact") {
        EigenvectorApprox v =
            pf_eigenvector(ExactMatrix{{2, 2}, {2, 2}}, EigenvectorSide::Right,
                           mpq_class(1, 1000000));
        CHECK(v.entries[0] == mpq_class(1, 2));
        CHECK(v.entries[1] == mpq_class(1, 2));
    }
    SUBCASE("left eigenvector normalizes the minimum entry to one") {
        EigenvectorApprox v =
            pf_eigenvector(fib(), EigenvectorSide::Left, mpq_class(1, 100000));
        CHECK(v.entries[1] == 1);
        CHECK(std::fabs(v.entries[0].get_d() - 1.6180339887) < 1e-4);
        EigenvectorApprox one = pf_eigenvector(ExactMatrix{{6}}, EigenvectorSide::Left,
                                               mpq_class(1, 1000));
        CHECK(one.entries == std::vector<mpq_class>{1});
    }
    SUBCASE("residual check against the isolation interval") {
        std::mt19937 rng(5150);
        mpq_class tol(1, 10000);
        for (int trial = 0; trial < 25; ++trial) {
            ExactMatrix m = random_primitive(rng, 3, 6);
            PFReport r = pf_report(m);
            EigenvectorApprox v = pf_eigenvector(m, EigenvectorSide::Right, tol);
            // (M^T v) / lambda must agree with v within the reported bound
            ExactMatrix mt = m.transpose();
            for (int i = 0; i < m.rows(); ++i) {
                mpq_class w(0);
                for (int j = 0; j < m.rows(); ++j)
                    w += mpq_class(mt(i, j)) * v.entries[j];
                mpq_class lo = w / r.isolation_hi, hi = w / r.isolation_lo;
                if (r.pf_is_rational) {
                    lo = w / mpq_class(*r.pf_integer_value);
                    hi = lo;
                }
                CHECK(lo <= v.entries[i] + v.error_bound);
                CHECK(hi >= v.entries[i] - v.error_bound);
            }
        }
    }
    SUBCASE("tolerance must be positive") {
        CHECK_THROWS_AS(pf_eigenvector(fib(), EigenvectorSide::Right, mpq_class(0)),
                        std::domain_error);
    }
}

TEST_CASE("cancellation token interrupts spectral work") {
    std::atomic<bool> flag(true);
    Cancellation cancel(&flag);
    CHECK_THROWS_AS(pf_report(fib(), cancel), CancelledError);
}
