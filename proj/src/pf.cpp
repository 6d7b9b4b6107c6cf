#include "subkit/pf.hpp"

#include <algorithm>
#include <stdexcept>

namespace subkit {

IntPolynomial characteristic_polynomial(const ExactMatrix& m) {
    if (!m.square())
        throw std::domain_error("characteristic polynomial requires a square matrix");
    const int n = m.rows();
    // Faddeev-LeVerrier: all divisions are exact over the integers.
    std::vector<mpz_class> c(static_cast<size_t>(n) + 1);
    c[n] = 1;
    ExactMatrix B = m;
    for (int k = 1; k <= n; ++k) {
        if (k > 1) {
            ExactMatrix shifted = B;
            for (int i = 0; i < n; ++i) shifted(i, i) += c[n - k + 1];
            B = m * shifted;
        }
        mpz_class tr(0);
        for (int i = 0; i < n; ++i) tr += B(i, i);
        mpz_class q;
        mpz_class num = -tr;
        mpz_class den(k);
        mpz_divexact(q.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
        c[n - k] = q;
    }
    return IntPolynomial(std::move(c));
}

namespace {

bool interval_integer_candidate(const mpq_class& lo, const mpq_class& hi, mpz_class& out) {
    // unique integer in (lo, hi] when hi - lo <= 1
    mpz_class f;
    mpz_fdiv_q(f.get_mpz_t(), hi.get_num().get_mpz_t(), hi.get_den().get_mpz_t());
    mpq_class fq(f);
    if (fq > lo && fq <= hi) { out = f; return true; }
    return false;
}

} // namespace

PFReport pf_report(const ExactMatrix& m, const Cancellation& cancel) {
    if (!m.square() || !m.is_nonnegative())
        throw std::domain_error("pf_report requires a square non-negative matrix");
    PrimitivityResult prim = is_primitive(m);
    if (!prim.primitive)
        throw std::domain_error("pf_report requires a primitive matrix");

    PFReport rep;
    rep.is_primitive = true;
    rep.primitivity_exponent = prim.exponent;
    rep.characteristic = characteristic_polynomial(m);

    auto sums = m.row_sums();
    mpz_class lo0 = sums[0], hi0 = sums[0];
    for (const auto& s : sums) {
        if (s < lo0) lo0 = s;
        if (s > hi0) hi0 = s;
    }

    auto finish_rational = [&](const mpz_class& r) {
        rep.pf_is_rational = true;
        rep.pf_integer_value = r;
        rep.pf_minimal_polynomial = IntPolynomial::linear_root(r);
        rep.minimal_polynomial_degree = 1;
        rep.isolation_lo = mpq_class(r) - mpq_class(1, 2);
        rep.isolation_hi = mpq_class(r) + mpq_class(1, 2);
    };

    if (lo0 == hi0) {
        // constant row sums: the all-ones vector is the dominant eigenvector
        if (rep.characteristic.eval(lo0) != 0)
            throw std::logic_error("constant row sum must be an eigenvalue");
        finish_rational(lo0);
        return rep;
    }

    // The dominant eigenvalue is the largest real root, strictly between the
    // extreme row sums. Bisect on the largest root of the square-free part.
    SturmChain chain(rep.characteristic, cancel);
    mpq_class a(lo0), b(hi0);
    if (chain.count_roots(a, b) < 1)
        throw std::logic_error("dominant root not found in row-sum range");
    auto refine = [&]() {
        cancel.check();
        mpq_class mid = (a + b) / 2;
        if (chain.count_roots(mid, b) >= 1) a = mid;
        else b = mid;
    };
    while (chain.count_roots(a, b) != 1 || b - a > mpq_class(1, 4)) refine();

    // Monic integer polynomial: any rational root is an integer, so the
    // dominant root is rational iff the lone integer candidate in its
    // isolating interval is a root.
    mpz_class cand;
    if (interval_integer_candidate(a, b, cand) && rep.characteristic.eval(cand) == 0) {
        finish_rational(cand);
        return rep;
    }
    // Irrational. Narrow until no integer is left inside, then extract the
    // square-free factor holding the root and strip its integer roots.
    while (interval_integer_candidate(a, b, cand) || b - a > mpq_class(1, 16)) refine();

    rep.pf_is_rational = false;
    auto factors = square_free_factorization(rep.characteristic);
    IntPolynomial minimal;
    for (const auto& f : factors) {
        if (f.degree() < 1) continue;
        SturmChain fc(f, cancel);
        if (fc.count_roots(a, b) == 1) { minimal = f; break; }
    }
    if (minimal.is_zero())
        throw std::logic_error("no square-free factor isolates the dominant root");
    for (const auto& r : integer_roots(minimal, cancel))
        minimal = minimal.deflate(r);
    minimal = minimal.primitive_part();

    rep.pf_minimal_polynomial = minimal;
    rep.minimal_polynomial_degree = minimal.degree();
    rep.isolation_lo = a;
    rep.isolation_hi = b;
    return rep;
}

bool purely_aperiodic(const ExactMatrix& m, const Cancellation& cancel) {
    return !pf_report(m, cancel).pf_is_rational;
}

mpz_class square_free_kernel(const mpz_class& n) {
    if (n <= 0)
        throw std::domain_error("square-free kernel requires a positive integer");
    mpz_class rest = n, kernel(1);
    const unsigned long trial_bound = 100000;
    for (unsigned long p = 2; p <= trial_bound && rest > 1;
         p = (p == 2 ? 3 : p + 2)) {
        if (!mpz_divisible_ui_p(rest.get_mpz_t(), p)) continue;
        int e = 0;
        while (mpz_divisible_ui_p(rest.get_mpz_t(), p)) {
            mpz_divexact_ui(rest.get_mpz_t(), rest.get_mpz_t(), p);
            ++e;
        }
        if (e % 2 == 1) kernel *= p;
    }
    if (rest == 1) return kernel;
    if (mpz_perfect_square_p(rest.get_mpz_t())) return kernel; // even exponents
    if (mpz_probab_prime_p(rest.get_mpz_t(), 40)) return kernel * rest;
    // all prime factors exceed the trial bound and rest is not a square or a
    // prime; below bound^3 it must be a product of two distinct primes
    mpz_class cube_bound;
    mpz_ui_pow_ui(cube_bound.get_mpz_t(), trial_bound, 3);
    if (rest < cube_bound) return kernel * rest;
    throw std::runtime_error("square-free kernel: factorization out of range");
}

FieldCompatibility field_compatible(const ExactMatrix& m, const ExactMatrix& n,
                                    const Cancellation& cancel) {
    PFReport rm = pf_report(m, cancel);
    PFReport rn = pf_report(n, cancel);
    if (rm.pf_is_rational && rn.pf_is_rational) return FieldCompatibility::Compatible;
    if (rm.pf_is_rational != rn.pf_is_rational) return FieldCompatibility::Incompatible;
    if (rm.minimal_polynomial_degree != rn.minimal_polynomial_degree)
        return FieldCompatibility::Incompatible;
    if (rm.minimal_polynomial_degree == 2) {
        // quadratic fields match iff the discriminants share a square-free part
        auto disc = [](const PFReport& r) {
            const IntPolynomial& p = r.pf_minimal_polynomial;
            mpz_class aa = p.coeff(2), bb = p.coeff(1), cc = p.coeff(0);
            return mpz_class(bb * bb - 4 * aa * cc);
        };
        mpz_class dm = disc(rm), dn = disc(rn);
        if (dm <= 0 || dn <= 0)
            throw std::logic_error("real quadratic eigenvalue needs positive discriminant");
        return square_free_kernel(dm) == square_free_kernel(dn)
                   ? FieldCompatibility::Compatible
                   : FieldCompatibility::Incompatible;
    }
    return FieldCompatibility::Indeterminate;
}

EigenvectorApprox pf_eigenvector(const ExactMatrix& m, EigenvectorSide side,
                                 const mpq_class& tolerance, const Cancellation& cancel) {
    if (tolerance <= 0)
        throw std::domain_error("eigenvector tolerance must be positive");
    PrimitivityResult prim = is_primitive(m);
    if (!prim.primitive)
        throw std::domain_error("pf_eigenvector requires a primitive matrix");

    // Right eigenvectors of M^T carry letter frequencies, left (M v = lambda v)
    // carry tile lengths; both are computed from a positive power B of the
    // iteration matrix. Columns of B^k are positive combinations of the true
    // eigenvector, so entrywise column-ratio extremes enclose it.
    ExactMatrix A = (side == EigenvectorSide::Right) ? m.transpose() : m;
    ExactMatrix B = matrix_power(A, static_cast<unsigned long>(prim.exponent));
    const int n = m.rows();

    ExactMatrix C = B;
    std::vector<mpq_class> lo(n), hi(n);
    for (int iter = 0; iter < 20000; ++iter) {
        cancel.check();
        // ratio bounds rho[i][j] in [min_k C(i,k)/C(j,k), max_k ...]
        std::vector<std::vector<mpq_class>> rmin(n, std::vector<mpq_class>(n));
        std::vector<std::vector<mpq_class>> rmax(n, std::vector<mpq_class>(n));
        for (int i = 0; i < n; ++i) {
            for (int j = 0; j < n; ++j) {
                for (int k = 0; k < n; ++k) {
                    mpq_class r(C(i, k), C(j, k));
                    r.canonicalize();
                    if (k == 0 || r < rmin[i][j]) rmin[i][j] = r;
                    if (k == 0 || r > rmax[i][j]) rmax[i][j] = r;
                }
            }
        }
        if (side == EigenvectorSide::Right) {
            // sum-1 normalization: x_i = 1 / sum_j (x_j / x_i)
            for (int i = 0; i < n; ++i) {
                mpq_class slo(0), shi(0);
                for (int j = 0; j < n; ++j) {
                    slo += rmin[j][i];
                    shi += rmax[j][i];
                }
                lo[i] = 1 / shi;
                hi[i] = 1 / slo;
            }
        } else {
            // min-entry-1 normalization: x_i = 1 / min_j (x_j / x_i)
            for (int i = 0; i < n; ++i) {
                mpq_class mlo = rmin[0][i], mhi = rmax[0][i];
                for (int j = 1; j < n; ++j) {
                    if (rmin[j][i] < mlo) mlo = rmin[j][i];
                    if (rmax[j][i] < mhi) mhi = rmax[j][i];
                }
                lo[i] = 1 / mhi;
                hi[i] = 1 / mlo;
            }
        }
        // point estimate: midpoints rescaled to the exact normalization, with
        // a certified bound against the enclosure
        std::vector<mpq_class> est(n);
        for (int i = 0; i < n; ++i) est[i] = (lo[i] + hi[i]) / 2;
        if (side == EigenvectorSide::Right) {
            mpq_class s(0);
            for (const auto& e : est) s += e;
            for (auto& e : est) e /= s;
        } else {
            mpq_class mn = est[0];
            for (const auto& e : est)
                if (e < mn) mn = e;
            for (auto& e : est) e /= mn;
        }
        mpq_class err(0);
        for (int i = 0; i < n; ++i) {
            mpq_class up = hi[i] - est[i];
            mpq_class dn = est[i] - lo[i];
            if (up > err) err = up;
            if (dn > err) err = dn;
        }
        if (err <= tolerance) {
            EigenvectorApprox out;
            out.side = side;
            out.entries = std::move(est);
            out.error_bound = err;
            return out;
        }
        C = C * B;
    }
    throw std::runtime_error("eigenvector enclosure did not converge");
}

} // namespace subkit
