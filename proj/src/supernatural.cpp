#include "subkit/supernatural.hpp"

#include <sstream>
#include <stdexcept>

namespace subkit {

void SupernaturalNumber::set_infinite(const mpz_class& prime) {
    exps_[prime] = Exponent{true, 0};
}

void SupernaturalNumber::add_finite(const mpz_class& prime, unsigned long exponent) {
    if (exponent == 0) return;
    auto it = exps_.find(prime);
    if (it != exps_.end() && it->second.infinite) return;
    if (it == exps_.end()) exps_[prime] = Exponent{false, exponent};
    else it->second.value += exponent;
}

void SupernaturalNumber::absorb_infinite(const mpz_class& n) {
    for (const auto& [p, e] : factorize(n)) set_infinite(p);
}

void SupernaturalNumber::absorb_finite(const mpz_class& n) {
    for (const auto& [p, e] : factorize(n)) add_finite(p, e);
}

std::string SupernaturalNumber::to_string() const {
    if (exps_.empty()) return "1";
    std::ostringstream os;
    bool first = true;
    for (const auto& [p, e] : exps_) {
        if (!first) os << "·";
        first = false;
        os << p.get_str();
        if (e.infinite) os << "^∞";
        else if (e.value > 1) os << "^" << e.value;
    }
    return os.str();
}

std::map<mpz_class, unsigned long> factorize(const mpz_class& n) {
    if (n <= 0) throw std::domain_error("factorize requires a positive integer");
    std::map<mpz_class, unsigned long> out;
    mpz_class rest = n;
    for (unsigned long p = 2; p <= 1000000 && rest > 1; p = (p == 2 ? 3 : p + 2)) {
        if (!mpz_divisible_ui_p(rest.get_mpz_t(), p)) continue;
        unsigned long e = 0;
        while (mpz_divisible_ui_p(rest.get_mpz_t(), p)) {
            mpz_divexact_ui(rest.get_mpz_t(), rest.get_mpz_t(), p);
            ++e;
        }
        out[mpz_class(p)] = e;
    }
    if (rest > 1) {
        if (mpz_probab_prime_p(rest.get_mpz_t(), 40))
            out[rest] += 1;
        else
            throw std::runtime_error("factorize: composite cofactor out of range");
    }
    return out;
}

std::optional<RankOneSplit> rank_one_split(const ExactMatrix& m) {
    if (!m.is_nonnegative()) return std::nullopt;
    // find the first nonzero row; its primitive form is the row factor
    int pivot_row = -1;
    for (int i = 0; i < m.rows() && pivot_row < 0; ++i)
        for (int j = 0; j < m.cols(); ++j)
            if (m(i, j) != 0) { pivot_row = i; break; }
    if (pivot_row < 0) return std::nullopt; // zero matrix
    mpz_class g(0);
    for (int j = 0; j < m.cols(); ++j)
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), m(pivot_row, j).get_mpz_t());
    RankOneSplit split;
    split.r.resize(m.cols());
    for (int j = 0; j < m.cols(); ++j)
        mpz_divexact(split.r[j].get_mpz_t(), m(pivot_row, j).get_mpz_t(), g.get_mpz_t());
    int pivot_col = -1;
    for (int j = 0; j < m.cols(); ++j)
        if (split.r[j] != 0) { pivot_col = j; break; }
    split.c.resize(m.rows());
    for (int i = 0; i < m.rows(); ++i) {
        mpz_class q, rem;
        mpz_fdiv_qr(q.get_mpz_t(), rem.get_mpz_t(), m(i, pivot_col).get_mpz_t(),
                    split.r[pivot_col].get_mpz_t());
        if (rem != 0) return std::nullopt;
        split.c[i] = q;
        for (int j = 0; j < m.cols(); ++j)
            if (m(i, j) != q * split.r[j]) return std::nullopt;
    }
    split.sum_c = 0;
    for (const auto& v : split.c) split.sum_c += v;
    split.s = 0;
    if (m.square())
        for (size_t j = 0; j < split.r.size(); ++j)
            split.s += split.r[j] * split.c[j];
    return split;
}

std::optional<SupernaturalNumber> supernatural(const ExactMatrix& m) {
    if (m.rows() == 1 && m.cols() == 1) {
        if (m(0, 0) < 1) return std::nullopt;
        SupernaturalNumber sn;
        if (m(0, 0) > 1) sn.absorb_infinite(m(0, 0));
        return sn;
    }
    if (!m.square()) return std::nullopt;
    auto split = rank_one_split(m);
    if (!split) return std::nullopt;
    if (split->s <= 0) return std::nullopt; // degenerate (nilpotent rank-one)
    SupernaturalNumber sn;
    if (split->s > 1) sn.absorb_infinite(split->s);
    if (split->sum_c > 1) sn.absorb_finite(split->sum_c);
    return sn;
}

} // namespace subkit
