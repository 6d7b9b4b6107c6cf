#include "subkit/polynomial.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace subkit {

IntPolynomial::IntPolynomial(std::vector<mpz_class> coeffs) : coeffs_(std::move(coeffs)) {
    normalize();
}

void IntPolynomial::normalize() {
    while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

IntPolynomial IntPolynomial::constant(const mpz_class& c) {
    return IntPolynomial(std::vector<mpz_class>{c});
}

IntPolynomial IntPolynomial::linear_root(const mpz_class& r) {
    return IntPolynomial({mpz_class(-r), mpz_class(1)});
}

const mpz_class& IntPolynomial::coeff(int i) const {
    static const mpz_class zero(0);
    if (i < 0 || i >= static_cast<int>(coeffs_.size())) return zero;
    return coeffs_[i];
}

const mpz_class& IntPolynomial::leading() const {
    if (coeffs_.empty())
        throw std::domain_error("zero polynomial has no leading coefficient");
    return coeffs_.back();
}

mpz_class IntPolynomial::eval(const mpz_class& x) const {
    mpz_class acc(0);
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it)
        acc = acc * x + *it;
    return acc;
}

mpq_class IntPolynomial::eval(const mpq_class& x) const {
    mpq_class acc(0);
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it)
        acc = acc * x + mpq_class(*it);
    return acc;
}

int IntPolynomial::sign_at(const mpq_class& x) const {
    mpq_class v = eval(x);
    return sgn(v);
}

IntPolynomial IntPolynomial::derivative() const {
    if (coeffs_.size() <= 1) return IntPolynomial();
    std::vector<mpz_class> d(coeffs_.size() - 1);
    for (size_t i = 1; i < coeffs_.size(); ++i)
        d[i - 1] = coeffs_[i] * static_cast<long>(i);
    return IntPolynomial(std::move(d));
}

mpz_class IntPolynomial::content() const {
    mpz_class g(0);
    for (const auto& c : coeffs_)
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
    return g;
}

IntPolynomial IntPolynomial::primitive_part() const {
    if (is_zero()) return IntPolynomial();
    mpz_class g = content();
    if (leading() < 0) g = -g;
    std::vector<mpz_class> out(coeffs_.size());
    for (size_t i = 0; i < coeffs_.size(); ++i) {
        mpz_divexact(out[i].get_mpz_t(), coeffs_[i].get_mpz_t(), g.get_mpz_t());
    }
    return IntPolynomial(std::move(out));
}

IntPolynomial IntPolynomial::operator+(const IntPolynomial& o) const {
    std::vector<mpz_class> out(std::max(coeffs_.size(), o.coeffs_.size()), mpz_class(0));
    for (size_t i = 0; i < coeffs_.size(); ++i) out[i] += coeffs_[i];
    for (size_t i = 0; i < o.coeffs_.size(); ++i) out[i] += o.coeffs_[i];
    return IntPolynomial(std::move(out));
}

IntPolynomial IntPolynomial::operator-(const IntPolynomial& o) const {
    return *this + (-o);
}

IntPolynomial IntPolynomial::operator-() const {
    std::vector<mpz_class> out(coeffs_.size());
    for (size_t i = 0; i < coeffs_.size(); ++i) out[i] = -coeffs_[i];
    return IntPolynomial(std::move(out));
}

IntPolynomial IntPolynomial::operator*(const IntPolynomial& o) const {
    if (is_zero() || o.is_zero()) return IntPolynomial();
    std::vector<mpz_class> out(coeffs_.size() + o.coeffs_.size() - 1, mpz_class(0));
    for (size_t i = 0; i < coeffs_.size(); ++i)
        for (size_t j = 0; j < o.coeffs_.size(); ++j)
            out[i + j] += coeffs_[i] * o.coeffs_[j];
    return IntPolynomial(std::move(out));
}

namespace {

// Pseudo-remainder: lead(b)^(deg a - deg b + 1) * a mod b, computed in-place.
// The scale factor is positive when lead(b) > 0 or the exponent is even, so
// callers that need true signs multiply by lead(b) parity explicitly.
struct PseudoDiv {
    IntPolynomial quotient;
    IntPolynomial remainder;
    mpz_class scale; // lead(b)^(deg a - deg b + 1)
};

PseudoDiv pseudo_divide(const IntPolynomial& a, const IntPolynomial& b) {
    if (b.is_zero()) throw std::domain_error("pseudo-division by zero polynomial");
    std::vector<mpz_class> r(a.coeffs());
    const int db = b.degree();
    const mpz_class& lb = b.leading();
    int da = a.degree();
    if (da < db) return {IntPolynomial(), a, mpz_class(1)};
    std::vector<mpz_class> q(da - db + 1, mpz_class(0));
    mpz_class scale(1);
    for (int k = da - db; k >= 0; --k) {
        // scale the remainder (and accumulated quotient) by lb, then cancel
        // the top term with its pre-scaling coefficient
        mpz_class coef = r[static_cast<size_t>(k) + db];
        for (auto& c : r) c *= lb;
        for (auto& c : q) c *= lb;
        scale *= lb;
        q[k] += coef;
        for (int i = 0; i <= db; ++i)
            r[static_cast<size_t>(k) + i] -= coef * b.coeff(i);
    }
    r.resize(db > 0 ? db : 0);
    return {IntPolynomial(std::move(q)), IntPolynomial(std::move(r)), scale};
}

} // namespace

IntPolynomial IntPolynomial::divide_exact(const IntPolynomial& divisor) const {
    if (divisor.is_zero()) throw std::domain_error("division by zero polynomial");
    if (is_zero()) return IntPolynomial();
    // long division over the rationals, verified integral
    std::vector<mpq_class> r;
    r.reserve(coeffs_.size());
    for (const auto& c : coeffs_) r.emplace_back(c);
    const int db = divisor.degree();
    int da = degree();
    if (da < db) throw std::domain_error("inexact polynomial division");
    std::vector<mpq_class> q(da - db + 1, mpq_class(0));
    mpq_class lb(divisor.leading());
    for (int k = da - db; k >= 0; --k) {
        mpq_class coef = r[static_cast<size_t>(k) + db] / lb;
        q[k] = coef;
        for (int i = 0; i <= db; ++i)
            r[static_cast<size_t>(k) + i] -= coef * mpq_class(divisor.coeff(i));
    }
    for (int i = 0; i < db; ++i)
        if (r[i] != 0) throw std::domain_error("inexact polynomial division");
    std::vector<mpz_class> qi(q.size());
    for (size_t i = 0; i < q.size(); ++i) {
        if (q[i].get_den() != 1) throw std::domain_error("inexact polynomial division");
        qi[i] = q[i].get_num();
    }
    return IntPolynomial(std::move(qi));
}

IntPolynomial IntPolynomial::deflate(const mpz_class& r) const {
    if (eval(r) != 0) throw std::domain_error("deflate: not a root");
    return divide_exact(IntPolynomial::linear_root(r));
}

std::string IntPolynomial::to_string(const std::string& var) const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (int i = degree(); i >= 0; --i) {
        const mpz_class& c = coeff(i);
        if (c == 0) continue;
        if (!first) os << (c > 0 ? " + " : " - ");
        else if (c < 0) os << "-";
        mpz_class ac = abs(c);
        if (i == 0 || ac != 1) os << ac.get_str();
        if (i > 0) {
            os << var;
            if (i > 1) os << "^" << i;
        }
        first = false;
    }
    return os.str();
}

IntPolynomial poly_gcd(IntPolynomial a, IntPolynomial b) {
    a = a.primitive_part();
    b = b.primitive_part();
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    if (a.degree() < b.degree()) std::swap(a, b);
    while (!b.is_zero()) {
        PseudoDiv pd = pseudo_divide(a, b);
        a = b;
        b = pd.remainder.primitive_part();
    }
    return a.primitive_part();
}

IntPolynomial square_free_part(const IntPolynomial& p) {
    if (p.is_zero() || p.degree() == 0) return p;
    IntPolynomial g = poly_gcd(p, p.derivative());
    if (g.degree() == 0) return p.primitive_part();
    return p.primitive_part().divide_exact(g);
}

std::vector<IntPolynomial> square_free_factorization(const IntPolynomial& p) {
    // Yun's algorithm on the primitive part.
    std::vector<IntPolynomial> factors;
    if (p.is_zero() || p.degree() == 0) return factors;
    IntPolynomial f = p.primitive_part();
    IntPolynomial df = f.derivative();
    IntPolynomial a = poly_gcd(f, df);
    IntPolynomial b = f.divide_exact(a);
    IntPolynomial c = df.divide_exact(a);
    IntPolynomial d = c - b.derivative();
    while (!(b.degree() == 0)) {
        IntPolynomial ai = poly_gcd(b, d);
        factors.push_back(ai.primitive_part());
        b = b.divide_exact(ai);
        c = d.divide_exact(ai);
        d = c - b.derivative();
    }
    return factors;
}

SturmChain::SturmChain(const IntPolynomial& p, const Cancellation& cancel) {
    p_ = square_free_part(p).primitive_part();
    if (p_.is_zero())
        throw std::domain_error("Sturm chain of the zero polynomial");
    chain_.push_back(p_);
    if (p_.degree() >= 1) {
        chain_.push_back(p_.derivative().primitive_part());
        while (chain_.back().degree() > 0) {
            cancel.check();
            const IntPolynomial& s1 = chain_[chain_.size() - 2];
            const IntPolynomial& s2 = chain_.back();
            PseudoDiv pd = pseudo_divide(s1, s2);
            if (pd.remainder.is_zero()) break; // square-free input: only at constants
            // keep the true remainder sign: the pseudo-remainder equals
            // lead(s2)^e * rem; divide out a positive scalar only
            IntPolynomial r = pd.remainder;
            if (pd.scale < 0) r = -r;
            r = -r;
            // normalize by content (positive) to keep coefficients small
            mpz_class g = r.content();
            if (g > 1) {
                std::vector<mpz_class> cs(r.coeffs());
                for (auto& x : cs) mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), g.get_mpz_t());
                r = IntPolynomial(std::move(cs));
            }
            chain_.push_back(r);
        }
    }
}

int SturmChain::variations_at(const mpq_class& x) const {
    int var = 0, prev = 0;
    for (const auto& q : chain_) {
        int s = q.sign_at(x);
        if (s == 0) continue;
        if (prev != 0 && s != prev) ++var;
        prev = s;
    }
    return var;
}

int SturmChain::count_roots(const mpq_class& a, const mpq_class& b) const {
    if (a >= b) return 0;
    return variations_at(a) - variations_at(b);
}

std::vector<RootInterval> isolate_real_roots(const IntPolynomial& p,
                                             const mpq_class& width,
                                             const Cancellation& cancel) {
    std::vector<RootInterval> out;
    IntPolynomial sf = square_free_part(p).primitive_part();
    if (sf.is_zero() || sf.degree() == 0) return out;
    SturmChain chain(sf, cancel);
    // Cauchy bound: all roots have |x| < 1 + max |a_i| / |lead|
    mpz_class maxc(0);
    for (const auto& c : sf.coeffs()) {
        mpz_class a = abs(c);
        if (a > maxc) maxc = a;
    }
    mpz_class lead = abs(sf.leading());
    mpq_class bound = mpq_class(maxc) / mpq_class(lead) + 2;
    struct Seg { mpq_class lo, hi; int count; };
    std::vector<Seg> work{{-bound, bound, chain.count_roots(-bound, bound)}};
    while (!work.empty()) {
        cancel.check();
        Seg s = work.back();
        work.pop_back();
        if (s.count == 0) continue;
        if (s.count == 1 && s.hi - s.lo <= width) {
            out.push_back({s.lo, s.hi});
            continue;
        }
        mpq_class mid = (s.lo + s.hi) / 2;
        int left = chain.count_roots(s.lo, mid);
        int right = s.count - left;
        if (right > 0) work.push_back({mid, s.hi, right});
        if (left > 0) work.push_back({s.lo, mid, left});
    }
    std::sort(out.begin(), out.end(),
              [](const RootInterval& a, const RootInterval& b) { return a.lo < b.lo; });
    return out;
}

std::vector<mpz_class> integer_roots(const IntPolynomial& p, const Cancellation& cancel) {
    std::vector<mpz_class> roots;
    if (p.is_zero()) return roots;
    IntPolynomial q = p;
    // strip zero roots first
    if (q.coeff(0) == 0) {
        if (q.eval(mpz_class(0)) == 0) roots.push_back(0);
        while (!q.is_zero() && q.coeff(0) == 0 && q.degree() > 0)
            q = q.divide_exact(IntPolynomial({mpz_class(0), mpz_class(1)}));
    }
    if (q.degree() < 1) {
        std::sort(roots.begin(), roots.end());
        return roots;
    }
    auto intervals = isolate_real_roots(q, mpq_class(1, 2), cancel);
    for (const auto& iv : intervals) {
        // width <= 1/2: at most one integer in (lo, hi]
        mpz_class cand;
        mpz_fdiv_q(cand.get_mpz_t(), iv.hi.get_num().get_mpz_t(), iv.hi.get_den().get_mpz_t());
        mpq_class candq(cand);
        if (candq > iv.lo && candq <= iv.hi && q.eval(cand) == 0)
            roots.push_back(cand);
    }
    std::sort(roots.begin(), roots.end());
    roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
    return roots;
}

} // namespace subkit
