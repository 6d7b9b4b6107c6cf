#include "subkit/equivalence.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>

namespace subkit {

namespace {

std::vector<ExactMatrix> split_chain(const ExactMatrix& n_factor, const ExactMatrix& s_factor) {
    // two full periods of (N, S)
    return {n_factor, s_factor, n_factor, s_factor};
}

InterleaveLink split_link(const ExactMatrix& m, const ExactMatrix& n_factor,
                          const ExactMatrix& s_factor, const ExactMatrix& result) {
    InterleaveLink link;
    link.left = DiagramSpec(m);
    link.right = DiagramSpec(result);
    link.chain = split_chain(n_factor, s_factor);
    link.left_counts = {1, 1};
    link.right_counts = {1};
    link.right_offset = 0;
    link.period_start = 0;
    link.period_len = 2;
    return link;
}

} // namespace

StateSplitResult state_split(const ExactMatrix& m, const ExactMatrix& n_factor,
                             const ExactMatrix& s_factor) {
    if (!m.square())
        throw std::invalid_argument("state_split needs a square matrix");
    if (n_factor.rows() != m.rows() || s_factor.cols() != m.cols() ||
        n_factor.cols() != s_factor.rows())
        throw std::invalid_argument("state_split factor shapes do not match");
    if (!n_factor.is_nonnegative() || !s_factor.is_nonnegative())
        throw std::invalid_argument("state_split factors must be non-negative");
    for (const auto& cs : n_factor.col_sums())
        if (cs != 1)
            throw std::invalid_argument("state_split: columns of nFactor must sum to one");
    if (n_factor.has_zero_row())
        throw std::invalid_argument("state_split: nFactor must have no zero row");
    if (n_factor * s_factor != m)
        throw std::invalid_argument("state_split: factorization does not reproduce the input");

    StateSplitResult out{s_factor * n_factor, {}};
    out.certificate.links.emplace_back(split_link(m, n_factor, s_factor, out.result));
    return out;
}

EnlargeResult enlarge(const ExactMatrix& m, int target_letters) {
    if (!m.is_substitution_matrix())
        throw std::invalid_argument("enlarge needs a valid substitution matrix");
    if (target_letters <= m.rows())
        throw std::domain_error("enlarge target must exceed the current letter count");
    if (!is_primitive(m).primitive)
        throw std::domain_error("enlarge requires a primitive matrix");

    const int n = m.rows(), t = target_letters;
    // raise to a power whose entries all reach the target letter count
    int power_used = 1;
    ExactMatrix mp = m;
    auto min_entry = [](const ExactMatrix& a) {
        mpz_class mn = a(0, 0);
        for (int i = 0; i < a.rows(); ++i)
            for (int j = 0; j < a.cols(); ++j)
                if (a(i, j) < mn) mn = a(i, j);
        return mn;
    };
    while (min_entry(mp) < t) {
        mp = mp * m;
        ++power_used;
    }

    // first row spreads over t - n + 1 unit columns, the identity block keeps
    // the remaining letters
    ExactMatrix nf(n, t);
    for (int j = 0; j <= t - n; ++j) nf(0, j) = 1;
    for (int i = 1; i < n; ++i) nf(i, t - n + i) = 1;

    ExactMatrix sf(t, n);
    for (int j = 0; j < n; ++j) sf(0, j) = mp(0, j) - (t - n);
    for (int i = 1; i <= t - n; ++i)
        for (int j = 0; j < n; ++j) sf(i, j) = 1;
    for (int i = 1; i < n; ++i)
        for (int j = 0; j < n; ++j) sf(t - n + i, j) = mp(i, j);

    if (nf * sf != mp)
        throw std::logic_error("enlarge: factor construction failed");

    EnlargeResult out{sf * nf, {}, power_used};
    if (!is_primitive(out.result).primitive)
        throw std::logic_error("enlarge: result not primitive");
    if (power_used > 1) {
        PowerLink pl;
        pl.left = DiagramSpec(m);
        pl.right = DiagramSpec(mp);
        pl.stride = static_cast<unsigned>(power_used);
        out.certificate.links.emplace_back(std::move(pl));
    }
    out.certificate.links.emplace_back(split_link(mp, nf, sf, out.result));
    return out;
}

MatrixInvariants matrix_invariants(const ExactMatrix& m, const Cancellation& cancel) {
    MatrixInvariants inv;
    auto prim = is_primitive(m);
    inv.primitive = prim.primitive;
    if (prim.primitive) inv.primitivity_exponent = prim.exponent;
    inv.invertible = determinant(m) != 0;
    inv.non_nilpotent_rank = subkit::non_nilpotent_rank(m);
    if (prim.primitive) inv.purely_aperiodic = purely_aperiodic(m, cancel);
    inv.supernat = supernatural(m);
    return inv;
}

namespace {

// ---- rational matrices for the invertible-witness checks ----

struct RatMatrix {
    int rows = 0, cols = 0;
    std::vector<mpq_class> a;
    RatMatrix() = default;
    RatMatrix(int r, int c) : rows(r), cols(c), a(static_cast<size_t>(r) * c) {}
    explicit RatMatrix(const ExactMatrix& m) : RatMatrix(m.rows(), m.cols()) {
        for (int i = 0; i < rows; ++i)
            for (int j = 0; j < cols; ++j)
                at(i, j) = mpq_class(m(i, j));
    }
    mpq_class& at(int i, int j) { return a[static_cast<size_t>(i) * cols + j]; }
    const mpq_class& at(int i, int j) const { return a[static_cast<size_t>(i) * cols + j]; }
    RatMatrix operator*(const RatMatrix& o) const {
        RatMatrix out(rows, o.cols);
        for (int i = 0; i < rows; ++i)
            for (int j = 0; j < o.cols; ++j) {
                mpq_class acc(0);
                for (int k = 0; k < cols; ++k) acc += at(i, k) * o.at(k, j);
                out.at(i, j) = acc;
            }
        return out;
    }
    std::optional<ExactMatrix> to_integer_nonneg() const {
        ExactMatrix out(rows, cols);
        for (int i = 0; i < rows; ++i)
            for (int j = 0; j < cols; ++j) {
                if (at(i, j).get_den() != 1 || at(i, j) < 0) return std::nullopt;
                out(i, j) = at(i, j).get_num();
            }
        return out;
    }
};

std::optional<RatMatrix> rat_inverse(const ExactMatrix& m) {
    if (!m.square()) return std::nullopt;
    const int n = m.rows();
    RatMatrix a(m);
    RatMatrix inv(n, n);
    for (int i = 0; i < n; ++i) inv.at(i, i) = 1;
    for (int col = 0; col < n; ++col) {
        int piv = -1;
        for (int i = col; i < n; ++i)
            if (a.at(i, col) != 0) { piv = i; break; }
        if (piv < 0) return std::nullopt;
        if (piv != col)
            for (int j = 0; j < n; ++j) {
                std::swap(a.at(piv, j), a.at(col, j));
                std::swap(inv.at(piv, j), inv.at(col, j));
            }
        mpq_class d = a.at(col, col);
        for (int j = 0; j < n; ++j) {
            a.at(col, j) /= d;
            inv.at(col, j) /= d;
        }
        for (int i = 0; i < n; ++i) {
            if (i == col || a.at(i, col) == 0) continue;
            mpq_class f = a.at(i, col);
            for (int j = 0; j < n; ++j) {
                a.at(i, j) -= f * a.at(col, j);
                inv.at(i, j) -= f * inv.at(col, j);
            }
        }
    }
    return inv;
}

// ---- rank-one tower reduction ----

struct TowerParams {
    mpz_class alpha; // base dimension multiplier (sum of the column factor)
    mpz_class s;     // stationary ratio
    DiagramSpec spec() const {
        std::vector<ExactMatrix> prefix;
        ExactMatrix a(1, 1);
        a(0, 0) = alpha;
        prefix.push_back(a);
        ExactMatrix g(1, 1);
        g(0, 0) = s;
        return DiagramSpec(std::move(prefix), g);
    }
};

std::optional<TowerParams> tower_of(const ExactMatrix& m) {
    if (m.rows() == 1) {
        if (m(0, 0) < 1) return std::nullopt;
        return TowerParams{m(0, 0), m(0, 0)};
    }
    auto split = rank_one_split(m);
    if (!split || split->s <= 0) return std::nullopt;
    return TowerParams{split->sum_c, split->s};
}

InterleaveLink tower_link(const ExactMatrix& m, const RankOneSplit& split,
                          const TowerParams& tower) {
    // chain (1^T, c, r, c, r): odd products hit the tower, even products the
    // full diagram
    const int n = m.rows();
    ExactMatrix ones_row(1, n);
    for (int j = 0; j < n; ++j) ones_row(0, j) = 1;
    ExactMatrix c(n, 1), r(1, n);
    for (int i = 0; i < n; ++i) c(i, 0) = split.c[i];
    for (int j = 0; j < n; ++j) r(0, j) = split.r[j];
    InterleaveLink link;
    link.left = tower.spec();
    link.right = DiagramSpec(m);
    link.chain = {ones_row, c, r, c, r};
    link.left_counts = {1, 1};
    link.right_counts = {1, 1};
    link.right_offset = 0;
    link.period_start = 1;
    link.period_len = 2;
    return link;
}

std::optional<InterleaveLink> tower_bridge(const TowerParams& a, const TowerParams& b) {
    // periodic 1x1 interleaving between the towers alpha_a * s_a^k and
    // alpha_b * s_b^k; needs a common dimension and commensurate ratios
    if (a.s <= 1 || b.s <= 1) {
        // finite or constant towers: only identical ones interleave
        if (a.alpha == b.alpha && a.s == b.s) return std::nullopt; // equal specs, no link needed
        return std::nullopt;
    }
    auto fa = factorize(a.s);
    auto fb = factorize(b.s);
    if (fa.size() != fb.size()) return std::nullopt;
    // commensurate: s_a^p == s_b^q for the minimal exponent ratio
    mpz_class p(0), q(0);
    {
        auto it = fa.begin();
        auto jt = fb.begin();
        mpz_class ea(it->second), eb(jt->second);
        if (it->first != jt->first) return std::nullopt;
        mpz_class g;
        mpz_gcd(g.get_mpz_t(), ea.get_mpz_t(), eb.get_mpz_t());
        p = eb / g;
        q = ea / g;
        for (; it != fa.end(); ++it, ++jt) {
            if (jt == fb.end() || it->first != jt->first) return std::nullopt;
            if (p * it->second != q * jt->second) return std::nullopt;
        }
    }
    // common dimension alpha_a s_a^t == alpha_b s_b^u
    for (unsigned t = 0; t <= 64; ++t) {
        mpz_class da = a.alpha;
        for (unsigned i = 0; i < t; ++i) da *= a.s;
        mpz_class db = b.alpha;
        for (unsigned u = 0; u <= 64; ++u) {
            if (da == db) {
                mpz_class sp(1);
                for (mpz_class i = 0; i < p; ++i) sp *= a.s;
                ExactMatrix one(1, 1), dim(1, 1), per(1, 1);
                one(0, 0) = 1;
                dim(0, 0) = da;
                per(0, 0) = sp;
                InterleaveLink link;
                link.left = a.spec();
                link.right = b.spec();
                link.chain = {one, dim, one, per, one, per};
                link.left_counts = {static_cast<int>(t) + 1,
                                    static_cast<int>(p.get_ui()),
                                    static_cast<int>(p.get_ui())};
                link.right_counts = {static_cast<int>(u) + 1,
                                     static_cast<int>(q.get_ui())};
                link.right_offset = 0;
                link.period_start = 2;
                link.period_len = 2;
                return link;
            }
            if (db > da) break;
            db *= b.s;
        }
    }
    return std::nullopt;
}

// enumerate row decompositions for single state-splitting bridges
struct SplitSearch {
    const ExactMatrix& m;
    const ExactMatrix& target;
    const std::vector<int>& owner; // owner[j] = row of m that chain column j splits
    long budget;
    ExactMatrix s;
    std::optional<std::pair<ExactMatrix, std::vector<int>>> found; // (S, perm to target)

    SplitSearch(const ExactMatrix& m_, const ExactMatrix& t_, const std::vector<int>& o_,
                long b_)
        : m(m_), target(t_), owner(o_), budget(b_), s(t_.rows(), m_.cols()) {}

    // distribute row `row` of m over the owner rows, entry by entry
    bool run() { return place(0, 0); }

    bool place(int mrow, int col) {
        if (budget-- < 0) return false;
        if (mrow == m.rows()) {
            ExactMatrix nf(m.rows(), s.rows());
            for (size_t j = 0; j < owner.size(); ++j) nf(owner[j], static_cast<int>(j)) = 1;
            ExactMatrix cand = s * nf;
            if (!cand.is_substitution_matrix()) return false;
            auto perm = isomorphic_stationary(cand, target);
            if (perm) {
                found = {s, *perm};
                return true;
            }
            return false;
        }
        if (col == m.cols()) return place(mrow + 1, 0);
        // rows of s owned by mrow must sum to m(mrow, col) in this column
        std::vector<int> rows;
        for (size_t j = 0; j < owner.size(); ++j)
            if (owner[j] == mrow) rows.push_back(static_cast<int>(j));
        return distribute(mrow, col, rows, 0, m(mrow, col));
    }

    bool distribute(int mrow, int col, const std::vector<int>& rows, size_t idx,
                    const mpz_class& remaining) {
        if (budget < 0) return false;
        if (idx + 1 == rows.size()) {
            s(rows[idx], col) = remaining;
            if (place(mrow, col + 1)) return true;
            s(rows[idx], col) = 0;
            return false;
        }
        for (mpz_class v = 0; v <= remaining; ++v) {
            s(rows[idx], col) = v;
            if (distribute(mrow, col, rows, idx + 1, remaining - v)) return true;
        }
        s(rows[idx], col) = 0;
        return false;
    }
};

// all surjections [k] -> [n] in lexicographic order
void for_each_surjection(int k, int n, const std::function<bool(const std::vector<int>&)>& fn) {
    std::vector<int> owner(k, 0);
    while (true) {
        std::vector<char> hit(n, 0);
        for (int v : owner) hit[v] = 1;
        bool surj = true;
        for (char h : hit)
            if (!h) surj = false;
        if (surj && fn(owner)) return;
        int i = k - 1;
        while (i >= 0 && owner[i] == n - 1) owner[i--] = 0;
        if (i < 0) return;
        ++owner[i];
    }
}

std::optional<UnorderedCertificate> search_split_bridge(const ExactMatrix& a,
                                                        const ExactMatrix& b,
                                                        const SearchBudget& budget,
                                                        const Cancellation& cancel) {
    // split `a` into size(b) letters and match b up to relabeling
    if (b.rows() < a.rows() || b.rows() > budget.max_alphabet) return std::nullopt;
    std::optional<UnorderedCertificate> out;
    for_each_surjection(b.rows(), a.rows(), [&](const std::vector<int>& owner) {
        cancel.check();
        SplitSearch search(a, b, owner, budget.max_split_nodes);
        if (!search.run()) return false;
        const auto& [s, perm] = *search.found;
        ExactMatrix nf(a.rows(), b.rows());
        for (size_t j = 0; j < owner.size(); ++j) nf(owner[j], static_cast<int>(j)) = 1;
        ExactMatrix mid = s * nf;
        UnorderedCertificate cert;
        cert.links.emplace_back(split_link(a, nf, s, mid));
        if (mid != b) {
            IsoLink iso;
            iso.left = DiagramSpec(mid);
            iso.right = DiagramSpec(b);
            iso.perm = perm;
            cert.links.emplace_back(std::move(iso));
        }
        out = std::move(cert);
        return true;
    });
    return out;
}

UnorderedCertificate reverse_certificate(UnorderedCertificate cert) {
    std::reverse(cert.links.begin(), cert.links.end());
    return cert;
}

} // namespace

std::optional<UnorderedCertificate> certificate_from_witness(const ExactMatrix& m,
                                                             const ExactMatrix& n,
                                                             const InvertibleWitness& w) {
    if (!m.square() || !n.square()) return std::nullopt;
    if (determinant(m) == 0 || determinant(n) == 0) return std::nullopt;
    if (!w.j.is_nonnegative() || !w.j.square() || w.j.rows() != m.rows()) return std::nullopt;
    if (w.k1 < 1 || w.l1 < 1 || w.dk < 1 || w.dl < 1) return std::nullopt;
    auto jinv = rat_inverse(w.j);
    if (!jinv) return std::nullopt;
    auto minv = rat_inverse(m);
    auto ninv = rat_inverse(n);
    if (!minv || !ninv) return std::nullopt;

    auto rat_pow = [](const RatMatrix& base, unsigned e, int dim) {
        RatMatrix acc(dim, dim);
        for (int i = 0; i < dim; ++i) acc.at(i, i) = 1;
        for (unsigned i = 0; i < e; ++i) acc = acc * base;
        return acc;
    };
    const int dim = m.rows();
    RatMatrix rm(m), rn(n);

    // intertwining keeps the chain periodic: J n^dl == m^dk J
    if (matrix_power(m, w.dk) * w.j != w.j * matrix_power(n, w.dl)) return std::nullopt;

    RatMatrix c2 = *jinv * rat_pow(rm, w.k1, dim);
    RatMatrix c3 = rat_pow(*minv, w.k1, dim) * RatMatrix(w.j) * rat_pow(rn, w.l1, dim);
    RatMatrix c4 = rat_pow(*ninv, w.l1, dim) * *jinv * rat_pow(rm, w.k1 + w.dk, dim);
    auto C2 = c2.to_integer_nonneg();
    auto C3 = c3.to_integer_nonneg();
    auto C4 = c4.to_integer_nonneg();
    if (!C2 || !C3 || !C4) return std::nullopt;

    // entry level: column sums of J must match a label vector of n's diagram
    DiagramSpec right(n);
    auto jcols = w.j.col_sums();
    std::optional<size_t> offset;
    for (size_t e = 0; e <= 64; ++e) {
        if (right.labels_at(e) == jcols) { offset = e; break; }
        // labels grow; stop early once they dominate
        bool bigger = true;
        auto lab = right.labels_at(e);
        for (size_t i = 0; i < lab.size(); ++i)
            if (lab[i] <= jcols[i]) bigger = false;
        if (bigger) break;
    }
    if (!offset) return std::nullopt;

    InterleaveLink link;
    link.left = DiagramSpec(m);
    link.right = right;
    link.chain = {w.j, *C2, *C3, *C4, *C3, *C4};
    link.left_counts = {static_cast<int>(w.k1), static_cast<int>(w.dk),
                        static_cast<int>(w.dk)};
    link.right_counts = {static_cast<int>(w.l1), static_cast<int>(w.dl)};
    link.right_offset = *offset;
    link.period_start = 2;
    link.period_len = 2;
    UnorderedCertificate cert;
    cert.links.emplace_back(std::move(link));
    std::string why;
    if (!verify_certificate(cert, DiagramSpec(m), DiagramSpec(n), &why)) return std::nullopt;
    return cert;
}

EquivalenceOutcome analyze_equivalence(const ExactMatrix& m, const ExactMatrix& n,
                                       const SearchBudget& budget,
                                       const Cancellation& cancel) {
    if (!m.is_substitution_matrix() || !n.is_substitution_matrix())
        throw std::invalid_argument("analyze_equivalence needs valid substitution matrices");

    EquivalenceOutcome out;
    out.left = matrix_invariants(m, cancel);
    out.right = matrix_invariants(n, cancel);

    auto distinguished = [&](const std::string& name) {
        out.verdict = Verdict::Distinguished;
        out.distinguished_by = name;
        return out;
    };

    if (out.left.primitive != out.right.primitive) return distinguished("primitivity");
    if (out.left.invertible != out.right.invertible) return distinguished("invertibility");
    if (out.left.non_nilpotent_rank != out.right.non_nilpotent_rank)
        return distinguished("non-nilpotent-rank");
    if (out.left.primitive && out.right.primitive) {
        if (*out.left.purely_aperiodic != *out.right.purely_aperiodic)
            return distinguished("purely-aperiodic");
        if (field_compatible(m, n, cancel) == FieldCompatibility::Incompatible)
            return distinguished("field");
    }
    if (out.left.supernat && out.right.supernat &&
        *out.left.supernat != *out.right.supernat)
        return distinguished("supernatural");

    auto equivalent = [&](UnorderedCertificate cert) {
        std::string why;
        if (!verify_certificate(cert, DiagramSpec(m), DiagramSpec(n), &why))
            throw std::logic_error("constructed certificate failed verification: " + why);
        out.verdict = Verdict::Equivalent;
        out.certificate = std::move(cert);
        return out;
    };

    // trivial equality
    if (m == n) {
        UnorderedCertificate cert;
        IsoLink iso;
        iso.left = DiagramSpec(m);
        iso.right = DiagramSpec(n);
        iso.perm.resize(m.rows());
        for (int i = 0; i < m.rows(); ++i) iso.perm[i] = i;
        cert.links.emplace_back(std::move(iso));
        return equivalent(std::move(cert));
    }

    // equal powers up to relabeling
    if (m.rows() == n.rows()) {
        for (int p = 1; p <= budget.max_power; ++p) {
            for (int q = 1; q <= budget.max_power; ++q) {
                cancel.check();
                ExactMatrix mp = matrix_power(m, p);
                ExactMatrix nq = matrix_power(n, q);
                auto perm = isomorphic_stationary(mp, nq);
                if (!perm) continue;
                UnorderedCertificate cert;
                if (p > 1) {
                    PowerLink pl;
                    pl.left = DiagramSpec(m);
                    pl.right = DiagramSpec(mp);
                    pl.stride = static_cast<unsigned>(p);
                    cert.links.emplace_back(std::move(pl));
                }
                if (mp != nq) {
                    IsoLink iso;
                    iso.left = DiagramSpec(mp);
                    iso.right = DiagramSpec(nq);
                    iso.perm = *perm;
                    cert.links.emplace_back(std::move(iso));
                }
                if (q > 1) {
                    PowerLink pl;
                    pl.left = DiagramSpec(n);
                    pl.right = DiagramSpec(nq);
                    pl.stride = static_cast<unsigned>(q);
                    cert.links.emplace_back(std::move(pl));
                }
                return equivalent(std::move(cert));
            }
        }
    }

    // single state-splitting bridges in both directions
    if (auto cert = search_split_bridge(m, n, budget, cancel)) return equivalent(std::move(*cert));
    if (auto cert = search_split_bridge(n, m, budget, cancel))
        return equivalent(reverse_certificate(std::move(*cert)));

    // rank-one reduction through single-vertex towers
    if (out.left.supernat && out.right.supernat && *out.left.supernat == *out.right.supernat) {
        auto ta = tower_of(m), tb = tower_of(n);
        if (ta && tb) {
            UnorderedCertificate cert;
            bool ok = true;
            if (DiagramSpec(m) != ta->spec()) {
                auto split = rank_one_split(m);
                if (split) cert.links.emplace_back(tower_link(m, *split, *ta));
                else ok = false;
            }
            if (ok && ta->spec() != tb->spec()) {
                auto bridge = tower_bridge(*ta, *tb);
                if (bridge) cert.links.emplace_back(std::move(*bridge));
                else ok = false;
            }
            if (ok && DiagramSpec(n) != tb->spec()) {
                auto split = rank_one_split(n);
                if (split) cert.links.emplace_back(tower_link(n, *split, *tb));
                else ok = false;
            }
            if (ok) return equivalent(std::move(cert));
        }
    }

    out.verdict = Verdict::Unknown;
    return out;
}

} // namespace subkit
