#include "subkit/bratteli.hpp"

#include <algorithm>
#include <stdexcept>

namespace subkit {

BratteliDiagram BratteliDiagram::stationary(ExactMatrix generator) {
    BratteliDiagram d;
    d.stationary_ = true;
    d.generator_ = std::move(generator);
    return d;
}

BratteliDiagram BratteliDiagram::finite(std::vector<ExactMatrix> incidences) {
    if (incidences.empty())
        throw std::invalid_argument("finite diagram needs at least one transition");
    for (size_t i = 0; i + 1 < incidences.size(); ++i)
        if (incidences[i].cols() != incidences[i + 1].rows())
            throw std::invalid_argument("transition shapes do not chain");
    for (const auto& t : incidences) {
        if (!t.is_nonnegative() || t.has_zero_row() || t.has_zero_column())
            throw std::invalid_argument("transitions need nonzero rows and columns");
    }
    BratteliDiagram d;
    d.stationary_ = false;
    d.incid_ = std::move(incidences);
    return d;
}

const ExactMatrix& BratteliDiagram::generator() const {
    if (!stationary_)
        throw std::domain_error("finite diagram has no generator");
    return generator_;
}

std::optional<int> BratteliDiagram::depth() const {
    if (stationary_) return std::nullopt;
    return static_cast<int>(incid_.size());
}

ExactMatrix BratteliDiagram::transition(int n) const {
    if (n < 0) throw std::out_of_range("transition level negative");
    if (stationary_) return generator_.transpose();
    if (n >= static_cast<int>(incid_.size()))
        throw std::out_of_range("transition level beyond diagram depth");
    return incid_[n];
}

int BratteliDiagram::level_size(int n) const {
    if (n < 0) throw std::out_of_range("level negative");
    if (stationary_) return generator_.rows();
    if (n < static_cast<int>(incid_.size())) return incid_[n].rows();
    if (n == static_cast<int>(incid_.size())) return incid_.back().cols();
    throw std::out_of_range("level beyond diagram depth");
}

std::vector<mpz_class> BratteliDiagram::labels(int n) const {
    std::vector<mpz_class> d(level_size(0), mpz_class(1));
    for (int k = 0; k < n; ++k)
        d = transition(k).apply_transposed(d);
    return d;
}

bool BratteliDiagram::operator==(const BratteliDiagram& o) const {
    if (stationary_ != o.stationary_) return false;
    if (stationary_) return generator_ == o.generator_;
    return incid_ == o.incid_;
}

BratteliDiagram stationary_diagram(const ExactMatrix& m) {
    if (!m.is_substitution_matrix())
        throw std::invalid_argument(
            "stationary diagram needs a square non-negative matrix with no zero row or column");
    return BratteliDiagram::stationary(m);
}

BratteliDiagram telescope(const BratteliDiagram& d, const std::vector<int>& cut_levels) {
    if (cut_levels.size() < 2)
        throw std::domain_error("telescope needs at least two cut levels");
    if (cut_levels.front() != 0)
        throw std::domain_error("telescope cuts must start at the base level");
    for (size_t i = 0; i + 1 < cut_levels.size(); ++i)
        if (cut_levels[i] >= cut_levels[i + 1])
            throw std::domain_error("telescope cuts must be strictly increasing");
    if (auto dep = d.depth(); dep && cut_levels.back() > *dep)
        throw std::domain_error("telescope cut beyond diagram depth");

    if (d.stationary()) {
        bool constant = true;
        int stride = cut_levels[1] - cut_levels[0];
        for (size_t i = 0; i + 1 < cut_levels.size(); ++i)
            if (cut_levels[i + 1] - cut_levels[i] != stride) constant = false;
        if (constant)
            return BratteliDiagram::stationary(matrix_power(d.generator(), stride));
    }
    std::vector<ExactMatrix> segs;
    for (size_t i = 0; i + 1 < cut_levels.size(); ++i) {
        ExactMatrix prod = d.transition(cut_levels[i]);
        for (int k = cut_levels[i] + 1; k < cut_levels[i + 1]; ++k)
            prod = prod * d.transition(k);
        segs.push_back(std::move(prod));
    }
    return BratteliDiagram::finite(std::move(segs));
}

BratteliDiagram telescope_stride(const BratteliDiagram& d, int stride, int steps) {
    if (stride < 1) throw std::domain_error("stride must be positive");
    if (d.stationary() && steps <= 0)
        return BratteliDiagram::stationary(matrix_power(d.generator(), stride));
    int n = steps;
    if (n <= 0) {
        auto dep = d.depth();
        if (!dep) throw std::domain_error("steps required");
        n = *dep / stride;
    }
    std::vector<int> cuts;
    for (int i = 0; i <= n; ++i) cuts.push_back(i * stride);
    return telescope(d, cuts);
}

namespace {

bool extend_permutation(const ExactMatrix& m, const ExactMatrix& n, std::vector<int>& perm,
                        std::vector<char>& used, int i) {
    const int sz = m.rows();
    if (i == sz) return true;
    for (int cand = 0; cand < sz; ++cand) {
        if (used[cand]) continue;
        bool ok = m(i, i) == n(cand, cand);
        for (int j = 0; ok && j < i; ++j) {
            if (m(i, j) != n(cand, perm[j])) ok = false;
            if (m(j, i) != n(perm[j], cand)) ok = false;
        }
        if (!ok) continue;
        perm[i] = cand;
        used[cand] = 1;
        if (extend_permutation(m, n, perm, used, i + 1)) return true;
        used[cand] = 0;
    }
    return false;
}

} // namespace

std::optional<std::vector<int>> isomorphic_stationary(const ExactMatrix& m,
                                                      const ExactMatrix& n) {
    if (!m.square() || !n.square()) return std::nullopt;
    if (m.rows() != n.rows()) return std::nullopt;
    // multiset pruning on row/column sums
    auto sig = [](const ExactMatrix& a) {
        auto rs = a.row_sums();
        auto cs = a.col_sums();
        std::sort(rs.begin(), rs.end());
        std::sort(cs.begin(), cs.end());
        return std::pair(rs, cs);
    };
    if (sig(m) != sig(n)) return std::nullopt;
    std::vector<int> perm(m.rows(), -1);
    std::vector<char> used(m.rows(), 0);
    if (extend_permutation(m, n, perm, used, 0)) return perm;
    return std::nullopt;
}

} // namespace subkit
