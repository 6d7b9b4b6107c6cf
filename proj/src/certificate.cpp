#include "subkit/certificate.hpp"

#include <sstream>
#include <stdexcept>

namespace subkit {

DiagramSpec::DiagramSpec(ExactMatrix generator)
    : generator_(std::move(generator)) {
    if (!generator_->square())
        throw std::invalid_argument("diagram generator must be square");
    normalize();
}

DiagramSpec::DiagramSpec(std::vector<ExactMatrix> prefix, std::optional<ExactMatrix> generator)
    : prefix_(std::move(prefix)), generator_(std::move(generator)) {
    if (prefix_.empty() && !generator_)
        throw std::invalid_argument("diagram spec needs a prefix or a generator");
    for (size_t i = 0; i + 1 < prefix_.size(); ++i)
        if (prefix_[i].cols() != prefix_[i + 1].rows())
            throw std::invalid_argument("diagram prefix shapes do not chain");
    if (generator_) {
        if (!generator_->square())
            throw std::invalid_argument("diagram generator must be square");
        if (!prefix_.empty() && prefix_.back().cols() != generator_->rows())
            throw std::invalid_argument("diagram prefix does not chain into generator");
    }
    normalize();
}

void DiagramSpec::normalize() {
    if (!generator_) return;
    while (!prefix_.empty() && prefix_.back() == *generator_) prefix_.pop_back();
}

DiagramSpec DiagramSpec::from_diagram(const BratteliDiagram& d) {
    // The certificate layer reads a diagram through its substitution-oriented
    // step matrices (the stored incidences transposed), so chain products
    // compare against raw generator powers.
    if (d.stationary()) return DiagramSpec(d.generator());
    std::vector<ExactMatrix> prefix;
    for (int k = 0; k < *d.depth(); ++k) prefix.push_back(d.transition(k).transpose());
    return DiagramSpec(std::move(prefix), std::nullopt);
}

bool DiagramSpec::has_transition(size_t k) const {
    return k < prefix_.size() || generator_.has_value();
}

const ExactMatrix& DiagramSpec::transition_at(size_t k) const {
    if (k < prefix_.size()) return prefix_[k];
    if (generator_) return *generator_;
    throw std::out_of_range("transition beyond finite diagram");
}

int DiagramSpec::level_size(size_t k) const {
    if (k < prefix_.size()) return prefix_[k].rows();
    if (generator_) return generator_->rows();
    if (!prefix_.empty() && k == prefix_.size()) return prefix_.back().cols();
    throw std::out_of_range("level beyond finite diagram");
}

std::vector<mpz_class> DiagramSpec::labels_at(size_t level) const {
    std::vector<mpz_class> l(level_size(0), mpz_class(1));
    for (size_t k = 0; k < level; ++k)
        l = transition_at(k).apply_transposed(l);
    return l;
}

ExactMatrix DiagramSpec::composite(size_t from, size_t count) const {
    if (count == 0)
        throw std::domain_error("composite needs at least one transition");
    ExactMatrix prod = transition_at(from);
    for (size_t k = 1; k < count; ++k) prod = prod * transition_at(from + k);
    return prod;
}

bool DiagramSpec::operator==(const DiagramSpec& o) const {
    return prefix_ == o.prefix_ && generator_ == o.generator_;
}

const DiagramSpec& link_left(const CertificateLink& l) {
    return std::visit([](const auto& v) -> const DiagramSpec& { return v.left; }, l);
}

const DiagramSpec& link_right(const CertificateLink& l) {
    return std::visit([](const auto& v) -> const DiagramSpec& { return v.right; }, l);
}

namespace {

bool fail(std::string* why, const std::string& msg) {
    if (why) *why = msg;
    return false;
}

bool verify_interleave(const InterleaveLink& link, std::string* why) {
    const auto& chain = link.chain;
    if (chain.size() < 2)
        throw std::invalid_argument("interleave chain needs at least two matrices");
    for (size_t i = 0; i + 1 < chain.size(); ++i)
        if (chain[i].cols() != chain[i + 1].rows())
            throw std::invalid_argument("interleave chain shapes do not compose");
    for (const auto& c : chain) {
        if (!c.is_nonnegative()) return fail(why, "chain matrix with negative entry");
        if (c.has_zero_row()) return fail(why, "chain matrix with zero row");
        if (c.has_zero_column()) return fail(why, "chain matrix with zero column");
    }
    if (chain[0].rows() != link.left.level_size(0))
        return fail(why, "chain does not start at the left diagram's base");

    // base labels: left starts at all-ones; level 1 must carry the right
    // diagram's labels at the entry offset
    std::vector<mpz_class> ones(chain[0].rows(), mpz_class(1));
    std::vector<mpz_class> l1 = chain[0].apply_transposed(ones);
    if (l1 != link.right.labels_at(link.right_offset))
        return fail(why, "entry labels do not match the right diagram");

    // adjacent products against consecutive telescoped transitions
    const size_t products = chain.size() - 1;
    size_t need_left = (products + 1) / 2, need_right = products / 2;
    if (link.left_counts.size() != need_left || link.right_counts.size() != need_right)
        return fail(why, "product grouping sizes do not match the chain");
    size_t lpos = 0, rpos = link.right_offset;
    for (size_t i = 1; i <= products; ++i) {
        ExactMatrix prod = chain[i - 1] * chain[i];
        if (i % 2 == 1) {
            int cnt = link.left_counts[(i - 1) / 2];
            if (cnt < 1) return fail(why, "left grouping count must be positive");
            if (!link.left.has_transition(lpos + cnt - 1))
                return fail(why, "left diagram too short for grouping");
            if (prod != link.left.composite(lpos, cnt))
                return fail(why, "odd product does not telescope the left diagram");
            lpos += cnt;
        } else {
            int cnt = link.right_counts[i / 2 - 1];
            if (cnt < 1) return fail(why, "right grouping count must be positive");
            if (!link.right.has_transition(rpos + cnt - 1))
                return fail(why, "right diagram too short for grouping");
            if (prod != link.right.composite(rpos, cnt))
                return fail(why, "even product does not telescope the right diagram");
            rpos += cnt;
        }
    }

    const bool needs_period =
        link.left.eventually_stationary() || link.right.eventually_stationary();
    if (link.period_len == 0) {
        if (needs_period)
            return fail(why, "stationary inputs need an eventually periodic chain");
        return true;
    }
    if (link.period_len % 2 != 0)
        return fail(why, "period length must be even");
    if (!link.left.eventually_stationary() || !link.right.eventually_stationary())
        return fail(why, "periodic chains require eventually stationary diagrams");
    if (chain.size() < link.period_start + 2 * link.period_len)
        return fail(why, "need two materialized periods after the period start");
    for (size_t i = link.period_start; i + link.period_len < chain.size(); ++i)
        if (chain[i] != chain[i + link.period_len])
            return fail(why, "chain is not periodic as declared");
    // the periodic region must already sit in the stationary tails so the
    // checked identities repeat verbatim
    size_t lconsumed = 0, rconsumed = link.right_offset;
    for (size_t i = 1; i <= products; ++i) {
        if (i % 2 == 1) {
            if (i - 1 >= link.period_start && lconsumed < link.left.prefix().size())
                return fail(why, "period overlaps the left prefix");
            lconsumed += link.left_counts[(i - 1) / 2];
        } else {
            if (i - 1 >= link.period_start && rconsumed < link.right.prefix().size())
                return fail(why, "period overlaps the right prefix");
            rconsumed += link.right_counts[i / 2 - 1];
        }
    }
    // grouping counts must repeat with the period
    const size_t pairs = link.period_len / 2;
    auto counts_periodic = [&](const std::vector<int>& counts, size_t first_in_period) {
        for (size_t a = first_in_period; a + pairs < counts.size(); ++a)
            if (counts[a] != counts[a + pairs]) return false;
        return true;
    };
    size_t first_left = (link.period_start + 1) / 2;
    size_t first_right = link.period_start / 2;
    if (!counts_periodic(link.left_counts, first_left) ||
        !counts_periodic(link.right_counts, first_right))
        return fail(why, "grouping counts are not periodic as declared");
    return true;
}

bool verify_power(const PowerLink& link, std::string* why) {
    if (!link.left.eventually_stationary() || !link.right.eventually_stationary() ||
        !link.left.prefix().empty() || !link.right.prefix().empty())
        return fail(why, "power link needs stationary diagrams");
    if (link.stride < 1) return fail(why, "power link stride must be positive");
    if (*link.right.generator() != matrix_power(*link.left.generator(), link.stride))
        return fail(why, "power link generator mismatch");
    return true;
}

bool verify_iso(const IsoLink& link, std::string* why) {
    if (!link.left.eventually_stationary() || !link.right.eventually_stationary() ||
        !link.left.prefix().empty() || !link.right.prefix().empty())
        return fail(why, "isomorphism link needs stationary diagrams");
    const ExactMatrix& a = *link.left.generator();
    const ExactMatrix& b = *link.right.generator();
    if (a.rows() != b.rows()) return fail(why, "isomorphism link size mismatch");
    if (static_cast<int>(link.perm.size()) != a.rows())
        return fail(why, "isomorphism permutation size mismatch");
    if (conjugate_by_permutation(a, link.perm) != b)
        return fail(why, "relabeling does not map left generator to right");
    return true;
}

} // namespace

bool verify_link(const CertificateLink& link, std::string* why) {
    return std::visit(
        [&](const auto& l) -> bool {
            using T = std::decay_t<decltype(l)>;
            if constexpr (std::is_same_v<T, InterleaveLink>) return verify_interleave(l, why);
            else if constexpr (std::is_same_v<T, PowerLink>) return verify_power(l, why);
            else return verify_iso(l, why);
        },
        link);
}

bool verify_certificate(const UnorderedCertificate& cert, const DiagramSpec& d1,
                        const DiagramSpec& d2, std::string* why) {
    if (cert.links.empty()) {
        if (d1 == d2) return true;
        return fail(why, "empty certificate between distinct diagrams");
    }
    DiagramSpec current = d1;
    for (size_t i = 0; i < cert.links.size(); ++i) {
        if (!verify_link(cert.links[i], why)) return false;
        const DiagramSpec& l = link_left(cert.links[i]);
        const DiagramSpec& r = link_right(cert.links[i]);
        if (l == current) current = r;
        else if (r == current) current = l;
        else {
            std::ostringstream os;
            os << "link " << i << " does not connect to the running diagram";
            return fail(why, os.str());
        }
    }
    if (current != d2) return fail(why, "certificate path does not end at the target");
    return true;
}

bool verify_certificate(const UnorderedCertificate& cert, const BratteliDiagram& d1,
                        const BratteliDiagram& d2, std::string* why) {
    return verify_certificate(cert, DiagramSpec::from_diagram(d1),
                              DiagramSpec::from_diagram(d2), why);
}

} // namespace subkit
