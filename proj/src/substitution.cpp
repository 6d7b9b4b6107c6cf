#include "subkit/substitution.hpp"

#include <algorithm>
#include <stdexcept>

namespace subkit {

Substitution::Substitution(Alphabet domain, Alphabet codomain, std::vector<Word> images)
    : domain_(std::move(domain)), codomain_(std::move(codomain)), images_(std::move(images)) {
    if (static_cast<int>(images_.size()) != domain_.size())
        throw std::invalid_argument("substitution needs one image per domain letter");
    for (const auto& w : images_) {
        if (w.empty())
            throw std::invalid_argument("substitution images must be nonempty");
        if (w.alphabet() != codomain_)
            throw std::invalid_argument("substitution image over wrong alphabet");
    }
}

Substitution::Substitution(Alphabet alphabet, std::vector<Word> images)
    : Substitution(alphabet, alphabet, std::move(images)) {}

Substitution Substitution::identity(const Alphabet& alphabet) {
    std::vector<Word> images;
    images.reserve(alphabet.size());
    for (int i = 0; i < alphabet.size(); ++i)
        images.push_back(Word::single(alphabet, i));
    return Substitution(alphabet, alphabet, std::move(images));
}

Word Substitution::apply(const Word& w) const {
    if (w.alphabet() != domain_)
        throw std::domain_error("word is not over the substitution's domain");
    std::vector<int32_t> out;
    for (int32_t s : w.symbols()) {
        const auto& img = images_[s].symbols();
        out.insert(out.end(), img.begin(), img.end());
    }
    return Word(codomain_, std::move(out));
}

bool Substitution::operator==(const Substitution& other) const {
    return domain_ == other.domain_ && codomain_ == other.codomain_ &&
           images_ == other.images_;
}

bool Substitution::operator<(const Substitution& other) const {
    if (domain_.size() != other.domain_.size())
        return domain_.size() < other.domain_.size();
    if (codomain_.size() != other.codomain_.size())
        return codomain_.size() < other.codomain_.size();
    for (int i = 0; i < domain_.size(); ++i) {
        if (images_[i] < other.images_[i]) return true;
        if (other.images_[i] < images_[i]) return false;
    }
    return false;
}

std::string Substitution::to_string() const {
    std::string out;
    for (int i = 0; i < domain_.size(); ++i) {
        if (i) out += ", ";
        out += domain_.letter(i) + " -> " + images_[i].to_string();
    }
    return out;
}

Substitution compose(const Substitution& outer, const Substitution& inner) {
    if (inner.codomain() != outer.domain())
        throw std::domain_error("compose: inner codomain must equal outer domain");
    std::vector<Word> images;
    images.reserve(inner.domain().size());
    for (int l = 0; l < inner.domain().size(); ++l)
        images.push_back(outer.apply(inner.image(l)));
    return Substitution(inner.domain(), outer.codomain(), std::move(images));
}

Substitution power(const Substitution& s, unsigned int k) {
    if (!s.square())
        throw std::domain_error("power requires a square substitution");
    Substitution acc = Substitution::identity(s.domain());
    for (unsigned int i = 0; i < k; ++i)
        acc = compose(s, acc);
    return acc;
}

ExactMatrix abelianize(const Substitution& s) {
    ExactMatrix m(s.domain().size(), s.codomain().size());
    for (int i = 0; i < s.domain().size(); ++i)
        for (int32_t c : s.image(i).symbols())
            m(i, c) += 1;
    return m;
}

FactorLanguage::FactorLanguage(Substitution substitution, int max_length,
                               std::set<Word> factors)
    : substitution_(std::move(substitution)), max_length_(max_length),
      factors_(std::move(factors)) {}

namespace {

void add_factors_up_to(const Word& w, int k, std::set<Word>& into) {
    const int n = w.length();
    for (int len = 1; len <= std::min(k, n); ++len)
        for (int pos = 0; pos + len <= n; ++pos)
            into.insert(w.subword(pos, len));
}

} // namespace

FactorLanguage factor_language(const Substitution& s, int k) {
    if (!s.square())
        throw std::domain_error("factor_language requires a square substitution");
    if (k < 1)
        throw std::domain_error("factor_language requires k >= 1");
    std::set<Word> lang;
    for (int l = 0; l < s.domain().size(); ++l)
        lang.insert(Word::single(s.domain(), l));
    // Monotone iteration; the powerset of words of length <= k is finite.
    bool grew = true;
    while (grew) {
        std::set<Word> next = lang;
        for (const auto& w : lang)
            add_factors_up_to(s.apply(w), k, next);
        grew = next.size() != lang.size();
        lang.swap(next);
    }
    return FactorLanguage(s, k, std::move(lang));
}

std::vector<int> first_letter_map(const Substitution& s) {
    if (!s.square())
        throw std::domain_error("letter maps require a square substitution");
    std::vector<int> f(s.domain().size());
    for (int l = 0; l < s.domain().size(); ++l)
        f[l] = s.image(l).front();
    return f;
}

std::vector<int> last_letter_map(const Substitution& s) {
    if (!s.square())
        throw std::domain_error("letter maps require a square substitution");
    std::vector<int> f(s.domain().size());
    for (int l = 0; l < s.domain().size(); ++l)
        f[l] = s.image(l).back();
    return f;
}

std::vector<int> cycle_vertices(const std::vector<int>& f) {
    const int n = static_cast<int>(f.size());
    std::vector<int> cyc;
    for (int start = 0; start < n; ++start) {
        // start is cyclic iff f^m(start) == start for some 1 <= m <= n
        int z = start;
        bool back = false;
        for (int step = 1; step <= n; ++step) {
            z = f[z];
            if (z == start) { back = true; break; }
        }
        if (back) cyc.push_back(start);
    }
    return cyc;
}

bool is_proper(const Substitution& s) {
    if (!s.square())
        throw std::domain_error("is_proper requires a square substitution");
    auto one_fixed_cycle = [](const std::vector<int>& f) {
        auto cyc = cycle_vertices(f);
        return cyc.size() == 1 && f[cyc[0]] == cyc[0];
    };
    return one_fixed_cycle(first_letter_map(s)) && one_fixed_cycle(last_letter_map(s));
}

} // namespace subkit
