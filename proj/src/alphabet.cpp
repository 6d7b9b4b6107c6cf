#include "subkit/alphabet.hpp"

#include <set>
#include <stdexcept>

namespace subkit {

Alphabet::Alphabet(std::vector<std::string> letters) {
    if (letters.empty())
        throw std::invalid_argument("alphabet must be nonempty");
    std::set<std::string> seen;
    for (const auto& l : letters) {
        if (l.empty())
            throw std::invalid_argument("alphabet letters must be nonempty tokens");
        if (!seen.insert(l).second)
            throw std::invalid_argument("duplicate letter '" + l + "' in alphabet");
    }
    letters_ = std::make_shared<const std::vector<std::string>>(std::move(letters));
}

Alphabet Alphabet::latin(int n) {
    if (n < 1 || n > 26)
        throw std::invalid_argument("latin alphabet size must be in 1..26");
    std::vector<std::string> ls;
    ls.reserve(n);
    for (int i = 0; i < n; ++i)
        ls.push_back(std::string(1, static_cast<char>('a' + i)));
    return Alphabet(std::move(ls));
}

const std::string& Alphabet::letter(int i) const {
    if (!letters_ || i < 0 || i >= size())
        throw std::out_of_range("letter index out of range");
    return (*letters_)[i];
}

int Alphabet::index_of(const std::string& name) const {
    if (!letters_) return -1;
    for (int i = 0; i < size(); ++i)
        if ((*letters_)[i] == name) return i;
    return -1;
}

const std::vector<std::string>& Alphabet::letters() const {
    static const std::vector<std::string> empty;
    return letters_ ? *letters_ : empty;
}

bool Alphabet::operator==(const Alphabet& other) const {
    if (letters_ == other.letters_) return true;
    if (!letters_ || !other.letters_) return false;
    return *letters_ == *other.letters_;
}

} // namespace subkit
