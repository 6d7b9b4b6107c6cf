#include "subkit/word.hpp"

#include <stdexcept>

namespace subkit {

Word::Word(Alphabet alphabet, std::vector<int32_t> symbols)
    : alphabet_(std::move(alphabet)), symbols_(std::move(symbols)) {
    for (int32_t s : symbols_)
        if (s < 0 || s >= alphabet_.size())
            throw std::invalid_argument("word symbol out of alphabet range");
}

Word Word::single(const Alphabet& alphabet, int32_t letter) {
    return Word(alphabet, {letter});
}

Word Word::subword(int pos, int len) const {
    if (pos < 0 || len < 0 || pos + len > length())
        throw std::out_of_range("subword range out of bounds");
    return Word(alphabet_, std::vector<int32_t>(symbols_.begin() + pos,
                                                symbols_.begin() + pos + len));
}

Word Word::concat(const Word& other) const {
    if (alphabet_ != other.alphabet_)
        throw std::domain_error("cannot concatenate words over different alphabets");
    std::vector<int32_t> syms = symbols_;
    syms.insert(syms.end(), other.symbols_.begin(), other.symbols_.end());
    return Word(alphabet_, std::move(syms));
}

std::string Word::to_string() const {
    bool multi = false;
    for (const auto& l : alphabet_.letters())
        if (l.size() > 1) multi = true;
    std::string out;
    for (size_t i = 0; i < symbols_.size(); ++i) {
        if (multi && i > 0) out += ' ';
        out += alphabet_.letter(symbols_[i]);
    }
    return out;
}

std::string Word::to_string(char sep) const {
    std::string out;
    for (size_t i = 0; i < symbols_.size(); ++i) {
        if (i > 0) out += sep;
        out += alphabet_.letter(symbols_[i]);
    }
    return out;
}

bool Word::operator==(const Word& other) const {
    return alphabet_ == other.alphabet_ && symbols_ == other.symbols_;
}

bool Word::operator<(const Word& other) const {
    if (symbols_.size() != other.symbols_.size())
        return symbols_.size() < other.symbols_.size();
    return symbols_ < other.symbols_;
}

} // namespace subkit
