#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "subkit/alphabet.hpp"

namespace subkit {

// A finite word over an alphabet, stored as letter indices. Empty words are
// permitted here (they arise in factor arithmetic); substitution images are
// validated separately.
class Word {
public:
    Word() = default;
    Word(Alphabet alphabet, std::vector<int32_t> symbols);

    static Word single(const Alphabet& alphabet, int32_t letter);

    const Alphabet& alphabet() const { return alphabet_; }
    const std::vector<int32_t>& symbols() const { return symbols_; }
    int length() const { return static_cast<int>(symbols_.size()); }
    bool empty() const { return symbols_.empty(); }
    int32_t at(int i) const { return symbols_.at(i); }
    int32_t front() const { return symbols_.front(); }
    int32_t back() const { return symbols_.back(); }

    Word subword(int pos, int len) const;
    Word concat(const Word& other) const;

    std::string to_string() const;            // letters joined (spaces if any letter is multi-char)
    std::string to_string(char sep) const;

    bool operator==(const Word& other) const;
    bool operator!=(const Word& other) const { return !(*this == other); }
    // Ordering on (length, symbols); used for canonical sets of words.
    bool operator<(const Word& other) const;

private:
    Alphabet alphabet_;
    std::vector<int32_t> symbols_;
};

} // namespace subkit
