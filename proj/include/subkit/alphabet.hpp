#pragma once

#include <memory>
#include <string>
#include <vector>

namespace subkit {

// A finite ordered set of letters. Letter indices 0..n-1 are canonical;
// all word storage is by index. Copies share the underlying letter table.
class Alphabet {
public:
    Alphabet() = default;
    explicit Alphabet(std::vector<std::string> letters);

    // Convenience: n single-character letters a, b, c, ...
    static Alphabet latin(int n);

    int size() const { return letters_ ? static_cast<int>(letters_->size()) : 0; }
    const std::string& letter(int i) const;
    // Returns -1 when the name is unknown.
    int index_of(const std::string& name) const;
    const std::vector<std::string>& letters() const;

    bool operator==(const Alphabet& other) const;
    bool operator!=(const Alphabet& other) const { return !(*this == other); }

private:
    std::shared_ptr<const std::vector<std::string>> letters_;
};

} // namespace subkit
