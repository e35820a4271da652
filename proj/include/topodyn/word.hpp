#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "topodyn/errors.hpp"

namespace topodyn {

using Sym = std::uint8_t;
using Word = std::vector<Sym>;

inline Word word_from_string(const std::string& s) {
    Word w;
    w.reserve(s.size());
    for (char c : s) {
        if (c < '0' || c > '9') throw ConfigError(std::string("bad symbol '") + c + "' in word");
        w.push_back(static_cast<Sym>(c - '0'));
    }
    return w;
}

inline std::string word_to_string(const Word& w) {
    std::string s;
    s.reserve(w.size());
    for (Sym c : w) s.push_back(static_cast<char>('0' + c));
    return s;
}

inline std::vector<std::int64_t> one_positions(const Word& w) {
    std::vector<std::int64_t> ones;
    for (std::size_t i = 0; i < w.size(); ++i)
        if (w[i] != 0) ones.push_back(static_cast<std::int64_t>(i));
    return ones;
}

} // namespace topodyn
