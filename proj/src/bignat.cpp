#include "topodyn/bignat.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace topodyn {

namespace {
constexpr std::uint32_t kBase = 1000000000u;
}

BigNat::BigNat(std::uint64_t v) {
    while (v > 0) {
        limbs_.push_back(static_cast<std::uint32_t>(v % kBase));
        v /= kBase;
    }
}

void BigNat::trim() {
    while (!limbs_.empty() && limbs_.back() == 0) limbs_.pop_back();
}

BigNat BigNat::from_decimal(const std::string& s) {
    if (s.empty()) throw ConfigError("empty decimal literal");
    BigNat r;
    std::size_t start = s.size() % 9;
    auto chunk = [&](std::size_t lo, std::size_t hi) {
        std::uint32_t v = 0;
        for (std::size_t i = lo; i < hi; ++i) {
            if (s[i] < '0' || s[i] > '9') throw ConfigError("bad decimal literal: " + s);
            v = v * 10 + static_cast<std::uint32_t>(s[i] - '0');
        }
        return v;
    };
    std::vector<std::uint32_t> big_endian;
    if (start > 0) big_endian.push_back(chunk(0, start));
    for (std::size_t i = start; i < s.size(); i += 9) big_endian.push_back(chunk(i, i + 9));
    r.limbs_.assign(big_endian.rbegin(), big_endian.rend());
    r.trim();
    return r;
}

std::size_t BigNat::decimal_digits() const {
    if (limbs_.empty()) return 1;
    std::size_t d = (limbs_.size() - 1) * 9;
    std::uint32_t top = limbs_.back();
    while (top > 0) {
        ++d;
        top /= 10;
    }
    return d;
}

BigNat BigNat::operator+(const BigNat& o) const {
    BigNat r;
    r.limbs_.resize(std::max(limbs_.size(), o.limbs_.size()), 0);
    std::uint64_t carry = 0;
    for (std::size_t i = 0; i < r.limbs_.size(); ++i) {
        std::uint64_t v = carry;
        if (i < limbs_.size()) v += limbs_[i];
        if (i < o.limbs_.size()) v += o.limbs_[i];
        r.limbs_[i] = static_cast<std::uint32_t>(v % kBase);
        carry = v / kBase;
    }
    if (carry) r.limbs_.push_back(static_cast<std::uint32_t>(carry));
    return r;
}

BigNat BigNat::operator-(const BigNat& o) const {
    if (*this < o) throw ArithmeticOverflow("BigNat subtraction underflow");
    BigNat r;
    r.limbs_.resize(limbs_.size(), 0);
    std::int64_t borrow = 0;
    for (std::size_t i = 0; i < limbs_.size(); ++i) {
        std::int64_t v = static_cast<std::int64_t>(limbs_[i]) - borrow -
                         (i < o.limbs_.size() ? static_cast<std::int64_t>(o.limbs_[i]) : 0);
        if (v < 0) {
            v += kBase;
            borrow = 1;
        } else {
            borrow = 0;
        }
        r.limbs_[i] = static_cast<std::uint32_t>(v);
    }
    r.trim();
    return r;
}

BigNat BigNat::operator*(const BigNat& o) const {
    if (is_zero() || o.is_zero()) return BigNat();
    BigNat r;
    r.limbs_.assign(limbs_.size() + o.limbs_.size(), 0);
    for (std::size_t i = 0; i < limbs_.size(); ++i) {
        std::uint64_t carry = 0;
        for (std::size_t j = 0; j < o.limbs_.size(); ++j) {
            std::uint64_t v = static_cast<std::uint64_t>(limbs_[i]) * o.limbs_[j] + r.limbs_[i + j] + carry;
            r.limbs_[i + j] = static_cast<std::uint32_t>(v % kBase);
            carry = v / kBase;
        }
        std::size_t k = i + o.limbs_.size();
        while (carry) {
            std::uint64_t v = r.limbs_[k] + carry;
            r.limbs_[k] = static_cast<std::uint32_t>(v % kBase);
            carry = v / kBase;
            ++k;
        }
    }
    r.trim();
    return r;
}

BigNat BigNat::pow(std::uint32_t base, std::uint64_t exp, std::uint64_t digit_cap) {
    // rough digit estimate to refuse infeasible materializations up front
    double est = static_cast<double>(exp) * std::max(1.0, std::log10(static_cast<double>(base)));
    if (est > static_cast<double>(digit_cap)) throw PrefixLimit("power exceeds digit cap");
    BigNat r(1);
    BigNat b(base);
    while (exp > 0) {
        if (exp & 1) r = r * b;
        b = b * b;
        exp >>= 1;
    }
    if (r.decimal_digits() > digit_cap) throw PrefixLimit("power exceeds digit cap");
    return r;
}

int BigNat::compare(const BigNat& o) const {
    if (limbs_.size() != o.limbs_.size()) return limbs_.size() < o.limbs_.size() ? -1 : 1;
    for (std::size_t i = limbs_.size(); i-- > 0;) {
        if (limbs_[i] != o.limbs_[i]) return limbs_[i] < o.limbs_[i] ? -1 : 1;
    }
    return 0;
}

std::optional<std::uint64_t> BigNat::to_u64() const {
    std::uint64_t v = 0;
    if (limbs_.size() > 3) return std::nullopt;
    for (std::size_t i = limbs_.size(); i-- > 0;) {
        if (v > (std::numeric_limits<std::uint64_t>::max() - limbs_[i]) / kBase) return std::nullopt;
        v = v * kBase + limbs_[i];
    }
    return v;
}

std::string BigNat::decimal() const {
    if (limbs_.empty()) return "0";
    std::string s = std::to_string(limbs_.back());
    for (std::size_t i = limbs_.size() - 1; i-- > 0;) {
        std::string part = std::to_string(limbs_[i]);
        s += std::string(9 - part.size(), '0') + part;
    }
    return s;
}

TowerNat TowerNat::power(std::uint32_t base, const TowerNat& e) {
    (void)base; // base is carried by callers; the form only stores exponents
    TowerNat r;
    r.terms_.push_back(std::make_shared<const TowerNat>(e));
    return r;
}

TowerNat TowerNat::add(const BigNat& plain) const {
    TowerNat r = *this;
    r.tail_ = r.tail_ + plain;
    return r;
}

TowerNat TowerNat::add(const TowerNat& o) const {
    TowerNat r;
    // merge strictly decreasing exponent lists
    std::size_t i = 0, j = 0;
    while (i < terms_.size() || j < o.terms_.size()) {
        if (i == terms_.size()) {
            r.terms_.push_back(o.terms_[j++]);
        } else if (j == o.terms_.size()) {
            r.terms_.push_back(terms_[i++]);
        } else {
            int c = terms_[i]->compare(*o.terms_[j]);
            if (c == 0) throw ArithmeticOverflow("TowerNat: equal exponents in add");
            if (c > 0)
                r.terms_.push_back(terms_[i++]);
            else
                r.terms_.push_back(o.terms_[j++]);
        }
    }
    r.tail_ = tail_ + o.tail_;
    return r;
}

TowerNat TowerNat::sub_tail(const BigNat& plain) const {
    if (tail_ < plain) throw ArithmeticOverflow("TowerNat: tail underflow");
    TowerNat r = *this;
    r.tail_ = r.tail_ - plain;
    return r;
}

int TowerNat::compare(const TowerNat& o) const {
    // canonical forms compare lexicographically on exponents, then tails
    std::size_t n = std::min(terms_.size(), o.terms_.size());
    for (std::size_t i = 0; i < n; ++i) {
        int c = terms_[i]->compare(*o.terms_[i]);
        if (c != 0) return c;
    }
    if (terms_.size() != o.terms_.size()) return terms_.size() < o.terms_.size() ? -1 : 1;
    return tail_.compare(o.tail_);
}

std::optional<BigNat> TowerNat::materialize(std::uint32_t base, std::uint64_t digit_cap) const {
    BigNat acc = tail_;
    for (const auto& t : terms_) {
        auto e = t->materialize(base, digit_cap);
        if (!e) return std::nullopt;
        auto e64 = e->to_u64();
        if (!e64) return std::nullopt;
        try {
            acc = acc + BigNat::pow(base, *e64, digit_cap);
        } catch (const PrefixLimit&) {
            return std::nullopt;
        }
    }
    if (acc.decimal_digits() > digit_cap) return std::nullopt;
    return acc;
}

std::string TowerNat::str(std::uint32_t base, std::uint64_t digit_cap) const {
    if (auto m = materialize(base, digit_cap)) return m->decimal();
    std::string s;
    for (const auto& t : terms_) {
        if (!s.empty()) s += " + ";
        TowerNat single;
        single.terms_.push_back(t);
        if (auto m = single.materialize(base, digit_cap))
            s += m->decimal();
        else
            s += std::to_string(base) + "^(" + t->str(base, digit_cap) + ")";
    }
    if (!tail_.is_zero() || s.empty()) {
        if (!s.empty()) s += " + ";
        s += tail_.decimal();
    }
    return s;
}

} // namespace topodyn
