#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "topodyn/errors.hpp"

namespace topodyn {

// Arbitrary-precision natural number, base 10^9 limbs, little-endian.
class BigNat {
public:
    BigNat() {}
    BigNat(std::uint64_t v);
    static BigNat from_decimal(const std::string& s);
    // base^exp; exp limited so the result stays materializable.
    static BigNat pow(std::uint32_t base, std::uint64_t exp, std::uint64_t digit_cap = 1u << 20);

    bool is_zero() const { return limbs_.empty(); }
    std::size_t decimal_digits() const;

    BigNat operator+(const BigNat& o) const;
    // Requires *this >= o.
    BigNat operator-(const BigNat& o) const;
    BigNat operator*(const BigNat& o) const;

    int compare(const BigNat& o) const; // -1, 0, 1
    bool operator==(const BigNat& o) const { return compare(o) == 0; }
    bool operator!=(const BigNat& o) const { return compare(o) != 0; }
    bool operator<(const BigNat& o) const { return compare(o) < 0; }
    bool operator<=(const BigNat& o) const { return compare(o) <= 0; }
    bool operator>(const BigNat& o) const { return compare(o) > 0; }
    bool operator>=(const BigNat& o) const { return compare(o) >= 0; }

    std::optional<std::uint64_t> to_u64() const;
    std::string decimal() const;

private:
    void trim();
    std::vector<std::uint32_t> limbs_; // base 1e9
};

// Natural number in the sparse form
//
//     B^{e_1} + B^{e_2} + ... + B^{e_k} + tail
//
// with tower exponents e_1 > e_2 > ... > e_k (each itself a TowerNat) and a
// plain tail. Canonical when tail < B^{e_k}; all arithmetic here keeps the
// form canonical, which makes comparison a lexicographic walk over the
// exponent lists. This is what the block-gap sequences of the difference-set
// construction need: their values (b_n, a_n, visit times) have a handful of
// power terms whose exponents repeat the same shape one level down.
class TowerNat {
public:
    TowerNat() {}
    explicit TowerNat(BigNat plain) : tail_(std::move(plain)) {}
    explicit TowerNat(std::uint64_t v) : tail_(BigNat(v)) {}

    // B^e as a TowerNat term.
    static TowerNat power(std::uint32_t base, const TowerNat& e);

    bool is_plain() const { return terms_.empty(); }
    const BigNat& tail() const { return tail_; }
    std::size_t term_count() const { return terms_.size(); }
    const TowerNat& exponent(std::size_t i) const { return *terms_[i]; }

    // Addition of a plain value, and of another tower (exponent lists must be
    // mergeable keeping strict descent; equal exponents are not supported —
    // the sequences here never produce B^e + B^e).
    TowerNat add(const BigNat& plain) const;
    TowerNat add(const TowerNat& o) const;
    // Subtract a plain value from the tail; throws if the tail is too small
    // (no borrowing across a power term).
    TowerNat sub_tail(const BigNat& plain) const;

    int compare(const TowerNat& o) const;
    bool operator==(const TowerNat& o) const { return compare(o) == 0; }
    bool operator<(const TowerNat& o) const { return compare(o) < 0; }
    bool operator<=(const TowerNat& o) const { return compare(o) <= 0; }
    bool operator>(const TowerNat& o) const { return compare(o) > 0; }
    bool operator>=(const TowerNat& o) const { return compare(o) >= 0; }

    // Exact decimal string when the value is materializable within digit_cap
    // digits; otherwise a structured rendering "B^(...) + ...".
    std::string str(std::uint32_t base, std::uint64_t digit_cap = 4096) const;
    // Dense value if materializable.
    std::optional<BigNat> materialize(std::uint32_t base, std::uint64_t digit_cap = 4096) const;

private:
    std::vector<std::shared_ptr<const TowerNat>> terms_; // strictly decreasing exponents
    BigNat tail_;
};

} // namespace topodyn
