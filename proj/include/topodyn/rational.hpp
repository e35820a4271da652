#pragma once

#include <cstdint>
#include <string>

#include "topodyn/errors.hpp"

namespace topodyn {

// Exact rational on int64 with overflow-checked arithmetic.
// Always stored reduced, denominator > 0.
class Rat {
public:
    Rat() : num_(0), den_(1) {}
    Rat(std::int64_t n) : num_(n), den_(1) {}
    Rat(std::int64_t n, std::int64_t d);

    static Rat from_string(const std::string& s); // "p/q" or "p"
    // Exact value of a finite double (mantissa * 2^e); throws on NaN/inf
    // and on values whose exact form does not fit int64.
    static Rat from_double(double v);

    std::int64_t num() const { return num_; }
    std::int64_t den() const { return den_; }

    Rat operator+(const Rat& o) const;
    Rat operator-(const Rat& o) const;
    Rat operator*(const Rat& o) const;
    Rat operator/(const Rat& o) const;
    Rat operator-() const { return Rat(-num_, den_); }

    bool operator==(const Rat& o) const { return num_ == o.num_ && den_ == o.den_; }
    bool operator!=(const Rat& o) const { return !(*this == o); }
    bool operator<(const Rat& o) const;
    bool operator<=(const Rat& o) const { return *this < o || *this == o; }
    bool operator>(const Rat& o) const { return o < *this; }
    bool operator>=(const Rat& o) const { return o <= *this; }

    // Fractional part in [0, 1).
    Rat mod1() const;
    std::int64_t floor() const;

    bool is_zero() const { return num_ == 0; }
    double to_double() const { return static_cast<double>(num_) / static_cast<double>(den_); }
    std::string str() const;

private:
    std::int64_t num_;
    std::int64_t den_;
};

inline Rat abs(const Rat& r) { return r < Rat(0) ? -r : r; }
inline const Rat& min(const Rat& a, const Rat& b) { return a < b ? a : b; }
inline const Rat& max(const Rat& a, const Rat& b) { return a < b ? b : a; }

// Dyadic 2^-k as a Rat; k must fit (k <= 62).
Rat dyadic(int k);

// Circle distance min(|a-b|, 1-|a-b|) for a, b in [0, 1).
Rat circle_dist(const Rat& a, const Rat& b);

// Largest L >= 0 with 2^-L > eps, i.e. the last window index that still
// matters when deciding d > eps on a subshift. Requires 0 < eps < 1.
int separation_window(const Rat& eps);

// Half-open arc [lo, lo+len) on the circle, 0 <= lo < 1, 0 < len <= 1.
struct Arc {
    Rat lo;
    Rat len;

    Rat hi_mod1() const { return (lo + len).mod1(); }
    bool full() const { return len >= Rat(1); }
    bool contains(const Rat& x) const; // x in [0,1)
    // Diameter of the closed arc in the circle metric: min(len, 1/2).
    Rat diameter() const;
};

// Do two half-open arcs intersect on the circle?
bool arcs_overlap(const Arc& a, const Arc& b);

// Max circle norm ||t|| over t in the real interval [a, b].
Rat interval_circle_sup(const Rat& a, const Rat& b);

} // namespace topodyn
