#include "topodyn/rational.hpp"

#include <cmath>
#include <limits>
#include <numeric>

namespace topodyn {

namespace {

std::int64_t checked_cast(__int128 v, const char* what) {
    if (v > std::numeric_limits<std::int64_t>::max() || v < std::numeric_limits<std::int64_t>::min())
        throw ArithmeticOverflow(std::string("rational overflow in ") + what);
    return static_cast<std::int64_t>(v);
}

} // namespace

Rat::Rat(std::int64_t n, std::int64_t d) {
    if (d == 0) throw ArithmeticOverflow("rational with zero denominator");
    if (d < 0) {
        n = -n;
        d = -d;
    }
    std::int64_t g = std::gcd(n < 0 ? -n : n, d);
    if (g > 1) {
        n /= g;
        d /= g;
    }
    num_ = n;
    den_ = d;
}

Rat Rat::from_string(const std::string& s) {
    auto slash = s.find('/');
    try {
        if (slash == std::string::npos) return Rat(std::stoll(s));
        return Rat(std::stoll(s.substr(0, slash)), std::stoll(s.substr(slash + 1)));
    } catch (const std::exception&) {
        throw ConfigError("bad rational literal: " + s);
    }
}

Rat Rat::from_double(double v) {
    if (!std::isfinite(v)) throw ArithmeticOverflow("non-finite double");
    if (v == 0.0) return Rat(0);
    int exp = 0;
    double m = std::frexp(v, &exp); // v = m * 2^exp, |m| in [0.5, 1)
    std::int64_t mant = static_cast<std::int64_t>(std::ldexp(m, 53));
    exp -= 53;
    // mant * 2^exp exactly
    while (mant % 2 == 0 && exp < 0) {
        mant /= 2;
        ++exp;
    }
    if (exp >= 0) {
        if (exp > 62) throw ArithmeticOverflow("double too large for exact rational");
        return Rat(checked_cast(static_cast<__int128>(mant) << exp, "from_double"), 1);
    }
    if (-exp > 62) throw ArithmeticOverflow("double too fine for exact rational");
    return Rat(mant, static_cast<std::int64_t>(1) << (-exp));
}

Rat Rat::operator+(const Rat& o) const {
    std::int64_t gd = std::gcd(den_, o.den_);
    __int128 n = static_cast<__int128>(num_) * (o.den_ / gd) + static_cast<__int128>(o.num_) * (den_ / gd);
    __int128 d = static_cast<__int128>(den_ / gd) * o.den_;
    return Rat(checked_cast(n, "add"), checked_cast(d, "add"));
}

Rat Rat::operator-(const Rat& o) const { return *this + (-o); }

Rat Rat::operator*(const Rat& o) const {
    std::int64_t g1 = std::gcd(num_ < 0 ? -num_ : num_, o.den_);
    std::int64_t g2 = std::gcd(o.num_ < 0 ? -o.num_ : o.num_, den_);
    __int128 n = static_cast<__int128>(num_ / g1) * (o.num_ / g2);
    __int128 d = static_cast<__int128>(den_ / g2) * (o.den_ / g1);
    return Rat(checked_cast(n, "mul"), checked_cast(d, "mul"));
}

Rat Rat::operator/(const Rat& o) const {
    if (o.num_ == 0) throw ArithmeticOverflow("rational division by zero");
    return *this * Rat(o.den_, o.num_);
}

bool Rat::operator<(const Rat& o) const {
    return static_cast<__int128>(num_) * o.den_ < static_cast<__int128>(o.num_) * den_;
}

std::int64_t Rat::floor() const {
    std::int64_t q = num_ / den_;
    if (num_ % den_ != 0 && num_ < 0) --q;
    return q;
}

Rat Rat::mod1() const {
    std::int64_t r = num_ % den_;
    if (r < 0) r += den_;
    return Rat(r, den_);
}

std::string Rat::str() const {
    if (den_ == 1) return std::to_string(num_);
    return std::to_string(num_) + "/" + std::to_string(den_);
}

Rat dyadic(int k) {
    if (k < 0 || k > 62) throw ArithmeticOverflow("dyadic exponent out of range");
    return Rat(1, static_cast<std::int64_t>(1) << k);
}

Rat circle_dist(const Rat& a, const Rat& b) {
    Rat d = abs(a - b).mod1();
    Rat od = Rat(1) - d;
    return min(d, od);
}

int separation_window(const Rat& eps) {
    if (!(eps > Rat(0)) || !(eps < Rat(1))) throw BadDelta("separation scale must lie in (0,1)");
    int L = 0;
    while (L < 62 && dyadic(L + 1) > eps) ++L;
    return L;
}

bool Arc::contains(const Rat& x) const {
    if (full()) return true;
    Rat rel = (x - lo).mod1();
    return rel < len;
}

Rat Arc::diameter() const {
    return min(len, Rat(1, 2));
}

bool arcs_overlap(const Arc& a, const Arc& b) {
    if (a.full() || b.full()) return true;
    // shift so a starts at 0; b starts at c
    Rat c = (b.lo - a.lo).mod1();
    if (c < a.len) return true;
    // b wraps past 1 into [0, c + b.len - 1)
    return c + b.len > Rat(1);
}

Rat interval_circle_sup(const Rat& a, const Rat& b) {
    if (b - a >= Rat(1)) return Rat(1, 2);
    // an odd multiple of 1/2 inside [a, b] realizes the max norm 1/2
    for (std::int64_t j = (a * Rat(2)).floor(); j <= (b * Rat(2)).floor(); ++j) {
        if (j % 2 == 0) continue;
        Rat t = Rat(j, 2);
        if (t >= a && t <= b) return Rat(1, 2);
    }
    Rat na = circle_dist(a.mod1(), Rat(0));
    Rat nb = circle_dist(b.mod1(), Rat(0));
    return max(na, nb);
}

} // namespace topodyn
