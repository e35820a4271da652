#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "topodyn/bignat.hpp"
#include "topodyn/diagnostics.hpp"
#include "topodyn/systems.hpp"

namespace topodyn {

// The difference-set subshift over P: points whose 1-positions have all
// pairwise gaps inside P. Cylinder nonemptiness is word admissibility.
SystemSpec lambda_p(const PSpec& p);

// Block-gap construction data for the marker word W = 1 0^10 1 over the
// difference set P_B = { B^n + s : 1 <= s <= n }. With b_0 = 11 and, for
// n >= 1,
//
//   m_n = b_{n-1} + 12,   a_n = B^{m_n},   b_n = a_n + m_n,
//
// the point x = W 0^{a_1} W 0^{a_2} W ... visits the cylinder C[W] exactly at
// V(n) = a_n + b_{n-1} + 1, while every return time of (C[W], C[0W]) lies in
// some I(m) = [B^m + 11, B^m + m - 12]. V(n) sits exactly one above the top
// of I(m_n), which is what the verifier certifies.
class NewpropBundle {
public:
    explicit NewpropBundle(std::uint32_t base);

    std::uint32_t base() const { return base_; }
    const Word& marker() const { return marker_; }

    TowerNat b(int n) const;        // block boundary, n >= 0
    TowerNat a(int n) const;        // gap, n >= 1
    TowerNat visit(int n) const;    // V(n), n >= 1
    TowerNat exponent(int n) const; // m_n = b_{n-1} + 12, n >= 1
    // I(m) = [B^m + 11, B^m + m - 12]; nullopt when the interval is empty.
    std::optional<std::pair<TowerNat, TowerNat>> interval(const TowerNat& m) const;

    PSpec p() const { return pspec_powerblock(base_); }
    SystemSpec system() const { return lambda_p(p()); }

    // First `length` symbols of the constructed point; PrefixLimit when the
    // request exceeds the cap or the feasible horizon.
    std::vector<Sym> prefix(std::int64_t length, const Limits& lim = default_limits()) const;

private:
    std::uint32_t base_;
    Word marker_;
};

NewpropBundle newprop_bundle(std::uint32_t base);

struct NewpropVerification {
    DiagnosticVerdict verdict;
    std::vector<std::string> trace;
};

// Certify, for n = 1..n_max, that V(n) lies in no I(m) (candidate exponent
// and neighbors), plus the growth invariant a_n > 2 b_{n-1}. With `mutated`
// the visit formula is shifted down by 12, which lands inside I(m_n) for
// every n >= 2: the negative control.
NewpropVerification verify_newprop(std::uint32_t base, int n_max, bool mutated = false);

struct Fixture {
    std::string name;
    std::string description;
    SystemSpec system;
    std::optional<PointSpec> point;
};

Fixture standard_fixture(const std::string& name, const Limits& lim = default_limits());
std::vector<std::pair<std::string, std::string>> fixture_registry();

} // namespace topodyn
