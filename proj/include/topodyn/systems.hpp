#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "topodyn/limits.hpp"
#include "topodyn/rational.hpp"
#include "topodyn/word.hpp"

namespace topodyn {

// ---------------------------------------------------------------------------
// Difference-set predicate: a decidable membership test for P subset of N,
// identified by name so system specs stay serializable and comparable.
struct PSpec {
    std::string name;
    std::string description;
    std::function<bool(std::int64_t)> member;

    bool operator==(const PSpec& o) const { return name == o.name; }
};

PSpec pspec_all();
PSpec pspec_evens();
PSpec pspec_odds();
// Thick P = union over m of [m^2+1, m^2+m].
PSpec pspec_squares();
// P = { B^n + s : n in N, 1 <= s <= n }.
PSpec pspec_powerblock(std::uint32_t base);
PSpec pspec_by_name(const std::string& name);

// ---------------------------------------------------------------------------
// System kinds

struct FullShiftSys {
    int alphabet = 2;
};

struct SftSys {
    int alphabet = 2;
    std::vector<Word> forbidden; // nonempty words over the alphabet
};

struct DiffSetSys {
    PSpec p;
};

struct RotationSys {
    Rat alpha; // exact angle
};

struct SkewProductSys {
    Rat alpha;
};

// Piecewise-linear degree-one circle map with unique fixed point 0:
// x -> max(0, x - 1/8) on [0, 1/2], x -> (5x - 1)/4 on [1/2, 1].
// Continuous, surjective, proximal; every orbit reaches 0 exactly.
struct ProximalCircleSys {};

class SystemSpec;
class PointSpec;

struct WedgeSys {
    std::shared_ptr<const SystemSpec> side;              // both sides are copies
    std::shared_ptr<const PointSpec> glue;               // fixed point of the side system
};

struct ProductSys {
    std::shared_ptr<const SystemSpec> left;
    std::shared_ptr<const SystemSpec> right;
};

struct MetricProfile {
    std::string kind;
    Rat diameter;
};

class SystemSpec {
public:
    using Kind = std::variant<FullShiftSys, SftSys, DiffSetSys, RotationSys, SkewProductSys,
                              ProximalCircleSys, WedgeSys, ProductSys>;

    static SystemSpec full_shift(int alphabet);
    static SystemSpec sft(int alphabet, std::vector<Word> forbidden);
    static SystemSpec diff_set(PSpec p);
    static SystemSpec rotation(Rat alpha);
    static SystemSpec skew_product(Rat alpha);
    static SystemSpec proximal_circle();
    static SystemSpec wedge(SystemSpec side, PointSpec glue);
    static SystemSpec product(SystemSpec left, SystemSpec right);

    const Kind& kind() const { return kind_; }
    const MetricProfile& metric() const { return metric_; }

    bool is_subshift() const;
    int alphabet() const; // subshifts only

    template <class T>
    const T* as() const {
        return std::get_if<T>(&kind_);
    }

private:
    SystemSpec(Kind k, MetricProfile m) : kind_(std::move(k)), metric_(std::move(m)) {}
    Kind kind_;
    MetricProfile metric_;
};

// ---------------------------------------------------------------------------
// Points

struct EventuallyPeriodicPoint {
    Word preperiod;
    Word period; // nonempty
};

struct PrefixStreamPoint {
    std::shared_ptr<const std::vector<Sym>> symbols;
    std::int64_t offset = 0; // shift applications already absorbed
};

struct TorusPoint {
    std::vector<Rat> coords; // size 1 (circle) or 2 (torus), each in [0,1)
};

struct WedgePoint {
    int side = 0; // 0 left, 1 right
    std::shared_ptr<const PointSpec> inner;
};

struct ProductPoint {
    std::shared_ptr<const PointSpec> left;
    std::shared_ptr<const PointSpec> right;
};

class PointSpec {
public:
    using Kind =
        std::variant<EventuallyPeriodicPoint, PrefixStreamPoint, TorusPoint, WedgePoint, ProductPoint>;

    static PointSpec eventually_periodic(Word preperiod, Word period);
    static PointSpec eventually_periodic(const std::string& pre, const std::string& per);
    static PointSpec prefix_stream(std::vector<Sym> symbols);
    static PointSpec prefix_stream_shared(std::shared_ptr<const std::vector<Sym>> symbols,
                                          std::int64_t offset);
    static PointSpec torus(std::vector<Rat> coords);
    static PointSpec wedge(int side, PointSpec inner);
    static PointSpec product(PointSpec left, PointSpec right);

    const Kind& kind() const { return kind_; }

    template <class T>
    const T* as() const {
        return std::get_if<T>(&kind_);
    }

    // Symbol access for subshift points; throws PrefixExhausted when a prefix
    // stream runs out.
    Sym symbol_at(std::int64_t i) const;
    // Largest index (exclusive) up to which symbols are available;
    // nullopt when unbounded.
    std::optional<std::int64_t> available_symbols() const;

private:
    explicit PointSpec(Kind k) : kind_(std::move(k)) {}
    Kind kind_;
};

// ---------------------------------------------------------------------------
// Cells: cylinders for subshifts, dyadic boxes for metric systems.

struct SubshiftCell {
    Word word;
};

struct BoxCell {
    int resolution = 1;                 // side 2^-resolution
    std::vector<std::int64_t> corner;   // per-axis index in [0, 2^resolution)
};

struct WedgeCell;
struct ProductCell;

class Cell {
public:
    using Kind = std::variant<SubshiftCell, BoxCell, std::shared_ptr<WedgeCell>, std::shared_ptr<ProductCell>>;

    static Cell cylinder(Word w);
    static Cell cylinder(const std::string& w);
    static Cell box(int resolution, std::vector<std::int64_t> corner);
    static Cell wedge(int side, Cell inner);
    static Cell product(Cell left, Cell right);

    const Kind& kind() const { return kind_; }

    template <class T>
    const T* as() const {
        return std::get_if<T>(&kind_);
    }
    const WedgeCell* as_wedge() const;
    const ProductCell* as_product() const;

    std::string describe() const;
    bool operator==(const Cell& o) const { return describe() == o.describe(); }
    bool operator<(const Cell& o) const { return describe() < o.describe(); }

private:
    explicit Cell(Kind k) : kind_(std::move(k)) {}
    Kind kind_;
};

struct WedgeCell {
    int side = 0;
    Cell inner;
};

struct ProductCell {
    Cell left;
    Cell right;
};

// ---------------------------------------------------------------------------
// Subshift analysis backend shared by the set computations.
// Answers existence questions about admissible configurations.
class SubshiftOracle {
public:
    explicit SubshiftOracle(const SystemSpec& sys);

    int alphabet() const { return alphabet_; }
    // Memory length of the transfer graph (0 for full shifts; unbounded
    // difference-set memory is handled separately).
    int context() const { return context_; }
    // C[w] intersects the subshift.
    bool word_admissible(const Word& w) const;
    // Exists x in X with x in C[u] and sigma^n x in C[v].
    bool hit(const Word& u, const Word& v, std::int64_t n) const;
    // Two admissible extensions of C[w] differ at absolute position j.
    bool branches_at(const Word& w, std::int64_t j) const;
    // Least j >= from where C[w] branches; nullopt if provably never, or
    // (for difference-set systems) not found within the scan bound.
    std::optional<std::int64_t> first_branch_at_or_after(const Word& w, std::int64_t from,
                                                         std::int64_t scan_bound) const;
    // Whether the branch scan result is exact when it reports "never".
    bool branch_scan_exact() const { return kind_ != KindTag::DiffSet; }
    // Exists x in C[w] with sigma^n x = the all-zero fixed point.
    bool hits_zero_tail(const Word& w, std::int64_t n) const;
    // Distinct admissible symbols at position j among extensions of w.
    std::vector<Sym> symbol_options(const Word& w, std::int64_t j) const;

private:
    enum class KindTag { Full, Sft, DiffSet };
    KindTag kind_;
    int alphabet_ = 2;

    // difference-set data
    PSpec p_;

    // SFT transfer graph on (k-1)-blocks
    int context_ = 0; // k-1
    std::vector<Word> states_;
    std::vector<std::vector<int>> next_; // next_[state][symbol] -> state or -1
    std::vector<bool> alive_;
    int state_of(const Word& suffix) const;
    std::vector<bool> reach_after(const Word& w, std::int64_t steps) const;
    bool word_clean(const Word& w) const;
    std::vector<Word> forbidden_;
};

// ---------------------------------------------------------------------------
// Operations

// T^n x, exactly. Shifts drop symbols, rotations/skew products use the closed
// form mod 1, the wedge alternates sides, products act coordinatewise.
PointSpec evaluate(const SystemSpec& sys, const PointSpec& x, std::int64_t n);

// Exact distance. Subshift metric d(x,y) = 2^-j with j the first
// disagreement; circle/torus use the (max of) circle metric(s); the wedge uses
// the glued path metric. Dyadic subshift distances below 2^-62 collapse to 0.
Rat distance(const SystemSpec& sys, const PointSpec& p, const PointSpec& q);

// Decidable point equality (used to separate "distance 0" from Undecidable).
bool points_equal(const SystemSpec& sys, const PointSpec& p, const PointSpec& q);

// All admissible cells at the given depth, lexicographic order.
std::vector<Cell> cell_family(const SystemSpec& sys, int depth, const Limits& lim = default_limits());

// Bounds on diam(T^n (closed cell)). Exact (lower == upper) except for
// difference-set subshifts whose branch scan can exhaust its budget.
struct DiamBounds {
    Rat lower;
    Rat upper;
};
DiamBounds image_diameter_bounds(const SystemSpec& sys, const Cell& c, std::int64_t n,
                                 const Limits& lim = default_limits());

bool cell_admissible(const SystemSpec& sys, const Cell& c);
bool point_in_cell(const SystemSpec& sys, const PointSpec& x, const Cell& c);
// The depth-`depth` cell containing x.
Cell cell_of(const SystemSpec& sys, const PointSpec& x, int depth);

// Largest distance from T^n x to a point of T^n(closed cell), exact.
Rat point_spread(const SystemSpec& sys, const PointSpec& x, const Cell& c, std::int64_t n);

// A canonical point inside an admissible cell (zero-fill for subshifts,
// the corner for boxes).
PointSpec canonical_point(const SystemSpec& sys, const Cell& c);

} // namespace topodyn
