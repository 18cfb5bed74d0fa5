#pragma once

#include <bac/domain.hpp>
#include <bac/valuation.hpp>

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

namespace bac {

enum class Order
{
    ascending,
    descending
};

/// v -> slope * v + offset. The identity by default.
struct AffineMap
{
    Value slope = 1;
    Value offset = 0;

    bool is_identity() const noexcept { return slope == 1 && offset == 0; }
    friend bool operator==(const AffineMap&, const AffineMap&) = default;
};

/// Sparse cost table over tuples of a fixed arity, kept sorted lexicographically.
class TupleTable
{
public:
    TupleTable() = default;
    explicit TupleTable(std::size_t arity) : arity_(arity) {}

    std::size_t arity() const noexcept { return arity_; }
    std::size_t size() const noexcept { return costs_.size(); }
    bool empty() const noexcept { return costs_.empty(); }

    /// Inserts or overwrites. Returns false if the tuple was already present.
    bool set(std::span<const Value> tuple, Cost cost);
    std::optional<Cost> find(std::span<const Value> tuple) const;

    std::span<const Value> tuple(std::size_t i) const { return {keys_.data() + i * arity_, arity_}; }
    Cost cost(std::size_t i) const { return costs_[i]; }

    friend bool operator==(const TupleTable&, const TupleTable&) = default;

private:
    std::size_t lower_index(std::span<const Value> tuple) const;

    std::size_t arity_ = 0;
    std::vector<Value> keys_;
    std::vector<Cost> costs_;
};

struct SemiconvexTag
{
    VarId wrt = 0;
    Order order = Order::ascending;
    friend bool operator==(const SemiconvexTag&, const SemiconvexTag&) = default;
};

/// Explicit table with a default cost for unlisted tuples.
struct Extensional
{
    Cost default_cost = 0;
    TupleTable table;
    std::optional<SemiconvexTag> semiconvex;
    friend bool operator==(const Extensional&, const Extensional&) = default;
};

/// 0 iff v_j == support(v_i), alpha otherwise.
struct FunctionalEq
{
    Cost alpha = 1;
    AffineMap support;
    friend bool operator==(const FunctionalEq&, const FunctionalEq&) = default;
};

/// alpha iff v_j == antisupport(v_i), 0 otherwise.
struct AntiFunctionalNeq
{
    Cost alpha = 1;
    AffineMap antisupport;
    friend bool operator==(const AntiFunctionalNeq&, const AntiFunctionalNeq&) = default;
};

/// 0 iff v_i + delta <= v_j, alpha otherwise.
struct MonoLeq
{
    Value delta = 0;
    Cost alpha = 1;
    friend bool operator==(const MonoLeq&, const MonoLeq&) = default;
};

/// min(k, max(0, a*v_i + b*v_j + c)).
struct LinPlus
{
    Value a = 1;
    Value b = 1;
    Value c = 0;
    friend bool operator==(const LinPlus&, const LinPlus&) = default;
};

/// Trapezoid on the gap g = v_j - v_i: 0 on [d2, d3], linear ramps of the
/// given slope on [d1, d2) and (d3, d4], k outside [d1, d4].
struct Spacer
{
    Value d1 = 0;
    Value d2 = 0;
    Value d3 = 0;
    Value d4 = 0;
    Cost slope = 1;
    friend bool operator==(const Spacer&, const Spacer&) = default;
};

using CostKind = std::variant<Extensional, FunctionalEq, AntiFunctionalNeq, MonoLeq, LinPlus, Spacer>;

std::string kind_name(const CostKind& kind);

/// An immutable cost function description: scope, semantics and the declared
/// (original) domain interval of every scope variable.
class CostFunction
{
public:
    CostFunction(std::vector<VarId> scope, CostKind kind, std::vector<Interval> declared);

    const std::vector<VarId>& scope() const noexcept { return scope_; }
    std::size_t arity() const noexcept { return scope_.size(); }
    const CostKind& kind() const noexcept { return kind_; }
    const std::vector<Interval>& declared() const noexcept { return declared_; }

    /// Position of a variable in the scope, or nullopt.
    std::optional<std::size_t> position(VarId var) const noexcept;

    /// Stored cost of a scope tuple, clamped to the valuation top. Does not
    /// check domain membership.
    Cost raw_cost(std::span<const Value> tuple, const Valuation& v) const;

    friend bool operator==(const CostFunction&, const CostFunction&) = default;

private:
    std::vector<VarId> scope_;
    CostKind kind_;
    std::vector<Interval> declared_;
};

/// Per-solve mutable data attached to a cost function: the cost already
/// projected to the zero-arity function, and a count of raw cost lookups.
struct FunctionOverlay
{
    Cost delta_shift = 0;
    std::uint64_t evals = 0;
};

/// Effective cost raw(t) (-) delta_shift without touching the counter.
Cost effective_cost(const CostFunction& f, Cost delta_shift, std::span<const Value> tuple, const Valuation& v);

/// Effective cost of a scope tuple; counts one lookup. The tuple must lie in
/// the declared intervals.
Cost evaluate(const CostFunction& f, FunctionOverlay& ov, std::span<const Value> tuple, const Valuation& v);

/// Minimum effective cost over a box (one interval per scope position).
///
/// Dispatches on the function's semantics: tables are enumerated (or scanned
/// sparsely when cheaper), functional functions check supports, semi-convex
/// tagged tables look at the two bounds of the partner interval, anti-functional,
/// monotone and linear kinds look at the corners, spacers at the best gap.
Cost min_over_box(const CostFunction& f, FunctionOverlay& ov, std::span<const Interval> box, const Valuation& v);

/// min_over_box with one scope variable fixed to a value of its interval.
Cost min_over_box_pinned(const CostFunction& f,
                         FunctionOverlay& ov,
                         std::span<const Interval> box,
                         VarId pin_var,
                         Value pin_val,
                         const Valuation& v);

inline constexpr std::uint64_t kDefaultValidatorCap = 512;

struct ValidationResult
{
    bool ok = true;
    // Witness of a failure: the value held fixed, the offending value of the
    // other variable, and the cost level whose support breaks there.
    Value fixed_value = 0;
    Value gap_value = 0;
    Cost beta = 0;
    std::string message;

    explicit operator bool() const noexcept { return ok; }
};

/// Checks that for every value of `wrt`, each beta-support over the other
/// variable is contiguous. Binary functions only; refuses domains above cap.
ValidationResult validate_semiconvex(const CostFunction& f,
                                     VarId wrt,
                                     Order order,
                                     const Valuation& v,
                                     std::uint64_t cap = kDefaultValidatorCap);

/// Checks w(v'_i, v'_j) <= w(v_i, v_j) whenever v'_i <= v_i and v'_j >= v_j
/// under the given orders, through adjacent-step dominance.
ValidationResult validate_monotonic(const CostFunction& f,
                                    const Valuation& v,
                                    Order order_i = Order::ascending,
                                    Order order_j = Order::ascending,
                                    std::uint64_t cap = kDefaultValidatorCap);

/// Semi-convex with respect to both scope variables.
ValidationResult validate_convex(const CostFunction& f, const Valuation& v, std::uint64_t cap = kDefaultValidatorCap);

} // namespace bac
