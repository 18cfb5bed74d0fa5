#pragma once

#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>

namespace bac {

using Cost = std::int64_t;
using Value = std::int64_t;
using VarId = std::int32_t;
using FunId = std::int32_t;

/// Sentinel top cost standing for an unbounded k. Strictly greater than every
/// finite cost the library will produce.
inline constexpr Cost kInfiniteCost = std::numeric_limits<Cost>::max();

/// A violated precondition. Thrown instead of silently clamping.
class ContractError : public std::logic_error
{
public:
    using std::logic_error::logic_error;
};

/// An operation declined because its input exceeds a configured cap
/// (domain cap, oracle budget, reification cap, validator cap).
class RefusedError : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

/// The valuation structure: costs are integers in [0, k] combined with the
/// bounded addition a (+) b = min(k, a + b) and its partial inverse.
///
/// Costs at or above the top are read as the top, so values cached under a
/// larger k remain usable after the top has been lowered during search.
class Valuation
{
public:
    explicit Valuation(Cost top);

    static Valuation infinite() { return Valuation(kInfiniteCost); }

    Cost top() const noexcept { return top_; }
    bool is_infinite() const noexcept { return top_ == kInfiniteCost; }
    bool is_top(Cost c) const noexcept { return c >= top_; }
    bool valid(Cost c) const noexcept { return c >= 0 && c <= top_; }

    /// min(k, a + b). Overflow before saturation is a ContractError.
    Cost plus(Cost a, Cost b) const;

    /// a - b if a != k, k otherwise. Requires b <= a and b != k.
    Cost minus(Cost a, Cost b) const;

    /// Clamp a non-negative cost to the top.
    Cost clamp(Cost c) const noexcept { return c >= top_ ? top_ : c; }

    std::string to_string(Cost c) const;

    friend bool operator==(const Valuation&, const Valuation&) = default;

private:
    Cost top_;
};

inline Cost oplus(Cost a, Cost b, const Valuation& v) { return v.plus(a, b); }
inline Cost ominus(Cost a, Cost b, const Valuation& v) { return v.minus(a, b); }

} // namespace bac
