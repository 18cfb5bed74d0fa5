#pragma once

#include <bac/valuation.hpp>

#include <cstdint>
#include <set>
#include <string>

namespace bac {

/// Closed integer interval [lo, hi]. Empty when lo > hi.
struct Interval
{
    Value lo = 0;
    Value hi = -1;

    bool empty() const noexcept { return lo > hi; }
    bool contains(Value v) const noexcept { return lo <= v && v <= hi; }
    bool contains(const Interval& o) const noexcept { return o.empty() || (lo <= o.lo && o.hi <= hi); }
    std::uint64_t size() const noexcept
    {
        return empty() ? 0 : static_cast<std::uint64_t>(hi) - static_cast<std::uint64_t>(lo) + 1;
    }

    friend bool operator==(const Interval&, const Interval&) = default;
};

/// Upper limit on interior removals a Domain accepts.
inline constexpr std::size_t kDefaultRemovedCap = 65536;

/// A variable domain: an integer interval with optional interior holes.
///
/// The bounds are always live values. Interior holes exist only for the
/// arc-consistency reference mode; interval-only pruning never creates them.
class Domain
{
public:
    Domain(Value lb, Value ub);

    static Domain make_empty();

    bool empty() const noexcept { return empty_; }
    Value lb() const;
    Value ub() const;
    Interval hull() const noexcept { return empty_ ? Interval{} : Interval{lb_, ub_}; }
    const std::set<Value>& removed() const noexcept { return removed_; }

    std::uint64_t size() const noexcept;
    bool contains(Value v) const noexcept;
    bool is_singleton() const noexcept { return !empty_ && lb_ == ub_; }

    void remove_lb();
    void remove_ub();
    /// Removes any live value; interior values go to the hole set.
    void remove(Value v, std::size_t cap = kDefaultRemovedCap);
    /// Intersects with [lo, hi].
    void restrict(Value lo, Value hi);

    std::string to_string() const;

    friend bool operator==(const Domain&, const Domain&) = default;

private:
    void normalize();

    Value lb_ = 0;
    Value ub_ = -1;
    bool empty_ = true;
    std::set<Value> removed_;
};

} // namespace bac
