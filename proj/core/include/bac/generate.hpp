#pragma once

#include <bac/instance.hpp>

#include <cstdint>

namespace bac {

struct RandomParams
{
    std::size_t n = 5;
    /// Interval size of every domain, [0, d-1]; with varied_domains, the maximum size.
    std::uint64_t d = 9;
    std::size_t e = 7;
    /// Probability that a tuple gets a listed non-zero cost.
    double tightness = 0.3;
    /// Listed costs are drawn from [1, max_cost] and clamped to k.
    Cost max_cost = 10;
    Cost k = 10;
    std::size_t max_arity = 2;
    /// Mix intensional binary kinds with tables.
    bool mixed = false;
    /// Random offsets and sizes in [1, d] per variable.
    bool varied_domains = false;
    std::uint64_t seed = 1;
};

/// Photo-scheduling shape: start-time windows plus a last value meaning
/// "not selected"; every pair is a disjunctive table with both revenue
/// losses merged in, which multiplies the total revenue weight by N - 1.
struct SatelliteParams
{
    std::size_t photos = 6;
    /// Window width (values per photo before the rejection value).
    std::uint64_t window = 4;
    Value horizon = 20;
    Value max_duration = 4;
    Value max_transition = 2;
    Cost max_revenue = 9;
    std::uint64_t seed = 1;
};

/// Positions over [0, L] linked by trapezoidal spacers between consecutive
/// variables, with a few unary penalties.
struct SpacerChainParams
{
    std::size_t m = 4;
    Value L = 1'000'000;
    Cost k = 3;
    std::size_t penalties = 3;
    std::uint64_t seed = 1;
};

Instance generate_random(const RandomParams& p);
Instance generate_satellite(const SatelliteParams& p);
Instance generate_spacer_chain(const SpacerChainParams& p);

/// Shapes used by the property suites: n <= 6, d <= 9, e <= 10, arity <= 3,
/// every function kind, k in [2, 12].
Instance generate_suite_instance(std::uint64_t seed);

/// Hard-only instance (k = 1): tables allowing or forbidding tuples and
/// order constraints.
Instance generate_hard_instance(std::uint64_t seed);

} // namespace bac
