#pragma once

#include <bac/instance.hpp>

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace bac {

/// Reference computations by exhaustive enumeration. They share no code with
/// the propagation engines: costs are recomputed from the function
/// descriptions and every fixpoint is rescanned from scratch.
struct OracleBudget
{
    std::uint64_t max_tuples = 10'000'000;
};

class BudgetExceeded : public RefusedError
{
public:
    using RefusedError::RefusedError;
};

/// Stored cost of a tuple, clamped to k, computed independently of CostFunction::raw_cost.
Cost reference_cost(const CostFunction& f, std::span<const Value> tuple, const Valuation& v);

/// w0 (+) the reference cost of every function.
Cost reference_total_cost(const Instance& inst, std::span<const Value> full);

struct OptimumResult
{
    bool feasible = false;
    Cost cost = 0;
    std::vector<Value> witness;
    std::uint64_t enumerated = 0;
};

/// Minimum total cost over all full assignments. The first minimum in
/// lexicographic order is the witness.
OptimumResult brute_optimum(const Instance& inst, OracleBudget budget = {});

/// Minimum total cost over full assignments with x = value; k when none is tolerable.
Cost brute_best_with(const Instance& inst, VarId x, Value value, OracleBudget budget = {});

/// Every full assignment with total cost below k, in lexicographic order.
std::vector<std::vector<Value>> brute_solutions(const Instance& inst, OracleBudget budget = {});

/// Solutions restricted to boxes (one interval per variable).
std::vector<std::vector<Value>> brute_solutions_within(const Instance& inst,
                                                       std::span<const Interval> domains,
                                                       OracleBudget budget = {});

/// Exhaustive minimum of reference_cost (-) delta_shift over a box.
Cost brute_min_over_box(const CostFunction& f,
                        std::span<const Interval> box,
                        const Valuation& v,
                        Cost delta_shift = 0,
                        OracleBudget budget = {});

struct NaiveFixpoint
{
    bool empty = false;
    std::vector<Interval> domains;
    Cost w_zero = 0;
    std::vector<Cost> delta_shift;
    std::uint64_t passes = 0;
};

/// Deletes violating bounds, recomputing every pinned minimum from scratch,
/// until a full pass changes nothing.
NaiveFixpoint naive_bac_fixpoint(const Instance& inst, OracleBudget budget = {});

/// As naive_bac_fixpoint, interleaved with projections of each function's
/// full minimum to w0.
NaiveFixpoint naive_bac_zero_fixpoint(const Instance& inst, OracleBudget budget = {});

} // namespace bac
