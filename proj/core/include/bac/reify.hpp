#pragma once

#include <bac/instance.hpp>
#include <bac/propagation.hpp>

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace bac {

inline constexpr std::uint64_t kDefaultReifyCap = 1'000'000;

struct CrispVariable
{
    std::string name;
    Interval domain;
    /// Source variable for mirrored variables, -1 for cost variables.
    VarId mirror = -1;
    /// Source function for cost variables, -1 for mirrored variables.
    FunId function = -1;

    bool is_cost() const noexcept { return function >= 0; }
};

/// Allowed tuples over crisp variable indices, stored flat in lexicographic order.
struct TableConstraint
{
    std::string name;
    std::vector<std::size_t> scope;
    std::vector<Value> allowed;

    std::size_t arity() const noexcept { return scope.size(); }
    std::size_t size() const noexcept { return scope.empty() ? 0 : allowed.size() / scope.size(); }
    std::span<const Value> tuple(std::size_t i) const { return {allowed.data() + i * scope.size(), scope.size()}; }
};

/// constant + sum of vars < bound.
struct SumLessThan
{
    std::string name;
    std::vector<std::size_t> vars;
    Cost constant = 0;
    Cost bound = 1;
};

struct CrispNetwork
{
    std::vector<CrispVariable> variables;
    std::vector<TableConstraint> tables;
    std::optional<SumLessThan> sum;
    Cost w_zero = 0;
    Cost k = 1;
    std::size_t num_mirrored = 0;

    std::size_t num_cost_variables() const noexcept { return variables.size() - num_mirrored; }
};

/// Crisp network of the instance: mirrored variables, one cost variable and
/// one reified table per function, and the global sum constraint.
CrispNetwork reify(const Instance& inst, std::uint64_t cap = kDefaultReifyCap);

/// Reifies the current state of a bounds-mode propagation (domains, w0 and
/// projected costs). The result is a snapshot and does not follow later changes.
CrispNetwork reify(const PropState& st, std::uint64_t cap = kDefaultReifyCap);

struct CrispBcReport
{
    bool empty = false;
    std::vector<Interval> domains;
    std::uint64_t revisions = 0;
};

/// Bounds(D) consistency: every bound of every variable has a support on
/// each constraint within the current boxes.
CrispBcReport enforce_crisp_bc(const CrispNetwork& net);

struct StrengthComparison
{
    bool bac0_empty = false;
    bool reified_bc_empty = false;
    /// reified_bc_empty implies bac0_empty.
    bool implication_holds = true;
};

StrengthComparison compare_strength(const Instance& inst, std::uint64_t cap = kDefaultReifyCap);

/// Readable listing of variables and constraints.
std::string dump(const CrispNetwork& net);

} // namespace bac
