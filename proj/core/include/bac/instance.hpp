#pragma once

#include <bac/cost_function.hpp>
#include <bac/domain.hpp>
#include <bac/valuation.hpp>

#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace bac {

struct Variable
{
    VarId id = 0;
    Domain domain{0, 0};

    friend bool operator==(const Variable&, const Variable&) = default;
};

/// A tuple over some scope: variable id -> value.
using Assignment = std::map<VarId, Value>;

/// One sub-interval per scope variable.
using Box = std::vector<Interval>;

struct InstanceStats
{
    std::size_t n = 0;
    std::size_t e = 0;
    std::uint64_t d_max = 0;
    std::size_t r_max = 0;
};

/// A cost function occurrence seen from one of its variables.
struct Incidence
{
    FunId function;
    std::size_t position;
};

/// A weighted constraint network. Immutable once built.
class Instance
{
public:
    Instance(std::string name,
             Valuation valuation,
             std::vector<Variable> variables,
             std::vector<CostFunction> functions,
             Cost w_zero = 0);

    const std::string& name() const noexcept { return name_; }
    const Valuation& valuation() const noexcept { return valuation_; }
    const std::vector<Variable>& variables() const noexcept { return variables_; }
    const std::vector<CostFunction>& functions() const noexcept { return functions_; }
    const CostFunction& function(FunId f) const { return functions_.at(static_cast<std::size_t>(f)); }
    Interval domain(VarId x) const { return variables_.at(static_cast<std::size_t>(x)).domain.hull(); }
    Cost w_zero() const noexcept { return w_zero_; }
    std::size_t num_variables() const noexcept { return variables_.size(); }
    std::size_t num_functions() const noexcept { return functions_.size(); }

    /// Functions whose scope contains x, in function-id order.
    std::span<const Incidence> incident(VarId x) const { return incidence_.at(static_cast<std::size_t>(x)); }

    InstanceStats stats() const;

    friend bool operator==(const Instance& a, const Instance& b)
    {
        return a.name_ == b.name_ && a.valuation_ == b.valuation_ && a.variables_ == b.variables_ &&
               a.functions_ == b.functions_ && a.w_zero_ == b.w_zero_;
    }

private:
    std::string name_;
    Valuation valuation_;
    std::vector<Variable> variables_;
    std::vector<CostFunction> functions_;
    Cost w_zero_;
    std::vector<std::vector<Incidence>> incidence_;
};

/// Builds an instance from plain interval domains; ids are assigned 0..n-1.
Instance make_instance(std::string name,
                       Cost k,
                       std::vector<Interval> domains,
                       std::vector<std::pair<std::vector<VarId>, CostKind>> functions,
                       Cost w_zero = 0);

/// Projects a full tuple (indexed by variable id) onto a scope.
void restrict_tuple(std::span<const Value> full, std::span<const VarId> scope, std::span<Value> out);

/// w_zero (+) every function's stored cost on the tuple.
Cost total_cost(const Instance& inst, std::span<const Value> full);
Cost total_cost(const Instance& inst, const Assignment& t);

bool is_solution(const Instance& inst, std::span<const Value> full);

} // namespace bac
