#include <bac/instance.hpp>

#include <algorithm>
#include <array>

namespace bac {

namespace {

template <class... Ts>
struct overloaded : Ts...
{
    using Ts::operator()...;
};

void check_costs_within_top(const CostFunction& f, const Valuation& v, FunId id)
{
    auto fail = [&](Cost c) {
        throw ContractError("cost " + std::to_string(c) + " of function " + std::to_string(id) +
                            " exceeds the top cost " + v.to_string(v.top()));
    };
    std::visit(overloaded{
                   [&](const Extensional& e) {
                       if (!v.valid(e.default_cost))
                           fail(e.default_cost);
                       for (std::size_t i = 0; i < e.table.size(); ++i)
                           if (!v.valid(e.table.cost(i)))
                               fail(e.table.cost(i));
                   },
                   [&](const FunctionalEq& fe) {
                       if (!v.valid(fe.alpha))
                           fail(fe.alpha);
                   },
                   [&](const AntiFunctionalNeq& af) {
                       if (!v.valid(af.alpha))
                           fail(af.alpha);
                   },
                   [&](const MonoLeq& m) {
                       if (!v.valid(m.alpha))
                           fail(m.alpha);
                   },
                   [](const LinPlus&) {},
                   [](const Spacer&) {},
               },
               f.kind());
}

} // namespace

Instance::Instance(std::string name,
                   Valuation valuation,
                   std::vector<Variable> variables,
                   std::vector<CostFunction> functions,
                   Cost w_zero) :
    name_(std::move(name)),
    valuation_(valuation),
    variables_(std::move(variables)),
    functions_(std::move(functions)),
    w_zero_(w_zero),
    incidence_(variables_.size())
{
    for (std::size_t i = 0; i < variables_.size(); ++i) {
        if (variables_[i].id != static_cast<VarId>(i))
            throw ContractError("variable ids must be dense 0..n-1; position " + std::to_string(i) + " holds id " +
                                std::to_string(variables_[i].id));
        if (variables_[i].domain.empty())
            throw ContractError("variable " + std::to_string(i) + " has an empty domain");
        if (!variables_[i].domain.removed().empty())
            throw ContractError("instance domains must be intervals");
    }
    if (!valuation_.valid(w_zero_))
        throw ContractError("w0 = " + std::to_string(w_zero_) + " outside [0, k]");
    for (std::size_t f = 0; f < functions_.size(); ++f) {
        const auto& fn = functions_[f];
        for (std::size_t p = 0; p < fn.arity(); ++p) {
            const VarId x = fn.scope()[p];
            if (x < 0 || static_cast<std::size_t>(x) >= variables_.size())
                throw ContractError("function " + std::to_string(f) + " references unknown variable " + std::to_string(x));
            if (!(fn.declared()[p] == variables_[static_cast<std::size_t>(x)].domain.hull()))
                throw ContractError("function " + std::to_string(f) + " declares a domain for variable " +
                                    std::to_string(x) + " that differs from the variable's");
            incidence_[static_cast<std::size_t>(x)].push_back({static_cast<FunId>(f), p});
        }
        check_costs_within_top(fn, valuation_, static_cast<FunId>(f));
    }
}

InstanceStats Instance::stats() const
{
    InstanceStats s;
    s.n = variables_.size();
    s.e = functions_.size();
    for (const auto& v : variables_)
        s.d_max = std::max(s.d_max, v.domain.size());
    for (const auto& f : functions_)
        s.r_max = std::max(s.r_max, f.arity());
    return s;
}

Instance make_instance(std::string name,
                       Cost k,
                       std::vector<Interval> domains,
                       std::vector<std::pair<std::vector<VarId>, CostKind>> functions,
                       Cost w_zero)
{
    std::vector<Variable> vars;
    vars.reserve(domains.size());
    for (std::size_t i = 0; i < domains.size(); ++i)
        vars.push_back({static_cast<VarId>(i), Domain(domains[i].lo, domains[i].hi)});
    std::vector<CostFunction> fns;
    fns.reserve(functions.size());
    for (auto& [scope, kind] : functions) {
        std::vector<Interval> declared;
        for (VarId x : scope) {
            if (x < 0 || static_cast<std::size_t>(x) >= domains.size())
                throw ContractError("unknown variable " + std::to_string(x));
            declared.push_back(domains[static_cast<std::size_t>(x)]);
        }
        fns.emplace_back(std::move(scope), std::move(kind), std::move(declared));
    }
    return Instance(std::move(name), Valuation(k), std::move(vars), std::move(fns), w_zero);
}

void restrict_tuple(std::span<const Value> full, std::span<const VarId> scope, std::span<Value> out)
{
    for (std::size_t p = 0; p < scope.size(); ++p)
        out[p] = full[static_cast<std::size_t>(scope[p])];
}

Cost total_cost(const Instance& inst, std::span<const Value> full)
{
    if (full.size() != inst.num_variables())
        throw ContractError("assignment does not cover every variable");
    for (std::size_t x = 0; x < full.size(); ++x)
        if (!inst.domain(static_cast<VarId>(x)).contains(full[x]))
            throw ContractError("value " + std::to_string(full[x]) + " outside the domain of variable " + std::to_string(x));
    const Valuation& v = inst.valuation();
    Cost total = inst.w_zero();
    std::vector<Value> scratch;
    for (const auto& f : inst.functions()) {
        scratch.resize(f.arity());
        restrict_tuple(full, f.scope(), scratch);
        total = v.plus(total, f.raw_cost(scratch, v));
    }
    return total;
}

Cost total_cost(const Instance& inst, const Assignment& t)
{
    std::vector<Value> full(inst.num_variables());
    for (std::size_t x = 0; x < full.size(); ++x) {
        auto it = t.find(static_cast<VarId>(x));
        if (it == t.end())
            throw ContractError("assignment is missing variable " + std::to_string(x));
        full[x] = it->second;
    }
    return total_cost(inst, full);
}

bool is_solution(const Instance& inst, std::span<const Value> full)
{
    return total_cost(inst, full) < inst.valuation().top();
}

} // namespace bac
