#include <bac/reify.hpp>

#include <algorithm>
#include <sstream>

namespace bac {

namespace {

using CostOf = std::function<Cost(FunId, std::span<const Value>)>;

std::string scope_label(const CostFunction& f)
{
    std::string s;
    for (std::size_t p = 0; p < f.arity(); ++p) {
        if (p)
            s += '.';
        s += std::to_string(f.scope()[p]);
    }
    return s;
}

CrispNetwork build(const Instance& inst,
                   std::span<const Interval> domains,
                   Cost w_zero,
                   const Valuation& val,
                   const CostOf& cost_of,
                   std::uint64_t cap)
{
    if (val.is_infinite())
        throw RefusedError("reification needs a finite k");
    const Cost k = val.top();

    CrispNetwork net;
    net.k = k;
    net.w_zero = w_zero;
    for (std::size_t x = 0; x < inst.num_variables(); ++x)
        net.variables.push_back({"x" + std::to_string(x) + "R", domains[x], static_cast<VarId>(x), -1});
    net.num_mirrored = net.variables.size();
    if (inst.num_functions() == 0)
        return net;

    std::vector<std::string> labels;
    for (std::size_t f = 0; f < inst.num_functions(); ++f) {
        std::string label = scope_label(inst.functions()[f]);
        if (std::count(labels.begin(), labels.end(), label) > 0)
            label += "#" + std::to_string(f);
        labels.push_back(label);
    }

    SumLessThan sum{"cCR", {}, w_zero, k};
    for (std::size_t f = 0; f < inst.num_functions(); ++f) {
        const CostFunction& fn = inst.functions()[f];
        std::uint64_t volume = 1;
        for (VarId x : fn.scope()) {
            const Interval d = domains[static_cast<std::size_t>(x)];
            if (d.empty()) {
                volume = 0;
                break;
            }
            if (__builtin_mul_overflow(volume, d.size(), &volume) || volume > cap)
                throw RefusedError("reification refused: function " + std::to_string(f) + " has more than " +
                                   std::to_string(cap) + " tuples");
        }

        const std::size_t cv = net.variables.size();
        net.variables.push_back({"xC" + labels[f] + "R", Interval{0, k - 1}, -1, static_cast<FunId>(f)});
        sum.vars.push_back(cv);

        TableConstraint tc;
        tc.name = "c" + labels[f] + "R";
        for (VarId x : fn.scope())
            tc.scope.push_back(static_cast<std::size_t>(x));
        tc.scope.push_back(cv);

        if (volume > 0) {
            const std::size_t r = fn.arity();
            std::vector<Value> t(r);
            for (std::size_t p = 0; p < r; ++p)
                t[p] = domains[static_cast<std::size_t>(fn.scope()[p])].lo;
            bool more = true;
            while (more) {
                const Cost c = cost_of(static_cast<FunId>(f), t);
                if (val.plus(w_zero, c) < k) {
                    tc.allowed.insert(tc.allowed.end(), t.begin(), t.end());
                    tc.allowed.push_back(c);
                }
                more = false;
                for (std::size_t p = r; p-- > 0;) {
                    const Interval d = domains[static_cast<std::size_t>(fn.scope()[p])];
                    if (t[p] < d.hi) {
                        ++t[p];
                        more = true;
                        break;
                    }
                    t[p] = d.lo;
                }
            }
        }
        net.tables.push_back(std::move(tc));
    }
    net.sum = std::move(sum);
    return net;
}

} // namespace

CrispNetwork reify(const Instance& inst, std::uint64_t cap)
{
    std::vector<Interval> domains;
    for (std::size_t x = 0; x < inst.num_variables(); ++x)
        domains.push_back(inst.domain(static_cast<VarId>(x)));
    const Valuation& val = inst.valuation();
    return build(inst, domains, inst.w_zero(), val,
                 [&](FunId f, std::span<const Value> t) { return inst.function(f).raw_cost(t, val); }, cap);
}

CrispNetwork reify(const PropState& st, std::uint64_t cap)
{
    if (st.mode() != PropMode::bounds)
        throw ContractError("reify snapshots bounds-mode states only");
    const Instance& inst = st.instance();
    std::vector<Interval> domains;
    for (std::size_t x = 0; x < inst.num_variables(); ++x)
        domains.push_back(st.bounds(static_cast<VarId>(x)));
    const Valuation& val = st.valuation();
    return build(inst, domains, st.w_zero(), val,
                 [&](FunId f, std::span<const Value> t) {
                     return effective_cost(inst.function(f), st.delta_shift(f), t, val);
                 },
                 cap);
}

CrispBcReport enforce_crisp_bc(const CrispNetwork& net)
{
    CrispBcReport rep;
    rep.domains.reserve(net.variables.size());
    for (const auto& v : net.variables)
        rep.domains.push_back(v.domain);
    auto& dom = rep.domains;

    auto wipe = [&] {
        rep.empty = true;
        return rep;
    };
    if (net.w_zero >= net.k)
        return wipe();
    for (const auto& d : dom)
        if (d.empty())
            return wipe();

    auto supported = [&](const TableConstraint& tc, std::size_t pos, Value value) {
        for (std::size_t i = 0; i < tc.size(); ++i) {
            auto t = tc.tuple(i);
            if (t[pos] != value)
                continue;
            bool inside = true;
            for (std::size_t p = 0; p < tc.arity() && inside; ++p)
                inside = dom[tc.scope[p]].contains(t[p]);
            if (inside)
                return true;
        }
        return false;
    };

    bool changed = true;
    while (changed) {
        changed = false;
        for (const auto& tc : net.tables) {
            for (std::size_t pos = 0; pos < tc.arity(); ++pos) {
                Interval& d = dom[tc.scope[pos]];
                while (!d.empty() && !supported(tc, pos, d.lo)) {
                    ++d.lo;
                    ++rep.revisions;
                    changed = true;
                }
                while (!d.empty() && !supported(tc, pos, d.hi)) {
                    --d.hi;
                    ++rep.revisions;
                    changed = true;
                }
                if (d.empty())
                    return wipe();
            }
        }
        if (net.sum) {
            // constant + sum < bound, so sum <= bound - 1 - constant.
            const Cost room = net.sum->bound - 1 - net.sum->constant;
            Cost lbs = 0;
            for (std::size_t v : net.sum->vars)
                lbs += dom[v].lo;
            if (lbs > room)
                return wipe();
            for (std::size_t v : net.sum->vars) {
                const Cost cap = room - (lbs - dom[v].lo);
                if (dom[v].hi > cap) {
                    dom[v].hi = cap;
                    ++rep.revisions;
                    changed = true;
                }
            }
        }
    }
    return rep;
}

StrengthComparison compare_strength(const Instance& inst, std::uint64_t cap)
{
    StrengthComparison out;
    const CrispNetwork net = reify(inst, cap);
    out.reified_bc_empty = enforce_crisp_bc(net).empty;
    PropState st(inst);
    out.bac0_empty = st.enforce_bac_zero().empty;
    out.implication_holds = !out.reified_bc_empty || out.bac0_empty;
    return out;
}

std::string dump(const CrispNetwork& net)
{
    std::ostringstream os;
    os << "crisp network: " << net.num_mirrored << " mirrored, " << net.num_cost_variables() << " cost variables, "
       << net.tables.size() << " tables" << (net.sum ? ", 1 sum" : "") << "\n";
    os << "w0 " << net.w_zero << " k " << net.k << "\n";
    for (const auto& v : net.variables)
        os << "var " << v.name << " [" << v.domain.lo << ", " << v.domain.hi << "]\n";
    for (const auto& tc : net.tables) {
        os << "table " << tc.name << " (";
        for (std::size_t p = 0; p < tc.arity(); ++p)
            os << (p ? " " : "") << net.variables[tc.scope[p]].name;
        os << ") " << tc.size() << " allowed\n";
    }
    if (net.sum) {
        os << "sum " << net.sum->name << ": " << net.sum->constant;
        for (std::size_t v : net.sum->vars)
            os << " + " << net.variables[v].name;
        os << " < " << net.sum->bound << "\n";
    }
    return os.str();
}

} // namespace bac
