#include <bac/oracle.hpp>

#include <algorithm>

namespace bac {

namespace {

__extension__ typedef __int128 Big;

Cost saturate(Big c, Cost k)
{
    if (c <= 0)
        return 0;
    return c >= k ? k : static_cast<Cost>(c);
}

Cost add(Cost a, Cost b, Cost k)
{
    if (a >= k || b >= k)
        return k;
    return saturate(static_cast<Big>(a) + b, k);
}

Cost sub(Cost a, Cost b, Cost k)
{
    if (a >= k)
        return k;
    if (b > a)
        throw ContractError("oracle: negative effective cost");
    return a - b;
}

struct Visitor
{
    const std::span<const Value> t;
    const Cost k;

    Cost operator()(const Extensional& e) const
    {
        for (std::size_t i = 0; i < e.table.size(); ++i) {
            auto row = e.table.tuple(i);
            bool same = true;
            for (std::size_t p = 0; p < t.size() && same; ++p)
                same = row[p] == t[p];
            if (same)
                return saturate(e.table.cost(i), k);
        }
        return saturate(e.default_cost, k);
    }
    Cost operator()(const FunctionalEq& fe) const
    {
        const Big image = static_cast<Big>(fe.support.slope) * t[0] + fe.support.offset;
        return image == t[1] ? 0 : saturate(fe.alpha, k);
    }
    Cost operator()(const AntiFunctionalNeq& af) const
    {
        const Big image = static_cast<Big>(af.antisupport.slope) * t[0] + af.antisupport.offset;
        return image == t[1] ? saturate(af.alpha, k) : 0;
    }
    Cost operator()(const MonoLeq& m) const { return static_cast<Big>(t[0]) + m.delta <= t[1] ? 0 : saturate(m.alpha, k); }
    Cost operator()(const LinPlus& l) const
    {
        return saturate(static_cast<Big>(l.a) * t[0] + static_cast<Big>(l.b) * t[1] + l.c, k);
    }
    Cost operator()(const Spacer& s) const
    {
        const Big gap = static_cast<Big>(t[1]) - t[0];
        Big c;
        if (gap < s.d1 || gap > s.d4)
            return k;
        if (gap < s.d2)
            c = (s.d2 - gap) * s.slope;
        else if (gap <= s.d3)
            c = 0;
        else
            c = (gap - s.d3) * s.slope;
        return saturate(c, k);
    }
};

std::uint64_t volume(std::span<const Interval> box, const OracleBudget& budget)
{
    std::uint64_t vol = 1;
    for (const auto& iv : box) {
        if (iv.empty())
            return 0;
        if (__builtin_mul_overflow(vol, iv.size(), &vol) || vol > budget.max_tuples)
            throw BudgetExceeded("oracle budget exceeded: more than " + std::to_string(budget.max_tuples) +
                                 " tuples to enumerate");
    }
    return vol;
}

/// Calls fn(tuple) for every tuple of the box in lexicographic order.
template <class Fn>
void for_each_tuple(std::span<const Interval> box, const OracleBudget& budget, Fn&& fn)
{
    if (volume(box, budget) == 0)
        return;
    std::vector<Value> t(box.size());
    for (std::size_t p = 0; p < box.size(); ++p)
        t[p] = box[p].lo;
    while (true) {
        fn(std::span<const Value>(t));
        std::size_t p = box.size();
        while (true) {
            if (p == 0)
                return;
            --p;
            if (t[p] < box[p].hi) {
                ++t[p];
                break;
            }
            t[p] = box[p].lo;
        }
    }
}

std::vector<Interval> original_domains(const Instance& inst)
{
    std::vector<Interval> d;
    for (std::size_t x = 0; x < inst.num_variables(); ++x)
        d.push_back(inst.domain(static_cast<VarId>(x)));
    return d;
}

/// Minimum effective cost of f over the box formed by the given variable domains.
Cost scope_min(const CostFunction& f,
               const std::vector<Interval>& dom,
               Cost shift,
               const Valuation& v,
               const OracleBudget& budget,
               std::optional<std::pair<VarId, Value>> pin = std::nullopt)
{
    std::vector<Interval> box;
    for (VarId x : f.scope()) {
        Interval iv = dom[static_cast<std::size_t>(x)];
        if (pin && pin->first == x)
            iv = Interval{pin->second, pin->second};
        box.push_back(iv);
    }
    return brute_min_over_box(f, box, v, shift, budget);
}

NaiveFixpoint naive_fixpoint(const Instance& inst, bool zero_ic, const OracleBudget& budget)
{
    const Valuation& v = inst.valuation();
    const Cost k = v.top();
    NaiveFixpoint out;
    out.domains = original_domains(inst);
    out.w_zero = inst.w_zero();
    out.delta_shift.assign(inst.num_functions(), 0);
    if (out.w_zero >= k) {
        out.empty = true;
        return out;
    }

    bool changed = true;
    while (changed) {
        changed = false;
        ++out.passes;
        if (zero_ic)
            for (std::size_t f = 0; f < inst.num_functions(); ++f) {
                const Cost alpha = scope_min(inst.functions()[f], out.domains, out.delta_shift[f], v, budget);
                if (alpha == 0)
                    continue;
                out.w_zero = add(out.w_zero, alpha, k);
                out.delta_shift[f] = add(out.delta_shift[f], alpha, k);
                changed = true;
                if (out.w_zero >= k) {
                    out.empty = true;
                    return out;
                }
            }
        for (std::size_t x = 0; x < inst.num_variables(); ++x) {
            for (int side = 0; side < 2; ++side) {
                Interval& d = out.domains[x];
                const Value bound = side == 0 ? d.lo : d.hi;
                Cost total = out.w_zero;
                for (const Incidence& inc : inst.incident(static_cast<VarId>(x))) {
                    const auto f = static_cast<std::size_t>(inc.function);
                    total = add(total,
                                scope_min(inst.functions()[f], out.domains, out.delta_shift[f], v, budget,
                                          std::pair{static_cast<VarId>(x), bound}),
                                k);
                }
                if (total < k)
                    continue;
                if (side == 0)
                    ++d.lo;
                else
                    --d.hi;
                changed = true;
                if (d.empty()) {
                    out.empty = true;
                    return out;
                }
            }
        }
    }
    return out;
}

} // namespace

Cost reference_cost(const CostFunction& f, std::span<const Value> tuple, const Valuation& v)
{
    if (tuple.size() != f.arity())
        throw ContractError("oracle: tuple arity mismatch");
    return std::visit(Visitor{tuple, v.top()}, f.kind());
}

Cost reference_total_cost(const Instance& inst, std::span<const Value> full)
{
    const Cost k = inst.valuation().top();
    Cost c = inst.w_zero();
    std::vector<Value> t;
    for (const auto& f : inst.functions()) {
        t.clear();
        for (VarId x : f.scope())
            t.push_back(full[static_cast<std::size_t>(x)]);
        c = add(c, reference_cost(f, t, inst.valuation()), k);
    }
    return c;
}

OptimumResult brute_optimum(const Instance& inst, OracleBudget budget)
{
    const Cost k = inst.valuation().top();
    OptimumResult r;
    r.cost = k;
    const auto dom = original_domains(inst);
    for_each_tuple(dom, budget, [&](std::span<const Value> t) {
        ++r.enumerated;
        const Cost c = reference_total_cost(inst, t);
        if (c < r.cost) {
            r.cost = c;
            r.witness.assign(t.begin(), t.end());
        }
    });
    r.feasible = r.cost < k;
    if (!r.feasible)
        r.witness.clear();
    return r;
}

Cost brute_best_with(const Instance& inst, VarId x, Value value, OracleBudget budget)
{
    auto dom = original_domains(inst);
    Interval& d = dom.at(static_cast<std::size_t>(x));
    if (!d.contains(value))
        throw ContractError("oracle: value outside the original domain");
    d = Interval{value, value};
    Cost best = inst.valuation().top();
    for_each_tuple(dom, budget, [&](std::span<const Value> t) { best = std::min(best, reference_total_cost(inst, t)); });
    return best;
}

std::vector<std::vector<Value>> brute_solutions(const Instance& inst, OracleBudget budget)
{
    const auto dom = original_domains(inst);
    return brute_solutions_within(inst, dom, budget);
}

std::vector<std::vector<Value>> brute_solutions_within(const Instance& inst,
                                                       std::span<const Interval> domains,
                                                       OracleBudget budget)
{
    if (domains.size() != inst.num_variables())
        throw ContractError("oracle: one interval per variable expected");
    std::vector<std::vector<Value>> out;
    const Cost k = inst.valuation().top();
    for_each_tuple(domains, budget, [&](std::span<const Value> t) {
        if (reference_total_cost(inst, t) < k)
            out.emplace_back(t.begin(), t.end());
    });
    return out;
}

Cost brute_min_over_box(const CostFunction& f,
                        std::span<const Interval> box,
                        const Valuation& v,
                        Cost delta_shift,
                        OracleBudget budget)
{
    if (box.size() != f.arity())
        throw ContractError("oracle: box arity mismatch");
    for (const auto& iv : box)
        if (iv.empty())
            throw ContractError("oracle: empty sub-interval");
    const Cost k = v.top();
    Cost best = k;
    for_each_tuple(box, budget, [&](std::span<const Value> t) { best = std::min(best, sub(reference_cost(f, t, v), delta_shift, k)); });
    return best;
}

NaiveFixpoint naive_bac_fixpoint(const Instance& inst, OracleBudget budget) { return naive_fixpoint(inst, false, budget); }

NaiveFixpoint naive_bac_zero_fixpoint(const Instance& inst, OracleBudget budget) { return naive_fixpoint(inst, true, budget); }

} // namespace bac
