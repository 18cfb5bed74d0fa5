#pragma once

#include <bac/cost_function.hpp>

#include <array>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

namespace bac::testing {

enum class Shape
{
    table,
    semiconvex_table,
    funceq,
    antifuncneq,
    monoleq,
    linplus,
    spacer
};

inline constexpr std::array<Shape, 7> kAllShapes{Shape::table,       Shape::semiconvex_table, Shape::funceq,
                                                 Shape::antifuncneq, Shape::monoleq,          Shape::linplus,
                                                 Shape::spacer};

inline std::string shape_name(Shape s)
{
    switch (s) {
    case Shape::table: return "table";
    case Shape::semiconvex_table: return "semiconvex_table";
    case Shape::funceq: return "funceq";
    case Shape::antifuncneq: return "antifuncneq";
    case Shape::monoleq: return "monoleq";
    case Shape::linplus: return "linplus";
    case Shape::spacer: return "spacer";
    }
    return "?";
}

inline Value uniform(std::mt19937_64& rng, Value lo, Value hi) { return std::uniform_int_distribution<Value>(lo, hi)(rng); }

inline Interval random_interval(std::mt19937_64& rng, Value lo, Value hi, Value max_size)
{
    const Value size = uniform(rng, 1, max_size);
    const Value a = uniform(rng, lo, hi - size + 1);
    return {a, a + size - 1};
}

inline Interval sub_interval(std::mt19937_64& rng, Interval d)
{
    const Value a = uniform(rng, d.lo, d.hi);
    const Value b = uniform(rng, d.lo, d.hi);
    return {std::min(a, b), std::max(a, b)};
}

/// Per value of variable 0, costs over variable 1 rise to a peak and fall:
/// super-level sets are intervals.
inline Extensional hill_table(std::mt19937_64& rng, const std::vector<Interval>& dom, Cost k)
{
    Extensional e;
    e.table = TupleTable(2);
    for (Value a = dom[0].lo; a <= dom[0].hi; ++a) {
        const Value peak = uniform(rng, dom[1].lo, dom[1].hi);
        Cost c = uniform(rng, 0, k);
        for (Value b = peak; b >= dom[1].lo; --b) {
            if (c > 0)
                e.table.set(std::vector<Value>{a, b}, c);
            c = uniform(rng, 0, c);
        }
        c = e.table.find(std::vector<Value>{a, peak}).value_or(0);
        for (Value b = peak + 1; b <= dom[1].hi; ++b) {
            c = uniform(rng, 0, c);
            if (c > 0)
                e.table.set(std::vector<Value>{a, b}, c);
        }
    }
    return e;
}

/// A binary function (or, for plain tables, an arity 1-3 function) on
/// small random declared domains.
inline CostFunction random_function(Shape shape, std::mt19937_64& rng, Cost k)
{
    const std::size_t arity = shape == Shape::table ? static_cast<std::size_t>(uniform(rng, 1, 3)) : 2;
    std::vector<VarId> scope;
    std::vector<Interval> dom;
    for (std::size_t p = 0; p < arity; ++p) {
        scope.push_back(static_cast<VarId>(p));
        dom.push_back(random_interval(rng, -4, 12, arity == 3 ? 5 : 9));
    }
    auto affine = [&] { return AffineMap{uniform(rng, -2, 2), uniform(rng, -3, 6)}; };
    switch (shape) {
    case Shape::table: {
        Extensional e;
        e.default_cost = uniform(rng, 0, 2);
        e.table = TupleTable(arity);
        std::vector<Value> t(arity);
        const int n = static_cast<int>(uniform(rng, 0, 20));
        for (int i = 0; i < n; ++i) {
            for (std::size_t p = 0; p < arity; ++p)
                t[p] = uniform(rng, dom[p].lo, dom[p].hi);
            e.table.set(t, uniform(rng, 0, k));
        }
        return CostFunction(scope, e, dom);
    }
    case Shape::semiconvex_table: {
        Extensional e = hill_table(rng, dom, k);
        e.semiconvex = SemiconvexTag{0, Order::ascending};
        return CostFunction(scope, e, dom);
    }
    case Shape::funceq: return CostFunction(scope, FunctionalEq{uniform(rng, 1, k), affine()}, dom);
    case Shape::antifuncneq: return CostFunction(scope, AntiFunctionalNeq{uniform(rng, 1, k), affine()}, dom);
    case Shape::monoleq: return CostFunction(scope, MonoLeq{uniform(rng, -4, 4), uniform(rng, 1, k)}, dom);
    case Shape::linplus: {
        const Value s = uniform(rng, 0, 1) ? 1 : -1;
        return CostFunction(scope, LinPlus{s * uniform(rng, 0, 3), s * uniform(rng, 0, 3), uniform(rng, -10, 10)}, dom);
    }
    case Shape::spacer: {
        Spacer sp;
        sp.d1 = uniform(rng, -6, 6);
        sp.d2 = sp.d1 + uniform(rng, 0, 4);
        sp.d3 = sp.d2 + uniform(rng, 0, 4);
        sp.d4 = sp.d3 + uniform(rng, 0, 4);
        sp.slope = uniform(rng, 1, 3);
        return CostFunction(scope, sp, dom);
    }
    }
    throw ContractError("unknown shape");
}

inline std::vector<Interval> random_box(std::mt19937_64& rng, const CostFunction& f)
{
    std::vector<Interval> box;
    for (const auto& d : f.declared())
        box.push_back(sub_interval(rng, d));
    return box;
}

inline std::uint64_t volume(const std::vector<Interval>& box)
{
    std::uint64_t n = 1;
    for (const auto& i : box)
        n *= i.size();
    return n;
}

/// Upper bound on raw cost lookups a minimum over `box` may take.
inline std::uint64_t eval_cap(Shape shape, const std::vector<Interval>& box)
{
    switch (shape) {
    case Shape::table: return volume(box);
    case Shape::semiconvex_table:
    case Shape::antifuncneq: return 2 * box[0].size();
    case Shape::funceq: return box[0].size() + 1;
    case Shape::monoleq:
    case Shape::linplus:
    case Shape::spacer: return 4;
    }
    return 0;
}

/// Cap for a minimum with scope position `pinned` fixed. Tagged tables are
/// semi-convex along their tagged variable only, so pinning the partner
/// leaves one lookup per tagged value.
inline std::uint64_t pinned_eval_cap(Shape shape, std::vector<Interval> box, std::size_t pinned, Value value)
{
    box[pinned] = Interval{value, value};
    switch (shape) {
    case Shape::table: return volume(box);
    case Shape::semiconvex_table: return pinned == 0 ? 2 : box[0].size();
    case Shape::funceq: return box[0].size() + 1;
    case Shape::antifuncneq:
    case Shape::monoleq:
    case Shape::linplus:
    case Shape::spacer: return 2;
    }
    return 0;
}

} // namespace bac::testing
