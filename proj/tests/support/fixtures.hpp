#pragma once

#include <bac/instance.hpp>
#include <bac/io.hpp>
#include <bac/oracle.hpp>
#include <bac/propagation.hpp>

#include <string>
#include <vector>

namespace bac::testing {

inline std::string data_path(const std::string& name) { return std::string(BAC_TEST_DATA_DIR) + "/" + name; }

/// x1, x2 in [1, 10], cost x1 + x2, k = 12.
inline Instance linsum_instance()
{
    return make_instance("linsum", 12, {{1, 10}, {1, 10}}, {{{0, 1}, LinPlus{1, 1, 0}}});
}

inline Extensional column_table(const std::vector<Cost>& by_first, Value second_lo, Value second_hi)
{
    Extensional e;
    e.table = TupleTable(2);
    for (std::size_t a = 0; a < by_first.size(); ++a)
        for (Value b = second_lo; b <= second_hi; ++b)
            if (by_first[a] != 0)
                e.table.set(std::vector<Value>{static_cast<Value>(a), b}, by_first[a]);
    return e;
}

/// Three variables, D(x1) = {a,b,c,d}, D(x2) = D(x3) = {a,b,c} as 0..3 and
/// 0..2; both binary costs depend on x1 only; k = 2.
inline Instance wipeout_instance()
{
    return make_instance("wipeout", 2, {{0, 3}, {0, 2}, {0, 2}},
                         {{{0, 1}, column_table({1, 0, 2, 1}, 0, 2)}, {{0, 2}, column_table({1, 2, 0, 1}, 0, 2)}});
}

/// Two variables over {a, b} = {0, 1}, k = 4.
inline Instance acpair_instance()
{
    Extensional w1;
    w1.table = TupleTable(1);
    w1.table.set(std::vector<Value>{0}, 4);
    Extensional w2;
    w2.table = TupleTable(1);
    w2.table.set(std::vector<Value>{0}, 1);
    w2.table.set(std::vector<Value>{1}, 2);
    Extensional w12;
    w12.table = TupleTable(2);
    w12.table.set(std::vector<Value>{1, 0}, 1);
    w12.table.set(std::vector<Value>{1, 1}, 2);
    return make_instance("acpair", 4, {{0, 1}, {0, 1}}, {{{0}, w1}, {{1}, w2}, {{0, 1}, w12}});
}

inline std::vector<Interval> hulls(const std::vector<Domain>& ds)
{
    std::vector<Interval> out;
    for (const auto& d : ds)
        out.push_back(d.hull());
    return out;
}

inline bool binary_only(const Instance& inst)
{
    for (const auto& f : inst.functions())
        if (f.arity() > 2)
            return false;
    return true;
}

/// Solutions whose values are all live in the given domains.
inline std::vector<std::vector<Value>> solutions_within(const Instance& inst, const std::vector<Domain>& ds)
{
    std::vector<std::vector<Value>> out;
    for (auto& t : brute_solutions_within(inst, hulls(ds))) {
        bool live = true;
        for (std::size_t x = 0; x < t.size() && live; ++x)
            live = ds[x].contains(t[x]);
        if (live)
            out.push_back(std::move(t));
    }
    return out;
}

inline PropOptions arc_star_options()
{
    PropOptions o;
    o.mode = PropMode::arc_star;
    return o;
}

} // namespace bac::testing
