#include "fixtures.hpp"

#include <bac/generate.hpp>
#include <bac/oracle.hpp>
#include <bac/reify.hpp>

#include <gtest/gtest.h>

#include <algorithm>

using namespace bac;
using namespace bac::testing;

namespace {

std::vector<std::string> names(const CrispNetwork& net)
{
    std::vector<std::string> out;
    for (const auto& v : net.variables)
        out.push_back(v.name);
    return out;
}

bool table_allows(const TableConstraint& t, std::span<const Value> row)
{
    for (std::size_t i = 0; i < t.size(); ++i)
        if (std::ranges::equal(t.tuple(i), row))
            return true;
    return false;
}

/// Mirrored tuples that extend to a crisp solution, by enumeration.
std::vector<std::vector<Value>> crisp_solutions(const CrispNetwork& net)
{
    std::vector<Interval> box;
    for (const auto& v : net.variables)
        box.push_back(v.domain);
    std::vector<std::vector<Value>> out;
    std::vector<Value> t(box.size());
    for (std::size_t i = 0; i < t.size(); ++i)
        t[i] = box[i].lo;
    std::vector<Value> row;
    while (true) {
        bool ok = true;
        for (const auto& tc : net.tables) {
            row.clear();
            for (auto i : tc.scope)
                row.push_back(t[i]);
            if (!table_allows(tc, row)) {
                ok = false;
                break;
            }
        }
        if (ok && net.sum) {
            Cost s = net.sum->constant;
            for (auto i : net.sum->vars)
                s += t[i];
            ok = s < net.sum->bound;
        }
        if (ok)
            out.emplace_back(t.begin(), t.begin() + static_cast<std::ptrdiff_t>(net.num_mirrored));
        std::size_t p = t.size();
        while (p > 0) {
            --p;
            if (t[p] < box[p].hi) {
                ++t[p];
                break;
            }
            t[p] = box[p].lo;
            if (p == 0) {
                std::sort(out.begin(), out.end());
                out.erase(std::unique(out.begin(), out.end()), out.end());
                return out;
            }
        }
    }
}

} // namespace

TEST(Reify, NamingOfTwoVariableNetwork)
{
    const auto net = reify(acpair_instance());
    EXPECT_EQ(names(net), (std::vector<std::string>{"x0R", "x1R", "xC0R", "xC1R", "xC0.1R"}));
    ASSERT_EQ(net.tables.size(), 3u);
    EXPECT_EQ(net.tables[0].name, "c0R");
    EXPECT_EQ(net.tables[2].name, "c0.1R");
    ASSERT_TRUE(net.sum.has_value());
    EXPECT_EQ(net.sum->name, "cCR");
    EXPECT_EQ(net.sum->bound, 4);
    EXPECT_EQ(net.num_mirrored, 2u);
    EXPECT_EQ(net.num_cost_variables(), 3u);
}

TEST(Reify, TablesListToleratedTuples)
{
    const auto net = reify(acpair_instance());
    EXPECT_EQ(net.variables[2].domain, (Interval{0, 3}));
    EXPECT_EQ(net.tables[0].size(), 1u);
    EXPECT_EQ(net.tables[1].size(), 2u);
    EXPECT_EQ(net.tables[2].size(), 4u);
    EXPECT_EQ(net.tables[2].scope, (std::vector<std::size_t>{0, 1, 4}));
    EXPECT_EQ(net.tables[0].tuple(0)[0], 1);
    EXPECT_EQ(net.tables[0].tuple(0)[1], 0);
}

TEST(Reify, NoFunctionsNoSum)
{
    const auto net = reify(make_instance("none", 3, {{0, 2}}, {}));
    EXPECT_FALSE(net.sum.has_value());
    EXPECT_TRUE(net.tables.empty());
    EXPECT_FALSE(enforce_crisp_bc(net).empty);
}

TEST(Reify, Refusals)
{
    const Instance inf = make_instance("inf", kInfiniteCost, {{0, 2}, {0, 2}}, {{{0, 1}, LinPlus{1, 1, 0}}});
    EXPECT_THROW(reify(inf), RefusedError);
    EXPECT_THROW(reify(linsum_instance(), 50), RefusedError);
}

TEST(Reify, DuplicateScopesGetDistinctNames)
{
    const Instance inst = make_instance("dup", 3, {{0, 1}, {0, 1}},
                                        {{{0, 1}, MonoLeq{0, 1}}, {{0, 1}, LinPlus{1, 0, 0}}});
    auto n = names(reify(inst));
    std::sort(n.begin(), n.end());
    EXPECT_EQ(std::adjacent_find(n.begin(), n.end()), n.end());
}

TEST(Reify, WipeoutBoundsConsistentButBacZeroEmpty)
{
    const auto net = reify(wipeout_instance());
    const auto bc = enforce_crisp_bc(net);
    EXPECT_FALSE(bc.empty);
    const auto cmp = compare_strength(wipeout_instance());
    EXPECT_TRUE(cmp.bac0_empty);
    EXPECT_FALSE(cmp.reified_bc_empty);
    EXPECT_TRUE(cmp.implication_holds);
}

TEST(Reify, BoundsConsistencyShrinksCostVariables)
{
    const auto bc = enforce_crisp_bc(reify(acpair_instance()));
    ASSERT_FALSE(bc.empty);
    EXPECT_EQ(bc.domains[0], (Interval{1, 1}));
    // xC1R >= 1 in every support, so xC0.1R <= 4 - 1 - 1 - 0.
    EXPECT_EQ(bc.domains[3].lo, 1);
    EXPECT_LE(bc.domains[4].hi, 2);
}

TEST(Reify, SolutionsCorrespond)
{
    for (std::uint64_t seed = 1; seed <= 60; ++seed) {
        RandomParams p;
        p.n = 3;
        p.d = 3;
        p.e = 3;
        p.k = 4;
        p.max_cost = 4;
        p.max_arity = 2;
        p.mixed = true;
        p.seed = seed;
        const Instance inst = generate_random(p);
        ASSERT_EQ(crisp_solutions(reify(inst)), brute_solutions(inst)) << seed;
    }
}

TEST(Reify, ImplicationHoldsOnSuite)
{
    for (std::uint64_t seed = 1; seed <= 200; ++seed)
        ASSERT_TRUE(compare_strength(generate_suite_instance(seed)).implication_holds) << seed;
}

TEST(Reify, HardInstancesMatchBac)
{
    for (std::uint64_t seed = 1; seed <= 40; ++seed) {
        const Instance inst = generate_hard_instance(seed);
        PropState st(inst);
        const auto r = st.enforce_bac();
        const auto bc = enforce_crisp_bc(reify(inst));
        ASSERT_EQ(r.empty, bc.empty) << seed;
        if (r.empty)
            continue;
        for (std::size_t x = 0; x < inst.num_variables(); ++x)
            ASSERT_EQ(r.domains[x].hull(), bc.domains[x]) << seed;
    }
}

TEST(Reify, StateSnapshotUsesProjectedCosts)
{
    const Instance inst = linsum_instance();
    PropState st(inst);
    st.enforce_bac_zero();
    const auto net = reify(st);
    EXPECT_EQ(net.w_zero, 2);
    ASSERT_TRUE(net.sum.has_value());
    EXPECT_EQ(net.sum->constant, 2);
    // (1, 1) now costs 0 in the reified table.
    const auto& t = net.tables[0];
    EXPECT_EQ(t.tuple(0)[0], 1);
    EXPECT_EQ(t.tuple(0)[1], 1);
    EXPECT_EQ(t.tuple(0)[2], 0);
}

TEST(Reify, DumpListsEverything)
{
    const std::string d = dump(reify(acpair_instance()));
    EXPECT_NE(d.find("xC0.1R"), std::string::npos);
    EXPECT_NE(d.find("cCR"), std::string::npos);
}
