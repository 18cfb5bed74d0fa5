#include "fixtures.hpp"
#include "random_functions.hpp"

#include <bac/generate.hpp>
#include <bac/oracle.hpp>
#include <bac/propagation.hpp>

#include <gtest/gtest.h>

#include <algorithm>
#include <random>

using namespace bac;
using namespace bac::testing;

namespace {

PropOptions options_for(Consistency c)
{
    return (c == Consistency::nc || c == Consistency::ac) ? arc_star_options() : PropOptions{};
}

ConsistencyReport run(const Instance& inst, Consistency c)
{
    PropState st(inst, options_for(c));
    return st.enforce(c);
}

std::vector<Consistency> applicable(const Instance& inst)
{
    std::vector<Consistency> cs{Consistency::nc, Consistency::bac, Consistency::bac0};
    if (binary_only(inst))
        cs.push_back(Consistency::ac);
    return cs;
}

} // namespace

TEST(Propagation, ConsistencyNames)
{
    for (auto c : {Consistency::nc, Consistency::ac, Consistency::bac, Consistency::bac0})
        EXPECT_EQ(parse_consistency(to_string(c)), c);
    EXPECT_THROW(parse_consistency("gac"), ContractError);
}

TEST(Propagation, LinSumBacIsIdle)
{
    const Instance inst = linsum_instance();
    PropState st(inst);
    const auto r = st.enforce_bac();
    EXPECT_FALSE(r.empty);
    EXPECT_EQ(r.w_zero_final, 0);
    EXPECT_EQ(r.deletions, 0u);
    EXPECT_EQ(hulls(r.domains), (std::vector<Interval>{{1, 10}, {1, 10}}));
}

TEST(Propagation, LinSumBacZeroRaisesLowerBound)
{
    const Instance inst = linsum_instance();
    PropState st(inst);
    const auto r = st.enforce_bac_zero();
    EXPECT_FALSE(r.empty);
    EXPECT_EQ(r.w_zero_final, 2);
    EXPECT_EQ(st.delta_shift(0), 2);
    EXPECT_EQ(r.deletions, 0u);
    EXPECT_EQ(hulls(r.domains), (std::vector<Interval>{{1, 10}, {1, 10}}));
    EXPECT_EQ(st.residual_cost(std::vector<Value>{1, 1}), 2);
    EXPECT_EQ(st.residual_cost(std::vector<Value>{4, 7}), 11);
}

TEST(Propagation, LinSumWithLowerTopPrunes)
{
    const Instance inst = linsum_instance();
    PropState st(inst);
    st.enforce_bac_zero();
    st.set_top(6);
    ASSERT_TRUE(st.propagate(Consistency::bac0));
    // x1 + 1 < 6 and x2 + 1 < 6.
    EXPECT_EQ(st.bounds(0), (Interval{1, 4}));
    EXPECT_EQ(st.bounds(1), (Interval{1, 4}));
}

TEST(Propagation, WipeoutBacWipesOut)
{
    const auto r = run(wipeout_instance(), Consistency::bac);
    EXPECT_TRUE(r.empty);
    for (const auto& d : r.domains)
        EXPECT_TRUE(d.empty());
    EXPECT_TRUE(run(wipeout_instance(), Consistency::bac0).empty);
}

TEST(Propagation, AcPairArcStar)
{
    const Instance inst = acpair_instance();
    PropState st(inst, arc_star_options());
    const auto r = st.enforce_ac_star();
    EXPECT_FALSE(r.empty);
    EXPECT_EQ(r.w_zero_final, 2);
    EXPECT_EQ(hulls(r.domains), (std::vector<Interval>{{1, 1}, {0, 0}}));
    EXPECT_EQ(st.residual_cost(std::vector<Value>{1, 0}), 2);
}

TEST(Propagation, AcPairNodeConsistency)
{
    const Instance inst = acpair_instance();
    PropState st(inst, arc_star_options());
    const auto r = st.enforce_nc();
    EXPECT_EQ(r.w_zero_final, 1);
    EXPECT_EQ(hulls(r.domains), (std::vector<Interval>{{1, 1}, {0, 1}}));
    EXPECT_EQ(st.unary_cost(1, 0), 0);
    EXPECT_EQ(st.unary_cost(1, 1), 1);
}

TEST(Propagation, ProjectToZeroPrimitive)
{
    const Instance inst = linsum_instance();
    PropState st(inst);
    EXPECT_TRUE(st.project_to_zero(0));
    EXPECT_EQ(st.w_zero(), 2);
    EXPECT_EQ(st.delta_shift(0), 2);
    EXPECT_FALSE(st.project_to_zero(0));
    EXPECT_EQ(st.w_zero(), 2);
}

TEST(Propagation, UnaryAndBinaryProjectionPrimitives)
{
    const Instance inst = acpair_instance();
    PropState st(inst, arc_star_options());
    // Function 2 is over (x0, x1); every cost with x0 = 1 is at least 1.
    EXPECT_TRUE(st.project_binary(0, 1, 2));
    EXPECT_EQ(st.unary_cost(0, 1), 1);
    EXPECT_EQ(st.binary_cost(2, 1, 0), 0);
    EXPECT_EQ(st.binary_cost(2, 1, 1), 1);
    EXPECT_FALSE(st.project_binary(0, 1, 2));
    EXPECT_TRUE(st.project_unary(1));
    EXPECT_EQ(st.w_zero(), 1);
    EXPECT_FALSE(st.project_unary(1));
}

TEST(Propagation, ModeRestrictions)
{
    const Instance inst = acpair_instance();
    PropState bounds(inst);
    EXPECT_THROW(bounds.enforce(Consistency::nc), ContractError);
    EXPECT_THROW(bounds.enforce(Consistency::ac), ContractError);
    PropState arc(inst, arc_star_options());
    EXPECT_THROW(arc.enforce(Consistency::bac), ContractError);
    EXPECT_THROW(bounds.project_unary(0), ContractError);

    Extensional e;
    e.table = TupleTable(3);
    const Instance ternary = make_instance("t", 3, {{0, 1}, {0, 1}, {0, 1}}, {{{0, 1, 2}, e}});
    PropState t(ternary, arc_star_options());
    EXPECT_THROW(t.enforce(Consistency::ac), ContractError);
    EXPECT_NO_THROW(t.enforce(Consistency::nc));
}

TEST(Propagation, ArcStarRefusesLargeDomains)
{
    const Instance inst = make_instance("wide", 3, {{0, 1'000'000}}, {});
    EXPECT_THROW(PropState st(inst, arc_star_options()), RefusedError);
    PropOptions small = arc_star_options();
    small.ac_domain_cap = 3;
    const Instance e64 = wipeout_instance();
    EXPECT_THROW(PropState st(e64, small), RefusedError);
    EXPECT_NO_THROW(PropState st(inst));
}

TEST(Propagation, AgreesWithNaiveFixpoints)
{
    for (std::uint64_t seed = 1; seed <= 300; ++seed) {
        const Instance inst = generate_suite_instance(seed);
        const auto nb = naive_bac_fixpoint(inst);
        const auto rb = run(inst, Consistency::bac);
        ASSERT_EQ(rb.empty, nb.empty) << "bac seed " << seed;
        if (!nb.empty)
            ASSERT_EQ(hulls(rb.domains), nb.domains) << "bac seed " << seed;

        const auto nz = naive_bac_zero_fixpoint(inst);
        PropState st(inst);
        const auto rz = st.enforce_bac_zero();
        ASSERT_EQ(rz.empty, nz.empty) << "bac0 seed " << seed;
        if (!nz.empty) {
            ASSERT_EQ(hulls(rz.domains), nz.domains) << "bac0 seed " << seed;
            ASSERT_EQ(rz.w_zero_final, nz.w_zero) << "bac0 seed " << seed;
            ASSERT_EQ(st.delta_shifts(), nz.delta_shift) << "bac0 seed " << seed;
        }
    }
}

TEST(Propagation, ConfluentUnderRandomQueueOrder)
{
    for (std::uint64_t seed = 1; seed <= 30; ++seed) {
        const Instance inst = generate_suite_instance(seed);
        for (auto c : {Consistency::bac, Consistency::bac0}) {
            PropState ref(inst);
            const auto base = ref.enforce(c);
            for (std::uint64_t s = 0; s < 8; ++s) {
                std::mt19937_64 rng(seed * 100 + s);
                PropState st(inst);
                st.set_pop_rng(&rng);
                const auto r = st.enforce(c);
                ASSERT_EQ(r.empty, base.empty) << seed;
                ASSERT_EQ(r.domains, base.domains) << seed;
                if (c == Consistency::bac0 && !r.empty) {
                    ASSERT_EQ(r.w_zero_final, base.w_zero_final) << seed;
                    ASSERT_EQ(st.delta_shifts(), ref.delta_shifts()) << seed;
                }
            }
        }
    }
}

TEST(Propagation, DeletionsAreSound)
{
    for (std::uint64_t seed = 1; seed <= 150; ++seed) {
        const Instance inst = generate_suite_instance(seed);
        const Cost k = inst.valuation().top();
        for (auto c : applicable(inst)) {
            const auto r = run(inst, c);
            for (VarId x = 0; x < static_cast<VarId>(inst.num_variables()); ++x) {
                const Interval d = inst.domain(x);
                for (Value v = d.lo; v <= d.hi; ++v)
                    if (r.empty || !r.domains[static_cast<std::size_t>(x)].contains(v))
                        ASSERT_GE(brute_best_with(inst, x, v), k)
                            << to_string(c) << " seed " << seed << " x" << x << "=" << v;
            }
        }
    }
}

TEST(Propagation, SolutionSetsArePreserved)
{
    for (std::uint64_t seed = 1; seed <= 150; ++seed) {
        const Instance inst = generate_suite_instance(seed);
        const auto all = brute_solutions(inst);
        for (auto c : applicable(inst)) {
            const auto r = run(inst, c);
            if (r.empty)
                ASSERT_TRUE(all.empty()) << to_string(c) << " seed " << seed;
            else
                ASSERT_EQ(solutions_within(inst, r.domains), all) << to_string(c) << " seed " << seed;
        }
    }
}

TEST(Propagation, LowerBoundNeverExceedsOptimum)
{
    for (std::uint64_t seed = 1; seed <= 150; ++seed) {
        const Instance inst = generate_suite_instance(seed);
        const auto opt = brute_optimum(inst);
        for (auto c : applicable(inst)) {
            const auto r = run(inst, c);
            if (opt.feasible)
                ASSERT_LE(r.w_zero_final, opt.cost) << to_string(c) << " seed " << seed;
        }
    }
}

TEST(Propagation, ResidualCostEqualsTotalCost)
{
    for (std::uint64_t seed = 1; seed <= 100; ++seed) {
        const Instance inst = generate_suite_instance(seed);
        for (auto c : applicable(inst)) {
            PropState st(inst, options_for(c));
            const auto r = st.enforce(c);
            if (r.empty)
                continue;
            for (const auto& t : solutions_within(inst, r.domains))
                ASSERT_EQ(st.residual_cost(t), total_cost(inst, t)) << to_string(c) << " seed " << seed;
        }
    }
}

TEST(Propagation, BacZeroIsAtLeastAsStrongAsBac)
{
    for (std::uint64_t seed = 1; seed <= 300; ++seed) {
        const Instance inst = generate_suite_instance(seed);
        const auto rb = run(inst, Consistency::bac);
        const auto rz = run(inst, Consistency::bac0);
        if (rb.empty) {
            ASSERT_TRUE(rz.empty) << seed;
            continue;
        }
        if (rz.empty)
            continue;
        for (std::size_t x = 0; x < rb.domains.size(); ++x)
            ASSERT_TRUE(rb.domains[x].hull().contains(rz.domains[x].hull())) << seed;
    }
}

TEST(Propagation, EnforcementIsIdempotent)
{
    for (std::uint64_t seed = 1; seed <= 80; ++seed) {
        const Instance inst = generate_suite_instance(seed);
        for (auto c : applicable(inst)) {
            PropState st(inst, options_for(c));
            const auto first = st.enforce(c);
            const auto fp = st.fingerprint();
            const auto second = st.enforce(c);
            ASSERT_EQ(second.deletions, 0u) << to_string(c) << " seed " << seed;
            ASSERT_EQ(second.w_zero_final, first.w_zero_final);
            ASSERT_EQ(st.fingerprint(), fp);
        }
    }
}

TEST(Propagation, HardInstancesKeepOnlyFeasibleBounds)
{
    for (std::uint64_t seed = 1; seed <= 40; ++seed) {
        const Instance inst = generate_hard_instance(seed);
        ASSERT_EQ(inst.valuation().top(), 1);
        const auto r = run(inst, Consistency::bac);
        EXPECT_EQ(r.w_zero_final, 0);
        if (brute_solutions(inst).empty())
            continue;
        ASSERT_FALSE(r.empty) << seed;
    }
}

TEST(Propagation, StateSizeIndependentOfDomainSize)
{
    auto bytes = [](Value L) {
        const Instance inst = make_instance("span", 3, {{0, L}, {0, L}}, {{{0, 1}, Spacer{1, 2, 3, 4, 1}}});
        PropState st(inst);
        st.enforce_bac_zero();
        return st.state_bytes();
    };
    EXPECT_EQ(bytes(1000), bytes(1'000'000'000));
}

TEST(Propagation, TrailUndoRestoresState)
{
    for (std::uint64_t seed = 1; seed <= 40; ++seed) {
        const Instance inst = generate_suite_instance(seed);
        PropState st(inst);
        st.set_trailing(true);
        st.enforce_bac_zero();
        if (st.empty())
            continue;
        const auto fp = st.fingerprint();
        const auto mark = st.trail_mark();
        st.restrict_domain(0, st.bounds(0).lo, st.bounds(0).lo);
        st.propagate(Consistency::bac0);
        st.undo(mark);
        ASSERT_EQ(st.fingerprint(), fp) << seed;
        ASSERT_EQ(st.trail_size(), mark);
    }
}

TEST(Propagation, TraceRecordsEvents)
{
    PropOptions o;
    o.trace = true;
    const Instance inst = linsum_instance();
    PropState st(inst, o);
    st.enforce_bac_zero();
    ASSERT_FALSE(st.trace().empty());
    EXPECT_EQ(st.trace().front().kind, TraceEvent::Kind::project_zero);
    EXPECT_EQ(st.trace().front().amount, 2);
    EXPECT_EQ(to_string(TraceEvent::Kind::delete_inf), "delete_inf");
}

TEST(Propagation, EvalCountsReported)
{
    const auto r = run(linsum_instance(), Consistency::bac);
    ASSERT_EQ(r.eval_counts.size(), 1u);
    EXPECT_GT(r.eval_counts[0], 0u);
}

TEST(Propagation, NodeConsistencyWipeout)
{
    Extensional u;
    u.table = TupleTable(1);
    u.table.set(std::vector<Value>{0}, 2);
    u.table.set(std::vector<Value>{1}, 3);
    const Instance inst = make_instance("nc", 4, {{0, 1}}, {{{0}, u}}, 2);
    EXPECT_TRUE(brute_solutions(inst).empty());
    PropState st(inst, arc_star_options());
    EXPECT_TRUE(st.enforce_nc().empty);
}

TEST(Propagation, ArcStarOnLinSum)
{
    const Instance inst = linsum_instance();
    PropState st(inst, arc_star_options());
    const auto r = st.enforce_ac_star();
    EXPECT_EQ(r.w_zero_final, 2);
}

TEST(Propagation, ProjectSingletonScope)
{
    const Instance inst = linsum_instance();
    PropState st(inst);
    st.restrict_domain(0, 3, 3);
    st.restrict_domain(1, 4, 4);
    EXPECT_TRUE(st.project_to_zero(0));
    EXPECT_EQ(st.w_zero(), 7);
}

TEST(Propagation, BinaryProjectionMovesMinimum)
{
    std::mt19937_64 rng(23);
    for (int i = 0; i < 200; ++i) {
        const Cost k = uniform(rng, 2, 9);
        const Value d0 = uniform(rng, 1, 16);
        const Value d1 = uniform(rng, 1, 16);
        Extensional e;
        e.table = TupleTable(2);
        for (Value a = 0; a < d0; ++a)
            for (Value b = 0; b < d1; ++b)
                e.table.set(std::vector<Value>{a, b}, uniform(rng, 0, k));
        const Instance inst = make_instance("pb", k, {{0, d0 - 1}, {0, d1 - 1}}, {{{0, 1}, e}});
        const bool first = uniform(rng, 0, 1) == 0;
        const Value vi = uniform(rng, 0, (first ? d0 : d1) - 1);
        PropState st(inst, arc_star_options());
        std::vector<Cost> before;
        const Value n_other = first ? d1 : d0;
        for (Value w = 0; w < n_other; ++w)
            before.push_back(first ? st.binary_cost(0, vi, w) : st.binary_cost(0, w, vi));
        const Cost moved = *std::min_element(before.begin(), before.end());
        const bool changed = st.project_binary(first ? 0 : 1, vi, 0);
        ASSERT_EQ(changed, moved > 0);
        if (!changed)
            continue;
        ASSERT_EQ(st.unary_cost(first ? 0 : 1, vi), moved);
        for (Value w = 0; w < n_other; ++w) {
            const Cost after = first ? st.binary_cost(0, vi, w) : st.binary_cost(0, w, vi);
            ASSERT_EQ(after, before[static_cast<std::size_t>(w)] >= k ? k : before[static_cast<std::size_t>(w)] - moved)
                << i;
        }
    }
}

TEST(Propagation, BoundCachesSumContributions)
{
    for (std::uint64_t seed = 1; seed <= 100; ++seed) {
        const Instance inst = generate_suite_instance(seed);
        for (auto c : {Consistency::bac, Consistency::bac0}) {
            PropState st(inst);
            if (st.enforce(c).empty)
                continue;
            const Valuation& v = st.valuation();
            for (VarId x = 0; x < static_cast<VarId>(inst.num_variables()); ++x) {
                Cost inf = 0;
                Cost sup = 0;
                for (const auto& inc : inst.incident(x)) {
                    inf = v.plus(inf, st.delta_inf(inc.function, inc.position));
                    sup = v.plus(sup, st.delta_sup(inc.function, inc.position));
                }
                ASSERT_EQ(st.w_inf(x), inf) << seed;
                ASSERT_EQ(st.w_sup(x), sup) << seed;
                ASSERT_LT(v.plus(st.w_zero(), inf), v.top());
            }
        }
    }
}
