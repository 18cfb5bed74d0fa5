#include <bac/generate.hpp>

#include <algorithm>
#include <array>
#include <cstdlib>
#include <random>

namespace bac {

namespace {

// Own uniform helpers keep streams identical across standard libraries.
class Rng
{
public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    std::int64_t uniform(std::int64_t lo, std::int64_t hi)
    {
        if (lo > hi)
            throw ContractError("empty sampling range");
        const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
        if (span == 0)
            return static_cast<std::int64_t>(gen_());
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % span;
        std::uint64_t r;
        do
            r = gen_();
        while (r >= limit);
        return lo + static_cast<std::int64_t>(r % span);
    }

    bool chance(double p) { return static_cast<double>(gen_() >> 11) * 0x1.0p-53 < p; }

    std::vector<VarId> distinct(std::size_t n, std::size_t r)
    {
        std::vector<VarId> all(n);
        for (std::size_t i = 0; i < n; ++i)
            all[i] = static_cast<VarId>(i);
        for (std::size_t i = 0; i < r; ++i)
            std::swap(all[i], all[static_cast<std::size_t>(uniform(static_cast<std::int64_t>(i), static_cast<std::int64_t>(n) - 1))]);
        all.resize(r);
        return all;
    }

private:
    std::mt19937_64 gen_;
};

Extensional random_table(Rng& rng, std::span<const Interval> box, double tightness, Cost max_cost, Cost k)
{
    Extensional e;
    e.table = TupleTable(box.size());
    std::vector<Value> t(box.size());
    for (std::size_t p = 0; p < box.size(); ++p)
        t[p] = box[p].lo;
    while (true) {
        if (rng.chance(tightness))
            e.table.set(t, std::min(k, rng.uniform(1, max_cost)));
        std::size_t p = box.size();
        while (true) {
            if (p == 0)
                return e;
            --p;
            if (t[p] < box[p].hi) {
                ++t[p];
                break;
            }
            t[p] = box[p].lo;
        }
    }
}

CostKind random_kind(Rng& rng, std::span<const VarId> scope, std::span<const Interval> box, const RandomParams& p)
{
    const Cost top = p.k;
    auto alpha = [&] { return std::min(top, rng.uniform(1, std::max<Cost>(1, p.max_cost))); };
    switch (rng.uniform(0, 6)) {
    case 0: {
        AffineMap m;
        if (rng.chance(0.3))
            m = AffineMap{rng.uniform(-1, 2), rng.uniform(-2, 2)};
        return FunctionalEq{alpha(), m};
    }
    case 1: {
        AffineMap m;
        if (rng.chance(0.3))
            m = AffineMap{rng.uniform(-1, 2), rng.uniform(-2, 2)};
        return AntiFunctionalNeq{alpha(), m};
    }
    case 2: return MonoLeq{rng.uniform(-3, 3), alpha()};
    case 3: {
        const Value a = rng.uniform(-3, 3);
        const Value b = rng.uniform(-3, 3);
        return LinPlus{a, b, rng.uniform(-10, 10)};
    }
    case 4: {
        const Value d1 = rng.uniform(-6, 4);
        const Value d2 = d1 + rng.uniform(0, 3);
        const Value d3 = d2 + rng.uniform(0, 3);
        const Value d4 = d3 + rng.uniform(0, 3);
        return Spacer{d1, d2, d3, d4, rng.uniform(1, 3)};
    }
    case 5: {
        // Tagged semi-convex table: a hill along the partner variable for every value.
        Extensional e;
        e.table = TupleTable(2);
        const std::size_t wrt = static_cast<std::size_t>(rng.uniform(0, 1));
        const std::size_t other = 1 - wrt;
        std::array<Value, 2> t{};
        for (Value a = box[wrt].lo; a <= box[wrt].hi; ++a) {
            const Value peak = rng.uniform(box[other].lo, box[other].hi);
            const Cost height = rng.uniform(0, std::max<Cost>(1, p.max_cost));
            const Cost base = rng.uniform(0, 2);
            t[wrt] = a;
            for (Value b = box[other].lo; b <= box[other].hi; ++b) {
                t[other] = b;
                const Cost drop = std::abs(b - peak);
                e.table.set(t, std::min(top, std::max(base, height - drop)));
            }
        }
        e.semiconvex = SemiconvexTag{scope[wrt], Order::ascending};
        return e;
    }
    default: break;
    }
    return random_table(rng, box, p.tightness, p.max_cost, top);
}

} // namespace

Instance generate_random(const RandomParams& p)
{
    if (p.n < 1 || p.d < 1 || p.k < 1 || p.max_cost < 1)
        throw ContractError("random generator needs n, d, k and max_cost >= 1");
    if (p.max_arity < 1 || p.max_arity > p.n)
        throw ContractError("max arity must lie in [1, n]");
    if (p.tightness < 0 || p.tightness > 1)
        throw ContractError("tightness must lie in [0, 1]");
    Rng rng(p.seed);
    std::vector<Interval> domains;
    for (std::size_t x = 0; x < p.n; ++x) {
        if (p.varied_domains) {
            const Value lo = rng.uniform(0, 3);
            domains.push_back({lo, lo + rng.uniform(1, static_cast<std::int64_t>(p.d)) - 1});
        }
        else
            domains.push_back({0, static_cast<Value>(p.d) - 1});
    }
    std::vector<std::pair<std::vector<VarId>, CostKind>> fns;
    for (std::size_t f = 0; f < p.e; ++f) {
        const std::size_t lo_arity = std::min<std::size_t>(2, p.max_arity);
        const auto r = static_cast<std::size_t>(rng.uniform(
            p.mixed ? 1 : static_cast<std::int64_t>(lo_arity), static_cast<std::int64_t>(p.max_arity)));
        auto scope = rng.distinct(p.n, r);
        std::vector<Interval> box;
        for (VarId x : scope)
            box.push_back(domains[static_cast<std::size_t>(x)]);
        CostKind kind = (p.mixed && r == 2) ? random_kind(rng, scope, box, p)
                                            : CostKind{random_table(rng, box, p.tightness, p.max_cost, p.k)};
        fns.emplace_back(std::move(scope), std::move(kind));
    }
    return make_instance("random_" + std::to_string(p.seed), p.k, std::move(domains), std::move(fns));
}

Instance generate_satellite(const SatelliteParams& p)
{
    if (p.photos < 2)
        throw ContractError("satellite generator needs at least 2 photos");
    if (p.window < 1 || p.horizon < 1 || p.max_duration < 1 || p.max_transition < 0 || p.max_revenue < 1)
        throw ContractError("satellite parameters out of range");
    Rng rng(p.seed);
    const std::size_t n = p.photos;
    std::vector<Interval> windows(n);
    std::vector<Value> duration(n);
    std::vector<Cost> revenue(n);
    for (std::size_t i = 0; i < n; ++i) {
        const Value start = rng.uniform(0, p.horizon);
        windows[i] = {start, start + static_cast<Value>(p.window) - 1};
        duration[i] = rng.uniform(1, p.max_duration);
        revenue[i] = rng.uniform(1, p.max_revenue);
    }
    Cost lost_all = 0;
    for (Cost r : revenue)
        lost_all += r;
    const auto scale = static_cast<Cost>(n - 1);
    const Cost k = scale * lost_all + 1;

    std::vector<Interval> domains;
    for (const auto& w : windows)
        domains.push_back({w.lo, w.hi + 1});

    std::vector<std::pair<std::vector<VarId>, CostKind>> fns;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            const Value transition = rng.uniform(0, p.max_transition);
            Extensional e;
            e.table = TupleTable(2);
            const Value rej_i = domains[i].hi;
            const Value rej_j = domains[j].hi;
            for (Value a = domains[i].lo; a <= rej_i; ++a)
                for (Value b = domains[j].lo; b <= rej_j; ++b) {
                    Cost c = 0;
                    if (a != rej_i && b != rej_j) {
                        const bool separated = a + duration[i] + transition <= b || b + duration[j] + transition <= a;
                        if (!separated)
                            c = k;
                    }
                    if (c < k) {
                        if (a == rej_i)
                            c += revenue[i];
                        if (b == rej_j)
                            c += revenue[j];
                    }
                    if (c > 0)
                        e.table.set(std::array<Value, 2>{a, b}, c);
                }
            fns.emplace_back(std::vector<VarId>{static_cast<VarId>(i), static_cast<VarId>(j)}, std::move(e));
        }
    return make_instance("satellite_" + std::to_string(p.seed), k, std::move(domains), std::move(fns));
}

Instance generate_spacer_chain(const SpacerChainParams& p)
{
    if (p.m < 2 || p.L < 1 || p.k < 1)
        throw ContractError("spacer chain needs m >= 2, L >= 1 and k >= 1");
    Rng rng(p.seed);
    std::vector<Interval> domains(p.m, Interval{0, p.L});
    std::vector<std::pair<std::vector<VarId>, CostKind>> fns;
    for (std::size_t i = 0; i + 1 < p.m; ++i) {
        const Value d1 = rng.uniform(1, 10);
        const Value d2 = d1 + rng.uniform(0, 10);
        const Value d3 = d2 + rng.uniform(0, 20);
        const Value d4 = d3 + rng.uniform(0, 10);
        fns.emplace_back(std::vector<VarId>{static_cast<VarId>(i), static_cast<VarId>(i + 1)},
                         Spacer{d1, d2, d3, d4, 1});
    }
    for (std::size_t i = 0; i < p.m; ++i) {
        Extensional e;
        e.table = TupleTable(1);
        for (std::size_t q = 0; q < p.penalties; ++q)
            e.table.set(std::array<Value, 1>{rng.uniform(0, p.L)}, rng.uniform(1, std::max<Cost>(1, p.k - 1)));
        if (!e.table.empty())
            fns.emplace_back(std::vector<VarId>{static_cast<VarId>(i)}, std::move(e));
    }
    return make_instance("spacerchain_" + std::to_string(p.seed), p.k, std::move(domains), std::move(fns));
}

Instance generate_suite_instance(std::uint64_t seed)
{
    Rng rng(seed * 0x9E3779B97F4A7C15ull + 17);
    RandomParams p;
    p.n = static_cast<std::size_t>(rng.uniform(2, 6));
    p.d = static_cast<std::uint64_t>(rng.uniform(2, 9));
    p.e = static_cast<std::size_t>(rng.uniform(1, 10));
    p.k = rng.uniform(2, 12);
    p.max_cost = rng.uniform(1, p.k + 2);
    p.tightness = 0.2 + 0.1 * static_cast<double>(rng.uniform(0, 4));
    p.max_arity = std::min<std::size_t>(p.n, 3);
    p.mixed = true;
    p.varied_domains = true;
    p.seed = seed;
    return generate_random(p);
}

Instance generate_hard_instance(std::uint64_t seed)
{
    Rng rng(seed * 0xD1B54A32D192ED03ull + 5);
    const auto n = static_cast<std::size_t>(rng.uniform(2, 6));
    const auto d = rng.uniform(2, 9);
    const auto e = static_cast<std::size_t>(rng.uniform(1, 8));
    std::vector<Interval> domains;
    for (std::size_t x = 0; x < n; ++x) {
        const Value lo = rng.uniform(0, 2);
        domains.push_back({lo, lo + rng.uniform(1, d) - 1});
    }
    std::vector<std::pair<std::vector<VarId>, CostKind>> fns;
    for (std::size_t f = 0; f < e; ++f) {
        const auto r = static_cast<std::size_t>(rng.uniform(1, static_cast<std::int64_t>(std::min<std::size_t>(n, 3))));
        auto scope = rng.distinct(n, r);
        std::vector<Interval> box;
        for (VarId x : scope)
            box.push_back(domains[static_cast<std::size_t>(x)]);
        if (r == 2 && rng.chance(0.4))
            fns.emplace_back(std::move(scope), MonoLeq{rng.uniform(-2, 3), 1});
        else
            fns.emplace_back(std::move(scope), random_table(rng, box, 0.2 + 0.1 * static_cast<double>(rng.uniform(0, 4)), 1, 1));
    }
    return make_instance("hard_" + std::to_string(seed), 1, std::move(domains), std::move(fns));
}

} // namespace bac
