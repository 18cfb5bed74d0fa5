#include <bac/cost_function.hpp>

#include <algorithm>
#include <array>
#include <sstream>

namespace bac {

namespace {

__extension__ typedef __int128 Wide;

Cost clamp_wide(Wide c, const Valuation& v)
{
    if (c <= 0)
        return 0;
    if (c >= static_cast<Wide>(v.top()))
        return v.top();
    return static_cast<Cost>(c);
}

Wide floor_div(Wide a, Wide b)
{
    Wide q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0)))
        --q;
    return q;
}

Wide ceil_div(Wide a, Wide b) { return -floor_div(-a, b); }

Wide apply(const AffineMap& m, Value x) { return static_cast<Wide>(m.slope) * x + m.offset; }

template <class... Ts>
struct overloaded : Ts...
{
    using Ts::operator()...;
};

/// Counts one lookup per call.
struct Probe
{
    const CostFunction& f;
    FunctionOverlay& ov;
    const Valuation& v;

    Cost operator()(std::span<const Value> tuple) const
    {
        ++ov.evals;
        return effective_cost(f, ov.delta_shift, tuple, v);
    }

    Cost shifted(Cost raw) const
    {
        ++ov.evals;
        return v.minus(v.clamp(raw), ov.delta_shift);
    }
};

void check_box(const CostFunction& f, std::span<const Interval> box)
{
    if (box.size() != f.arity())
        throw ContractError("box arity " + std::to_string(box.size()) + " does not match scope arity " +
                            std::to_string(f.arity()));
    for (std::size_t p = 0; p < box.size(); ++p) {
        if (box[p].empty())
            throw ContractError("empty sub-interval in box for variable " + std::to_string(f.scope()[p]));
        if (!f.declared()[p].contains(box[p]))
            throw ContractError("box exceeds the declared domain of variable " + std::to_string(f.scope()[p]));
    }
}

std::uint64_t box_volume(std::span<const Interval> box)
{
    std::uint64_t vol = 1;
    for (const auto& iv : box) {
        if (__builtin_mul_overflow(vol, iv.size(), &vol))
            return UINT64_MAX;
    }
    return vol;
}

Cost min_extensional(const CostFunction& f, const Extensional& ext, const Probe& probe, std::span<const Interval> box)
{
    const std::size_t r = f.arity();
    std::array<Value, 8> inline_tuple{};
    std::vector<Value> heap_tuple;
    std::span<Value> tuple;
    if (r <= inline_tuple.size())
        tuple = std::span<Value>(inline_tuple.data(), r);
    else {
        heap_tuple.resize(r);
        tuple = heap_tuple;
    }

    Cost best = kInfiniteCost;

    if (ext.semiconvex) {
        // Minimum sits at one of the two bounds of the partner interval.
        const std::size_t p = *f.position(ext.semiconvex->wrt);
        const std::size_t q = 1 - p;
        for (Value vw = box[p].lo; vw <= box[p].hi; ++vw) {
            tuple[p] = vw;
            tuple[q] = box[q].lo;
            best = std::min(best, probe(tuple));
            if (best == 0)
                return 0;
            if (box[q].hi != box[q].lo) {
                tuple[q] = box[q].hi;
                best = std::min(best, probe(tuple));
                if (best == 0)
                    return 0;
            }
        }
        return best;
    }

    auto in_box = [&](std::span<const Value> t) {
        for (std::size_t p = 0; p < r; ++p)
            if (!box[p].contains(t[p]))
                return false;
        return true;
    };

    const std::uint64_t volume = box_volume(box);
    if (volume <= ext.table.size() + 1) {
        for (std::size_t p = 0; p < r; ++p)
            tuple[p] = box[p].lo;
        while (true) {
            best = std::min(best, probe(tuple));
            if (best == 0)
                return 0;
            std::size_t p = r;
            while (p > 0) {
                --p;
                if (tuple[p] < box[p].hi) {
                    ++tuple[p];
                    break;
                }
                tuple[p] = box[p].lo;
                if (p == 0)
                    return best;
            }
        }
    }

    // Sparse scan: listed tuples inside the box, plus the default when the
    // box holds unlisted tuples.
    std::uint64_t listed = 0;
    for (std::size_t i = 0; i < ext.table.size(); ++i) {
        if (!in_box(ext.table.tuple(i)))
            continue;
        ++listed;
        best = std::min(best, probe.shifted(ext.table.cost(i)));
    }
    if (listed < volume)
        best = std::min(best, probe.shifted(ext.default_cost));
    return best;
}

Cost min_functional(const FunctionalEq& fe, const Probe& probe, std::span<const Interval> box)
{
    const Interval ei = box[0];
    const Interval ej = box[1];
    const Wide s = fe.support.slope;
    const Wide o = fe.support.offset;
    Wide lo = ei.lo;
    Wide hi = ei.hi;
    if (s == 0) {
        if (!ej.contains(fe.support.offset))
            hi = lo - 1;
    }
    else if (s > 0) {
        lo = std::max(lo, ceil_div(ej.lo - o, s));
        hi = std::min(hi, floor_div(ej.hi - o, s));
    }
    else {
        lo = std::max(lo, ceil_div(ej.hi - o, s));
        hi = std::min(hi, floor_div(ej.lo - o, s));
    }
    if (lo <= hi) {
        const Value vi = static_cast<Value>(lo);
        const std::array<Value, 2> t{vi, static_cast<Value>(s * vi + o)};
        return probe(t);
    }
    const std::array<Value, 2> t{ei.lo, ej.lo};
    return probe(t);
}

Cost min_corners(const Probe& probe, std::span<const Interval> box)
{
    Cost best = kInfiniteCost;
    const std::array<Value, 2> xs{box[0].lo, box[0].hi};
    const std::array<Value, 2> ys{box[1].lo, box[1].hi};
    const int nx = box[0].lo == box[0].hi ? 1 : 2;
    const int ny = box[1].lo == box[1].hi ? 1 : 2;
    for (int a = 0; a < nx; ++a)
        for (int b = 0; b < ny; ++b) {
            const std::array<Value, 2> t{xs[a], ys[b]};
            best = std::min(best, probe(t));
        }
    return best;
}

Cost min_spacer(const Spacer& sp, const Probe& probe, std::span<const Interval> box)
{
    const Interval ei = box[0];
    const Interval ej = box[1];
    // Achievable gaps v_j - v_i form the interval [glo, ghi].
    const Wide glo = static_cast<Wide>(ej.lo) - ei.hi;
    const Wide ghi = static_cast<Wide>(ej.hi) - ei.lo;
    Wide g;
    if (ghi < sp.d2)
        g = ghi;
    else if (glo > sp.d3)
        g = glo;
    else
        g = std::max<Wide>(glo, sp.d2);
    const Wide vi = std::max<Wide>(ei.lo, static_cast<Wide>(ej.lo) - g);
    const std::array<Value, 2> t{static_cast<Value>(vi), static_cast<Value>(vi + g)};
    return probe(t);
}

} // namespace

bool TupleTable::set(std::span<const Value> tuple, Cost cost)
{
    if (tuple.size() != arity_)
        throw ContractError("tuple arity mismatch in table");
    const std::size_t i = lower_index(tuple);
    if (i < size() && std::ranges::equal(this->tuple(i), tuple)) {
        costs_[i] = cost;
        return false;
    }
    keys_.insert(keys_.begin() + static_cast<std::ptrdiff_t>(i * arity_), tuple.begin(), tuple.end());
    costs_.insert(costs_.begin() + static_cast<std::ptrdiff_t>(i), cost);
    return true;
}

std::size_t TupleTable::lower_index(std::span<const Value> tuple) const
{
    std::size_t lo = 0;
    std::size_t hi = size();
    while (lo < hi) {
        const std::size_t mid = (lo + hi) / 2;
        if (std::ranges::lexicographical_compare(this->tuple(mid), tuple))
            lo = mid + 1;
        else
            hi = mid;
    }
    return lo;
}

std::optional<Cost> TupleTable::find(std::span<const Value> tuple) const
{
    const std::size_t i = lower_index(tuple);
    if (i < size() && std::ranges::equal(this->tuple(i), tuple))
        return costs_[i];
    return std::nullopt;
}

std::string kind_name(const CostKind& kind)
{
    return std::visit(overloaded{
                          [](const Extensional&) { return std::string("ext"); },
                          [](const FunctionalEq&) { return std::string("funceq"); },
                          [](const AntiFunctionalNeq&) { return std::string("antifuncneq"); },
                          [](const MonoLeq&) { return std::string("monoleq"); },
                          [](const LinPlus&) { return std::string("linplus"); },
                          [](const Spacer&) { return std::string("spacer"); },
                      },
                      kind);
}

CostFunction::CostFunction(std::vector<VarId> scope, CostKind kind, std::vector<Interval> declared) :
    scope_(std::move(scope)),
    kind_(std::move(kind)),
    declared_(std::move(declared))
{
    if (scope_.empty())
        throw ContractError("cost function with empty scope");
    if (declared_.size() != scope_.size())
        throw ContractError("declared intervals do not match the scope");
    for (std::size_t p = 0; p < scope_.size(); ++p) {
        if (declared_[p].empty())
            throw ContractError("empty declared interval");
        for (std::size_t q = 0; q < p; ++q)
            if (scope_[p] == scope_[q])
                throw ContractError("repeated variable " + std::to_string(scope_[p]) + " in scope");
    }

    auto require_binary = [&] {
        if (scope_.size() != 2)
            throw ContractError(kind_name(kind_) + " cost functions are binary");
    };

    std::visit(overloaded{
                   [&](const Extensional& e) {
                       if (e.table.arity() != scope_.size())
                           throw ContractError("table arity does not match the scope");
                       if (e.default_cost < 0)
                           throw ContractError("negative default cost");
                       for (std::size_t i = 0; i < e.table.size(); ++i) {
                           if (e.table.cost(i) < 0)
                               throw ContractError("negative cost in table");
                           auto t = e.table.tuple(i);
                           for (std::size_t p = 0; p < t.size(); ++p)
                               if (!declared_[p].contains(t[p]))
                                   throw ContractError("table tuple value " + std::to_string(t[p]) +
                                                       " outside the domain of variable " + std::to_string(scope_[p]));
                       }
                       if (e.semiconvex) {
                           require_binary();
                           if (!position(e.semiconvex->wrt))
                               throw ContractError("semiconvex tag names a variable outside the scope");
                       }
                   },
                   [&](const FunctionalEq& fe) {
                       require_binary();
                       if (fe.alpha < 1)
                           throw ContractError("functional alpha must be >= 1");
                   },
                   [&](const AntiFunctionalNeq& af) {
                       require_binary();
                       if (af.alpha < 1)
                           throw ContractError("anti-functional alpha must be >= 1");
                   },
                   [&](const MonoLeq& m) {
                       require_binary();
                       if (m.alpha < 1)
                           throw ContractError("monoleq alpha must be >= 1");
                   },
                   [&](const LinPlus&) { require_binary(); },
                   [&](const Spacer& s) {
                       require_binary();
                       if (!(s.d1 <= s.d2 && s.d2 <= s.d3 && s.d3 <= s.d4))
                           throw ContractError("spacer requires d1 <= d2 <= d3 <= d4");
                       if (s.slope < 1)
                           throw ContractError("spacer slope must be positive");
                   },
               },
               kind_);
}

std::optional<std::size_t> CostFunction::position(VarId var) const noexcept
{
    for (std::size_t p = 0; p < scope_.size(); ++p)
        if (scope_[p] == var)
            return p;
    return std::nullopt;
}

Cost CostFunction::raw_cost(std::span<const Value> t, const Valuation& v) const
{
    return std::visit(overloaded{
                          [&](const Extensional& e) {
                              auto c = e.table.find(t);
                              return v.clamp(c ? *c : e.default_cost);
                          },
                          [&](const FunctionalEq& fe) {
                              return apply(fe.support, t[0]) == t[1] ? Cost{0} : v.clamp(fe.alpha);
                          },
                          [&](const AntiFunctionalNeq& af) {
                              return apply(af.antisupport, t[0]) == t[1] ? v.clamp(af.alpha) : Cost{0};
                          },
                          [&](const MonoLeq& m) {
                              return static_cast<Wide>(t[0]) + m.delta <= t[1] ? Cost{0} : v.clamp(m.alpha);
                          },
                          [&](const LinPlus& l) {
                              const Wide s = static_cast<Wide>(l.a) * t[0] + static_cast<Wide>(l.b) * t[1] + l.c;
                              return clamp_wide(s, v);
                          },
                          [&](const Spacer& s) {
                              const Wide g = static_cast<Wide>(t[1]) - t[0];
                              if (g < s.d1 || g > s.d4)
                                  return v.top();
                              if (g < s.d2)
                                  return clamp_wide(static_cast<Wide>(s.slope) * (s.d2 - g), v);
                              if (g > s.d3)
                                  return clamp_wide(static_cast<Wide>(s.slope) * (g - s.d3), v);
                              return Cost{0};
                          },
                      },
                      kind_);
}

Cost effective_cost(const CostFunction& f, Cost delta_shift, std::span<const Value> tuple, const Valuation& v)
{
    return v.minus(f.raw_cost(tuple, v), delta_shift);
}

Cost evaluate(const CostFunction& f, FunctionOverlay& ov, std::span<const Value> tuple, const Valuation& v)
{
    if (tuple.size() != f.arity())
        throw ContractError("tuple arity does not match the scope");
    for (std::size_t p = 0; p < tuple.size(); ++p)
        if (!f.declared()[p].contains(tuple[p]))
            throw ContractError("value " + std::to_string(tuple[p]) + " outside the domain of variable " +
                                std::to_string(f.scope()[p]));
    ++ov.evals;
    return effective_cost(f, ov.delta_shift, tuple, v);
}

Cost min_over_box(const CostFunction& f, FunctionOverlay& ov, std::span<const Interval> box, const Valuation& v)
{
    check_box(f, box);
    const Probe probe{f, ov, v};
    return std::visit(overloaded{
                          [&](const Extensional& e) { return min_extensional(f, e, probe, box); },
                          [&](const FunctionalEq& fe) { return min_functional(fe, probe, box); },
                          [&](const AntiFunctionalNeq&) { return min_corners(probe, box); },
                          [&](const MonoLeq&) { return min_corners(probe, box); },
                          [&](const LinPlus&) { return min_corners(probe, box); },
                          [&](const Spacer& s) { return min_spacer(s, probe, box); },
                      },
                      f.kind());
}

Cost min_over_box_pinned(const CostFunction& f,
                         FunctionOverlay& ov,
                         std::span<const Interval> box,
                         VarId pin_var,
                         Value pin_val,
                         const Valuation& v)
{
    const auto pos = f.position(pin_var);
    if (!pos)
        throw ContractError("pinned variable " + std::to_string(pin_var) + " is not in the scope");
    if (box.size() != f.arity())
        throw ContractError("box arity does not match the scope");
    if (!box[*pos].contains(pin_val))
        throw ContractError("pinned value " + std::to_string(pin_val) + " outside the box");

    std::array<Interval, 8> inline_box{};
    std::vector<Interval> heap_box;
    std::span<Interval> pinned;
    if (box.size() <= inline_box.size()) {
        std::ranges::copy(box, inline_box.begin());
        pinned = std::span<Interval>(inline_box.data(), box.size());
    }
    else {
        heap_box.assign(box.begin(), box.end());
        pinned = heap_box;
    }
    pinned[*pos] = Interval{pin_val, pin_val};
    return min_over_box(f, ov, pinned, v);
}

namespace {

std::vector<Value> ordered_values(const Interval& iv, Order order)
{
    std::vector<Value> out;
    out.reserve(iv.size());
    for (Value x = iv.lo; x <= iv.hi; ++x)
        out.push_back(x);
    if (order == Order::descending)
        std::ranges::reverse(out);
    return out;
}

void check_validator_input(const CostFunction& f, std::uint64_t cap)
{
    if (f.arity() != 2)
        throw ContractError("validators apply to binary cost functions only");
    for (std::size_t p = 0; p < 2; ++p)
        if (f.declared()[p].size() > cap)
            throw RefusedError("validation refused: domain of variable " + std::to_string(f.scope()[p]) + " has " +
                               std::to_string(f.declared()[p].size()) + " values, cap is " + std::to_string(cap));
}

} // namespace

ValidationResult validate_semiconvex(const CostFunction& f, VarId wrt, Order order, const Valuation& v, std::uint64_t cap)
{
    check_validator_input(f, cap);
    const auto pos = f.position(wrt);
    if (!pos)
        throw ContractError("semiconvex validation: variable " + std::to_string(wrt) + " is not in the scope");
    const std::size_t p = *pos;
    const std::size_t q = 1 - p;
    const auto partner = ordered_values(f.declared()[q], order);
    const std::size_t m = partner.size();
    std::vector<Cost> costs(m);
    std::vector<Cost> suffix(m);
    std::array<Value, 2> t{};

    for (Value fixed = f.declared()[p].lo; fixed <= f.declared()[p].hi; ++fixed) {
        t[p] = fixed;
        for (std::size_t i = 0; i < m; ++i) {
            t[q] = partner[i];
            costs[i] = f.raw_cost(t, v);
        }
        suffix[m - 1] = costs[m - 1];
        for (std::size_t i = m - 1; i > 0; --i)
            suffix[i - 1] = std::max(suffix[i], costs[i - 1]);
        Cost prefix = costs[0];
        for (std::size_t i = 1; i + 1 < m; ++i) {
            const Cost level = std::min(prefix, suffix[i + 1]);
            if (costs[i] < level) {
                ValidationResult r;
                r.ok = false;
                r.fixed_value = fixed;
                r.gap_value = partner[i];
                r.beta = costs[i] + 1;
                std::ostringstream os;
                os << "beta-support of value " << fixed << " for beta=" << r.beta << " has a gap at " << partner[i];
                r.message = os.str();
                return r;
            }
            prefix = std::max(prefix, costs[i]);
        }
    }
    return {};
}

ValidationResult validate_monotonic(const CostFunction& f, const Valuation& v, Order order_i, Order order_j, std::uint64_t cap)
{
    check_validator_input(f, cap);
    const auto xs = ordered_values(f.declared()[0], order_i);
    const auto ys = ordered_values(f.declared()[1], order_j);

    auto fail = [](Value fixed, Value at, Cost c, const char* what) {
        ValidationResult r;
        r.ok = false;
        r.fixed_value = fixed;
        r.gap_value = at;
        r.beta = c;
        std::ostringstream os;
        os << "cost " << what << " at (" << fixed << ", " << at << ")";
        r.message = os.str();
        return r;
    };

    // Nondecreasing along the first variable.
    for (Value y : ys)
        for (std::size_t a = 1; a < xs.size(); ++a) {
            const std::array<Value, 2> prev{xs[a - 1], y};
            const std::array<Value, 2> cur{xs[a], y};
            if (f.raw_cost(cur, v) < f.raw_cost(prev, v))
                return fail(xs[a], y, f.raw_cost(cur, v), "decreases along the first variable");
        }
    // Nonincreasing along the second variable.
    for (Value x : xs)
        for (std::size_t b = 1; b < ys.size(); ++b) {
            const std::array<Value, 2> prev{x, ys[b - 1]};
            const std::array<Value, 2> cur{x, ys[b]};
            if (f.raw_cost(cur, v) > f.raw_cost(prev, v))
                return fail(x, ys[b], f.raw_cost(cur, v), "increases along the second variable");
        }
    return {};
}

ValidationResult validate_convex(const CostFunction& f, const Valuation& v, std::uint64_t cap)
{
    check_validator_input(f, cap);
    auto first = validate_semiconvex(f, f.scope()[0], Order::ascending, v, cap);
    if (!first)
        return first;
    return validate_semiconvex(f, f.scope()[1], Order::ascending, v, cap);
}

} // namespace bac
