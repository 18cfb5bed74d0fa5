#include <bac/propagation.hpp>

#include <algorithm>
#include <array>

namespace bac {

std::string to_string(Consistency c)
{
    switch (c) {
    case Consistency::nc: return "nc";
    case Consistency::ac: return "ac";
    case Consistency::bac: return "bac";
    case Consistency::bac0: return "bac0";
    }
    return "?";
}

Consistency parse_consistency(const std::string& s)
{
    if (s == "nc")
        return Consistency::nc;
    if (s == "ac")
        return Consistency::ac;
    if (s == "bac")
        return Consistency::bac;
    if (s == "bac0")
        return Consistency::bac0;
    throw ContractError("unknown consistency '" + s + "' (expected nc, ac, bac or bac0)");
}

std::string to_string(TraceEvent::Kind k)
{
    switch (k) {
    case TraceEvent::Kind::delete_inf: return "delete_inf";
    case TraceEvent::Kind::delete_sup: return "delete_sup";
    case TraceEvent::Kind::delete_value: return "delete_value";
    case TraceEvent::Kind::project_zero: return "project_zero";
    case TraceEvent::Kind::project_unary: return "project_unary";
    case TraceEvent::Kind::project_binary: return "project_binary";
    }
    return "?";
}

PropState::PropState(const Instance& inst, PropOptions opts) : inst_(&inst), opts_(opts), val_(inst.valuation())
{
    const std::size_t n = inst.num_variables();
    const std::size_t e = inst.num_functions();

    lb_.resize(n);
    ub_.resize(n);
    for (std::size_t x = 0; x < n; ++x) {
        const Interval iv = inst.domain(static_cast<VarId>(x));
        lb_[x] = iv.lo;
        ub_[x] = iv.hi;
    }
    w_zero_ = inst.w_zero();
    if (val_.is_top(w_zero_))
        empty_ = 1;

    w_inf_.assign(n, 0);
    w_sup_.assign(n, 0);
    fun_base_.resize(e);
    std::size_t slots = 0;
    std::size_t r_max = 0;
    for (std::size_t f = 0; f < e; ++f) {
        fun_base_[f] = slots;
        slots += inst.functions()[f].arity();
        r_max = std::max(r_max, inst.functions()[f].arity());
    }
    delta_inf_.assign(slots, 0);
    delta_sup_.assign(slots, 0);
    overlays_.resize(e);
    absorbed_.assign(e, 0);
    queue_.resize(n);
    queued_.assign(n, 0);
    box_.reserve(r_max);

    if (opts_.mode != PropMode::arc_star)
        return;

    value_base_.resize(n);
    count_.resize(n);
    std::size_t values = 0;
    for (std::size_t x = 0; x < n; ++x) {
        const std::uint64_t size = Interval{lb_[x], ub_[x]}.size();
        if (size > opts_.ac_domain_cap)
            throw RefusedError("AC* mode refused: variable " + std::to_string(x) + " has " + std::to_string(size) +
                               " values, domain cap is " + std::to_string(opts_.ac_domain_cap));
        value_base_[x] = values;
        count_[x] = static_cast<std::int64_t>(size);
        values += size;
    }
    alive_.assign(values, 1);
    unary_.assign(values, 0);

    offset_base_.assign(e, 0);
    std::size_t offsets = 0;
    for (std::size_t f = 0; f < e; ++f) {
        const CostFunction& fn = inst.functions()[f];
        if (fn.arity() == 1) {
            const VarId x = fn.scope()[0];
            std::array<Value, 1> t{};
            for (Value v = lb_[x]; v <= ub_[x]; ++v) {
                t[0] = v;
                Cost& u = unary_[value_slot(x, v)];
                u = val_.plus(u, fn.raw_cost(t, val_));
            }
            absorbed_[f] = 1;
        }
        else if (fn.arity() == 2) {
            offset_base_[f] = offsets;
            offsets += Interval{lb_[fn.scope()[0]], ub_[fn.scope()[0]]}.size();
            offsets += Interval{lb_[fn.scope()[1]], ub_[fn.scope()[1]]}.size();
        }
    }
    offsets_.assign(offsets, 0);
}

void PropState::set_top(Cost k)
{
    val_ = Valuation(k);
    if (!empty() && val_.is_top(w_zero_))
        fail();
}

Interval PropState::bounds(VarId x) const
{
    const std::size_t i = idx(x);
    if (lb_[i] > ub_[i])
        return {};
    return {lb_[i], ub_[i]};
}

Domain PropState::domain(VarId x) const
{
    const std::size_t i = idx(x);
    if (lb_[i] > ub_[i] || (mode() == PropMode::arc_star && count_[i] == 0))
        return Domain::make_empty();
    Domain d(lb_[i], ub_[i]);
    if (mode() == PropMode::arc_star)
        for (Value v = lb_[i] + 1; v < ub_[i]; ++v)
            if (!alive_[value_slot(x, v)])
                d.remove(v, static_cast<std::size_t>(opts_.ac_domain_cap));
    return d;
}

std::uint64_t PropState::domain_size(VarId x) const
{
    if (mode() == PropMode::arc_star)
        return static_cast<std::uint64_t>(count_[idx(x)]);
    return bounds(x).size();
}

bool PropState::is_live(VarId x, Value v) const
{
    const std::size_t i = idx(x);
    if (v < lb_[i] || v > ub_[i])
        return false;
    return mode() == PropMode::bounds || alive_[value_slot(x, v)] != 0;
}

bool PropState::all_assigned() const
{
    for (std::size_t x = 0; x < lb_.size(); ++x)
        if (lb_[x] != ub_[x])
            return false;
    return true;
}

std::vector<Cost> PropState::delta_shifts() const
{
    std::vector<Cost> out;
    out.reserve(overlays_.size());
    for (const auto& ov : overlays_)
        out.push_back(ov.delta_shift);
    return out;
}

std::uint64_t PropState::total_evals() const
{
    std::uint64_t total = 0;
    for (const auto& ov : overlays_)
        total += ov.evals;
    return total;
}

Cost PropState::unary_cost(VarId x, Value v) const
{
    require_mode(PropMode::arc_star, "unary_cost");
    if (!is_live(x, v))
        throw ContractError("value " + std::to_string(v) + " of variable " + std::to_string(x) + " is not live");
    return val_.clamp(unary_[value_slot(x, v)]);
}

Cost PropState::binary_cost(FunId f, Value v0, Value v1) const
{
    require_mode(PropMode::arc_star, "binary_cost");
    const CostFunction& fn = inst_->function(f);
    if (fn.arity() != 2)
        throw ContractError("binary_cost on a function of arity " + std::to_string(fn.arity()));
    const std::array<Value, 2> t{v0, v1};
    const Cost raw = fn.raw_cost(t, val_);
    if (val_.is_top(raw))
        return val_.top();
    const std::size_t base = offset_base_[static_cast<std::size_t>(f)];
    const VarId x0 = fn.scope()[0];
    const VarId x1 = fn.scope()[1];
    const Interval d0 = inst_->domain(x0);
    const Interval d1 = inst_->domain(x1);
    const Cost o0 = offsets_[base + static_cast<std::size_t>(v0 - d0.lo)];
    const Cost o1 = offsets_[base + d0.size() + static_cast<std::size_t>(v1 - d1.lo)];
    const Cost c = raw - o0 - o1 - overlays_[static_cast<std::size_t>(f)].delta_shift;
    if (c < 0)
        throw ContractError("binary cost below its projected offsets");
    return c;
}

void PropState::save(std::int64_t& cell)
{
    if (trailing_)
        trail_.push_back({&cell, cell});
}

void PropState::set(std::int64_t& cell, std::int64_t value)
{
    if (cell == value)
        return;
    save(cell);
    cell = value;
}

void PropState::require_mode(PropMode m, const char* op) const
{
    if (opts_.mode != m)
        throw ContractError(std::string(op) + " requires " +
                            (m == PropMode::bounds ? "bounds mode" : "AC* mode (small domains)"));
}

void PropState::fail() { set(empty_, 1); }

void PropState::queue_clear()
{
    const std::size_t n = queue_.size();
    for (std::size_t i = 0; i < queue_count_; ++i)
        queued_[queue_[(queue_head_ + i) % n]] = 0;
    queue_head_ = 0;
    queue_count_ = 0;
}

void PropState::push(VarId x)
{
    const std::size_t i = idx(x);
    if (queued_[i])
        return;
    queue_[(queue_head_ + queue_count_) % queue_.size()] = x;
    ++queue_count_;
    queued_[i] = 1;
}

VarId PropState::queue_pop()
{
    const std::size_t n = queue_.size();
    if (pop_rng_ && queue_count_ > 1) {
        std::uniform_int_distribution<std::size_t> pick(0, queue_count_ - 1);
        std::swap(queue_[queue_head_], queue_[(queue_head_ + pick(*pop_rng_)) % n]);
    }
    const VarId x = queue_[queue_head_];
    queue_head_ = (queue_head_ + 1) % n;
    --queue_count_;
    queued_[idx(x)] = 0;
    ++stats_.queue_pops;
    return x;
}

void PropState::undo(std::size_t mark)
{
    while (trail_.size() > mark) {
        const TrailEntry& e = trail_.back();
        *e.cell = e.old;
        trail_.pop_back();
    }
    queue_clear();
}

void PropState::reset_bound_caches()
{
    for (auto& c : w_inf_)
        set(c, 0);
    for (auto& c : w_sup_)
        set(c, 0);
    for (auto& c : delta_inf_)
        set(c, 0);
    for (auto& c : delta_sup_)
        set(c, 0);
}

void PropState::fill_box(FunId f)
{
    const CostFunction& fn = inst_->function(f);
    box_.resize(fn.arity());
    for (std::size_t p = 0; p < fn.arity(); ++p) {
        const std::size_t x = idx(fn.scope()[p]);
        box_[p] = Interval{lb_[x], ub_[x]};
    }
}

void PropState::reset_inf_row(VarId x)
{
    set(w_inf_[idx(x)], 0);
    for (const Incidence& inc : inst_->incident(x))
        set(delta_inf_[slot(inc.function, inc.position)], 0);
}

void PropState::reset_sup_row(VarId x)
{
    set(w_sup_[idx(x)], 0);
    for (const Incidence& inc : inst_->incident(x))
        set(delta_sup_[slot(inc.function, inc.position)], 0);
}

bool PropState::prune_inf(VarId x)
{
    require_mode(PropMode::bounds, "prune_inf");
    const std::size_t i = idx(x);
    if (empty() || lb_[i] > ub_[i])
        return false;
    if (!val_.is_top(val_.plus(w_zero_, val_.clamp(w_inf_[i]))))
        return false;
    const Value v = lb_[i];
    set(lb_[i], v + 1);
    ++stats_.deletions;
    if (opts_.trace)
        trace_.push_back({TraceEvent::Kind::delete_inf, x, v, w_inf_[i]});
    reset_inf_row(x);
    if (lb_[i] > ub_[i])
        fail();
    return true;
}

bool PropState::prune_sup(VarId x)
{
    require_mode(PropMode::bounds, "prune_sup");
    const std::size_t i = idx(x);
    if (empty() || lb_[i] > ub_[i])
        return false;
    if (!val_.is_top(val_.plus(w_zero_, val_.clamp(w_sup_[i]))))
        return false;
    const Value v = ub_[i];
    set(ub_[i], v - 1);
    ++stats_.deletions;
    if (opts_.trace)
        trace_.push_back({TraceEvent::Kind::delete_sup, x, v, w_sup_[i]});
    reset_sup_row(x);
    if (lb_[i] > ub_[i])
        fail();
    return true;
}

bool PropState::fully_assigned(FunId f) const
{
    for (VarId x : inst_->function(f).scope())
        if (lb_[idx(x)] != ub_[idx(x)])
            return false;
    return true;
}

bool PropState::project_to_zero(FunId f)
{
    if (empty())
        return false;
    const std::size_t fi = static_cast<std::size_t>(f);
    if (absorbed_[fi])
        return false;
    const CostFunction& fn = inst_->function(f);
    Cost alpha;
    if (mode() == PropMode::arc_star) {
        if (!fully_assigned(f))
            throw ContractError("AC* mode projects to w0 only from fully assigned functions");
        if (fn.arity() == 2) {
            ++overlays_[fi].evals;
            alpha = binary_cost(f, lb_[idx(fn.scope()[0])], lb_[idx(fn.scope()[1])]);
        }
        else {
            fill_box(f);
            alpha = min_over_box(fn, overlays_[fi], box_, val_);
        }
    }
    else {
        fill_box(f);
        alpha = min_over_box(fn, overlays_[fi], box_, val_);
    }
    if (alpha == 0)
        return false;
    ++stats_.projections;
    if (opts_.trace)
        trace_.push_back({TraceEvent::Kind::project_zero, f, 0, alpha});
    set(w_zero_, val_.plus(w_zero_, alpha));
    if (val_.is_top(w_zero_)) {
        fail();
        return true;
    }
    set(overlays_[fi].delta_shift, val_.plus(overlays_[fi].delta_shift, alpha));
    return true;
}

bool PropState::update_and_prune(FunId f, std::size_t pos)
{
    const CostFunction& fn = inst_->function(f);
    FunctionOverlay& ov = overlays_[static_cast<std::size_t>(f)];
    const VarId x = fn.scope()[pos];
    const std::size_t i = idx(x);
    const std::size_t s = slot(f, pos);

    auto retract = [&](Cost total, Cost part) { return val_.is_top(total) ? val_.top() : val_.minus(total, part); };

    fill_box(f);
    Cost alpha = min_over_box_pinned(fn, ov, box_, x, lb_[i], val_);
    set(w_inf_[i], val_.plus(retract(w_inf_[i], delta_inf_[s]), alpha));
    set(delta_inf_[s], alpha);
    if (prune_inf(x))
        push(x);
    if (empty())
        return false;

    fill_box(f);
    alpha = min_over_box_pinned(fn, ov, box_, x, ub_[i], val_);
    set(w_sup_[i], val_.plus(retract(w_sup_[i], delta_sup_[s]), alpha));
    set(delta_sup_[s], alpha);
    if (prune_sup(x))
        push(x);
    return !empty();
}

bool PropState::recheck_all_bounds()
{
    for (std::size_t x = 0; x < lb_.size(); ++x) {
        const VarId v = static_cast<VarId>(x);
        if (prune_inf(v))
            push(v);
        if (empty())
            return false;
        if (prune_sup(v))
            push(v);
        if (empty())
            return false;
    }
    return true;
}

bool PropState::run_bounds(bool zero_ic)
{
    while (!queue_empty()) {
        const VarId x = queue_pop();
        bool flag = false;
        for (const Incidence& inc : inst_->incident(x)) {
            const FunId f = inc.function;
            if (zero_ic || (opts_.backward_checking && fully_assigned(f))) {
                if (project_to_zero(f))
                    flag = true;
                if (empty())
                    return false;
            }
            const std::size_t arity = inst_->function(f).arity();
            for (std::size_t pos = 0; pos < arity; ++pos)
                if (!update_and_prune(f, pos))
                    return false;
        }
        if (flag && !recheck_all_bounds())
            return false;
    }
    return true;
}

std::size_t PropState::value_slot(VarId x, Value v) const
{
    return value_base_[idx(x)] + static_cast<std::size_t>(v - inst_->domain(x).lo);
}

void PropState::delete_value(VarId x, Value v)
{
    const std::size_t i = idx(x);
    set(alive_[value_slot(x, v)], 0);
    set(count_[i], count_[i] - 1);
    ++stats_.deletions;
    if (opts_.trace)
        trace_.push_back({TraceEvent::Kind::delete_value, x, v, unary_[value_slot(x, v)]});
    if (count_[i] == 0) {
        set(lb_[i], ub_[i] + 1);
        fail();
        return;
    }
    if (v == lb_[i]) {
        Value w = v + 1;
        while (!alive_[value_slot(x, w)])
            ++w;
        set(lb_[i], w);
    }
    if (v == ub_[i]) {
        Value w = v - 1;
        while (!alive_[value_slot(x, w)])
            --w;
        set(ub_[i], w);
    }
}

bool PropState::project_unary(VarId x)
{
    require_mode(PropMode::arc_star, "project_unary");
    const std::size_t i = idx(x);
    if (empty() || count_[i] == 0)
        return false;
    Cost best = kInfiniteCost;
    for (Value v = lb_[i]; v <= ub_[i]; ++v) {
        const std::size_t s = value_slot(x, v);
        if (alive_[s])
            best = std::min(best, val_.clamp(unary_[s]));
    }
    if (best == 0)
        return false;
    ++stats_.projections;
    if (opts_.trace)
        trace_.push_back({TraceEvent::Kind::project_unary, x, 0, best});
    set(w_zero_, val_.plus(w_zero_, best));
    if (val_.is_top(best) || val_.is_top(w_zero_)) {
        fail();
        return true;
    }
    for (Value v = lb_[i]; v <= ub_[i]; ++v) {
        const std::size_t s = value_slot(x, v);
        if (alive_[s])
            set(unary_[s], val_.minus(val_.clamp(unary_[s]), best));
    }
    return true;
}

bool PropState::project_binary(VarId xi, Value vi, FunId f)
{
    require_mode(PropMode::arc_star, "project_binary");
    const CostFunction& fn = inst_->function(f);
    if (fn.arity() != 2)
        throw ContractError("project_binary requires a binary function, got arity " + std::to_string(fn.arity()));
    const auto pos = fn.position(xi);
    if (!pos)
        throw ContractError("variable " + std::to_string(xi) + " is not in the scope of function " + std::to_string(f));
    if (!is_live(xi, vi))
        throw ContractError("value " + std::to_string(vi) + " of variable " + std::to_string(xi) + " is not live");
    const std::size_t p = *pos;
    const VarId xj = fn.scope()[1 - p];
    const std::size_t j = idx(xj);
    FunctionOverlay& ov = overlays_[static_cast<std::size_t>(f)];

    Cost best = kInfiniteCost;
    for (Value vj = lb_[j]; vj <= ub_[j] && best > 0; ++vj) {
        if (!alive_[value_slot(xj, vj)])
            continue;
        ++ov.evals;
        best = std::min(best, p == 0 ? binary_cost(f, vi, vj) : binary_cost(f, vj, vi));
    }
    if (best == 0)
        return false;
    ++stats_.projections;
    if (opts_.trace)
        trace_.push_back({TraceEvent::Kind::project_binary, xi, vi, best});
    Cost& u = unary_[value_slot(xi, vi)];
    set(u, val_.plus(val_.clamp(u), best));
    if (!val_.is_top(best)) {
        const Interval d0 = inst_->domain(fn.scope()[0]);
        std::size_t s = offset_base_[static_cast<std::size_t>(f)];
        if (p == 0)
            s += static_cast<std::size_t>(vi - d0.lo);
        else
            s += d0.size() + static_cast<std::size_t>(vi - inst_->domain(xi).lo);
        set(offsets_[s], offsets_[s] + best);
    }
    return true;
}

bool PropState::nc_prune(VarId x)
{
    const std::size_t i = idx(x);
    bool deleted = false;
    for (Value v = lb_[i]; v <= ub_[i] && !empty(); ++v) {
        const std::size_t s = value_slot(x, v);
        if (alive_[s] && val_.is_top(val_.plus(w_zero_, val_.clamp(unary_[s])))) {
            delete_value(x, v);
            deleted = true;
        }
    }
    if (deleted)
        push(x);
    return !empty();
}

bool PropState::nc_all(bool& any_deleted)
{
    any_deleted = false;
    for (std::size_t x = 0; x < lb_.size(); ++x) {
        const auto before = count_[x];
        if (!nc_prune(static_cast<VarId>(x)))
            return false;
        any_deleted = any_deleted || count_[x] != before;
    }
    return true;
}

bool PropState::run_nc()
{
    bool ignored = false;
    while (!queue_empty()) {
        const VarId x = queue_pop();
        const Cost before = w_zero_;
        if (opts_.backward_checking)
            for (const Incidence& inc : inst_->incident(x)) {
                if (fully_assigned(inc.function))
                    project_to_zero(inc.function);
                if (empty())
                    return false;
            }
        project_unary(x);
        if (empty())
            return false;
        if (w_zero_ != before) {
            if (!nc_all(ignored))
                return false;
        }
        else if (!nc_prune(x))
            return false;
    }
    return true;
}

bool PropState::run_ac()
{
    bool ignored = false;
    while (!queue_empty()) {
        const VarId x = queue_pop();
        const Cost before = w_zero_;
        for (const Incidence& inc : inst_->incident(x)) {
            const FunId f = inc.function;
            if (absorbed(f))
                continue;
            const CostFunction& fn = inst_->function(f);
            const VarId y = fn.scope()[1 - inc.position];
            const std::size_t j = idx(y);
            for (Value vy = lb_[j]; vy <= ub_[j]; ++vy)
                if (alive_[value_slot(y, vy)])
                    project_binary(y, vy, f);
            project_unary(y);
            if (empty() || !nc_prune(y))
                return false;
        }
        project_unary(x);
        if (empty() || !nc_prune(x))
            return false;
        if (w_zero_ != before && !nc_all(ignored))
            return false;
    }
    return true;
}

void PropState::restrict_domain(VarId x, Value lo, Value hi)
{
    if (empty())
        return;
    const std::size_t i = idx(x);
    const Value new_lo = std::max(lo, lb_[i]);
    const Value new_hi = std::min(hi, ub_[i]);
    if (new_lo == lb_[i] && new_hi == ub_[i])
        return;
    if (mode() == PropMode::arc_star) {
        for (Value v = lb_[i]; v <= ub_[i] && !empty(); ++v)
            if ((v < new_lo || v > new_hi) && alive_[value_slot(x, v)])
                delete_value(x, v);
    }
    else {
        if (new_lo != lb_[i]) {
            set(lb_[i], new_lo);
            reset_inf_row(x);
        }
        if (new_hi != ub_[i]) {
            set(ub_[i], new_hi);
            reset_sup_row(x);
        }
        if (new_lo > new_hi)
            fail();
    }
    push(x);
}

void PropState::check_arities(Consistency c) const
{
    if (c != Consistency::ac)
        return;
    for (std::size_t f = 0; f < inst_->num_functions(); ++f)
        if (inst_->functions()[f].arity() > 2)
            throw ContractError("AC* enforcement is defined for unary and binary functions only; function " +
                                std::to_string(f) + " has arity " + std::to_string(inst_->functions()[f].arity()));
}

ConsistencyReport PropState::enforce(Consistency c)
{
    const bool bounds_kind = c == Consistency::bac || c == Consistency::bac0;
    require_mode(bounds_kind ? PropMode::bounds : PropMode::arc_star, ("enforce " + to_string(c)).c_str());
    check_arities(c);
    stats_ = {};
    trace_.clear();
    queue_clear();
    if (bounds_kind)
        reset_bound_caches();
    for (std::size_t x = 0; x < lb_.size(); ++x)
        push(static_cast<VarId>(x));
    if (!empty()) {
        if (bounds_kind)
            run_bounds(c == Consistency::bac0);
        else if (run_nc() && c == Consistency::ac) {
            for (std::size_t x = 0; x < lb_.size(); ++x)
                push(static_cast<VarId>(x));
            run_ac();
        }
    }
    queue_clear();
    return report();
}

ConsistencyReport PropState::enforce_nc() { return enforce(Consistency::nc); }
ConsistencyReport PropState::enforce_ac_star() { return enforce(Consistency::ac); }
ConsistencyReport PropState::enforce_bac() { return enforce(Consistency::bac); }
ConsistencyReport PropState::enforce_bac_zero() { return enforce(Consistency::bac0); }

bool PropState::propagate(Consistency c)
{
    const bool bounds_kind = c == Consistency::bac || c == Consistency::bac0;
    require_mode(bounds_kind ? PropMode::bounds : PropMode::arc_star, ("propagate " + to_string(c)).c_str());
    check_arities(c);
    bool ok = !empty();
    if (ok && val_.is_top(w_zero_)) {
        fail();
        ok = false;
    }
    if (ok) {
        if (bounds_kind)
            ok = recheck_all_bounds() && run_bounds(c == Consistency::bac0);
        else {
            bool ignored = false;
            ok = nc_all(ignored) && (c == Consistency::ac ? run_ac() : run_nc());
        }
    }
    queue_clear();
    return ok && !empty();
}

Cost PropState::residual_cost(std::span<const Value> full) const
{
    if (full.size() != lb_.size())
        throw ContractError("residual_cost needs a value for every variable");
    for (std::size_t x = 0; x < full.size(); ++x)
        if (!is_live(static_cast<VarId>(x), full[x]))
            throw ContractError("value " + std::to_string(full[x]) + " of variable " + std::to_string(x) +
                                " is not in the current domain");
    Cost c = w_zero_;
    if (mode() == PropMode::arc_star)
        for (std::size_t x = 0; x < full.size(); ++x)
            c = val_.plus(c, val_.clamp(unary_[value_slot(static_cast<VarId>(x), full[x])]));
    std::vector<Value> t;
    for (std::size_t f = 0; f < inst_->num_functions(); ++f) {
        if (absorbed_[f])
            continue;
        const CostFunction& fn = inst_->functions()[f];
        t.resize(fn.arity());
        restrict_tuple(full, fn.scope(), t);
        if (mode() == PropMode::arc_star && fn.arity() == 2)
            c = val_.plus(c, binary_cost(static_cast<FunId>(f), t[0], t[1]));
        else
            c = val_.plus(c, effective_cost(fn, overlays_[f].delta_shift, t, val_));
    }
    return c;
}

std::uint64_t PropState::fingerprint() const
{
    std::uint64_t h = 1469598103934665603ull;
    auto mix = [&](std::int64_t v) {
        auto u = static_cast<std::uint64_t>(v);
        for (int b = 0; b < 8; ++b) {
            h ^= (u >> (8 * b)) & 0xff;
            h *= 1099511628211ull;
        }
    };
    mix(empty_);
    for (std::size_t x = 0; x < lb_.size(); ++x) {
        mix(lb_[x]);
        mix(ub_[x]);
    }
    for (auto a : alive_)
        mix(a);
    mix(w_zero_);
    for (const auto& ov : overlays_)
        mix(ov.delta_shift);
    return h;
}

std::size_t PropState::state_bytes() const
{
    auto bytes = [](const auto& vec) { return vec.capacity() * sizeof(vec[0]); };
    return sizeof(*this) + bytes(lb_) + bytes(ub_) + bytes(w_inf_) + bytes(w_sup_) + bytes(fun_base_) +
           bytes(delta_inf_) + bytes(delta_sup_) + bytes(overlays_) + bytes(absorbed_) + bytes(value_base_) +
           bytes(alive_) + bytes(unary_) + bytes(count_) + bytes(offset_base_) + bytes(offsets_) + bytes(queue_) +
           bytes(queued_) + bytes(box_);
}

ConsistencyReport PropState::report() const
{
    ConsistencyReport r;
    r.empty = empty();
    r.w_zero_final = w_zero_;
    // A wipeout anywhere means no tuple survives, so every domain is reported empty.
    r.domains.reserve(lb_.size());
    for (std::size_t x = 0; x < lb_.size(); ++x)
        r.domains.push_back(r.empty ? Domain::make_empty() : domain(static_cast<VarId>(x)));
    r.deletions = stats_.deletions;
    r.projections = stats_.projections;
    r.queue_pops = stats_.queue_pops;
    r.eval_counts.reserve(overlays_.size());
    for (const auto& ov : overlays_)
        r.eval_counts.push_back(ov.evals);
    return r;
}

} // namespace bac
