#pragma once

#include <bac/instance.hpp>

#include <cstdint>
#include <random>
#include <span>
#include <string>
#include <vector>

namespace bac {

enum class Consistency
{
    nc,
    ac,
    bac,
    bac0
};

std::string to_string(Consistency c);
Consistency parse_consistency(const std::string& s);

/// bounds: interval domains and O(n + er) state; arc_star: small domains with
/// per-value unary costs and binary projection offsets.
enum class PropMode
{
    bounds,
    arc_star
};

inline constexpr std::uint64_t kDefaultAcDomainCap = 65536;

struct PropOptions
{
    PropMode mode = PropMode::bounds;
    std::uint64_t ac_domain_cap = kDefaultAcDomainCap;
    /// Move the cost of fully assigned functions to w0 (branch-and-bound use).
    bool backward_checking = false;
    bool trace = false;
};

struct TraceEvent
{
    enum class Kind
    {
        delete_inf,
        delete_sup,
        delete_value,
        project_zero,
        project_unary,
        project_binary
    };
    Kind kind;
    /// Variable id for deletions and unary/binary projections, function id for project_zero.
    std::int64_t id;
    Value value;
    Cost amount;
};

std::string to_string(TraceEvent::Kind k);

struct PropStats
{
    std::uint64_t deletions = 0;
    std::uint64_t projections = 0;
    std::uint64_t queue_pops = 0;
};

struct ConsistencyReport
{
    bool empty = false;
    Cost w_zero_final = 0;
    std::vector<Domain> domains;
    std::uint64_t deletions = 0;
    std::uint64_t projections = 0;
    std::uint64_t queue_pops = 0;
    std::vector<std::uint64_t> eval_counts;
};

/// Mutable propagation state over one shared, immutable Instance.
///
/// All fields that change during enforcement are 64-bit slots so that a
/// single undo trail can restore them; trailing is off unless enabled.
class PropState
{
public:
    explicit PropState(const Instance& inst, PropOptions opts = {});

    PropState(const PropState&) = delete;
    PropState& operator=(const PropState&) = delete;

    const Instance& instance() const noexcept { return *inst_; }
    const Valuation& valuation() const noexcept { return val_; }
    const PropOptions& options() const noexcept { return opts_; }
    PropMode mode() const noexcept { return opts_.mode; }

    /// Replaces the top cost. Lowering is always valid; raising is only
    /// meaningful after undoing to a state computed under the larger top.
    void set_top(Cost k);

    bool empty() const noexcept { return empty_ != 0; }
    Cost w_zero() const noexcept { return w_zero_; }
    Interval bounds(VarId x) const;
    Domain domain(VarId x) const;
    std::uint64_t domain_size(VarId x) const;
    bool is_live(VarId x, Value v) const;
    bool all_assigned() const;

    Cost w_inf(VarId x) const { return w_inf_[idx(x)]; }
    Cost w_sup(VarId x) const { return w_sup_[idx(x)]; }
    Cost delta_inf(FunId f, std::size_t pos) const { return delta_inf_[slot(f, pos)]; }
    Cost delta_sup(FunId f, std::size_t pos) const { return delta_sup_[slot(f, pos)]; }
    Cost delta_shift(FunId f) const { return overlays_[static_cast<std::size_t>(f)].delta_shift; }
    std::vector<Cost> delta_shifts() const;
    std::uint64_t evals(FunId f) const { return overlays_[static_cast<std::size_t>(f)].evals; }
    std::uint64_t total_evals() const;
    /// Unary cost of a live value (arc_star mode).
    Cost unary_cost(VarId x, Value v) const;
    /// Effective binary cost including projection offsets (arc_star mode).
    Cost binary_cost(FunId f, Value v0, Value v1) const;
    bool absorbed(FunId f) const { return absorbed_[static_cast<std::size_t>(f)] != 0; }

    const PropStats& stats() const noexcept { return stats_; }
    const std::vector<TraceEvent>& trace() const noexcept { return trace_; }

    // Bound pruning.
    bool prune_inf(VarId x);
    bool prune_sup(VarId x);

    // Projection of a function's minimum to w0 (empty-set inverse consistency).
    bool project_to_zero(FunId f);

    // Arc-consistency reference mode primitives.
    bool project_unary(VarId x);
    bool project_binary(VarId xi, Value vi, FunId f);

    /// Full enforcement from scratch: caches zeroed, every variable queued.
    ConsistencyReport enforce(Consistency c);
    ConsistencyReport enforce_nc();
    ConsistencyReport enforce_ac_star();
    ConsistencyReport enforce_bac();
    ConsistencyReport enforce_bac_zero();

    /// Incremental enforcement from the current queue, keeping caches.
    /// Rechecks every bound (or value) first, which accounts for a lowered top.
    bool propagate(Consistency c);

    /// Search support: narrow a domain and queue the variable.
    void restrict_domain(VarId x, Value lo, Value hi);
    void push(VarId x);

    void set_trailing(bool on) noexcept { trailing_ = on; }
    std::size_t trail_mark() const noexcept { return trail_.size(); }
    void undo(std::size_t mark);
    std::size_t trail_size() const noexcept { return trail_.size(); }

    /// Pop a uniformly random queued variable instead of FIFO order.
    void set_pop_rng(std::mt19937_64* rng) noexcept { pop_rng_ = rng; }

    /// w0 (+) residual unary and function costs of a full assignment inside
    /// the current domains. Equals the original total cost.
    Cost residual_cost(std::span<const Value> full) const;

    /// Hash of domains, w0 and projected shifts.
    std::uint64_t fingerprint() const;

    /// Bytes held by propagation structures (excludes instance, trail and trace).
    std::size_t state_bytes() const;

    ConsistencyReport report() const;

private:
    std::size_t idx(VarId x) const { return static_cast<std::size_t>(x); }
    std::size_t slot(FunId f, std::size_t pos) const { return fun_base_[static_cast<std::size_t>(f)] + pos; }

    void save(std::int64_t& cell);
    void set(std::int64_t& cell, std::int64_t value);
    void require_mode(PropMode m, const char* op) const;
    void fail();

    // queue
    void queue_clear();
    bool queue_empty() const noexcept { return queue_count_ == 0; }
    VarId queue_pop();

    // bounds-mode machinery
    void reset_bound_caches();
    void fill_box(FunId f);
    void reset_inf_row(VarId x);
    void reset_sup_row(VarId x);
    bool update_and_prune(FunId f, std::size_t pos);
    bool recheck_all_bounds();
    bool run_bounds(bool zero_ic);
    bool fully_assigned(FunId f) const;

    // arc_star machinery
    std::size_t value_slot(VarId x, Value v) const;
    void delete_value(VarId x, Value v);
    bool nc_prune(VarId x);
    bool nc_all(bool& any_deleted);
    bool run_nc();
    bool run_ac();
    void check_arities(Consistency c) const;

    const Instance* inst_;
    PropOptions opts_;
    Valuation val_;

    std::vector<std::int64_t> lb_;
    std::vector<std::int64_t> ub_;
    std::int64_t w_zero_ = 0;
    std::int64_t empty_ = 0;

    std::vector<std::int64_t> w_inf_;
    std::vector<std::int64_t> w_sup_;
    std::vector<std::size_t> fun_base_;
    std::vector<std::int64_t> delta_inf_;
    std::vector<std::int64_t> delta_sup_;
    std::vector<FunctionOverlay> overlays_;
    std::vector<std::uint8_t> absorbed_;

    // arc_star overlays
    std::vector<std::size_t> value_base_;
    std::vector<std::int64_t> alive_;
    std::vector<std::int64_t> unary_;
    std::vector<std::int64_t> count_;
    std::vector<std::size_t> offset_base_;
    std::vector<std::int64_t> offsets_;

    std::vector<VarId> queue_;
    std::vector<std::uint8_t> queued_;
    std::size_t queue_head_ = 0;
    std::size_t queue_count_ = 0;
    std::mt19937_64* pop_rng_ = nullptr;

    std::vector<Interval> box_;

    struct TrailEntry
    {
        std::int64_t* cell;
        std::int64_t old;
    };
    bool trailing_ = false;
    std::vector<TrailEntry> trail_;

    PropStats stats_;
    std::vector<TraceEvent> trace_;
};

} // namespace bac
