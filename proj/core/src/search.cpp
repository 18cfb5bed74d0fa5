#include <bac/search.hpp>

#include <chrono>

namespace bac {

std::string to_string(Branching b) { return b == Branching::dichotomic ? "dichotomic" : "enumerate"; }

std::string to_string(VarOrder o) { return o == VarOrder::min_domain ? "min_domain" : "lex"; }

std::string to_string(SearchStatus s)
{
    switch (s) {
    case SearchStatus::optimal: return "optimal";
    case SearchStatus::infeasible: return "infeasible";
    case SearchStatus::limit: return "limit";
    }
    return "?";
}

Branching parse_branching(const std::string& s)
{
    if (s == "dichotomic")
        return Branching::dichotomic;
    if (s == "enumerate")
        return Branching::enumerate;
    throw ContractError("unknown branching '" + s + "' (expected dichotomic or enumerate)");
}

VarOrder parse_var_order(const std::string& s)
{
    if (s == "min_domain")
        return VarOrder::min_domain;
    if (s == "lex")
        return VarOrder::lex;
    throw ContractError("unknown variable order '" + s + "' (expected min_domain or lex)");
}

namespace {

class Search
{
public:
    Search(const Instance& inst, const SearchOptions& opts) :
        inst_(inst),
        opts_(opts),
        st_(inst, make_prop_options(opts)),
        start_(std::chrono::steady_clock::now())
    {
    }

    SearchResult run()
    {
        SearchResult& r = result_;
        const Cost top0 = st_.valuation().top();
        r.fingerprint_before = st_.fingerprint();
        if (opts_.initial_ub && *opts_.initial_ub < top0) {
            if (*opts_.initial_ub < 1)
                throw ContractError("initial upper bound must be at least 1");
            st_.set_top(*opts_.initial_ub);
        }
        r.initial_top = st_.valuation().top();

        if (opts_.branching == Branching::enumerate)
            for (std::size_t x = 0; x < inst_.num_variables(); ++x)
                if (inst_.domain(static_cast<VarId>(x)).size() > opts_.ac_domain_cap)
                    throw RefusedError("enumerate branching refused: variable " + std::to_string(x) +
                                       " exceeds the domain cap");

        st_.set_trailing(true);
        const std::size_t root = st_.trail_mark();
        if (!st_.empty() && !st_.enforce(opts_.consistency).empty)
            dfs();
        else
            ++r.nodes;
        st_.undo(root);
        st_.set_trailing(false);
        st_.set_top(top0);
        r.fingerprint_after = st_.fingerprint();

        if (limited_)
            r.status = SearchStatus::limit;
        else
            r.status = r.best_cost ? SearchStatus::optimal : SearchStatus::infeasible;
        return r;
    }

private:
    static PropOptions make_prop_options(const SearchOptions& o)
    {
        PropOptions p;
        p.mode = (o.consistency == Consistency::nc || o.consistency == Consistency::ac) ? PropMode::arc_star
                                                                                          : PropMode::bounds;
        p.ac_domain_cap = o.ac_domain_cap;
        p.backward_checking = true;
        return p;
    }

    bool out_of_budget()
    {
        if (opts_.node_limit && result_.nodes >= *opts_.node_limit)
            return true;
        if (opts_.time_limit_s) {
            const std::chrono::duration<double> used = std::chrono::steady_clock::now() - start_;
            if (used.count() >= *opts_.time_limit_s)
                return true;
        }
        return false;
    }

    VarId choose() const
    {
        VarId best = -1;
        std::uint64_t best_size = 0;
        for (std::size_t x = 0; x < inst_.num_variables(); ++x) {
            const VarId v = static_cast<VarId>(x);
            const std::uint64_t size = st_.domain_size(v);
            if (size <= 1)
                continue;
            if (opts_.var_order == VarOrder::lex)
                return v;
            if (best < 0 || size < best_size) {
                best = v;
                best_size = size;
            }
        }
        return best;
    }

    void leaf()
    {
        std::vector<Value> t(inst_.num_variables());
        for (std::size_t x = 0; x < t.size(); ++x)
            t[x] = st_.bounds(static_cast<VarId>(x)).lo;
        const Cost c = total_cost(inst_, t);
        if (c >= st_.valuation().top()) {
            ++result_.backtracks;
            return;
        }
        result_.best_cost = c;
        result_.best_assignment = std::move(t);
        result_.incumbents.push_back(c);
        if (c == 0)
            proven_ = true;
        else
            st_.set_top(c);
    }

    void branch(VarId x, Value lo, Value hi)
    {
        if (limited_ || proven_)
            return;
        const std::size_t mark = st_.trail_mark();
        st_.restrict_domain(x, lo, hi);
        if (st_.propagate(opts_.consistency))
            dfs();
        else {
            ++result_.nodes;
            ++result_.backtracks;
        }
        st_.undo(mark);
    }

    void dfs()
    {
        if (out_of_budget()) {
            limited_ = true;
            return;
        }
        ++result_.nodes;
        const VarId x = choose();
        if (x < 0) {
            leaf();
            return;
        }
        const Interval b = st_.bounds(x);
        if (opts_.branching == Branching::dichotomic) {
            const Value mid = b.lo + (b.hi - b.lo) / 2;
            branch(x, b.lo, mid);
            branch(x, mid + 1, b.hi);
        }
        else {
            for (Value v = b.lo; v <= b.hi; ++v)
                if (st_.is_live(x, v))
                    branch(x, v, v);
        }
    }

    const Instance& inst_;
    const SearchOptions& opts_;
    PropState st_;
    std::chrono::steady_clock::time_point start_;
    SearchResult result_;
    bool limited_ = false;
    bool proven_ = false;
};

} // namespace

SearchResult solve(const Instance& inst, const SearchOptions& opts)
{
    Search s(inst, opts);
    return s.run();
}

} // namespace bac
