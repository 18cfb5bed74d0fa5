#pragma once

#include <bac/propagation.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace bac {

enum class Branching
{
    dichotomic,
    enumerate
};

enum class VarOrder
{
    min_domain,
    lex
};

enum class SearchStatus
{
    optimal,
    infeasible,
    limit
};

std::string to_string(Branching b);
std::string to_string(VarOrder o);
std::string to_string(SearchStatus s);
Branching parse_branching(const std::string& s);
VarOrder parse_var_order(const std::string& s);

struct SearchOptions
{
    Consistency consistency = Consistency::bac0;
    /// Only assignments strictly cheaper than this are sought.
    std::optional<Cost> initial_ub;
    std::optional<std::uint64_t> node_limit;
    std::optional<double> time_limit_s;
    Branching branching = Branching::dichotomic;
    VarOrder var_order = VarOrder::min_domain;
    std::uint64_t seed = 0;
    std::uint64_t ac_domain_cap = kDefaultAcDomainCap;
};

struct SearchResult
{
    SearchStatus status = SearchStatus::infeasible;
    std::optional<Cost> best_cost;
    std::vector<Value> best_assignment;
    std::uint64_t nodes = 0;
    /// Failed nodes below the root.
    std::uint64_t backtracks = 0;
    /// Costs of successive incumbents, strictly decreasing.
    std::vector<Cost> incumbents;
    Cost initial_top = 0;
    std::uint64_t fingerprint_before = 0;
    std::uint64_t fingerprint_after = 0;
};

/// Depth-first branch and bound maintaining the chosen consistency at
/// every node. Every retained change is trailed and undone on backtrack.
SearchResult solve(const Instance& inst, const SearchOptions& opts = {});

} // namespace bac
