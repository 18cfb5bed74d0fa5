#include <bac/cli.hpp>

#include <bac/generate.hpp>
#include <bac/io.hpp>
#include <bac/oracle.hpp>
#include <bac/propagation.hpp>
#include <bac/reify.hpp>
#include <bac/search.hpp>

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <chrono>
#include <fstream>
#include <optional>
#include <sstream>

namespace bac::cli {

namespace {

using Json = nlohmann::ordered_json;
using Clock = std::chrono::steady_clock;

Json cost_json(Cost c, const Valuation& v)
{
    if (v.is_infinite() && c == kInfiniteCost)
        return "inf";
    return c;
}

Json domain_json(const Domain& d)
{
    if (d.empty())
        return nullptr;
    return Json::array({d.lb(), d.ub()});
}

Json domains_json(const std::vector<Domain>& ds)
{
    Json arr = Json::array();
    for (const auto& d : ds)
        arr.push_back(domain_json(d));
    return arr;
}

Json holes_json(const std::vector<Domain>& ds)
{
    Json holes = Json::object();
    for (std::size_t x = 0; x < ds.size(); ++x)
        if (!ds[x].removed().empty())
            holes[std::to_string(x)] = Json(std::vector<Value>(ds[x].removed().begin(), ds[x].removed().end()));
    return holes;
}

std::string domain_text(const Domain& d)
{
    if (d.empty())
        return "empty";
    return d.to_string();
}

double elapsed_ms(Clock::time_point start)
{
    return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

void write_trace(const std::vector<TraceEvent>& events, std::ostream& err)
{
    for (const auto& e : events) {
        Json line;
        line["event"] = to_string(e.kind);
        if (e.kind == TraceEvent::Kind::project_zero)
            line["function"] = e.id;
        else
            line["variable"] = e.id;
        line["bound"] = e.value;
        line["amount"] = e.amount;
        err << line.dump() << "\n";
    }
}

void emit(std::ostream& out, const Json& report, bool json, const std::vector<std::string>& text)
{
    if (json) {
        out << report.dump(2) << "\n";
        return;
    }
    for (const auto& line : text)
        out << line << "\n";
}

struct Common
{
    std::string file;
    bool json = false;
    bool timing = false;
};

void add_common(CLI::App* cmd, Common& c)
{
    cmd->add_option("file", c.file, "Instance file")->required();
    cmd->add_flag("--json", c.json, "Print the report as JSON");
    cmd->add_flag("--timing", c.timing, "Include wall-clock time in the report");
}

int cmd_propagate(const Common& c, const std::string& consistency, bool trace, std::ostream& out, std::ostream& err)
{
    const Consistency cons = parse_consistency(consistency);
    const Instance inst = load_instance(c.file);
    const auto start = Clock::now();
    PropOptions opts;
    opts.mode = (cons == Consistency::nc || cons == Consistency::ac) ? PropMode::arc_star : PropMode::bounds;
    opts.trace = trace;
    PropState st(inst, opts);
    const ConsistencyReport r = st.enforce(cons);
    const double ms = elapsed_ms(start);

    const Valuation& v = inst.valuation();
    Json j;
    j["command"] = "propagate";
    j["instance"] = inst.name();
    j["consistency"] = to_string(cons);
    j["empty"] = r.empty;
    j["w0_final"] = cost_json(r.w_zero_final, v);
    j["domains"] = domains_json(r.domains);
    const Json holes = holes_json(r.domains);
    if (!holes.empty())
        j["holes"] = holes;
    j["deletions"] = r.deletions;
    j["projections"] = r.projections;
    j["queue_pops"] = r.queue_pops;
    j["eval_counts"] = r.eval_counts;
    j["delta_shift"] = st.delta_shifts();
    if (c.timing)
        j["wall_ms"] = ms;

    std::vector<std::string> text;
    text.push_back("propagate " + to_string(cons) + " on " + inst.name());
    text.push_back(std::string("empty: ") + (r.empty ? "true" : "false"));
    text.push_back("w0_final: " + v.to_string(r.w_zero_final));
    for (std::size_t x = 0; x < r.domains.size(); ++x)
        text.push_back("x" + std::to_string(x) + ": " + domain_text(r.domains[x]));
    text.push_back("deletions: " + std::to_string(r.deletions) + " projections: " + std::to_string(r.projections) +
                   " queue_pops: " + std::to_string(r.queue_pops));
    if (c.timing)
        text.push_back("wall_ms: " + std::to_string(ms));
    emit(out, j, c.json, text);
    if (trace)
        write_trace(st.trace(), err);
    return r.empty ? exit_empty : exit_ok;
}

struct SolveArgs
{
    std::string consistency = "bac0";
    std::optional<Cost> ub;
    std::optional<std::uint64_t> node_limit;
    std::optional<double> time_limit;
    std::string branching = "dichotomic";
    std::string order = "min_domain";
    std::uint64_t seed = 0;
};

int cmd_solve(const Common& c, const SolveArgs& a, std::ostream& out)
{
    SearchOptions opts;
    opts.consistency = parse_consistency(a.consistency);
    opts.initial_ub = a.ub;
    opts.node_limit = a.node_limit;
    opts.time_limit_s = a.time_limit;
    opts.branching = parse_branching(a.branching);
    opts.var_order = parse_var_order(a.order);
    opts.seed = a.seed;
    const Instance inst = load_instance(c.file);
    const auto start = Clock::now();
    const SearchResult r = solve(inst, opts);
    const double ms = elapsed_ms(start);

    const Valuation& v = inst.valuation();
    Json j;
    j["command"] = "solve";
    j["instance"] = inst.name();
    j["consistency"] = to_string(opts.consistency);
    j["status"] = to_string(r.status);
    j["optimum"] = r.best_cost ? cost_json(*r.best_cost, v) : Json(nullptr);
    j["witness"] = r.best_cost ? Json(r.best_assignment) : Json(nullptr);
    j["incumbents"] = r.incumbents;
    j["nodes"] = r.nodes;
    j["backtracks"] = r.backtracks;
    j["branching"] = to_string(opts.branching);
    j["var_order"] = to_string(opts.var_order);
    if (c.timing)
        j["wall_ms"] = ms;
    j["seed"] = a.seed;

    std::vector<std::string> text;
    text.push_back("solve " + to_string(opts.consistency) + " on " + inst.name());
    text.push_back("status: " + to_string(r.status));
    if (r.best_cost) {
        text.push_back("optimum: " + v.to_string(*r.best_cost));
        std::string w = "witness:";
        for (Value val : r.best_assignment)
            w += " " + std::to_string(val);
        text.push_back(w);
    }
    text.push_back("nodes: " + std::to_string(r.nodes) + " backtracks: " + std::to_string(r.backtracks));
    if (c.timing)
        text.push_back("wall_ms: " + std::to_string(ms));
    emit(out, j, c.json, text);
    return r.status == SearchStatus::infeasible ? exit_empty : exit_ok;
}

struct GenArgs
{
    std::string kind;
    std::string output;
    std::uint64_t seed = 1;
    std::optional<Cost> k;
    RandomParams random;
    SatelliteParams satellite;
    SpacerChainParams chain;
};

int cmd_gen(GenArgs& g, std::ostream& out)
{
    std::optional<Instance> inst;
    if (g.k) {
        g.random.k = *g.k;
        g.chain.k = *g.k;
    }
    if (g.kind == "random") {
        g.random.seed = g.seed;
        inst.emplace(generate_random(g.random));
    }
    else if (g.kind == "satellite") {
        g.satellite.seed = g.seed;
        inst.emplace(generate_satellite(g.satellite));
    }
    else if (g.kind == "spacerchain") {
        g.chain.seed = g.seed;
        inst.emplace(generate_spacer_chain(g.chain));
    }
    else
        throw ContractError("unknown generator '" + g.kind + "' (expected random, satellite or spacerchain)");
    if (g.output.empty())
        out << emit_instance(*inst);
    else
        save_instance(*inst, g.output);
    return exit_ok;
}

bool same_domains(const std::vector<Domain>& engine, const NaiveFixpoint& naive, bool engine_empty)
{
    if (engine_empty || naive.empty)
        return engine_empty == naive.empty;
    for (std::size_t x = 0; x < engine.size(); ++x)
        if (!(engine[x].hull() == naive.domains[x]))
            return false;
    return true;
}

Json interval_list(const std::vector<Interval>& ds, bool empty)
{
    Json arr = Json::array();
    for (const auto& d : ds)
        arr.push_back(empty ? Json(nullptr) : Json::array({d.lo, d.hi}));
    return arr;
}

int cmd_verify(const Common& c, std::uint64_t budget_tuples, std::ostream& out)
{
    const Instance inst = load_instance(c.file);
    const OracleBudget budget{budget_tuples};
    const auto start = Clock::now();
    const Valuation& v = inst.valuation();

    const OptimumResult opt = brute_optimum(inst, budget);
    const NaiveFixpoint nb = naive_bac_fixpoint(inst, budget);
    const NaiveFixpoint nz = naive_bac_zero_fixpoint(inst, budget);

    PropState sb(inst);
    const ConsistencyReport rb = sb.enforce_bac();
    PropState sz(inst);
    const ConsistencyReport rz = sz.enforce_bac_zero();

    const bool bac_agree = same_domains(rb.domains, nb, rb.empty);
    bool bac0_agree = same_domains(rz.domains, nz, rz.empty);
    if (bac0_agree && !rz.empty)
        bac0_agree = rz.w_zero_final == nz.w_zero && sz.delta_shifts() == nz.delta_shift;
    const bool bound_valid = !opt.feasible || rz.empty || rz.w_zero_final <= opt.cost;
    const bool wipe_valid = opt.feasible ? !rz.empty && !rb.empty : true;

    Json solves = Json::object();
    bool solve_agree = true;
    for (Consistency cons : {Consistency::nc, Consistency::ac, Consistency::bac, Consistency::bac0}) {
        bool applicable = true;
        if (cons == Consistency::ac)
            for (const auto& f : inst.functions())
                applicable = applicable && f.arity() <= 2;
        if (cons == Consistency::nc || cons == Consistency::ac)
            for (std::size_t x = 0; x < inst.num_variables(); ++x)
                applicable = applicable && inst.domain(static_cast<VarId>(x)).size() <= kDefaultAcDomainCap;
        if (!applicable) {
            solves[to_string(cons)] = "not applicable";
            continue;
        }
        SearchOptions so;
        so.consistency = cons;
        const SearchResult sr = solve(inst, so);
        const bool agree = opt.feasible ? (sr.best_cost && *sr.best_cost == opt.cost) : !sr.best_cost;
        solve_agree = solve_agree && agree;
        Json s;
        s["optimum"] = sr.best_cost ? cost_json(*sr.best_cost, v) : Json(nullptr);
        s["nodes"] = sr.nodes;
        s["agree"] = agree;
        solves[to_string(cons)] = s;
    }
    const bool all = bac_agree && bac0_agree && bound_valid && wipe_valid && solve_agree;
    const double ms = elapsed_ms(start);

    Json j;
    j["command"] = "verify";
    j["instance"] = inst.name();
    j["feasible"] = opt.feasible;
    j["optimum"] = opt.feasible ? cost_json(opt.cost, v) : Json(nullptr);
    j["witness"] = opt.feasible ? Json(opt.witness) : Json(nullptr);
    j["enumerated"] = opt.enumerated;
    j["naive_bac"] = {{"empty", nb.empty}, {"domains", interval_list(nb.domains, nb.empty)}};
    j["engine_bac"] = {{"empty", rb.empty}, {"domains", domains_json(rb.domains)}};
    j["naive_bac0"] = {{"empty", nz.empty},
                       {"domains", interval_list(nz.domains, nz.empty)},
                       {"w0", cost_json(nz.w_zero, v)},
                       {"delta_shift", nz.delta_shift}};
    j["engine_bac0"] = {{"empty", rz.empty},
                        {"domains", domains_json(rz.domains)},
                        {"w0", cost_json(rz.w_zero_final, v)},
                        {"delta_shift", sz.delta_shifts()}};
    j["solve"] = solves;
    j["agree"] = {{"bac", bac_agree},
                  {"bac0", bac0_agree},
                  {"lower_bound", bound_valid},
                  {"wipeout", wipe_valid},
                  {"solve", solve_agree},
                  {"all", all}};
    if (c.timing)
        j["wall_ms"] = ms;

    std::vector<std::string> text;
    text.push_back("verify " + inst.name());
    text.push_back(opt.feasible ? "optimum: " + v.to_string(opt.cost) : std::string("optimum: infeasible"));
    text.push_back(std::string("bac agree: ") + (bac_agree ? "yes" : "no"));
    text.push_back(std::string("bac0 agree: ") + (bac0_agree ? "yes" : "no") + " (w0 " + v.to_string(rz.w_zero_final) + ")");
    text.push_back(std::string("solve agree: ") + (solve_agree ? "yes" : "no"));
    text.push_back(std::string("verdict: ") + (all ? "all agree" : "DISAGREE"));
    emit(out, j, c.json, text);
    return all ? exit_ok : exit_disagree;
}

Json network_json(const CrispNetwork& net)
{
    Json vars = Json::array();
    for (const auto& v : net.variables)
        vars.push_back({{"name", v.name}, {"domain", Json::array({v.domain.lo, v.domain.hi})}, {"cost", v.is_cost()}});
    Json tables = Json::array();
    for (const auto& t : net.tables) {
        Json scope = Json::array();
        for (std::size_t s : t.scope)
            scope.push_back(net.variables[s].name);
        tables.push_back({{"name", t.name}, {"scope", scope}, {"allowed", t.size()}});
    }
    Json j;
    j["variables"] = vars;
    j["tables"] = tables;
    if (net.sum) {
        Json terms = Json::array();
        for (std::size_t s : net.sum->vars)
            terms.push_back(net.variables[s].name);
        j["sum"] = {{"name", net.sum->name}, {"constant", net.sum->constant}, {"terms", terms}, {"bound", net.sum->bound}};
    }
    else
        j["sum"] = nullptr;
    return j;
}

int cmd_reify(const Common& c, bool compare, std::uint64_t cap, std::ostream& out)
{
    const Instance inst = load_instance(c.file);
    const auto start = Clock::now();
    const CrispNetwork net = reify(inst, cap);
    const CrispBcReport bc = enforce_crisp_bc(net);
    std::optional<StrengthComparison> cmp;
    if (compare)
        cmp = compare_strength(inst, cap);
    const double ms = elapsed_ms(start);

    Json j;
    j["command"] = "reify";
    j["instance"] = inst.name();
    j["network"] = network_json(net);
    Json doms = Json::array();
    for (const auto& d : bc.domains)
        doms.push_back(bc.empty ? Json(nullptr) : Json::array({d.lo, d.hi}));
    j["bc"] = {{"empty", bc.empty}, {"domains", doms}, {"revisions", bc.revisions}};
    if (cmp)
        j["compare"] = {{"bac0_empty", cmp->bac0_empty},
                        {"reified_bc_empty", cmp->reified_bc_empty},
                        {"implication_holds", cmp->implication_holds}};
    if (c.timing)
        j["wall_ms"] = ms;

    std::vector<std::string> text;
    std::istringstream dumped(dump(net));
    for (std::string line; std::getline(dumped, line);)
        text.push_back(line);
    text.push_back(std::string("bounds consistency: ") + (bc.empty ? "empty" : "non-empty"));
    if (cmp) {
        text.push_back(std::string("bac0_empty: ") + (cmp->bac0_empty ? "true" : "false"));
        text.push_back(std::string("reified_bc_empty: ") + (cmp->reified_bc_empty ? "true" : "false"));
        text.push_back(std::string("implication holds: ") + (cmp->implication_holds ? "yes" : "no"));
    }
    emit(out, j, c.json, text);
    if (cmp && !cmp->implication_holds)
        return exit_disagree;
    return exit_ok;
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Bounds arc consistency solver for weighted constraint networks", "bacsolve"};
    app.require_subcommand(1);

    Common prop_c;
    std::string prop_cons = "bac0";
    bool prop_trace = false;
    auto* prop = app.add_subcommand("propagate", "Enforce one local consistency and print the result");
    add_common(prop, prop_c);
    prop->add_option("-c,--consistency", prop_cons, "nc, ac, bac or bac0")->check(CLI::IsMember({"nc", "ac", "bac", "bac0"}));
    prop->add_flag("--trace", prop_trace, "Write deletion and projection events to stderr as JSON lines");

    Common solve_c;
    SolveArgs sa;
    auto* sol = app.add_subcommand("solve", "Branch and bound to optimality");
    add_common(sol, solve_c);
    sol->add_option("-c,--consistency", sa.consistency, "nc, ac, bac or bac0")->check(CLI::IsMember({"nc", "ac", "bac", "bac0"}));
    sol->add_option("--ub", sa.ub, "Initial upper bound (strict)")->check(CLI::PositiveNumber);
    sol->add_option("--node-limit", sa.node_limit, "Maximum number of nodes");
    sol->add_option("--time-limit", sa.time_limit, "Time limit in seconds")->check(CLI::NonNegativeNumber);
    sol->add_option("--branching", sa.branching, "dichotomic or enumerate")->check(CLI::IsMember({"dichotomic", "enumerate"}));
    sol->add_option("--order", sa.order, "min_domain or lex")->check(CLI::IsMember({"min_domain", "lex"}));
    sol->add_option("--seed", sa.seed, "Seed echoed in the report");

    GenArgs ga;
    auto* gen = app.add_subcommand("gen", "Generate an instance file");
    gen->add_option("kind", ga.kind, "random, satellite or spacerchain")->required()->check(CLI::IsMember({"random", "satellite", "spacerchain"}));
    gen->add_option("--seed", ga.seed, "Random seed");
    gen->add_option("-o,--output", ga.output, "Write to a file instead of stdout");
    gen->add_option("--n", ga.random.n, "random: number of variables")->check(CLI::Range(1, 100000));
    gen->add_option("--d", ga.random.d, "random: domain size")->check(CLI::Range(1, 1000000));
    gen->add_option("--e", ga.random.e, "random: number of functions")->check(CLI::Range(0, 1000000));
    gen->add_option("--tightness", ga.random.tightness, "random: probability of a listed cost")->check(CLI::Range(0.0, 1.0));
    gen->add_option("--max-cost", ga.random.max_cost, "random: largest listed cost")->check(CLI::PositiveNumber);
    gen->add_option("--k", ga.k, "random, spacerchain: top cost")->check(CLI::PositiveNumber);
    gen->add_option("--max-arity", ga.random.max_arity, "random: largest arity")->check(CLI::Range(1, 8));
    gen->add_flag("--mixed", ga.random.mixed, "random: mix intensional kinds");
    gen->add_option("--N", ga.satellite.photos, "satellite: number of photos")->check(CLI::Range(2, 200));
    gen->add_option("--window", ga.satellite.window, "satellite: window width")->check(CLI::Range(1, 1000));
    gen->add_option("--horizon", ga.satellite.horizon, "satellite: latest window start")->check(CLI::Range(1, 1000000));
    gen->add_option("--m", ga.chain.m, "spacerchain: number of positions")->check(CLI::Range(2, 100000));
    gen->add_option("--L", ga.chain.L, "spacerchain: largest position")->check(CLI::Range(Value{1}, Value{1} << 40));
    gen->add_option("--penalties", ga.chain.penalties, "spacerchain: unary penalties per position")->check(CLI::Range(0, 1000));

    Common ver_c;
    std::uint64_t ver_budget = OracleBudget{}.max_tuples;
    auto* ver = app.add_subcommand("verify", "Compare the engines with brute-force oracles");
    add_common(ver, ver_c);
    ver->add_option("--budget", ver_budget, "Largest number of tuples an oracle may enumerate")->check(CLI::PositiveNumber);

    Common rei_c;
    bool rei_compare = false;
    std::uint64_t rei_cap = kDefaultReifyCap;
    auto* rei = app.add_subcommand("reify", "Build the crisp network with cost variables");
    add_common(rei, rei_c);
    rei->add_flag("--compare", rei_compare, "Compare BAC0 with bounds consistency on the crisp network");
    rei->add_option("--cap", rei_cap, "Largest number of tuples per function")->check(CLI::PositiveNumber);

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    }
    catch (const CLI::ParseError& e) {
        return app.exit(e, out, err) == 0 ? exit_ok : exit_usage;
    }

    try {
        if (prop->parsed())
            return cmd_propagate(prop_c, prop_cons, prop_trace, out, err);
        if (sol->parsed())
            return cmd_solve(solve_c, sa, out);
        if (gen->parsed())
            return cmd_gen(ga, out);
        if (ver->parsed())
            return cmd_verify(ver_c, ver_budget, out);
        if (rei->parsed())
            return cmd_reify(rei_c, rei_compare, rei_cap, out);
    }
    catch (const ParseError& e) {
        err << "error: " << e.what() << "\n";
        return exit_usage;
    }
    catch (const RefusedError& e) {
        err << "refused: " << e.what() << "\n";
        return exit_refused;
    }
    catch (const ContractError& e) {
        err << "error: " << e.what() << "\n";
        return exit_usage;
    }
    return exit_usage;
}

} // namespace bac::cli
