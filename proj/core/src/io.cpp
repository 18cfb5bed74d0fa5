#include <bac/io.hpp>

#include <charconv>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <vector>

namespace bac {

ParseError::ParseError(const std::string& source, std::size_t line, const std::string& message) :
    std::runtime_error(source + ":" + std::to_string(line) + ": " + message),
    line_(line),
    message_(message)
{
}

namespace {

constexpr std::uint64_t kTagValidationCap = 512;
constexpr Value kLinPlusGrid = 32;

std::vector<std::string> split(const std::string& line)
{
    std::vector<std::string> out;
    std::istringstream is(line.substr(0, line.find('#')));
    std::string tok;
    while (is >> tok)
        out.push_back(tok);
    return out;
}

class Parser
{
public:
    Parser(std::istream& in, std::string source) : in_(in), source_(std::move(source)) {}

    Instance run()
    {
        std::string raw;
        while (next_line(raw)) {
            auto tok = split(raw);
            if (tok.empty())
                continue;
            directive(tok);
        }
        if (!name_)
            fail("missing 'wcsp' header");
        if (!top_)
            fail("missing 'k' directive");
        std::vector<Interval> domains;
        for (std::size_t i = 0; i < vars_.size(); ++i) {
            auto it = vars_.find(static_cast<VarId>(i));
            if (it == vars_.end())
                fail("variable ids must be dense: id " + std::to_string(i) + " is missing");
            domains.push_back(it->second);
        }
        try {
            return make_instance(*name_, *top_, std::move(domains), std::move(functions_), w_zero_);
        }
        catch (const ContractError& e) {
            fail(e.what());
        }
    }

private:
    bool next_line(std::string& out)
    {
        if (!std::getline(in_, out))
            return false;
        ++line_;
        return true;
    }

    [[noreturn]] void fail(const std::string& msg) const { throw ParseError(source_, line_, msg); }

    Value integer(const std::string& tok, const char* what) const
    {
        Value v = 0;
        const char* end = tok.data() + tok.size();
        auto [ptr, ec] = std::from_chars(tok.data(), end, v);
        if (ec != std::errc() || ptr != end)
            fail(std::string("expected an integer for ") + what + ", got '" + tok + "'");
        return v;
    }

    Cost cost(const std::string& tok, const char* what) const
    {
        const Value c = integer(tok, what);
        if (c < 0 || c > *top_)
            fail(std::string(what) + " " + tok + " outside [0, k]");
        return c;
    }

    VarId var_ref(const std::string& tok) const
    {
        const Value id = integer(tok, "variable id");
        if (id < 0 || !vars_.count(static_cast<VarId>(id)))
            fail("unknown variable " + tok);
        return static_cast<VarId>(id);
    }

    void arity(const std::vector<std::string>& tok, std::size_t lo, std::size_t hi) const
    {
        if (tok.size() < lo || tok.size() > hi)
            fail("wrong number of fields for '" + tok[0] + (tok.size() > 1 && tok[0] == "fun" ? " " + tok[1] : "") + "'");
    }

    void need_k(const std::string& what) const
    {
        if (!top_)
            fail("'" + what + "' before the 'k' directive");
    }

    void directive(const std::vector<std::string>& tok)
    {
        const std::string& d = tok[0];
        if (!name_ && d != "wcsp")
            fail("the first directive must be 'wcsp <name>'");
        if (d != "tag")
            last_ext_ = std::nullopt;

        if (d == "wcsp") {
            if (name_)
                fail("duplicate 'wcsp' header");
            arity(tok, 2, 2);
            name_ = tok[1];
        }
        else if (d == "k") {
            if (top_)
                fail("duplicate 'k' directive");
            arity(tok, 2, 2);
            if (tok[1] == "inf")
                top_ = kInfiniteCost;
            else {
                const Value k = integer(tok[1], "k");
                if (k < 1 || k == kInfiniteCost)
                    fail("k must be a positive integer or inf");
                top_ = k;
            }
        }
        else if (d == "w0") {
            need_k(d);
            if (seen_w0_)
                fail("duplicate 'w0' directive");
            arity(tok, 2, 2);
            if (tok[1] == "inf")
                fail("'inf' is only valid for k");
            w_zero_ = cost(tok[1], "w0");
            seen_w0_ = true;
        }
        else if (d == "var") {
            arity(tok, 4, 4);
            const Value id = integer(tok[1], "variable id");
            const Value lb = integer(tok[2], "lower bound");
            const Value ub = integer(tok[3], "upper bound");
            if (id < 0 || id > std::numeric_limits<VarId>::max())
                fail("variable id " + tok[1] + " out of range");
            if (vars_.count(static_cast<VarId>(id)))
                fail("duplicate variable id " + tok[1]);
            if (lb > ub)
                fail("empty domain [" + tok[2] + ", " + tok[3] + "]");
            vars_[static_cast<VarId>(id)] = Interval{lb, ub};
        }
        else if (d == "fun") {
            need_k(d);
            if (tok.size() < 2)
                fail("'fun' needs a kind");
            function(tok);
        }
        else if (d == "tag") {
            tag(tok);
        }
        else
            fail("unknown directive '" + d + "'");
    }

    void function(const std::vector<std::string>& tok)
    {
        const std::string& kind = tok[1];
        if (kind == "ext") {
            if (tok.size() < 3)
                fail("'fun ext' needs an arity");
            const Value r = integer(tok[2], "arity");
            if (r < 1 || static_cast<std::size_t>(r) + 5 != tok.size())
                fail("'fun ext <r> <ids...> <default> <t>' field count mismatch");
            std::vector<VarId> scope;
            for (Value p = 0; p < r; ++p)
                scope.push_back(var_ref(tok[3 + static_cast<std::size_t>(p)]));
            Extensional e;
            e.default_cost = cost(tok[3 + static_cast<std::size_t>(r)], "default cost");
            const Value t = integer(tok[4 + static_cast<std::size_t>(r)], "tuple count");
            if (t < 0)
                fail("negative tuple count");
            e.table = TupleTable(static_cast<std::size_t>(r));
            std::vector<Value> tuple(static_cast<std::size_t>(r));
            for (Value i = 0; i < t; ++i) {
                std::string raw;
                std::vector<std::string> row;
                while (row.empty()) {
                    if (!next_line(raw))
                        fail("expected " + std::to_string(t - i) + " more tuple lines");
                    row = split(raw);
                }
                if (row.size() != static_cast<std::size_t>(r) + 1)
                    fail("tuple line needs " + std::to_string(r) + " values and a cost");
                for (std::size_t p = 0; p < tuple.size(); ++p) {
                    tuple[p] = integer(row[p], "tuple value");
                    const Interval dom = vars_.at(scope[p]);
                    if (!dom.contains(tuple[p]))
                        fail("tuple value " + row[p] + " outside the domain [" + std::to_string(dom.lo) + ", " +
                             std::to_string(dom.hi) + "] of variable " + std::to_string(scope[p]));
                }
                if (!e.table.set(tuple, cost(row.back(), "tuple cost")))
                    fail("duplicate tuple");
            }
            push(std::move(scope), std::move(e));
            last_ext_ = functions_.size() - 1;
            return;
        }

        auto binary_scope = [&] {
            const VarId i = var_ref(tok[2]);
            const VarId j = var_ref(tok[3]);
            if (i == j)
                fail("a binary function needs two distinct variables");
            return std::vector<VarId>{i, j};
        };

        if (kind == "funceq" || kind == "antifuncneq") {
            if (tok.size() != 5 && tok.size() != 7)
                fail("'fun " + kind + " <i> <j> <alpha> [p q]' field count mismatch");
            auto scope = binary_scope();
            const Cost alpha = cost(tok[4], "alpha");
            if (alpha < 1)
                fail("alpha must be at least 1");
            AffineMap m;
            if (tok.size() == 7) {
                m.slope = integer(tok[5], "p");
                m.offset = integer(tok[6], "q");
            }
            if (kind == "funceq")
                push(std::move(scope), FunctionalEq{alpha, m});
            else
                push(std::move(scope), AntiFunctionalNeq{alpha, m});
        }
        else if (kind == "monoleq") {
            arity(tok, 6, 6);
            auto scope = binary_scope();
            const Value delta = integer(tok[4], "delta");
            const Cost alpha = cost(tok[5], "alpha");
            if (alpha < 1)
                fail("alpha must be at least 1");
            push(std::move(scope), MonoLeq{delta, alpha});
        }
        else if (kind == "linplus") {
            arity(tok, 7, 7);
            auto scope = binary_scope();
            LinPlus l{integer(tok[4], "a"), integer(tok[5], "b"), integer(tok[6], "c")};
            check_linplus(scope, l);
            push(std::move(scope), l);
        }
        else if (kind == "spacer") {
            arity(tok, 9, 9);
            auto scope = binary_scope();
            Spacer s{integer(tok[4], "d1"), integer(tok[5], "d2"), integer(tok[6], "d3"), integer(tok[7], "d4"),
                     integer(tok[8], "slope")};
            if (!(s.d1 <= s.d2 && s.d2 <= s.d3 && s.d3 <= s.d4))
                fail("spacer needs d1 <= d2 <= d3 <= d4");
            if (s.slope < 1)
                fail("spacer slope must be positive");
            push(std::move(scope), s);
        }
        else
            fail("unknown function kind '" + kind + "'");
    }

    void check_linplus(const std::vector<VarId>& scope, const LinPlus& l) const
    {
        // Validated on a grid clipped to the low and high corners of the box.
        for (int corner = 0; corner < 2; ++corner) {
            std::vector<Interval> grid;
            for (VarId x : scope) {
                const Interval d = vars_.at(x);
                const Value span = std::min<Value>(kLinPlusGrid - 1, d.hi - d.lo);
                grid.push_back(corner == 0 ? Interval{d.lo, d.lo + span} : Interval{d.hi - span, d.hi});
            }
            const CostFunction probe(scope, l, grid);
            const Valuation v(*top_);
            if (!validate_convex(probe, v, kTagValidationCap))
                fail("linplus coefficients do not give a convex function");
        }
    }

    void tag(const std::vector<std::string>& tok)
    {
        arity(tok, 4, 4);
        if (tok[1] != "semiconvex")
            fail("unknown tag '" + tok[1] + "'");
        if (!last_ext_)
            fail("'tag semiconvex' must follow an ext function");
        auto& [scope, kind] = functions_[*last_ext_];
        auto& e = std::get<Extensional>(kind);
        if (e.semiconvex)
            fail("duplicate semiconvex tag");
        if (scope.size() != 2)
            fail("semiconvex tags apply to binary functions only");
        const VarId wrt = var_ref(tok[2]);
        if (wrt != scope[0] && wrt != scope[1])
            fail("tagged variable " + tok[2] + " is not in the function scope");
        Order order;
        if (tok[3] == "asc")
            order = Order::ascending;
        else if (tok[3] == "desc")
            order = Order::descending;
        else
            fail("order must be asc or desc");
        const CostFunction probe(scope, e, {vars_.at(scope[0]), vars_.at(scope[1])});
        try {
            const auto res = validate_semiconvex(probe, wrt, order, Valuation(*top_), kTagValidationCap);
            if (!res)
                fail("function is not semi-convex: " + res.message);
        }
        catch (const RefusedError& err) {
            fail(err.what());
        }
        e.semiconvex = SemiconvexTag{wrt, order};
    }

    void push(std::vector<VarId> scope, CostKind kind)
    {
        std::vector<Interval> declared;
        for (VarId x : scope)
            declared.push_back(vars_.at(x));
        try {
            CostFunction check(scope, kind, declared);
        }
        catch (const ContractError& e) {
            fail(e.what());
        }
        functions_.emplace_back(std::move(scope), std::move(kind));
    }

    std::istream& in_;
    std::string source_;
    std::size_t line_ = 0;
    std::optional<std::string> name_;
    std::optional<Cost> top_;
    Cost w_zero_ = 0;
    bool seen_w0_ = false;
    std::map<VarId, Interval> vars_;
    std::vector<std::pair<std::vector<VarId>, CostKind>> functions_;
    std::optional<std::size_t> last_ext_;
};

template <class... Ts>
struct overloaded : Ts...
{
    using Ts::operator()...;
};

} // namespace

Instance parse_instance(std::istream& in, const std::string& source) { return Parser(in, source).run(); }

Instance parse_instance_text(const std::string& text, const std::string& source)
{
    std::istringstream is(text);
    return parse_instance(is, source);
}

Instance load_instance(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw ParseError(path, 0, "cannot open file");
    return parse_instance(in, path);
}

std::string emit_instance(const Instance& inst)
{
    std::ostringstream os;
    const Valuation& v = inst.valuation();
    os << "wcsp " << inst.name() << "\n";
    os << "k " << v.to_string(v.top()) << "\n";
    os << "w0 " << inst.w_zero() << "\n";
    for (const auto& var : inst.variables())
        os << "var " << var.id << " " << var.domain.lb() << " " << var.domain.ub() << "\n";

    auto map_suffix = [](const AffineMap& m) {
        return m.is_identity() ? std::string() : " " + std::to_string(m.slope) + " " + std::to_string(m.offset);
    };

    for (const auto& f : inst.functions()) {
        const auto& s = f.scope();
        std::visit(overloaded{
                       [&](const Extensional& e) {
                           os << "fun ext " << f.arity();
                           for (VarId x : s)
                               os << " " << x;
                           os << " " << e.default_cost << " " << e.table.size() << "\n";
                           for (std::size_t i = 0; i < e.table.size(); ++i) {
                               for (Value val : e.table.tuple(i))
                                   os << val << " ";
                               os << e.table.cost(i) << "\n";
                           }
                           if (e.semiconvex)
                               os << "tag semiconvex " << e.semiconvex->wrt << " "
                                  << (e.semiconvex->order == Order::ascending ? "asc" : "desc") << "\n";
                       },
                       [&](const FunctionalEq& fe) {
                           os << "fun funceq " << s[0] << " " << s[1] << " " << fe.alpha << map_suffix(fe.support)
                              << "\n";
                       },
                       [&](const AntiFunctionalNeq& af) {
                           os << "fun antifuncneq " << s[0] << " " << s[1] << " " << af.alpha
                              << map_suffix(af.antisupport) << "\n";
                       },
                       [&](const MonoLeq& m) {
                           os << "fun monoleq " << s[0] << " " << s[1] << " " << m.delta << " " << m.alpha << "\n";
                       },
                       [&](const LinPlus& l) {
                           os << "fun linplus " << s[0] << " " << s[1] << " " << l.a << " " << l.b << " " << l.c << "\n";
                       },
                       [&](const Spacer& sp) {
                           os << "fun spacer " << s[0] << " " << s[1] << " " << sp.d1 << " " << sp.d2 << " " << sp.d3
                              << " " << sp.d4 << " " << sp.slope << "\n";
                       },
                   },
                   f.kind());
    }
    return os.str();
}

void save_instance(const Instance& inst, const std::string& path)
{
    std::ofstream out(path);
    if (!out)
        throw std::runtime_error("cannot write " + path);
    out << emit_instance(inst);
}

} // namespace bac
