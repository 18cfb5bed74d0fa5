#include <bac/domain.hpp>

#include <sstream>

namespace bac {

Domain::Domain(Value lb, Value ub) :
    lb_(lb),
    ub_(ub),
    empty_(false)
{
    if (lb > ub)
        throw ContractError("domain lower bound " + std::to_string(lb) + " exceeds upper bound " + std::to_string(ub));
}

Domain Domain::make_empty()
{
    Domain d(0, 0);
    d.empty_ = true;
    d.lb_ = 0;
    d.ub_ = -1;
    return d;
}

Value Domain::lb() const
{
    if (empty_)
        throw ContractError("lb of an empty domain");
    return lb_;
}

Value Domain::ub() const
{
    if (empty_)
        throw ContractError("ub of an empty domain");
    return ub_;
}

std::uint64_t Domain::size() const noexcept
{
    if (empty_)
        return 0;
    return Interval{lb_, ub_}.size() - removed_.size();
}

bool Domain::contains(Value v) const noexcept
{
    return !empty_ && lb_ <= v && v <= ub_ && !removed_.contains(v);
}

void Domain::normalize()
{
    while (!removed_.empty() && *removed_.begin() <= lb_) {
        if (*removed_.begin() == lb_)
            ++lb_;
        removed_.erase(removed_.begin());
    }
    while (!removed_.empty() && *removed_.rbegin() >= ub_) {
        if (*removed_.rbegin() == ub_)
            --ub_;
        removed_.erase(std::prev(removed_.end()));
    }
    if (lb_ > ub_) {
        *this = make_empty();
    }
}

void Domain::remove_lb()
{
    if (empty_)
        throw ContractError("remove_lb on an empty domain");
    if (lb_ == ub_) {
        *this = make_empty();
        return;
    }
    ++lb_;
    normalize();
}

void Domain::remove_ub()
{
    if (empty_)
        throw ContractError("remove_ub on an empty domain");
    if (lb_ == ub_) {
        *this = make_empty();
        return;
    }
    --ub_;
    normalize();
}

void Domain::remove(Value v, std::size_t cap)
{
    if (!contains(v))
        return;
    if (v == lb_)
        remove_lb();
    else if (v == ub_)
        remove_ub();
    else {
        if (removed_.size() >= cap)
            throw RefusedError("interior removal cap of " + std::to_string(cap) + " values reached");
        removed_.insert(v);
    }
}

void Domain::restrict(Value lo, Value hi)
{
    if (empty_)
        return;
    if (lo > lb_)
        lb_ = lo;
    if (hi < ub_)
        ub_ = hi;
    if (lb_ > ub_) {
        *this = make_empty();
        return;
    }
    removed_.erase(removed_.begin(), removed_.lower_bound(lb_));
    removed_.erase(removed_.upper_bound(ub_), removed_.end());
    normalize();
}

std::string Domain::to_string() const
{
    if (empty_)
        return "{}";
    std::ostringstream os;
    os << '[' << lb_ << ',' << ub_ << ']';
    if (!removed_.empty()) {
        os << "\\{";
        bool first = true;
        for (auto v : removed_) {
            os << (first ? "" : ",") << v;
            first = false;
        }
        os << '}';
    }
    return os.str();
}

} // namespace bac
