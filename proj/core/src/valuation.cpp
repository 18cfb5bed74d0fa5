#include <bac/valuation.hpp>

namespace bac {

Valuation::Valuation(Cost top) :
    top_(top)
{
    if (top < 1)
        throw ContractError("valuation top k must be >= 1, got " + std::to_string(top));
}

Cost Valuation::plus(Cost a, Cost b) const
{
    if (a < 0 || b < 0)
        throw ContractError("negative cost in oplus");
    if (a >= top_ || b >= top_)
        return top_;
    Cost sum = 0;
    if (__builtin_add_overflow(a, b, &sum) || sum == kInfiniteCost)
        throw ContractError("cost overflow before saturation: " + std::to_string(a) + " + " + std::to_string(b));
    return sum >= top_ ? top_ : sum;
}

Cost Valuation::minus(Cost a, Cost b) const
{
    if (a < 0 || b < 0)
        throw ContractError("negative cost in ominus");
    if (b >= top_)
        throw ContractError("ominus: subtracting the top cost is undefined");
    if (a >= top_)
        return top_;
    if (b > a)
        throw ContractError("ominus: " + std::to_string(b) + " exceeds " + std::to_string(a));
    return a - b;
}

std::string Valuation::to_string(Cost c) const
{
    if (is_infinite() && c >= top_)
        return "inf";
    return std::to_string(c);
}

} // namespace bac
