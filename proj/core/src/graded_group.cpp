#include "lcss/graded_group.hpp"

#include <fmt/core.h>

namespace lcss {

GradedGroup::GradedGroup(int prime, int lo, int hi) : prime_(prime), lo_(lo), hi_(hi), empty_(prime)
{
    if (lo > hi + 1)
        throw Error(fmt::format("GradedGroup: bad window [{}, {}]", lo, hi));
}

void GradedGroup::set(int degree, LabelledGroup g)
{
    if (degree < lo_ || degree > hi_)
        throw Error(fmt::format("GradedGroup: degree {} outside window [{}, {}]", degree, lo_, hi_));
    if (g.prime() != prime_)
        throw Error("GradedGroup: prime mismatch");
    if (g.empty())
        values_.erase(degree);
    else
        values_[degree] = std::move(g);
}

bool GradedGroup::defined_at(int degree) const
{
    return (degree >= lo_ && degree <= hi_) || (degree < lo_ && zero_below) || (degree > hi_ && zero_above);
}

const LabelledGroup& GradedGroup::at(int degree) const
{
    if (!defined_at(degree))
        throw Error(fmt::format("GradedGroup: degree {} outside window [{}, {}]", degree, lo_, hi_));
    auto it = values_.find(degree);
    return it == values_.end() ? empty_ : it->second;
}

std::vector<int> GradedGroup::support() const
{
    std::vector<int> out;
    for (const auto& [n, g] : values_)
        out.push_back(n);
    return out;
}

GradedGroup GradedGroup::restricted(int lo, int hi) const
{
    GradedGroup out(prime_, lo, hi);
    out.zero_below = zero_below;
    out.zero_above = zero_above;
    for (int n = lo; n <= hi; ++n)
        out.set(n, at(n));
    return out;
}

std::string GradedGroup::to_table() const
{
    std::string out;
    for (const auto& [n, g] : values_)
        out += fmt::format("{:>5} | {} | {}\n", n, g.group().to_string(), label_list(g));
    return out;
}

GradedGroup direct_sum(const GradedGroup& a, const GradedGroup& b)
{
    if (a.prime() != b.prime() || a.lo() != b.lo() || a.hi() != b.hi())
        throw Error("direct_sum: graded groups over different windows");
    GradedGroup out(a.prime(), a.lo(), a.hi());
    out.zero_below = a.zero_below && b.zero_below;
    out.zero_above = a.zero_above && b.zero_above;
    for (int n = a.lo(); n <= a.hi(); ++n) {
        LabelledGroup g = a.at(n);
        g.append(b.at(n));
        out.set(n, std::move(g));
    }
    return out;
}

std::string label_list(const LabelledGroup& g)
{
    std::string out;
    for (std::size_t i = 0; i < g.size(); ++i)
        out += (i == 0 ? "" : ", ") + g[i].label;
    return out;
}

}  // namespace lcss
