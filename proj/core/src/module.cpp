#include "lcss/module.hpp"

#include <fmt/core.h>

namespace lcss {

std::vector<std::size_t> GradedModulePresentation::slice_indices(int n) const
{
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < generators.size(); ++i)
        if (generators[i].degree == n)
            out.push_back(i);
    return out;
}

LabelledGroup GradedModulePresentation::slice(int n) const
{
    LabelledGroup g(prime);
    for (std::size_t i : slice_indices(n))
        g.add(generators[i].summand());
    return g;
}

const OperatorAction& GradedModulePresentation::op(const std::string& op_name) const
{
    auto it = operators.find(op_name);
    if (it == operators.end())
        throw Error(fmt::format("module '{}' has no operator '{}'", name, op_name));
    return it->second;
}

GroupMorphism GradedModulePresentation::action(const std::string& op_name, int n) const
{
    const OperatorAction& a = op(op_name);
    LabelledGroup src = slice(n);
    LabelledGroup dst = slice(n + a.shift);
    auto it = a.matrices.find(n);
    if (it == a.matrices.end() || src.empty() || dst.empty())
        return GroupMorphism::zero(src, dst);
    return GroupMorphism(std::move(src), std::move(dst), it->second);
}

GroupMorphism GradedModulePresentation::power(const std::string& op_name, int n, int k) const
{
    GroupMorphism f = GroupMorphism::identity(slice(n));
    const int d = shift_of(op_name);
    for (int i = 0; i < k; ++i)
        f = compose(action(op_name, n + i * d), f);
    return f;
}

namespace {

void fail(Diagnostics& d, std::string msg, std::optional<int> degree = std::nullopt, std::string matrix = {})
{
    if (d.ok && degree) {
        d.first_failing_degree = degree;
        d.offending_matrix = std::move(matrix);
    }
    d.ok = false;
    d.messages.push_back(std::move(msg));
}

}  // namespace

Diagnostics validate_presentation(const GradedModulePresentation& m, const std::string& x)
{
    Diagnostics d;
    if (m.prime < 2)
        fail(d, fmt::format("invalid prime {}", m.prime));
    for (int q = 2; q * q <= m.prime; ++q)
        if (m.prime % q == 0) {
            fail(d, fmt::format("{} is not prime", m.prime));
            break;
        }
    if (m.lo > m.hi)
        fail(d, fmt::format("empty window [{}, {}]", m.lo, m.hi));
    if (!d.ok)
        return d;

    std::set<std::string> labels;
    for (const auto& g : m.generators) {
        if (g.degree < m.lo || g.degree > m.hi)
            fail(d, fmt::format("generator '{}' in degree {} outside window [{}, {}]", g.label, g.degree, m.lo, m.hi));
        if (g.exponent < 0)
            fail(d, fmt::format("generator '{}' has negative order exponent", g.label));
        if (!labels.insert(g.label).second)
            fail(d, fmt::format("duplicate generator label '{}'", g.label));
    }

    auto it = m.operators.find(x);
    if (it == m.operators.end()) {
        fail(d, fmt::format("operator '{}' missing", x));
        return d;
    }
    const int shift = it->second.shift;
    if (shift <= 0)
        fail(d, fmt::format("operator '{}' must raise degree", x));
    if (m.hi < m.stability + shift)
        fail(d, fmt::format("window top {} below stability degree {} + |{}| = {}", m.hi, m.stability, x, m.stability + shift));

    for (const auto& [op_name, action] : m.operators) {
        for (const auto& [n, mat] : action.matrices) {
            if (n < m.lo || n + action.shift > m.hi) {
                fail(d, fmt::format("action {} from degree {} leaves the window", op_name, n), n, mat.to_string());
                continue;
            }
            try {
                GroupMorphism f(m.slice(n), m.slice(n + action.shift), mat);
            }
            catch (const Error& e) {
                fail(d, fmt::format("action {} from degree {}: {}", op_name, n, e.what()), n, mat.to_string());
            }
        }
        for (const auto& label : action.assumed)
            if (!labels.count(label))
                fail(d, fmt::format("assumed {} action names unknown generator '{}'", op_name, label));
    }
    if (!d.ok || shift <= 0)
        return d;

    for (int n = m.stability; n + shift <= m.hi; ++n) {
        const GroupMorphism f = m.action(x, n);
        const Subgroup k = kernel(f);
        const Quotient c = cokernel(f);
        if (!k.group.empty() || !c.group.empty()) {
            fail(d,
                 fmt::format("{}: M_{} -> M_{} is not bijective (kernel {}, cokernel {})", x, n, n + shift,
                             k.group.group().to_string(), c.group.group().to_string()),
                 n, f.matrix().to_string());
            break;
        }
    }
    return d;
}

}  // namespace lcss
