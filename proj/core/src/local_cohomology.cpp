#include "lcss/local_cohomology.hpp"

#include <atomic>
#include <cctype>
#include <thread>

#include <fmt/core.h>

#include "lcss/snf.hpp"

namespace lcss {

void parallel_for(std::size_t count, const ExecutionPolicy& policy, const std::function<void(std::size_t)>& body)
{
    const std::size_t workers = std::min<std::size_t>(std::max(1u, policy.threads), count);
    if (workers <= 1) {
        for (std::size_t i = 0; i < count; ++i)
            body(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::atomic<bool> failed{false};
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t t = 0; t < workers; ++t)
        pool.emplace_back([&] {
            for (;;) {
                const std::size_t i = next++;
                if (i >= count || failed)
                    return;
                try {
                    body(i);
                }
                catch (...) {
                    if (!failed.exchange(true))
                        error = std::current_exception();
                    return;
                }
            }
        });
    for (auto& th : pool)
        th.join();
    if (error)
        std::rethrow_exception(error);
}

Multiplier Multiplier::parse(std::string_view text)
{
    Multiplier x;
    auto caret = text.find('^');
    x.op = std::string(text.substr(0, caret));
    if (x.op.empty())
        throw Error(fmt::format("cannot parse multiplier '{}'", text));
    if (caret != std::string_view::npos) {
        const std::string exp(text.substr(caret + 1));
        if (exp.empty() || !std::all_of(exp.begin(), exp.end(), [](char c) { return std::isdigit((unsigned char)c); }))
            throw Error(fmt::format("cannot parse multiplier '{}'", text));
        x.power = std::stoi(exp);
        if (x.power < 1)
            throw Error(fmt::format("cannot parse multiplier '{}'", text));
    }
    return x;
}

std::string Multiplier::to_string() const
{
    return power == 1 ? op : fmt::format("{}^{}", op, power);
}

int stabilisation_count(const GradedModulePresentation& m, const Multiplier& x, int n)
{
    const int d = x.degree(m);
    if (n >= m.stability)
        return 0;
    return (m.stability - n + d - 1) / d;
}

namespace {

bool all_digits(std::string_view s)
{
    return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) { return std::isdigit((unsigned char)c); });
}

// Splits "B^j*base" into (j, base); plain labels have j = 0.
std::pair<int, std::string> split_tower(const std::string& label, const std::string& op)
{
    if (label == op)
        return {1, "1"};
    if (label.rfind(op + "*", 0) == 0)
        return {1, label.substr(op.size() + 1)};
    if (label.rfind(op + "^", 0) == 0) {
        const std::string rest = label.substr(op.size() + 1);
        const auto star = rest.find('*');
        const std::string exp = rest.substr(0, star);
        if (all_digits(exp))
            return {std::stoi(exp), star == std::string::npos ? "1" : rest.substr(star + 1)};
    }
    return {0, label};
}

std::string power_text(const std::string& op, int e)
{
    return e == 1 ? op : fmt::format("{}^{}", op, e);
}

}  // namespace

std::string divide_label(const std::string& label, const std::string& op, int k)
{
    if (k == 0)
        return label;
    auto [j, base] = split_tower(label, op);
    const int e = j - k;
    if (e > 0)
        return base == "1" ? power_text(op, e) : power_text(op, e) + "*" + base;
    if (e == 0)
        return base;
    return base + "/" + power_text(op, -e);
}

namespace {

struct StableMap {
    int count = 0;        // K
    GroupMorphism gamma;  // M_n -> M_{n + K|x|}, codomain relabelled as M[1/x]_n
};

StableMap stable_map(const GradedModulePresentation& m, const Multiplier& x, int n, int extra)
{
    const int d = x.degree(m);
    StableMap s;
    s.count = stabilisation_count(m, x, n) + extra;
    const int top = n + d * s.count;
    if (top > m.hi)
        throw Error(fmt::format("window of '{}' too small: degree {} needs slice {} above hi = {}", m.name, n, top,
                                m.hi));
    const GroupMorphism f = m.power(x.op, n, s.count * x.power);
    LabelledGroup target(m.prime);
    for (const auto& summand : f.codomain().summands()) {
        Summand t = summand;
        t.label = divide_label(summand.label, x.op, s.count * x.power);
        target.add(std::move(t));
    }
    s.gamma = GroupMorphism(f.domain(), std::move(target), f.matrix());
    return s;
}

template <typename F>
GradedGroup degreewise(int prime, Window w, const ExecutionPolicy& policy, F&& compute)
{
    if (w.lo > w.hi + 1)
        throw Error(fmt::format("bad window [{}, {}]", w.lo, w.hi));
    const std::size_t count = static_cast<std::size_t>(w.hi - w.lo + 1);
    std::vector<LabelledGroup> values(count, LabelledGroup(prime));
    parallel_for(count, policy, [&](std::size_t i) { values[i] = compute(w.lo + static_cast<int>(i)); });
    GradedGroup out(prime, w.lo, w.hi);
    for (std::size_t i = 0; i < count; ++i)
        out.set(w.lo + static_cast<int>(i), std::move(values[i]));
    return out;
}

std::vector<std::size_t> indices_of(const LabelledGroup& g, SummandKind kind)
{
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < g.size(); ++i)
        if (g[i].kind == kind)
            out.push_back(i);
    return out;
}

LabelledGroup subgroup_of(const LabelledGroup& g, const std::vector<std::size_t>& idx)
{
    LabelledGroup out(g.prime());
    for (std::size_t i : idx)
        out.add(g[i]);
    return out;
}

std::vector<Integer> column(const IntMatrix& a, std::size_t c)
{
    std::vector<Integer> v(a.rows());
    for (std::size_t r = 0; r < a.rows(); ++r)
        v[r] = a(r, c);
    return v;
}

}  // namespace

GradedGroup gamma_x(const GradedModulePresentation& m, const Multiplier& x, Window w, const FunctorOptions& o)
{
    GradedGroup out = degreewise(m.prime, w, o.policy, [&](int n) {
        if (n < m.lo || n >= m.stability)
            return LabelledGroup(m.prime);
        return kernel(stable_map(m, x, n, o.extra).gamma).group;
    });
    out.zero_below = true;
    out.zero_above = true;
    return out;
}

Localisation localize_x(const GradedModulePresentation& m, const Multiplier& x, Window w, const FunctorOptions& o)
{
    Localisation loc;
    const std::size_t count = static_cast<std::size_t>(std::max(0, w.hi - w.lo + 1));
    std::vector<GroupMorphism> maps(count);
    parallel_for(count, o.policy, [&](std::size_t i) { maps[i] = stable_map(m, x, w.lo + (int)i, o.extra).gamma; });
    loc.value = GradedGroup(m.prime, w.lo, w.hi);
    for (std::size_t i = 0; i < count; ++i) {
        loc.value.set(w.lo + (int)i, maps[i].codomain());
        loc.gamma.emplace(w.lo + (int)i, std::move(maps[i]));
    }
    return loc;
}

GradedGroup mod_x_infty(const GradedModulePresentation& m, const Multiplier& x, Window w, const FunctorOptions& o)
{
    GradedGroup out = degreewise(m.prime, w, o.policy, [&](int n) {
        if (n >= m.stability)
            return LabelledGroup(m.prime);
        return cokernel(stable_map(m, x, n, o.extra).gamma).group;
    });
    out.zero_above = true;
    return out;
}

GradedGroup gamma_p(const GradedGroup& g)
{
    GradedGroup out(g.prime(), g.lo(), g.hi());
    out.zero_below = g.zero_below;
    out.zero_above = g.zero_above;
    for (int n : g.support()) {
        LabelledGroup h(g.prime());
        for (const auto& s : g.at(n).summands())
            if (s.kind != SummandKind::free)
                h.add(s);
        out.set(n, std::move(h));
    }
    return out;
}

GradedGroup mod_p_infty(const GradedGroup& g)
{
    GradedGroup out(g.prime(), g.lo(), g.hi());
    out.zero_below = g.zero_below;
    out.zero_above = g.zero_above;
    for (int n : g.support()) {
        LabelledGroup h(g.prime());
        for (const auto& s : g.at(n).summands())
            if (s.kind == SummandKind::free)
                h.add(Summand::divisible(s.label));
        out.set(n, std::move(h));
    }
    return out;
}

GradedGroup torsion_mod_x_infty(const GradedModulePresentation& m, const Multiplier& x, Window w,
                                const FunctorOptions& o)
{
    GradedGroup out = degreewise(m.prime, w, o.policy, [&](int n) {
        if (n >= m.stability)
            return LabelledGroup(m.prime);
        const GroupMorphism g = stable_map(m, x, n, o.extra).gamma;
        const auto rows = indices_of(g.codomain(), SummandKind::cyclic);
        const auto cols = indices_of(g.domain(), SummandKind::cyclic);
        GroupMorphism t(subgroup_of(g.domain(), cols), subgroup_of(g.codomain(), rows),
                        g.matrix().select_rows(rows).select_cols(cols));
        return cokernel(t).group;
    });
    out.zero_above = true;
    return out;
}

GradedGroup gamma_x_of_mod_p(const GradedModulePresentation& m, const Multiplier& x, Window w,
                             const FunctorOptions& o)
{
    GradedGroup out = degreewise(m.prime, w, o.policy, [&](int n) {
        LabelledGroup h(m.prime);
        if (n < m.lo || n >= m.stability)
            return h;
        const GroupMorphism g = stable_map(m, x, n, o.extra).gamma;
        const auto rows = indices_of(g.codomain(), SummandKind::free);
        const auto cols = indices_of(g.domain(), SummandKind::free);
        const LabelledGroup source = subgroup_of(g.domain(), cols);
        const IntMatrix f = g.matrix().select_rows(rows).select_cols(cols);
        const SnfResult snf = smith_normal_form(f);
        // y = V^{-1} x: coordinate i is constrained by d_i y_i = 0 in Q_p/Z_p.
        for (std::size_t i = 0; i < cols.size(); ++i) {
            const std::string label = element_label(source, column(snf.right, i));
            if (i < snf.rank) {
                const int v = valuation(snf.diagonal[i], m.prime);
                if (v > 0)
                    h.add(Summand::cyclic(v, label + "/" + power_of(m.prime, v).get_str()));
            }
            else {
                h.add(Summand::divisible(label));
            }
        }
        return h;
    });
    out.zero_below = true;
    out.zero_above = true;
    return out;
}

GradedGroup mod_p_mod_x(const GradedModulePresentation& m, const Multiplier& x, Window w, const FunctorOptions& o)
{
    GradedGroup out = degreewise(m.prime, w, o.policy, [&](int n) {
        LabelledGroup h(m.prime);
        if (n >= m.stability)
            return h;
        const GroupMorphism g = stable_map(m, x, n, o.extra).gamma;
        const auto rows = indices_of(g.codomain(), SummandKind::free);
        const auto cols = indices_of(g.domain(), SummandKind::free);
        const LabelledGroup target = subgroup_of(g.codomain(), rows);
        const SnfResult snf = smith_normal_form(g.matrix().select_rows(rows).select_cols(cols));
        // d_i * Q_p/Z_p is all of Q_p/Z_p for d_i != 0, so only the rank matters.
        for (std::size_t i = snf.rank; i < rows.size(); ++i)
            h.add(Summand::divisible(element_label(target, column(snf.left_inverse, i))));
        return h;
    });
    out.zero_above = true;
    return out;
}

LocalCohomologyOne local_cohomology_one(const GradedModulePresentation& m, const Multiplier& x, Window w,
                                        const FunctorOptions& o)
{
    return {gamma_x(m, x, w, o), mod_x_infty(m, x, w, o)};
}

std::vector<int> exactness_failures(const GradedModulePresentation& m, const Multiplier& x, Window w)
{
    std::vector<int> bad;
    for (int n = w.lo; n <= w.hi; ++n) {
        if (n > m.hi)
            break;
        const GroupMorphism g = stable_map(m, x, n, 0).gamma;
        const MixedGroup source = g.domain().group();
        const MixedGroup target = g.codomain().group();
        const Subgroup k = kernel(g);
        const Quotient c = cokernel(g);
        const MixedGroup h0 = k.group.group();
        const MixedGroup h1 = c.group.group();
        const MixedGroup im = image(g).group();
        const MixedGroup coim = cokernel(k.inclusion).group.group();
        bool ok = is_isomorphic(coim, im);
        ok = ok && source.free_rank() == h0.free_rank() + im.free_rank();
        ok = ok && target.free_rank() == im.free_rank() + h1.free_rank();
        if (source.is_finite())
            ok = ok && source.log_order() == h0.log_order() + im.log_order();
        if (target.is_finite())
            ok = ok && target.log_order() == im.log_order() + h1.log_order();
        if (!ok)
            bad.push_back(n);
    }
    return bad;
}

bool ExtensionRecord::resolved_at(int n) const
{
    return left.at(n).empty() || right.at(n).empty();
}

std::vector<int> ExtensionRecord::ambiguous_degrees() const
{
    std::vector<int> out;
    for (int n = left.lo(); n <= left.hi(); ++n)
        if (!resolved_at(n))
            out.push_back(n);
    return out;
}

LabelledGroup ExtensionRecord::value_at(int n) const
{
    if (!resolved_at(n))
        throw Error(fmt::format("H^1 extension in degree {} is not determined by its ends ({} by {})", n,
                                left.at(n).group().to_string(), right.at(n).group().to_string()));
    return cells_at(n);
}

LabelledGroup ExtensionRecord::cells_at(int n) const
{
    LabelledGroup g = left.at(n);
    g.append(right.at(n));
    return g;
}

LocalCohomologyTwo local_cohomology_two(const GradedModulePresentation& m, const std::string& first,
                                        const std::string& second, Window w, const FunctorOptions& o)
{
    const std::string p = "p";
    if (!((first == p) ^ (second == p)))
        throw Error(fmt::format("local_cohomology_two needs p and one operator, got ({}, {})", first, second));
    const Multiplier x = Multiplier::parse(first == p ? second : first);

    LocalCohomologyTwo r;
    r.first = first;
    r.second = second;
    const GradedGroup gx = gamma_x(m, x, w, o);
    r.h0 = gamma_p(gx);
    if (first == p) {
        // 0 -> (Gamma_B M)/p^inf -> H^1 -> Gamma_p(M/B^inf) -> 0
        const GradedGroup mx = mod_x_infty(m, x, w, o);
        r.h1.left = mod_p_infty(gx);
        r.h1.right = gamma_p(mx);
        r.h2 = mod_p_infty(mx);
    }
    else {
        // 0 -> (Gamma_p M)/B^inf -> H^1 -> Gamma_B(M/p^inf) -> 0
        r.h1.left = torsion_mod_x_infty(m, x, w, o);
        r.h1.right = gamma_x_of_mod_p(m, x, w, o);
        r.h2 = mod_p_mod_x(m, x, w, o);
    }
    return r;
}

GradedGroup tensor_periodic(const GradedGroup& g, int period, PeriodicMode mode, Window w,
                            const std::string& period_label)
{
    if (period <= 0)
        throw Error("tensor_periodic: period must be positive");
    GradedGroup out(g.prime(), w.lo, w.hi);
    const auto base = g.support();
    for (int n = w.lo; n <= w.hi; ++n) {
        LabelledGroup h(g.prime());
        for (int b : base) {
            const int diff = n - b;
            if (diff % period != 0)
                continue;
            const int j = diff / period;
            std::string suffix;
            if (mode == PeriodicMode::polynomial) {
                if (j < 0)
                    continue;
                suffix = j == 0 ? "" : "*" + power_text(period_label, j);
            }
            else {
                if (j > -1)
                    continue;
                suffix = "/" + power_text(period_label, -j);
            }
            for (const auto& s : g.at(b).summands()) {
                Summand t = s;
                t.label += suffix;
                h.add(std::move(t));
            }
        }
        out.set(n, std::move(h));
    }
    return out;
}

int gorenstein_shift(const std::vector<int>& generator_degrees, GorensteinTarget target,
                     std::vector<std::string>* warnings)
{
    int a = 0;
    for (int d : generator_degrees) {
        if ((d <= 0 || d % 2 != 0) && warnings)
            warnings->push_back(fmt::format("generator degree {} is not positive and even", d));
        a -= d + 1;
    }
    return target == GorensteinTarget::fp ? a - 1 : a;
}

}  // namespace lcss
