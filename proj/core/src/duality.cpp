#include "lcss/duality.hpp"

#include <fmt/core.h>
#include <nlohmann/json.hpp>

namespace lcss {

DualMode parse_dual_mode(const std::string& text)
{
    if (text == "anderson")
        return DualMode::anderson;
    if (text == "bc" || text == "brown-comenetz")
        return DualMode::brown_comenetz;
    throw Error(fmt::format("unknown duality mode '{}' (expected anderson or bc)", text));
}

std::string to_string(DualMode mode)
{
    return mode == DualMode::anderson ? "anderson" : "bc";
}

GradedGroup homotopy_of(const GradedModulePresentation& m)
{
    GradedGroup g(m.prime, m.lo, m.hi);
    g.zero_below = true;
    for (int n = m.lo; n <= m.hi; ++n)
        g.set(n, m.slice(n));
    return g;
}

namespace {

LabelledGroup unlabelled(const MixedGroup& g)
{
    LabelledGroup out(g.prime());
    for (int i = 0; i < g.free_rank(); ++i)
        out.add(Summand::free(""));
    for (int a : g.torsion_exponents())
        out.add(Summand::cyclic(a, ""));
    for (int i = 0; i < g.divisible_rank(); ++i)
        out.add(Summand::divisible(""));
    return out;
}

}  // namespace

GradedGroup anderson_dual(const GradedGroup& g, Window w)
{
    GradedGroup out(g.prime(), w.lo, w.hi);
    for (int n = w.lo; n <= w.hi; ++n) {
        const int t = -n;
        const MixedGroup value = ext_to_zp(g.group_at(t - 1)) + hom_to_zp(g.group_at(t));
        out.set(n, unlabelled(value));
    }
    return out;
}

GradedGroup brown_comenetz_dual(const GradedGroup& g, Window w)
{
    GradedGroup out(g.prime(), w.lo, w.hi);
    for (int n = w.lo; n <= w.hi; ++n)
        out.set(n, unlabelled(pontryagin_dual(g.group_at(-n))));
    return out;
}

GradedGroup shift(const GradedGroup& g, int a)
{
    GradedGroup out(g.prime(), g.lo() + a, g.hi() + a);
    out.zero_below = g.zero_below;
    out.zero_above = g.zero_above;
    for (int n : g.support())
        out.set(n + a, g.at(n));
    return out;
}

std::size_t DualityReport::passed() const
{
    std::size_t k = 0;
    for (const auto& r : rows)
        k += r.iso ? 1 : 0;
    return k;
}

std::size_t DualityReport::failed() const
{
    return rows.size() - passed();
}

std::vector<int> DualityReport::mismatches() const
{
    std::vector<int> out;
    for (const auto& r : rows)
        if (!r.iso)
            out.push_back(r.degree);
    return out;
}

std::string DualityReport::to_table() const
{
    std::string out = fmt::format("# {} dual, shift {}, degrees [{}, {}]\n", lcss::to_string(mode), shift, window.lo,
                                  window.hi);
    out += fmt::format("{:>6} | {:<24} | {:<24} | {}\n", "degree", "abutment", "dual", "verdict");
    for (const auto& r : rows)
        out += fmt::format("{:>6} | {:<24} | {:<24} | {}\n", r.degree, r.abutment.to_string(), r.dual.to_string(),
                           r.iso ? "iso" : "MISMATCH");
    out += fmt::format("# {} iso, {} mismatch: {}\n", passed(), failed(), pass() ? "PASS" : "FAIL");
    return out;
}

std::string DualityReport::to_json() const
{
    nlohmann::ordered_json j;
    j["mode"] = lcss::to_string(mode);
    j["shift"] = shift;
    j["window"] = {window.lo, window.hi};
    j["passed"] = passed();
    j["failed"] = failed();
    j["verdict"] = pass() ? "pass" : "fail";
    auto rows_json = nlohmann::ordered_json::array();
    for (const auto& r : rows) {
        nlohmann::ordered_json row;
        row["degree"] = r.degree;
        row["abutment"] = r.abutment.to_string();
        row["dual"] = r.dual.to_string();
        row["iso"] = r.iso;
        rows_json.push_back(std::move(row));
    }
    j["rows"] = std::move(rows_json);
    return j.dump(2) + "\n";
}

DualityReport verify_duality(const AbutmentGroup& abutment, const GradedGroup& source, DualMode mode, int a,
                             Window window)
{
    const Window base{window.lo - a, window.hi - a};
    const GradedGroup dual =
        shift(mode == DualMode::anderson ? anderson_dual(source, base) : brown_comenetz_dual(source, base), a);
    DualityReport report;
    report.mode = mode;
    report.shift = a;
    report.window = window;
    for (int n = window.lo; n <= window.hi; ++n) {
        DualityRow row;
        row.degree = n;
        row.abutment = abutment.at(n);
        row.dual = dual.group_at(n);
        row.iso = is_isomorphic(row.abutment, row.dual);
        report.rows.push_back(std::move(row));
    }
    return report;
}

}  // namespace lcss
