#pragma once

#include "lcss/dataset.hpp"
#include "lcss/duality.hpp"
#include "lcss/spectral.hpp"

namespace pipeline {

using namespace lcss;

// E_2 over the internal degrees that feed the given stems.
inline BigradedPage e2_for_stems(const Dataset& d, const IdealSpec& ideal, Window stems, const FunctorOptions& o = {})
{
    const int s_lo = ideal.periodic ? 1 : 0;
    const int s_hi = s_lo + (ideal.with_p ? 2 : 1);
    return build_e2(d.module, ideal, Window{stems.lo + s_lo, stems.hi + s_hi}, o);
}

inline RuleSet windowed_rules(const Dataset& d, const IdealSpec& ideal, const BigradedPage& e2, Window stems)
{
    RuleSet rules = d.rules_for(ideal);
    if (ideal.periodic)
        rules = periodic_rules(rules, (d.module.hi - stems.lo) / d.module.period->second + 1, d.module.period->first);
    RuleSet out;
    for (const auto& r : rules.differentials)
        if (e2.contains(r.source) && e2.contains(r.target))
            out.differentials.push_back(r);
    out.extensions = rules.extensions;
    out.decorations = rules.decorations;
    return out;
}

struct Run {
    BigradedPage e2;
    BigradedPage einf;
    AbutmentGroup abutment;
};

inline Run run(const Dataset& d, const std::string& ideal_text, Window stems, const FunctorOptions& o = {})
{
    const IdealSpec ideal = IdealSpec::parse(ideal_text, d.module.prime);
    Run r;
    r.e2 = e2_for_stems(d, ideal, stems, o);
    const RuleSet rules = windowed_rules(d, ideal, r.e2, stems);
    r.einf = run_spectral_sequence(r.e2, rules.differentials);
    r.abutment = assemble_abutment(r.einf, rules_on_page(r.einf, rules.extensions), stems);
    return r;
}

inline GradedGroup source_for(const Dataset& d, const IdealSpec& ideal)
{
    GradedGroup g = homotopy_of(d.module);
    if (!ideal.periodic)
        return g;
    const int period = d.module.period->second;
    g = tensor_periodic(g, period, PeriodicMode::polynomial, Window{d.module.lo, d.module.hi + period},
                        d.module.period->first);
    g.zero_below = true;
    return g;
}

inline DualityReport verify(const Dataset& d, const std::string& ideal_text, Window stems, DualMode mode, int shift)
{
    const IdealSpec ideal = IdealSpec::parse(ideal_text, d.module.prime);
    const Run r = run(d, ideal_text, stems);
    return verify_duality(r.abutment, source_for(d, ideal), mode, shift, stems);
}

}  // namespace pipeline
