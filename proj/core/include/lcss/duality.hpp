#pragma once

#include <string>
#include <vector>

#include "lcss/graded_group.hpp"
#include "lcss/module.hpp"
#include "lcss/spectral.hpp"

namespace lcss {

enum class DualMode { anderson, brown_comenetz };

DualMode parse_dual_mode(const std::string& text);
std::string to_string(DualMode mode);

/// pi_*(M) as a graded group: the slices of the presentation, zero below lo.
GradedGroup homotopy_of(const GradedModulePresentation& m);

/// (I_Zp G)_{-t} = Ext(G_{t-1}, Z_p) + Hom(G_t, Z_p), over the output window w.
GradedGroup anderson_dual(const GradedGroup& g, Window w);
/// (I G)_{-t} = Hom(G_t, Q_p/Z_p), over the output window w.
GradedGroup brown_comenetz_dual(const GradedGroup& g, Window w);
/// (Sigma^a G)_n = G_{n-a}.
GradedGroup shift(const GradedGroup& g, int a);

struct DualityRow {
    int degree = 0;
    MixedGroup abutment;
    MixedGroup dual;
    bool iso = false;
};

struct DualityReport {
    DualMode mode = DualMode::anderson;
    int shift = 0;
    Window window;
    std::vector<DualityRow> rows;

    std::size_t passed() const;
    std::size_t failed() const;
    bool pass() const { return failed() == 0 && !rows.empty(); }
    std::vector<int> mismatches() const;

    /// degree | abutment | dual | verdict
    std::string to_table() const;
    /// Stable JSON rendering (keys sorted, two-space indent).
    std::string to_json() const;
};

/// Compares abutment_n with (Sigma^shift D(source))_n for n in the window.
DualityReport verify_duality(const AbutmentGroup& abutment, const GradedGroup& source, DualMode mode, int shift,
                             Window window);

}  // namespace lcss
