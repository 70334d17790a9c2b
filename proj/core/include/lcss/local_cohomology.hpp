#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "lcss/graded_group.hpp"
#include "lcss/module.hpp"

namespace lcss {

struct ExecutionPolicy {
    unsigned threads = 1;
};

/// Runs body(i) for i in [0, count) on up to policy.threads workers. Results
/// must be written to per-index slots so the outcome does not depend on scheduling.
void parallel_for(std::size_t count, const ExecutionPolicy& policy, const std::function<void(std::size_t)>& body);

/// A power of a module operator, written "B" or "B^2".
struct Multiplier {
    std::string op = "B";
    int power = 1;

    static Multiplier parse(std::string_view text);
    std::string to_string() const;
    int degree(const GradedModulePresentation& m) const { return power * m.shift_of(op); }
};

/// Number of x-multiplications needed to carry degree n to or above the stability degree.
int stabilisation_count(const GradedModulePresentation& m, const Multiplier& x, int n);

/// Label of label/op^k, using the tower convention "B^j*base" for generator names.
std::string divide_label(const std::string& label, const std::string& op, int k);

struct Window {
    int lo = 0;
    int hi = 0;
};

/// Options shared by the x-functors. `extra` adds iterations beyond the minimal
/// stabilisation count; results must not depend on it.
struct FunctorOptions {
    ExecutionPolicy policy;
    int extra = 0;
};

GradedGroup gamma_x(const GradedModulePresentation& m, const Multiplier& x, Window w, const FunctorOptions& o = {});

struct Localisation {
    GradedGroup value;
    std::map<int, GroupMorphism> gamma;  // M_n -> M[1/x]_n
};

Localisation localize_x(const GradedModulePresentation& m, const Multiplier& x, Window w, const FunctorOptions& o = {});
GradedGroup mod_x_infty(const GradedModulePresentation& m, const Multiplier& x, Window w, const FunctorOptions& o = {});

/// Torsion and divisible summands kept, free summands dropped.
GradedGroup gamma_p(const GradedGroup& g);
/// Free summands become divisible; everything else vanishes.
GradedGroup mod_p_infty(const GradedGroup& g);

/// (Gamma_p M)/x^inf: cokernel of the localisation map on torsion summands.
GradedGroup torsion_mod_x_infty(const GradedModulePresentation& m, const Multiplier& x, Window w,
                                const FunctorOptions& o = {});
/// Gamma_x(M/p^inf), computed on (Q_p/Z_p)-sums of the free summands.
GradedGroup gamma_x_of_mod_p(const GradedModulePresentation& m, const Multiplier& x, Window w,
                             const FunctorOptions& o = {});
/// (M/p^inf)/x^inf.
GradedGroup mod_p_mod_x(const GradedModulePresentation& m, const Multiplier& x, Window w,
                        const FunctorOptions& o = {});

struct LocalCohomologyOne {
    GradedGroup h0;
    GradedGroup h1;
};

LocalCohomologyOne local_cohomology_one(const GradedModulePresentation& m, const Multiplier& x, Window w,
                                        const FunctorOptions& o = {});

/// Checks 0 -> H0_n -> M_n -> M[1/x]_n -> H1_n -> 0 degreewise; returns the
/// degrees where the bookkeeping fails.
std::vector<int> exactness_failures(const GradedModulePresentation& m, const Multiplier& x, Window w);

/// The two ends of 0 -> left -> H^1 -> right -> 0. A degree is resolved when
/// one end vanishes there; otherwise it is ambiguous and never guessed.
struct ExtensionRecord {
    GradedGroup left;
    GradedGroup right;

    bool resolved_at(int n) const;
    std::vector<int> ambiguous_degrees() const;
    /// H^1 in degree n; throws if ambiguous.
    LabelledGroup value_at(int n) const;
    /// left + right in degree n, regardless of resolution.
    LabelledGroup cells_at(int n) const;
};

struct LocalCohomologyTwo {
    std::string first;   // x
    std::string second;  // y
    GradedGroup h0;
    ExtensionRecord h1;
    GradedGroup h2;
};

/// H^*_(x,y) for {x, y} = {p, op}; `first` is "p" or the operator.
LocalCohomologyTwo local_cohomology_two(const GradedModulePresentation& m, const std::string& first,
                                        const std::string& second, Window w, const FunctorOptions& o = {});

enum class PeriodicMode { polynomial, divisible };  // Z[M] and Z[M]/M^inf

/// G (x) Z[M] or G (x) Z[M]/M^inf materialised over w. Labels gain "*M^j" or "/M^j".
GradedGroup tensor_periodic(const GradedGroup& g, int period, PeriodicMode mode, Window w,
                            const std::string& period_label = "M");

enum class GorensteinTarget { zp, fp };

/// a = -sum(|y_i| + 1) for Z_p, one less for F_p.
int gorenstein_shift(const std::vector<int>& generator_degrees, GorensteinTarget target,
                     std::vector<std::string>* warnings = nullptr);

}  // namespace lcss
