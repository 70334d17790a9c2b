#pragma once

#include <map>
#include <string>
#include <vector>

#include "lcss/pgroup.hpp"

namespace lcss {

/// Degreewise labelled groups over a window [lo, hi]. Outside the window a
/// value is either known to vanish (zero_below / zero_above) or unknown, in
/// which case at() throws.
class GradedGroup {
public:
    GradedGroup() = default;
    GradedGroup(int prime, int lo, int hi);

    int prime() const { return prime_; }
    int lo() const { return lo_; }
    int hi() const { return hi_; }

    bool zero_below = false;
    bool zero_above = false;

    void set(int degree, LabelledGroup g);
    const LabelledGroup& at(int degree) const;
    MixedGroup group_at(int degree) const { return at(degree).group(); }
    bool defined_at(int degree) const;

    /// Degrees in the window with a nonzero value, ascending.
    std::vector<int> support() const;

    /// Same values on a sub- or super-window; new degrees must be known zero.
    GradedGroup restricted(int lo, int hi) const;

    /// "degree | group | generators" table, one line per nonzero degree.
    std::string to_table() const;

    friend bool operator==(const GradedGroup&, const GradedGroup&) = default;

private:
    int prime_ = 2;
    int lo_ = 0;
    int hi_ = -1;
    std::map<int, LabelledGroup> values_;
    LabelledGroup empty_;
};

/// Degreewise direct sum; windows must agree.
GradedGroup direct_sum(const GradedGroup& a, const GradedGroup& b);

/// Comma-separated generator labels of a labelled group.
std::string label_list(const LabelledGroup& g);

}  // namespace lcss
