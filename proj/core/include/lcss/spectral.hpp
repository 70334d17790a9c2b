#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "lcss/graded_group.hpp"
#include "lcss/local_cohomology.hpp"

namespace lcss {

/// d_r from the cell `source` to the cell `target`, with the given image order.
struct DifferentialRule {
    int r = 2;
    std::string source;
    std::string target;
    Integer image_order = 1;
    friend bool operator==(const DifferentialRule&, const DifferentialRule&) = default;
};

/// multiplier * low = high across filtrations, in the abutment.
struct ExtensionRule {
    std::string low;
    std::string high;
    Integer multiplier = 1;
    friend bool operator==(const ExtensionRule&, const ExtensionRule&) = default;
};

/// Chart-only eta/nu decoration between two cells.
struct DecorationRule {
    std::string kind;  // "eta" or "nu"
    std::string from;
    std::string to;
    friend bool operator==(const DecorationRule&, const DecorationRule&) = default;
};

struct RuleSet {
    std::vector<DifferentialRule> differentials;
    std::vector<ExtensionRule> extensions;
    std::vector<DecorationRule> decorations;
    friend bool operator==(const RuleSet&, const RuleSet&) = default;
};

struct Bidegree {
    int s = 0;
    int t = 0;
    int stem() const { return t - s; }
    auto operator<=>(const Bidegree&) const = default;
};

struct CellRef {
    Bidegree at;
    std::size_t index = 0;
};

/// E_r page in Adams indexing: E_r^{s,t} with d_r: (s, t) -> (s + r, t + r - 1).
class BigradedPage {
public:
    BigradedPage() = default;
    BigradedPage(int prime, int t_lo, int t_hi, int s_lo, int s_hi);

    int prime() const { return prime_; }
    int r = 2;
    int t_lo() const { return t_lo_; }
    int t_hi() const { return t_hi_; }
    int s_lo() const { return s_lo_; }
    int s_hi() const { return s_hi_; }

    void add(Bidegree b, Summand cell);
    void set(Bidegree b, LabelledGroup g);
    const LabelledGroup& at(Bidegree b) const;
    const std::map<Bidegree, LabelledGroup>& cells() const { return cells_; }

    /// Bidegrees whose H^1 extension was not determined by its ends.
    std::set<Bidegree> flagged;

    /// Unique cell with this label; throws if absent or repeated.
    CellRef locate(const std::string& label) const;
    bool contains(const std::string& label) const;

    /// Stems n for which every filtration s_lo..s_hi lies inside the t-window.
    int stem_lo() const { return t_lo_ - s_lo_; }
    int stem_hi() const { return t_hi_ - s_hi_; }
    /// Cells in stem n, ordered by s.
    std::vector<std::pair<Bidegree, Summand>> column(int n) const;
    MixedGroup column_group(int n) const;

    std::size_t cell_count() const;

    friend bool operator==(const BigradedPage&, const BigradedPage&) = default;

private:
    int prime_ = 2;
    int t_lo_ = 0, t_hi_ = -1, s_lo_ = 0, s_hi_ = 0;
    std::map<Bidegree, LabelledGroup> cells_;
    LabelledGroup empty_;
};

/// Ideal shapes: (x), (p, x), (x, M), (p, x, M).
struct IdealSpec {
    bool with_p = false;
    bool p_first = true;  // order of the composite functor for two generators
    std::string x = "B";
    bool periodic = false;

    /// "B", "p,B", "2,B", "B,p", "B,M", "p,B,M", "2,B,M".
    static IdealSpec parse(const std::string& text, int prime);
    std::string to_string() const;
};

/// E_2 page over the internal-degree window [t.lo, t.hi].
BigradedPage build_e2(const GradedModulePresentation& m, const IdealSpec& ideal, Window t,
                      const FunctorOptions& o = {});

/// Applies the rules of page r and returns E_{r+1}.
BigradedPage apply_differentials(const BigradedPage& page, const std::vector<DifferentialRule>& rules);

/// Runs every differential in the rule set, page by page, up to the last one.
BigradedPage run_spectral_sequence(const BigradedPage& e2, const std::vector<DifferentialRule>& rules);

struct DifferentialCandidate {
    int r = 2;
    Bidegree source;
    Bidegree target;
};

/// Pairs of nonzero cells where a d_r (r >= page.r) could be nonzero, judging
/// by bidegree and by whether Hom(source, target) can be nonzero. Empty means
/// the spectral sequence collapses.
std::vector<DifferentialCandidate> differential_room(const BigradedPage& page);

struct AbutmentGroup {
    int prime = 2;
    int lo = 0;
    int hi = -1;
    std::map<int, MixedGroup> groups;
    std::map<int, std::vector<std::string>> provenance;

    MixedGroup at(int n) const;
    GradedGroup as_graded() const;
};

/// Assembles the abutment in stems [stems.lo, stems.hi] from E_infinity.
AbutmentGroup assemble_abutment(const BigradedPage& page, const std::vector<ExtensionRule>& rules, Window stems);

/// Extension rules whose cells both exist on the page.
std::vector<ExtensionRule> rules_on_page(const BigradedPage& page, const std::vector<ExtensionRule>& rules);

/// Copies of rules for the periodic family: labels gain "/M^j" and nothing else changes.
RuleSet periodic_rules(const RuleSet& rules, int max_j, const std::string& period_label = "M");

}  // namespace lcss
