#include "lcss/spectral.hpp"

#include <algorithm>
#include <cctype>

#include <fmt/core.h>

#include "lcss/snf.hpp"

namespace lcss {

BigradedPage::BigradedPage(int prime, int t_lo, int t_hi, int s_lo, int s_hi)
    : prime_(prime), t_lo_(t_lo), t_hi_(t_hi), s_lo_(s_lo), s_hi_(s_hi), empty_(prime)
{
    if (s_lo < 0 || s_lo > s_hi)
        throw Error(fmt::format("BigradedPage: bad filtration range [{}, {}]", s_lo, s_hi));
}

void BigradedPage::add(Bidegree b, Summand cell)
{
    if (b.s < s_lo_ || b.s > s_hi_ || b.t < t_lo_ || b.t > t_hi_)
        throw Error(fmt::format("BigradedPage: cell '{}' at (s,t) = ({},{}) outside the page", cell.label, b.s, b.t));
    auto [it, inserted] = cells_.try_emplace(b, LabelledGroup(prime_));
    it->second.add(std::move(cell));
}

void BigradedPage::set(Bidegree b, LabelledGroup g)
{
    if (g.empty()) {
        cells_.erase(b);
        return;
    }
    cells_.erase(b);
    for (const auto& s : g.summands())
        add(b, s);
}

const LabelledGroup& BigradedPage::at(Bidegree b) const
{
    auto it = cells_.find(b);
    return it == cells_.end() ? empty_ : it->second;
}

CellRef BigradedPage::locate(const std::string& label) const
{
    std::optional<CellRef> found;
    for (const auto& [b, g] : cells_)
        for (std::size_t i = 0; i < g.size(); ++i)
            if (g[i].label == label) {
                if (found)
                    throw Error(fmt::format("cell label '{}' is not unique on the page", label));
                found = CellRef{b, i};
            }
    if (!found)
        throw Error(fmt::format("no cell labelled '{}' on the page", label));
    return *found;
}

bool BigradedPage::contains(const std::string& label) const
{
    for (const auto& [b, g] : cells_)
        if (g.find(label))
            return true;
    return false;
}

std::vector<std::pair<Bidegree, Summand>> BigradedPage::column(int n) const
{
    std::vector<std::pair<Bidegree, Summand>> out;
    for (int s = s_lo_; s <= s_hi_; ++s) {
        const Bidegree b{s, n + s};
        for (const auto& cell : at(b).summands())
            out.emplace_back(b, cell);
    }
    return out;
}

MixedGroup BigradedPage::column_group(int n) const
{
    MixedGroup g = MixedGroup::zero(prime_);
    for (const auto& [b, cell] : column(n))
        g = g + cell.group(prime_);
    return g;
}

std::size_t BigradedPage::cell_count() const
{
    std::size_t n = 0;
    for (const auto& [b, g] : cells_)
        n += g.size();
    return n;
}

// ---------------------------------------------------------------- ideals

IdealSpec IdealSpec::parse(const std::string& text, int prime)
{
    std::vector<std::string> parts;
    std::string cur;
    for (char c : text) {
        if (c == ',') {
            parts.push_back(cur);
            cur.clear();
        }
        else if (!std::isspace(static_cast<unsigned char>(c))) {
            cur.push_back(c);
        }
    }
    parts.push_back(cur);

    IdealSpec spec;
    const std::string p_text = std::to_string(prime);
    bool have_x = false;
    for (const auto& part : parts) {
        if (part == "p" || part == p_text) {
            if (spec.with_p)
                throw Error(fmt::format("ideal '{}' names p twice", text));
            spec.with_p = true;
            spec.p_first = !have_x;
        }
        else if (part == "M") {
            if (spec.periodic || !have_x)
                throw Error(fmt::format("unsupported ideal '{}'", text));
            spec.periodic = true;
        }
        else if (!part.empty() && !have_x && !std::isdigit(static_cast<unsigned char>(part[0]))) {
            Multiplier::parse(part);
            spec.x = part;
            have_x = true;
        }
        else {
            throw Error(fmt::format("unsupported ideal '{}'", text));
        }
    }
    if (!have_x)
        throw Error(fmt::format("ideal '{}' has no operator", text));
    if (spec.periodic && spec.with_p && !spec.p_first)
        throw Error(fmt::format("unsupported ideal '{}'", text));
    return spec;
}

std::string IdealSpec::to_string() const
{
    std::string out;
    if (with_p && p_first)
        out += "p,";
    out += x;
    if (with_p && !p_first)
        out += ",p";
    if (periodic)
        out += ",M";
    return out;
}

namespace {

void place(BigradedPage& page, const GradedGroup& g, int s, Window t)
{
    for (int n = t.lo; n <= t.hi; ++n)
        for (const auto& cell : g.at(n).summands())
            page.add({s, n}, cell);
}

}  // namespace

BigradedPage build_e2(const GradedModulePresentation& m, const IdealSpec& ideal, Window t, const FunctorOptions& o)
{
    const int shift = ideal.periodic ? 1 : 0;
    const int s_hi = (ideal.with_p ? 2 : 1) + shift;
    BigradedPage page(m.prime, t.lo, t.hi, shift, s_hi);

    Window base = t;
    int period = 0;
    std::string period_label;
    if (ideal.periodic) {
        if (!m.period)
            throw Error(fmt::format("module '{}' has no period generator", m.name));
        period_label = m.period->first;
        period = m.period->second;
        base = Window{t.lo + period, std::max(m.hi, t.lo + period)};
    }
    auto materialise = [&](const GradedGroup& g) {
        if (!ideal.periodic)
            return g;
        return tensor_periodic(g, period, PeriodicMode::divisible, t, period_label);
    };

    if (!ideal.with_p) {
        const LocalCohomologyOne h = local_cohomology_one(m, Multiplier::parse(ideal.x), base, o);
        place(page, materialise(h.h0), shift, t);
        place(page, materialise(h.h1), shift + 1, t);
        return page;
    }

    const LocalCohomologyTwo h = ideal.p_first ? local_cohomology_two(m, "p", ideal.x, base, o)
                                               : local_cohomology_two(m, ideal.x, "p", base, o);
    place(page, materialise(h.h0), shift, t);
    const GradedGroup left = materialise(h.h1.left);
    const GradedGroup right = materialise(h.h1.right);
    for (int n = t.lo; n <= t.hi; ++n) {
        const bool ambiguous = !left.at(n).empty() && !right.at(n).empty();
        for (const auto& cell : left.at(n).summands())
            page.add({shift + 1, n}, cell);
        for (const auto& cell : right.at(n).summands())
            page.add({shift + 1, n}, cell);
        if (ambiguous)
            page.flagged.insert({shift + 1, n});
    }
    place(page, materialise(h.h2), shift + 2, t);
    return page;
}

// ---------------------------------------------------------- differentials

BigradedPage apply_differentials(const BigradedPage& page, const std::vector<DifferentialRule>& rules)
{
    BigradedPage next = page;
    next.r = page.r + 1;
    const int p = page.prime();

    struct Edit {
        Bidegree at;
        std::string label;
        int killed;  // log_p of the image order
        bool source;
    };
    std::vector<Edit> edits;
    for (const auto& rule : rules) {
        if (rule.r != page.r)
            continue;
        const CellRef src = page.locate(rule.source);
        const CellRef tgt = page.locate(rule.target);
        const Bidegree want{src.at.s + rule.r, src.at.t + rule.r - 1};
        if (tgt.at != want)
            throw Error(fmt::format("d_{}({}) at (s,t)=({},{}) cannot hit '{}' at ({},{}); expected ({},{})", rule.r,
                                    rule.source, src.at.s, src.at.t, rule.target, tgt.at.s, tgt.at.t, want.s, want.t));
        const int e = valuation(rule.image_order, p);
        if (e < 0 || power_of(p, e) != rule.image_order)
            throw Error(fmt::format("image order {} of d_{}({}) is not a power of {}", rule.image_order.get_str(),
                                    rule.r, rule.source, p));
        const Summand& s = page.at(src.at)[src.index];
        const Summand& d = page.at(tgt.at)[tgt.index];
        if (s.kind == SummandKind::cyclic && e > s.exponent)
            throw Error(fmt::format("image order of d_{}({}) exceeds the source order", rule.r, rule.source));
        if (d.kind == SummandKind::cyclic && e > d.exponent)
            throw Error(fmt::format("image order of d_{}({}) exceeds the order of '{}'", rule.r, rule.source,
                                    rule.target));
        if (d.kind == SummandKind::free && e > 0)
            throw Error(fmt::format("d_{}({}) has finite image in the free cell '{}'", rule.r, rule.source,
                                    rule.target));
        if (s.kind == SummandKind::divisible && d.kind != SummandKind::divisible && e > 0)
            throw Error(fmt::format("d_{}({}) maps a divisible cell onto a reduced one", rule.r, rule.source));
        edits.push_back({src.at, rule.source, e, true});
        edits.push_back({tgt.at, rule.target, e, false});
    }

    for (const auto& edit : edits) {
        LabelledGroup g = next.at(edit.at);
        std::vector<Summand> cells = g.summands();
        auto it = std::find_if(cells.begin(), cells.end(), [&](const Summand& c) { return c.label == edit.label; });
        if (it == cells.end())
            throw Error(fmt::format("cell '{}' touched by two differentials", edit.label));
        Summand& c = *it;
        if (c.kind == SummandKind::divisible || edit.killed == 0) {
            // Q_p/Z_p modulo or inside a finite subgroup is again Q_p/Z_p.
        }
        else if (edit.source) {
            c.label = multiple_label(p, edit.killed, c.label);
            if (c.kind == SummandKind::cyclic)
                c.exponent -= edit.killed;
        }
        else {
            c.exponent -= edit.killed;
        }
        if (c.kind == SummandKind::cyclic && c.exponent == 0)
            cells.erase(it);
        next.set(edit.at, LabelledGroup(p, std::move(cells)));
    }
    return next;
}

BigradedPage run_spectral_sequence(const BigradedPage& e2, const std::vector<DifferentialRule>& rules)
{
    int last = e2.r;
    for (const auto& rule : rules) {
        if (rule.r < e2.r)
            throw Error(fmt::format("d_{} rule on an E_{} page", rule.r, e2.r));
        last = std::max(last, rule.r);
    }
    BigradedPage page = e2;
    while (page.r <= last)
        page = apply_differentials(page, rules);
    return page;
}

namespace {

bool hom_can_be_nonzero(const Summand& from, const Summand& to)
{
    if (from.kind == SummandKind::cyclic && to.kind == SummandKind::free)
        return false;
    if (from.kind == SummandKind::divisible && to.kind != SummandKind::divisible)
        return false;
    return true;
}

}  // namespace

std::vector<DifferentialCandidate> differential_room(const BigradedPage& page)
{
    std::vector<DifferentialCandidate> out;
    for (const auto& [b, g] : page.cells())
        for (int r = page.r; b.s + r <= page.s_hi(); ++r) {
            const Bidegree target{b.s + r, b.t + r - 1};
            const LabelledGroup& h = page.at(target);
            bool room = false;
            for (const auto& a : g.summands())
                for (const auto& c : h.summands())
                    room = room || hom_can_be_nonzero(a, c);
            if (room)
                out.push_back({r, b, target});
        }
    return out;
}

// ---------------------------------------------------------------- abutment

MixedGroup AbutmentGroup::at(int n) const
{
    auto it = groups.find(n);
    if (it == groups.end())
        throw Error(fmt::format("abutment not assembled in degree {}", n));
    return it->second;
}

GradedGroup AbutmentGroup::as_graded() const
{
    GradedGroup out(prime, lo, hi);
    for (const auto& [n, g] : groups) {
        LabelledGroup h(prime);
        for (int i = 0; i < g.free_rank(); ++i)
            h.add(Summand::free(""));
        for (int a : g.torsion_exponents())
            h.add(Summand::cyclic(a, ""));
        for (int i = 0; i < g.divisible_rank(); ++i)
            h.add(Summand::divisible(""));
        out.set(n, std::move(h));
    }
    return out;
}

AbutmentGroup assemble_abutment(const BigradedPage& page, const std::vector<ExtensionRule>& rules, Window stems)
{
    const int p = page.prime();
    if (stems.lo < page.stem_lo() || stems.hi > page.stem_hi())
        throw Error(fmt::format("stems [{}, {}] not covered by the page (complete stems [{}, {}])", stems.lo,
                                stems.hi, page.stem_lo(), page.stem_hi()));

    std::map<std::string, const ExtensionRule*> by_low;
    std::map<std::string, int> rule_stem;
    for (const auto& rule : rules) {
        const CellRef low = page.locate(rule.low);
        const CellRef high = page.locate(rule.high);
        if (low.at.stem() != high.at.stem())
            throw Error(fmt::format("extension {} -> {} crosses stems", rule.low, rule.high));
        if (low.at.s >= high.at.s)
            throw Error(fmt::format("extension {} -> {} must raise filtration", rule.low, rule.high));
        if (page.at(low.at)[low.index].kind != SummandKind::cyclic)
            throw Error(fmt::format("extension source '{}' is not a finite cyclic cell", rule.low));
        if (!by_low.emplace(rule.low, &rule).second)
            throw Error(fmt::format("two extensions start at '{}'", rule.low));
    }

    AbutmentGroup out;
    out.prime = p;
    out.lo = stems.lo;
    out.hi = stems.hi;
    for (int n = stems.lo; n <= stems.hi; ++n) {
        const auto cells = page.column(n);
        std::vector<std::string> provenance;
        std::map<std::string, std::size_t> index;
        std::vector<const Summand*> gens;
        int divisible = 0;
        for (const auto& [b, cell] : cells) {
            provenance.push_back(fmt::format("E({},{}) {}", b.s, b.t, cell.label));
            if (cell.kind == SummandKind::divisible) {
                ++divisible;
                continue;
            }
            index[cell.label] = gens.size();
            gens.push_back(&cell);
        }
        IntMatrix rel(gens.size(), gens.size());
        std::size_t col = 0;
        for (std::size_t i = 0; i < gens.size(); ++i) {
            const Summand& g = *gens[i];
            if (g.kind != SummandKind::cyclic)
                continue;
            const Integer order = power_of(p, g.exponent);
            rel(i, col) = order;
            auto it = by_low.find(g.label);
            if (it != by_low.end()) {
                const ExtensionRule& rule = *it->second;
                if (mpz_divisible_p(order.get_mpz_t(), rule.multiplier.get_mpz_t()) == 0)
                    throw Error(fmt::format("multiplier {} does not divide the order of '{}'",
                                            rule.multiplier.get_str(), rule.low));
                auto hi = index.find(rule.high);
                if (hi == index.end())
                    throw Error(fmt::format("extension target '{}' is not a reduced cell in stem {}", rule.high, n));
                Integer q = order / rule.multiplier;
                rel(hi->second, col) -= q;
            }
            ++col;
        }
        const SnfResult snf = smith_normal_form(rel.select_cols([&] {
            std::vector<std::size_t> c(col);
            for (std::size_t i = 0; i < col; ++i)
                c[i] = i;
            return c;
        }()));
        int free_rank = 0;
        std::vector<int> torsion;
        for (std::size_t i = 0; i < gens.size(); ++i) {
            const Integer d = i < snf.diagonal.size() ? snf.diagonal[i] : Integer(0);
            if (d == 0)
                ++free_rank;
            else if (int v = valuation(d, p); v > 0)
                torsion.push_back(v);
        }
        out.groups.emplace(n, MixedGroup(p, free_rank, divisible, std::move(torsion)));
        out.provenance.emplace(n, std::move(provenance));
    }
    return out;
}

std::vector<ExtensionRule> rules_on_page(const BigradedPage& page, const std::vector<ExtensionRule>& rules)
{
    std::vector<ExtensionRule> out;
    for (const auto& rule : rules)
        if (page.contains(rule.low) && page.contains(rule.high))
            out.push_back(rule);
    return out;
}

RuleSet periodic_rules(const RuleSet& rules, int max_j, const std::string& period_label)
{
    RuleSet out;
    for (int j = 1; j <= max_j; ++j) {
        const std::string suffix = "/" + (j == 1 ? period_label : fmt::format("{}^{}", period_label, j));
        for (auto d : rules.differentials) {
            d.source += suffix;
            d.target += suffix;
            out.differentials.push_back(d);
        }
        for (auto e : rules.extensions) {
            e.low += suffix;
            e.high += suffix;
            out.extensions.push_back(e);
        }
        for (auto dec : rules.decorations) {
            dec.from += suffix;
            dec.to += suffix;
            out.decorations.push_back(dec);
        }
    }
    return out;
}

}  // namespace lcss
