#include <map>

#include <gtest/gtest.h>

#include "lcss/chart.hpp"
#include "pipeline.hpp"

using namespace lcss;

namespace {

std::size_t count_of(const std::string& hay, const std::string& needle)
{
    std::size_t n = 0;
    for (auto pos = hay.find(needle); pos != std::string::npos; pos = hay.find(needle, pos + 1))
        ++n;
    return n;
}

// Text between the opening of the group with the given stroke and its close.
std::string group_body(const std::string& svg, const std::string& stroke)
{
    const auto start = svg.find("<g stroke=\"" + stroke + "\"");
    if (start == std::string::npos)
        return {};
    return svg.substr(start, svg.find("</g>", start) - start);
}

ChartSpec spec_for(const BigradedPage& page, Window stems, const RuleSet& rules)
{
    ChartSpec spec;
    spec.x_lo = stems.lo;
    spec.x_hi = stems.hi;
    for (const auto& d : rules.differentials)
        if (page.contains(d.source) && page.contains(d.target))
            spec.differentials.push_back(d);
    spec.extensions = rules_on_page(page, rules.extensions);
    spec.decorations = rules.decorations;
    return spec;
}

// Expected glyphs per bidegree: Z/p summands pair up two to an ellipse.
std::map<std::pair<int, int>, std::size_t> census(const BigradedPage& page, Window stems)
{
    std::map<std::pair<int, int>, std::size_t> out;
    for (const auto& [b, g] : page.cells()) {
        if (g.empty() || b.stem() < stems.lo || b.stem() > stems.hi)
            continue;
        std::size_t klein = 0, other = 0;
        for (const auto& s : g.summands())
            (s.kind == SummandKind::cyclic && s.exponent == 1 ? klein : other)++;
        out[{b.stem(), b.s}] = other + (klein + 1) / 2;
    }
    return out;
}

}  // namespace

TEST(Chart, GlyphCensus)
{
    for (const auto& [name, ideal, w] : std::vector<std::tuple<std::string, std::string, Window>>{
             {"tmf-N-p2", "B", {-20, 172}},
             {"tmf-N-p2", "2,B", {-20, 172}},
             {"tmf-N-p3", "3,B", {-10, 52}},
             {"ko-p2", "2,B", {-28, 0}}}) {
        const Dataset d = load_builtin(name);
        const auto run = pipeline::run(d, ideal, w);
        const auto glyphs = layout_glyphs(run.e2, spec_for(run.e2, w, {}));
        std::map<std::pair<int, int>, std::size_t> got;
        std::size_t labels = 0;
        for (const auto& g : glyphs) {
            ++got[{g.x, g.y}];
            labels += g.labels.size();
        }
        EXPECT_EQ(got, census(run.e2, w)) << name << " " << ideal;
        std::size_t summands = 0;
        for (const auto& [b, g] : run.e2.cells())
            if (b.stem() >= w.lo && b.stem() <= w.hi)
                summands += g.size();
        EXPECT_EQ(labels, summands);
    }
}

TEST(Chart, KleinPairIsOneEllipse)
{
    BigradedPage page(2, 0, 70, 0, 0);
    page.add({0, 65}, Summand::cyclic(1, "eta_1*kappabar^2"));
    page.add({0, 65}, Summand::cyclic(1, "nu_2*kappa"));
    page.add({0, 66}, Summand::cyclic(1, "a"));
    page.add({0, 66}, Summand::cyclic(1, "b"));
    page.add({0, 66}, Summand::cyclic(1, "c"));
    ChartSpec spec;
    spec.x_lo = 60;
    spec.x_hi = 70;
    const auto glyphs = layout_glyphs(page, spec);
    ASSERT_EQ(glyphs.size(), 3u);
    EXPECT_EQ(glyphs[0].shape, "ellipse");
    EXPECT_EQ(glyphs[0].text, "22");
    const std::string text = emit_chart(page, spec, ChartFormat::ascii);
    EXPECT_NE(text.find("22 "), std::string::npos);
}

TEST(Chart, ThreeAdicDifferentialsAreGreenZigzags)
{
    const Dataset d = load_builtin("tmf-N-p3");
    const Window w{-10, 52};
    const auto run = pipeline::run(d, "3,B", w);
    const std::string svg = emit_chart(run.e2, spec_for(run.e2, w, d.rules_for(IdealSpec::parse("3,B", 3))),
                                       ChartFormat::svg);
    EXPECT_EQ(count_of(group_body(svg, "green"), "<path"), 2u);
    EXPECT_EQ(count_of(group_body(svg, "red"), "<line"), 2u);
}

TEST(Chart, KoEtaExtensionsAreDashed)
{
    const Dataset d = load_builtin("ko-p2");
    const Window w{-28, 0};
    const auto run = pipeline::run(d, "2,B", w);
    const std::string svg = emit_chart(run.e2, spec_for(run.e2, w, d.rules_for(IdealSpec::parse("2,B", 2))),
                                       ChartFormat::svg);
    EXPECT_NE(svg.find("stroke-dasharray"), std::string::npos);
    EXPECT_EQ(count_of(group_body(svg, "red"), "<line"), 3u);
    EXPECT_TRUE(group_body(svg, "green").empty() || count_of(group_body(svg, "green"), "<path") == 0);
}

TEST(Chart, MissingDecorationCell)
{
    BigradedPage page(2, 0, 10, 0, 1);
    page.add({0, 3}, Summand::cyclic(3, "nu"));
    ChartSpec spec;
    spec.x_hi = 10;
    spec.decorations.push_back({"eta", "nu", "ghost"});
    try {
        emit_chart(page, spec, ChartFormat::svg);
        FAIL();
    }
    catch (const Error& e) {
        EXPECT_NE(std::string(e.what()).find("ghost"), std::string::npos);
    }
}

TEST(Chart, EmptyWindowStillDrawsAxes)
{
    BigradedPage page(2, 0, 10, 0, 2);
    ChartSpec spec;
    spec.x_lo = 0;
    spec.x_hi = 10;
    const std::string svg = emit_chart(page, spec, ChartFormat::svg);
    EXPECT_EQ(svg.rfind("<svg", 0) == 0 || svg.rfind("<?xml", 0) == 0, true);
    EXPECT_EQ(svg.substr(svg.size() - 7), "</svg>\n");
    EXPECT_EQ(count_of(svg, "<circle"), 0u);
    EXPECT_NE(svg.find("<line"), std::string::npos);
    const std::string text = emit_chart(page, spec, ChartFormat::ascii);
    EXPECT_NE(text.find("+---"), std::string::npos);
}

TEST(Chart, Deterministic)
{
    const Dataset d = load_builtin("tmf-N-p2");
    const Window w{-20, 172};
    FunctorOptions four;
    four.policy.threads = 4;
    const auto a = pipeline::run(d, "2,B", w);
    const auto b = pipeline::run(d, "2,B", w, four);
    const RuleSet& rules = d.rules_for(IdealSpec::parse("2,B", 2));
    for (auto f : {ChartFormat::svg, ChartFormat::ascii}) {
        const std::string x = emit_chart(a.e2, spec_for(a.e2, w, rules), f);
        EXPECT_EQ(x, emit_chart(a.e2, spec_for(a.e2, w, rules), f));
        EXPECT_EQ(x, emit_chart(b.e2, spec_for(b.e2, w, rules), f));
    }
    ChartSpec flat;
    flat.x_lo = w.lo;
    flat.x_hi = w.hi;
    EXPECT_EQ(emit_chart(a.abutment, flat, ChartFormat::svg), emit_chart(b.abutment, flat, ChartFormat::svg));
}
