#pragma once

#include <string>
#include <vector>

#include "lcss/spectral.hpp"

namespace lcss {

enum class ChartFormat { svg, ascii };
enum class Grading { adams, linear };

struct ChartSpec {
    Grading grading = Grading::adams;
    int x_lo = 0;
    int x_hi = 0;
    std::string title;
    bool b_lines = true;
    /// Differentials drawn as green zigzags; they must name cells on the page.
    std::vector<DifferentialRule> differentials;
    /// Hidden extensions, dashed red.
    std::vector<ExtensionRule> extensions;
    /// eta/nu decorations, sloping dashed red.
    std::vector<DecorationRule> decorations;
};

struct Glyph {
    int x = 0;
    int y = 0;
    int slot = 0;           // position within a stacked cell
    std::string text;       // "8", "22", ...
    std::string shape;      // circle, square, diamond, ellipse
    std::vector<std::string> labels;
};

/// One glyph per cyclic, free or divisible summand, except that two Z/p summands
/// in one cell share an ellipse. Order is deterministic.
std::vector<Glyph> layout_glyphs(const BigradedPage& page, const ChartSpec& spec);

std::string emit_chart(const BigradedPage& page, const ChartSpec& spec, ChartFormat format);
std::string emit_chart(const AbutmentGroup& abutment, const ChartSpec& spec, ChartFormat format);

}  // namespace lcss
