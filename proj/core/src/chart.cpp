#include "lcss/chart.hpp"

#include <algorithm>
#include <map>

#include <fmt/core.h>

namespace lcss {

namespace {

constexpr int unit_x = 30;
constexpr int unit_y = 44;
constexpr int margin = 40;

int x_of(const ChartSpec& spec, Bidegree b)
{
    return spec.grading == Grading::adams ? b.stem() : b.t;
}

std::string xml_escape(const std::string& s)
{
    std::string out;
    for (char c : s) {
        switch (c) {
        case '&': out += "&amp;"; break;
        case '<': out += "&lt;"; break;
        case '>': out += "&gt;"; break;
        case '"': out += "&quot;"; break;
        default: out.push_back(c);
        }
    }
    return out;
}

// "X/B^k" -> "X/B^{k+1}", "B^j*X" -> "B^{j-1}*X".
std::string one_lower(const std::string& label)
{
    const auto slash = label.rfind("/B");
    if (slash != std::string::npos) {
        const std::string tail = label.substr(slash + 2);
        if (tail.empty())
            return label + "^2";
        if (tail[0] == '^' && tail.size() > 1
            && std::all_of(tail.begin() + 1, tail.end(), [](char c) { return std::isdigit((unsigned char)c); }))
            return label.substr(0, slash) + fmt::format("/B^{}", std::stoi(tail.substr(1)) + 1);
        return {};
    }
    return divide_label(label, "B", 1);
}

struct Layout {
    std::vector<Glyph> glyphs;
    std::map<std::string, std::size_t> by_label;
    int y_lo = 0;
    int y_hi = 0;
};

Layout make_layout(const BigradedPage& page, const ChartSpec& spec)
{
    Layout l;
    l.y_lo = page.s_lo();
    l.y_hi = page.s_hi();
    const int p = page.prime();
    for (const auto& [b, g] : page.cells()) {
        const int x = x_of(spec, b);
        if (x < spec.x_lo || x > spec.x_hi)
            continue;
        int slot = 0;
        std::vector<const Summand*> pending_klein;
        auto flush_klein = [&](bool force) {
            while (pending_klein.size() >= 2 || (force && !pending_klein.empty())) {
                Glyph gl{x, b.s, slot++, {}, {}, {}};
                if (pending_klein.size() >= 2) {
                    gl.text = fmt::format("{0}{0}", p);
                    gl.shape = "ellipse";
                    gl.labels = {pending_klein[0]->label, pending_klein[1]->label};
                    pending_klein.erase(pending_klein.begin(), pending_klein.begin() + 2);
                }
                else {
                    gl.text = std::to_string(p);
                    gl.shape = "circle";
                    gl.labels = {pending_klein[0]->label};
                    pending_klein.clear();
                }
                l.glyphs.push_back(std::move(gl));
            }
        };
        for (const auto& s : g.summands()) {
            if (s.kind == SummandKind::cyclic && s.exponent == 1) {
                pending_klein.push_back(&s);
                flush_klein(false);
                continue;
            }
            flush_klein(true);
            Glyph gl{x, b.s, slot++, {}, {}, {s.label}};
            if (s.kind == SummandKind::cyclic) {
                gl.text = power_of(p, s.exponent).get_str();
                gl.shape = "circle";
            }
            else if (s.kind == SummandKind::free) {
                gl.shape = "square";
            }
            else {
                gl.shape = "diamond";
            }
            l.glyphs.push_back(std::move(gl));
        }
        flush_klein(true);
    }
    for (std::size_t i = 0; i < l.glyphs.size(); ++i)
        for (const auto& label : l.glyphs[i].labels)
            if (!label.empty())
                l.by_label.emplace(label, i);
    return l;
}

// Index of the glyph carrying `label`, or -1 when the cell lies outside the window.
long find_glyph(const Layout& l, const BigradedPage& page, const std::string& label)
{
    auto it = l.by_label.find(label);
    if (it != l.by_label.end())
        return static_cast<long>(it->second);
    if (!page.contains(label))
        throw Error(fmt::format("chart decoration refers to missing cell '{}'", label));
    return -1;
}

struct Point {
    int x, y;
};

Point centre(const ChartSpec& spec, const Layout& l, const Glyph& g)
{
    return {margin + (g.x - spec.x_lo) * unit_x + unit_x / 2 + g.slot * 7,
            margin + (l.y_hi - g.y) * unit_y + unit_y / 2 - g.slot * 7};
}

std::string svg(const BigradedPage& page, const ChartSpec& spec, const Layout& l)
{
    const int cols = std::max(0, spec.x_hi - spec.x_lo + 1);
    const int rows = l.y_hi - l.y_lo + 1;
    const int width = 2 * margin + cols * unit_x;
    const int height = 2 * margin + rows * unit_y;
    std::string out;
    out += "<?xml version=\"1.0\" encoding=\"UTF-8\" standalone=\"yes\"?>\n";
    out += fmt::format("<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{}\" height=\"{}\" "
                       "viewBox=\"0 0 {} {}\" font-family=\"sans-serif\" font-size=\"10\">\n",
                       width, height, width, height);
    if (!spec.title.empty())
        out += fmt::format("<title>{}</title>\n", xml_escape(spec.title));
    out += fmt::format("<rect x=\"0\" y=\"0\" width=\"{}\" height=\"{}\" fill=\"white\"/>\n", width, height);

    // grid and axes
    out += "<g stroke=\"#dddddd\" stroke-width=\"0.5\">\n";
    for (int i = 0; i <= cols; ++i)
        out += fmt::format("<line x1=\"{0}\" y1=\"{1}\" x2=\"{0}\" y2=\"{2}\"/>\n", margin + i * unit_x, margin,
                           margin + rows * unit_y);
    for (int j = 0; j <= rows; ++j)
        out += fmt::format("<line x1=\"{0}\" y1=\"{1}\" x2=\"{2}\" y2=\"{1}\"/>\n", margin, margin + j * unit_y,
                           margin + cols * unit_x);
    out += "</g>\n<g fill=\"black\" text-anchor=\"middle\">\n";
    for (int x = spec.x_lo; x <= spec.x_hi; ++x)
        if (x % 4 == 0)
            out += fmt::format("<text x=\"{}\" y=\"{}\">{}</text>\n", margin + (x - spec.x_lo) * unit_x + unit_x / 2,
                               margin + rows * unit_y + 14, x);
    for (int y = l.y_lo; y <= l.y_hi; ++y)
        out += fmt::format("<text x=\"{}\" y=\"{}\">{}</text>\n", margin - 12, margin + (l.y_hi - y) * unit_y + unit_y / 2 + 4, y);
    out += "</g>\n";

    // B-lines
    if (spec.b_lines) {
        out += "<g stroke=\"black\" stroke-width=\"1\" stroke-dasharray=\"1,3\" fill=\"none\">\n";
        for (const auto& g : l.glyphs)
            for (const auto& label : g.labels) {
                if (label.empty())
                    continue;
                auto it = l.by_label.find(one_lower(label));
                if (it == l.by_label.end() || l.glyphs[it->second].y != g.y)
                    continue;
                const Point a = centre(spec, l, g);
                const Point b = centre(spec, l, l.glyphs[it->second]);
                out += fmt::format("<line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\"/>\n", a.x, a.y, b.x, b.y);
            }
        out += "</g>\n";
    }

    // hidden extensions and decorations
    out += "<g stroke=\"red\" stroke-width=\"1.2\" stroke-dasharray=\"4,3\" fill=\"none\">\n";
    auto dashed = [&](const std::string& from, const std::string& to) {
        const long a = find_glyph(l, page, from);
        const long b = find_glyph(l, page, to);
        if (a < 0 || b < 0)
            return;
        const Point pa = centre(spec, l, l.glyphs[a]);
        const Point pb = centre(spec, l, l.glyphs[b]);
        out += fmt::format("<line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\"/>\n", pa.x, pa.y, pb.x, pb.y);
    };
    for (const auto& e : spec.extensions)
        dashed(e.low, e.high);
    for (const auto& d : spec.decorations)
        dashed(d.from, d.to);
    out += "</g>\n";

    // differentials
    out += "<g stroke=\"green\" stroke-width=\"1.2\" fill=\"none\">\n";
    for (const auto& d : spec.differentials) {
        const long a = find_glyph(l, page, d.source);
        const long b = find_glyph(l, page, d.target);
        if (a < 0 || b < 0)
            continue;
        const Point pa = centre(spec, l, l.glyphs[a]);
        const Point pb = centre(spec, l, l.glyphs[b]);
        std::string path = fmt::format("M {} {}", pa.x, pa.y);
        const int steps = 6;
        for (int i = 1; i < steps; ++i) {
            const int x = pa.x + (pb.x - pa.x) * i / steps + (i % 2 == 0 ? 4 : -4);
            const int y = pa.y + (pb.y - pa.y) * i / steps;
            path += fmt::format(" L {} {}", x, y);
        }
        path += fmt::format(" L {} {}", pb.x, pb.y);
        out += fmt::format("<path d=\"{}\"/>\n", path);
    }
    out += "</g>\n";

    // glyphs
    out += "<g stroke-width=\"1\" text-anchor=\"middle\">\n";
    for (const auto& g : l.glyphs) {
        const Point c = centre(spec, l, g);
        std::string title;
        for (const auto& label : g.labels)
            title += (title.empty() ? "" : ", ") + label;
        const std::string tip = title.empty() ? std::string() : fmt::format("<title>{}</title>", xml_escape(title));
        if (g.shape == "square")
            out += fmt::format("<rect x=\"{}\" y=\"{}\" width=\"10\" height=\"10\" fill=\"white\" stroke=\"black\">{}</rect>\n",
                               c.x - 5, c.y - 5, tip);
        else if (g.shape == "diamond")
            out += fmt::format("<polygon points=\"{},{} {},{} {},{} {},{}\" fill=\"white\" stroke=\"black\">{}</polygon>\n",
                               c.x, c.y - 6, c.x + 6, c.y, c.x, c.y + 6, c.x - 6, c.y, tip);
        else if (g.shape == "ellipse")
            out += fmt::format("<ellipse cx=\"{}\" cy=\"{}\" rx=\"9\" ry=\"6\" fill=\"white\" stroke=\"red\">{}</ellipse>\n",
                               c.x, c.y, tip);
        else
            out += fmt::format("<circle cx=\"{}\" cy=\"{}\" r=\"6\" fill=\"white\" stroke=\"red\">{}</circle>\n", c.x,
                               c.y, tip);
        if (!g.text.empty())
            out += fmt::format("<text x=\"{}\" y=\"{}\" font-size=\"7\">{}</text>\n", c.x, c.y + 2, g.text);
    }
    out += "</g>\n</svg>\n";
    return out;
}

std::string cell_text(const Glyph& g)
{
    if (g.shape == "square")
        return "[ ]";
    if (g.shape == "diamond")
        return "<Q>";
    if (g.shape == "ellipse")
        return fmt::format("{:<3}", g.text.substr(0, 3));
    if (g.text.size() == 1)
        return "(" + g.text + ")";
    return fmt::format("{:>3}", g.text.substr(0, 3));
}

std::string ascii(const ChartSpec& spec, const Layout& l)
{
    const int cols = std::max(0, spec.x_hi - spec.x_lo + 1);
    std::string out;
    if (!spec.title.empty())
        out += spec.title + "\n";
    std::map<std::pair<int, int>, std::vector<const Glyph*>> grid;
    for (const auto& g : l.glyphs)
        grid[{g.x, g.y}].push_back(&g);
    for (int y = l.y_hi; y >= l.y_lo; --y) {
        std::size_t depth = 1;
        for (int x = spec.x_lo; x <= spec.x_hi; ++x)
            if (auto it = grid.find({x, y}); it != grid.end())
                depth = std::max(depth, it->second.size());
        for (std::size_t k = depth; k-- > 0;) {
            std::string line = k + 1 == depth ? fmt::format("{:>4} |", y) : "     |";
            for (int x = spec.x_lo; x <= spec.x_hi; ++x) {
                auto it = grid.find({x, y});
                if (it != grid.end() && k < it->second.size())
                    line += cell_text(*it->second[k]);
                else
                    line += " . ";
            }
            while (!line.empty() && line.back() == ' ')
                line.pop_back();
            out += line + "\n";
        }
    }
    out += "     +" + std::string(static_cast<std::size_t>(cols) * 3, '-') + "\n";
    std::string axis(static_cast<std::size_t>(6 + cols * 3 + 8), ' ');
    int free_from = 0;
    for (int x = spec.x_lo; x <= spec.x_hi; ++x) {
        if (x % 4 != 0)
            continue;
        const std::string num = std::to_string(x);
        const int pos = 6 + (x - spec.x_lo) * 3 + 1;
        if (pos < free_from)
            continue;
        axis.replace(static_cast<std::size_t>(pos), num.size(), num);
        free_from = pos + static_cast<int>(num.size()) + 1;
    }
    while (!axis.empty() && axis.back() == ' ')
        axis.pop_back();
    out += axis + "\n";
    return out;
}

void check_decorations(const BigradedPage& page, const ChartSpec& spec, const Layout& l)
{
    for (const auto& d : spec.differentials) {
        find_glyph(l, page, d.source);
        find_glyph(l, page, d.target);
    }
    for (const auto& e : spec.extensions) {
        find_glyph(l, page, e.low);
        find_glyph(l, page, e.high);
    }
    for (const auto& d : spec.decorations) {
        find_glyph(l, page, d.from);
        find_glyph(l, page, d.to);
    }
}

}  // namespace

std::vector<Glyph> layout_glyphs(const BigradedPage& page, const ChartSpec& spec)
{
    return make_layout(page, spec).glyphs;
}

std::string emit_chart(const BigradedPage& page, const ChartSpec& spec, ChartFormat format)
{
    const Layout l = make_layout(page, spec);
    check_decorations(page, spec, l);
    return format == ChartFormat::svg ? svg(page, spec, l) : ascii(spec, l);
}

std::string emit_chart(const AbutmentGroup& abutment, const ChartSpec& spec, ChartFormat format)
{
    BigradedPage page(abutment.prime, abutment.lo, abutment.hi, 0, 0);
    for (const auto& [n, g] : abutment.groups) {
        for (int i = 0; i < g.free_rank(); ++i)
            page.add({0, n}, Summand::free(""));
        for (int a : g.torsion_exponents())
            page.add({0, n}, Summand::cyclic(a, ""));
        for (int i = 0; i < g.divisible_rank(); ++i)
            page.add({0, n}, Summand::divisible(""));
    }
    ChartSpec flat = spec;
    flat.grading = Grading::linear;
    flat.differentials.clear();
    flat.extensions.clear();
    flat.decorations.clear();
    return emit_chart(page, flat, format);
}

}  // namespace lcss
