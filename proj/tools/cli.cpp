#include "cli.hpp"

#include <charconv>
#include <fstream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <nlohmann/json.hpp>

#include "lcss/chart.hpp"
#include "lcss/dataset.hpp"
#include "lcss/duality.hpp"
#include "lcss/local_cohomology.hpp"
#include "lcss/spectral.hpp"

namespace lcss::cli {

namespace {

using json = nlohmann::ordered_json;

struct Common {
    std::string dataset;
    std::string file;
    std::string ideal = "B";
    std::string window;
    std::string output;
    std::string format;
    unsigned threads = 1;
};

Window parse_window(const std::string& text)
{
    const auto colon = text.find(':', 1);
    if (colon == std::string::npos)
        throw Error(fmt::format("window '{}' is not of the form lo:hi", text));
    auto number = [&](std::string_view s) {
        int v = 0;
        auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
        if (ec != std::errc() || ptr != s.data() + s.size())
            throw Error(fmt::format("window '{}' is not of the form lo:hi", text));
        return v;
    };
    Window w{number(std::string_view(text).substr(0, colon)), number(std::string_view(text).substr(colon + 1))};
    if (w.lo > w.hi)
        throw Error(fmt::format("window '{}' is empty", text));
    return w;
}

Dataset load(const Common& c)
{
    if (!c.dataset.empty() && !c.file.empty())
        throw Error("give either --dataset or --file, not both");
    if (!c.file.empty())
        return load_dataset_file(c.file);
    if (c.dataset.empty())
        throw Error("no dataset: use --dataset NAME or --file PATH");
    return load_builtin(c.dataset);
}

int shift_of_x(const GradedModulePresentation& m, const IdealSpec& ideal)
{
    return Multiplier::parse(ideal.x).degree(m);
}

// Internal degrees covered by default: three x-steps below the presentation.
Window default_degrees(const GradedModulePresentation& m, const IdealSpec& ideal)
{
    if (ideal.periodic)
        return {m.lo - m.hi, 0};
    return {m.lo - 3 * shift_of_x(m, ideal), m.hi};
}

Window default_stems(const Dataset& d, const IdealSpec& ideal)
{
    if (ideal.periodic)
        return {d.module.lo - d.module.hi, 0};
    if (d.name == "tmf-N-p2")
        return {-20, 172};
    if (d.name == "tmf-N-p3")
        return {-10, 52};
    if (d.name == "ko-p2")
        return {-28, 0};
    throw Error(fmt::format("no default window for '{}'; pass --window", d.name));
}

int filtration_count(const IdealSpec& ideal)
{
    return (ideal.with_p ? 3 : 2) + (ideal.periodic ? 1 : 0);
}

RuleSet rules_for(const Dataset& d, const IdealSpec& ideal, Window stems)
{
    const RuleSet& base = d.rules_for(ideal);
    if (!ideal.periodic || !d.module.period)
        return base;
    const int period = d.module.period->second;
    const int max_j = (d.module.hi - stems.lo) / period + 1;
    return periodic_rules(base, max_j, d.module.period->first);
}

// Rules copied across the period may name cells beyond the window.
std::vector<DifferentialRule> differentials_on_page(const BigradedPage& page, const RuleSet& rules)
{
    std::vector<DifferentialRule> out;
    for (const auto& d : rules.differentials)
        if (page.contains(d.source) && page.contains(d.target))
            out.push_back(d);
    return out;
}

std::vector<DecorationRule> decorations_on_page(const BigradedPage& page, const RuleSet& rules, bool periodic)
{
    if (!periodic)
        return rules.decorations;
    std::vector<DecorationRule> out;
    for (const auto& d : rules.decorations)
        if (page.contains(d.from) && page.contains(d.to))
            out.push_back(d);
    return out;
}

// E_2 over the internal degrees that feed stems [stems.lo, stems.hi].
BigradedPage page_for_stems(const Dataset& d, const IdealSpec& ideal, Window stems, const FunctorOptions& o)
{
    const int s_lo = ideal.periodic ? 1 : 0;
    const int s_hi = s_lo + filtration_count(ideal) - 1;
    return build_e2(d.module, ideal, Window{stems.lo + s_lo, stems.hi + s_hi}, o);
}

json group_json(const LabelledGroup& g)
{
    json labels = json::array();
    for (const auto& s : g.summands())
        labels.push_back(s.label);
    return json{{"group", g.group().to_string()}, {"labels", labels}};
}

json graded_json(const GradedGroup& g, Window w)
{
    json out = json::object();
    for (int n = w.lo; n <= w.hi; ++n)
        if (g.defined_at(n) && !g.at(n).empty())
            out[std::to_string(n)] = group_json(g.at(n));
    return out;
}

std::string graded_text(const GradedGroup& g, Window w)
{
    std::string out;
    for (int n = w.lo; n <= w.hi; ++n) {
        if (!g.defined_at(n) || g.at(n).empty())
            continue;
        out += fmt::format("{:>5} | {} | {}\n", n, g.at(n).group().to_string(), label_list(g.at(n)));
    }
    return out.empty() ? "    0\n" : out;
}

std::string page_text(const BigradedPage& page)
{
    std::string out = fmt::format("# E_{} page, t in [{}, {}], s in [{}, {}]\n", page.r, page.t_lo(), page.t_hi(),
                                  page.s_lo(), page.s_hi());
    for (const auto& [b, g] : page.cells()) {
        if (g.empty())
            continue;
        out += fmt::format("{:>2} {:>5} {:>5} | {} | {}{}\n", b.s, b.t, b.stem(), g.group().to_string(), label_list(g),
                           page.flagged.count(b) ? " | unresolved extension" : "");
    }
    return out;
}

json page_json(const BigradedPage& page)
{
    json cells = json::array();
    for (const auto& [b, g] : page.cells()) {
        if (g.empty())
            continue;
        json cell = group_json(g);
        cell["s"] = b.s;
        cell["t"] = b.t;
        cell["stem"] = b.stem();
        cell["flagged"] = page.flagged.count(b) > 0;
        cells.push_back(cell);
    }
    return json{{"page", page.r}, {"t", {page.t_lo(), page.t_hi()}}, {"cells", cells}};
}

void emit(const Common& c, const std::string& text, std::ostream& out)
{
    if (c.output.empty() || c.output == "-") {
        out << text;
        return;
    }
    std::ofstream f(c.output, std::ios::binary);
    if (!f)
        throw Error(fmt::format("cannot write '{}'", c.output));
    f << text;
}

FunctorOptions options(const Common& c)
{
    FunctorOptions o;
    o.policy.threads = std::max(1u, c.threads);
    return o;
}

std::string text_or_json(const std::string& format)
{
    if (format.empty() || format == "text")
        return "text";
    if (format == "json")
        return "json";
    throw Error(fmt::format("unknown format '{}' (text, json)", format));
}

// ------------------------------------------------------------------ compute

std::string compute(const Common& c)
{
    const Dataset d = load(c);
    const IdealSpec ideal = IdealSpec::parse(c.ideal, d.module.prime);
    const Window w = c.window.empty() ? default_degrees(d.module, ideal) : parse_window(c.window);
    const FunctorOptions o = options(c);
    const bool as_json = text_or_json(c.format) == "json";

    std::vector<std::pair<std::string, GradedGroup>> sections;
    std::vector<int> unresolved;
    if (ideal.periodic) {
        const BigradedPage page = build_e2(d.module, ideal, w, o);
        return as_json ? page_json(page).dump(2) + "\n" : page_text(page);
    }
    if (!ideal.with_p) {
        const auto h = local_cohomology_one(d.module, Multiplier::parse(ideal.x), w, o);
        sections = {{"H^0", h.h0}, {"H^1", h.h1}};
    }
    else {
        const auto h = ideal.p_first ? local_cohomology_two(d.module, "p", ideal.x, w, o)
                                     : local_cohomology_two(d.module, ideal.x, "p", w, o);
        sections = {{"H^0", h.h0}, {"H^1 left", h.h1.left}, {"H^1 right", h.h1.right}, {"H^2", h.h2}};
        unresolved = h.h1.ambiguous_degrees();
    }

    if (as_json) {
        json doc{{"dataset", d.name}, {"ideal", ideal.to_string()}, {"window", {w.lo, w.hi}}};
        json groups = json::object();
        for (const auto& [name, g] : sections)
            groups[name] = graded_json(g, w);
        doc["groups"] = groups;
        if (ideal.with_p)
            doc["unresolved"] = unresolved;
        return doc.dump(2) + "\n";
    }
    std::string out = fmt::format("# {} ideal {} degrees [{}, {}]\n", d.name, ideal.to_string(), w.lo, w.hi);
    for (const auto& [name, g] : sections)
        out += fmt::format("## {}\n{}", name, graded_text(g, w));
    if (ideal.with_p) {
        out += "## H^1 unresolved\n";
        if (unresolved.empty())
            out += "    none\n";
        for (int n : unresolved)
            out += fmt::format("{:>5}\n", n);
    }
    return out;
}

// --------------------------------------------------------------------- page

struct PageOptions {
    std::string page = "inf";
};

int page_number(const std::string& text)
{
    int r = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), r);
    if (ec != std::errc() || ptr != text.data() + text.size() || r < 2)
        throw Error(fmt::format("page '{}' is not 'inf' or a number >= 2", text));
    return r;
}

BigradedPage advance(const BigradedPage& e2, const RuleSet& rules, const std::string& which)
{
    if (which == "inf")
        return run_spectral_sequence(e2, differentials_on_page(e2, rules));
    const int target = page_number(which);
    BigradedPage page = e2;
    while (page.r < target)
        page = apply_differentials(page, differentials_on_page(e2, rules));
    return page;
}

std::string page_cmd(const Common& c, const PageOptions& p)
{
    const Dataset d = load(c);
    const IdealSpec ideal = IdealSpec::parse(c.ideal, d.module.prime);
    const Window w = c.window.empty() ? default_degrees(d.module, ideal) : parse_window(c.window);
    const BigradedPage e2 = build_e2(d.module, ideal, w, options(c));
    const BigradedPage page = advance(e2, rules_for(d, ideal, w), p.page);
    return text_or_json(c.format) == "json" ? page_json(page).dump(2) + "\n" : page_text(page);
}

// ------------------------------------------------------------------- verify

struct VerifyOptions {
    std::string mode = "anderson";
    std::optional<int> shift;
};

std::string verify(const Common& c, const VerifyOptions& v, bool& passed)
{
    const Dataset d = load(c);
    const IdealSpec ideal = IdealSpec::parse(c.ideal, d.module.prime);
    const Window stems = c.window.empty() ? default_stems(d, ideal) : parse_window(c.window);
    const DualMode mode = parse_dual_mode(v.mode);
    if (!v.shift)
        throw Error("verify needs --shift");

    const RuleSet rules = rules_for(d, ideal, stems);
    const BigradedPage e2 = page_for_stems(d, ideal, stems, options(c));
    const BigradedPage einf = run_spectral_sequence(e2, differentials_on_page(e2, rules));
    const AbutmentGroup abutment = assemble_abutment(einf, rules_on_page(einf, rules.extensions), stems);

    GradedGroup source = homotopy_of(d.module);
    if (ideal.periodic) {
        const int period = d.module.period->second;
        const Window need{d.module.lo, d.module.hi + period};
        source = tensor_periodic(source, period, PeriodicMode::polynomial, need, d.module.period->first);
        source.zero_below = true;
    }
    const DualityReport report = verify_duality(abutment, source, mode, *v.shift, stems);
    passed = report.pass();
    return text_or_json(c.format) == "json" ? report.to_json() : report.to_table();
}

// -------------------------------------------------------------------- chart

struct ChartOptions {
    std::string page = "2";
    std::string grading = "adams";
    bool no_b_lines = false;
};

std::string chart(const Common& c, const ChartOptions& opt)
{
    const Dataset d = load(c);
    const IdealSpec ideal = IdealSpec::parse(c.ideal, d.module.prime);
    const Window stems = c.window.empty() ? default_stems(d, ideal) : parse_window(c.window);
    const std::string format = c.format.empty() ? "svg" : c.format;
    if (format != "svg" && format != "ascii")
        throw Error(fmt::format("unknown chart format '{}' (svg, ascii)", format));
    const ChartFormat f = format == "svg" ? ChartFormat::svg : ChartFormat::ascii;

    ChartSpec spec;
    spec.x_lo = stems.lo;
    spec.x_hi = stems.hi;
    spec.b_lines = !opt.no_b_lines;
    if (opt.grading == "adams")
        spec.grading = Grading::adams;
    else if (opt.grading == "linear")
        spec.grading = Grading::linear;
    else
        throw Error(fmt::format("unknown grading '{}' (adams, linear)", opt.grading));

    const RuleSet rules = rules_for(d, ideal, stems);
    const BigradedPage e2 = page_for_stems(d, ideal, stems, options(c));
    if (opt.page == "abutment") {
        const BigradedPage einf = run_spectral_sequence(e2, differentials_on_page(e2, rules));
        spec.title = fmt::format("{} abutment, ideal {}", d.name, ideal.to_string());
        spec.grading = Grading::linear;
        return emit_chart(assemble_abutment(einf, rules_on_page(einf, rules.extensions), stems), spec, f);
    }
    const BigradedPage page = advance(e2, rules, opt.page);
    spec.title = fmt::format("{} E_{}, ideal {}", d.name, opt.page == "inf" ? "inf" : std::to_string(page.r),
                             ideal.to_string());
    for (const auto& rule : differentials_on_page(page, rules))
        if (rule.r >= page.r)
            spec.differentials.push_back(rule);
    spec.extensions = rules_on_page(page, rules.extensions);
    spec.decorations = decorations_on_page(page, rules, ideal.periodic);
    return emit_chart(page, spec, f);
}

// ----------------------------------------------------------------- validate

int validate(const Common& c, std::ostream& out)
{
    if (!c.dataset.empty() && !c.file.empty())
        throw Error("give either --dataset or --file, not both");
    std::filesystem::path path = c.file;
    if (path.empty()) {
        if (c.dataset.empty())
            throw Error("no dataset: use --dataset NAME or --file PATH");
        const auto names = builtin_names();
        if (std::find(names.begin(), names.end(), c.dataset) == names.end())
            throw Error(fmt::format("unknown dataset '{}'", c.dataset));
        path = data_dir() / "modules" / (c.dataset + ".module");
    }
    GradedModulePresentation m;
    try {
        m = parse_module(read_file(path));
    }
    catch (const ParseError& e) {
        throw Error(fmt::format("{}: {}", path.string(), e.what()));
    }
    const IdealSpec ideal = IdealSpec::parse(c.ideal, m.prime);
    const Diagnostics diag = validate_presentation(m, Multiplier::parse(ideal.x).op);
    std::string text = fmt::format("# {}: {} generators, window [{}, {}], stability {}\n", m.name, m.generators.size(),
                                   m.lo, m.hi, m.stability);
    for (const auto& msg : diag.messages)
        text += msg + "\n";
    if (diag.first_failing_degree)
        text += fmt::format("first failing degree: {}\n", *diag.first_failing_degree);
    text += diag.ok ? "valid\n" : "invalid\n";
    emit(c, text, out);
    return diag.ok ? ok : input_error;
}

// -------------------------------------------------------------------- shift

struct ShiftOptions {
    std::vector<int> degrees;
    std::string target = "zp";
};

std::string shift_cmd(const ShiftOptions& s)
{
    GorensteinTarget target;
    if (s.target == "zp")
        target = GorensteinTarget::zp;
    else if (s.target == "fp")
        target = GorensteinTarget::fp;
    else
        throw Error(fmt::format("unknown target '{}' (zp, fp)", s.target));
    std::vector<std::string> warnings;
    const int a = gorenstein_shift(s.degrees, target, &warnings);
    std::string out;
    for (const auto& w : warnings)
        out += fmt::format("# warning: {}\n", w);
    return out + fmt::format("{}\n", a);
}

void add_common(CLI::App* cmd, Common& c, bool windowed = true)
{
    cmd->add_option("--dataset", c.dataset, "Built-in dataset: ko-p2, tmf-N-p2, tmf-N-p3");
    cmd->add_option("--file", c.file, "Module presentation file (rule files are looked up beside it)");
    cmd->add_option("--ideal", c.ideal, "Ideal: B, p,B, B,p, B,M or p,B,M")->capture_default_str();
    if (windowed)
        cmd->add_option("--window", c.window, "Degree window lo:hi, e.g. --window=-20:172 (default depends on dataset)");
    cmd->add_option("--output", c.output, "Write to this file instead of stdout");
    cmd->add_option("--threads", c.threads, "Worker threads for degreewise work")->capture_default_str();
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Local cohomology spectral sequences for graded Z_p[B]-modules", "lcss"};
    app.require_subcommand(1);
    app.set_version_flag("--version", "lcss 0.3.0");

    Common common;
    PageOptions page_opt;
    VerifyOptions verify_opt;
    ChartOptions chart_opt;
    ShiftOptions shift_opt;

    auto* compute_cmd = app.add_subcommand("compute", "Print the local cohomology groups degreewise");
    add_common(compute_cmd, common);
    compute_cmd->add_option("--format", common.format, "text or json (default text)");

    auto* page_cmd_ = app.add_subcommand("page", "Print an E_r page of the local cohomology spectral sequence");
    add_common(page_cmd_, common);
    page_cmd_->add_option("--format", common.format, "text or json (default text)");
    page_cmd_->add_option("--page", page_opt.page, "Page number >= 2 or inf")->capture_default_str();

    auto* verify_cmd = app.add_subcommand("verify", "Compare the abutment with a shifted dual of the module");
    add_common(verify_cmd, common);
    verify_cmd->add_option("--format", common.format, "text or json (default text)");
    verify_cmd->add_option("--mode", verify_opt.mode, "anderson or bc")->capture_default_str();
    verify_cmd->add_option("--shift", verify_opt.shift, "Suspension of the dual")->required();

    auto* chart_cmd = app.add_subcommand("chart", "Draw a page or the abutment");
    add_common(chart_cmd, common);
    chart_cmd->add_option("--format", common.format, "svg or ascii (default svg)");
    chart_cmd->add_option("--page", chart_opt.page, "Page number >= 2, inf or abutment")->capture_default_str();
    chart_cmd->add_option("--grading", chart_opt.grading, "adams or linear")->capture_default_str();
    chart_cmd->add_flag("--no-b-lines", chart_opt.no_b_lines, "Omit the dotted B-multiplication lines");

    auto* validate_cmd = app.add_subcommand("validate", "Check a module presentation");
    add_common(validate_cmd, common, false);

    auto* shift_cmd_ = app.add_subcommand("shift", "Gorenstein shift for a polynomial ring on the given degrees");
    shift_cmd_->add_option("--degrees", shift_opt.degrees, "Generator degrees, comma separated")
        ->required()
        ->delimiter(',');
    shift_cmd_->add_option("--target", shift_opt.target, "zp or fp")->capture_default_str();

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    }
    catch (const CLI::CallForHelp&) {
        out << app.help();
        return ok;
    }
    catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return ok;
    }
    catch (const CLI::CallForVersion&) {
        out << "lcss 0.3.0\n";
        return ok;
    }
    catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        if (auto* sub = app.get_subcommands().empty() ? nullptr : app.get_subcommands().front())
            err << "run 'lcss " << sub->get_name() << " --help' for usage\n";
        return input_error;
    }

    try {
        if (*compute_cmd) {
            emit(common, compute(common), out);
            return ok;
        }
        if (*page_cmd_) {
            emit(common, page_cmd(common, page_opt), out);
            return ok;
        }
        if (*verify_cmd) {
            bool passed = false;
            emit(common, verify(common, verify_opt, passed), out);
            return passed ? ok : mismatch;
        }
        if (*chart_cmd) {
            emit(common, chart(common, chart_opt), out);
            return ok;
        }
        if (*validate_cmd)
            return validate(common, out);
        if (*shift_cmd_) {
            emit(common, shift_cmd(shift_opt), out);
            return ok;
        }
    }
    catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return input_error;
    }
    return input_error;
}

}  // namespace lcss::cli
