#include "lcss/dataset.hpp"

#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>

#include <fmt/core.h>

#ifndef LCSS_DEFAULT_DATA_DIR
#define LCSS_DEFAULT_DATA_DIR "data"
#endif

namespace lcss {

ParseError::ParseError(int line, const std::string& message)
    : Error(fmt::format("line {}: {}", line, message)), line_(line)
{
}

namespace {

std::vector<std::string> tokens(const std::string& line)
{
    std::vector<std::string> out;
    std::istringstream is(line);
    std::string tok;
    while (is >> tok)
        out.push_back(tok);
    return out;
}

std::string strip_comment(const std::string& line)
{
    return line.substr(0, line.find('#'));
}

int to_int(const std::string& s, int line)
{
    try {
        std::size_t used = 0;
        int v = std::stoi(s, &used);
        if (used != s.size())
            throw std::invalid_argument(s);
        return v;
    }
    catch (const std::exception&) {
        throw ParseError(line, fmt::format("expected an integer, got '{}'", s));
    }
}

Integer to_integer(const std::string& s, int line)
{
    Integer v;
    if (s.empty() || v.set_str(s, 10) != 0)
        throw ParseError(line, fmt::format("expected an integer, got '{}'", s));
    return v;
}

void expect_args(const std::vector<std::string>& t, std::size_t n, int line)
{
    if (t.size() != n)
        throw ParseError(line, fmt::format("'{}' takes {} argument(s), got {}", t[0], n - 1, t.size() - 1));
}

}  // namespace

GradedModulePresentation parse_module(const std::string& text)
{
    GradedModulePresentation m;
    bool have_window = false, have_prime = false, have_stability = false;
    std::set<std::string> labels;

    struct Pending {
        std::string op;
        int from = 0;
        std::size_t rows = 0, cols = 0;
        IntMatrix matrix;
        std::size_t filled = 0;
        int line = 0;
    };
    std::optional<Pending> pending;
    auto finish = [&](int line) {
        if (!pending)
            return;
        if (pending->filled != pending->rows)
            throw ParseError(line, fmt::format("action {} {} expects {} matrix row(s), got {}", pending->op,
                                               pending->from, pending->rows, pending->filled));
        m.operators[pending->op].matrices[pending->from] = std::move(pending->matrix);
        pending.reset();
    };

    std::istringstream in(text);
    std::string raw;
    int line = 0;
    while (std::getline(in, raw)) {
        ++line;
        const auto t = tokens(strip_comment(raw));
        if (t.empty())
            continue;
        const bool numeric = std::isdigit((unsigned char)t[0][0]) || (t[0][0] == '-' && t[0].size() > 1);
        if (pending && pending->filled < pending->rows) {
            if (!numeric)
                throw ParseError(line, fmt::format("expected matrix row for action {} {}", pending->op, pending->from));
            if (t.size() != pending->cols)
                throw ParseError(line, fmt::format("matrix row has {} entries, expected {}", t.size(), pending->cols));
            for (std::size_t c = 0; c < t.size(); ++c)
                pending->matrix(pending->filled, c) = to_integer(t[c], line);
            ++pending->filled;
            continue;
        }
        finish(line);
        if (numeric)
            throw ParseError(line, "matrix row outside an action block");

        const std::string& key = t[0];
        if (key == "module") {
            expect_args(t, 2, line);
            m.name = t[1];
        }
        else if (key == "prime") {
            expect_args(t, 2, line);
            m.prime = to_int(t[1], line);
            if (m.prime < 2)
                throw ParseError(line, "prime must be at least 2");
            have_prime = true;
        }
        else if (key == "window") {
            expect_args(t, 3, line);
            m.lo = to_int(t[1], line);
            m.hi = to_int(t[2], line);
            if (m.lo > m.hi)
                throw ParseError(line, "empty window");
            have_window = true;
        }
        else if (key == "stability") {
            expect_args(t, 2, line);
            m.stability = to_int(t[1], line);
            have_stability = true;
        }
        else if (key == "operator") {
            expect_args(t, 3, line);
            if (m.operators.count(t[1]))
                throw ParseError(line, fmt::format("operator '{}' declared twice", t[1]));
            OperatorAction a;
            a.name = t[1];
            a.shift = to_int(t[2], line);
            m.operators.emplace(a.name, std::move(a));
        }
        else if (key == "period") {
            expect_args(t, 3, line);
            m.period = std::make_pair(t[1], to_int(t[2], line));
        }
        else if (key == "gen") {
            expect_args(t, 4, line);
            if (!have_window)
                throw ParseError(line, "generator before window");
            Generator g;
            g.label = t[1];
            g.degree = to_int(t[2], line);
            g.exponent = t[3] == "inf" ? 0 : to_int(t[3], line);
            if (g.exponent < 0 || (t[3] != "inf" && g.exponent == 0))
                throw ParseError(line, fmt::format("bad order exponent '{}'", t[3]));
            if (g.degree < m.lo || g.degree > m.hi)
                throw ParseError(line, fmt::format("generator '{}' in degree {} outside window [{}, {}]", g.label,
                                                   g.degree, m.lo, m.hi));
            if (!m.operators.empty() && std::any_of(m.operators.begin(), m.operators.end(), [](const auto& kv) {
                    return !kv.second.matrices.empty();
                }))
                throw ParseError(line, "generators must precede action blocks");
            if (!labels.insert(g.label).second)
                throw ParseError(line, fmt::format("duplicate generator '{}'", g.label));
            m.generators.push_back(std::move(g));
        }
        else if (key == "action") {
            expect_args(t, 3, line);
            auto it = m.operators.find(t[1]);
            if (it == m.operators.end())
                throw ParseError(line, fmt::format("action for undeclared operator '{}'", t[1]));
            Pending p;
            p.op = t[1];
            p.from = to_int(t[2], line);
            p.line = line;
            p.rows = m.slice_indices(p.from + it->second.shift).size();
            p.cols = m.slice_indices(p.from).size();
            if (p.rows == 0 || p.cols == 0)
                throw ParseError(line, fmt::format("action {} {} between empty slices", p.op, p.from));
            if (it->second.matrices.count(p.from))
                throw ParseError(line, fmt::format("action {} {} given twice", p.op, p.from));
            p.matrix = IntMatrix(p.rows, p.cols);
            pending = std::move(p);
        }
        else if (key == "assumed") {
            expect_args(t, 3, line);
            auto it = m.operators.find(t[1]);
            if (it == m.operators.end())
                throw ParseError(line, fmt::format("assumed action for undeclared operator '{}'", t[1]));
            if (!labels.count(t[2]))
                throw ParseError(line, fmt::format("assumed action names unknown generator '{}'", t[2]));
            it->second.assumed.insert(t[2]);
        }
        else {
            throw ParseError(line, fmt::format("unknown directive '{}'", key));
        }
    }
    finish(line + 1);
    if (!have_prime || !have_window || !have_stability)
        throw ParseError(line, "missing prime, window or stability header");
    return m;
}

std::string serialize_module(const GradedModulePresentation& m)
{
    std::string out;
    if (!m.name.empty())
        out += fmt::format("module {}\n", m.name);
    out += fmt::format("prime {}\nwindow {} {}\nstability {}\n", m.prime, m.lo, m.hi, m.stability);
    for (const auto& [name, a] : m.operators)
        out += fmt::format("operator {} {}\n", name, a.shift);
    if (m.period)
        out += fmt::format("period {} {}\n", m.period->first, m.period->second);
    out += "\n";
    for (const auto& g : m.generators)
        out += fmt::format("gen {} {} {}\n", g.label, g.degree, g.is_free() ? std::string("inf") : std::to_string(g.exponent));
    for (const auto& [name, a] : m.operators) {
        if (!a.matrices.empty())
            out += "\n";
        for (const auto& [n, mat] : a.matrices) {
            out += fmt::format("action {} {}\n", name, n);
            for (std::size_t r = 0; r < mat.rows(); ++r) {
                for (std::size_t c = 0; c < mat.cols(); ++c)
                    out += (c == 0 ? "" : " ") + mat(r, c).get_str();
                out += "\n";
            }
        }
    }
    bool first = true;
    for (const auto& [name, a] : m.operators)
        for (const auto& label : a.assumed) {
            if (first)
                out += "\n";
            first = false;
            out += fmt::format("assumed {} {}\n", name, label);
        }
    return out;
}

RuleSet parse_rules(const std::string& text)
{
    RuleSet rules;
    std::istringstream in(text);
    std::string raw;
    int line = 0;
    while (std::getline(in, raw)) {
        ++line;
        const auto t = tokens(strip_comment(raw));
        if (t.empty())
            continue;
        if (t[0] == "d") {
            expect_args(t, 5, line);
            DifferentialRule d;
            d.r = to_int(t[1], line);
            if (d.r < 2)
                throw ParseError(line, "differentials start on the E_2 page");
            d.source = t[2];
            d.target = t[3];
            d.image_order = to_integer(t[4], line);
            if (d.image_order < 1)
                throw ParseError(line, "image order must be positive");
            rules.differentials.push_back(std::move(d));
        }
        else if (t[0] == "ext") {
            expect_args(t, 4, line);
            ExtensionRule e;
            e.low = t[1];
            e.high = t[2];
            e.multiplier = to_integer(t[3], line);
            if (e.multiplier < 1)
                throw ParseError(line, "multiplier must be positive");
            rules.extensions.push_back(std::move(e));
        }
        else if (t[0] == "hidden") {
            expect_args(t, 4, line);
            if (t[1] != "eta" && t[1] != "nu")
                throw ParseError(line, fmt::format("unknown decoration '{}'", t[1]));
            rules.decorations.push_back({t[1], t[2], t[3]});
        }
        else {
            throw ParseError(line, fmt::format("unknown rule '{}'", t[0]));
        }
    }
    return rules;
}

std::string serialize_rules(const RuleSet& rules)
{
    std::string out;
    for (const auto& d : rules.differentials)
        out += fmt::format("d {} {} {} {}\n", d.r, d.source, d.target, d.image_order.get_str());
    for (const auto& e : rules.extensions)
        out += fmt::format("ext {} {} {}\n", e.low, e.high, e.multiplier.get_str());
    for (const auto& h : rules.decorations)
        out += fmt::format("hidden {} {} {}\n", h.kind, h.from, h.to);
    return out;
}

GradedGroup parse_table(const std::string& text, int prime, Window w)
{
    GradedGroup g(prime, w.lo, w.hi);
    g.zero_below = true;
    g.zero_above = true;
    std::istringstream in(text);
    std::string raw;
    int line = 0;
    while (std::getline(in, raw)) {
        ++line;
        const std::string body = strip_comment(raw);
        if (tokens(body).empty())
            continue;
        std::vector<std::string> fields;
        std::size_t start = 0;
        for (;;) {
            auto bar = body.find('|', start);
            fields.push_back(body.substr(start, bar == std::string::npos ? std::string::npos : bar - start));
            if (bar == std::string::npos)
                break;
            start = bar + 1;
        }
        if (fields.size() != 3)
            throw ParseError(line, "expected 'degree | group | labels'");
        const auto deg = tokens(fields[0]);
        if (deg.size() != 1)
            throw ParseError(line, "expected a single degree");
        const int n = to_int(deg[0], line);
        MixedGroup group;
        try {
            group = MixedGroup::parse(fields[1], prime);
        }
        catch (const Error& e) {
            throw ParseError(line, e.what());
        }
        std::vector<std::string> labels;
        std::string cur;
        for (char c : fields[2] + ",") {
            if (c == ',') {
                const auto tok = tokens(cur);
                if (!tok.empty())
                    labels.push_back(tok[0]);
                cur.clear();
            }
            else {
                cur.push_back(c);
            }
        }
        const int count = group.free_rank() + group.divisible_rank() + (int)group.torsion_exponents().size();
        if ((int)labels.size() != count)
            throw ParseError(line, fmt::format("{} labels for {} summands", labels.size(), count));
        if (n < w.lo || n > w.hi)
            continue;
        if (!g.at(n).empty())
            throw ParseError(line, fmt::format("degree {} listed twice", n));
        LabelledGroup h(prime);
        std::size_t k = 0;
        for (int i = 0; i < group.free_rank(); ++i)
            h.add(Summand::free(labels[k++]));
        for (int a : group.torsion_exponents())
            h.add(Summand::cyclic(a, labels[k++]));
        for (int i = 0; i < group.divisible_rank(); ++i)
            h.add(Summand::divisible(labels[k++]));
        g.set(n, std::move(h));
    }
    return g;
}

TowerFormula parse_towers(const std::string& text)
{
    TowerFormula f;
    std::istringstream in(text);
    std::string raw;
    int line = 0;
    auto kind_of = [&](const std::string& s, TowerFormula::Tower& t) {
        if (s == "inf")
            t.kind = SummandKind::free;
        else if (s == "div")
            t.kind = SummandKind::divisible;
        else {
            t.kind = SummandKind::cyclic;
            t.exponent = to_int(s, line);
            if (t.exponent < 1)
                throw ParseError(line, "cyclic exponent must be positive");
        }
    };
    while (std::getline(in, raw)) {
        ++line;
        const auto t = tokens(strip_comment(raw));
        if (t.empty())
            continue;
        if (t[0] == "step") {
            expect_args(t, 2, line);
            f.step = to_int(t[1], line);
            if (f.step <= 0)
                throw ParseError(line, "step must be positive");
        }
        else if (t[0] == "tower" || t[0] == "cell") {
            expect_args(t, 4, line);
            TowerFormula::Tower tw;
            tw.label = t[1];
            tw.top = to_int(t[2], line);
            tw.single = t[0] == "cell";
            kind_of(t[3], tw);
            f.towers.push_back(std::move(tw));
        }
        else if (t[0] == "relation") {
            expect_args(t, 3, line);
            auto it = std::find_if(f.towers.begin(), f.towers.end(),
                                   [&](const auto& tw) { return tw.label == t[1]; });
            if (it == f.towers.end())
                throw ParseError(line, fmt::format("relation for unknown tower '{}'", t[1]));
            it->top_exponent = to_int(t[2], line);
            if (it->top_exponent < 1)
                throw ParseError(line, "relation exponent must be positive");
        }
        else {
            throw ParseError(line, fmt::format("unknown directive '{}'", t[0]));
        }
    }
    return f;
}

GradedGroup TowerFormula::expand(int prime, Window w) const
{
    GradedGroup g(prime, w.lo, w.hi);
    std::vector<LabelledGroup> values(static_cast<std::size_t>(w.hi - w.lo + 1), LabelledGroup(prime));
    for (const auto& tw : towers) {
        for (int n = tw.top; n >= w.lo; n -= step) {
            if (n <= w.hi) {
                Summand s{tw.kind, tw.exponent, tw.label};
                if (n == tw.top && tw.top_exponent > 0) {
                    s.kind = SummandKind::cyclic;
                    s.exponent = tw.top_exponent;
                }
                values[static_cast<std::size_t>(n - w.lo)].add(std::move(s));
            }
            if (tw.single)
                break;
        }
    }
    for (int n = w.lo; n <= w.hi; ++n)
        g.set(n, std::move(values[static_cast<std::size_t>(n - w.lo)]));
    return g;
}

std::string read_file(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw Error(fmt::format("cannot read '{}'", path.string()));
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

std::filesystem::path data_dir()
{
    if (const char* env = std::getenv("LCSS_DATA_DIR"); env && *env)
        return env;
    return LCSS_DEFAULT_DATA_DIR;
}

const RuleSet& Dataset::rules_for(const IdealSpec& ideal) const
{
    static const RuleSet empty;
    auto it = rules.find(ideal.with_p ? "pB" : "B");
    return it == rules.end() ? empty : it->second;
}

std::vector<std::string> builtin_names()
{
    return {"ko-p2", "tmf-N-p2", "tmf-N-p3"};
}

namespace {

Dataset finish_dataset(GradedModulePresentation m, const std::filesystem::path& rule_dir, const std::string& stem)
{
    Diagnostics d = validate_presentation(m);
    if (!d.ok)
        throw Error(fmt::format("module '{}' is invalid: {}", m.name, d.messages.front()));
    Dataset ds;
    ds.name = m.name;
    ds.module = std::move(m);
    for (const std::string key : {"B", "pB"}) {
        const auto path = rule_dir / fmt::format("{}.{}.rules", stem, key);
        if (!std::filesystem::exists(path))
            continue;
        try {
            ds.rules[key] = parse_rules(read_file(path));
        }
        catch (const ParseError& e) {
            throw Error(fmt::format("{}: {}", path.string(), e.what()));
        }
    }
    return ds;
}

GradedModulePresentation parse_module_file(const std::filesystem::path& path)
{
    try {
        return parse_module(read_file(path));
    }
    catch (const ParseError& e) {
        throw Error(fmt::format("{}: {}", path.string(), e.what()));
    }
}

}  // namespace

Dataset load_builtin(const std::string& name)
{
    const auto names = builtin_names();
    if (std::find(names.begin(), names.end(), name) == names.end())
        throw Error(fmt::format("unknown dataset '{}' (known: ko-p2, tmf-N-p2, tmf-N-p3)", name));
    const auto dir = data_dir();
    GradedModulePresentation m = parse_module_file(dir / "modules" / (name + ".module"));
    if (m.name.empty())
        m.name = name;
    return finish_dataset(std::move(m), dir / "rules", name);
}

Dataset load_dataset_file(const std::filesystem::path& path)
{
    GradedModulePresentation m = parse_module_file(path);
    if (m.name.empty())
        m.name = path.stem().string();
    return finish_dataset(std::move(m), path.parent_path(), path.stem().string());
}

}  // namespace lcss
