#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "lcss/graded_group.hpp"
#include "lcss/module.hpp"
#include "lcss/spectral.hpp"

namespace lcss {

class ParseError : public Error {
public:
    ParseError(int line, const std::string& message);
    int line() const { return line_; }

private:
    int line_;
};

GradedModulePresentation parse_module(const std::string& text);
std::string serialize_module(const GradedModulePresentation& m);

RuleSet parse_rules(const std::string& text);
std::string serialize_rules(const RuleSet& rules);

/// Expected groups written as `degree | group | labels` lines.
GradedGroup parse_table(const std::string& text, int prime, Window w);

/// Tower formulas: `step d`, `tower <label> <top> inf|div|<exp>`,
/// `relation <label> <exp>` (order of the top class), `cell <label> <degree> inf|div|<exp>`.
struct TowerFormula {
    int step = 8;
    struct Tower {
        std::string label;
        int top = 0;
        SummandKind kind = SummandKind::free;
        int exponent = 0;
        int top_exponent = 0;  // from a relation line; 0 if none
        bool single = false;   // a cell, not a tower
    };
    std::vector<Tower> towers;

    /// Degreewise groups over w (towers run downwards without end).
    GradedGroup expand(int prime, Window w) const;
};

TowerFormula parse_towers(const std::string& text);

std::string read_file(const std::filesystem::path& path);

/// LCSS_DATA_DIR if set, else the directory configured at build time.
std::filesystem::path data_dir();

struct Dataset {
    std::string name;
    GradedModulePresentation module;
    std::map<std::string, RuleSet> rules;  // "B" and "pB"

    const RuleSet& rules_for(const IdealSpec& ideal) const;
};

std::vector<std::string> builtin_names();
/// Loads modules/<name>.module and rules/<name>.*.rules; throws unless valid.
Dataset load_builtin(const std::string& name);
/// A dataset from an explicit module file; rule files are looked up next to it.
Dataset load_dataset_file(const std::filesystem::path& path);

}  // namespace lcss
