#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "lcss/pgroup.hpp"

namespace lcss {

struct Generator {
    std::string label;
    int degree = 0;
    int exponent = 0;  // 0 means Z_p

    bool is_free() const { return exponent == 0; }
    Summand summand() const { return is_free() ? Summand::free(label) : Summand::cyclic(exponent, label); }
    friend bool operator==(const Generator&, const Generator&) = default;
};

/// Action of one operator: matrices keyed by source degree n, mapping the
/// slice in degree n to the slice in degree n + shift. Missing degrees act
/// by zero.
struct OperatorAction {
    std::string name;
    int shift = 0;
    std::map<int, IntMatrix> matrices;
    /// Source labels whose zero action is a default rather than recorded data.
    std::set<std::string> assumed;

    friend bool operator==(const OperatorAction&, const OperatorAction&) = default;
};

class GradedModulePresentation {
public:
    std::string name;
    int prime = 2;
    int lo = 0;
    int hi = 0;
    int stability = 0;
    std::vector<Generator> generators;
    std::map<std::string, OperatorAction> operators;
    std::optional<std::pair<std::string, int>> period;

    /// Generator indices in degree n, in generator order.
    std::vector<std::size_t> slice_indices(int n) const;
    /// Slice M_n; zero outside the window.
    LabelledGroup slice(int n) const;

    const OperatorAction& op(const std::string& name) const;
    int shift_of(const std::string& name) const { return op(name).shift; }

    /// The operator as a morphism M_n -> M_{n+shift}.
    GroupMorphism action(const std::string& name, int n) const;
    /// k-fold composite M_n -> M_{n+k*shift}.
    GroupMorphism power(const std::string& name, int n, int k) const;

    friend bool operator==(const GradedModulePresentation&, const GradedModulePresentation&) = default;
};

struct Diagnostics {
    bool ok = true;
    std::vector<std::string> messages;
    std::optional<int> first_failing_degree;
    std::string offending_matrix;
};

/// Checks the window and generator invariants, every action matrix, and
/// bijectivity of B from the stability degree up to hi - |B|.
Diagnostics validate_presentation(const GradedModulePresentation& m, const std::string& x = "B");

}  // namespace lcss
