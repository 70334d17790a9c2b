#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "lcss/matrix.hpp"

namespace lcss {

/// Base class for every error raised by the engine.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A p-local abelian group Z_p^f + (Q_p/Z_p)^d + sum Z/p^{a_i}, kept in
/// canonical form (torsion exponents non-increasing) so that isomorphism is
/// plain equality.
class MixedGroup {
public:
    MixedGroup() = default;
    MixedGroup(int prime, int free_rank, int divisible_rank, std::vector<int> torsion_exponents);

    static MixedGroup zero(int prime) { return MixedGroup(prime, 0, 0, {}); }
    static MixedGroup cyclic(int prime, int exponent) { return MixedGroup(prime, 0, 0, {exponent}); }
    static MixedGroup free(int prime, int rank = 1) { return MixedGroup(prime, rank, 0, {}); }
    static MixedGroup divisible(int prime, int rank = 1) { return MixedGroup(prime, 0, rank, {}); }

    /// Parses "0", "Z/8", "(Z/2)^2", "Z_2^3", "Q_2/Z_2", "(Q_3/Z_3)^2" and
    /// '+'-separated sums of these.
    static MixedGroup parse(std::string_view text, int prime);

    int prime() const { return prime_; }
    int free_rank() const { return free_rank_; }
    int divisible_rank() const { return divisible_rank_; }
    const std::vector<int>& torsion_exponents() const { return torsion_; }

    bool is_zero() const { return free_rank_ == 0 && divisible_rank_ == 0 && torsion_.empty(); }
    bool is_noetherian() const { return divisible_rank_ == 0; }
    bool is_artinian() const { return free_rank_ == 0; }
    bool is_finite() const { return free_rank_ == 0 && divisible_rank_ == 0; }

    /// log_p of the order; only meaningful for finite groups.
    int log_order() const;
    /// Order of the finite group; throws for infinite groups.
    Integer order() const;

    std::string to_string() const;

    friend MixedGroup operator+(const MixedGroup& a, const MixedGroup& b);
    friend bool operator==(const MixedGroup& a, const MixedGroup& b) = default;

private:
    int prime_ = 2;
    int free_rank_ = 0;
    int divisible_rank_ = 0;
    std::vector<int> torsion_;
};

enum class SummandKind { free, cyclic, divisible };

/// One named cyclic summand: Z_p, Z/p^a or Q_p/Z_p.
struct Summand {
    SummandKind kind = SummandKind::cyclic;
    int exponent = 0;  // only for cyclic
    std::string label;

    static Summand free(std::string label) { return {SummandKind::free, 0, std::move(label)}; }
    static Summand cyclic(int exponent, std::string label) { return {SummandKind::cyclic, exponent, std::move(label)}; }
    static Summand divisible(std::string label) { return {SummandKind::divisible, 0, std::move(label)}; }

    MixedGroup group(int prime) const;
    friend bool operator==(const Summand&, const Summand&) = default;
};

/// A direct sum of labelled cyclic summands. This is both the presentation
/// format for morphism domains (generator order = summand order) and the
/// carrier for named cells on spectral sequence pages.
class LabelledGroup {
public:
    LabelledGroup() = default;
    explicit LabelledGroup(int prime, std::vector<Summand> summands = {});

    int prime() const { return prime_; }
    const std::vector<Summand>& summands() const { return summands_; }
    std::size_t size() const { return summands_.size(); }
    bool empty() const { return summands_.empty(); }
    const Summand& operator[](std::size_t i) const { return summands_[i]; }

    void add(Summand s) { summands_.push_back(std::move(s)); }
    void append(const LabelledGroup& other);

    bool has_divisible() const;
    MixedGroup group() const;
    std::optional<std::size_t> find(std::string_view label) const;

    /// Free and cyclic summands only.
    LabelledGroup torsion_part() const;
    LabelledGroup free_part() const;

    friend bool operator==(const LabelledGroup&, const LabelledGroup&) = default;

private:
    int prime_ = 2;
    std::vector<Summand> summands_;
};

/// Homomorphism between direct sums of cyclic groups (no divisible summands).
/// Entry (i, j) is the coefficient of codomain generator i in the image of
/// domain generator j, stored reduced modulo the order of generator i.
class GroupMorphism {
public:
    GroupMorphism() = default;
    /// Validates shape, divisible-freeness and well-definedness.
    GroupMorphism(LabelledGroup domain, LabelledGroup codomain, IntMatrix matrix);

    static GroupMorphism identity(const LabelledGroup& g);
    static GroupMorphism zero(const LabelledGroup& domain, const LabelledGroup& codomain);

    const LabelledGroup& domain() const { return domain_; }
    const LabelledGroup& codomain() const { return codomain_; }
    const IntMatrix& matrix() const { return matrix_; }

    bool is_zero() const { return matrix_.is_zero(); }

    friend bool operator==(const GroupMorphism&, const GroupMorphism&) = default;

private:
    LabelledGroup domain_;
    LabelledGroup codomain_;
    IntMatrix matrix_;
};

/// g after f.
GroupMorphism compose(const GroupMorphism& g, const GroupMorphism& f);

struct Subgroup {
    LabelledGroup group;
    GroupMorphism inclusion;
};

struct Quotient {
    LabelledGroup group;
    GroupMorphism projection;
    /// Column i is a lift of quotient generator i in codomain coordinates.
    IntMatrix lifts;
};

Subgroup kernel(const GroupMorphism& f);
Quotient cokernel(const GroupMorphism& f);
/// Image as an abstract group, computed as the kernel of the cokernel projection.
LabelledGroup image(const GroupMorphism& f);

MixedGroup hom_to_zp(const MixedGroup& g);
MixedGroup ext_to_zp(const MixedGroup& g);
MixedGroup pontryagin_dual(const MixedGroup& g);
bool is_isomorphic(const MixedGroup& g, const MixedGroup& h);

/// Label for p^power * label, e.g. "4*nu".
std::string multiple_label(int prime, int power, const std::string& label);

/// Label for the element sum_i coeffs[i] * g_i, e.g. "eta_1*kappabar^2+nu_2*kappa".
std::string element_label(const LabelledGroup& g, const std::vector<Integer>& coeffs);

}  // namespace lcss
