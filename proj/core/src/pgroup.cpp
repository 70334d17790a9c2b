#include "lcss/pgroup.hpp"

#include <algorithm>
#include <cctype>
#include <functional>

#include <fmt/core.h>

#include "lcss/snf.hpp"

namespace lcss {

// ---------------------------------------------------------------- MixedGroup

MixedGroup::MixedGroup(int prime, int free_rank, int divisible_rank, std::vector<int> torsion_exponents)
    : prime_(prime), free_rank_(free_rank), divisible_rank_(divisible_rank), torsion_(std::move(torsion_exponents))
{
    if (prime < 2)
        throw Error(fmt::format("MixedGroup: invalid prime {}", prime));
    if (free_rank < 0 || divisible_rank < 0)
        throw Error("MixedGroup: negative rank");
    for (int a : torsion_)
        if (a < 1)
            throw Error("MixedGroup: torsion exponents must be positive");
    std::sort(torsion_.begin(), torsion_.end(), std::greater<>());
}

int MixedGroup::log_order() const
{
    int total = 0;
    for (int a : torsion_)
        total += a;
    return total;
}

Integer MixedGroup::order() const
{
    if (!is_finite())
        throw Error("MixedGroup::order: group is infinite");
    return power_of(prime_, log_order());
}

std::string MixedGroup::to_string() const
{
    if (is_zero())
        return "0";
    std::vector<std::string> parts;
    if (free_rank_ == 1)
        parts.push_back(fmt::format("Z_{}", prime_));
    else if (free_rank_ > 1)
        parts.push_back(fmt::format("Z_{}^{}", prime_, free_rank_));
    for (std::size_t i = 0; i < torsion_.size();) {
        std::size_t j = i;
        while (j < torsion_.size() && torsion_[j] == torsion_[i])
            ++j;
        const std::string order = power_of(prime_, torsion_[i]).get_str();
        if (j - i == 1)
            parts.push_back("Z/" + order);
        else
            parts.push_back(fmt::format("(Z/{})^{}", order, j - i));
        i = j;
    }
    if (divisible_rank_ == 1)
        parts.push_back(fmt::format("Q_{0}/Z_{0}", prime_));
    else if (divisible_rank_ > 1)
        parts.push_back(fmt::format("(Q_{0}/Z_{0})^{1}", prime_, divisible_rank_));
    std::string out;
    for (std::size_t i = 0; i < parts.size(); ++i)
        out += (i == 0 ? "" : " + ") + parts[i];
    return out;
}

namespace {

std::string strip(std::string_view s)
{
    std::string out;
    for (char c : s)
        if (!std::isspace(static_cast<unsigned char>(c)))
            out.push_back(c);
    return out;
}

int parse_positive(const std::string& s, std::string_view context)
{
    if (s.empty() || !std::all_of(s.begin(), s.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }))
        throw Error(fmt::format("cannot parse group term '{}'", context));
    return std::stoi(s);
}

}  // namespace

MixedGroup MixedGroup::parse(std::string_view text, int prime)
{
    const std::string compact = strip(text);
    if (compact.empty())
        throw Error("cannot parse empty group");
    int free_rank = 0;
    int divisible_rank = 0;
    std::vector<int> torsion;
    const std::string zp = fmt::format("Z_{}", prime);
    const std::string qz = fmt::format("Q_{0}/Z_{0}", prime);

    std::size_t start = 0;
    while (start <= compact.size()) {
        std::size_t end = compact.find('+', start);
        if (end == std::string::npos)
            end = compact.size();
        std::string term = compact.substr(start, end - start);
        start = end + 1;
        if (term.empty())
            throw Error(fmt::format("cannot parse group '{}'", text));

        int multiplicity = 1;
        std::string base = term;
        if (auto caret = term.rfind('^'); caret != std::string::npos && term.find(')') != std::string::npos
                                          && caret > term.find(')')) {
            multiplicity = parse_positive(term.substr(caret + 1), term);
            base = term.substr(0, caret);
            if (base.size() < 2 || base.front() != '(' || base.back() != ')')
                throw Error(fmt::format("cannot parse group term '{}'", term));
            base = base.substr(1, base.size() - 2);
        }

        if (base == "0") {
            continue;
        }
        if (base == qz) {
            divisible_rank += multiplicity;
        }
        else if (base.rfind("Z/", 0) == 0) {
            Integer order(base.substr(2));
            int v = valuation(order, prime);
            if (v <= 0 || power_of(prime, v) != order)
                throw Error(fmt::format("'{}' is not a cyclic {}-group", term, prime));
            for (int i = 0; i < multiplicity; ++i)
                torsion.push_back(v);
        }
        else if (base == zp) {
            free_rank += multiplicity;
        }
        else if (base.rfind(zp + "^", 0) == 0 && multiplicity == 1) {
            free_rank += parse_positive(base.substr(zp.size() + 1), term);
        }
        else {
            throw Error(fmt::format("cannot parse group term '{}'", term));
        }
        if (end == compact.size())
            break;
    }
    return MixedGroup(prime, free_rank, divisible_rank, std::move(torsion));
}

MixedGroup operator+(const MixedGroup& a, const MixedGroup& b)
{
    if (a.prime_ != b.prime_)
        throw Error("direct sum of groups at different primes");
    std::vector<int> torsion = a.torsion_;
    torsion.insert(torsion.end(), b.torsion_.begin(), b.torsion_.end());
    return MixedGroup(a.prime_, a.free_rank_ + b.free_rank_, a.divisible_rank_ + b.divisible_rank_, std::move(torsion));
}

MixedGroup hom_to_zp(const MixedGroup& g)
{
    if (!g.is_noetherian())
        throw Error("hom_to_zp: group has divisible summands");
    return MixedGroup::free(g.prime(), g.free_rank());
}

MixedGroup ext_to_zp(const MixedGroup& g)
{
    if (!g.is_noetherian())
        throw Error("ext_to_zp: group has divisible summands");
    return MixedGroup(g.prime(), 0, 0, g.torsion_exponents());
}

MixedGroup pontryagin_dual(const MixedGroup& g)
{
    return MixedGroup(g.prime(), g.divisible_rank(), g.free_rank(), g.torsion_exponents());
}

bool is_isomorphic(const MixedGroup& g, const MixedGroup& h)
{
    if (g.prime() != h.prime())
        throw Error("is_isomorphic: groups at different primes");
    return g == h;
}

// ------------------------------------------------------------ LabelledGroup

MixedGroup Summand::group(int prime) const
{
    switch (kind) {
    case SummandKind::free:
        return MixedGroup::free(prime);
    case SummandKind::divisible:
        return MixedGroup::divisible(prime);
    case SummandKind::cyclic:
        break;
    }
    return MixedGroup::cyclic(prime, exponent);
}

LabelledGroup::LabelledGroup(int prime, std::vector<Summand> summands) : prime_(prime), summands_(std::move(summands))
{
    for (const auto& s : summands_)
        if (s.kind == SummandKind::cyclic && s.exponent < 1)
            throw Error(fmt::format("summand '{}' has non-positive exponent", s.label));
}

void LabelledGroup::append(const LabelledGroup& other)
{
    summands_.insert(summands_.end(), other.summands_.begin(), other.summands_.end());
}

bool LabelledGroup::has_divisible() const
{
    return std::any_of(summands_.begin(), summands_.end(),
                       [](const Summand& s) { return s.kind == SummandKind::divisible; });
}

MixedGroup LabelledGroup::group() const
{
    int free_rank = 0, div_rank = 0;
    std::vector<int> torsion;
    for (const auto& s : summands_) {
        if (s.kind == SummandKind::free)
            ++free_rank;
        else if (s.kind == SummandKind::divisible)
            ++div_rank;
        else
            torsion.push_back(s.exponent);
    }
    return MixedGroup(prime_, free_rank, div_rank, std::move(torsion));
}

std::optional<std::size_t> LabelledGroup::find(std::string_view label) const
{
    for (std::size_t i = 0; i < summands_.size(); ++i)
        if (summands_[i].label == label)
            return i;
    return std::nullopt;
}

LabelledGroup LabelledGroup::torsion_part() const
{
    LabelledGroup out(prime_);
    for (const auto& s : summands_)
        if (s.kind == SummandKind::cyclic)
            out.add(s);
    return out;
}

LabelledGroup LabelledGroup::free_part() const
{
    LabelledGroup out(prime_);
    for (const auto& s : summands_)
        if (s.kind == SummandKind::free)
            out.add(s);
    return out;
}

std::string multiple_label(int prime, int power, const std::string& label)
{
    if (power == 0)
        return label;
    return power_of(prime, power).get_str() + "*" + label;
}

// ------------------------------------------------------------ GroupMorphism

namespace {

void reduce_entry(Integer& x, const Summand& target, int prime)
{
    if (target.kind != SummandKind::cyclic)
        return;
    const Integer order = power_of(prime, target.exponent);
    mpz_fdiv_r(x.get_mpz_t(), x.get_mpz_t(), order.get_mpz_t());
}

}  // namespace

GroupMorphism::GroupMorphism(LabelledGroup domain, LabelledGroup codomain, IntMatrix matrix)
    : domain_(std::move(domain)), codomain_(std::move(codomain)), matrix_(std::move(matrix))
{
    if (domain_.prime() != codomain_.prime())
        throw Error("GroupMorphism: domain and codomain at different primes");
    if (domain_.has_divisible() || codomain_.has_divisible())
        throw Error("GroupMorphism: divisible summands have no matrix presentation; "
                    "use the closed-form Artinian rules");
    if (matrix_.rows() != codomain_.size() || matrix_.cols() != domain_.size())
        throw Error(fmt::format("GroupMorphism: matrix is {}x{}, expected {}x{}", matrix_.rows(), matrix_.cols(),
                                codomain_.size(), domain_.size()));
    const int p = domain_.prime();
    for (std::size_t i = 0; i < matrix_.rows(); ++i)
        for (std::size_t j = 0; j < matrix_.cols(); ++j)
            reduce_entry(matrix_(i, j), codomain_[i], p);

    for (std::size_t j = 0; j < domain_.size(); ++j) {
        const Summand& src = domain_[j];
        if (src.kind != SummandKind::cyclic)
            continue;
        for (std::size_t i = 0; i < codomain_.size(); ++i) {
            const Integer& x = matrix_(i, j);
            if (x == 0)
                continue;
            const Summand& dst = codomain_[i];
            bool ok = dst.kind == SummandKind::cyclic && valuation(x, p) + src.exponent >= dst.exponent;
            if (!ok)
                throw Error(fmt::format("GroupMorphism: image of '{}' (order {}^{}) in '{}' is not annihilated "
                                        "by the source order",
                                        src.label, p, src.exponent, dst.label));
        }
    }
}

GroupMorphism GroupMorphism::identity(const LabelledGroup& g)
{
    return GroupMorphism(g, g, IntMatrix::identity(g.size()));
}

GroupMorphism GroupMorphism::zero(const LabelledGroup& domain, const LabelledGroup& codomain)
{
    return GroupMorphism(domain, codomain, IntMatrix(codomain.size(), domain.size()));
}

GroupMorphism compose(const GroupMorphism& g, const GroupMorphism& f)
{
    if (!(f.codomain() == g.domain()))
        throw Error("compose: codomain/domain mismatch");
    return GroupMorphism(f.domain(), g.codomain(), g.matrix() * f.matrix());
}

// ------------------------------------------------------ kernel and cokernel

namespace {

// True when every row and every column has at most one nonzero entry.
bool is_monomial(const IntMatrix& m)
{
    std::vector<int> row_count(m.rows(), 0), col_count(m.cols(), 0);
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j)
            if (m(i, j) != 0) {
                if (++row_count[i] > 1 || ++col_count[j] > 1)
                    return false;
            }
    return true;
}

}  // namespace

std::string element_label(const LabelledGroup& g, const std::vector<Integer>& coeffs)
{
    const int p = g.prime();
    std::vector<std::size_t> support;
    for (std::size_t i = 0; i < coeffs.size(); ++i)
        if (coeffs[i] != 0)
            support.push_back(i);
    if (support.size() == 1) {
        const Integer& c = coeffs[support[0]];
        return multiple_label(p, valuation(c, p), g[support[0]].label);
    }
    std::string out;
    for (std::size_t k = 0; k < support.size(); ++k) {
        const std::size_t i = support[k];
        const Integer& c = coeffs[i];
        std::string term = g[i].label;
        if (c == -1)
            term = "-" + term;
        else if (c != 1)
            term = c.get_str() + "*" + term;
        if (k > 0 && term.front() != '-')
            out += "+";
        out += term;
    }
    return out.empty() ? "0" : out;
}

namespace {

std::vector<Integer> reduced_column(const IntMatrix& m, std::size_t col, const LabelledGroup& g)
{
    std::vector<Integer> v(m.rows());
    for (std::size_t i = 0; i < m.rows(); ++i) {
        v[i] = m(i, col);
        reduce_entry(v[i], g[i], g.prime());
    }
    return v;
}

// Relation columns p^{b_i} e_i for every cyclic generator of g.
IntMatrix relation_matrix(const LabelledGroup& g)
{
    std::vector<std::size_t> cyclic;
    for (std::size_t i = 0; i < g.size(); ++i)
        if (g[i].kind == SummandKind::cyclic)
            cyclic.push_back(i);
    IntMatrix r(g.size(), cyclic.size());
    for (std::size_t t = 0; t < cyclic.size(); ++t)
        r(cyclic[t], t) = power_of(g.prime(), g[cyclic[t]].exponent);
    return r;
}

Subgroup kernel_monomial(const GroupMorphism& f)
{
    const auto& dom = f.domain();
    const auto& cod = f.codomain();
    const auto& m = f.matrix();
    const int p = dom.prime();
    LabelledGroup group(p);
    std::vector<std::vector<Integer>> columns;

    for (std::size_t j = 0; j < dom.size(); ++j) {
        std::optional<std::size_t> hit;
        for (std::size_t i = 0; i < cod.size(); ++i)
            if (m(i, j) != 0)
                hit = i;
        int shift = 0;  // kernel generator is p^shift * g_j
        if (hit) {
            const Summand& dst = cod[*hit];
            if (dst.kind == SummandKind::free)
                continue;  // injective on this summand
            shift = dst.exponent - valuation(m(*hit, j), p);
        }
        const Summand& src = dom[j];
        if (src.kind == SummandKind::cyclic) {
            const int exponent = src.exponent - shift;
            if (exponent <= 0)
                continue;
            group.add(Summand::cyclic(exponent, multiple_label(p, shift, src.label)));
        }
        else {
            group.add(Summand::free(multiple_label(p, shift, src.label)));
        }
        std::vector<Integer> col(dom.size(), Integer(0));
        col[j] = power_of(p, shift);
        columns.push_back(std::move(col));
    }

    IntMatrix inc(dom.size(), columns.size());
    for (std::size_t c = 0; c < columns.size(); ++c)
        for (std::size_t r = 0; r < dom.size(); ++r)
            inc(r, c) = columns[c][r];
    GroupMorphism inclusion(group, dom, std::move(inc));
    return {std::move(group), std::move(inclusion)};
}

Subgroup kernel_general(const GroupMorphism& f)
{
    const auto& dom = f.domain();
    const auto& cod = f.codomain();
    const int p = dom.prime();
    const std::size_t m = dom.size();

    // x in ker f  <=>  F x + Q y = 0 for some y, Q = relations of the codomain.
    const IntMatrix a = f.matrix().hconcat(relation_matrix(cod));
    const SnfResult snf_a = smith_normal_form(a);
    std::vector<std::size_t> null_cols;
    for (std::size_t c = snf_a.rank; c < a.cols(); ++c)
        null_cols.push_back(c);

    LabelledGroup group(p);
    if (null_cols.empty() || m == 0)
        return {group, GroupMorphism::zero(group, dom)};

    std::vector<std::size_t> top(m);
    for (std::size_t i = 0; i < m; ++i)
        top[i] = i;
    const IntMatrix x = snf_a.right.select_cols(null_cols).select_rows(top);  // m x k, full column rank
    const std::size_t k = x.cols();

    // Express the domain relations in the basis given by the columns of x.
    const IntMatrix rel = relation_matrix(dom);
    const SnfResult snf_x = smith_normal_form(x);
    if (snf_x.rank != k)
        throw Error("kernel: internal error, kernel lattice basis is degenerate");
    const IntMatrix y = snf_x.left * rel;
    IntMatrix z(k, rel.cols());
    for (std::size_t c = 0; c < rel.cols(); ++c) {
        for (std::size_t i = 0; i < k; ++i) {
            if (mpz_divisible_p(y(i, c).get_mpz_t(), snf_x.diagonal[i].get_mpz_t()) == 0)
                throw Error("kernel: internal error, relation outside kernel lattice");
            mpz_divexact(z(i, c).get_mpz_t(), y(i, c).get_mpz_t(), snf_x.diagonal[i].get_mpz_t());
        }
        for (std::size_t i = k; i < m; ++i)
            if (y(i, c) != 0)
                throw Error("kernel: internal error, relation outside kernel lattice");
    }
    const IntMatrix coeff = snf_x.right * z;  // k x r

    const SnfResult snf_c = smith_normal_form(coeff);
    const IntMatrix basis = x * snf_c.left_inverse;  // columns: new kernel generators in domain coordinates

    std::vector<std::vector<Integer>> columns;
    for (std::size_t i = 0; i < k; ++i) {
        const Integer e = i < snf_c.diagonal.size() ? snf_c.diagonal[i] : Integer(0);
        std::vector<Integer> col = reduced_column(basis, i, dom);
        if (e == 0) {
            group.add(Summand::free(element_label(dom, col)));
        }
        else {
            const int v = valuation(e, p);
            if (v == 0)
                continue;
            group.add(Summand::cyclic(v, element_label(dom, col)));
        }
        columns.push_back(std::move(col));
    }
    IntMatrix inc(m, columns.size());
    for (std::size_t c = 0; c < columns.size(); ++c)
        for (std::size_t r = 0; r < m; ++r)
            inc(r, c) = columns[c][r];
    GroupMorphism inclusion(group, dom, std::move(inc));
    return {std::move(group), std::move(inclusion)};
}

Quotient cokernel_monomial(const GroupMorphism& f)
{
    const auto& cod = f.codomain();
    const auto& m = f.matrix();
    const int p = cod.prime();
    LabelledGroup group(p);
    std::vector<std::size_t> kept;

    for (std::size_t i = 0; i < cod.size(); ++i) {
        std::optional<std::size_t> hit;
        for (std::size_t j = 0; j < m.cols(); ++j)
            if (m(i, j) != 0)
                hit = j;
        const Summand& dst = cod[i];
        if (!hit) {
            group.add(dst);
            kept.push_back(i);
            continue;
        }
        const int v = valuation(m(i, *hit), p);
        if (v == 0)
            continue;
        group.add(Summand::cyclic(v, dst.label));
        kept.push_back(i);
    }

    IntMatrix proj(kept.size(), cod.size());
    IntMatrix lifts(cod.size(), kept.size());
    for (std::size_t r = 0; r < kept.size(); ++r) {
        proj(r, kept[r]) = 1;
        lifts(kept[r], r) = 1;
    }
    GroupMorphism projection(cod, group, std::move(proj));
    return {std::move(group), std::move(projection), std::move(lifts)};
}

Quotient cokernel_general(const GroupMorphism& f)
{
    const auto& cod = f.codomain();
    const int p = cod.prime();
    const std::size_t n = cod.size();
    const IntMatrix a = f.matrix().hconcat(relation_matrix(cod));
    const SnfResult snf = smith_normal_form(a);

    LabelledGroup group(p);
    std::vector<std::size_t> kept;
    for (std::size_t i = 0; i < n; ++i) {
        const Integer d = i < snf.diagonal.size() ? snf.diagonal[i] : Integer(0);
        std::vector<Integer> lift = reduced_column(snf.left_inverse, i, cod);
        if (d == 0) {
            group.add(Summand::free(element_label(cod, lift)));
        }
        else {
            const int v = valuation(d, p);
            if (v == 0)
                continue;
            group.add(Summand::cyclic(v, element_label(cod, lift)));
        }
        kept.push_back(i);
    }
    IntMatrix proj = snf.left.select_rows(kept);
    IntMatrix lifts = snf.left_inverse.select_cols(kept);
    GroupMorphism projection(cod, group, std::move(proj));
    return {std::move(group), std::move(projection), std::move(lifts)};
}

}  // namespace

Subgroup kernel(const GroupMorphism& f)
{
    if (is_monomial(f.matrix()))
        return kernel_monomial(f);
    return kernel_general(f);
}

Quotient cokernel(const GroupMorphism& f)
{
    if (is_monomial(f.matrix()))
        return cokernel_monomial(f);
    return cokernel_general(f);
}

LabelledGroup image(const GroupMorphism& f)
{
    return kernel(cokernel(f).projection).group;
}

}  // namespace lcss
