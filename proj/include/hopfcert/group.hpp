#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "hopfcert/finite_field.hpp"

namespace hopfcert {

enum class Family { SL2, PSL2, SL3, Sz };

std::string to_string(Family f);
/// Accepts "sl2", "psl2", "sl3", "sz" (case-insensitive).
Family parse_family(const std::string& s);
unsigned family_dimension(Family f);

/// Closed-form group order; throws InvalidArgument when q does not fit the family.
std::uint64_t closed_form_order(Family f, std::uint64_t q);

/// Square matrix of dimension 2, 3 or 4 over a field of order <= 256, stored
/// row-major. Unused trailing entries stay zero, so byte-wise comparison of
/// `entries` is the lexicographic order of the entry-code sequence.
struct Matrix {
    std::array<std::uint8_t, 16> entries{};
    std::uint8_t dim = 2;

    Code at(unsigned r, unsigned c) const { return entries[r * dim + c]; }
    void set(unsigned r, unsigned c, Code v) { entries[r * dim + c] = static_cast<std::uint8_t>(v); }

    static Matrix identity(unsigned dim);
    /// Row-major codes; size must be dim*dim.
    static Matrix from_codes(unsigned dim, const std::vector<Code>& codes);
    std::vector<Code> codes() const;

    friend bool operator==(const Matrix& a, const Matrix& b) { return a.dim == b.dim && a.entries == b.entries; }
    friend bool operator<(const Matrix& a, const Matrix& b) { return a.entries < b.entries; }
};

namespace mat {
Matrix mul(const FiniteField& f, const Matrix& a, const Matrix& b);
Matrix neg(const FiniteField& f, const Matrix& a);
Matrix transpose(const Matrix& a);
/// Inverse of a determinant-one matrix (adjugate).
Matrix inverse_det1(const FiniteField& f, const Matrix& a);
Code trace(const FiniteField& f, const Matrix& a);
Code det(const FiniteField& f, const Matrix& a);
/// Rank of a - I by Gaussian elimination.
unsigned rank_minus_identity(const FiniteField& f, const Matrix& a);
Matrix pow(const FiniteField& f, const Matrix& a, std::uint64_t k);
}  // namespace mat

/// Canonical integer encoding: entries as base-q digits, first entry most significant.
using GroupKey = unsigned __int128;
GroupKey encode(const Matrix& m, Code q);
Matrix decode(GroupKey key, unsigned dim, Code q);

enum class JordanType { Trivial, Type21, Type3 };
std::string to_string(JordanType t);

struct GroupOptions {
    /// Hard cap on the number of elements to enumerate.
    std::uint64_t max_order = 2'000'000;
    /// Directory for the enumeration cache; empty disables caching.
    std::string cache_dir;
};

/// Fully enumerated matrix group. Elements are sorted by canonical encoding
/// and addressed by dense index in that order.
class FiniteGroup {
public:
    using Index = std::uint32_t;

    static std::shared_ptr<const FiniteGroup> build(Family family, std::uint64_t q, const GroupOptions& opts = {});

    Family family() const { return family_; }
    Code q() const { return field_->order(); }
    const FiniteField& field() const { return *field_; }
    const std::shared_ptr<const FiniteField>& field_ptr() const { return field_; }
    unsigned dim() const { return family_dimension(family_); }
    bool projective() const { return family_ == Family::PSL2; }
    std::size_t order() const { return elements_.size(); }

    const Matrix& matrix(Index i) const { return elements_[i]; }
    GroupKey key(Index i) const { return encode(elements_[i], q()); }
    Index identity() const { return identity_; }

    /// Projective canonicalization: the smaller of {A, -A} for PSL2, A otherwise.
    Matrix canonical(const Matrix& m) const;
    std::optional<Index> find(const Matrix& m) const;
    /// Throws InvalidArgument if m is not a member.
    Index index_of(const Matrix& m) const;

    Index mul(Index a, Index b) const { return lookup(mat::mul(*field_, elements_[a], elements_[b])); }
    Index inv(Index a) const { return inverse_[a]; }
    /// g x g^-1
    Index conj(Index g, Index x) const;
    Index pow(Index a, std::uint64_t k) const;

    /// Least k >= 1 with g^k = 1, probing the divisors of |G| in increasing order.
    std::uint64_t element_order(Index g) const;
    /// Family predicate for the union of Sylow-p conjugates: trace 2 (SL2),
    /// trace +-2 (PSL2), characteristic polynomial (z-1)^3 (SL3), g^4 = 1 (Sz).
    bool in_P(Index g) const;
    /// SL3 only; throws InvalidArgument for non-unipotent elements.
    JordanType jordan_type(Index g) const;

    bool contains_matrix(const Matrix& m) const { return find(m).has_value(); }

private:
    FiniteGroup(Family family, std::shared_ptr<const FiniteField> field, std::vector<Matrix> elements);
    Index lookup(const Matrix& m) const;

    Family family_;
    std::shared_ptr<const FiniteField> field_;
    std::vector<Matrix> elements_;
    std::vector<Index> inverse_;
    std::vector<std::uint64_t> order_divisors_;
    Index identity_ = 0;
};

using GroupPtr = std::shared_ptr<const FiniteGroup>;
using Index = FiniteGroup::Index;

/// Enumerates the element matrices of a family without building the group
/// object; exposed for the cache and for cross-checks between builders.
std::vector<Matrix> enumerate_elements(Family family, const FiniteField& field);
/// Sz(q) via the Bruhat decomposition B u U tau B with B = TU.
std::vector<Matrix> enumerate_suzuki_bruhat(const FiniteField& field);

namespace suzuki {
/// u(a, b), lower unitriangular.
Matrix u(const FiniteField& f, Code a, Code b);
/// t_kappa = diag(a1, a2, a2^-1, a1^-1) with theta(a1) = kappa theta(kappa), theta(a2) = kappa.
Matrix t(const FiniteField& f, Code kappa);
/// Antidiagonal ones.
Matrix tau();
}  // namespace suzuki

/// A subgroup as a sorted set of dense indices of its parent.
class Subgroup {
public:
    /// Closure of the generators under multiplication.
    static Subgroup generate(GroupPtr parent, std::vector<Index> generators, std::string label = {});
    /// Wraps an explicit member set; checks closure and identity.
    static Subgroup from_members(GroupPtr parent, std::vector<Index> members, std::string label = {});

    const FiniteGroup& parent() const { return *parent_; }
    const GroupPtr& parent_ptr() const { return parent_; }
    const std::vector<Index>& members() const { return members_; }
    const std::vector<Index>& generators() const { return generators_; }
    const std::string& label() const { return label_; }
    std::size_t order() const { return members_.size(); }
    bool contains(Index g) const;
    bool is_abelian() const;
    /// g M g^-1 as a sorted member list.
    std::vector<Index> conjugate_members(Index g) const;
    /// M intersected with g M g^-1.
    std::vector<Index> intersection_with_conjugate(Index g) const;

private:
    Subgroup(GroupPtr parent, std::vector<Index> members, std::vector<Index> generators, std::string label);

    GroupPtr parent_;
    std::vector<Index> members_;
    std::vector<Index> generators_;
    std::string label_;
};

/// Double cosets M g M as sorted index sets, ordered by their least index.
std::vector<std::vector<Index>> double_cosets(const Subgroup& m);
/// The double coset M g M containing g.
std::vector<Index> double_coset(const Subgroup& m, Index g);

struct SubgroupOrbit {
    /// Distinct conjugates, each a sorted member list, in lexicographic order.
    std::vector<std::vector<Index>> conjugates;
    std::size_t normalizer_order = 0;
};
SubgroupOrbit conjugate_subgroup_orbit(const Subgroup& m);

}  // namespace hopfcert
