#pragma once

#include <string>
#include <utility>
#include <vector>

#include "hopfcert/catalog.hpp"
#include "hopfcert/group.hpp"
#include "hopfcert/rational.hpp"

namespace hopfcert {

/// Rational-valued function on a group, stored per element in dense order.
class ClassFunction {
public:
    ClassFunction(GroupPtr group, std::vector<Rational> values, CharacterKind kind);

    const FiniteGroup& group() const { return *group_; }
    const GroupPtr& group_ptr() const { return group_; }
    CharacterKind kind() const { return kind_; }
    const Rational& operator()(Index g) const { return values_[g]; }
    const std::vector<Rational>& values() const { return values_; }
    bool is_zero_at(Index g) const { return values_[g].is_zero(); }

private:
    GroupPtr group_;
    std::vector<Rational> values_;
    CharacterKind kind_;
};

/// Ind_U^G(1): chi(x) = #{g : g x g^-1 in U} / |U|, counted over all of G x U.
/// Throws InvariantViolation if a count is not divisible by |U|.
ClassFunction induced_character(const Subgroup& u);

/// Tabulated values of the induced character: the identity value and one
/// value per nontrivial unipotent type ("unipotent", or "(2,1)" and "(3)"
/// for SL3). Zero off P.
struct CharacterTable {
    Rational identity;
    std::vector<std::pair<std::string, Rational>> nontrivial;
    /// Value the table predicts at an element of g.
    Rational at(const FiniteGroup& g, Index x) const;
};
CharacterTable closed_form_character(Family family, std::uint64_t q);

/// The order-keyed special characters phi_q1, phi_5 and phi_7 on PSL2.
ClassFunction special_character(CharacterKind kind, const GroupPtr& g);

/// The character a setup prescribes; induced characters come from the
/// family's Sylow subgroup.
ClassFunction setup_character(const ObstructionSetup& setup);

struct Fiber {
    Rational value;
    std::vector<Index> elements;  // sorted
};
/// Identity fiber first, then the remaining non-zero level sets in ascending
/// value order.
struct FiberDecomposition {
    std::vector<Fiber> fibers;
};
FiberDecomposition fibers(const ClassFunction& chi);

/// M_C = {v in M : tau v in C}, for C a sorted index set.
std::vector<Index> m_c_set(const Subgroup& m, Index tau, const std::vector<Index>& c);

}  // namespace hopfcert
