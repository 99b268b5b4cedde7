#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>

#include "hopfcert/catalog.hpp"
#include "hopfcert/character.hpp"
#include "hopfcert/group.hpp"
#include "hopfcert/rational.hpp"

namespace hopfcert {

/// Sparse element of the rational group algebra QG. Zero coefficients are
/// never stored.
class GroupAlgebraVector {
public:
    explicit GroupAlgebraVector(GroupPtr group) : group_(std::move(group)) {}

    const FiniteGroup& group() const { return *group_; }
    const std::map<Index, Rational>& coefficients() const { return coeffs_; }
    std::size_t support_size() const { return coeffs_.size(); }
    Rational coefficient(Index g) const;

    /// Adds c * g, erasing the entry if it cancels.
    void add(Index g, const Rational& c);

    /// Convolution product over the group multiplication.
    GroupAlgebraVector operator*(const GroupAlgebraVector& o) const;
    /// Linear extension of chi.
    Rational evaluate(const ClassFunction& chi) const;

    friend bool operator==(const GroupAlgebraVector& a, const GroupAlgebraVector& b) {
        return a.coeffs_ == b.coeffs_;
    }

private:
    GroupPtr group_;
    std::map<Index, Rational> coeffs_;
};

/// y = (1/|M|) sum_{g in M tau M} chi(g) g. Throws InvalidArgument unless
/// M meets tau M tau^-1 trivially.
GroupAlgebraVector compute_y(const ClassFunction& chi, const Subgroup& m, Index tau);

/// chi(y^2) by squaring y in the group algebra.
Rational chi_y2_direct(const ClassFunction& chi, const GroupAlgebraVector& y);

/// Default iteration cap for the quadruple loop.
inline constexpr std::uint64_t kQuadloopBound = 100'000'000;

/// (1/|M|^2) sum over u, u', v, v' in M of
/// chi(tau u' u) chi(tau v' v) chi(tau u' v tau v' u).
/// Throws BoundExceeded when |M|^4 exceeds the bound.
Rational chi_y2_quadloop(const ClassFunction& chi, const Subgroup& m, Index tau,
                         std::uint64_t bound = kQuadloopBound);

/// Fiber procedure: (1/|M|) sum over fibers C, C' of chi(C) chi(C') times
/// sum_{v in M, x in M_C, x' in M_C'} chi(tau x x' v tau v^-1).
/// Requires abelian M.
Rational chi_y2_fiber(const ClassFunction& chi, const Subgroup& m, Index tau);

/// Tabulated closed form for the setup, or nullopt outside the tabulated
/// cases (including any overridden tau).
std::optional<Rational> closed_form_value(const ObstructionSetup& setup);

enum class Conclusion { Obstructed, Inconclusive };
std::string to_string(Conclusion c);

struct MethodValues {
    Rational direct;
    Rational quadloop;
    Rational fiber;
};

struct ObstructionCertificate {
    std::string family;
    std::uint64_t q = 0;
    std::string m_label;
    std::uint64_t m_order = 0;
    std::vector<Code> tau;
    std::string character;
    std::string setup_case;
    Rational value;
    Integer reduced_denominator;
    Integer gcd_with_M;
    MethodValues methods;
    bool methods_agree = false;
    std::optional<Rational> closed_form;
    Conclusion conclusion = Conclusion::Inconclusive;
};

/// Verdict rule shared by certify and its tests.
Conclusion conclude(const Rational& value, std::uint64_t m_order, bool methods_agree);

/// Runs all three methods and compares them; disagreement throws
/// InvariantViolation.
ObstructionCertificate certify(const ObstructionSetup& setup, std::uint64_t quadloop_bound = kQuadloopBound);

/// Whether tau^2 commutes with every element of its group.
bool square_is_central(const FiniteGroup& g, Index tau);

/// Scans M^4 and checks that tau u' v tau v' u is the identity exactly when
/// u'v = 1, v'u = 1 and tau = tau^-1.
bool identity_criterion_holds(const Subgroup& m, Index tau);

}  // namespace hopfcert
