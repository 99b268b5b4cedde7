#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hopfcert/group.hpp"

namespace hopfcert {

/// Abelian invariant factors d1 | d2 | ... (ascending) and whether they pair
/// up as E x E.
struct CentralTypeWitness {
    std::vector<std::uint64_t> invariant_factors;
    bool paired = false;
};

/// Throws InvalidArgument for non-abelian M.
CentralTypeWitness is_central_type(const Subgroup& m);

/// Generators (a_j, b_j) with ord(a_j) = ord(b_j) = e_j such that M is the
/// internal direct product of the cyclic groups they generate. Found by
/// exhaustive search, so |M| must stay small (<= 256).
std::vector<std::pair<Index, Index>> paired_basis(const Subgroup& m);

/// Upper unitriangular (SL2, SL3), its image (PSL2) or {u(a,b)} (Sz).
Subgroup sylow_subgroup(const GroupPtr& g);

enum class CharacterKind { InducedSylow, PhiQ1, Phi5, Phi7 };
std::string to_string(CharacterKind k);

/// Parsed subgroup spec.
///   [sl2:|psl2:]E=<basis>   basis tokens: integer code, g, g^k; or E=F
///   [sl3:]L<j> | Lp | M1 | M2
///   [sz:]Z2x2 | Z2x2x2x2 | Z2^<rank>
///   [psl2:]klein:x=<code>,y=<code>
struct MSpec {
    enum class Kind { Additive, SL3L, SzCenter, Klein };
    std::optional<Family> family;
    Kind kind = Kind::Additive;
    std::vector<std::string> basis;  // Additive
    bool whole_field = false;        // Additive, E=F
    std::optional<unsigned> l_index; // SL3L; nullopt means L_p
    unsigned rank = 0;               // SzCenter
    Code x = 0, y = 0;               // Klein
    std::string text;
};
MSpec parse_m_spec(const std::string& text);

/// Span over GF(p) of the basis tokens, sorted. Throws InvalidArgument when
/// 1 is not in the span.
std::vector<Code> additive_span(const FiniteField& f, const std::vector<std::string>& basis, bool whole_field);

Subgroup named_M(const GroupPtr& g, const MSpec& spec);
Subgroup named_M(const GroupPtr& g, const std::string& spec);

/// Least lambda in F_p^x with lambda, lambda*x, lambda*y outside {2, -2}.
/// Needs a prime field with p > 7 and x^2 + y^2 = -1.
Code pick_lambda(const FiniteField& f, Code x, Code y);

/// All (x, y) with x^2 + y^2 = -1 over an odd prime field, sorted.
std::vector<std::pair<Code, Code>> solve_circle(const FiniteField& f);

enum class SetupCase {
    SL2Additive,
    PSL2Additive,
    SL3Lp,
    SL3L1,
    SL3Other,
    SzCenter,
    KleinP3,
    KleinP5,
    KleinP7,
    KleinLarge,
    KleinLargeAxis,  // p > 7 with xy = 0
};
std::string to_string(SetupCase c);

struct SetupFlags {
    std::optional<bool> sqrt_minus4_in_E;
    std::optional<Code> lambda;
    std::optional<std::pair<Code, Code>> xy_pair;
    std::optional<unsigned> sl3_index;  // p stands for L_p
    std::optional<unsigned> sz_rank;
    bool tau_override = false;
};

struct ObstructionSetup {
    GroupPtr group;
    Subgroup M;
    Index tau = 0;
    CharacterKind character_kind = CharacterKind::InducedSylow;
    SetupCase setup_case = SetupCase::SL2Additive;
    SetupFlags flags;
};

/// The case's default tau; fills flags.lambda where one is chosen. Throws
/// InvariantViolation if M and tau M tau^-1 meet nontrivially.
Index choose_tau(const GroupPtr& g, const Subgroup& m, SetupCase c, SetupFlags& flags);

/// Builds group-side data for a spec: M, tau, character kind and case flags.
/// Specs outside the tabulated cases raise InvalidArgument.
ObstructionSetup make_setup(const GroupPtr& g, const std::string& spec,
                            const std::optional<Matrix>& tau_override = std::nullopt);

struct KleinClassification {
    std::size_t class_count = 0;
    std::vector<Subgroup> representatives;
    std::vector<std::size_t> orbit_sizes;
    std::size_t total = 0;
    /// Klein subgroups containing h = pi(0 1; -1 0).
    std::size_t containing_h = 0;
};
/// PSL2(q), q odd: every Klein four-subgroup up to conjugacy.
KleinClassification classify_klein(const GroupPtr& g);

/// Even-dimensional GF(p)-subspaces of F_q containing 1, each given by a
/// basis {1, b_1, ...} in reduced echelon form on the non-constant digits.
std::vector<std::vector<Code>> central_type_additive_bases(const FiniteField& f);

/// SL3 Heisenberg generators g1 = 1 + E12, g2 = 1 + E13, g3 = 1 + E23.
Matrix heisenberg_g(unsigned which);

}  // namespace hopfcert
