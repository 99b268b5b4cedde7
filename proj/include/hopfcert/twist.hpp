#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "hopfcert/character.hpp"
#include "hopfcert/cyclotomic.hpp"
#include "hopfcert/group.hpp"

namespace hopfcert {

/// Bicharacter on the character group of M = prod C_e x C_e. On the factor
/// with characters (a, b) and (c, d):
///   Standard  -> zeta_e^{b c}
///   Alternate -> zeta_e^{a d}
///   Trivial   -> 1 (degenerate, but still a cocycle)
enum class Pairing { Standard, Alternate, Trivial };

/// Omega_{M, omega} = sum_{phi, psi} omega(phi, psi) e_phi (x) e_psi, stored
/// densely on M x M over Q(zeta_n) with n the exponent of M. Elements of M
/// are addressed by their position in the sorted member list.
class Twist {
public:
    const Subgroup& subgroup() const { return m_; }
    std::size_t size() const { return n_; }
    unsigned cyclotomic_order() const { return order_; }

    /// Characters as exponent vectors (one entry per generator).
    const std::vector<std::vector<unsigned>>& characters() const { return chars_; }
    /// phi(v) for character index c and member position v.
    Cyclotomic character_value(std::size_t c, std::size_t v) const;
    /// omega(phi, psi), including any corruption.
    Cyclotomic omega(std::size_t phi, std::size_t psi) const;
    /// e_phi as a dense vector over M.
    std::vector<Cyclotomic> idempotent(std::size_t phi) const;

    const std::vector<Cyclotomic>& omega_tensor() const { return omega_; }          // n x n
    const std::vector<Cyclotomic>& omega_inverse_tensor() const { return omega_inv_; }

    std::size_t mul(std::size_t a, std::size_t b) const { return mul_[a * n_ + b]; }
    std::size_t identity() const { return one_; }

private:
    friend Twist build_twist(const Subgroup&, Pairing, std::optional<std::pair<std::size_t, std::size_t>>);
    explicit Twist(Subgroup m) : m_(std::move(m)) {}

    long omega_exponent(std::size_t phi, std::size_t psi) const;
    long pairing_exponent(std::size_t c, std::size_t v) const;

    Subgroup m_;
    std::size_t n_ = 0;
    unsigned order_ = 1;
    Pairing pairing_ = Pairing::Standard;
    std::optional<std::pair<std::size_t, std::size_t>> negated_;
    std::size_t one_ = 0;
    std::vector<unsigned> gen_orders_;            // e_j for each generator a_1, b_1, a_2, ...
    std::vector<std::vector<unsigned>> coords_;   // exponents of each member
    std::vector<std::vector<unsigned>> chars_;
    std::vector<std::size_t> mul_;
    std::vector<std::size_t> inv_;
    std::vector<Cyclotomic> omega_;
    std::vector<Cyclotomic> omega_inv_;
};

/// Builds Omega from a paired decomposition of M. Throws InvalidArgument when
/// M is not of the form E x E and BoundExceeded when |M| > 16. `negate`
/// flips the sign of one omega value (negative control).
Twist build_twist(const Subgroup& m, Pairing pairing = Pairing::Standard,
                  std::optional<std::pair<std::size_t, std::size_t>> negate = std::nullopt);

struct IdempotentCheck {
    bool sum_is_one = false;
    bool orthogonal = false;  // e_phi e_psi = delta e_phi
    bool ok() const { return sum_is_one && orthogonal; }
};
IdempotentCheck verify_idempotents(const Twist& t);

struct TwistAxiomCheck {
    bool cocycle = false;       // (1 (x) Omega)(id (x) Delta)(Omega) = (Omega (x) 1)(Delta (x) id)(Omega)
    bool counit_left = false;   // (eps (x) id)(Omega) = 1
    bool counit_right = false;  // (id (x) eps)(Omega) = 1
    bool inverse = false;       // Omega Omega^-1 = 1 (x) 1
    bool ok() const { return cocycle && counit_left && counit_right && inverse; }
};
TwistAxiomCheck verify_twist_axioms(const Twist& t);

/// Sparse element of K[G x G].
using TensorVector = std::map<std::pair<Index, Index>, Cyclotomic>;
/// Sparse element of KG.
using CyclotomicVector = std::map<Index, Cyclotomic>;

struct PropKeyCheck {
    bool image_matches_y = false;  // (chi (x) id) Delta_Omega(c_tau) = y
    bool counit = false;           // eps(c_tau) = |M| and (eps (x) eps) Delta_Omega(c_tau) = |M|
    bool support = false;          // Delta_Omega(c_tau) lives on (M tau M) x (M tau M)
    CyclotomicVector image;
    bool ok() const { return image_matches_y && counit && support; }
};

/// Delta_Omega(c_tau) = Omega Delta(c_tau) Omega^-1 with c_tau the normalized
/// sum over M tau M.
TensorVector twisted_coproduct_of_c_tau(const Twist& t, Index tau);

PropKeyCheck verify_prop_key(const Twist& t, Index tau, const ClassFunction& chi);

}  // namespace hopfcert
