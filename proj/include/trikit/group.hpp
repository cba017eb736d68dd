#pragma once

#include <array>
#include <cstdint>

#include "trikit/algebra.hpp"

namespace trikit {

struct MemberReport {
    bool isometry = false;
    bool proper = false;          // det = 1
    bool multiplicative = false;  // g(e_i*e_j) = g(e_i)*g(e_j) on all 64 pairs
    std::string diagnostics;

    bool ok() const { return isometry && proper && multiplicative; }
};

/// Membership in G: isometry with determinant 1 commuting with the twisted
/// product. Basis pairs suffice because both sides of the multiplicativity
/// equation are (rho, theta)-semilinear and g is u-linear.
MemberReport is_member(const ParaCayley& alg, const JetMatrix& g, int prec);

/// Diagonal member with weights (m1, m1 m2, m2^-1, 1, 1, m2, (m1 m2)^-1,
/// m1^-1) on e_1..e_8; m1, m2 must be rho-fixed units of k((t)).
/// Membership is verified on construction.
JetMatrix torus_element(const ParaCayley& alg, const LaurentJet& mu1,
                        const LaurentJet& mu2, int prec);

/// Basis of the constant derivations: matrices with
/// d(x ⋆ y) = d(x) ⋆ y + x ⋆ d(y) on all basis pairs and d^T G + G d = 0.
/// (For constants, * and ⋆ coincide.)
std::vector<KMatrix> derivation_basis(const ParaCayley& alg);

/// Nilpotent derivations obtained as the nonzero-degree graded pieces of
/// the derivation basis under the weight grading deg(e_1..e_8) =
/// (2,3,-1,0,0,1,-3,-2); each piece is itself a skew derivation and is
/// nilpotent because it shifts the grading.
std::vector<KMatrix> nilpotent_derivations(const ParaCayley& alg);

/// exp(scale * delta) for nilpotent delta and rho-fixed scale; requires the
/// nilpotency index to stay below the characteristic. Membership verified.
JetMatrix exp_nilpotent(const ParaCayley& alg, const KMatrix& delta,
                        const LaurentJet& scale, int prec);

/// Seeded product of torus elements and derivation exponentials with
/// t-exponents bounded by pole_bound; the result (and every factor) passes
/// is_member.
JetMatrix random_group_element(const ParaCayley& alg, std::uint64_t seed, int length,
                               int pole_bound, int prec);

using TrialityTriple = std::array<JetMatrix, 3>;

/// g_i(x*y) = g_{i+1}(x) * g_{i+2}(y) (indices mod 3) on all basis pairs.
bool check_triple(const ParaCayley& alg, const TrialityTriple& t, int prec);

/// (g1,g2,g3) -> (g2,g3,g1); an order-3 automorphism of the triple set.
TrialityTriple rotate_triple(const TrialityTriple& t);

struct LiftResult {
    bool lifted = false;
    JetMatrix g2, g3;
    /// Dimension of the t-linear solution space (should be 1).
    int solution_dim = 0;
    /// Obstruction description when lifted = false ("no lift over base
    /// field" with the square-class witness, or a diagnostic).
    std::string obstruction;

    explicit LiftResult(const Field& f) : g2(f, 8, 8), g3(f, 8, 8) {}
};

/// Completes a proper isometry g1 to a triality triple (g1, g2, g3), up to
/// the global sign (-g2, -g3). Solves the joint semilinear system over
/// k((t)) after reducing g2, g3 to the single unknown vector v = g3(e)
/// through the invertible left multiplication by the para-unit, then scales
/// the line of solutions to an isometry. Reports the spinor-norm
/// obstruction when the scaling factor is not a square in k((t)).
LiftResult triality_lift(const ParaCayley& alg, const JetMatrix& g1, int prec);

}  // namespace trikit
