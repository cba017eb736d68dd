#pragma once

#include <memory>
#include <optional>
#include <string>

#include "trikit/algebra.hpp"

namespace trikit {

/// A k[[u]]-lattice in V, given as the column span of an 8x8 basis matrix
/// over k((u)). The basis is not unique; verdicts below are invariant under
/// unimodular basis change. The inverse basis matrix is cached lazily since
/// every checker needs it.
class Lattice {
public:
    Lattice(JetMatrix basis, int prec);

    static Lattice standard(const Field& f, int prec);

    const JetMatrix& basis() const { return basis_; }
    const Field& field() const { return basis_.field(); }
    /// Certificate bound: verdicts are certified mod u^prec.
    int prec() const { return prec_; }
    /// Internal computation target: prec plus headroom scaled to the pole
    /// depth of the basis, so certificates at prec survive valuation shifts.
    int internal_prec() const { return iprec_; }

    /// inverse(B) at the internal precision (cached).
    const JetMatrix& basis_inverse() const;

    /// Column j of the basis as an algebra element.
    AlgebraElement generator(std::size_t j) const;

    /// Coordinates of v in this basis together with the integrality verdict.
    MembershipResult member(const AlgebraElement& v) const;

private:
    JetMatrix basis_;
    int prec_;
    int iprec_;
    mutable std::shared_ptr<const JetMatrix> inv_;
};

/// Equal column spans: both transition matrices integral.
bool lattice_equal(const Lattice& a, const Lattice& b);

/// Condition (1): B^T G B unimodular over k[[u]].
bool check_self_dual(const ParaCayley& alg, const Lattice& l);

struct ClosureFailure {
    int i = 0, j = 0;  // 1-based generator pair
};

/// Condition (2): b_i * b_j in L for all 64 basis pairs (sufficient by
/// semilinearity of * and integrality of rho, theta on k[[u]]).
bool check_closed(const ParaCayley& alg, const Lattice& l,
                  ClosureFailure* failure = nullptr);

struct WitnessResult {
    bool found = false;
    AlgebraElement witness;     // valid only when found
    std::string failure;        // "no witness found" / "lift stalled" / "not in lattice" / verification text
    bool via_search = false;    // found by the residue search + Newton lift

    explicit WitnessResult(const Field& f) : witness(AlgebraElement(f)) {}
};

/// Condition (3): a in L with q(a) = 0 and <a*a, a> = 1 to precision.
/// Path A verifies a provided witness. Path B (prime backend only) exhausts
/// residue vectors with q̄ = 0, T̄ = 1 and Newton-lifts the first liftable one;
/// the lift freezes 6 coordinates and solves the 2x2 Jacobian system of
/// (q, T-1) in the other two, stepping the residual valuation.
WitnessResult find_witness(const ParaCayley& alg, const Lattice& l,
                           const std::optional<AlgebraElement>& provided);

struct ResidueAlgebra {
    Field field;
    /// c[i][j][k]: coefficient of b̄_k in b̄_i ⋆ b̄_j (0-based).
    std::array<std::array<std::array<FieldElement, 8>, 8>, 8> c;
    KMatrix gram;

    KVec star(const KVec& x, const KVec& y) const;
    FieldElement bilinear(const KVec& x, const KVec& y) const;
    FieldElement quadratic(const KVec& x) const;
    /// <x ⋆ x, x>
    FieldElement trace(const KVec& x) const;
};

/// Structure constants and Gram of L/uL (requires condition (2)).
ResidueAlgebra residue_algebra(const ParaCayley& alg, const Lattice& l);

/// Condition (4): with e = a + a*a, every residue vector orthogonal to ē
/// satisfies ē ⋆ x̄ = -x̄ = x̄ ⋆ ē in the residue algebra.
bool check_parunit(const ParaCayley& alg, const Lattice& l, const AlgebraElement& a,
                   std::string* diagnostics = nullptr);

struct ConditionReport {
    /// 0 = all four passed; otherwise index of the first failing condition.
    int first_failure = 0;
    bool c1 = false, c2 = false, c3 = false, c4 = false;
    std::optional<AlgebraElement> witness;
    std::string diagnostics;

    bool ok() const { return first_failure == 0; }
};

/// Conditions (1)-(4) in order, short-circuiting with diagnostics.
ConditionReport check_all(const ParaCayley& alg, const Lattice& l,
                          const std::optional<AlgebraElement>& provided_witness = std::nullopt);

}  // namespace trikit
