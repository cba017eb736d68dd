#pragma once

#include "trikit/lattice.hpp"

namespace trikit {

/// rho- or theta-semilinear operator on a rank-3 sublattice, written in a
/// designated basis M: on coordinates c it acts as M · (A · rho(c))
/// (respectively theta(c)).
struct SemilinearOp {
    JetMatrix matrix;     // 3x3
    bool rho_twist = true;
};

/// Everything the pipeline computed, with every stage verified on the way.
struct NormalizationTrace {
    AlgebraElement f1, f2;
    JetMatrix l0_basis;          // 8x6
    JetMatrix l1_basis, l2_basis;  // 8x3 each
    JetMatrix a1;                // matrix of t_1 on the L1 basis
    JetMatrix cocycle_b;         // trivialization: b^-1 (-A1) rho(b) = I
    JetMatrix x_basis, y_basis;  // 8x3, final eigen/dual bases
    LaurentJet sign_unit;        // the unit from x1*x2 = b y3 before fixing
    JetMatrix g;                 // assembled group element
    std::string witness_used;

    explicit NormalizationTrace(const Field& f)
        : f1(f), f2(f), l0_basis(f, 8, 6), l1_basis(f, 8, 3), l2_basis(f, 8, 3),
          a1(f, 3, 3), cocycle_b(f, 3, 3), x_basis(f, 8, 3), y_basis(f, 8, 3),
          sign_unit(f), g(f, 8, 8) {}
};

/// f1 = a, f2 = a*a; verifies the hyperbolic-pair relations
/// f1*f1 = f2, f2*f2 = f1, f1*f2 = f2*f1 = 0, q(f_i) = 0, <f1,f2> = 1.
std::pair<AlgebraElement, AlgebraElement> hyperbolic_pair(const ParaCayley& alg,
                                                          const Lattice& l,
                                                          const AlgebraElement& a);

/// Completes {f1, f2} to a basis (residue-rank selection of 6 generator
/// columns) and projects them orthogonally to the pair:
/// v' = v - <a,v> (a*a) - <a*a,v> a. Verifies orthogonality and that
/// [f1 f2 | L0] is a unimodular basis change of the lattice basis.
JetMatrix complement_L0(const ParaCayley& alg, const Lattice& l,
                        const AlgebraElement& f1, const AlgebraElement& f2);

struct L0Split {
    JetMatrix l1, l2;           // 8x3 bases
    JetMatrix adapted;          // [f1 f2 | L1 | L2], 8x8
    JetMatrix adapted_inv;      // at the lattice's internal precision
};

/// Splits L0 by the projectors p1(x) = (f2*x)*f1 and p2(x) = (f1*x)*f2;
/// verifies p1 + p2 = id on L0, rank 3 each, isotropy, and the stability
/// and annihilation relations (L0*f_i and f_i*L0 in L0, f_i*L_i = 0,
/// L_i*f_{i+1} = 0, L_1*L_2 in R[[u]] f_1, L_2*L_1 in R[[u]] f_2,
/// L_i*L_i in L_{i+1}).
L0Split split_L1_L2(const ParaCayley& alg, const Lattice& l, const JetMatrix& l0,
                    const AlgebraElement& f1, const AlgebraElement& f2);

/// Matrix of t_i(x) = x * f_i on the rank-3 basis sitting at the given
/// column block of the adapted basis; verifies the image stays in the block,
/// A rho(A) theta(A) = -I, and residue(A) = -I.
JetMatrix semilinear_matrix(const ParaCayley& alg, const Lattice& l, const L0Split& split,
                            int block, const AlgebraElement& fi);

/// Successive-approximation trivialization of the twisted conjugacy
/// I = b^-1 (-A) rho(b): step n corrects the u^n slice by
/// D = (1 - xi^n)^-1 E_n when 3 does not divide n; when 3 | n the slice is
/// forced to vanish by the cocycle identity c rho(c) theta(c) = I, which is
/// asserted at every step. Returns the unique zero-initialized solution.
JetMatrix twisted_conjugacy_solve(const JetMatrix& a, int prec);

/// y_j in L2 with <x_i, y_j> = delta_ij; asserts t_2(y_j) = -y_j.
/// solve_prec drives the internal pairing inversion, check_prec the
/// certificate bound of the assertions.
JetMatrix dual_basis(const ParaCayley& alg, const JetMatrix& x_basis,
                     const JetMatrix& m2, const AlgebraElement& f2, int solve_prec,
                     int check_prec);

/// Fixes x1*x2 = -y3 by the unit rescale y3 <- -b y3, x3 <- -b^-1 x3, then
/// verifies the complete multiplication table of the adapted basis (the
/// x_i*x_j and y_i*y_j tables, the f/x/y block, and the cross relations).
/// Throws CheckError("table mismatch: ...") naming the failing product.
void sign_normalize(const ParaCayley& alg, JetMatrix& x_basis, JetMatrix& y_basis,
                    const AlgebraElement& f1, const AlgebraElement& f2, int solve_prec,
                    int check_prec, LaurentJet* unit_out = nullptr);

/// The full pipeline: checks conditions (1)-(4) (or uses the provided
/// witness), decomposes, trivializes, and assembles g with g(std basis)
/// spanning L. Verifies multiplicativity on all 64 pairs, g^T G g = G,
/// det g = 1 and lattice_equal(g L_std, L).
JetMatrix normalize_lattice(const ParaCayley& alg, const Lattice& l,
                            const std::optional<AlgebraElement>& witness,
                            NormalizationTrace* trace = nullptr);

}  // namespace trikit
