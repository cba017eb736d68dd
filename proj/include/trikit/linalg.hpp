#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "trikit/laurent.hpp"

namespace trikit {

// ---------------------------------------------------------------------------
// Dense exact matrices over the coefficient field k (residue computations,
// derivation systems, Jacobian pairs).
// ---------------------------------------------------------------------------

using KVec = std::vector<FieldElement>;
using KMatrix = std::vector<KVec>;

KMatrix km_zero(const Field& f, std::size_t rows, std::size_t cols);
KMatrix km_identity(const Field& f, std::size_t n);
KMatrix km_mul(const KMatrix& a, const KMatrix& b);
KVec km_apply(const KMatrix& a, const KVec& v);
KMatrix km_transpose(const KMatrix& a);
KMatrix km_add(const KMatrix& a, const KMatrix& b);
KMatrix km_scale(const KMatrix& a, const FieldElement& c);
bool km_is_zero(const KMatrix& a);
std::size_t km_rank(const Field& f, KMatrix a);
/// Inverse over k; throws CheckError("singular matrix") when not invertible.
KMatrix km_inverse(const Field& f, KMatrix a);
FieldElement km_det(const Field& f, KMatrix a);
/// Basis of the right nullspace {v : a v = 0}, deterministic order.
std::vector<KVec> km_nullspace(const Field& f, KMatrix a);

// ---------------------------------------------------------------------------
// Jet matrices over k((u)).
// ---------------------------------------------------------------------------

/// Rectangular matrix of Laurent jets. Carrier for lattice bases and group
/// elements; all entries share one field.
class JetMatrix {
public:
    JetMatrix(Field f, std::size_t rows, std::size_t cols)
        : field_(std::move(f)), rows_(rows), cols_(cols),
          e_(rows * cols, LaurentJet(field_)) {}

    static JetMatrix identity(const Field& f, std::size_t n);
    /// Lift of a constant matrix to exact jets.
    static JetMatrix from_k(const Field& f, const KMatrix& m);

    const Field& field() const { return field_; }
    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    LaurentJet& at(std::size_t i, std::size_t j) { return e_[i * cols_ + j]; }
    const LaurentJet& at(std::size_t i, std::size_t j) const { return e_[i * cols_ + j]; }

    std::vector<LaurentJet> col(std::size_t j) const;
    void set_col(std::size_t j, const std::vector<LaurentJet>& v);

    JetMatrix operator+(const JetMatrix& o) const;
    JetMatrix operator-(const JetMatrix& o) const;
    JetMatrix operator*(const JetMatrix& o) const;
    JetMatrix operator-() const;
    JetMatrix transpose() const;
    JetMatrix scaled(const LaurentJet& c) const;
    JetMatrix rho() const;    // entrywise Galois action
    JetMatrix theta() const;
    JetMatrix truncated(int prec) const;

    std::vector<LaurentJet> apply(const std::vector<LaurentJet>& v) const;

    bool all_integral() const;
    bool all_exact() const;
    /// Residues of all entries; throws if some entry is not integral.
    KMatrix residue() const;

    /// Entrywise equality of known coefficients up to common precision.
    bool equal_to_common_prec(const JetMatrix& o) const;
    /// Every entry vanishes mod u^bound (certificate; throws PrecisionError
    /// if some entry's knowledge does not reach bound).
    bool vanishes_mod(int bound) const;

    bool operator==(const JetMatrix& o) const {
        return rows_ == o.rows_ && cols_ == o.cols_ && e_ == o.e_;
    }

private:
    Field field_;
    std::size_t rows_, cols_;
    std::vector<LaurentJet> e_;
};

/// Least entry valuation across the matrix (nullopt when every entry is
/// zero to precision).
std::optional<int> min_valuation(const JetMatrix& m);

/// Least precision bound across entries (nullopt when all entries exact):
/// the largest N such that every entry is known mod u^N.
std::optional<int> knowledge_floor(const JetMatrix& m);

/// Determinant by division-free subset dynamic programming (n <= 16).
/// Exact for exact inputs.
LaurentJet det(const JetMatrix& m);

/// Classical adjugate via cofactors; exact for exact inputs.
JetMatrix adjugate(const JetMatrix& m);

/// inverse = adjugate * det^-1; the only precision cut is the determinant
/// inversion, whose internal target is raised past the adjugate's pole depth
/// so every result entry is known at least to prec.
JetMatrix inverse(const JetMatrix& m, int prec);

/// All entries integral and val(det) = 0: member of GL over k[[u]] to the
/// known precision.
bool is_unimodular(const JetMatrix& m);

struct MembershipResult {
    std::vector<LaurentJet> coords;
    bool integral = false;
    /// First non-integral coordinate index, when any.
    std::optional<std::size_t> offending;
};

/// Solve B z = v and report integrality of z. B must be square invertible
/// over k((u)) to precision.
MembershipResult membership_solve(const JetMatrix& b, const std::vector<LaurentJet>& v,
                                  int prec);
/// Fast path with a precomputed inverse of B.
MembershipResult membership_solve_with(const JetMatrix& b_inv,
                                       const std::vector<LaurentJet>& v);

struct ColumnReduction {
    /// Indices of input columns chosen as pivots, in pivot order.
    std::vector<std::size_t> pivot_cols;
    /// k[[u]]-basis of the column span (rows x rank).
    JetMatrix basis;
};

/// Hermite-style column reduction over k[[u]]: pivots on minimal-valuation
/// entries (tie-break lowest row, then lowest column), eliminates within
/// precision. The span of the output equals the span of the input.
ColumnReduction column_reduce(const JetMatrix& m, int prec);

/// Basis of {w : M w = 0} over k((t)); entries of M and of the output are
/// jets whose exponents are multiples of 3 (elements of k((t)) inside
/// k((u))). Deterministic echelon order.
std::vector<std::vector<LaurentJet>> t_linear_solve(const JetMatrix& m, int prec);

}  // namespace trikit
