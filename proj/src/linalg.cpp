#include "trikit/linalg.hpp"

#include <algorithm>

namespace trikit {

// --------------------------- KMatrix helpers -------------------------------

KMatrix km_zero(const Field& f, std::size_t rows, std::size_t cols) {
    return KMatrix(rows, KVec(cols, f.zero()));
}

KMatrix km_identity(const Field& f, std::size_t n) {
    KMatrix m = km_zero(f, n, n);
    for (std::size_t i = 0; i < n; ++i) m[i][i] = f.one();
    return m;
}

KMatrix km_mul(const KMatrix& a, const KMatrix& b) {
    std::size_t n = a.size(), k = b.size(), m = b[0].size();
    KMatrix r(n, KVec(m, a[0][0] - a[0][0]));  // zeros of the right backend
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t l = 0; l < k; ++l) {
            if (a[i][l].is_zero()) continue;
            for (std::size_t j = 0; j < m; ++j) r[i][j] += a[i][l] * b[l][j];
        }
    return r;
}

KVec km_apply(const KMatrix& a, const KVec& v) {
    KVec r(a.size(), v[0] - v[0]);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < v.size(); ++j) r[i] += a[i][j] * v[j];
    return r;
}

KMatrix km_transpose(const KMatrix& a) {
    KMatrix r(a[0].size(), KVec(a.size(), a[0][0]));
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < a[0].size(); ++j) r[j][i] = a[i][j];
    return r;
}

KMatrix km_add(const KMatrix& a, const KMatrix& b) {
    KMatrix r = a;
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < a[0].size(); ++j) r[i][j] += b[i][j];
    return r;
}

KMatrix km_scale(const KMatrix& a, const FieldElement& c) {
    KMatrix r = a;
    for (auto& row : r)
        for (auto& x : row) x *= c;
    return r;
}

bool km_is_zero(const KMatrix& a) {
    for (const auto& row : a)
        for (const auto& x : row)
            if (!x.is_zero()) return false;
    return true;
}

namespace {

/// Row echelon in place; returns pivot (row, col) list. Deterministic:
/// first nonzero entry scanning columns left to right, rows top down.
std::vector<std::pair<std::size_t, std::size_t>> km_echelon(KMatrix& a) {
    std::vector<std::pair<std::size_t, std::size_t>> pivots;
    if (a.empty()) return pivots;
    std::size_t rows = a.size(), cols = a[0].size(), r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t sel = rows;
        for (std::size_t i = r; i < rows; ++i)
            if (!a[i][c].is_zero()) { sel = i; break; }
        if (sel == rows) continue;
        std::swap(a[r], a[sel]);
        FieldElement inv = a[r][c].inv();
        for (std::size_t j = c; j < cols; ++j) a[r][j] *= inv;
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == r || a[i][c].is_zero()) continue;
            FieldElement f = a[i][c];
            for (std::size_t j = c; j < cols; ++j) a[i][j] -= f * a[r][j];
        }
        pivots.emplace_back(r, c);
        ++r;
    }
    return pivots;
}

}  // namespace

std::size_t km_rank(const Field& f, KMatrix a) {
    (void)f;
    return km_echelon(a).size();
}

KMatrix km_inverse(const Field& f, KMatrix a) {
    std::size_t n = a.size();
    KMatrix aug = km_zero(f, n, 2 * n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) aug[i][j] = a[i][j];
        aug[i][n + i] = f.one();
    }
    auto pivots = km_echelon(aug);
    if (pivots.size() != n) throw CheckError("singular matrix");
    KMatrix r = km_zero(f, n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) r[i][j] = aug[i][n + j];
    return r;
}

FieldElement km_det(const Field& f, KMatrix a) {
    std::size_t n = a.size();
    FieldElement d = f.one();
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t sel = n;
        for (std::size_t i = c; i < n; ++i)
            if (!a[i][c].is_zero()) { sel = i; break; }
        if (sel == n) return f.zero();
        if (sel != c) {
            std::swap(a[c], a[sel]);
            d = -d;
        }
        d *= a[c][c];
        FieldElement inv = a[c][c].inv();
        for (std::size_t i = c + 1; i < n; ++i) {
            if (a[i][c].is_zero()) continue;
            FieldElement m = a[i][c] * inv;
            for (std::size_t j = c; j < n; ++j) a[i][j] -= m * a[c][j];
        }
    }
    return d;
}

std::vector<KVec> km_nullspace(const Field& f, KMatrix a) {
    if (a.empty()) return {};
    std::size_t cols = a[0].size();
    auto pivots = km_echelon(a);
    std::vector<bool> is_pivot(cols, false);
    for (auto& [r, c] : pivots) is_pivot[c] = true;
    std::vector<KVec> basis;
    for (std::size_t free = 0; free < cols; ++free) {
        if (is_pivot[free]) continue;
        KVec v(cols, f.zero());
        v[free] = f.one();
        for (auto& [r, c] : pivots) v[c] = -a[r][free];
        basis.push_back(std::move(v));
    }
    return basis;
}

// ----------------------------- JetMatrix -----------------------------------

JetMatrix JetMatrix::identity(const Field& f, std::size_t n) {
    JetMatrix m(f, n, n);
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = LaurentJet::one(f);
    return m;
}

JetMatrix JetMatrix::from_k(const Field& f, const KMatrix& k) {
    JetMatrix m(f, k.size(), k[0].size());
    for (std::size_t i = 0; i < k.size(); ++i)
        for (std::size_t j = 0; j < k[0].size(); ++j)
            m.at(i, j) = LaurentJet::constant(f, k[i][j]);
    return m;
}

std::vector<LaurentJet> JetMatrix::col(std::size_t j) const {
    std::vector<LaurentJet> v;
    v.reserve(rows_);
    for (std::size_t i = 0; i < rows_; ++i) v.push_back(at(i, j));
    return v;
}

void JetMatrix::set_col(std::size_t j, const std::vector<LaurentJet>& v) {
    for (std::size_t i = 0; i < rows_; ++i) at(i, j) = v[i];
}

JetMatrix JetMatrix::operator+(const JetMatrix& o) const {
    JetMatrix r = *this;
    for (std::size_t i = 0; i < e_.size(); ++i) r.e_[i] += o.e_[i];
    return r;
}

JetMatrix JetMatrix::operator-(const JetMatrix& o) const {
    JetMatrix r = *this;
    for (std::size_t i = 0; i < e_.size(); ++i) r.e_[i] -= o.e_[i];
    return r;
}

JetMatrix JetMatrix::operator-() const {
    JetMatrix r = *this;
    for (auto& x : r.e_) x = -x;
    return r;
}

JetMatrix JetMatrix::operator*(const JetMatrix& o) const {
    JetMatrix r(field_, rows_, o.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t l = 0; l < cols_; ++l) {
            const LaurentJet& a = at(i, l);
            if (a.is_zero()) continue;
            for (std::size_t j = 0; j < o.cols_; ++j)
                r.at(i, j) += a * o.at(l, j);
        }
    return r;
}

JetMatrix JetMatrix::transpose() const {
    JetMatrix r(field_, cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) r.at(j, i) = at(i, j);
    return r;
}

JetMatrix JetMatrix::scaled(const LaurentJet& c) const {
    JetMatrix r = *this;
    for (auto& x : r.e_) x = x * c;
    return r;
}

JetMatrix JetMatrix::rho() const {
    JetMatrix r = *this;
    for (auto& x : r.e_) x = x.rho();
    return r;
}

JetMatrix JetMatrix::theta() const {
    JetMatrix r = *this;
    for (auto& x : r.e_) x = x.theta();
    return r;
}

JetMatrix JetMatrix::truncated(int prec) const {
    JetMatrix r = *this;
    for (auto& x : r.e_) x = x.truncated(prec);
    return r;
}

std::vector<LaurentJet> JetMatrix::apply(const std::vector<LaurentJet>& v) const {
    std::vector<LaurentJet> r(rows_, LaurentJet(field_));
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) {
            if (at(i, j).is_zero() || v[j].is_zero()) continue;
            r[i] += at(i, j) * v[j];
        }
    return r;
}

bool JetMatrix::all_integral() const {
    for (const auto& x : e_)
        if (!x.is_integral()) return false;
    return true;
}

bool JetMatrix::all_exact() const {
    for (const auto& x : e_)
        if (!x.exact()) return false;
    return true;
}

KMatrix JetMatrix::residue() const {
    KMatrix r = km_zero(field_, rows_, cols_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) r[i][j] = at(i, j).residue();
    return r;
}

bool JetMatrix::equal_to_common_prec(const JetMatrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) return false;
    for (std::size_t i = 0; i < e_.size(); ++i)
        if (!e_[i].equal_to_common_prec(o.e_[i])) return false;
    return true;
}

bool JetMatrix::vanishes_mod(int bound) const {
    for (const auto& x : e_)
        if (!x.vanishes_mod(bound)) return false;
    return true;
}

// --------------------- determinant / adjugate / inverse --------------------

LaurentJet det(const JetMatrix& m) {
    if (m.rows() != m.cols()) throw Error("determinant of non-square matrix");
    std::size_t n = m.rows();
    const Field& f = m.field();
    if (n == 0) return LaurentJet::one(f);

    // f(S) = det of submatrix on rows 0..|S|-1 and column set S; expansion
    // along the last row of the block is division-free and exact.
    std::vector<LaurentJet> memo(std::size_t{1} << n, LaurentJet(f));
    memo[0] = LaurentJet::one(f);
    for (std::uint32_t s = 1; s < (1u << n); ++s) {
        std::size_t row = static_cast<std::size_t>(__builtin_popcount(s)) - 1;
        LaurentJet acc(f);
        int sign = 1;
        for (std::size_t j = 0; j < n; ++j) {
            if (!(s & (1u << j))) continue;
            const LaurentJet& a = m.at(row, j);
            if (!a.is_zero()) {
                LaurentJet term = a * memo[s & ~(1u << j)];
                acc = (sign > 0) ? acc + term : acc - term;
            }
            sign = -sign;
        }
        memo[s] = acc;
    }
    return memo[(std::size_t{1} << n) - 1];
}

namespace {

JetMatrix minor_matrix(const JetMatrix& m, std::size_t di, std::size_t dj) {
    JetMatrix r(m.field(), m.rows() - 1, m.cols() - 1);
    for (std::size_t i = 0, ri = 0; i < m.rows(); ++i) {
        if (i == di) continue;
        for (std::size_t j = 0, rj = 0; j < m.cols(); ++j) {
            if (j == dj) continue;
            r.at(ri, rj) = m.at(i, j);
            ++rj;
        }
        ++ri;
    }
    return r;
}

}  // namespace

JetMatrix adjugate(const JetMatrix& m) {
    std::size_t n = m.rows();
    JetMatrix adj(m.field(), n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            LaurentJet c = det(minor_matrix(m, i, j));
            adj.at(j, i) = ((i + j) % 2 == 0) ? c : -c;
        }
    return adj;
}

std::optional<int> min_valuation(const JetMatrix& m) {
    std::optional<int> mv;
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j)
            if (auto v = m.at(i, j).valuation())
                mv = mv ? std::min(*mv, *v) : *v;
    return mv;
}

std::optional<int> knowledge_floor(const JetMatrix& m) {
    std::optional<int> k;
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j)
            if (auto p = m.at(i, j).prec())
                k = k ? std::min(*k, *p) : *p;
    return k;
}

JetMatrix inverse(const JetMatrix& m, int prec) {
    JetMatrix adj = adjugate(m);
    int slack = 0;
    if (auto mv = min_valuation(adj); mv && *mv < 0) slack -= *mv;
    if (auto mv = min_valuation(m); mv && *mv < 0) slack -= 2 * *mv;
    LaurentJet d_inv = det(m).invert_unit(prec + slack);
    return adj.scaled(d_inv);
}

bool is_unimodular(const JetMatrix& m) {
    if (!m.all_integral()) return false;
    LaurentJet d = det(m);
    if (d.is_zero()) return false;
    if (d.is_zero_to_prec()) throw PrecisionError("indeterminate determinant valuation");
    return *d.valuation() == 0;
}

MembershipResult membership_solve(const JetMatrix& b, const std::vector<LaurentJet>& v,
                                  int prec) {
    return membership_solve_with(inverse(b, prec), v);
}

MembershipResult membership_solve_with(const JetMatrix& b_inv,
                                       const std::vector<LaurentJet>& v) {
    MembershipResult r;
    r.coords = b_inv.apply(v);
    r.integral = true;
    for (std::size_t i = 0; i < r.coords.size(); ++i) {
        if (!r.coords[i].is_integral()) {
            r.integral = false;
            if (!r.offending) r.offending = i;
        }
    }
    return r;
}

// --------------------------- column reduction ------------------------------

ColumnReduction column_reduce(const JetMatrix& m, int prec) {
    const Field& f = m.field();
    std::size_t rows = m.rows(), cols = m.cols();
    std::vector<std::vector<LaurentJet>> c(cols);
    for (std::size_t j = 0; j < cols; ++j) c[j] = m.col(j);

    std::vector<bool> col_done(cols, false), row_done(rows, false);
    std::vector<std::size_t> pivot_order;

    for (;;) {
        // minimal valuation among remaining entries; tie-break lowest row,
        // then lowest column
        std::optional<int> best_val;
        std::size_t best_i = 0, best_j = 0;
        for (std::size_t i = 0; i < rows; ++i) {
            if (row_done[i]) continue;
            for (std::size_t j = 0; j < cols; ++j) {
                if (col_done[j]) continue;
                const LaurentJet& x = c[j][i];
                auto v = x.valuation();
                if (!v) continue;
                if (!best_val || *v < *best_val ||
                    (*v == *best_val && (i < best_i || (i == best_i && j < best_j)))) {
                    best_val = *v;
                    best_i = i;
                    best_j = j;
                }
            }
        }
        if (!best_val) break;

        const LaurentJet& pivot = c[best_j][best_i];
        LaurentJet pivot_inv = pivot.invert_unit(prec);
        for (std::size_t j = 0; j < cols; ++j) {
            if (col_done[j] || j == best_j) continue;
            const LaurentJet& x = c[j][best_i];
            if (x.is_zero_to_prec()) continue;
            LaurentJet q = x * pivot_inv;  // integral: pivot has minimal valuation
            for (std::size_t i = 0; i < rows; ++i) c[j][i] -= q * c[best_j][i];
        }
        col_done[best_j] = true;
        row_done[best_i] = true;
        pivot_order.push_back(best_j);
    }

    ColumnReduction r{pivot_order, JetMatrix(f, rows, pivot_order.size())};
    for (std::size_t k = 0; k < pivot_order.size(); ++k)
        r.basis.set_col(k, c[pivot_order[k]]);

    // Residual columns must be zero to precision, otherwise the valuation
    // scan above would have found them.
    return r;
}

// ------------------------- k((t))-linear systems ---------------------------

std::vector<std::vector<LaurentJet>> t_linear_solve(const JetMatrix& m, int prec) {
    const Field& f = m.field();
    std::size_t rows = m.rows(), cols = m.cols();
    std::vector<std::vector<LaurentJet>> a(rows);
    for (std::size_t i = 0; i < rows; ++i) {
        a[i].reserve(cols);
        for (std::size_t j = 0; j < cols; ++j) a[i].push_back(m.at(i, j));
    }

    std::vector<std::optional<std::size_t>> pivot_row_of_col(cols);
    std::size_t r = 0;
    for (std::size_t cidx = 0; cidx < cols && r < rows; ++cidx) {
        // pick pivot of minimal valuation in column cidx among rows >= r
        std::optional<int> best_val;
        std::size_t sel = rows;
        for (std::size_t i = r; i < rows; ++i) {
            auto v = a[i][cidx].valuation();
            if (!v) continue;
            if (!best_val || *v < *best_val) {
                best_val = *v;
                sel = i;
            }
        }
        if (sel == rows) continue;
        std::swap(a[r], a[sel]);
        LaurentJet inv = a[r][cidx].invert_unit(prec);
        for (std::size_t j = cidx; j < cols; ++j) a[r][j] = (a[r][j] * inv).truncated(prec);
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == r) continue;
            LaurentJet fct = a[i][cidx];
            if (fct.is_zero_to_prec()) continue;
            for (std::size_t j = cidx; j < cols; ++j) a[i][j] -= fct * a[r][j];
        }
        pivot_row_of_col[cidx] = r;
        ++r;
    }

    std::vector<std::vector<LaurentJet>> basis;
    for (std::size_t free = 0; free < cols; ++free) {
        if (pivot_row_of_col[free]) continue;
        std::vector<LaurentJet> v(cols, LaurentJet(f));
        v[free] = LaurentJet::one(f);
        for (std::size_t c2 = 0; c2 < cols; ++c2)
            if (pivot_row_of_col[c2]) v[c2] = -a[*pivot_row_of_col[c2]][free];
        basis.push_back(std::move(v));
    }
    return basis;
}

}  // namespace trikit
