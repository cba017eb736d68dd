#include "trikit/group.hpp"

#include <sstream>

namespace trikit {

namespace {

std::uint64_t splitmix(std::uint64_t& state) {
    state += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

LaurentJet jet_pow(const LaurentJet& x, int n) {
    LaurentJet acc = LaurentJet::one(x.field());
    for (int i = 0; i < n; ++i) acc = acc * x;
    return acc;
}

AlgebraElement column(const ParaCayley& alg, const JetMatrix& g, std::size_t j) {
    return AlgebraElement::from_coords(alg.field(), g.col(j));
}

bool isometry_check(const ParaCayley& alg, const JetMatrix& g, int prec) {
    JetMatrix d = g.transpose() * alg.gram_jets() * g - alg.gram_jets();
    return d.vanishes_mod(prec);
}

bool proper_check(const ParaCayley& alg, const JetMatrix& g, int prec) {
    LaurentJet d = det(g) - LaurentJet::one(alg.field());
    return d.truncated(prec).vanishes_mod(std::min(prec, d.prec().value_or(prec)));
}

}  // namespace

MemberReport is_member(const ParaCayley& alg, const JetMatrix& g, int prec) {
    MemberReport rep;
    if (g.rows() != 8 || g.cols() != 8) throw InputError("group element must be 8x8");

    rep.isometry = isometry_check(alg, g, prec);
    if (!rep.isometry) rep.diagnostics = "g^T G g != G";

    rep.proper = proper_check(alg, g, prec);
    if (rep.isometry && !rep.proper) rep.diagnostics = "det(g) != 1";

    rep.multiplicative = true;
    for (int i = 1; i <= 8 && rep.multiplicative; ++i) {
        AlgebraElement gi = column(alg, g, static_cast<std::size_t>(i - 1));
        for (int j = 1; j <= 8; ++j) {
            AlgebraElement gj = column(alg, g, static_cast<std::size_t>(j - 1));
            AlgebraElement rhs = alg.twisted_mul(gi, gj);
            int s = ParaCayley::table(i, j);
            AlgebraElement lhs(alg.field());
            if (s != 0) {
                lhs = column(alg, g, static_cast<std::size_t>((s > 0 ? s : -s) - 1));
                if (s < 0) lhs = -lhs;
            }
            AlgebraElement d = lhs - rhs;
            bool zero = true;
            for (const auto& c : d.c)
                if (!c.truncated(prec).vanishes_mod(std::min(prec, c.prec().value_or(prec))))
                    zero = false;
            if (!zero) {
                rep.multiplicative = false;
                std::ostringstream os;
                os << "multiplicativity fails at basis pair (" << i << "," << j << ")";
                rep.diagnostics = os.str();
                break;
            }
        }
    }
    return rep;
}

JetMatrix torus_element(const ParaCayley& alg, const LaurentJet& mu1, const LaurentJet& mu2,
                        int prec) {
    const Field& f = alg.field();
    if (!mu1.is_rho_fixed() || !mu2.is_rho_fixed()) throw InputError("not in F_0");
    if (mu1.is_zero_to_prec() || mu2.is_zero_to_prec())
        throw InputError("torus parameter has no determinate valuation");

    int iprec = prec + 8;
    LaurentJet m1m2 = mu1 * mu2;
    std::array<LaurentJet, 8> w = {mu1,
                                   m1m2,
                                   mu2.invert_unit(iprec),
                                   LaurentJet::one(f),
                                   LaurentJet::one(f),
                                   mu2,
                                   m1m2.invert_unit(iprec),
                                   mu1.invert_unit(iprec)};
    JetMatrix g(f, 8, 8);
    for (std::size_t i = 0; i < 8; ++i) g.at(i, i) = w[i];

    MemberReport rep = is_member(alg, g, prec);
    if (!rep.ok()) throw CheckError("torus element fails membership: " + rep.diagnostics);
    return g;
}

std::vector<KMatrix> derivation_basis(const ParaCayley& alg) {
    const Field& f = alg.field();
    const KMatrix& gram = alg.gram();
    auto idx = [](int r, int c) { return static_cast<std::size_t>(8 * r + c); };

    std::vector<KVec> rows;
    // Leibniz on all basis pairs, one row per output component
    for (int i = 0; i < 8; ++i)
        for (int j = 0; j < 8; ++j)
            for (int s = 0; s < 8; ++s) {
                KVec row(64, f.zero());
                int tij = ParaCayley::table(i + 1, j + 1);
                if (tij != 0) {
                    int k = (tij > 0 ? tij : -tij) - 1;
                    row[idx(s, k)] += f.from_int(tij > 0 ? 1 : -1);
                }
                for (int r = 0; r < 8; ++r) {
                    int trj = ParaCayley::table(r + 1, j + 1);
                    if (trj != 0 && (trj > 0 ? trj : -trj) - 1 == s)
                        row[idx(r, i)] -= f.from_int(trj > 0 ? 1 : -1);
                    int tir = ParaCayley::table(i + 1, r + 1);
                    if (tir != 0 && (tir > 0 ? tir : -tir) - 1 == s)
                        row[idx(r, j)] -= f.from_int(tir > 0 ? 1 : -1);
                }
                rows.push_back(std::move(row));
            }
    // skewness d^T G + G d = 0
    for (int a = 0; a < 8; ++a)
        for (int b = 0; b < 8; ++b) {
            KVec row(64, f.zero());
            for (int r = 0; r < 8; ++r) {
                row[idx(r, a)] += gram[static_cast<std::size_t>(r)][static_cast<std::size_t>(b)];
                row[idx(r, b)] += gram[static_cast<std::size_t>(a)][static_cast<std::size_t>(r)];
            }
            rows.push_back(std::move(row));
        }

    std::vector<KVec> null = km_nullspace(f, rows);
    std::vector<KMatrix> basis;
    for (const KVec& v : null) {
        KMatrix d = km_zero(f, 8, 8);
        for (int r = 0; r < 8; ++r)
            for (int c = 0; c < 8; ++c) d[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)] = v[idx(r, c)];
        basis.push_back(std::move(d));
    }
    return basis;
}

namespace {

constexpr int kDegree[8] = {2, 3, -1, 0, 0, 1, -3, -2};

bool is_nilpotent(const Field& f, const KMatrix& d, int* index_out) {
    KMatrix p = d;
    for (int n = 1; n <= 8; ++n) {
        if (km_is_zero(p)) {
            if (index_out) *index_out = n;
            return true;
        }
        p = km_mul(p, d);
    }
    return false;
}

bool leibniz_holds(const ParaCayley& alg, const KMatrix& d) {
    const Field& f = alg.field();
    for (int i = 0; i < 8; ++i)
        for (int j = 0; j < 8; ++j) {
            KVec lhs(8, f.zero()), rhs(8, f.zero());
            int tij = ParaCayley::table(i + 1, j + 1);
            if (tij != 0) {
                int k = (tij > 0 ? tij : -tij) - 1;
                for (int s = 0; s < 8; ++s) {
                    FieldElement v = d[static_cast<std::size_t>(s)][static_cast<std::size_t>(k)];
                    lhs[static_cast<std::size_t>(s)] = tij > 0 ? v : -v;
                }
            }
            for (int r = 0; r < 8; ++r) {
                int trj = ParaCayley::table(r + 1, j + 1);
                if (trj != 0) {
                    int s = (trj > 0 ? trj : -trj) - 1;
                    FieldElement v = d[static_cast<std::size_t>(r)][static_cast<std::size_t>(i)];
                    rhs[static_cast<std::size_t>(s)] += trj > 0 ? v : -v;
                }
                int tir = ParaCayley::table(i + 1, r + 1);
                if (tir != 0) {
                    int s = (tir > 0 ? tir : -tir) - 1;
                    FieldElement v = d[static_cast<std::size_t>(r)][static_cast<std::size_t>(j)];
                    rhs[static_cast<std::size_t>(s)] += tir > 0 ? v : -v;
                }
            }
            for (int s = 0; s < 8; ++s)
                if (!(lhs[static_cast<std::size_t>(s)] == rhs[static_cast<std::size_t>(s)]))
                    return false;
        }
    return true;
}

}  // namespace

std::vector<KMatrix> nilpotent_derivations(const ParaCayley& alg) {
    const Field& f = alg.field();
    std::vector<KMatrix> basis = derivation_basis(alg);
    std::vector<KMatrix> pool;

    for (const KMatrix& d : basis) {
        // graded pieces: entry (i,j) sits in degree deg(e_i) - deg(e_j)
        for (int k = -6; k <= 6; ++k) {
            if (k == 0) continue;
            KMatrix piece = km_zero(f, 8, 8);
            bool nonzero = false;
            for (int i = 0; i < 8; ++i)
                for (int j = 0; j < 8; ++j)
                    if (kDegree[i] - kDegree[j] == k &&
                        !d[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)].is_zero()) {
                        piece[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
                            d[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
                        nonzero = true;
                    }
            if (!nonzero) continue;

            // scale so the first nonzero entry is 1, for deduplication
            FieldElement lead = f.zero();
            for (int i = 0; i < 8 && lead.is_zero(); ++i)
                for (int j = 0; j < 8; ++j)
                    if (!piece[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)].is_zero()) {
                        lead = piece[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
                        break;
                    }
            piece = km_scale(piece, lead.inv());

            bool dup = false;
            for (const KMatrix& q : pool)
                if (km_is_zero(km_add(q, km_scale(piece, -f.one())))) {
                    dup = true;
                    break;
                }
            if (dup) continue;

            if (!leibniz_holds(alg, piece)) throw CheckError("graded piece lost Leibniz");
            if (!is_nilpotent(f, piece, nullptr))
                throw CheckError("graded piece of nonzero degree is not nilpotent");
            pool.push_back(std::move(piece));
        }
    }
    return pool;
}

JetMatrix exp_nilpotent(const ParaCayley& alg, const KMatrix& delta, const LaurentJet& scale,
                        int prec) {
    const Field& f = alg.field();
    if (!scale.is_rho_fixed()) throw InputError("exponential scale must be rho-fixed");

    int index = 0;
    if (!is_nilpotent(f, delta, &index)) throw InputError("not nilpotent within index bound");
    if (f.kind() == Field::Kind::prime && static_cast<std::uint64_t>(index) > f.p())
        throw InputError("characteristic too small for index");

    JetMatrix g = JetMatrix::identity(f, 8);
    KMatrix power = km_identity(f, 8);
    FieldElement factorial = f.one();
    for (int j = 1; j < index; ++j) {
        power = km_mul(power, delta);
        factorial *= f.from_int(j);
        LaurentJet coeff = jet_pow(scale, j).scaled(factorial.inv());
        g = g + JetMatrix::from_k(f, power).scaled(coeff);
    }

    MemberReport rep = is_member(alg, g, prec);
    if (!rep.ok())
        throw CheckError("derivation exponential fails membership: " + rep.diagnostics);
    return g;
}

JetMatrix random_group_element(const ParaCayley& alg, std::uint64_t seed, int length,
                               int pole_bound, int prec) {
    const Field& f = alg.field();
    std::uint64_t state = seed;
    std::vector<KMatrix> pool = nilpotent_derivations(alg);
    if (pool.empty()) throw CheckError("empty nilpotent derivation pool");

    auto exponent = [&]() {
        return static_cast<int>(splitmix(state) % (2 * static_cast<unsigned>(pole_bound) + 1)) -
               pole_bound;
    };

    JetMatrix g = JetMatrix::identity(f, 8);
    for (int step = 0; step < length; ++step) {
        if (splitmix(state) % 2 == 0) {
            LaurentJet m1 = LaurentJet::u_pow(f, 3 * exponent());
            LaurentJet m2 = LaurentJet::u_pow(f, 3 * exponent());
            g = g * torus_element(alg, m1, m2, prec);
        } else {
            const KMatrix& d = pool[splitmix(state) % pool.size()];
            LaurentJet s = LaurentJet::u_pow(f, 3 * exponent());
            g = g * exp_nilpotent(alg, d, s, prec);
        }
    }

    MemberReport rep = is_member(alg, g, prec);
    if (!rep.ok()) throw CheckError("random word fails membership: " + rep.diagnostics);
    return g;
}

bool check_triple(const ParaCayley& alg, const TrialityTriple& t, int prec) {
    for (int rot = 0; rot < 3; ++rot) {
        const JetMatrix& a = t[static_cast<std::size_t>(rot)];
        const JetMatrix& b = t[static_cast<std::size_t>((rot + 1) % 3)];
        const JetMatrix& c = t[static_cast<std::size_t>((rot + 2) % 3)];
        for (int i = 1; i <= 8; ++i)
            for (int j = 1; j <= 8; ++j) {
                int s = ParaCayley::table(i, j);
                AlgebraElement lhs(alg.field());
                if (s != 0) {
                    lhs = column(alg, a, static_cast<std::size_t>((s > 0 ? s : -s) - 1));
                    if (s < 0) lhs = -lhs;
                }
                AlgebraElement rhs = alg.twisted_mul(
                    column(alg, b, static_cast<std::size_t>(i - 1)),
                    column(alg, c, static_cast<std::size_t>(j - 1)));
                AlgebraElement d = lhs - rhs;
                for (const auto& x : d.c)
                    if (!x.truncated(prec).vanishes_mod(
                            std::min(prec, x.prec().value_or(prec))))
                        return false;
            }
    }
    return true;
}

TrialityTriple rotate_triple(const TrialityTriple& t) { return {t[1], t[2], t[0]}; }

namespace {

/// [k][m] = coefficient of e_k in star(e_m, y): star(L, y) = this * L for a
/// linear first argument L.
JetMatrix star_left_coeff(const ParaCayley& alg, const std::vector<LaurentJet>& y) {
    const Field& f = alg.field();
    JetMatrix r(f, 8, 8);
    for (int m = 1; m <= 8; ++m)
        for (int n = 1; n <= 8; ++n) {
            int s = ParaCayley::table(m, n);
            if (s == 0) continue;
            std::size_t k = static_cast<std::size_t>((s > 0 ? s : -s) - 1);
            const LaurentJet& c = y[static_cast<std::size_t>(n - 1)];
            if (c.is_zero()) continue;
            if (s > 0)
                r.at(k, static_cast<std::size_t>(m - 1)) += c;
            else
                r.at(k, static_cast<std::size_t>(m - 1)) -= c;
        }
    return r;
}

/// [k][n] = coefficient of e_k in star(x, e_n): star(x, L) = this * L for a
/// linear second argument L.
JetMatrix star_right_coeff(const ParaCayley& alg, const std::vector<LaurentJet>& x) {
    const Field& f = alg.field();
    JetMatrix r(f, 8, 8);
    for (int m = 1; m <= 8; ++m)
        for (int n = 1; n <= 8; ++n) {
            int s = ParaCayley::table(m, n);
            if (s == 0) continue;
            std::size_t k = static_cast<std::size_t>((s > 0 ? s : -s) - 1);
            const LaurentJet& c = x[static_cast<std::size_t>(m - 1)];
            if (c.is_zero()) continue;
            if (s > 0)
                r.at(k, static_cast<std::size_t>(n - 1)) += c;
            else
                r.at(k, static_cast<std::size_t>(n - 1)) -= c;
        }
    return r;
}

/// 8x24 matrix expressing rho^s(v) in the 24 t-components of the unknown
/// vector v: row m, column 3m+r carries xi^{s r} u^r.
JetMatrix unknown_matrix(const Field& f, int twist_s) {
    JetMatrix r(f, 8, 24);
    for (std::size_t m = 0; m < 8; ++m)
        for (int t = 0; t < 3; ++t)
            r.at(m, 3 * m + static_cast<std::size_t>(t)) =
                LaurentJet::monomial(f, f.xi_pow(twist_s * t), t);
    return r;
}

/// Append the 3 t-component rows of every scalar entry of eq (8x24) to sys.
void append_equation(std::vector<std::vector<LaurentJet>>& sys, const JetMatrix& eq) {
    for (std::size_t k = 0; k < 8; ++k)
        for (int s = 0; s < 3; ++s) {
            std::vector<LaurentJet> row;
            row.reserve(24);
            for (std::size_t c = 0; c < 24; ++c) row.push_back(eq.at(k, c).t_component(s));
            sys.push_back(std::move(row));
        }
}

}  // namespace

LiftResult triality_lift(const ParaCayley& alg, const JetMatrix& g1, int prec) {
    const Field& f = alg.field();
    LiftResult out(f);

    if (!isometry_check(alg, g1, prec) || !proper_check(alg, g1, prec))
        throw InputError("triality lift requires a proper isometry");

    int iprec = prec + 8;
    if (auto mv = min_valuation(g1); mv && *mv < 0) iprec -= 4 * *mv;

    // w_j = l_e^{-1}(e_j), constant since the multiplication operator of the
    // para-unit is a constant matrix
    AlgebraElement e = alg.para_unit();
    KMatrix m_e = km_zero(f, 8, 8);
    for (int j = 1; j <= 8; ++j) {
        AlgebraElement col = alg.twisted_mul(e, AlgebraElement::basis(f, j));
        for (std::size_t i = 0; i < 8; ++i) m_e[i][static_cast<std::size_t>(j - 1)] = col.c[i].coeff(0);
    }
    KMatrix w = km_inverse(f, m_e);

    std::vector<std::vector<LaurentJet>> g1_of_w(8);
    for (std::size_t j = 0; j < 8; ++j) {
        std::vector<LaurentJet> wj(8, LaurentJet(f));
        for (std::size_t i = 0; i < 8; ++i) wj[i] = LaurentJet::constant(f, w[i][j]);
        g1_of_w[j] = g1.apply(wj);
    }

    // g2(e_j) = v * g1(w_j) = star(rho v, theta(g1 w_j))
    JetMatrix vmat_rho = unknown_matrix(f, 1);
    std::vector<JetMatrix> g2_lin;
    g2_lin.reserve(8);
    for (std::size_t j = 0; j < 8; ++j) {
        std::vector<LaurentJet> y = g1_of_w[j];
        for (auto& c : y) c = c.theta();
        g2_lin.push_back(star_left_coeff(alg, y) * vmat_rho);
    }

    // g3(e_i) = g1(e) * g2(w_i), with g2(w_i) = sum_j (w_i)_j g2(e_j)
    std::vector<LaurentJet> g1_e = g1.apply(e.coords());
    std::vector<LaurentJet> g1_e_rho = g1_e;
    for (auto& c : g1_e_rho) c = c.rho();
    JetMatrix right_g1e = star_right_coeff(alg, g1_e_rho);
    std::vector<JetMatrix> g3_lin;
    g3_lin.reserve(8);
    for (std::size_t i = 0; i < 8; ++i) {
        JetMatrix acc(f, 8, 24);
        for (std::size_t j = 0; j < 8; ++j) {
            if (w[j][i].is_zero()) continue;
            acc = acc + g2_lin[j].scaled(LaurentJet::constant(f, w[j][i]));
        }
        g3_lin.push_back(right_g1e * acc.theta());
    }

    // assemble the joint homogeneous system
    std::vector<std::vector<LaurentJet>> sys;
    sys.reserve(3096);
    for (int i = 1; i <= 8; ++i)
        for (int j = 1; j <= 8; ++j) {
            int s = ParaCayley::table(i, j);
            JetMatrix lhs2(f, 8, 24), lhs3(f, 8, 24);
            if (s != 0) {
                std::size_t k = static_cast<std::size_t>((s > 0 ? s : -s) - 1);
                LaurentJet sign = LaurentJet::constant(f, f.from_int(s > 0 ? 1 : -1));
                lhs2 = g2_lin[k].scaled(sign);
                lhs3 = g3_lin[k].scaled(sign);
            }
            // family A: g2(e_i*e_j) = g3(e_i) * g1(e_j)
            std::vector<LaurentJet> yj = g1.col(static_cast<std::size_t>(j - 1));
            for (auto& c : yj) c = c.theta();
            JetMatrix rhs_a = star_left_coeff(alg, yj) *
                              g3_lin[static_cast<std::size_t>(i - 1)].rho();
            append_equation(sys, lhs2 - rhs_a);
            // family B: g3(e_i*e_j) = g1(e_i) * g2(e_j)
            std::vector<LaurentJet> xi = g1.col(static_cast<std::size_t>(i - 1));
            for (auto& c : xi) c = c.rho();
            JetMatrix rhs_b = star_right_coeff(alg, xi) *
                              g2_lin[static_cast<std::size_t>(j - 1)].theta();
            append_equation(sys, lhs3 - rhs_b);
        }
    // tie the proxy unknown to its definition: g3(e4) + g3(e5) = v
    append_equation(sys, g3_lin[3] + g3_lin[4] - unknown_matrix(f, 0));

    JetMatrix sys_m(f, sys.size(), 24);
    for (std::size_t r = 0; r < sys.size(); ++r)
        for (std::size_t c = 0; c < 24; ++c) sys_m.at(r, c) = sys[r][c];

    std::vector<std::vector<LaurentJet>> null = t_linear_solve(sys_m, iprec);
    out.solution_dim = static_cast<int>(null.size());
    if (null.size() != 1) {
        std::ostringstream os;
        os << "solution space dimension != 1 over k((t)) (got " << null.size() << ")";
        out.obstruction = os.str();
        return out;
    }

    // rebuild (g2*, g3*) from the solution vector
    std::vector<LaurentJet> v(8, LaurentJet(f));
    for (std::size_t m = 0; m < 8; ++m)
        for (int r = 0; r < 3; ++r)
            v[m] += null[0][3 * m + static_cast<std::size_t>(r)].shifted(r);
    AlgebraElement vel = AlgebraElement::from_coords(f, v);

    JetMatrix g2s(f, 8, 8), g3s(f, 8, 8);
    for (std::size_t j = 0; j < 8; ++j) {
        AlgebraElement w_img = AlgebraElement::from_coords(f, g1_of_w[j]);
        g2s.set_col(j, alg.twisted_mul(vel, w_img).coords());
    }
    AlgebraElement g1e = AlgebraElement::from_coords(f, g1_e);
    for (std::size_t i = 0; i < 8; ++i) {
        std::vector<LaurentJet> wi(8, LaurentJet(f));
        for (std::size_t r = 0; r < 8; ++r) wi[r] = LaurentJet::constant(f, w[r][i]);
        AlgebraElement g2wi = AlgebraElement::from_coords(f, g2s.apply(wi));
        g3s.set_col(i, alg.twisted_mul(g1e, g2wi).coords());
    }

    // similitude factor sigma: g2*^T G g2* = sigma G
    JetMatrix p = g2s.transpose() * alg.gram_jets() * g2s;
    LaurentJet sigma(f);
    bool sigma_set = false;
    for (std::size_t i = 0; i < 8 && !sigma_set; ++i)
        for (std::size_t j = 0; j < 8; ++j)
            if (!alg.gram()[i][j].is_zero()) {
                sigma = p.at(i, j).scaled(alg.gram()[i][j].inv());
                sigma_set = true;
                break;
            }
    JetMatrix sim_defect = p - alg.gram_jets().scaled(sigma);
    if (!sim_defect.truncated(prec).vanishes_mod(prec)) {
        out.obstruction = "solution is not a similitude";
        return out;
    }
    if (!(sigma - sigma.rho()).truncated(prec).is_zero_to_prec()) {
        out.obstruction = "similitude factor is not rho-fixed";
        return out;
    }

    auto mu = sigma.invert_unit(iprec).sqrt(iprec);
    if (!mu) {
        std::ostringstream os;
        os << "no lift over base field: scaling factor " << sigma.str()
           << " is not a square in k((t))";
        out.obstruction = os.str();
        return out;
    }

    JetMatrix g2 = g2s.scaled(*mu);
    JetMatrix g3 = g3s.scaled(*mu);

    // canonical sign: first nonzero entry in row-major order gets the
    // canonical leading coefficient
    bool negate = false;
    for (std::size_t i = 0; i < 8; ++i) {
        bool decided = false;
        for (std::size_t j = 0; j < 8 && !decided; ++j) {
            const LaurentJet& c = g2.at(i, j);
            if (auto val = c.valuation()) {
                negate = c.coeff(*val).prefers_negation();
                decided = true;
            }
        }
        if (decided) break;
    }
    if (negate) {
        g2 = -g2;
        g3 = -g3;
    }

    if (!check_triple(alg, {g1, g2, g3}, prec)) {
        out.obstruction = "lift verification failed: triple relations broken";
        return out;
    }
    if (!isometry_check(alg, g2, prec) || !isometry_check(alg, g3, prec)) {
        out.obstruction = "lift verification failed: not isometries";
        return out;
    }

    out.lifted = true;
    out.g2 = g2;
    out.g3 = g3;
    return out;
}

}  // namespace trikit
