#include "trikit/normalize.hpp"

#include <sstream>

#include "trikit/group.hpp"

namespace trikit {

namespace {

void require_zero(const LaurentJet& j, int bound, const std::string& what) {
    if (!j.truncated(bound).is_zero_to_prec())
        throw CheckError(what + ": residual " + j.str());
    if (j.prec() && *j.prec() < bound)
        throw PrecisionError("precision exhausted verifying " + what);
}

void require_zero(const AlgebraElement& x, int bound, const std::string& what) {
    for (const auto& c : x.c) require_zero(c, bound, what);
}

AlgebraElement column_element(const Field& f, const JetMatrix& m, std::size_t j) {
    return AlgebraElement::from_coords(f, m.col(j));
}

}  // namespace

std::pair<AlgebraElement, AlgebraElement> hyperbolic_pair(const ParaCayley& alg,
                                                          const Lattice& l,
                                                          const AlgebraElement& a) {
    const Field& f = alg.field();
    int prec = l.prec();
    AlgebraElement f1 = a;
    AlgebraElement f2 = alg.twisted_mul(a, a);

    require_zero(alg.twisted_mul(f1, f1) - f2, prec, "hyperbolic verification failed: f1*f1=f2");
    require_zero(alg.twisted_mul(f2, f2) - f1, prec, "hyperbolic verification failed: f2*f2=f1");
    require_zero(alg.twisted_mul(f1, f2), prec, "hyperbolic verification failed: f1*f2=0");
    require_zero(alg.twisted_mul(f2, f1), prec, "hyperbolic verification failed: f2*f1=0");
    require_zero(alg.quadratic(f1), prec, "hyperbolic verification failed: q(f1)=0");
    require_zero(alg.quadratic(f2), prec, "hyperbolic verification failed: q(f2)=0");
    require_zero(alg.bilinear(f1, f2) - LaurentJet::one(f), prec,
                 "hyperbolic verification failed: <f1,f2>=1");
    return {f1, f2};
}

JetMatrix complement_L0(const ParaCayley& alg, const Lattice& l, const AlgebraElement& f1,
                        const AlgebraElement& f2) {
    const Field& f = alg.field();
    int prec = l.prec();

    MembershipResult m1 = l.member(f1);
    MembershipResult m2 = l.member(f2);
    if (!m1.integral || !m2.integral)
        throw CheckError("hyperbolic pair is not in the lattice");

    // residue-rank completion of {f1, f2} by generator columns, greedy from
    // the lowest index
    KMatrix rows;
    KVec r1, r2;
    for (const auto& x : m1.coords) r1.push_back(x.residue());
    for (const auto& x : m2.coords) r2.push_back(x.residue());
    rows.push_back(r1);
    rows.push_back(r2);
    std::vector<std::size_t> chosen;
    for (std::size_t i = 0; i < 8 && chosen.size() < 6; ++i) {
        KVec ei(8, f.zero());
        ei[i] = f.one();
        KMatrix trial = rows;
        trial.push_back(ei);
        if (km_rank(f, trial) == rows.size() + 1) {
            rows = std::move(trial);
            chosen.push_back(i);
        }
    }
    if (chosen.size() != 6) throw CheckError("completion failed");

    JetMatrix l0(f, 8, 6);
    for (std::size_t k = 0; k < 6; ++k) {
        AlgebraElement v = l.generator(chosen[k]);
        AlgebraElement proj = v - f2.scaled(alg.bilinear(f1, v)) - f1.scaled(alg.bilinear(f2, v));
        require_zero(alg.bilinear(proj, f1), prec, "L0 projection not orthogonal to f1");
        require_zero(alg.bilinear(proj, f2), prec, "L0 projection not orthogonal to f2");
        l0.set_col(k, proj.coords());
    }

    // {f1, f2} + L0 columns must be a unimodular basis change of B
    JetMatrix coords(f, 8, 8);
    coords.set_col(0, m1.coords);
    coords.set_col(1, m2.coords);
    for (std::size_t k = 0; k < 6; ++k) {
        MembershipResult mv = l.member(column_element(f, l0, k));
        if (!mv.integral) throw CheckError("completion failed");
        coords.set_col(k + 2, mv.coords);
    }
    if (!is_unimodular(coords)) throw CheckError("completion failed");
    return l0;
}

namespace {

/// x in L0: integral in the lattice and orthogonal to the hyperbolic pair.
void require_in_L0(const ParaCayley& alg, const Lattice& l, const AlgebraElement& x,
                   const AlgebraElement& f1, const AlgebraElement& f2,
                   const std::string& what) {
    if (!l.member(x).integral) throw CheckError(what + ": leaves the lattice");
    require_zero(alg.bilinear(x, f1), l.prec(), what + " (pairing with f1)");
    require_zero(alg.bilinear(x, f2), l.prec(), what + " (pairing with f2)");
}

}  // namespace

L0Split split_L1_L2(const ParaCayley& alg, const Lattice& l, const JetMatrix& l0,
                    const AlgebraElement& f1, const AlgebraElement& f2) {
    const Field& f = alg.field();
    int prec = l.prec();
    int iprec = l.internal_prec();

    auto p1 = [&](const AlgebraElement& x) {
        return alg.twisted_mul(alg.twisted_mul(f2, x), f1);
    };
    auto p2 = [&](const AlgebraElement& x) {
        return alg.twisted_mul(alg.twisted_mul(f1, x), f2);
    };

    JetMatrix img1(f, 8, 6), img2(f, 8, 6);
    for (std::size_t k = 0; k < 6; ++k) {
        AlgebraElement v = column_element(f, l0, k);
        AlgebraElement a = p1(v), b = p2(v);
        require_zero(a + b - v, prec, "projector resolution p1+p2=id fails on L0");
        img1.set_col(k, a.coords());
        img2.set_col(k, b.coords());
    }

    ColumnReduction r1 = column_reduce(img1, iprec);
    ColumnReduction r2 = column_reduce(img2, iprec);
    if (r1.basis.cols() != 3 || r2.basis.cols() != 3) throw CheckError("rank != 3");

    L0Split out{r1.basis, r2.basis, JetMatrix(f, 8, 8), JetMatrix(f, 8, 8)};

    // Lemma 5.2 stability and isotropy of both halves
    for (std::size_t k = 0; k < 6; ++k) {
        AlgebraElement v = column_element(f, l0, k);
        require_in_L0(alg, l, alg.twisted_mul(v, f1), f1, f2, "L0*f1 escapes L0");
        require_in_L0(alg, l, alg.twisted_mul(v, f2), f1, f2, "L0*f2 escapes L0");
        require_in_L0(alg, l, alg.twisted_mul(f1, v), f1, f2, "f1*L0 escapes L0");
        require_in_L0(alg, l, alg.twisted_mul(f2, v), f1, f2, "f2*L0 escapes L0");
    }
    for (int side = 0; side < 2; ++side) {
        const JetMatrix& m = side == 0 ? out.l1 : out.l2;
        for (std::size_t a = 0; a < 3; ++a) {
            AlgebraElement xa = column_element(f, m, a);
            require_zero(alg.quadratic(xa), prec, "L_i not isotropic");
            for (std::size_t b = a + 1; b < 3; ++b)
                require_zero(alg.bilinear(xa, column_element(f, m, b)), prec,
                             "L_i not isotropic");
        }
    }

    // annihilation: f_i * L_i = 0, L_i * f_{i+1} = 0
    for (std::size_t a = 0; a < 3; ++a) {
        AlgebraElement x1 = column_element(f, out.l1, a);
        AlgebraElement x2 = column_element(f, out.l2, a);
        require_zero(alg.twisted_mul(f1, x1), prec, "f1*L1 != 0");
        require_zero(alg.twisted_mul(x1, f2), prec, "L1*f2 != 0");
        require_zero(alg.twisted_mul(f2, x2), prec, "f2*L2 != 0");
        require_zero(alg.twisted_mul(x2, f1), prec, "L2*f1 != 0");
    }

    // L1*L2 in R[[u]] f1 and L2*L1 in R[[u]] f2
    for (std::size_t a = 0; a < 3; ++a)
        for (std::size_t b = 0; b < 3; ++b) {
            AlgebraElement x = column_element(f, out.l1, a);
            AlgebraElement y = column_element(f, out.l2, b);
            AlgebraElement xy = alg.twisted_mul(x, y);
            LaurentJet s1 = alg.bilinear(xy, f2);  // <c f1, f2> = c
            if (!s1.is_integral()) throw CheckError("L1*L2 scalar not integral");
            require_zero(xy - f1.scaled(s1), prec, "L1*L2 not contained in R[[u]]f1");
            AlgebraElement yx = alg.twisted_mul(y, x);
            LaurentJet s2 = alg.bilinear(yx, f1);
            if (!s2.is_integral()) throw CheckError("L2*L1 scalar not integral");
            require_zero(yx - f2.scaled(s2), prec, "L2*L1 not contained in R[[u]]f2");
        }

    // L_i * L_i in L_{i+1}: in L0 and killed by the opposite projector
    for (int side = 0; side < 2; ++side) {
        const JetMatrix& m = side == 0 ? out.l1 : out.l2;
        for (std::size_t a = 0; a < 3; ++a)
            for (std::size_t b = 0; b < 3; ++b) {
                AlgebraElement prod = alg.twisted_mul(column_element(f, m, a),
                                                      column_element(f, m, b));
                require_in_L0(alg, l, prod, f1, f2, "L_i*L_i escapes L0");
                AlgebraElement wrong = side == 0 ? p1(prod) : p2(prod);
                require_zero(wrong, prec, "L_i*L_i escapes L_{i+1}");
            }
    }

    for (std::size_t i = 0; i < 8; ++i) {
        out.adapted.at(i, 0) = f1.c[i];
        out.adapted.at(i, 1) = f2.c[i];
        for (std::size_t k = 0; k < 3; ++k) {
            out.adapted.at(i, 2 + k) = out.l1.at(i, k);
            out.adapted.at(i, 5 + k) = out.l2.at(i, k);
        }
    }
    out.adapted_inv = inverse(out.adapted, iprec);
    return out;
}

JetMatrix semilinear_matrix(const ParaCayley& alg, const Lattice& l, const L0Split& split,
                            int block, const AlgebraElement& fi) {
    const Field& f = alg.field();
    int prec = l.prec();
    const JetMatrix& mi = block == 0 ? split.l1 : split.l2;
    std::size_t off = block == 0 ? 2 : 5;

    JetMatrix a(f, 3, 3);
    for (std::size_t j = 0; j < 3; ++j) {
        AlgebraElement img = alg.twisted_mul(column_element(f, mi, j), fi);
        std::vector<LaurentJet> coords = split.adapted_inv.apply(img.coords());
        for (std::size_t i = 0; i < 8; ++i) {
            if (i >= off && i < off + 3) continue;
            require_zero(coords[i], prec, "t_i image leaves its block");
        }
        for (std::size_t i = 0; i < 3; ++i) a.at(i, j) = coords[off + i];
    }

    KMatrix abar = a.residue();
    if (!km_is_zero(km_add(abar, km_identity(f, 3)))) throw CheckError("residue not -I");

    JetMatrix triple = a * a.rho() * a.theta() + JetMatrix::identity(f, 3);
    if (!triple.truncated(prec).vanishes_mod(prec))
        throw CheckError("A rho(A) theta(A) != -I");
    return a;
}

JetMatrix twisted_conjugacy_solve(const JetMatrix& a, int prec) {
    const Field& f = a.field();
    std::size_t n = a.rows();

    KMatrix abar = a.residue();
    if (!km_is_zero(km_add(abar, km_identity(f, n))))
        throw CheckError("cocycle residue is not -I");
    {
        JetMatrix triple = a * a.rho() * a.theta() + JetMatrix::identity(f, n);
        if (!triple.truncated(prec).vanishes_mod(prec))
            throw CheckError("input is not a cocycle: A rho(A) theta(A) != -I");
    }

    JetMatrix b = JetMatrix::identity(f, n);
    JetMatrix minus_a = -a;
    int last_val = 0;
    for (int guard = 0; guard <= prec + 4; ++guard) {
        JetMatrix c = (inverse(b, prec) * minus_a * b.rho()).truncated(prec);
        JetMatrix defect = c - JetMatrix::identity(f, n);
        if (defect.vanishes_mod(prec)) return b;

        // the defect stays a cocycle at every step
        JetMatrix cocycle = (c * c.rho() * c.theta() - JetMatrix::identity(f, n)).truncated(prec);
        if (!cocycle.vanishes_mod(prec))
            throw CheckError("defect lost the cocycle identity");

        auto mv = min_valuation(defect);
        int step = *mv;  // defect has a known nonzero entry here
        if (guard > 0 && step <= last_val)
            throw PrecisionError("precision exhausted in twisted conjugacy solve");
        last_val = step;

        if (step % 3 == 0) throw CheckError("obstruction nonzero at step 3k");

        FieldElement scale = (f.one() - f.xi_pow(step)).inv();
        JetMatrix corr = JetMatrix::identity(f, n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                FieldElement e = defect.at(i, j).knows(step) ? defect.at(i, j).coeff(step)
                                                             : f.zero();
                if (!e.is_zero())
                    corr.at(i, j) += LaurentJet::monomial(f, e * scale, step);
            }
        b = b * corr;
    }
    throw PrecisionError("precision exhausted in twisted conjugacy solve");
}

JetMatrix dual_basis(const ParaCayley& alg, const JetMatrix& x_basis, const JetMatrix& m2,
                     const AlgebraElement& f2, int solve_prec, int check_prec) {
    const Field& f = alg.field();
    JetMatrix pairing(f, 3, 3);
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j)
            pairing.at(i, j) = alg.bilinear(column_element(f, x_basis, i),
                                            column_element(f, m2, j));
    if (!is_unimodular(pairing)) throw CheckError("pairing not unimodular");
    JetMatrix y = m2 * inverse(pairing, solve_prec);

    for (std::size_t i = 0; i < 3; ++i) {
        AlgebraElement yi = column_element(f, y, i);
        require_zero(alg.twisted_mul(yi, f2) + yi, check_prec,
                     "t_2 eigenproperty of dual basis");
        for (std::size_t j = 0; j < 3; ++j) {
            LaurentJet want = i == j ? LaurentJet::one(f) : LaurentJet(f);
            require_zero(alg.bilinear(column_element(f, x_basis, i), yi) - want, check_prec,
                         "dual pairing <x_i,y_j> != delta_ij");
        }
    }
    return y;
}

namespace {

void check_product(const ParaCayley& alg, const AlgebraElement& a, const AlgebraElement& b,
                   const AlgebraElement& want, int prec, const std::string& name) {
    AlgebraElement d = alg.twisted_mul(a, b) - want;
    for (const auto& c : d.c) {
        if (!c.truncated(prec).is_zero_to_prec())
            throw CheckError("table mismatch: " + name);
        if (c.prec() && *c.prec() < prec)
            throw PrecisionError("precision exhausted verifying " + name);
    }
}

}  // namespace

void sign_normalize(const ParaCayley& alg, JetMatrix& x_basis, JetMatrix& y_basis,
                    const AlgebraElement& f1, const AlgebraElement& f2, int solve_prec,
                    int check_prec, LaurentJet* unit_out) {
    const Field& f = alg.field();
    int prec = check_prec;
    auto X = [&](std::size_t i) { return column_element(f, x_basis, i); };
    auto Y = [&](std::size_t i) { return column_element(f, y_basis, i); };

    // x1*x2 = b y3 with b = <x1*x2, x3>
    AlgebraElement x1x2 = alg.twisted_mul(X(0), X(1));
    LaurentJet unit = alg.bilinear(x1x2, X(2));
    require_zero(x1x2 - Y(2).scaled(unit), prec, "x1*x2 not proportional to y3");
    if (!unit.is_unit_integral()) throw CheckError("table mismatch: x1*x2 unit is not a unit");
    require_zero(unit - unit.rho(), prec, "x1*x2 unit is not rho-fixed");
    if (unit_out) *unit_out = unit;

    y_basis.set_col(2, Y(2).scaled(-unit).coords());
    x_basis.set_col(2, X(2).scaled(-unit.invert_unit(solve_prec)).coords());

    AlgebraElement zero(f);
    // Tables of the x- and y-blocks
    const int eps[3][3] = {{0, 1, -1}, {-1, 0, 1}, {1, -1, 0}};
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j) {
            std::size_t k = 3 - i - j;
            AlgebraElement wx = zero, wy = zero;
            if (eps[i][j] > 0) {
                wx = -Y(k);
                wy = -X(k);
            } else if (eps[i][j] < 0) {
                wx = Y(k);
                wy = X(k);
            }
            std::ostringstream nx, ny;
            nx << "x" << i + 1 << "*x" << j + 1;
            ny << "y" << i + 1 << "*y" << j + 1;
            if (i == j) {
                check_product(alg, X(i), X(j), zero, prec, nx.str());
                check_product(alg, Y(i), Y(j), zero, prec, ny.str());
            } else {
                check_product(alg, X(i), X(j), wx, prec, nx.str());
                check_product(alg, Y(i), Y(j), wy, prec, ny.str());
            }
        }

    // f/x/y block and cross relations
    for (std::size_t i = 0; i < 3; ++i) {
        check_product(alg, X(i), f1, -X(i), prec, "x_i*f1");
        check_product(alg, f1, X(i), zero, prec, "f1*x_i");
        check_product(alg, X(i), f2, zero, prec, "x_i*f2");
        check_product(alg, f2, X(i), -X(i), prec, "f2*x_i");
        check_product(alg, Y(i), f1, zero, prec, "y_i*f1");
        check_product(alg, f1, Y(i), -Y(i), prec, "f1*y_i");
        check_product(alg, Y(i), f2, -Y(i), prec, "y_i*f2");
        check_product(alg, f2, Y(i), zero, prec, "f2*y_i");
        for (std::size_t j = 0; j < 3; ++j) {
            AlgebraElement wx = i == j ? -f1 : zero;
            AlgebraElement wy = i == j ? -f2 : zero;
            check_product(alg, X(i), Y(j), wx, prec, "x_i*y_j");
            check_product(alg, Y(i), X(j), wy, prec, "y_i*x_j");
        }
    }
}

JetMatrix normalize_lattice(const ParaCayley& alg, const Lattice& l,
                            const std::optional<AlgebraElement>& witness,
                            NormalizationTrace* trace) {
    const Field& f = alg.field();
    int prec = l.prec();

    ConditionReport rep = check_all(alg, l, witness);
    if (!rep.ok()) {
        std::ostringstream os;
        os << "lattice fails condition (" << rep.first_failure << "): " << rep.diagnostics;
        throw CheckError(os.str());
    }
    const AlgebraElement& a = *rep.witness;

    auto [f1, f2] = hyperbolic_pair(alg, l, a);
    JetMatrix l0 = complement_L0(alg, l, f1, f2);
    L0Split split = split_L1_L2(alg, l, l0, f1, f2);
    JetMatrix a1 = semilinear_matrix(alg, l, split, 0, f1);

    int solve_prec = l.internal_prec();
    if (auto k = knowledge_floor(a1)) solve_prec = std::min(solve_prec, *k);
    if (solve_prec < prec) throw PrecisionError("precision exhausted before trivialization");

    JetMatrix b = twisted_conjugacy_solve(a1, solve_prec);
    JetMatrix x_basis = split.l1 * b;

    for (std::size_t i = 0; i < 3; ++i) {
        AlgebraElement xi = column_element(f, x_basis, i);
        require_zero(alg.twisted_mul(xi, f1) + xi, prec, "t_1 eigenproperty of x basis");
    }

    JetMatrix y_basis = dual_basis(alg, x_basis, split.l2, f2, solve_prec, prec);
    LaurentJet unit(f);
    sign_normalize(alg, x_basis, y_basis, f1, f2, solve_prec, prec, &unit);

    // assembly: g e4 = f1, g e5 = f2, g(e1,e6,e7) = x, g(e8,e3,e2) = y
    JetMatrix g(f, 8, 8);
    g.set_col(3, f1.coords());
    g.set_col(4, f2.coords());
    g.set_col(0, x_basis.col(0));
    g.set_col(5, x_basis.col(1));
    g.set_col(6, x_basis.col(2));
    g.set_col(7, y_basis.col(0));
    g.set_col(2, y_basis.col(1));
    g.set_col(1, y_basis.col(2));

    MemberReport member = is_member(alg, g, prec);
    if (!member.multiplicative)
        throw CheckError("assembled g is not multiplicative: " + member.diagnostics);
    if (!member.isometry) throw CheckError("assembled g is not an isometry");
    if (!member.proper) throw CheckError("determinant != 1");

    Lattice image(g, prec);
    if (!lattice_equal(image, l))
        throw CheckError("assembled g does not map the standard lattice onto L");

    if (trace) {
        trace->f1 = f1;
        trace->f2 = f2;
        trace->l0_basis = l0;
        trace->l1_basis = split.l1;
        trace->l2_basis = split.l2;
        trace->a1 = a1;
        trace->cocycle_b = b;
        trace->x_basis = x_basis;
        trace->y_basis = y_basis;
        trace->sign_unit = unit;
        trace->g = g;
        trace->witness_used = a.str();
    }
    return g;
}

}  // namespace trikit
