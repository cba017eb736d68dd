#include "trikit/lattice.hpp"

#include <sstream>

namespace trikit {

Lattice::Lattice(JetMatrix basis, int prec) : basis_(std::move(basis)), prec_(prec) {
    if (basis_.rows() != 8 || basis_.cols() != 8)
        throw InputError("lattice basis must be 8x8");
    iprec_ = prec_ + 8;
    if (auto mv = min_valuation(basis_); mv && *mv < 0) iprec_ -= 4 * *mv;
}

Lattice Lattice::standard(const Field& f, int prec) {
    return Lattice(JetMatrix::identity(f, 8), prec);
}

const JetMatrix& Lattice::basis_inverse() const {
    if (!inv_) inv_ = std::make_shared<const JetMatrix>(inverse(basis_, iprec_));
    return *inv_;
}

AlgebraElement Lattice::generator(std::size_t j) const {
    return AlgebraElement::from_coords(field(), basis_.col(j));
}

MembershipResult Lattice::member(const AlgebraElement& v) const {
    return membership_solve_with(basis_inverse(), v.coords());
}

bool lattice_equal(const Lattice& a, const Lattice& b) {
    JetMatrix ab = a.basis_inverse() * b.basis();
    if (!ab.all_integral()) return false;
    JetMatrix ba = b.basis_inverse() * a.basis();
    return ba.all_integral();
}

bool check_self_dual(const ParaCayley& alg, const Lattice& l) {
    JetMatrix pairing = l.basis().transpose() * alg.gram_jets() * l.basis();
    return is_unimodular(pairing);
}

bool check_closed(const ParaCayley& alg, const Lattice& l, ClosureFailure* failure) {
    for (int i = 0; i < 8; ++i) {
        AlgebraElement bi = l.generator(static_cast<std::size_t>(i));
        for (int j = 0; j < 8; ++j) {
            AlgebraElement bj = l.generator(static_cast<std::size_t>(j));
            MembershipResult m = l.member(alg.twisted_mul(bi, bj));
            if (!m.integral) {
                if (failure) *failure = ClosureFailure{i + 1, j + 1};
                return false;
            }
        }
    }
    return true;
}

ResidueAlgebra residue_algebra(const ParaCayley& alg, const Lattice& l) {
    ResidueAlgebra r{alg.field(), {}, {}};
    const Field& f = alg.field();
    for (int i = 0; i < 8; ++i) {
        AlgebraElement bi = l.generator(static_cast<std::size_t>(i));
        for (int j = 0; j < 8; ++j) {
            AlgebraElement bj = l.generator(static_cast<std::size_t>(j));
            MembershipResult m = l.member(alg.twisted_mul(bi, bj));
            if (!m.integral)
                throw CheckError("residue algebra requested for a lattice violating closure");
            for (int k = 0; k < 8; ++k)
                r.c[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]
                   [static_cast<std::size_t>(k)] = m.coords[static_cast<std::size_t>(k)].residue();
        }
    }
    JetMatrix pairing = l.basis().transpose() * alg.gram_jets() * l.basis();
    if (!pairing.all_integral())
        throw CheckError("residue Gram requested for a non-integral pairing");
    r.gram = pairing.residue();
    (void)f;
    return r;
}

KVec ResidueAlgebra::star(const KVec& x, const KVec& y) const {
    KVec out(8, field.zero());
    for (std::size_t i = 0; i < 8; ++i) {
        if (x[i].is_zero()) continue;
        for (std::size_t j = 0; j < 8; ++j) {
            if (y[j].is_zero()) continue;
            FieldElement xy = x[i] * y[j];
            for (std::size_t k = 0; k < 8; ++k) {
                if (c[i][j][k].is_zero()) continue;
                out[k] += xy * c[i][j][k];
            }
        }
    }
    return out;
}

FieldElement ResidueAlgebra::bilinear(const KVec& x, const KVec& y) const {
    FieldElement acc = field.zero();
    for (std::size_t i = 0; i < 8; ++i) {
        if (x[i].is_zero()) continue;
        for (std::size_t j = 0; j < 8; ++j) {
            if (y[j].is_zero() || gram[i][j].is_zero()) continue;
            acc += x[i] * y[j] * gram[i][j];
        }
    }
    return acc;
}

FieldElement ResidueAlgebra::quadratic(const KVec& x) const {
    return bilinear(x, x) * field.from_int(2).inv();
}

FieldElement ResidueAlgebra::trace(const KVec& x) const {
    return bilinear(star(x, x), x);
}

namespace {

/// Verify a candidate witness already expressed in V-coordinates.
bool witness_conditions_hold(const ParaCayley& alg, const AlgebraElement& a, int prec,
                             std::string* why) {
    LaurentJet q = alg.quadratic(a).truncated(prec);
    if (!q.is_zero_to_prec()) {
        if (why) *why = "q(a) != 0: " + q.str();
        return false;
    }
    LaurentJet t = (alg.trace_form(a) - LaurentJet::one(alg.field())).truncated(prec);
    if (!t.is_zero_to_prec()) {
        if (why) *why = "<a*a,a> != 1: residual " + t.str();
        return false;
    }
    return true;
}

/// Newton lift of a residue witness: coordinates z in the lattice basis,
/// z starts at the residue vector; corrections u^n * delta on two unfrozen
/// coordinates chosen so the 2x2 residue Jacobian of (q, T-1) is invertible.
/// The T-slice at steps with 3 | n is handled by the full system; at other
/// steps it vanishes (T is rho-fixed) and only the q-row is solved.
std::optional<AlgebraElement> newton_lift(const ParaCayley& alg, const Lattice& l,
                                          const ResidueAlgebra& res, const KVec& zbar,
                                          std::string* why) {
    const Field& f = alg.field();
    int prec = l.prec();

    // residue Jacobian rows: dq = Ḡ z̄ , dT = 3 Ḡ (z̄ ⋆ z̄)
    KVec row_q = km_apply(res.gram, zbar);
    KVec row_t = km_apply(res.gram, res.star(zbar, zbar));
    for (auto& x : row_t) x *= f.from_int(3);

    // unfrozen coordinate pair: first (i, j) with invertible 2x2 minor
    int pi = -1, pj = -1;
    for (int i = 0; i < 8 && pi < 0; ++i)
        for (int j = i + 1; j < 8; ++j) {
            FieldElement d = row_q[static_cast<std::size_t>(i)] * row_t[static_cast<std::size_t>(j)] -
                             row_q[static_cast<std::size_t>(j)] * row_t[static_cast<std::size_t>(i)];
            if (!d.is_zero()) {
                pi = i;
                pj = j;
                break;
            }
        }
    if (pi < 0) {
        if (why) *why = "lift stalled";
        return std::nullopt;
    }

    std::vector<LaurentJet> z;
    z.reserve(8);
    for (const auto& v : zbar) z.push_back(LaurentJet::constant(f, v));

    auto element_of = [&](const std::vector<LaurentJet>& coords) {
        return AlgebraElement::from_coords(f, l.basis().apply(coords));
    };

    int last_n = 0;
    for (int guard = 0; guard < 4 * prec + 8; ++guard) {
        AlgebraElement a = element_of(z);
        LaurentJet rq = alg.quadratic(a).truncated(prec);
        LaurentJet rt = (alg.trace_form(a) - LaurentJet::one(f)).truncated(prec);
        if (rq.is_zero_to_prec() && rt.is_zero_to_prec()) return a;

        int n = prec;
        if (auto v = rq.valuation()) n = std::min(n, *v);
        if (auto v = rt.valuation()) n = std::min(n, *v);
        if (guard > 0 && n <= last_n) {
            if (why) *why = "lift stalled";
            return std::nullopt;
        }
        last_n = n;

        FieldElement sq = -rq.coeff(n);
        FieldElement st = -rt.coeff(n);
        FieldElement di = f.zero(), dj = f.zero();
        if (n % 3 == 0) {
            FieldElement det = row_q[static_cast<std::size_t>(pi)] * row_t[static_cast<std::size_t>(pj)] -
                               row_q[static_cast<std::size_t>(pj)] * row_t[static_cast<std::size_t>(pi)];
            FieldElement inv = det.inv();
            di = (sq * row_t[static_cast<std::size_t>(pj)] - st * row_q[static_cast<std::size_t>(pj)]) * inv;
            dj = (st * row_q[static_cast<std::size_t>(pi)] - sq * row_t[static_cast<std::size_t>(pi)]) * inv;
        } else {
            if (!st.is_zero()) {
                if (why) *why = "lift stalled";  // T-residual slice must vanish off 3|n
                return std::nullopt;
            }
            if (!row_q[static_cast<std::size_t>(pi)].is_zero())
                di = sq * row_q[static_cast<std::size_t>(pi)].inv();
            else
                dj = sq * row_q[static_cast<std::size_t>(pj)].inv();
        }
        z[static_cast<std::size_t>(pi)] += LaurentJet::monomial(f, di, n);
        z[static_cast<std::size_t>(pj)] += LaurentJet::monomial(f, dj, n);
    }
    if (why) *why = "lift stalled";
    return std::nullopt;
}

}  // namespace

WitnessResult find_witness(const ParaCayley& alg, const Lattice& l,
                           const std::optional<AlgebraElement>& provided) {
    const Field& f = alg.field();
    WitnessResult out(f);

    if (provided) {
        MembershipResult m = l.member(*provided);
        if (!m.integral) {
            out.failure = "not in lattice";
            return out;
        }
        std::string why;
        if (!witness_conditions_hold(alg, *provided, l.prec(), &why)) {
            out.failure = why;
            return out;
        }
        out.found = true;
        out.witness = *provided;
        return out;
    }

    if (f.kind() != Field::Kind::prime) {
        out.failure = "no witness found (residue search requires the prime backend)";
        return out;
    }

    // Exhaust residue vectors with q̄ = 0 and T̄ = 1, lifting the first that
    // Newton-converges. Lexicographic order, raw modular arithmetic.
    const std::uint64_t p = f.p();
    const ResidueAlgebra res = residue_algebra(alg, l);

    // flattened tables for the hot loop
    std::vector<std::uint64_t> cflat(8 * 8 * 8), gflat(8 * 8);
    for (std::size_t i = 0; i < 8; ++i)
        for (std::size_t j = 0; j < 8; ++j) {
            gflat[i * 8 + j] = res.gram[i][j].residue_value();
            for (std::size_t k = 0; k < 8; ++k)
                cflat[(i * 8 + j) * 8 + k] = res.c[i][j][k].residue_value();
        }
    std::uint64_t inv2 = f.from_int(2).inv().residue_value();

    std::vector<std::uint64_t> v(8, 0);
    auto advance = [&]() {
        for (int i = 7; i >= 0; --i) {
            if (++v[static_cast<std::size_t>(i)] < p) return true;
            v[static_cast<std::size_t>(i)] = 0;
        }
        return false;
    };

    std::string last_lift_failure;
    do {
        // q̄(v) = (1/2) v^T Ḡ v
        std::uint64_t q = 0;
        for (std::size_t i = 0; i < 8; ++i) {
            if (v[i] == 0) continue;
            std::uint64_t row = 0;
            for (std::size_t j = 0; j < 8; ++j) row = (row + gflat[i * 8 + j] * v[j]) % p;
            q = (q + v[i] * row) % p;
        }
        q = (q * inv2) % p;
        if (q != 0) continue;

        // T̄(v) = <v ⋆ v, v>
        std::uint64_t s[8] = {0, 0, 0, 0, 0, 0, 0, 0};
        for (std::size_t i = 0; i < 8; ++i) {
            if (v[i] == 0) continue;
            for (std::size_t j = 0; j < 8; ++j) {
                if (v[j] == 0) continue;
                std::uint64_t xy = (v[i] * v[j]) % p;
                if (xy == 0) continue;
                const std::uint64_t* ck = &cflat[(i * 8 + j) * 8];
                for (std::size_t k = 0; k < 8; ++k)
                    if (ck[k]) s[k] = (s[k] + xy * ck[k]) % p;
            }
        }
        std::uint64_t t = 0;
        for (std::size_t i = 0; i < 8; ++i) {
            if (s[i] == 0) continue;
            std::uint64_t row = 0;
            for (std::size_t j = 0; j < 8; ++j) row = (row + gflat[i * 8 + j] * v[j]) % p;
            t = (t + s[i] * row) % p;
        }
        if (t != 1) continue;

        KVec zbar;
        zbar.reserve(8);
        for (std::size_t i = 0; i < 8; ++i) zbar.push_back(FieldElement::make_prime(p, v[i]));
        std::string why;
        if (auto a = newton_lift(alg, l, res, zbar, &why)) {
            out.found = true;
            out.witness = *a;
            out.via_search = true;
            return out;
        }
        last_lift_failure = why;
    } while (advance());

    out.failure = last_lift_failure.empty() ? "no witness found" : last_lift_failure;
    return out;
}

bool check_parunit(const ParaCayley& alg, const Lattice& l, const AlgebraElement& a,
                   std::string* diagnostics) {
    const Field& f = alg.field();
    ResidueAlgebra res = residue_algebra(alg, l);

    AlgebraElement e = a + alg.twisted_mul(a, a);
    MembershipResult me = l.member(e);
    if (!me.integral) throw CheckError("para-unit candidate is not in the lattice");
    KVec ebar;
    ebar.reserve(8);
    for (const auto& x : me.coords) ebar.push_back(x.residue());

    // residue orthogonal complement of ē: kernel of v -> <v, ē>
    KMatrix row(1, km_apply(res.gram, ebar));
    std::vector<KVec> comp = km_nullspace(f, row);
    if (comp.size() != 7) throw CheckError("residue orthogonal complement is not 7-dimensional");

    for (const KVec& x : comp) {
        KVec ex = res.star(ebar, x);
        KVec xe = res.star(x, ebar);
        for (std::size_t i = 0; i < 8; ++i) {
            if (!(ex[i] + x[i]).is_zero() || !(xe[i] + x[i]).is_zero()) {
                if (diagnostics) {
                    std::ostringstream os;
                    os << "para-unit identity fails at residue coordinate " << i + 1;
                    *diagnostics = os.str();
                }
                return false;
            }
        }
    }
    return true;
}

ConditionReport check_all(const ParaCayley& alg, const Lattice& l,
                          const std::optional<AlgebraElement>& provided_witness) {
    ConditionReport rep;

    rep.c1 = check_self_dual(alg, l);
    if (!rep.c1) {
        rep.first_failure = 1;
        rep.diagnostics = "not self-dual: basis pairing is not unimodular";
        return rep;
    }

    ClosureFailure cf;
    rep.c2 = check_closed(alg, l, &cf);
    if (!rep.c2) {
        rep.first_failure = 2;
        std::ostringstream os;
        os << "not closed: product of generators (" << cf.i << "," << cf.j
           << ") leaves the lattice";
        rep.diagnostics = os.str();
        return rep;
    }

    WitnessResult w = find_witness(alg, l, provided_witness);
    rep.c3 = w.found;
    if (!rep.c3) {
        rep.first_failure = 3;
        rep.diagnostics = w.failure;
        return rep;
    }
    rep.witness = w.witness;

    std::string diag;
    rep.c4 = check_parunit(alg, l, w.witness, &diag);
    if (!rep.c4) {
        rep.first_failure = 4;
        rep.diagnostics = diag;
        return rep;
    }
    return rep;
}

}  // namespace trikit
