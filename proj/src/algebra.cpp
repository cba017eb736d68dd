#include "trikit/algebra.hpp"

#include <sstream>

namespace trikit {

namespace {

// Split para-Cayley multiplication x ⋆ y, rows = x, columns = y.
// Entry s encodes s>0: +e_s, s<0: -e_{-s}, 0: zero product.
constexpr int kStar[8][8] = {
    //  e1  e2  e3  e4  e5  e6  e7  e8
    {   0,  0,  0, -1,  0, -2, +3, -4},  // e1
    {   0,  0, +1,  0, -2,  0, -5, -6},  // e2
    {   0, -1,  0,  0, -3, -5,  0, +7},  // e3
    {   0, -2, -3, +5,  0,  0,  0, -8},  // e4
    {  -1,  0,  0,  0, +4, -6, -7,  0},  // e5
    {  +2,  0, -4, -6,  0,  0, -8,  0},  // e6
    {  -3, -4,  0, -7,  0, +8,  0,  0},  // e7
    {  -5, +6, -7,  0, -8,  0,  0,  0},  // e8
};

}  // namespace

AlgebraElement AlgebraElement::basis(const Field& f, int i) {
    AlgebraElement e(f);
    e.c[static_cast<std::size_t>(i - 1)] = LaurentJet::one(f);
    return e;
}

AlgebraElement AlgebraElement::from_coords(const Field& f, std::vector<LaurentJet> v) {
    if (v.size() != 8) throw Error("algebra element needs 8 coordinates");
    AlgebraElement e(f);
    for (std::size_t i = 0; i < 8; ++i) e.c[i] = std::move(v[i]);
    return e;
}

AlgebraElement AlgebraElement::operator+(const AlgebraElement& o) const {
    AlgebraElement r(field);
    for (std::size_t i = 0; i < 8; ++i) r.c[i] = c[i] + o.c[i];
    return r;
}

AlgebraElement AlgebraElement::operator-(const AlgebraElement& o) const {
    AlgebraElement r(field);
    for (std::size_t i = 0; i < 8; ++i) r.c[i] = c[i] - o.c[i];
    return r;
}

AlgebraElement AlgebraElement::operator-() const {
    AlgebraElement r(field);
    for (std::size_t i = 0; i < 8; ++i) r.c[i] = -c[i];
    return r;
}

AlgebraElement AlgebraElement::scaled(const LaurentJet& s) const {
    AlgebraElement r(field);
    for (std::size_t i = 0; i < 8; ++i) r.c[i] = c[i] * s;
    return r;
}

AlgebraElement AlgebraElement::rho() const {
    AlgebraElement r(field);
    for (std::size_t i = 0; i < 8; ++i) r.c[i] = c[i].rho();
    return r;
}

AlgebraElement AlgebraElement::theta() const {
    AlgebraElement r(field);
    for (std::size_t i = 0; i < 8; ++i) r.c[i] = c[i].theta();
    return r;
}

bool AlgebraElement::is_zero_to_prec() const {
    for (const auto& x : c)
        if (!x.is_zero_to_prec()) return false;
    return true;
}

bool AlgebraElement::equal_to_common_prec(const AlgebraElement& o) const {
    for (std::size_t i = 0; i < 8; ++i)
        if (!c[i].equal_to_common_prec(o.c[i])) return false;
    return true;
}

bool AlgebraElement::all_integral() const {
    for (const auto& x : c)
        if (!x.is_integral()) return false;
    return true;
}

bool AlgebraElement::all_exact() const {
    for (const auto& x : c)
        if (!x.exact()) return false;
    return true;
}

std::string AlgebraElement::str() const {
    std::ostringstream os;
    os << "[";
    for (std::size_t i = 0; i < 8; ++i) {
        if (i) os << "; ";
        os << c[i].str();
    }
    os << "]";
    return os.str();
}

int ParaCayley::table(int i, int j) { return kStar[i - 1][j - 1]; }

ParaCayley::ParaCayley(Field f) : field_(std::move(f)), gram_() { derive_gram(); }

AlgebraElement ParaCayley::star(const AlgebraElement& x, const AlgebraElement& y) const {
    AlgebraElement r(field_);
    for (int i = 0; i < 8; ++i) {
        if (x.c[static_cast<std::size_t>(i)].is_zero()) continue;
        for (int j = 0; j < 8; ++j) {
            int s = kStar[i][j];
            if (s == 0 || y.c[static_cast<std::size_t>(j)].is_zero()) continue;
            LaurentJet term = x.c[static_cast<std::size_t>(i)] * y.c[static_cast<std::size_t>(j)];
            std::size_t k = static_cast<std::size_t>((s > 0 ? s : -s) - 1);
            if (s > 0)
                r.c[k] += term;
            else
                r.c[k] -= term;
        }
    }
    return r;
}

AlgebraElement ParaCayley::twisted_mul(const AlgebraElement& x,
                                       const AlgebraElement& y) const {
    return star(x.rho(), y.theta());
}

void ParaCayley::derive_gram() { gram_ = trikit::derive_gram(field_); }

KMatrix derive_gram(const Field& f) {
    auto star_of = [&](const AlgebraElement& x, const AlgebraElement& y) {
        AlgebraElement r(f);
        for (int i = 0; i < 8; ++i) {
            if (x.c[static_cast<std::size_t>(i)].is_zero()) continue;
            for (int j = 0; j < 8; ++j) {
                int s = ParaCayley::table(i + 1, j + 1);
                if (s == 0 || y.c[static_cast<std::size_t>(j)].is_zero()) continue;
                LaurentJet term =
                    x.c[static_cast<std::size_t>(i)] * y.c[static_cast<std::size_t>(j)];
                std::size_t k = static_cast<std::size_t>((s > 0 ? s : -s) - 1);
                if (s > 0)
                    r.c[k] += term;
                else
                    r.c[k] -= term;
            }
        }
        return r;
    };

    // q(x) from the probes x⋆(e_k⋆x) = q(x) e_k: every probe must return a
    // scalar multiple of e_k and all probes must agree.
    auto q_of = [&](const AlgebraElement& x) {
        std::optional<FieldElement> q;
        for (int k = 1; k <= 8; ++k) {
            AlgebraElement ek = AlgebraElement::basis(f, k);
            for (AlgebraElement probe : {star_of(x, star_of(ek, x)), star_of(star_of(x, ek), x)}) {
                FieldElement scalar = f.zero();
                bool scalar_set = false;
                for (int m = 0; m < 8; ++m) {
                    const LaurentJet& cm = probe.c[static_cast<std::size_t>(m)];
                    if (cm.is_zero()) continue;
                    if (m != k - 1) throw CheckError("inconsistent table");
                    if (!cm.exact() || cm.coeffs().size() != 1 ||
                        cm.coeffs().begin()->first != 0)
                        throw CheckError("inconsistent table");
                    scalar = cm.coeffs().begin()->second;
                    scalar_set = true;
                }
                if (!scalar_set) scalar = f.zero();
                if (q && !(*q == scalar)) throw CheckError("inconsistent table");
                q = scalar;
            }
        }
        return *q;
    };

    std::array<FieldElement, 8> qdiag{f.zero(), f.zero(), f.zero(), f.zero(),
                                      f.zero(), f.zero(), f.zero(), f.zero()};
    for (int i = 1; i <= 8; ++i)
        qdiag[static_cast<std::size_t>(i - 1)] = q_of(AlgebraElement::basis(f, i));

    KMatrix g = km_zero(f, 8, 8);
    for (int i = 1; i <= 8; ++i) {
        for (int j = i; j <= 8; ++j) {
            FieldElement entry;
            if (i == j) {
                entry = qdiag[static_cast<std::size_t>(i - 1)] + qdiag[static_cast<std::size_t>(i - 1)];
            } else {
                AlgebraElement s = AlgebraElement::basis(f, i) + AlgebraElement::basis(f, j);
                // polarization: <e_i, e_j> = q(e_i + e_j) - q(e_i) - q(e_j)
                entry = q_of(s) - qdiag[static_cast<std::size_t>(i - 1)] -
                        qdiag[static_cast<std::size_t>(j - 1)];
            }
            g[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(j - 1)] = entry;
            g[static_cast<std::size_t>(j - 1)][static_cast<std::size_t>(i - 1)] = entry;
        }
    }

    // cross-check: associativity of the form on all basis triples,
    // <x⋆y, z> = <x, y⋆z>, plus nondegeneracy
    auto pair_with = [&](const AlgebraElement& x, int k) {
        FieldElement acc = f.zero();
        for (int m = 0; m < 8; ++m) {
            const LaurentJet& cm = x.c[static_cast<std::size_t>(m)];
            if (cm.is_zero()) continue;
            acc += cm.coeff(0) * g[static_cast<std::size_t>(m)][static_cast<std::size_t>(k - 1)];
        }
        return acc;
    };
    for (int i = 1; i <= 8; ++i)
        for (int j = 1; j <= 8; ++j)
            for (int k = 1; k <= 8; ++k) {
                AlgebraElement ei = AlgebraElement::basis(f, i);
                AlgebraElement ej = AlgebraElement::basis(f, j);
                FieldElement lhs = pair_with(star_of(ei, ej), k);
                FieldElement rhs = pair_with(star_of(ej, AlgebraElement::basis(f, k)), i);
                if (!(lhs == rhs)) throw CheckError("inconsistent table");
            }
    if (km_det(f, g).is_zero()) throw CheckError("inconsistent table");
    return g;
}

LaurentJet ParaCayley::bilinear(const AlgebraElement& x, const AlgebraElement& y) const {
    LaurentJet acc(field_);
    for (std::size_t i = 0; i < 8; ++i) {
        if (x.c[i].is_zero()) continue;
        for (std::size_t j = 0; j < 8; ++j) {
            if (gram_[i][j].is_zero() || y.c[j].is_zero()) continue;
            acc += (x.c[i] * y.c[j]).scaled(gram_[i][j]);
        }
    }
    return acc;
}

LaurentJet ParaCayley::quadratic(const AlgebraElement& x) const {
    return bilinear(x, x).scaled(field_.from_int(2).inv());
}

LaurentJet ParaCayley::trace_form(const AlgebraElement& x) const {
    return bilinear(twisted_mul(x, x), x);
}

AlgebraElement ParaCayley::para_unit() const {
    return AlgebraElement::basis(field_, 4) + AlgebraElement::basis(field_, 5);
}

AlgebraElement ParaCayley::conjugate(const AlgebraElement& x) const {
    AlgebraElement e = para_unit();
    return e.scaled(bilinear(x, e)) - x;
}

JetMatrix ParaCayley::mul_operator(const AlgebraElement& x, Side side) const {
    JetMatrix m(field_, 8, 8);
    for (int j = 1; j <= 8; ++j) {
        AlgebraElement ej = AlgebraElement::basis(field_, j);
        AlgebraElement img = (side == Side::left) ? twisted_mul(x, ej) : twisted_mul(ej, x);
        for (std::size_t i = 0; i < 8; ++i) m.at(i, static_cast<std::size_t>(j - 1)) = img.c[i];
    }
    return m;
}

FieldElement ParaCayley::random_field_element(std::uint64_t& state) const {
    auto next = [&state]() {
        // splitmix64 step; stable across platforms
        state += 0x9e3779b97f4a7c15ULL;
        std::uint64_t z = state;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    };
    if (field_.kind() == Field::Kind::prime)
        return FieldElement::make_prime(field_.p(), next() % field_.p());
    long long a = static_cast<long long>(next() % 9) - 4;
    long long b = static_cast<long long>(next() % 9) - 4;
    return FieldElement::make_qomega(Rational(a), Rational(b));
}

LaurentJet ParaCayley::random_laurent_poly(std::uint64_t& state) const {
    LaurentJet j(field_);
    for (int n = -3; n <= 3; ++n)
        j += LaurentJet::monomial(field_, random_field_element(state), n);
    return j;
}

AlgebraElement ParaCayley::random_element(std::uint64_t& state) const {
    AlgebraElement e(field_);
    for (std::size_t i = 0; i < 8; ++i) e.c[i] = random_laurent_poly(state);
    return e;
}

AxiomReport ParaCayley::validate_axioms(int samples, std::uint64_t seed, int prec) const {
    AxiomReport rep;
    std::uint64_t state = seed;

    auto fail = [&](const std::string& name, const AlgebraElement& x,
                    const AlgebraElement& y, const AlgebraElement& z) {
        rep.ok = false;
        rep.first_failure = name;
        std::ostringstream os;
        os << "x=" << x.str() << " y=" << y.str() << " z=" << z.str();
        rep.witness = os.str();
    };

    auto eq_elem = [&](const AlgebraElement& a, const AlgebraElement& b) {
        for (std::size_t i = 0; i < 8; ++i)
            if (!(a.c[i] - b.c[i]).truncated(prec).is_zero_to_prec()) return false;
        return true;
    };
    auto eq_jet = [&](const LaurentJet& a, const LaurentJet& b) {
        return (a - b).truncated(prec).is_zero_to_prec();
    };

    for (int s = 0; s < samples && rep.ok; ++s) {
        AlgebraElement x = random_element(state);
        AlgebraElement y = random_element(state);
        AlgebraElement z = random_element(state);
        AlgebraElement w = random_element(state);
        LaurentJet lam = random_laurent_poly(state);
        ++rep.samples_run;

        AlgebraElement xy = twisted_mul(x, y);
        AlgebraElement yx = twisted_mul(y, x);
        AlgebraElement xx = twisted_mul(x, x);
        LaurentJet qx = quadratic(x), qy = quadratic(y), qz = quadratic(z);

        // Definition 2.1 (1): semilinearity in both slots
        if (!eq_elem(twisted_mul(x.scaled(lam), y), xy.scaled(lam.rho())))
            { fail("def2.1(1) left semilinearity", x, y, z); break; }
        if (!eq_elem(twisted_mul(x, y.scaled(lam)), xy.scaled(lam.theta())))
            { fail("def2.1(1) right semilinearity", x, y, z); break; }
        // Definition 2.1 (2): composition
        if (!eq_jet(quadratic(xy), qx.rho() * qy.theta()))
            { fail("def2.1(2) q(x*y)=rho(q(x))theta(q(y))", x, y, z); break; }
        // Definition 2.1 (3): associativity of the form
        if (!eq_jet(bilinear(xy, z), bilinear(twisted_mul(y, z), x).rho()))
            { fail("def2.1(3) <x*y,z>=rho(<y*z,x>)", x, y, z); break; }
        if (!eq_jet(bilinear(xy, z), bilinear(twisted_mul(z, x), y).theta()))
            { fail("def2.1(3) <x*y,z>=theta(<z*x,y>)", x, y, z); break; }

        // Lemma 2.2
        if (!eq_jet(bilinear(twisted_mul(x, z), twisted_mul(y, z)),
                    bilinear(x, y).rho() * qz.theta()))
            { fail("lemma2.2(1)", x, y, z); break; }
        if (!eq_jet(bilinear(twisted_mul(z, x), twisted_mul(z, y)),
                    bilinear(x, y).theta() * qz.rho()))
            { fail("lemma2.2(2)", x, y, z); break; }
        if (!eq_jet(bilinear(twisted_mul(x, z), twisted_mul(y, w)) +
                        bilinear(twisted_mul(x, w), twisted_mul(y, z)),
                    bilinear(x, y).rho() * bilinear(z, w).theta()))
            { fail("lemma2.2(3)", x, y, z); break; }

        // Lemma 2.3
        if (!eq_elem(twisted_mul(x, yx), y.scaled(qx.rho())))
            { fail("lemma2.3(1) x*(y*x)=rho(q(x))y", x, y, z); break; }
        if (!eq_elem(twisted_mul(xy, x), y.scaled(qx.theta())))
            { fail("lemma2.3(1) (x*y)*x=theta(q(x))y", x, y, z); break; }
        if (!eq_elem(twisted_mul(x, twisted_mul(y, z)) + twisted_mul(z, yx),
                     y.scaled(bilinear(x, z).rho())))
            { fail("lemma2.3(2) first", x, y, z); break; }
        if (!eq_elem(twisted_mul(xy, z) + twisted_mul(twisted_mul(z, y), x),
                     y.scaled(bilinear(x, z).theta())))
            { fail("lemma2.3(2) second", x, y, z); break; }
        LaurentJet tx = bilinear(xx, x);
        if (!eq_elem(twisted_mul(xx, xx), x.scaled(tx) - xx.scaled(qx)))
            { fail("lemma2.3(3)", x, y, z); break; }
        // T takes values in the fixed field
        if (!eq_jet(tx.rho(), tx)) { fail("rho(T(x))=T(x)", x, y, z); break; }
    }
    return rep;
}

}  // namespace trikit
