#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "trikit/linalg.hpp"

namespace trikit {

/// Element of the 8-dimensional twisted composition algebra V, as coordinates
/// in the fixed basis e_1..e_8 of the split para-Cayley multiplication table.
struct AlgebraElement {
    Field field;
    std::array<LaurentJet, 8> c;

    explicit AlgebraElement(const Field& f)
        : field(f), c{LaurentJet(f), LaurentJet(f), LaurentJet(f), LaurentJet(f),
                      LaurentJet(f), LaurentJet(f), LaurentJet(f), LaurentJet(f)} {}

    static AlgebraElement basis(const Field& f, int i);  // i in 1..8
    static AlgebraElement from_coords(const Field& f, std::vector<LaurentJet> v);

    AlgebraElement operator+(const AlgebraElement& o) const;
    AlgebraElement operator-(const AlgebraElement& o) const;
    AlgebraElement operator-() const;
    AlgebraElement scaled(const LaurentJet& s) const;
    AlgebraElement rho() const;
    AlgebraElement theta() const;

    std::vector<LaurentJet> coords() const { return {c.begin(), c.end()}; }
    bool is_zero_to_prec() const;
    bool equal_to_common_prec(const AlgebraElement& o) const;
    bool all_integral() const;
    bool all_exact() const;
    std::string str() const;
};

enum class Side { left, right };

/// Outcome of the randomized identity suite.
struct AxiomReport {
    bool ok = true;
    int samples_run = 0;
    std::string first_failure;   // identity name, empty when ok
    std::string witness;         // printed inputs of the first failure
};

/// The split para-Cayley structure over a coefficient field: multiplication
/// table, twisted product, and the bilinear/quadratic form derived from the
/// symmetric-composition identity. Construction runs the Gram derivation with
/// its consistency cross-check.
class ParaCayley {
public:
    explicit ParaCayley(Field f);

    const Field& field() const { return field_; }

    /// Structure table entry for e_i * e_j (1-based): signed basis index,
    /// 0 meaning the zero product.
    static int table(int i, int j);

    /// Bilinear extension of the table: x ⋆ y.
    AlgebraElement star(const AlgebraElement& x, const AlgebraElement& y) const;

    /// Twisted product x * y = rho(x) ⋆ theta(y) (coordinatewise Galois twist).
    AlgebraElement twisted_mul(const AlgebraElement& x, const AlgebraElement& y) const;

    const KMatrix& gram() const { return gram_; }
    JetMatrix gram_jets() const { return JetMatrix::from_k(field_, gram_); }

    LaurentJet bilinear(const AlgebraElement& x, const AlgebraElement& y) const;
    LaurentJet quadratic(const AlgebraElement& x) const;
    /// T(x) = <x*x, x>, a rho-fixed scalar.
    LaurentJet trace_form(const AlgebraElement& x) const;

    /// Conjugation r(x) = <x,e>e - x with the para-unit e = e_4 + e_5.
    AlgebraElement conjugate(const AlgebraElement& x) const;
    AlgebraElement para_unit() const;

    /// 8x8 jet matrix of y -> x*y (left) or y -> y*x (right) in the twist
    /// convention: left applies as M · theta(coords), right as M · rho(coords).
    JetMatrix mul_operator(const AlgebraElement& x, Side side) const;

    /// Identity suite of Definition 2.1, Lemmas 2.2 and 2.3 plus
    /// rho-fixedness of T, over seeded random Laurent-polynomial elements
    /// with exponents in [-3, 3].
    AxiomReport validate_axioms(int samples, std::uint64_t seed, int prec) const;

    /// Seeded random element (Laurent polynomial coordinates, exponent
    /// range [-3,3]); the generator is a raw mt19937_64 stream with modular
    /// reduction, so outputs are reproducible across platforms.
    AlgebraElement random_element(std::uint64_t& state) const;
    FieldElement random_field_element(std::uint64_t& state) const;
    LaurentJet random_laurent_poly(std::uint64_t& state) const;

private:
    Field field_;
    KMatrix gram_;

    void derive_gram();
};

/// The Gram derivation alone (also used by tests as the oracle entry point):
/// the unique symmetric matrix G with q(x) = (1/2) x^T G x satisfying
/// x⋆(y⋆x) = q(x) y = (x⋆y)⋆x, found by probing basis pairs and polarizing.
/// Throws CheckError("inconsistent table") when constraints conflict.
KMatrix derive_gram(const Field& f);

}  // namespace trikit
