#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

#include "trikit/errors.hpp"

namespace trikit {

using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

/// Element of an exact coefficient field: either a residue mod p (prime
/// backend, p != 0) or a + b*omega with rational a, b and omega a primitive
/// cube root of unity (q-omega backend, p == 0; omega^2 = -1 - omega).
///
/// Every element carries its backend inline, so binary operations need no
/// external context. Mixing backends throws.
class FieldElement {
public:
    FieldElement() = default;  // the q-omega zero

    static FieldElement make_prime(std::uint64_t p, std::uint64_t residue);
    static FieldElement make_qomega(Rational a, Rational b);

    bool prime_backend() const { return p_ != 0; }
    std::uint64_t modulus() const { return p_; }
    std::uint64_t residue_value() const { return r_; }
    const Rational& rat_a() const { return a_; }
    const Rational& rat_b() const { return b_; }

    bool is_zero() const;
    bool is_one() const;

    FieldElement operator+(const FieldElement& o) const;
    FieldElement operator-(const FieldElement& o) const;
    FieldElement operator*(const FieldElement& o) const;
    FieldElement operator-() const;
    FieldElement& operator+=(const FieldElement& o) { return *this = *this + o; }
    FieldElement& operator-=(const FieldElement& o) { return *this = *this - o; }
    FieldElement& operator*=(const FieldElement& o) { return *this = *this * o; }

    /// Multiplicative inverse; throws Error("division by zero") on zero.
    FieldElement inv() const;

    /// Integer power (negative allowed for nonzero elements).
    FieldElement pow(long long n) const;

    /// A square root if one exists in the field.
    std::optional<FieldElement> sqrt() const;

    bool operator==(const FieldElement& o) const;
    bool operator!=(const FieldElement& o) const { return !(*this == o); }

    /// Canonical-representative test used for deterministic sign choices:
    /// true if -x is "smaller" than x (prime: residue above p/2; q-omega:
    /// leading rational negative).
    bool prefers_negation() const;

    std::string str() const;

private:
    std::uint64_t p_ = 0;
    std::uint64_t r_ = 0;
    Rational a_{};
    Rational b_{};

    void check_same(const FieldElement& o) const;
};

/// Coefficient field handle: F_p with p prime, p ≡ 1 (mod 3), p not in {2,3},
/// or Q(omega). Characteristic is never 2 or 3, and a primitive cube root of
/// unity xi is always present.
class Field {
public:
    enum class Kind { prime, q_omega };

    /// Validates p and fixes xi deterministically (smallest residue > 1 with
    /// xi^3 = 1). Rejections: p not prime, p in {2,3}, p ≡ 2 (mod 3)
    /// ("no primitive cube root"), p >= 2^32.
    static Field make_prime(std::uint64_t p);
    static Field make_qomega();

    Kind kind() const { return kind_; }
    std::uint64_t p() const { return p_; }

    FieldElement zero() const;
    FieldElement one() const;
    FieldElement from_int(long long n) const;
    FieldElement xi() const;   // primitive cube root of unity
    /// xi^n for any integer n (reduced mod 3).
    FieldElement xi_pow(long long n) const;

    bool operator==(const Field& o) const { return kind_ == o.kind_ && p_ == o.p_; }
    bool operator!=(const Field& o) const { return !(*this == o); }

    std::string str() const;

private:
    Kind kind_ = Kind::q_omega;
    std::uint64_t p_ = 0;
    std::uint64_t xi_ = 0;  // prime backend only
};

}  // namespace trikit
