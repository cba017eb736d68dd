#pragma once

#include <map>
#include <optional>
#include <vector>

#include "trikit/field.hpp"

namespace trikit {

/// Default absolute certificate bound: residuals are verified mod u^24.
inline constexpr int kDefaultPrec = 24;

/// Truncated Laurent series ("jet") in u over the coefficient field.
///
/// A jet knows its coefficients exactly at every exponent n < prec and
/// nothing above; prec = nullopt means an exact Laurent polynomial. The
/// order-3 Galois action rho sends the coefficient at u^n to xi^n times
/// itself. Equality and every verification are always "to the common
/// precision"; recomputing at higher precision never changes a previously
/// known coefficient.
class LaurentJet {
public:
    explicit LaurentJet(Field f) : field_(std::move(f)) {}  // exact zero

    static LaurentJet zero(const Field& f) { return LaurentJet(f); }
    static LaurentJet zero_mod(const Field& f, int prec);
    static LaurentJet constant(const Field& f, const FieldElement& c);
    static LaurentJet one(const Field& f) { return constant(f, f.one()); }
    static LaurentJet monomial(const Field& f, const FieldElement& c, int n);
    /// u^n
    static LaurentJet u_pow(const Field& f, int n) { return monomial(f, f.one(), n); }

    const Field& field() const { return field_; }
    /// Exponent bound; nullopt = exact.
    std::optional<int> prec() const { return prec_; }
    bool exact() const { return !prec_.has_value(); }

    /// Known coefficients (normalized: only nonzero entries, all < prec).
    const std::map<int, FieldElement>& coeffs() const { return c_; }

    /// Coefficient at exponent n. Throws PrecisionError if n >= prec.
    FieldElement coeff(int n) const;
    bool knows(int n) const { return !prec_ || n < *prec_; }

    /// Least exponent with nonzero known coefficient, if any.
    std::optional<int> valuation() const;

    /// True iff exactly zero (no known nonzero coefficient and exact).
    bool is_zero() const { return exact() && c_.empty(); }
    /// True iff no nonzero coefficient is known (may still have unknown tail).
    bool is_zero_to_prec() const { return c_.empty(); }

    LaurentJet operator+(const LaurentJet& o) const;
    LaurentJet operator-(const LaurentJet& o) const;
    LaurentJet operator-() const;
    LaurentJet operator*(const LaurentJet& o) const;
    LaurentJet& operator+=(const LaurentJet& o) { return *this = *this + o; }
    LaurentJet& operator-=(const LaurentJet& o) { return *this = *this - o; }
    LaurentJet& operator*=(const LaurentJet& o) { return *this = *this * o; }

    LaurentJet scaled(const FieldElement& c) const;
    /// Multiplication by u^k.
    LaurentJet shifted(int k) const;
    /// Forgets knowledge at exponents >= new_prec (never adds knowledge).
    LaurentJet truncated(int new_prec) const;

    /// Inverse to the stated absolute precision. The result is exact when
    /// the input is an exact monomial. Errors: "division by zero" on exact
    /// zero, PrecisionError("indeterminate valuation") when zero to finite
    /// precision.
    LaurentJet invert_unit(int target_prec) const;

    /// Galois action rho: u -> xi u (coefficientwise a_n -> xi^n a_n).
    LaurentJet rho() const;
    LaurentJet theta() const { return rho().rho(); }

    /// Coefficient at exponent 0. Errors: "not integral" when a nonzero
    /// negative-exponent coefficient is known; PrecisionError when the
    /// constant term is not determined.
    FieldElement residue() const;

    /// No nonzero coefficient at negative exponents. PrecisionError when the
    /// known range is all-zero below prec and prec <= 0.
    bool is_integral() const;
    bool is_unit_integral() const;

    /// True iff rho(x) = x on the known range (all exponents div. by 3).
    bool is_rho_fixed() const;

    /// The k((t))-component s of x, s in {0,1,2}: sum over n ≡ s (mod 3) of
    /// a_n u^(n-s). Components have all exponents divisible by 3.
    LaurentJet t_component(int s) const;

    /// Equality of all coefficients below min(prec, o.prec).
    bool equal_to_common_prec(const LaurentJet& o) const;

    /// True iff every known coefficient below bound vanishes. Throws
    /// PrecisionError if the jet's knowledge does not reach bound.
    bool vanishes_mod(int bound) const;

    /// Square root as a jet when the valuation is even and the leading
    /// coefficient is a square; nullopt otherwise.
    std::optional<LaurentJet> sqrt(int target_prec) const;

    bool operator==(const LaurentJet& o) const {
        return field_ == o.field_ && prec_ == o.prec_ && c_ == o.c_;
    }

    std::string str() const;

private:
    Field field_;
    std::map<int, FieldElement> c_;
    std::optional<int> prec_;

    void set(int n, const FieldElement& v);
    void normalize();
    void check_same_field(const LaurentJet& o) const;
    /// Valuation if nonzero, else prec (callers guarantee not exact zero).
    int effective_valuation() const;
};

}  // namespace trikit
