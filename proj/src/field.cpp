#include "trikit/field.hpp"

#include <sstream>

namespace trikit {

namespace {

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
    // p < 2^32 is enforced at field construction, so the product fits.
    return (a * b) % p;
}

bool is_prime_u64(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

/// Floor square root on cpp_int, exact-square test.
std::optional<BigInt> exact_sqrt(const BigInt& n) {
    if (n < 0) return std::nullopt;
    BigInt r = boost::multiprecision::sqrt(n);
    if (r * r == n) return r;
    return std::nullopt;
}

std::optional<Rational> rational_sqrt(const Rational& q) {
    if (q < 0) return std::nullopt;
    auto num = exact_sqrt(boost::multiprecision::numerator(q));
    auto den = exact_sqrt(boost::multiprecision::denominator(q));
    if (!num || !den) return std::nullopt;
    return Rational(*num, *den);
}

}  // namespace

FieldElement FieldElement::make_prime(std::uint64_t p, std::uint64_t residue) {
    FieldElement e;
    e.p_ = p;
    e.r_ = residue % p;
    return e;
}

FieldElement FieldElement::make_qomega(Rational a, Rational b) {
    FieldElement e;
    e.a_ = std::move(a);
    e.b_ = std::move(b);
    return e;
}

void FieldElement::check_same(const FieldElement& o) const {
    if (p_ != o.p_) throw Error("field mismatch between operands");
}

bool FieldElement::is_zero() const {
    return prime_backend() ? r_ == 0 : (a_ == 0 && b_ == 0);
}

bool FieldElement::is_one() const {
    return prime_backend() ? r_ == 1 : (a_ == 1 && b_ == 0);
}

FieldElement FieldElement::operator+(const FieldElement& o) const {
    check_same(o);
    if (prime_backend()) return make_prime(p_, r_ + o.r_);
    return make_qomega(a_ + o.a_, b_ + o.b_);
}

FieldElement FieldElement::operator-(const FieldElement& o) const {
    check_same(o);
    if (prime_backend()) return make_prime(p_, r_ + p_ - o.r_);
    return make_qomega(a_ - o.a_, b_ - o.b_);
}

FieldElement FieldElement::operator-() const {
    if (prime_backend()) return make_prime(p_, p_ - r_);
    return make_qomega(-a_, -b_);
}

FieldElement FieldElement::operator*(const FieldElement& o) const {
    check_same(o);
    if (prime_backend()) return make_prime(p_, mulmod(r_, o.r_, p_));
    // (a1 + b1 w)(a2 + b2 w), w^2 = -1 - w
    return make_qomega(a_ * o.a_ - b_ * o.b_,
                       a_ * o.b_ + b_ * o.a_ - b_ * o.b_);
}

FieldElement FieldElement::inv() const {
    if (is_zero()) throw Error("division by zero");
    if (prime_backend()) {
        // extended Euclid on signed ints; p < 2^32
        long long a = static_cast<long long>(r_), m = static_cast<long long>(p_);
        long long x0 = 0, x1 = 1, b = m;
        while (a > 1) {
            long long q = a / b;
            long long t = b; b = a % b; a = t;
            t = x0; x0 = x1 - q * x0; x1 = t;
        }
        if (x1 < 0) x1 += m;
        return make_prime(p_, static_cast<std::uint64_t>(x1));
    }
    // N(a + bw) = a^2 - ab + b^2;  (a + bw)^-1 = ((a - b) - bw)/N
    Rational n = a_ * a_ - a_ * b_ + b_ * b_;
    return make_qomega((a_ - b_) / n, -b_ / n);
}

FieldElement FieldElement::pow(long long n) const {
    FieldElement base = *this;
    if (n < 0) {
        base = base.inv();
        n = -n;
    }
    FieldElement acc = prime_backend() ? make_prime(p_, 1) : make_qomega(1, 0);
    while (n > 0) {
        if (n & 1) acc = acc * base;
        base = base * base;
        n >>= 1;
    }
    return acc;
}

std::optional<FieldElement> FieldElement::sqrt() const {
    if (is_zero()) return *this;
    if (prime_backend()) {
        for (std::uint64_t c = 1; c <= p_ / 2; ++c)
            if (mulmod(c, c, p_) == r_) return make_prime(p_, c);
        return std::nullopt;
    }
    // Solve (x + yw)^2 = a + bw:  x^2 - y^2 = a,  y(2x - y) = b.
    if (b_ == 0) {
        if (auto x = rational_sqrt(a_)) return make_qomega(*x, 0);
        // y = 2x branch: x^2 = -a/3
        if (auto x = rational_sqrt(-a_ / 3)) return make_qomega(*x, 2 * *x);
        return std::nullopt;
    }
    // With s = x/y:  b s^2 - 2 a s + (a - b) = 0, discriminant a^2 - ab + b^2.
    auto d = rational_sqrt(a_ * a_ - a_ * b_ + b_ * b_);
    if (!d) return std::nullopt;
    for (int sign : {+1, -1}) {
        Rational s = (a_ + sign * *d) / b_;
        Rational den = 2 * s - 1;
        if (den == 0) continue;
        auto y = rational_sqrt(b_ / den);
        if (!y) continue;
        FieldElement cand = make_qomega(s * *y, *y);
        if (cand * cand == *this) return cand;
    }
    return std::nullopt;
}

bool FieldElement::operator==(const FieldElement& o) const {
    if (p_ != o.p_) return false;
    return prime_backend() ? r_ == o.r_ : (a_ == o.a_ && b_ == o.b_);
}

bool FieldElement::prefers_negation() const {
    if (prime_backend()) return r_ > p_ - r_;
    if (a_ != 0) return a_ < 0;
    return b_ < 0;
}

std::string FieldElement::str() const {
    std::ostringstream os;
    if (prime_backend()) {
        os << r_;
    } else {
        os << a_;
        if (b_ != 0) os << (b_ > 0 ? "+" : "") << b_ << "w";
    }
    return os.str();
}

Field Field::make_prime(std::uint64_t p) {
    if (p == 2 || p == 3) throw InputError("characteristic 2 or 3 is not supported");
    if (p >= (std::uint64_t{1} << 32)) throw InputError("p too large (must fit in 32 bits)");
    if (!is_prime_u64(p)) throw InputError("p is not prime");
    if (p % 3 != 1) throw InputError("no primitive cube root");
    Field f;
    f.kind_ = Kind::prime;
    f.p_ = p;
    for (std::uint64_t c = 2; c < p; ++c) {
        if (mulmod(mulmod(c, c, p), c, p) == 1) {
            f.xi_ = c;
            break;
        }
    }
    if (f.xi_ == 0) throw InputError("no primitive cube root");  // unreachable for p ≡ 1 mod 3
    return f;
}

Field Field::make_qomega() {
    Field f;
    f.kind_ = Kind::q_omega;
    return f;
}

FieldElement Field::zero() const {
    return kind_ == Kind::prime ? FieldElement::make_prime(p_, 0)
                                : FieldElement::make_qomega(0, 0);
}

FieldElement Field::one() const {
    return kind_ == Kind::prime ? FieldElement::make_prime(p_, 1)
                                : FieldElement::make_qomega(1, 0);
}

FieldElement Field::from_int(long long n) const {
    if (kind_ == Kind::prime) {
        long long m = n % static_cast<long long>(p_);
        if (m < 0) m += static_cast<long long>(p_);
        return FieldElement::make_prime(p_, static_cast<std::uint64_t>(m));
    }
    return FieldElement::make_qomega(Rational(n), 0);
}

FieldElement Field::xi() const {
    return kind_ == Kind::prime ? FieldElement::make_prime(p_, xi_)
                                : FieldElement::make_qomega(0, 1);
}

FieldElement Field::xi_pow(long long n) const {
    long long m = ((n % 3) + 3) % 3;
    if (m == 0) return one();
    if (m == 1) return xi();
    return xi() * xi();
}

std::string Field::str() const {
    if (kind_ == Kind::prime) return "F_" + std::to_string(p_);
    return "Q(w)";
}

}  // namespace trikit
