#include "trikit/laurent.hpp"

#include <algorithm>
#include <sstream>

namespace trikit {

LaurentJet LaurentJet::zero_mod(const Field& f, int prec) {
    LaurentJet j(f);
    j.prec_ = prec;
    return j;
}

LaurentJet LaurentJet::constant(const Field& f, const FieldElement& c) {
    return monomial(f, c, 0);
}

LaurentJet LaurentJet::monomial(const Field& f, const FieldElement& c, int n) {
    LaurentJet j(f);
    if (!c.is_zero()) j.c_.emplace(n, c);
    return j;
}

void LaurentJet::set(int n, const FieldElement& v) {
    if (v.is_zero())
        c_.erase(n);
    else
        c_[n] = v;
}

void LaurentJet::normalize() {
    for (auto it = c_.begin(); it != c_.end();) {
        if (it->second.is_zero() || (prec_ && it->first >= *prec_))
            it = c_.erase(it);
        else
            ++it;
    }
}

void LaurentJet::check_same_field(const LaurentJet& o) const {
    if (field_ != o.field_) throw Error("field mismatch between jets");
}

FieldElement LaurentJet::coeff(int n) const {
    if (!knows(n)) throw PrecisionError("coefficient beyond jet precision");
    auto it = c_.find(n);
    return it == c_.end() ? field_.zero() : it->second;
}

std::optional<int> LaurentJet::valuation() const {
    if (c_.empty()) return std::nullopt;
    return c_.begin()->first;
}

int LaurentJet::effective_valuation() const {
    if (auto v = valuation()) return *v;
    return *prec_;
}

LaurentJet LaurentJet::operator+(const LaurentJet& o) const {
    check_same_field(o);
    LaurentJet r(field_);
    if (prec_ && o.prec_)
        r.prec_ = std::min(*prec_, *o.prec_);
    else if (prec_)
        r.prec_ = prec_;
    else
        r.prec_ = o.prec_;
    r.c_ = c_;
    for (const auto& [n, v] : o.c_) {
        auto it = r.c_.find(n);
        if (it == r.c_.end())
            r.c_.emplace(n, v);
        else
            it->second += v;
    }
    r.normalize();
    return r;
}

LaurentJet LaurentJet::operator-() const {
    LaurentJet r = *this;
    for (auto& [n, v] : r.c_) v = -v;
    return r;
}

LaurentJet LaurentJet::operator-(const LaurentJet& o) const { return *this + (-o); }

LaurentJet LaurentJet::operator*(const LaurentJet& o) const {
    check_same_field(o);
    // An exact zero annihilates regardless of the other operand's tail.
    if (is_zero() || o.is_zero()) return LaurentJet(field_);

    LaurentJet r(field_);
    std::optional<int> prec;
    if (prec_) prec = *prec_ + o.effective_valuation();
    if (o.prec_) {
        int q = *o.prec_ + effective_valuation();
        prec = prec ? std::min(*prec, q) : q;
    }
    r.prec_ = prec;
    for (const auto& [n, a] : c_) {
        for (const auto& [m, b] : o.c_) {
            if (prec && n + m >= *prec) continue;
            auto it = r.c_.find(n + m);
            if (it == r.c_.end())
                r.c_.emplace(n + m, a * b);
            else
                it->second += a * b;
        }
    }
    r.normalize();
    return r;
}

LaurentJet LaurentJet::scaled(const FieldElement& c) const {
    if (c.is_zero()) return LaurentJet(field_);  // known-zero scalar: exact zero
    LaurentJet r = *this;
    for (auto& [n, v] : r.c_) v *= c;
    r.normalize();
    return r;
}

LaurentJet LaurentJet::shifted(int k) const {
    LaurentJet r(field_);
    if (prec_) r.prec_ = *prec_ + k;
    for (const auto& [n, v] : c_) r.c_.emplace(n + k, v);
    return r;
}

LaurentJet LaurentJet::truncated(int new_prec) const {
    LaurentJet r = *this;
    if (!r.prec_ || *r.prec_ > new_prec) r.prec_ = new_prec;
    r.normalize();
    return r;
}

LaurentJet LaurentJet::invert_unit(int target_prec) const {
    if (is_zero()) throw Error("division by zero");
    if (is_zero_to_prec()) throw PrecisionError("indeterminate valuation");
    int v = *valuation();

    if (exact() && c_.size() == 1)
        return monomial(field_, c_.begin()->second.inv(), -v);

    // result known at exponents < min(target, prec - 2v)
    int out_prec = target_prec;
    if (prec_) out_prec = std::min(out_prec, *prec_ - 2 * v);
    if (out_prec <= -v) throw PrecisionError("precision exhausted in inversion");

    int nterms = out_prec + v;  // coefficients b_{-v} .. b_{-v + nterms - 1}
    FieldElement lead_inv = c_.begin()->second.inv();
    std::vector<FieldElement> b(static_cast<std::size_t>(nterms), field_.zero());
    b[0] = lead_inv;
    for (int m = 1; m < nterms; ++m) {
        FieldElement acc = field_.zero();
        for (int j = 1; j <= m; ++j) {
            auto it = c_.find(v + j);
            if (it != c_.end()) acc += it->second * b[static_cast<std::size_t>(m - j)];
        }
        b[static_cast<std::size_t>(m)] = -(lead_inv * acc);
    }
    LaurentJet r(field_);
    r.prec_ = out_prec;
    for (int m = 0; m < nterms; ++m) r.set(-v + m, b[static_cast<std::size_t>(m)]);
    r.normalize();
    return r;
}

LaurentJet LaurentJet::rho() const {
    LaurentJet r = *this;
    for (auto& [n, v] : r.c_) v *= field_.xi_pow(n);
    return r;
}

FieldElement LaurentJet::residue() const {
    auto it = c_.begin();
    if (it != c_.end() && it->first < 0) throw Error("not integral");
    if (!knows(0)) throw PrecisionError("insufficient precision for residue");
    return coeff(0);
}

bool LaurentJet::is_integral() const {
    auto it = c_.begin();
    if (it != c_.end() && it->first < 0) return false;
    if (prec_ && *prec_ <= 0)
        throw PrecisionError("insufficient precision to decide integrality");
    return true;
}

bool LaurentJet::is_unit_integral() const {
    if (!is_integral()) return false;
    return !residue().is_zero();
}

bool LaurentJet::is_rho_fixed() const {
    for (const auto& [n, v] : c_) {
        (void)v;
        if (n % 3 != 0) return false;
    }
    return true;
}

LaurentJet LaurentJet::t_component(int s) const {
    LaurentJet r(field_);
    if (prec_) {
        // exponent n ≡ s contributes at n - s; the component is known below
        // the least n ≡ s with n >= prec, shifted by -s.
        int p = *prec_;
        int first_unknown = p + ((s - p) % 3 + 3) % 3;
        r.prec_ = first_unknown - s;
    }
    for (const auto& [n, v] : c_)
        if (((n % 3) + 3) % 3 == s) r.set(n - s, v);
    r.normalize();
    return r;
}

bool LaurentJet::equal_to_common_prec(const LaurentJet& o) const {
    check_same_field(o);
    std::optional<int> common;
    if (prec_ && o.prec_)
        common = std::min(*prec_, *o.prec_);
    else if (prec_)
        common = prec_;
    else
        common = o.prec_;
    auto below = [&](int n) { return !common || n < *common; };
    for (const auto& [n, v] : c_)
        if (below(n) && !(o.c_.count(n) && o.c_.at(n) == v)) return false;
    for (const auto& [n, v] : o.c_)
        if (below(n) && !(c_.count(n) && c_.at(n) == v)) return false;
    return true;
}

bool LaurentJet::vanishes_mod(int bound) const {
    if (prec_ && *prec_ < bound)
        throw PrecisionError("precision below requested certificate bound");
    for (const auto& [n, v] : c_) {
        (void)v;
        if (n < bound) return false;
    }
    return true;
}

std::optional<LaurentJet> LaurentJet::sqrt(int target_prec) const {
    if (is_zero()) return *this;
    if (is_zero_to_prec()) throw PrecisionError("indeterminate valuation");
    int v = *valuation();
    if (v % 2 != 0) return std::nullopt;
    auto lead = c_.begin()->second.sqrt();
    if (!lead) return std::nullopt;

    LaurentJet r = monomial(field_, *lead, v / 2);
    FieldElement half = field_.from_int(2).inv();
    // Newton: r <- (r + x/r)/2; accuracy doubles per step.
    for (int it = 0; it < 8; ++it) {
        LaurentJet next = (r + *this * r.invert_unit(target_prec)).scaled(half);
        next = next.truncated(target_prec);
        if (next.equal_to_common_prec(r) && next.prec() == r.prec()) {
            r = next;
            break;
        }
        r = next;
    }
    LaurentJet check = (r * r - *this).truncated(target_prec);
    if (!check.is_zero_to_prec()) return std::nullopt;
    return r;
}

std::string LaurentJet::str() const {
    std::ostringstream os;
    if (c_.empty()) {
        os << "0";
    } else {
        bool first = true;
        for (const auto& [n, v] : c_) {
            if (!first) os << " + ";
            first = false;
            os << "(" << v.str() << ")";
            if (n != 0) os << "u^" << n;
        }
    }
    if (prec_) os << " mod u^" << *prec_;
    return os.str();
}

}  // namespace trikit
