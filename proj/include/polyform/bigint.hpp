#ifndef POLYFORM_BIGINT_HPP
#define POLYFORM_BIGINT_HPP

// Arbitrary-precision integers and rationals on top of GMP's mpz/mpq,
// wrapped as value types. Canonical forms: no leading zero limbs (GMP
// guarantees this), zero has positive sign; rationals keep den > 0 and
// gcd(|num|, den) = 1.

#include <gmp.h>

#include <cstdint>
#include <iosfwd>
#include <ostream>
#include <string>
#include <utility>

#include "polyform/errors.hpp"

namespace polyform {

class BigInt {
  public:
    BigInt() { mpz_init(z_); }
    BigInt(int v) : BigInt(static_cast<long>(v)) {}
    BigInt(long v) { mpz_init_set_si(z_, v); }
    BigInt(unsigned long v) { mpz_init_set_ui(z_, v); }
    BigInt(long long v) {
        mpz_init(z_);
        static_assert(sizeof(long) == sizeof(long long), "LP64 expected");
        mpz_set_si(z_, static_cast<long>(v));
    }
    explicit BigInt(const std::string& s) {
        if (mpz_init_set_str(z_, s.c_str(), 10) != 0) {
            mpz_clear(z_);
            throw DomainError("BigInt: cannot parse \"" + s + "\"");
        }
    }

    BigInt(const BigInt& o) { mpz_init_set(z_, o.z_); }
    BigInt(BigInt&& o) noexcept {
        mpz_init(z_);
        mpz_swap(z_, o.z_);
    }
    BigInt& operator=(const BigInt& o) {
        if (this != &o) mpz_set(z_, o.z_);
        return *this;
    }
    BigInt& operator=(BigInt&& o) noexcept {
        mpz_swap(z_, o.z_);
        return *this;
    }
    ~BigInt() { mpz_clear(z_); }

    // -- queries ---------------------------------------------------------
    int sign() const { return mpz_sgn(z_); }
    bool is_zero() const { return mpz_sgn(z_) == 0; }
    bool is_one() const { return mpz_cmp_ui(z_, 1) == 0; }
    bool is_neg_one() const { return mpz_cmp_si(z_, -1) == 0; }
    bool odd() const { return mpz_odd_p(z_) != 0; }
    bool fits_long() const { return mpz_fits_slong_p(z_) != 0; }
    long to_long() const {
        if (!fits_long()) throw OverflowError("BigInt: does not fit a machine word");
        return mpz_get_si(z_);
    }
    double to_double() const { return mpz_get_d(z_); }
    size_t bit_length() const { return mpz_sizeinbase(z_, 2); }
    std::string to_string() const {
        char* s = mpz_get_str(nullptr, 10, z_);
        std::string out(s);
        void (*freefn)(void*, size_t);
        mp_get_memory_functions(nullptr, nullptr, &freefn);
        freefn(s, out.size() + 1);
        return out;
    }

    // -- arithmetic ------------------------------------------------------
    friend BigInt operator+(const BigInt& a, const BigInt& b) {
        BigInt r;
        mpz_add(r.z_, a.z_, b.z_);
        return r;
    }
    friend BigInt operator-(const BigInt& a, const BigInt& b) {
        BigInt r;
        mpz_sub(r.z_, a.z_, b.z_);
        return r;
    }
    friend BigInt operator*(const BigInt& a, const BigInt& b) {
        BigInt r;
        mpz_mul(r.z_, a.z_, b.z_);
        return r;
    }
    // Truncated division, C semantics. Use divexact/fdiv for other needs.
    friend BigInt operator/(const BigInt& a, const BigInt& b) {
        if (b.is_zero()) throw DomainError("BigInt: division by zero");
        BigInt r;
        mpz_tdiv_q(r.z_, a.z_, b.z_);
        return r;
    }
    friend BigInt operator%(const BigInt& a, const BigInt& b) {
        if (b.is_zero()) throw DomainError("BigInt: division by zero");
        BigInt r;
        mpz_tdiv_r(r.z_, a.z_, b.z_);
        return r;
    }
    BigInt operator-() const {
        BigInt r;
        mpz_neg(r.z_, z_);
        return r;
    }
    BigInt& operator+=(const BigInt& b) {
        mpz_add(z_, z_, b.z_);
        return *this;
    }
    BigInt& operator-=(const BigInt& b) {
        mpz_sub(z_, z_, b.z_);
        return *this;
    }
    BigInt& operator*=(const BigInt& b) {
        mpz_mul(z_, z_, b.z_);
        return *this;
    }

    BigInt abs() const {
        BigInt r;
        mpz_abs(r.z_, z_);
        return r;
    }

    // Exact division; the caller guarantees divisibility.
    static BigInt divexact(const BigInt& a, const BigInt& b) {
        if (b.is_zero()) throw DomainError("BigInt: division by zero");
        BigInt r;
        mpz_divexact(r.z_, a.z_, b.z_);
        return r;
    }
    bool divisible_by(const BigInt& b) const {
        if (b.is_zero()) return is_zero();
        return mpz_divisible_p(z_, b.z_) != 0;
    }
    // Floor division/remainder: remainder has the divisor's sign stripped, in [0, |b|).
    static BigInt fdiv_q(const BigInt& a, const BigInt& b) {
        BigInt r;
        mpz_fdiv_q(r.z_, a.z_, b.z_);
        return r;
    }
    static BigInt fdiv_r(const BigInt& a, const BigInt& b) {
        BigInt r;
        mpz_fdiv_r(r.z_, a.z_, b.z_);
        return r;
    }

    static BigInt gcd(const BigInt& a, const BigInt& b) {
        BigInt r;
        mpz_gcd(r.z_, a.z_, b.z_);
        return r;
    }
    static BigInt lcm(const BigInt& a, const BigInt& b) {
        BigInt r;
        mpz_lcm(r.z_, a.z_, b.z_);
        return r;
    }
    static BigInt pow(const BigInt& base, unsigned long e) {
        BigInt r;
        mpz_pow_ui(r.z_, base.z_, e);
        return r;
    }
    static BigInt powmod(const BigInt& base, const BigInt& e, const BigInt& m) {
        BigInt r;
        mpz_powm(r.z_, base.z_, e.z_, m.z_);
        return r;
    }
    // Floor of the square root.
    static BigInt isqrt(const BigInt& a) {
        if (a.sign() < 0) throw DomainError("BigInt: isqrt of negative value");
        BigInt r;
        mpz_sqrt(r.z_, a.z_);
        return r;
    }
    // Modular inverse; throws when gcd(a, m) != 1.
    static BigInt invmod(const BigInt& a, const BigInt& m) {
        BigInt r;
        if (mpz_invert(r.z_, a.z_, m.z_) == 0)
            throw DomainError("BigInt: no modular inverse");
        return r;
    }

    friend int cmp(const BigInt& a, const BigInt& b) { return mpz_cmp(a.z_, b.z_); }
    friend bool operator==(const BigInt& a, const BigInt& b) { return cmp(a, b) == 0; }
    friend bool operator!=(const BigInt& a, const BigInt& b) { return cmp(a, b) != 0; }
    friend bool operator<(const BigInt& a, const BigInt& b) { return cmp(a, b) < 0; }
    friend bool operator<=(const BigInt& a, const BigInt& b) { return cmp(a, b) <= 0; }
    friend bool operator>(const BigInt& a, const BigInt& b) { return cmp(a, b) > 0; }
    friend bool operator>=(const BigInt& a, const BigInt& b) { return cmp(a, b) >= 0; }

    friend std::ostream& operator<<(std::ostream& os, const BigInt& a) {
        return os << a.to_string();
    }

    mpz_srcptr raw() const { return z_; }
    mpz_ptr raw() { return z_; }

  private:
    mpz_t z_;
};

class BigRat {
  public:
    BigRat() { mpq_init(q_); }
    BigRat(long v) {
        mpq_init(q_);
        mpq_set_si(q_, v, 1);
    }
    BigRat(int v) : BigRat(static_cast<long>(v)) {}
    BigRat(const BigInt& n) {
        mpq_init(q_);
        mpq_set_z(q_, n.raw());
    }
    BigRat(const BigInt& n, const BigInt& d) {
        if (d.is_zero()) throw DomainError("BigRat: zero denominator");
        mpq_init(q_);
        mpz_set(mpq_numref(q_), n.raw());
        mpz_set(mpq_denref(q_), d.raw());
        mpq_canonicalize(q_);
    }

    BigRat(const BigRat& o) {
        mpq_init(q_);
        mpq_set(q_, o.q_);
    }
    BigRat(BigRat&& o) noexcept {
        mpq_init(q_);
        mpq_swap(q_, o.q_);
    }
    BigRat& operator=(const BigRat& o) {
        if (this != &o) mpq_set(q_, o.q_);
        return *this;
    }
    BigRat& operator=(BigRat&& o) noexcept {
        mpq_swap(q_, o.q_);
        return *this;
    }
    ~BigRat() { mpq_clear(q_); }

    int sign() const { return mpq_sgn(q_); }
    bool is_zero() const { return mpq_sgn(q_) == 0; }
    bool is_one() const { return mpq_cmp_ui(q_, 1, 1) == 0; }
    bool is_integer() const { return mpz_cmp_ui(mpq_denref(q_), 1) == 0; }
    BigInt num() const {
        BigInt r;
        mpz_set(r.raw(), mpq_numref(q_));
        return r;
    }
    BigInt den() const {
        BigInt r;
        mpz_set(r.raw(), mpq_denref(q_));
        return r;
    }

    friend BigRat operator+(const BigRat& a, const BigRat& b) {
        BigRat r;
        mpq_add(r.q_, a.q_, b.q_);
        return r;
    }
    friend BigRat operator-(const BigRat& a, const BigRat& b) {
        BigRat r;
        mpq_sub(r.q_, a.q_, b.q_);
        return r;
    }
    friend BigRat operator*(const BigRat& a, const BigRat& b) {
        BigRat r;
        mpq_mul(r.q_, a.q_, b.q_);
        return r;
    }
    friend BigRat operator/(const BigRat& a, const BigRat& b) {
        if (b.is_zero()) throw DomainError("BigRat: division by zero");
        BigRat r;
        mpq_div(r.q_, a.q_, b.q_);
        return r;
    }
    BigRat operator-() const {
        BigRat r;
        mpq_neg(r.q_, q_);
        return r;
    }
    BigRat& operator+=(const BigRat& b) {
        mpq_add(q_, q_, b.q_);
        return *this;
    }
    BigRat& operator*=(const BigRat& b) {
        mpq_mul(q_, q_, b.q_);
        return *this;
    }
    BigRat inverse() const {
        if (is_zero()) throw DomainError("BigRat: inverse of zero");
        BigRat r;
        mpq_inv(r.q_, q_);
        return r;
    }
    BigRat abs() const {
        BigRat r;
        mpq_abs(r.q_, q_);
        return r;
    }

    friend int cmp(const BigRat& a, const BigRat& b) { return mpq_cmp(a.q_, b.q_); }
    friend bool operator==(const BigRat& a, const BigRat& b) { return mpq_equal(a.q_, b.q_) != 0; }
    friend bool operator!=(const BigRat& a, const BigRat& b) { return !(a == b); }
    friend bool operator<(const BigRat& a, const BigRat& b) { return cmp(a, b) < 0; }
    friend bool operator>(const BigRat& a, const BigRat& b) { return cmp(a, b) > 0; }

    // "p" when integral, "p/q" otherwise.
    std::string to_string() const {
        std::string s = num().to_string();
        if (!is_integer()) s += "/" + den().to_string();
        return s;
    }
    static BigRat from_string(const std::string& s) {
        auto slash = s.find('/');
        if (slash == std::string::npos) return BigRat(BigInt(s));
        return BigRat(BigInt(s.substr(0, slash)), BigInt(s.substr(slash + 1)));
    }

    friend std::ostream& operator<<(std::ostream& os, const BigRat& a) {
        return os << a.to_string();
    }

  private:
    mpq_t q_;
};

}  // namespace polyform

#endif
