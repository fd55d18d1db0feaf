#ifndef POLYFORM_NUMERIC_HPP
#define POLYFORM_NUMERIC_HPP

// Modular number theory used throughout the polynomial stack: extended
// Euclid, balanced residues, Chinese remaindering, rational reconstruction,
// coefficient domains with a prime-power cache, and the descending list of
// word-sized primes.

#include <cstdint>
#include <map>
#include <mutex>
#include <string>
#include <tuple>
#include <vector>

#include "polyform/bigint.hpp"
#include "polyform/errors.hpp"

namespace polyform {

struct ExtEuclidResult {
    BigInt g;   // gcd(n1, n2) > 0
    BigInt x1;  // g = x1*n1 + x2*n2
    BigInt x2;
};

// Extended Euclidean algorithm. g > 0 and g = x1*n1 + x2*n2.
inline ExtEuclidResult ext_euclid(const BigInt& n1, const BigInt& n2) {
    if (n1.is_zero() && n2.is_zero())
        throw DomainError("ext_euclid: both arguments zero");
    BigInt r0 = n1, r1 = n2;
    BigInt s0 = 1, s1 = 0;
    BigInt t0 = 0, t1 = 1;
    while (!r1.is_zero()) {
        BigInt q = BigInt::fdiv_q(r0, r1);
        BigInt r2 = r0 - q * r1;
        r0 = std::move(r1);
        r1 = std::move(r2);
        BigInt s2 = s0 - q * s1;
        s0 = std::move(s1);
        s1 = std::move(s2);
        BigInt t2 = t0 - q * t1;
        t0 = std::move(t1);
        t1 = std::move(t2);
    }
    if (r0.sign() < 0) {
        r0 = -r0;
        s0 = -s0;
        t0 = -t0;
    }
    return {std::move(r0), std::move(s0), std::move(t0)};
}

// Balanced residue: r == a (mod m) with -m/2 < r <= m/2.
inline BigInt balanced_mod(const BigInt& a, const BigInt& m) {
    if (m <= BigInt(1)) throw DomainError("balanced_mod: modulus must exceed 1");
    BigInt r = BigInt::fdiv_r(a, m);
    if (BigInt(2) * r > m) r -= m;
    return r;
}

// Combine residues modulo two coprime moduli into the balanced residue
// modulo their product.
inline BigInt crt_pair(const BigInt& r1, const BigInt& m1, const BigInt& r2,
                       const BigInt& m2) {
    ExtEuclidResult e = ext_euclid(m1, m2);
    if (!e.g.is_one()) throw DomainError("crt_pair: moduli are not coprime");
    // r1*(x2*m2) + r2*(x1*m1) is r1 mod m1 and r2 mod m2.
    BigInt m = m1 * m2;
    BigInt r = r1 * e.x2 * m2 + r2 * e.x1 * m1;
    return balanced_mod(r, m);
}

// Rational reconstruction: the unique p/q with |p|, q < sqrt(m),
// gcd(q, m) = 1 and p == a*q (mod m), found by stopping the extended
// Euclid remainder sequence below sqrt(m). Throws ReconstructionError
// when no such fraction exists; callers retry with a larger modulus.
inline BigRat make_rational(const BigInt& a_in, const BigInt& m) {
    if (m <= BigInt(1)) throw DomainError("make_rational: modulus must exceed 1");
    BigInt a = BigInt::fdiv_r(a_in, m);
    BigInt bound = BigInt::isqrt(m);
    BigInt r0 = m, r1 = a;
    BigInt t0 = 0, t1 = 1;
    while (r1 >= bound) {
        BigInt q = BigInt::fdiv_q(r0, r1);
        BigInt r2 = r0 - q * r1;
        r0 = std::move(r1);
        r1 = std::move(r2);
        BigInt t2 = t0 - q * t1;
        t0 = std::move(t1);
        t1 = std::move(t2);
    }
    BigInt p = std::move(r1), q = std::move(t1);
    if (q.sign() < 0) {
        p = -p;
        q = -q;
    }
    if (q.is_zero() || p.abs() >= bound || q >= bound ||
        !BigInt::gcd(q, m).is_one() ||
        !BigInt::fdiv_r(p - a * q, m).is_zero())
        throw ReconstructionError("make_rational: no fraction below sqrt(" +
                                  m.to_string() + ")");
    BigInt g = BigInt::gcd(p.abs(), q);
    return BigRat(BigInt::divexact(p, g), BigInt::divexact(q, g));
}

// Deterministic Miller-Rabin, valid for all n < 2^64.
inline bool is_prime_u64(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull,
                            23ull, 29ull, 31ull, 37ull}) {
        if (n == p) return true;
        if (n % p == 0) return false;
    }
    auto mulmod = [](std::uint64_t a, std::uint64_t b, std::uint64_t m) {
        return static_cast<std::uint64_t>(
            static_cast<unsigned __int128>(a) * b % m);
    };
    auto powmod = [&](std::uint64_t a, std::uint64_t e, std::uint64_t m) {
        std::uint64_t r = 1;
        a %= m;
        while (e) {
            if (e & 1) r = mulmod(r, a, m);
            a = mulmod(a, a, m);
            e >>= 1;
        }
        return r;
    };
    std::uint64_t d = n - 1;
    int s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    // This base set is a proven witness set for n < 2^64.
    for (std::uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull,
                            23ull, 29ull, 31ull, 37ull}) {
        std::uint64_t x = powmod(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool witness = true;
        for (int i = 1; i < s; ++i) {
            x = mulmod(x, x, n);
            if (x == n - 1) {
                witness = false;
                break;
            }
        }
        if (witness) return false;
    }
    return true;
}

// Descending, memoized list of word-sized primes starting at a configurable
// bound (inclusive). prime(1) is the largest prime <= start_bound.
class PrimeList {
  public:
    static constexpr std::uint64_t kDefaultStartBound = 2147483587ull;

    explicit PrimeList(std::uint64_t start_bound = kDefaultStartBound,
                       std::uint64_t min_prime = 3)
        : next_candidate_(start_bound), min_prime_(min_prime) {}

    std::uint64_t prime(std::size_t n) {
        if (n == 0) throw DomainError("prime: index starts at 1");
        while (primes_.size() < n) extend();
        return primes_[n - 1];
    }

    std::size_t computed() const { return primes_.size(); }

  private:
    void extend() {
        while (next_candidate_ >= min_prime_) {
            std::uint64_t c = next_candidate_--;
            if (is_prime_u64(c)) {
                primes_.push_back(c);
                return;
            }
        }
        throw ResourceError("prime list exhausted below minimum allowed prime");
    }

    std::vector<std::uint64_t> primes_;  // strictly descending
    std::uint64_t next_candidate_;
    std::uint64_t min_prime_;
};

// Coefficient domain tag: integers, a prime field, or a prime-power ring.
// Prime powers are cached in a shared table so repeated lifts do not
// recompute them.
class ModDomain {
  public:
    enum class Kind { Integers, Mod, ModPow };

    ModDomain() : kind_(Kind::Integers) {}

    static ModDomain integers() { return ModDomain(); }
    static ModDomain mod(std::uint64_t p) {
        ModDomain d;
        d.kind_ = Kind::Mod;
        d.p_ = p;
        d.k_ = 1;
        d.modulus_ = BigInt(static_cast<unsigned long>(p));
        return d;
    }
    static ModDomain mod_pow(std::uint64_t p, unsigned k) {
        if (k == 0) throw DomainError("ModDomain: exponent must be >= 1");
        if (k == 1) return mod(p);
        ModDomain d;
        d.kind_ = Kind::ModPow;
        d.p_ = p;
        d.k_ = k;
        d.modulus_ = cached_prime_power(p, k);
        return d;
    }

    Kind kind() const { return kind_; }
    bool is_integers() const { return kind_ == Kind::Integers; }
    bool is_field() const { return kind_ == Kind::Mod; }
    std::uint64_t p() const { return p_; }
    unsigned k() const { return k_; }
    const BigInt& modulus() const { return modulus_; }

    // Least non-negative representative; identity over the integers.
    BigInt reduce(const BigInt& a) const {
        if (kind_ == Kind::Integers) return a;
        return BigInt::fdiv_r(a, modulus_);
    }
    BigInt balanced(const BigInt& a) const {
        if (kind_ == Kind::Integers) return a;
        return balanced_mod(a, modulus_);
    }

    friend bool operator==(const ModDomain& a, const ModDomain& b) {
        return a.kind_ == b.kind_ && a.p_ == b.p_ && a.k_ == b.k_;
    }
    friend bool operator!=(const ModDomain& a, const ModDomain& b) {
        return !(a == b);
    }

    // Guarded table; entries are never removed, so returned references
    // stay valid.
    static const BigInt& cached_prime_power(std::uint64_t p, unsigned k) {
        static std::mutex mu;
        static std::map<std::pair<std::uint64_t, unsigned>, BigInt> cache;
        std::lock_guard<std::mutex> lock(mu);
        auto key = std::make_pair(p, k);
        auto it = cache.find(key);
        if (it == cache.end())
            it = cache.emplace(key, BigInt::pow(BigInt(static_cast<unsigned long>(p)), k)).first;
        return it->second;
    }

  private:
    Kind kind_;
    std::uint64_t p_ = 0;
    unsigned k_ = 1;
    BigInt modulus_;
};

}  // namespace polyform

#endif
