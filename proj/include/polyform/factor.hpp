#ifndef POLYFORM_FACTOR_HPP
#define POLYFORM_FACTOR_HPP

// Polynomial factorization over the integers. Univariate: Berlekamp over
// Z/p, quadratic Hensel lifting to p^k past the coefficient bound, and
// brute-force recombination of spurious modular factors. Multivariate:
// evaluation of all but the main variable at small integers, Wang's
// leading-coefficient distribution, coefficient predetermination by
// equating expansions, and ideal-adic Hensel lifting of the variables.
// A bounded cache keyed by canonical form short-circuits repeats.

#include <algorithm>
#include <list>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "polyform/bigint.hpp"
#include "polyform/errors.hpp"
#include "polyform/gcd.hpp"
#include "polyform/numeric.hpp"
#include "polyform/polynomial.hpp"

namespace polyform {

struct FactoredPolynomial {
    BigRat content;  // signed rational content; 0 only with zero_flag
    std::vector<std::pair<Polynomial, unsigned>> factors;  // primitive irreducible, multiplicity
    bool zero_flag = false;

    // Reassemble content * prod(factor^mult); the master identity.
    Polynomial expand(const VarTablePtr& vars) const {
        if (zero_flag) return Polynomial(vars);
        Polynomial r = Polynomial::constant(content.num(), vars);
        for (const auto& [f, m] : factors) r = r * f.pow(m);
        if (!content.den().is_one())
            throw DomainError("FactoredPolynomial: rational content does not expand over Z");
        return r;
    }

    // Canonical ordering: constants first, then ascending by degree and
    // canonical polynomial comparison.
    void sort_factors() {
        std::sort(factors.begin(), factors.end(),
                  [](const auto& a, const auto& b) {
                      long da = a.first.total_degree(), db = b.first.total_degree();
                      if (da != db) return da < db;
                      int c = cmp(a.first, b.first);
                      if (c != 0) return c < 0;
                      return a.second < b.second;
                  });
    }

    friend bool operator==(const FactoredPolynomial& a, const FactoredPolynomial& b) {
        return a.zero_flag == b.zero_flag && a.content == b.content &&
               a.factors == b.factors;
    }
};

// ---------------------------------------------------------------------------
// Squarefree decomposition (Yun), multivariate via content splitting.
// ---------------------------------------------------------------------------

/** Yun decomposition of a primitive integer polynomial.
 *
 *  Returns pairwise coprime squarefree parts with multiplicities whose
 *  product reconstructs the input. The content with respect to the chosen
 *  variable is split off and decomposed recursively, so factors free of
 *  that variable are not lost.
 */
inline std::vector<std::pair<Polynomial, unsigned>> squarefree_decompose(
    const Polynomial& f_in) {
    if (f_in.is_zero()) throw DomainError("squarefree_decompose: zero input");
    Polynomial f = f_in.primitive_part();
    std::vector<std::pair<Polynomial, unsigned>> out;
    if (f.is_constant()) return out;

    std::size_t x = f.used_vars().front();
    Polynomial cont = content_wrt(f, x);
    if (!cont.is_constant()) {
        Polynomial pp = f / cont;
        auto rest = squarefree_decompose(cont);
        out = squarefree_decompose(pp);
        out.insert(out.end(), rest.begin(), rest.end());
        // Same-multiplicity parts from disjoint variable sets stay separate
        // factors; merge by multiplicity for a canonical list.
        std::map<unsigned, Polynomial> merged;
        for (auto& [p, m] : out) {
            auto it = merged.find(m);
            if (it == merged.end())
                merged.emplace(m, p);
            else
                it->second = it->second * p;
        }
        out.clear();
        for (auto& [m, p] : merged) out.push_back({p, m});
        return out;
    }

    Polynomial df = f.derivative(x);
    Polynomial u = gcd(f, df);
    Polynomial v = f / u;
    Polynomial w = df / u;
    for (unsigned i = 1;; ++i) {
        Polynomial z = w - v.derivative(x);
        if (z.is_zero()) {
            if (!v.is_constant()) out.push_back({v.primitive_part(), i});
            break;
        }
        Polynomial h = gcd(v, z);
        if (!h.is_constant()) out.push_back({h.primitive_part(), i});
        v = v / h;
        w = z / h;
    }
    return out;
}

// ---------------------------------------------------------------------------
// Berlekamp over Z/p (dense univariate).
// ---------------------------------------------------------------------------

/** Berlekamp factorization of a squarefree monic-izable polynomial mod p.
 *
 *  Builds the Q matrix (Q_ij = coefficient of x^j in x^(ip) mod f), finds a
 *  basis of the fixed space of the Frobenius map by Gaussian elimination on
 *  (Q - I)^T, and splits f with gcd(f, v - s) over all basis vectors v and
 *  shifts s. Returns the complete list of monic irreducible factors.
 */
inline std::vector<DenseUniPoly> berlekamp_modp(const DenseUniPoly& f_in) {
    const ModDomain& dom = f_in.domain();
    if (!dom.is_field()) throw DomainError("berlekamp_modp: prime field required");
    DenseUniPoly f = f_in.monic();
    long n = f.degree();
    if (n <= 0) return {};
    if (n == 1) return {f};
    {
        DenseUniPoly g = gcd_univariate_modp(f, f.derivative());
        if (g.degree() != 0)
            throw DomainError("berlekamp_modp: input is not squarefree mod p");
    }
    const BigInt p = dom.modulus();
    const std::uint64_t pw = dom.p();

    // Row i of Q: x^(i*p) mod f, built by repeated multiplication by x.
    std::vector<std::vector<BigInt>> Q(n, std::vector<BigInt>(n, BigInt(0)));
    std::vector<BigInt> d(n, BigInt(0));
    d[0] = BigInt(1);
    for (long i = 0; i <= (n - 1) * static_cast<long>(pw); ++i) {
        if (i % static_cast<long>(pw) == 0) Q[i / pw] = d;
        std::vector<BigInt> e(n);
        for (long j = 0; j < n; ++j)
            e[j] = dom.reduce((j > 0 ? d[j - 1] : BigInt(0)) - d[n - 1] * f.coeff(j));
        d = std::move(e);
    }

    // Null space basis of (Q - I)^T.
    std::vector<std::vector<BigInt>> M(n, std::vector<BigInt>(n));
    for (long i = 0; i < n; ++i)
        for (long j = 0; j < n; ++j)
            M[j][i] = dom.reduce(Q[i][j] - (i == j ? BigInt(1) : BigInt(0)));
    std::vector<long> pivot_col(n, -1);
    long rank = 0;
    for (long col = 0; col < n && rank < n; ++col) {
        long piv = -1;
        for (long r = rank; r < n; ++r)
            if (!M[r][col].is_zero()) {
                piv = r;
                break;
            }
        if (piv < 0) continue;
        std::swap(M[piv], M[rank]);
        BigInt inv = BigInt::invmod(M[rank][col], p);
        for (long c = 0; c < n; ++c) M[rank][c] = dom.reduce(M[rank][c] * inv);
        for (long r = 0; r < n; ++r) {
            if (r == rank || M[r][col].is_zero()) continue;
            BigInt fac = M[r][col];
            for (long c = 0; c < n; ++c)
                M[r][c] = dom.reduce(M[r][c] - fac * M[rank][c]);
        }
        pivot_col[rank++] = col;
    }
    std::vector<std::vector<BigInt>> basis;
    std::vector<bool> is_pivot(n, false);
    for (long r = 0; r < rank; ++r) is_pivot[pivot_col[r]] = true;
    for (long col = 0; col < n; ++col) {
        if (is_pivot[col]) continue;
        std::vector<BigInt> v(n, BigInt(0));
        v[col] = BigInt(1);
        for (long r = 0; r < rank; ++r)
            v[pivot_col[r]] = dom.reduce(-M[r][col]);
        basis.push_back(std::move(v));
    }
    std::size_t num_factors = basis.size();  // includes the constant vector

    std::vector<DenseUniPoly> facs{f};
    for (const auto& v : basis) {
        if (facs.size() == num_factors) break;
        DenseUniPoly vp(dom, v);
        for (std::uint64_t s = 0; s < pw && facs.size() < num_factors; ++s) {
            DenseUniPoly shifted = vp - DenseUniPoly::constant(BigInt(static_cast<long>(s)), dom);
            for (std::size_t j = 0; j < facs.size() && facs.size() < num_factors; ++j) {
                if (facs[j].degree() <= 1) continue;
                DenseUniPoly g = gcd_univariate_modp(facs[j], shifted);
                if (g.degree() > 0 && g.degree() < facs[j].degree()) {
                    facs[j] = DenseUniPoly::divmod(facs[j], g).first.monic();
                    facs.push_back(g);
                }
            }
        }
    }
    std::sort(facs.begin(), facs.end(), [](const DenseUniPoly& a, const DenseUniPoly& b) {
        if (a.degree() != b.degree()) return a.degree() < b.degree();
        for (long i = a.degree(); i >= 0; --i) {
            int c = cmp(a.coeff(i), b.coeff(i));
            if (c != 0) return c < 0;
        }
        return false;
    });
    return facs;
}

namespace detail {

// Exact division over Z; nullopt when not divisible.
inline std::optional<DenseUniPoly> try_divide_exact_z(const DenseUniPoly& a,
                                                      const DenseUniPoly& b) {
    if (b.is_zero()) throw DomainError("division by zero");
    if (a.is_zero()) return a;
    if (a.degree() < b.degree()) return std::nullopt;
    std::vector<BigInt> r(a.coeffs());
    std::vector<BigInt> q(a.degree() - b.degree() + 1, BigInt(0));
    for (long i = a.degree() - b.degree(); i >= 0; --i) {
        BigInt top = r[i + b.degree()];
        if (top.is_zero()) continue;
        if (!top.divisible_by(b.lc())) return std::nullopt;
        BigInt qc = BigInt::divexact(top, b.lc());
        q[i] = qc;
        for (long j = 0; j <= b.degree(); ++j) r[i + j] -= qc * b.coeff(j);
    }
    for (const auto& c : r)
        if (!c.is_zero()) return std::nullopt;
    return DenseUniPoly(ModDomain::integers(), std::move(q));
}

// Extended Euclid mod p on dense univariate polynomials: s*a + t*b = 1.
inline std::pair<DenseUniPoly, DenseUniPoly> ext_euclid_modp(const DenseUniPoly& a,
                                                             const DenseUniPoly& b) {
    const ModDomain& dom = a.domain();
    DenseUniPoly r0 = a, r1 = b;
    DenseUniPoly s0 = DenseUniPoly::constant(BigInt(1), dom), s1(dom);
    DenseUniPoly t0(dom), t1 = DenseUniPoly::constant(BigInt(1), dom);
    while (!r1.is_zero()) {
        auto [q, r2] = DenseUniPoly::divmod(r0, r1);
        DenseUniPoly s2 = s0 - q * s1;
        DenseUniPoly t2 = t0 - q * t1;
        r0 = std::move(r1);
        r1 = std::move(r2);
        s0 = std::move(s1);
        s1 = std::move(s2);
        t0 = std::move(t1);
        t1 = std::move(t2);
    }
    if (r0.degree() != 0)
        throw DomainError("ext_euclid_modp: arguments are not coprime");
    BigInt inv = BigInt::invmod(r0.lc(), dom.modulus());
    return {s0 * inv, t0 * inv};
}

inline DenseUniPoly reduce_dense(const DenseUniPoly& a, const ModDomain& dom) {
    std::vector<BigInt> c;
    c.reserve(a.coeffs().size());
    for (const auto& v : a.coeffs()) c.push_back(dom.reduce(v));
    return DenseUniPoly(dom, std::move(c));
}

inline DenseUniPoly balanced_dense(const DenseUniPoly& a) {
    std::vector<BigInt> c;
    c.reserve(a.coeffs().size());
    for (const auto& v : a.coeffs()) c.push_back(a.domain().balanced(v));
    return DenseUniPoly(ModDomain::integers(), std::move(c));
}

/** One quadratic Hensel step: from modulus m to m^2.
 *
 *  Given f = g*h and s*g + t*h = 1 (mod m) with h monic, produces the
 *  unique g*, h*, s*, t* with the same relations mod m^2.
 */
struct HenselPair {
    DenseUniPoly g, h, s, t;
};

inline HenselPair hensel_step(const DenseUniPoly& f, const HenselPair& in,
                              const ModDomain& dom2) {
    DenseUniPoly g = reduce_dense(in.g, dom2), h = reduce_dense(in.h, dom2);
    DenseUniPoly s = reduce_dense(in.s, dom2), t = reduce_dense(in.t, dom2);
    DenseUniPoly e = reduce_dense(f, dom2) - g * h;
    auto [q, r] = DenseUniPoly::divmod(s * e, h);
    DenseUniPoly gs = g + t * e + q * g;
    DenseUniPoly hs = h + r;
    DenseUniPoly b = s * gs + t * hs - DenseUniPoly::constant(BigInt(1), dom2);
    auto [c, d] = DenseUniPoly::divmod(s * b, hs);
    DenseUniPoly ss = s - d;
    DenseUniPoly ts = t - t * b - c * gs;
    return {std::move(gs), std::move(hs), std::move(ss), std::move(ts)};
}

// Tree lifting: f (integer coefficients) with monic pairwise-coprime
// factors mod p, f = lc(f) * prod(factors) (mod p). Lifts to mod p^k.
inline std::vector<DenseUniPoly> hensel_lift_tree(const DenseUniPoly& f,
                                                  const std::vector<DenseUniPoly>& facs,
                                                  std::uint64_t p, unsigned k) {
    ModDomain target = ModDomain::mod_pow(p, k);
    if (facs.size() == 1) {
        DenseUniPoly fr = reduce_dense(f, target);
        return {fr.monic()};
    }
    std::size_t mid = facs.size() / 2;
    ModDomain zp = ModDomain::mod(p);
    DenseUniPoly g = DenseUniPoly::constant(zp.reduce(f.lc()), zp);
    for (std::size_t i = 0; i < mid; ++i) g = g * reduce_dense(facs[i], zp);
    DenseUniPoly h = DenseUniPoly::constant(BigInt(1), zp);
    for (std::size_t i = mid; i < facs.size(); ++i) h = h * reduce_dense(facs[i], zp);
    auto [s, t] = ext_euclid_modp(g, h);

    HenselPair cur{g, h, s, t};
    unsigned reached = 1;
    while (reached < k) {
        unsigned next = std::min(2 * reached, k);
        // Step into mod p^(2*reached) and reduce down to p^next if needed.
        ModDomain dom2 = ModDomain::mod_pow(p, 2 * reached);
        cur = hensel_step(f, cur, dom2);
        if (next < 2 * reached) {
            ModDomain domn = ModDomain::mod_pow(p, next);
            cur = {reduce_dense(cur.g, domn), reduce_dense(cur.h, domn),
                   reduce_dense(cur.s, domn), reduce_dense(cur.t, domn)};
        }
        reached = next;
    }
    std::vector<DenseUniPoly> left(facs.begin(), facs.begin() + mid);
    std::vector<DenseUniPoly> right(facs.begin() + mid, facs.end());
    auto lifted_left = hensel_lift_tree(cur.g, left, p, k);
    auto lifted_right = hensel_lift_tree(cur.h, right, p, k);
    lifted_left.insert(lifted_left.end(), lifted_right.begin(), lifted_right.end());
    return lifted_left;
}

}  // namespace detail

struct HenselLifted {
    std::vector<DenseUniPoly> factors;  // monic, mod p^k
    ModDomain domain;                   // p^k
};

/** Univariate Hensel lifting past a coefficient bound.
 *
 *  Lifts the monic modular factorization of a primitive squarefree f to
 *  monic factors modulo p^k where p^k >= 2 * bound * |lc(f)|, so that any
 *  true integer factor can be read off through balanced residues. Quadratic
 *  iteration over a binary factor tree.
 */
inline HenselLifted hensel_lift_univariate(const DenseUniPoly& f,
                                           const std::vector<DenseUniPoly>& modular_factors,
                                           const BigInt& bound) {
    if (modular_factors.empty())
        throw DomainError("hensel_lift_univariate: no factors");
    std::uint64_t p = modular_factors[0].domain().p();
    BigInt target = BigInt(2) * bound * f.lc().abs();
    unsigned k = 1;
    BigInt pk(static_cast<long>(p));
    while (pk < target) {
        pk = pk * BigInt(static_cast<long>(p));
        ++k;
    }
    auto lifted = detail::hensel_lift_tree(f, modular_factors, p, k);
    return {std::move(lifted), ModDomain::mod_pow(p, k)};
}

// Mignotte-style coefficient bound used for lifting targets; any factor of
// f has max-norm at most 2^deg(f) * l2norm(f).
inline BigInt factor_coeff_bound(const DenseUniPoly& f) {
    return BigInt::pow(BigInt(2), static_cast<unsigned long>(std::max<long>(f.degree(), 0))) *
           (BigInt::isqrt(
                [&] {
                    BigInt s(0);
                    for (const auto& c : f.coeffs()) s += c * c;
                    return s;
                }()) +
            BigInt(1));
}

/** Zassenhaus recombination.
 *
 *  Tries subsets of the lifted factors in increasing cardinality; each
 *  candidate is lc(f) times the subset product, mapped to balanced
 *  residues, made primitive, and tested by exact trial division. What
 *  remains at the end is one final true factor.
 */
inline std::vector<DenseUniPoly> recombine(const DenseUniPoly& f_in,
                                           const HenselLifted& lifted) {
    std::vector<DenseUniPoly> pool = lifted.factors;
    const ModDomain& dom = lifted.domain;
    DenseUniPoly f = f_in;  // shrinks as factors split off
    std::vector<DenseUniPoly> out;

    std::size_t num = 1;
    while (pool.size() > 1 && num <= pool.size() / 2) {
        bool progress = false;
        std::vector<int> mask(pool.size(), 0);
        for (std::size_t i = 0; i < num; ++i) mask[mask.size() - 1 - i] = 1;
        do {
            DenseUniPoly prod = DenseUniPoly::constant(dom.reduce(f.lc()), dom);
            for (std::size_t i = 0; i < pool.size(); ++i)
                if (mask[i]) prod = prod * detail::reduce_dense(pool[i], dom);
            DenseUniPoly cand = detail::balanced_dense(prod);
            // Primitive part.
            BigInt cont(0);
            for (const auto& c : cand.coeffs()) cont = BigInt::gcd(cont, c);
            if (!cont.is_zero() && !cont.is_one())
                cand = detail::try_divide_exact_z(cand, DenseUniPoly::constant(cont, ModDomain::integers())).value();
            if (cand.lc().sign() < 0) cand = cand * BigInt(-1);
            auto quo = detail::try_divide_exact_z(f, cand);
            if (quo && cand.degree() > 0) {
                out.push_back(cand);
                f = *quo;
                std::vector<DenseUniPoly> rest;
                for (std::size_t i = 0; i < pool.size(); ++i)
                    if (!mask[i]) rest.push_back(pool[i]);
                pool = std::move(rest);
                progress = true;
                break;
            }
        } while (std::next_permutation(mask.begin(), mask.end()));
        if (!progress) ++num;
    }
    if (f.degree() > 0) {
        DenseUniPoly last = f;
        BigInt cont(0);
        for (const auto& c : last.coeffs()) cont = BigInt::gcd(cont, c);
        if (!cont.is_one() && !cont.is_zero())
            last = detail::try_divide_exact_z(last, DenseUniPoly::constant(cont, ModDomain::integers())).value();
        if (last.lc().sign() < 0) last = last * BigInt(-1);
        out.push_back(last);
    }
    std::sort(out.begin(), out.end(), [](const DenseUniPoly& a, const DenseUniPoly& b) {
        if (a.degree() != b.degree()) return a.degree() < b.degree();
        for (long i = a.degree(); i >= 0; --i) {
            int c = cmp(a.coeff(i), b.coeff(i));
            if (c != 0) return c < 0;
        }
        return false;
    });
    return out;
}

namespace detail {

// Prime selection for the modular factorization: the smallest odd primes
// not dividing lc(f) with a squarefree image; among the first candidates,
// keep the one yielding the fewest modular factors.
inline std::vector<std::uint64_t> candidate_primes(const DenseUniPoly& f, int count,
                                                   const BigInt& avoid = BigInt(1)) {
    std::vector<std::uint64_t> out;
    for (std::uint64_t p = 3; static_cast<int>(out.size()) < count && p < 10000;
         p += 2) {
        if (!is_prime_u64(p)) continue;
        BigInt pb(static_cast<long>(p));
        if (f.lc().divisible_by(pb)) continue;
        if (avoid.divisible_by(pb)) continue;
        ModDomain zp = ModDomain::mod(p);
        DenseUniPoly fp = reduce_dense(f, zp);
        if (fp.degree() != f.degree()) continue;
        DenseUniPoly g = gcd_univariate_modp(fp, fp.derivative());
        if (g.degree() != 0) continue;
        out.push_back(p);
    }
    if (out.empty())
        throw ResourceError("factor: no usable prime found below 10000");
    return out;
}

// Complete factorization of a primitive squarefree univariate integer
// polynomial with positive leading coefficient.
inline std::vector<DenseUniPoly> factor_univariate_squarefree(const DenseUniPoly& f) {
    if (f.degree() <= 1) return {f};

    auto primes = candidate_primes(f, 3);
    std::vector<DenseUniPoly> best_factors;
    std::uint64_t best_p = 0;
    for (auto p : primes) {
        ModDomain zp = ModDomain::mod(p);
        auto facs = berlekamp_modp(reduce_dense(f, zp));
        if (best_factors.empty() || facs.size() < best_factors.size()) {
            best_factors = std::move(facs);
            best_p = p;
        }
        if (best_factors.size() == 1) break;
    }
    (void)best_p;
    if (best_factors.size() == 1) return {f};

    BigInt bound = factor_coeff_bound(f);
    HenselLifted lifted = hensel_lift_univariate(f, best_factors, bound);
    return recombine(f, lifted);
}

}  // namespace detail

// Forward declaration: the multivariate path factorizes its leading
// coefficient recursively.
FactoredPolynomial factorize(const Polynomial& f, bool keepzero);

namespace detail {

// --- multivariate Hensel machinery (mod p^n, sparse polynomials) --------

// Extended Euclid lifted to p^n: s*a + t*b = 1 (mod p^n) for univariate
// a, b coprime mod p. Newton iteration on the mod-p solution.
inline std::pair<DenseUniPoly, DenseUniPoly> ext_euclid_lifted(const DenseUniPoly& a,
                                                               const DenseUniPoly& b,
                                                               std::uint64_t p,
                                                               unsigned n) {
    ModDomain zp = ModDomain::mod(p);
    auto [s0, t0] = ext_euclid_modp(reduce_dense(a, zp), reduce_dense(b, zp));
    // Work over the integers with balanced representatives.
    DenseUniPoly S = balanced_dense(s0), T = balanced_dense(t0);
    DenseUniPoly A(ModDomain::integers(), a.coeffs()), B(ModDomain::integers(), b.coeffs());
    BigInt pb(static_cast<long>(p));
    DenseUniPoly E = DenseUniPoly::constant(BigInt(1), ModDomain::integers()) - S * A - T * B;
    BigInt term(1);
    for (unsigned j = 1; j < n && !E.is_zero(); ++j) {
        // E is divisible by p^j by construction; peel one power.
        std::vector<BigInt> ec;
        for (const auto& c : E.coeffs()) ec.push_back(BigInt::divexact(c, pb));
        E = DenseUniPoly(ModDomain::integers(), std::move(ec));
        term = term * pb;
        DenseUniPoly ep = reduce_dense(E, zp);
        DenseUniPoly ds = DenseUniPoly::divmod(reduce_dense(S, zp) * ep,
                                               reduce_dense(B, zp)).second;
        DenseUniPoly dt = DenseUniPoly::divmod(ep - ds * reduce_dense(A, zp),
                                               reduce_dense(B, zp)).first;
        DenseUniPoly dsz = balanced_dense(ds), dtz = balanced_dense(dt);
        S = S + dsz * term;
        T = T + dtz * term;
        E = E - (dsz * A + dtz * B);
    }
    ModDomain pn = ModDomain::mod_pow(p, n);
    return {reduce_dense(S, pn), reduce_dense(T, pn)};
}

/** Univariate Diophantine solver mod p^n.
 *
 *  Finds s_i with sum s_i * prod(a_j, j != i) = b (mod p^n) and
 *  deg s_i < deg a_i, by chaining two-term extended Euclid solutions.
 */
inline std::vector<DenseUniPoly> solve_diophantine_univariate(
    const std::vector<DenseUniPoly>& a, const DenseUniPoly& b, std::uint64_t p,
    unsigned n) {
    ModDomain pn = ModDomain::mod_pow(p, n);
    std::vector<DenseUniPoly> s{reduce_dense(b, pn)};
    for (std::size_t i = 0; i + 1 < a.size(); ++i) {
        DenseUniPoly prod = DenseUniPoly::constant(BigInt(1), pn);
        for (std::size_t j = i + 1; j < a.size(); ++j)
            prod = prod * reduce_dense(a[j], pn);
        auto [sa, sb] = ext_euclid_lifted(a[i], prod, p, n);
        DenseUniPoly prev = s.back();
        s.back() = DenseUniPoly::divmod(sb * prev, reduce_dense(a[i], pn)).second;
        s.push_back(DenseUniPoly::divmod(sa * prev, prod).second);
    }
    return s;
}

// Sparse <-> dense bridges for the multivariate solver.
inline DenseUniPoly sparse_to_dense(const Polynomial& f, std::size_t var) {
    return to_dense(f, var);
}

/** Multivariate Diophantine solver mod <p^n, I^d> with the evaluation
 *  ideal I = <x_2 - c_2, ..., x_m - c_m>: reduce by the last generator,
 *  solve recursively, and add back powers by ideal-adic Newton iteration.
 *  Empty result means no solution (unlucky reduction).
 */
inline std::optional<std::vector<Polynomial>> solve_diophantine_multivariate(
    const std::vector<Polynomial>& a, const Polynomial& b,
    const std::vector<std::size_t>& xs, const std::vector<BigInt>& cs, long d,
    std::uint64_t p, unsigned n) {
    const VarTablePtr& vars = b.vars();
    ModDomain pn = ModDomain::mod_pow(p, n);
    if (b.is_zero())
        return std::vector<Polynomial>(a.size(), Polynomial(vars, pn));
    if (xs.size() == 1) {
        std::vector<DenseUniPoly> ad;
        for (const auto& ai : a) ad.push_back(sparse_to_dense(ai, xs[0]));
        auto sd = solve_diophantine_univariate(ad, sparse_to_dense(b, xs[0]), p, n);
        std::vector<Polynomial> out;
        for (auto& si : sd) out.push_back(from_dense(si, xs[0], vars));
        return out;
    }

    std::size_t xm = xs.back();
    BigInt cm = cs.back();
    Polynomial simple = Polynomial::monomial(BigInt(1), xm, 1, vars, pn) -
                        Polynomial::constant(cm, vars, pn);

    std::vector<Polynomial> ared;
    for (const auto& ai : a) ared.push_back(ai.eval_subst(xm, cm));
    std::vector<std::size_t> xred(xs.begin(), xs.end() - 1);
    std::vector<BigInt> cred(cs.begin(), cs.end() - 1);

    auto s = solve_diophantine_multivariate(ared, b.eval_subst(xm, cm), xred, cred, d, p, n);
    if (!s) return std::nullopt;

    std::vector<Polynomial> A(a.size(), Polynomial::constant(BigInt(1), vars, pn));
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < a.size(); ++j)
            if (i != j) A[i] = A[i] * a[j];

    Polynomial term = Polynomial::constant(BigInt(1), vars, pn);
    Polynomial error = b.with_domain(pn);
    for (std::size_t i = 0; i < A.size(); ++i) error = error - (*s)[i] * A[i];

    for (long deg = 1; deg <= d; ++deg) {
        if (error.is_zero()) break;
        error = error / simple;
        term = term * simple;
        auto ds = solve_diophantine_multivariate(ared, error.eval_subst(xm, cm), xred,
                                                 cred, d, p, n);
        if (!ds) return std::nullopt;
        for (std::size_t i = 0; i < s->size(); ++i) {
            (*s)[i] = (*s)[i] + (*ds)[i] * term;
            error = error - (*ds)[i] * A[i];
        }
    }
    if (!error.is_zero()) return std::nullopt;
    return s;
}

/** Coefficient predetermination (Wang).
 *
 *  Enumerates all products of one coefficient slot per factor, groups them
 *  by total main-variable degree, and repeatedly solves any equation left
 *  with a single undetermined coefficient by exact division. Starting the
 *  Hensel lift from these values removes most of the multivariate work;
 *  when an equation has no exact solution the predetermined values are
 *  discarded and plain lifting takes over.
 */
inline void predetermine_products(std::size_t dep,
                                  const std::vector<std::vector<int>>& state,
                                  std::vector<std::vector<std::vector<int>>>& terms,
                                  std::vector<int>& term, int sumdeg = 0) {
    if (dep == state.size()) {
        terms[sumdeg].push_back(term);
        return;
    }
    term.push_back(0);
    for (int deg = 0; sumdeg + deg < static_cast<int>(state[dep].size()); ++deg)
        if (state[dep][deg] > 0) {
            term.back() = deg;
            predetermine_products(dep + 1, state, terms, term, sumdeg + deg);
        }
    term.pop_back();
}

constexpr long kMaxPredetermination = 10000;

/** Multivariate Hensel lifting of variables.
 *
 *  Input: target A (mod p^n), univariate starting factors with imposed
 *  multivariate leading coefficients lc[i], the variable list (main first)
 *  and the evaluation point. Attempts coefficient predetermination first,
 *  then adds variables one at a time via the Diophantine solver. Returns
 *  nullopt when lifting fails (bad point or bound).
 */
inline std::optional<std::vector<Polynomial>> lift_variables(
    const Polynomial& A, std::vector<Polynomial> a, const std::vector<std::size_t>& xs,
    const std::vector<BigInt>& cs, const std::vector<Polynomial>& lc, std::uint64_t p,
    unsigned n) {
    if (xs.size() <= 1) return a;
    const VarTablePtr& vars = A.vars();
    ModDomain pn = ModDomain::mod_pow(p, n);
    std::size_t x1 = xs[0];

    auto impose_lc = [&](std::vector<Polynomial>& v) {
        for (std::size_t i = 0; i < v.size(); ++i) {
            long d = v[i].degree(x1);
            if (d < 0) return false;
            Polynomial xpow = Polynomial::monomial(BigInt(1), x1,
                                                   static_cast<std::uint32_t>(d), vars, pn);
            v[i] = v[i] + (lc[i].with_domain(pn) - v[i].lcoeff_wrt(x1)) * xpow;
        }
        return true;
    };

    // --- Predetermination ------------------------------------------------
    long budget = kMaxPredetermination;
    for (const auto& ai : a) {
        if (ai.is_zero()) return std::nullopt;
        budget /= static_cast<long>(ai.term_count());
        if (budget == 0) break;
    }
    if (budget > 0) {
        long D = A.degree(x1);
        // state[i][d]: 0 absent, 1 undetermined, 2 determined (lead).
        std::vector<std::vector<int>> state(a.size(), std::vector<int>(D + 1, 0));
        for (std::size_t i = 0; i < a.size(); ++i) {
            long di = a[i].degree(x1);
            for (long dd = 0; dd <= di; ++dd)
                if (!a[i].coefficient_of(x1, static_cast<std::uint32_t>(dd)).is_zero())
                    state[i][dd] = (dd == di) ? 2 : 1;
        }
        std::vector<std::vector<std::vector<int>>> terms(D + 1);
        std::vector<int> term;
        predetermine_products(0, state, terms, term);

        std::vector<int> num_undet(terms.size(), 0);
        for (std::size_t i = 0; i < terms.size(); ++i)
            for (const auto& tt : terms[i])
                for (std::size_t kk = 0; kk < tt.size(); ++kk)
                    if (state[kk][tt[kk]] == 1) ++num_undet[i];

        std::vector<Polynomial> saved = a;
        if (!impose_lc(a)) return std::nullopt;
        bool aborted = false;
        bool changed = true;
        while (changed && !aborted) {
            changed = false;
            for (std::size_t i = 0; i < terms.size() && !aborted; ++i) {
                if (num_undet[i] != 1) continue;
                Polynomial lhs(vars, pn);
                Polynomial rhs = A.coefficient_of(x1, static_cast<std::uint32_t>(i));
                std::size_t which_idx = 0;
                int which_deg = -1;
                for (const auto& tt : terms[i]) {
                    Polynomial coeff = Polynomial::constant(BigInt(1), vars, pn);
                    bool undet = false;
                    for (std::size_t kk = 0; kk < tt.size(); ++kk) {
                        if (state[kk][tt[kk]] == 1) {
                            undet = true;
                            which_idx = kk;
                            which_deg = tt[kk];
                        } else {
                            coeff = coeff *
                                    a[kk].coefficient_of(x1, static_cast<std::uint32_t>(tt[kk]));
                        }
                    }
                    if (undet)
                        lhs = coeff;
                    else
                        rhs = rhs - coeff;
                }
                // Solve lhs * unknown = rhs by exact division over Z.
                Polynomial rhsz = rhs.with_domain(pn).to_integers_balanced();
                Polynomial lhsz = lhs.to_integers_balanced();
                if (lhsz.is_zero() || !(rhsz % lhsz).is_zero()) {
                    aborted = true;
                    break;
                }
                Polynomial value = rhsz / lhsz;
                Polynomial xpow = Polynomial::monomial(
                    BigInt(1), x1, static_cast<std::uint32_t>(which_deg), vars, pn);
                a[which_idx] =
                    a[which_idx] +
                    (value.with_domain(pn) -
                     a[which_idx].coefficient_of(x1, static_cast<std::uint32_t>(which_deg))) *
                        xpow;
                state[which_idx][which_deg] = 2;
                for (std::size_t j = 0; j < terms.size(); ++j)
                    for (const auto& tt : terms[j])
                        if (tt[which_idx] == which_deg) --num_undet[j];
                changed = true;
            }
        }
        if (aborted) {
            a = std::move(saved);  // fall through to plain lifting
        } else {
            Polynomial check = Polynomial::constant(BigInt(1), vars);
            for (const auto& ai : a) check = check * ai.to_integers_balanced();
            if (check == A.to_integers_balanced()) return a;
        }
    }

    // --- Variable-by-variable Hensel lifting -----------------------------
    long maxdegA = 0;
    for (std::size_t i = 1; i < xs.size(); ++i)
        maxdegA = std::max(maxdegA, A.degree(xs[i]));

    for (std::size_t vi = 1; vi < xs.size(); ++vi) {
        if (!impose_lc(a)) return std::nullopt;

        // Factors reduced to the ideal handled so far.
        std::vector<Polynomial> anew = a;
        for (auto& ai : anew)
            for (std::size_t j = vi; j < xs.size(); ++j)
                ai = ai.eval_subst(xs[j], cs[j - 1]);
        std::vector<std::size_t> xnew(xs.begin(), xs.begin() + vi);
        std::vector<BigInt> cnew(cs.begin(), cs.begin() + vi - 1);

        Polynomial simple = Polynomial::monomial(BigInt(1), xs[vi], 1, vars, pn) -
                            Polynomial::constant(cs[vi - 1], vars, pn);
        Polynomial term = Polynomial::constant(BigInt(1), vars, pn);

        long maxdeg = A.degree(xs[vi]);
        for (long deg = 1; deg <= maxdeg; ++deg) {
            term = term * simple;
            Polynomial error = -Polynomial::constant(BigInt(1), vars, pn);
            for (const auto& ai : a) error = error * ai;
            error = error + A.with_domain(pn);
            for (std::size_t j = vi + 1; j < xs.size(); ++j)
                error = error.eval_subst(xs[j], cs[j - 1]);
            if (error.is_zero()) break;
            for (long dd = 0; dd < deg; ++dd) error = error / simple;
            error = error.eval_subst(xs[vi], cs[vi - 1]);
            if (error.is_zero()) continue;
            auto s = solve_diophantine_multivariate(anew, error, xnew, cnew, maxdegA, p,
                                                    static_cast<unsigned>(pn.k()));
            if (!s) return std::nullopt;
            for (std::size_t i = 0; i < a.size(); ++i) a[i] = a[i] + (*s)[i] * term;
        }

        Polynomial check = -Polynomial::constant(BigInt(1), vars, pn);
        for (const auto& ai : a) check = check * ai;
        check = check + A.with_domain(pn);
        for (std::size_t j = vi + 1; j < xs.size(); ++j)
            check = check.eval_subst(xs[j], cs[j - 1]);
        if (!check.is_zero()) return std::nullopt;
    }
    return a;
}

// Small-integer evaluation sequence 1, -1, 2, -2, ...
inline BigInt eval_seq(long k) {
    long idx = k / 2 + 1;
    return BigInt(k % 2 == 0 ? idx : -idx);
}

/** Factorization of a primitive squarefree multivariate polynomial.
 *
 *  Reduces to the univariate case by substituting small integers for all
 *  but the main variable (degree, squarefreeness and Wang's
 *  unique-prime-divisor condition on the leading-coefficient factors decide
 *  whether a point is usable), distributes the leading coefficient by
 *  identification against the evaluated lc factors, and completes the
 *  factors with predetermination plus multivariate Hensel lifting.
 */
inline std::optional<std::vector<Polynomial>> factor_squarefree_multivariate_attempt(
    const Polynomial& f, const std::vector<std::size_t>& xs,
    const FactoredPolynomial& lcfac, long attempt) {
    const VarTablePtr& vars = f.vars();
    std::size_t x1 = xs[0];

    // Evaluation point: mixed-radix walk over the small-integer sequence,
    // so the coordinates of one tuple are decorrelated across attempts.
    std::vector<BigInt> cs;
    {
        long idx = attempt;
        const long window = 16;
        for (std::size_t i = 1; i < xs.size(); ++i) {
            cs.push_back(eval_seq(idx % window));
            idx /= window;
        }
    }

    Polynomial f0s = f;
    for (std::size_t i = 1; i < xs.size(); ++i) f0s = f0s.eval_subst(xs[i], cs[i - 1]);
    if (f0s.degree(x1) != f.degree(x1)) return std::nullopt;
    DenseUniPoly f0 = to_dense(f0s, x1);

    // Squarefreeness of the image.
    {
        Polynomial g = gcd(f0s, f0s.derivative(x1));
        if (!g.is_constant()) return std::nullopt;
    }

    // Wang's condition: each non-constant lc factor evaluates to a value
    // with a prime divisor not present in earlier entries; that prime later
    // identifies which lc factor belongs to which univariate factor.
    std::vector<BigInt> dlist{f0s.icontent()};
    std::vector<BigInt> lcmod(lcfac.factors.size());
    for (std::size_t i = 0; i < lcfac.factors.size(); ++i) {
        Polynomial q = lcfac.factors[i].first;
        for (std::size_t j = 1; j < xs.size(); ++j) q = q.eval_subst(xs[j], cs[j - 1]);
        BigInt val = q.constant_value().abs();
        lcmod[i] = val;
        if (lcfac.factors[i].first.is_constant()) continue;
        BigInt rem = val;
        for (auto it = dlist.rbegin(); it != dlist.rend(); ++it) {
            BigInt r = *it;
            while (!r.is_one() && !r.is_zero() && !rem.is_zero()) {
                r = BigInt::gcd(r, rem);
                if (r.is_one()) break;
                rem = BigInt::divexact(rem, r);
            }
        }
        if (rem.is_one() || rem.is_zero()) return std::nullopt;
        dlist.push_back(rem);
    }

    // True integer factorization of the univariate image.
    DenseUniPoly f0pp = f0;
    {
        BigInt cont = f0s.icontent();
        if (f0.lc().sign() < 0) cont = -cont;
        if (!cont.is_one())
            f0pp = try_divide_exact_z(f0, DenseUniPoly::constant(cont, ModDomain::integers()))
                       .value();
    }
    auto ufacs = factor_univariate_squarefree(f0pp);
    if (ufacs.size() == 1) return std::vector<Polynomial>{f};  // irreducible

    // Wang's leading coefficient distribution by repeated exact division
    // against the evaluated lc factors.
    std::vector<Polynomial> correct_lc(ufacs.size(),
                                       Polynomial::constant(BigInt(1), vars));
    std::vector<Polynomial> fz;
    for (auto& u : ufacs) fz.push_back(from_dense(u, x1, vars));
    BigInt delta_abs = f0s.icontent();

    for (std::size_t j = 0; j < fz.size(); ++j) {
        BigInt lcv = fz[j].lcoeff_wrt(x1).constant_value() * delta_abs;
        for (std::size_t ii = lcfac.factors.size(); ii-- > 0;) {
            if (lcfac.factors[ii].first.is_constant()) continue;
            if (lcmod[ii].is_zero() || lcmod[ii].abs().is_one()) continue;
            while (lcv.divisible_by(lcmod[ii])) {
                correct_lc[j] = correct_lc[j] * lcfac.factors[ii].first;
                lcv = BigInt::divexact(lcv, lcmod[ii]);
            }
        }
    }

    BigInt delt = delta_abs;
    for (std::size_t j = 0; j < fz.size(); ++j) {
        Polynomial cm = correct_lc[j];
        for (std::size_t i = 1; i < xs.size(); ++i) cm = cm.eval_subst(xs[i], cs[i - 1]);
        BigInt cmv = cm.constant_value();
        if (cmv.is_zero()) return std::nullopt;
        BigInt lcj = fz[j].lcoeff_wrt(x1).constant_value();
        BigInt d = BigInt::gcd(cmv.abs(), lcj.abs());
        if (cmv.sign() < 0) d = -d;
        correct_lc[j] = correct_lc[j] * BigInt::divexact(lcj, d);
        BigInt mult = BigInt::divexact(cmv, d);
        if (!delt.divisible_by(mult)) return std::nullopt;
        delt = BigInt::divexact(delt, mult);
        fz[j] = fz[j] * mult;
    }

    Polynomial target = f;
    if (!delt.is_one()) {
        for (std::size_t j = 0; j < fz.size(); ++j) {
            fz[j] = fz[j] * delt;
            correct_lc[j] = correct_lc[j] * delt;
        }
        BigInt scale = BigInt::pow(delt, static_cast<unsigned long>(fz.size() - 1));
        target = f * scale;
    }

    // Prime power for the lifting modulus: beyond twice the largest
    // possible coefficient (Mignotte-style bound on the scaled target,
    // escalated on retries in case the bound was optimistic).
    BigInt bound = BigInt::pow(BigInt(2), static_cast<unsigned long>(
                                              std::max<long>(target.total_degree(), 1))) *
                   (BigInt::isqrt(target.l2_norm_sq()) + BigInt(1)) *
                   BigInt::pow(BigInt(2), static_cast<unsigned long>(attempt));
    BigInt avoid = delta_abs;
    for (const auto& u : fz)
        avoid = avoid * u.lcoeff_wrt(x1).constant_value().abs();
    std::uint64_t p = candidate_primes(f0pp, 1, avoid)[0];
    unsigned n = 1;
    BigInt pk(static_cast<long>(p));
    BigInt targetb = BigInt(2) * bound;
    while (pk < targetb) {
        pk = pk * BigInt(static_cast<long>(p));
        ++n;
    }

    ModDomain pn = ModDomain::mod_pow(p, n);
    std::vector<Polynomial> start;
    for (auto& u : fz) start.push_back(u.with_domain(pn));
    auto lifted = lift_variables(target, start, xs, cs, correct_lc, p, n);
    if (!lifted) return std::nullopt;

    std::vector<Polynomial> result;
    Polynomial product = Polynomial::constant(BigInt(1), vars);
    for (auto& ai : *lifted) {
        Polynomial z = ai.to_integers_balanced();
        if (z.is_zero()) return std::nullopt;
        z = z.primitive_part();
        product = product * z;
        result.push_back(std::move(z));
    }
    if (product != f && product != -f) return std::nullopt;
    return result;
}

}  // namespace detail

/** Complete factorization of a nonzero integer polynomial (any number of
 *  variables): content split, squarefree decomposition, then the
 *  univariate or multivariate irreducible factorization per part. Unlucky
 *  evaluation points are retried with new points up to a hard cap.
 */
inline FactoredPolynomial factor_multivariate(const Polynomial& f) {
    if (f.is_zero()) throw DomainError("factor_multivariate: zero input");
    FactoredPolynomial out;
    auto [content, prim] = f.content_primpart();
    out.content = BigRat(content);
    if (prim.is_constant()) return out;

    // Monomial content first: the minimum power of each variable splits off
    // as a bare-variable factor.
    for (std::size_t v : prim.used_vars()) {
        std::uint32_t minp = ~0u;
        for (const auto& m : prim.monomials()) minp = std::min(minp, m.exps[v]);
        if (minp > 0) {
            out.factors.push_back(
                {Polynomial::monomial(BigInt(1), v, 1, f.vars()), minp});
            prim = prim / Polynomial::monomial(BigInt(1), v, minp, f.vars());
        }
    }
    if (prim.is_constant()) {
        out.sort_factors();
        return out;
    }

    // Split off the content with respect to the main variable (factors free
    // of it) and factor that part recursively; what remains has every
    // irreducible factor containing the main variable, which the
    // evaluation-based reduction requires.
    std::size_t x1 = prim.used_vars().front();
    Polynomial cont = content_wrt(prim, x1);
    if (!cont.is_constant()) {
        FactoredPolynomial sub = factor_multivariate(cont);
        out.content = out.content * sub.content;
        for (auto& fm : sub.factors) out.factors.push_back(std::move(fm));
        prim = prim / cont;
    }

    for (auto& [part, mult] : squarefree_decompose(prim)) {
        auto xs = part.used_vars();
        if (xs.size() == 1) {
            DenseUniPoly d = to_dense(part, xs[0]);
            for (auto& fac : detail::factor_univariate_squarefree(d))
                out.factors.push_back({from_dense(fac, xs[0], f.vars()), mult});
        } else {
            FactoredPolynomial lcfac = factorize(part.lcoeff_wrt(xs[0]), false);
            std::optional<std::vector<Polynomial>> facs;
            for (long attempt = 0; attempt < 400 && !facs; ++attempt)
                facs = detail::factor_squarefree_multivariate_attempt(part, xs, lcfac,
                                                                       attempt);
            if (!facs)
                throw ResourceError("factor_multivariate: no usable evaluation point");
            for (auto& fac : *facs) {
                Polynomial g = fac;
                if (g.lc().sign() < 0) g = -g;
                out.factors.push_back({std::move(g), mult});
            }
        }
    }
    out.sort_factors();
    return out;
}

// ---------------------------------------------------------------------------
// Cache and top-level dispatcher.
// ---------------------------------------------------------------------------

// LRU cache keyed by the canonical serialized form. Hits hand back the
// stored value, bit-identical to recomputation since the pipeline is
// deterministic. Callers guard it for exclusive access.
class FactorCache {
  public:
    explicit FactorCache(std::size_t capacity = 64) : capacity_(capacity) {}

    const FactoredPolynomial* find(const std::string& key) {
        auto it = map_.find(key);
        if (it == map_.end()) return nullptr;
        order_.splice(order_.begin(), order_, it->second.second);
        return &it->second.first;
    }

    void insert(const std::string& key, FactoredPolynomial value) {
        auto it = map_.find(key);
        if (it != map_.end()) {
            order_.splice(order_.begin(), order_, it->second.second);
            it->second.first = std::move(value);
            return;
        }
        order_.push_front(key);
        map_.emplace(key, std::make_pair(std::move(value), order_.begin()));
        if (map_.size() > capacity_) {
            map_.erase(order_.back());
            order_.pop_back();
        }
    }

    std::size_t size() const { return map_.size(); }

  private:
    std::size_t capacity_;
    std::list<std::string> order_;
    std::map<std::string, std::pair<FactoredPolynomial, std::list<std::string>::iterator>> map_;
};

inline std::string factor_cache_key(const Polynomial& f) {
    std::string key;
    for (const auto& n : f.vars()->names()) key += n + ",";
    key += ":" + f.to_string();
    return key;
}

/** Top-level factorization dispatcher with optional cache.
 *
 *  Zero input produces the zero flag (per keepzero semantics the caller
 *  maps it onto a single zero factor). Constants carry the whole value in
 *  the content.
 */
inline FactoredPolynomial factorize(const Polynomial& f, bool keepzero,
                                    FactorCache* cache) {
    if (f.is_zero()) {
        FactoredPolynomial out;
        out.zero_flag = true;
        out.content = BigRat(0);
        (void)keepzero;
        return out;
    }
    if (f.is_constant()) {
        FactoredPolynomial out;
        out.content = BigRat(f.constant_value());
        return out;
    }
    std::string key;
    if (cache) {
        key = factor_cache_key(f);
        if (const FactoredPolynomial* hit = cache->find(key)) return *hit;
    }
    FactoredPolynomial out = factor_multivariate(f);
    if (cache) cache->insert(key, out);
    return out;
}

inline FactoredPolynomial factorize(const Polynomial& f, bool keepzero) {
    return factorize(f, keepzero, nullptr);
}

}  // namespace polyform

#endif
