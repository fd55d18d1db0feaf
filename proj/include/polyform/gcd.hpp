#ifndef POLYFORM_GCD_HPP
#define POLYFORM_GCD_HPP

// Polynomial GCD stack. The dispatcher splits integer content, tries the
// integer-evaluation heuristic a few times, and falls back to Zippel's
// sparse modular algorithm: univariate gcds modulo word-sized primes,
// assembled by polynomial interpolation inside each prime and by Chinese
// remaindering across primes, with trial division as the final judge.

#include <algorithm>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "polyform/bigint.hpp"
#include "polyform/errors.hpp"
#include "polyform/numeric.hpp"
#include "polyform/polynomial.hpp"
#include "polyform/random.hpp"

namespace polyform {

struct GcdConfig {
    int heuristic_attempts = 6;
    // xi growth per retry; roughly 2.7320 and deliberately irrational-ish
    // so repeated failures do not hit structured evaluation points.
    long xi_growth_num = 73794;
    long xi_growth_den = 27011;
    int max_primes = 100;
    int max_eval_retries = 200;
    std::size_t max_heuristic_bits = 1u << 20;
};

// Monic univariate gcd over Z/p by Euclid's algorithm.
inline DenseUniPoly gcd_univariate_modp(DenseUniPoly f, DenseUniPoly g) {
    if (!f.domain().is_field())
        throw DomainError("gcd_univariate_modp: prime field required");
    while (!g.is_zero()) {
        DenseUniPoly r = DenseUniPoly::divmod(f, g).second;
        f = std::move(g);
        g = std::move(r);
    }
    if (f.is_zero()) return f;
    return f.monic();
}

namespace detail {

// Number of base-xi digits needed before the value collapses to zero is
// capped by the caller; returns nullopt past the cap.
inline std::optional<Polynomial> balanced_digits_reassemble(Polynomial value,
                                                            const BigInt& xi,
                                                            std::size_t var,
                                                            long max_digits) {
    const VarTablePtr& vars = value.vars();
    Polynomial h(vars);
    long digit = 0;
    while (!value.is_zero()) {
        if (digit > max_digits) return std::nullopt;
        // Coefficient-wise balanced residue mod xi.
        std::vector<Monomial> dms, qms;
        for (const auto& m : value.monomials()) {
            BigInt d = balanced_mod(m.coeff, xi);
            if (!d.is_zero()) dms.push_back({d, m.exps});
            BigInt q = BigInt::divexact(m.coeff - d, xi);
            if (!q.is_zero()) qms.push_back({std::move(q), m.exps});
        }
        Polynomial digit_poly = Polynomial::from_monomials(std::move(dms), vars);
        if (!digit_poly.is_zero())
            h += digit_poly * Polynomial::monomial(BigInt(1), var,
                                                   static_cast<std::uint32_t>(digit), vars);
        value = Polynomial::from_monomials(std::move(qms), vars);
        ++digit;
    }
    return h;
}

}  // namespace detail

Polynomial gcd(const Polynomial& f, const Polynomial& g, const GcdConfig& cfg);

/** Heuristic GCD (integer evaluation with balanced digit reconstruction).
 *
 *  Evaluates the last shared variable at a large integer xi, takes the gcd
 *  of the images recursively, reads the candidate back as balanced base-xi
 *  digits, and verifies it by exact trial division. Retries with grown xi;
 *  returns nullopt after the attempt budget so the caller can fall through
 *  to the modular algorithm.
 */
inline std::optional<Polynomial> gcd_heuristic(const Polynomial& f_in,
                                               const Polynomial& g_in,
                                               const GcdConfig& cfg = {}) {
    auto [f, g] = Polynomial::unify(f_in, g_in);
    if (!f.domain().is_integers())
        throw DomainError("gcd_heuristic: integer coefficients required");
    if (f.is_zero() || g.is_zero())
        throw DomainError("gcd_heuristic: nonzero inputs required");

    // Shared variables; with none the primitive gcd is constant.
    std::vector<std::size_t> shared;
    {
        auto uf = f.used_vars(), ug = g.used_vars();
        for (auto v : uf)
            if (std::find(ug.begin(), ug.end(), v) != ug.end()) shared.push_back(v);
    }
    BigInt c = BigInt::gcd(f.icontent(), g.icontent());
    if (shared.empty()) return Polynomial::constant(c, f.vars());
    Polynomial fp = f.primitive_part();
    Polynomial gp = g.primitive_part();

    std::size_t x = shared.back();
    long max_digits = std::min(fp.degree(x), gp.degree(x));
    BigInt xi = BigInt(2) * std::min(fp.max_norm(), gp.max_norm()) + BigInt(2);

    for (int attempt = 0; attempt < cfg.heuristic_attempts; ++attempt) {
        if (xi.bit_length() * static_cast<std::size_t>(std::max<long>(1, max_digits)) >
            cfg.max_heuristic_bits)
            return std::nullopt;
        Polynomial fimg = fp.eval_subst(x, xi);
        Polynomial gimg = gp.eval_subst(x, xi);
        std::optional<Polynomial> himg;
        if (fimg.is_zero() || gimg.is_zero())
            himg = std::nullopt;
        else if (fimg.is_constant() && gimg.is_constant())
            himg = Polynomial::constant(
                BigInt::gcd(fimg.constant_value(), gimg.constant_value()), f.vars());
        else
            himg = gcd_heuristic(fimg, gimg, cfg);
        if (himg && !himg->is_zero()) {
            auto h = detail::balanced_digits_reassemble(*himg, xi, x, max_digits);
            if (h && !h->is_zero()) {
                Polynomial cand = h->primitive_part();
                if (cand.divides(fp) && cand.divides(gp))
                    return cand * c;
            }
        }
        xi = xi * BigInt(cfg.xi_growth_num) / BigInt(cfg.xi_growth_den) + BigInt(1);
    }
    return std::nullopt;
}

namespace detail {

// gcd over Z/p of multivariate polynomials, scaled so the leading
// coefficient with respect to main_var equals the image of gamma (the gcd
// of the inputs' leading-coefficient polynomials). Dense Newton
// interpolation over the trailing variables, univariate Euclid at the base.
inline std::optional<Polynomial> gcd_modp_dense(const Polynomial& f, const Polynomial& g,
                                                std::size_t main_var,
                                                const Polynomial& gamma, RngState& rng,
                                                const GcdConfig& cfg) {
    const ModDomain& dom = f.domain();
    const VarTablePtr& vars = f.vars();
    std::vector<std::size_t> used;
    {
        auto uf = f.used_vars(), ug = g.used_vars();
        for (std::size_t v = 0; v < vars->size(); ++v) {
            bool inf = std::find(uf.begin(), uf.end(), v) != uf.end();
            bool ing = std::find(ug.begin(), ug.end(), v) != ug.end();
            if ((inf || ing) && v != main_var) used.push_back(v);
        }
    }

    if (used.empty()) {
        DenseUniPoly df = to_dense(f, main_var), dg = to_dense(g, main_var);
        DenseUniPoly h = gcd_univariate_modp(df, dg);
        if (h.is_zero()) return std::nullopt;
        BigInt scale = dom.reduce(gamma.constant_value());
        if (scale.is_zero()) return std::nullopt;
        return from_dense(h * scale, main_var, vars);
    }

    std::size_t xk = used.back();
    long degf = f.degree(xk), degg = g.degree(xk);
    // The gamma-scaled target is (gamma / lc(h)) * h; its degree in xk is
    // bounded by deg(gamma) + min degree of the inputs.
    long hbound = gamma.degree(xk) + std::min(degf, degg);

    // Collect interpolation points; stop early once the interpolant
    // survives two consecutive fresh points, or when the degree bound
    // pins it down. Verification happens at the integer level above.
    std::vector<std::pair<BigInt, Polynomial>> points;
    long target_deg_main = -1;
    int retries = 0;
    Polynomial prev(vars, dom);
    bool have_prev = false;
    while (retries++ < cfg.max_eval_retries) {
        BigInt alpha(static_cast<long>(rng.random(dom.p() - 1)));
        bool dup = false;
        for (auto& pt : points)
            if (pt.first == alpha) dup = true;
        if (dup) continue;

        Polynomial falpha = f.eval_subst(xk, alpha);
        Polynomial galpha = g.eval_subst(xk, alpha);
        if (falpha.degree(main_var) != f.degree(main_var) ||
            galpha.degree(main_var) != g.degree(main_var))
            continue;  // leading coefficient vanished, skip the point
        auto img = gcd_modp_dense(falpha, galpha, main_var,
                                  gamma.eval_subst(xk, alpha), rng, cfg);
        if (!img) continue;
        long dmain = img->degree(main_var);
        if (target_deg_main < 0 || dmain < target_deg_main) {
            // A smaller degree exposes earlier unlucky points; start over.
            target_deg_main = dmain;
            points.clear();
            have_prev = false;
        } else if (dmain > target_deg_main) {
            continue;  // unlucky point
        }
        points.push_back({alpha, *img});
        Polynomial interp = Polynomial::interpolate_newton(xk, points, dom);
        if (have_prev && interp == prev) return interp;
        if (static_cast<long>(points.size()) >= hbound + 1) return interp;
        prev = interp;
        have_prev = true;
    }
    return std::nullopt;
}

// Skeleton of a polynomial relative to the main variable: for each main
// degree, the list of exponent vectors (main slot zeroed) in its
// coefficient.
struct Skeleton {
    std::map<std::uint32_t, std::vector<std::vector<std::uint32_t>>> rows;
};

inline Skeleton skeleton_of(const Polynomial& h, std::size_t main_var) {
    Skeleton s;
    for (const auto& m : h.monomials()) {
        auto e = m.exps;
        std::uint32_t d = e[main_var];
        e[main_var] = 0;
        s.rows[d].push_back(std::move(e));
    }
    return s;
}

// Sparse interpolation for one new prime: assume the support discovered by
// the first prime image and solve small Vandermonde systems mod p from
// univariate images at powers of a random point.
inline std::optional<Polynomial> gcd_modp_sparse(const Polynomial& f, const Polynomial& g,
                                                 std::size_t main_var,
                                                 const Polynomial& gamma,
                                                 const Skeleton& skel, RngState& rng,
                                                 const GcdConfig& cfg) {
    const ModDomain& dom = f.domain();
    const VarTablePtr& vars = f.vars();
    std::vector<std::size_t> other;
    for (std::size_t v = 0; v < vars->size(); ++v)
        if (v != main_var &&
            (f.degree(v) > 0 || g.degree(v) > 0 || gamma.degree(v) > 0))
            other.push_back(v);
    if (other.empty()) {
        DenseUniPoly h = gcd_univariate_modp(to_dense(f, main_var), to_dense(g, main_var));
        if (h.is_zero()) return std::nullopt;
        BigInt scale = dom.reduce(gamma.constant_value());
        if (scale.is_zero()) return std::nullopt;
        return from_dense(h * scale, main_var, vars);
    }

    std::size_t rows_needed = 0;
    for (const auto& [d, ms] : skel.rows) rows_needed = std::max(rows_needed, ms.size());

    for (int attempt = 0; attempt < 10; ++attempt) {
        // Random base point with all coordinates nonzero.
        std::vector<BigInt> beta(vars->size(), BigInt(1));
        for (auto v : other) beta[v] = BigInt(static_cast<long>(rng.random(dom.p() - 1)));

        // Monomial values at beta must be pairwise distinct within a row.
        auto mono_value = [&](const std::vector<std::uint32_t>& e) {
            BigInt r(1);
            for (auto v : other)
                if (e[v])
                    r = dom.reduce(r * BigInt::powmod(beta[v], BigInt(static_cast<long>(e[v])),
                                                      dom.modulus()));
            return r;
        };
        bool collision = false;
        std::map<std::uint32_t, std::vector<BigInt>> values;
        for (const auto& [d, ms] : skel.rows) {
            std::vector<BigInt> vs;
            for (const auto& e : ms) vs.push_back(mono_value(e));
            for (std::size_t i = 0; i < vs.size() && !collision; ++i)
                for (std::size_t j = i + 1; j < vs.size(); ++j)
                    if (vs[i] == vs[j]) {
                        collision = true;
                        break;
                    }
            values[d] = std::move(vs);
        }
        if (collision) continue;

        // Univariate images at beta^j, j = 1..rows_needed.
        std::vector<DenseUniPoly> images;
        bool bad = false;
        for (std::size_t j = 1; j <= rows_needed && !bad; ++j) {
            Polynomial fj = f, gj = g;
            Polynomial gammaj = gamma;
            for (auto v : other) {
                BigInt pt = BigInt::powmod(beta[v], BigInt(static_cast<long>(j)), dom.modulus());
                fj = fj.eval_subst(v, pt);
                gj = gj.eval_subst(v, pt);
                gammaj = gammaj.eval_subst(v, pt);
            }
            if (fj.degree(main_var) != f.degree(main_var) ||
                gj.degree(main_var) != g.degree(main_var)) {
                bad = true;
                break;
            }
            DenseUniPoly h = gcd_univariate_modp(to_dense(fj, main_var), to_dense(gj, main_var));
            std::uint32_t want_deg = skel.rows.rbegin()->first;
            if (h.is_zero() || h.degree() != static_cast<long>(want_deg)) {
                bad = true;  // degree anomaly: different gcd shape at this prime
                break;
            }
            BigInt scale = dom.reduce(gammaj.constant_value());
            if (scale.is_zero()) {
                bad = true;
                break;
            }
            images.push_back(h * scale);
        }
        if (bad) continue;

        // Solve the transposed Vandermonde system row by row.
        std::vector<Monomial> result;
        bool solved = true;
        for (const auto& [d, ms] : skel.rows) {
            const auto& vs = values[d];
            std::size_t t = ms.size();
            // M[j][i] = vs[i]^(j+1), rhs[j] = coeff of x^d in image j.
            std::vector<std::vector<BigInt>> M(t, std::vector<BigInt>(t + 1));
            for (std::size_t j = 0; j < t; ++j) {
                for (std::size_t i = 0; i < t; ++i)
                    M[j][i] = BigInt::powmod(vs[i], BigInt(static_cast<long>(j + 1)),
                                             dom.modulus());
                M[j][t] = images[j].coeff(d);
            }
            // Gaussian elimination mod p.
            for (std::size_t col = 0; col < t && solved; ++col) {
                std::size_t piv = col;
                while (piv < t && M[piv][col].is_zero()) ++piv;
                if (piv == t) {
                    solved = false;
                    break;
                }
                std::swap(M[piv], M[col]);
                BigInt inv = BigInt::invmod(M[col][col], dom.modulus());
                for (std::size_t cc = col; cc <= t; ++cc)
                    M[col][cc] = dom.reduce(M[col][cc] * inv);
                for (std::size_t rr = 0; rr < t; ++rr) {
                    if (rr == col || M[rr][col].is_zero()) continue;
                    BigInt fac = M[rr][col];
                    for (std::size_t cc = col; cc <= t; ++cc)
                        M[rr][cc] = dom.reduce(M[rr][cc] - fac * M[col][cc]);
                }
            }
            if (!solved) break;
            for (std::size_t i = 0; i < t; ++i) {
                if (M[i][t].is_zero()) continue;
                auto e = ms[i];
                e[main_var] = d;
                result.push_back({M[i][t], std::move(e)});
            }
        }
        if (!solved) continue;
        Polynomial h = Polynomial::from_monomials(std::move(result), vars, dom);
        if (h.is_zero()) continue;
        return h;  // the integer-level verification is the judge
    }
    return std::nullopt;
}

}  // namespace detail

/** Zippel's sparse modular GCD over the integers.
 *
 *  Splits content with respect to the main variable, then walks word-sized
 *  primes: the first usable prime discovers the gcd's support by dense
 *  interpolation, later primes reuse that support through sparse
 *  interpolation, and balanced Chinese remaindering combines the images
 *  until they stabilize. The result is confirmed by exact trial division of
 *  both inputs; degree anomalies mark unlucky primes or evaluation points
 *  and trigger retries.
 */
inline Polynomial gcd_zippel(const Polynomial& f_in, const Polynomial& g_in,
                             const GcdConfig& cfg = {}) {
    auto [f, g] = Polynomial::unify(f_in, g_in);
    if (!f.domain().is_integers())
        throw DomainError("gcd_zippel: integer coefficients required");
    if (f.is_zero() || g.is_zero())
        throw DomainError("gcd_zippel: nonzero inputs required");

    std::vector<std::size_t> shared;
    {
        auto uf = f.used_vars(), ug = g.used_vars();
        for (auto v : uf)
            if (std::find(ug.begin(), ug.end(), v) != ug.end()) shared.push_back(v);
    }
    BigInt c = BigInt::gcd(f.icontent(), g.icontent());
    if (shared.empty()) return Polynomial::constant(c, f.vars());

    Polynomial fp = f.primitive_part();
    Polynomial gp = g.primitive_part();
    std::size_t x1 = shared.front();

    // Content with respect to x1 (a polynomial in the other variables)
    // splits off and is handled recursively.
    auto content_wrt = [&cfg](const Polynomial& p, std::size_t var) {
        Polynomial acc(p.vars());
        long d = p.degree(var);
        for (long k = 0; k <= d; ++k) {
            Polynomial coef = p.coefficient_of(var, static_cast<std::uint32_t>(k));
            if (coef.is_zero()) continue;
            acc = acc.is_zero() ? coef : gcd(acc, coef, cfg);
            if (acc.is_constant() && acc.constant_value().abs().is_one()) break;
        }
        return acc.is_zero() ? Polynomial::constant(BigInt(1), p.vars())
                             : acc.content_primpart().second;
    };
    Polynomial contf = content_wrt(fp, x1);
    Polynomial contg = content_wrt(gp, x1);
    Polynomial cont_gcd = (contf.is_one() || contg.is_one())
                              ? Polynomial::constant(BigInt(1), f.vars())
                              : gcd(contf, contg, cfg);
    if (!contf.is_one()) fp = fp / contf;
    if (!contg.is_one()) gp = gp / contg;

    Polynomial gamma = fp.lcoeff_wrt(x1);
    {
        Polynomial lg = gp.lcoeff_wrt(x1);
        gamma = (gamma == lg) ? gamma : gcd(gamma, lg, cfg);
    }

    PrimeList primes;
    RngState rng(20240809);
    Polynomial accum(f.vars());  // CRT accumulator (balanced, over Z)
    BigInt modulus(1);
    long best_main_deg = -1;
    std::optional<detail::Skeleton> skel;
    Polynomial prev_candidate(f.vars());
    bool have_candidate = false;

    for (int pi = 1; pi <= cfg.max_primes; ++pi) {
        std::uint64_t p = primes.prime(pi);
        ModDomain dom = ModDomain::mod(p);
        if (dom.reduce(fp.lc()).is_zero() || dom.reduce(gp.lc()).is_zero())
            continue;  // prime divides a leading coefficient
        Polynomial fmod = fp.with_domain(dom);
        Polynomial gmod = gp.with_domain(dom);
        Polynomial gmod_gamma = gamma.with_domain(dom);
        if (fmod.degree(x1) != fp.degree(x1) || gmod.degree(x1) != gp.degree(x1))
            continue;

        std::optional<Polynomial> himg;
        if (skel)
            himg = detail::gcd_modp_sparse(fmod, gmod, x1, gmod_gamma, *skel, rng, cfg);
        if (!himg) himg = detail::gcd_modp_dense(fmod, gmod, x1, gmod_gamma, rng, cfg);
        if (!himg) continue;

        long dmain = himg->degree(x1);
        if (dmain == 0) {
            // Co-prime primitive parts.
            return Polynomial::constant(c, f.vars()) * cont_gcd;
        }
        if (best_main_deg < 0 || dmain < best_main_deg) {
            best_main_deg = dmain;
            accum = himg->to_integers_balanced();
            modulus = BigInt(static_cast<unsigned long>(p));
            skel = detail::skeleton_of(*himg, x1);
            have_candidate = false;
            continue;
        }
        if (dmain > best_main_deg) continue;  // unlucky prime

        // Balanced CRT merge, coefficient by coefficient.
        BigInt pint(static_cast<unsigned long>(p));
        std::map<std::vector<std::uint32_t>, BigInt> merged;
        for (const auto& m : accum.monomials()) merged[m.exps] = m.coeff;
        for (const auto& m : himg->monomials()) {
            auto it = merged.find(m.exps);
            BigInt prior = it == merged.end() ? BigInt(0) : it->second;
            merged[m.exps] = crt_pair(prior, modulus, m.coeff, pint);
        }
        // Entries missing from the new image mean a zero residue there.
        for (auto& [e, v] : merged) {
            bool in_new = false;
            for (const auto& m : himg->monomials())
                if (m.exps == e) in_new = true;
            if (!in_new) v = crt_pair(v, modulus, BigInt(0), pint);
        }
        std::vector<Monomial> ms;
        for (auto& [e, v] : merged)
            if (!v.is_zero()) ms.push_back({v, e});
        accum = Polynomial::from_monomials(std::move(ms), f.vars());
        modulus = modulus * pint;

        if (have_candidate && accum == prev_candidate) {
            Polynomial cand = accum.primitive_part();
            Polynomial cc = content_wrt(cand, x1);
            if (!cc.is_one()) cand = (cand / cc).primitive_part();
            if (cand.divides(fp) && cand.divides(gp)) {
                Polynomial result = Polynomial::constant(c, f.vars()) * cont_gcd * cand;
                if (result.lc().sign() < 0) result = -result;
                return result;
            }
            // Stabilized on a wrong value: some image was junk. Drop the
            // accumulation and start over with fresh primes.
            best_main_deg = -1;
            skel.reset();
            have_candidate = false;
            continue;
        }
        prev_candidate = accum;
        have_candidate = true;
    }
    throw ResourceError("gcd_zippel: prime supply exhausted");
}

// Main dispatcher: content split, heuristic attempts, Zippel fallback.
// Result is normalized to a positive leading coefficient.
inline Polynomial gcd(const Polynomial& f_in, const Polynomial& g_in,
                      const GcdConfig& cfg = {}) {
    auto [f, g] = Polynomial::unify(f_in, g_in);
    if (!f.domain().is_integers())
        throw DomainError("gcd: integer coefficients required (use the mod-p routines)");
    auto normalize = [](Polynomial p) {
        if (!p.is_zero() && p.lc().sign() < 0) p = -p;
        return p;
    };
    if (f.is_zero()) return normalize(g);
    if (g.is_zero()) return normalize(f);
    if (f.is_constant() && g.is_constant())
        return Polynomial::constant(BigInt::gcd(f.constant_value(), g.constant_value()),
                                    f.vars());
    BigInt c = BigInt::gcd(f.icontent(), g.icontent());
    Polynomial fp = f.primitive_part();
    Polynomial gp = g.primitive_part();
    if (fp == gp) return normalize(fp * c);
    if (fp.is_constant() || gp.is_constant()) return Polynomial::constant(c, f.vars());
    if (auto h = gcd_heuristic(fp, gp, cfg)) return normalize(*h * c);
    return normalize(gcd_zippel(fp, gp, cfg) * c);
}

// Gcd of all arguments (at least one), positive leading coefficient.
inline Polynomial gcd_multi(const std::vector<Polynomial>& args,
                            const GcdConfig& cfg = {}) {
    if (args.empty()) throw DomainError("gcd_multi: at least one argument required");
    Polynomial acc = args[0];
    if (!acc.is_zero() && acc.lc().sign() < 0) acc = -acc;
    for (std::size_t i = 1; i < args.size(); ++i) {
        acc = gcd(acc, args[i], cfg);
        if (acc.is_one()) break;
    }
    return acc;
}

// Content of f with respect to one variable: the gcd of the polynomial
// coefficients of its powers, primitive and positive.
inline Polynomial content_wrt(const Polynomial& f, std::size_t var,
                              const GcdConfig& cfg = {}) {
    if (f.is_zero()) return f;
    std::vector<Polynomial> coeffs;
    long d = f.degree(var);
    for (long k = 0; k <= d; ++k) {
        Polynomial ck = f.coefficient_of(var, static_cast<std::uint32_t>(k));
        if (!ck.is_zero()) coeffs.push_back(std::move(ck));
    }
    return gcd_multi(coeffs, cfg);
}

/** Modular inverse of p1 modulo p2 in a univariate polynomial ring.
 *
 *  Extended Euclid over Q (or over Z/p when the inputs carry a field
 *  domain). Returns (scale, prim) with scale * prim the inverse, so
 *  rational coefficients stay representable; deg(result) < deg(p2).
 */
inline std::pair<BigRat, Polynomial> poly_inverse(const Polynomial& p1_in,
                                                  const Polynomial& p2_in) {
    auto [p1, p2] = Polynomial::unify(p1_in, p2_in);
    auto used1 = p1.used_vars(), used2 = p2.used_vars();
    std::vector<std::size_t> all = used1;
    for (auto v : used2)
        if (std::find(all.begin(), all.end(), v) == all.end()) all.push_back(v);
    if (all.size() > 1)
        throw DomainError("poly_inverse: univariate arguments required");
    if (p2.is_zero() || p1.is_zero())
        throw DomainError("poly_inverse: nonzero arguments required");
    std::size_t x = all.empty() ? 0 : all[0];

    if (p1.domain().is_field()) {
        const ModDomain& dom = p1.domain();
        DenseUniPoly a = to_dense(p1, x), b = to_dense(p2, x);
        DenseUniPoly r0 = b, r1 = DenseUniPoly::divmod(a, b).second;
        DenseUniPoly t0(dom), t1 = DenseUniPoly::constant(BigInt(1), dom);
        while (!r1.is_zero() && r1.degree() > 0) {
            auto [q, r2] = DenseUniPoly::divmod(r0, r1);
            DenseUniPoly t2 = t0 - q * t1;
            r0 = std::move(r1);
            r1 = std::move(r2);
            t0 = std::move(t1);
            t1 = std::move(t2);
        }
        if (r1.is_zero()) throw DomainError("poly_inverse: arguments are not coprime");
        BigInt inv = BigInt::invmod(r1.lc(), dom.modulus());
        DenseUniPoly res = DenseUniPoly::divmod(t1 * inv, b).second;
        return {BigRat(1), from_dense(res, x, p1.vars())};
    }

    // Rational extended Euclid on dense coefficient vectors.
    auto dense_of = [&](const Polynomial& p) {
        std::vector<BigRat> c(std::max<long>(p.degree(x), 0) + 1, BigRat(0));
        for (const auto& m : p.monomials()) c[m.exps[x]] = BigRat(m.coeff);
        while (!c.empty() && c.back().is_zero()) c.pop_back();
        return c;
    };
    using QPoly = std::vector<BigRat>;
    auto qtrim = [](QPoly& a) {
        while (!a.empty() && a.back().is_zero()) a.pop_back();
    };
    auto qdivmod = [&](QPoly a, const QPoly& b) {
        QPoly q(a.size() > b.size() ? a.size() - b.size() + 1 : 0, BigRat(0));
        while (a.size() >= b.size() && !a.empty()) {
            BigRat f = a.back() / b.back();
            std::size_t shift = a.size() - b.size();
            q[shift] = f;
            for (std::size_t i = 0; i < b.size(); ++i)
                a[shift + i] = a[shift + i] - f * b[i];
            qtrim(a);
        }
        return std::make_pair(q, a);
    };
    auto qmul = [&](const QPoly& a, const QPoly& b) {
        if (a.empty() || b.empty()) return QPoly{};
        QPoly r(a.size() + b.size() - 1, BigRat(0));
        for (std::size_t i = 0; i < a.size(); ++i)
            for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
        return r;
    };
    auto qsub = [&](QPoly a, const QPoly& b) {
        if (b.size() > a.size()) a.resize(b.size(), BigRat(0));
        for (std::size_t i = 0; i < b.size(); ++i) a[i] = a[i] - b[i];
        qtrim(a);
        return a;
    };

    QPoly a = dense_of(p1), b = dense_of(p2);
    QPoly r0 = b, r1 = qdivmod(a, b).second;
    QPoly t0, t1{BigRat(1)};
    if (r1.empty()) throw DomainError("poly_inverse: arguments are not coprime");
    while (r1.size() > 1) {
        auto [q, r2] = qdivmod(r0, r1);
        QPoly t2 = qsub(t0, qmul(q, t1));
        r0 = std::move(r1);
        r1 = std::move(r2);
        t0 = std::move(t1);
        t1 = std::move(t2);
        if (r1.empty()) throw DomainError("poly_inverse: arguments are not coprime");
    }
    // r1 is a nonzero constant: divide through and reduce mod p2.
    BigRat lead = r1[0];
    QPoly res = qdivmod(t1, b).second;
    for (auto& v : res) v = v / lead;
    // Pull out the rational content to return integer prim coefficients.
    BigInt den_lcm(1), num_gcd(0);
    for (const auto& v : res) {
        if (v.is_zero()) continue;
        den_lcm = BigInt::lcm(den_lcm, v.den());
        num_gcd = BigInt::gcd(num_gcd, v.num().abs());
    }
    if (num_gcd.is_zero()) return {BigRat(0), Polynomial(p1.vars())};
    BigRat content(num_gcd, den_lcm);
    std::vector<Monomial> ms;
    for (std::size_t i = 0; i < res.size(); ++i) {
        if (res[i].is_zero()) continue;
        BigRat scaled = res[i] / content;
        std::vector<std::uint32_t> e(p1.vars()->size(), 0);
        e[x] = static_cast<std::uint32_t>(i);
        ms.push_back({scaled.num(), std::move(e)});
    }
    Polynomial prim = Polynomial::from_monomials(std::move(ms), p1.vars());
    if (!prim.is_zero() && prim.lc().sign() < 0) {
        prim = -prim;
        content = -content;
    }
    return {content, prim};
}

}  // namespace polyform

#endif
