#include <catch2/catch_amalgamated.hpp>

#include <map>

#include "helpers.hpp"
#include "polyform/factor.hpp"

using namespace polyform;
using namespace polyform::testing;

namespace {
const VarTablePtr abc = make_vars({"a", "b", "c"});
const VarTablePtr xv = make_vars({"x"});
const VarTablePtr xy = make_vars({"x", "y"});

// Independent irreducibility evidence for small univariate factors: some
// prime with degree preserved keeps it irreducible mod p, or no monic
// rational root / low-degree divisor exists (checked exhaustively).
bool irreducible_oracle_univar(const Polynomial& f, std::size_t x) {
    long d = f.degree(x);
    if (d <= 1) return true;
    for (std::uint64_t p : {3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull}) {
        ModDomain zp = ModDomain::mod(p);
        Polynomial fp = f.with_domain(zp);
        if (fp.degree(x) != d) continue;
        DenseUniPoly dp = to_dense(fp, x);
        if (gcd_univariate_modp(dp, dp.derivative()).degree() != 0) continue;
        if (berlekamp_modp(dp).size() == 1) return true;
    }
    // Fall back: exhaustive degree-1 and degree-2 monic divisor search with
    // bounded coefficients on the dense form.
    DenseUniPoly dz = to_dense(f, x);
    const long B = 60;
    for (long a = -B; a <= B; ++a) {
        DenseUniPoly cand(ModDomain::integers(), {BigInt(a), BigInt(1)});
        if (detail::try_divide_exact_z(dz, cand)) return false;
    }
    if (d >= 4)
        for (long a = -B; a <= B; ++a)
            for (long b = -B; b <= B; ++b) {
                DenseUniPoly cand(ModDomain::integers(),
                                  {BigInt(b), BigInt(a), BigInt(1)});
                if (detail::try_divide_exact_z(dz, cand)) return false;
            }
    return true;
}
}  // namespace

TEST_CASE("squarefree decomposition") {
    Polynomial f = P("x+1", xv).pow(2) * P("x-1", xv);
    auto sf = squarefree_decompose(f);
    REQUIRE(sf.size() == 2);
    CHECK(sf[0] == std::pair{P("x-1", xv), 1u});
    CHECK(sf[1] == std::pair{P("x+1", xv), 2u});

    Polynomial g = P("x^3+x+1", xv);
    auto sg = squarefree_decompose(g);
    REQUIRE(sg.size() == 1);
    CHECK(sg[0] == std::pair{g, 1u});

    // Construct-then-decompose with random multiplicities; product check.
    RngState rng(83);
    for (int t = 0; t < 25; ++t) {
        Polynomial u = rand_nonzero_poly(xy, rng, 4, 2, 8).primitive_part();
        Polynomial v = rand_nonzero_poly(xy, rng, 4, 2, 8).primitive_part();
        if (u.is_constant() || v.is_constant()) continue;
        if (!gcd(u, v).is_one()) continue;
        unsigned mu = static_cast<unsigned>(rng.random(3));
        unsigned mv = static_cast<unsigned>(rng.random(3));
        if (mu == mv) continue;
        Polynomial prod = u.pow(mu) * v.pow(mv);
        auto parts = squarefree_decompose(prod);
        Polynomial rec = Polynomial::constant(BigInt(1), xy);
        for (auto& [p, m] : parts) {
            rec = rec * p.pow(m);
            // squarefree: no repeated factor shows up via any derivative
            for (auto vv : p.used_vars())
                CHECK(gcd(p, p.derivative(vv)).degree(vv) <= 0);
        }
        for (std::size_t i = 0; i < parts.size(); ++i)
            for (std::size_t j = i + 1; j < parts.size(); ++j)
                CHECK(gcd(parts[i].first, parts[j].first).is_constant());
        CHECK((rec == prod.primitive_part() || rec == -prod.primitive_part()));
    }
}

TEST_CASE("berlekamp mod p") {
    auto x = xv->find("x").value();
    ModDomain z5 = ModDomain::mod(5);
    auto facs = berlekamp_modp(to_dense(P("x^2+1", xv, z5), x));
    REQUIRE(facs.size() == 2);
    CHECK(from_dense(facs[0], x, xv) == P("x+2", xv, z5));
    CHECK(from_dense(facs[1], x, xv) == P("x+3", xv, z5));

    ModDomain z3 = ModDomain::mod(3);
    auto facs3 = berlekamp_modp(to_dense(P("x^2+1", xv, z3), x));
    CHECK(facs3.size() == 1);

    CHECK_THROWS_AS(berlekamp_modp(to_dense(P("x^2", xv, z5), x)), DomainError);

    // Construct-then-factor: products of distinct monic irreducibles mod p.
    RngState rng(89);
    for (std::uint64_t p : {3ull, 5ull, 7ull}) {
        ModDomain zp = ModDomain::mod(p);
        for (int t = 0; t < 15; ++t) {
            // Random monic squarefree polynomial; factor and multiply back.
            Polynomial f = rand_poly(xv, rng, 5, 5, static_cast<long>(p), zp) +
                           Polynomial::monomial(BigInt(1), x, 6, xv, zp);
            DenseUniPoly df = to_dense(f, x);
            if (gcd_univariate_modp(df, df.derivative()).degree() != 0) continue;
            auto fs = berlekamp_modp(df);
            DenseUniPoly prod = DenseUniPoly::constant(BigInt(1), zp);
            for (auto& q : fs) {
                prod = prod * q;
                CHECK(berlekamp_modp(q).size() == 1);  // each part irreducible
            }
            CHECK(prod == df.monic());
        }
    }
}

TEST_CASE("hensel lifting univariate") {
    auto x = xv->find("x").value();
    // f = (x-1)(x+2); images mod 5 lift to recoverable integer factors.
    Polynomial f = P("x^2+x-2", xv);
    DenseUniPoly df = to_dense(f, x);
    ModDomain z5 = ModDomain::mod(5);
    auto modular = berlekamp_modp(to_dense(f.with_domain(z5), x));
    REQUIRE(modular.size() == 2);
    auto lifted = hensel_lift_univariate(df, modular, BigInt(4));
    CHECK(lifted.domain.p() == 5);
    CHECK(lifted.domain.modulus() >= BigInt(2 * 4 * 1));
    // Product of monic lifted factors times lc reproduces f mod p^k.
    DenseUniPoly prod = DenseUniPoly::constant(df.lc(), lifted.domain);
    for (auto& g : lifted.factors) prod = prod * detail::reduce_dense(g, lifted.domain);
    CHECK(prod == detail::reduce_dense(df, lifted.domain));
    // Balanced residues recover the true factors (f monic).
    std::vector<Polynomial> rec;
    for (auto& g : lifted.factors)
        rec.push_back(from_dense(detail::balanced_dense(g), x, xv));
    CHECK(((rec[0] == P("x-1", xv) && rec[1] == P("x+2", xv)) ||
           (rec[1] == P("x-1", xv) && rec[0] == P("x+2", xv))));

    // Single modular factor: the lift is f itself, made monic.
    auto single = hensel_lift_univariate(
        df, {to_dense(f.with_domain(z5), x).monic()}, BigInt(4));
    CHECK(single.factors.size() == 1);

    // Random squarefree degree-8: multiply-back mod p^k.
    RngState rng(97);
    int lifts = 0;
    for (int t = 0; t < 60 && lifts < 20; ++t) {
        Polynomial g = rand_poly(xv, rng, 8, 7, 50) +
                       Polynomial::monomial(BigInt(1), x, 8, xv);
        if (!gcd(g, g.derivative(x)).is_constant()) continue;
        ++lifts;
        DenseUniPoly dg = to_dense(g, x);
        auto primes = detail::candidate_primes(dg, 1);
        ModDomain zp = ModDomain::mod(primes[0]);
        auto mf = berlekamp_modp(detail::reduce_dense(dg, zp));
        auto lift = hensel_lift_univariate(dg, mf, factor_coeff_bound(dg));
        DenseUniPoly pr = DenseUniPoly::constant(lift.domain.reduce(dg.lc()), lift.domain);
        for (auto& q : lift.factors) pr = pr * detail::reduce_dense(q, lift.domain);
        CHECK(pr == detail::reduce_dense(dg, lift.domain));
    }
    CHECK(lifts == 20);
}

TEST_CASE("recombination") {
    auto x = xv->find("x").value();
    // x^4+1 splits mod every prime but is irreducible over Z.
    Polynomial f = P("x^4+1", xv);
    auto fac = factorize(f, false);
    CHECK(fac.content == BigRat(1));
    REQUIRE(fac.factors.size() == 1);
    CHECK(fac.factors[0] == std::pair{f, 1u});

    // Identity recombination: all modular factors true.
    Polynomial g = P("x^2-1", xv);
    auto gf = factorize(g, false);
    REQUIRE(gf.factors.size() == 2);
    CHECK(gf.factors[0].first == P("x-1", xv));
    CHECK(gf.factors[1].first == P("x+1", xv));

    // Random reducible products recover {g, h} up to sign.
    RngState rng(101);
    int done = 0;
    for (int t = 0; t < 150 && done < 25; ++t) {
        Polynomial u = rand_nonzero_poly(xv, rng, 4, 3, 20).primitive_part();
        Polynomial v = rand_nonzero_poly(xv, rng, 4, 3, 20).primitive_part();
        if (u.is_constant() || v.is_constant()) continue;
        if (!gcd(u, v).is_one()) continue;
        Polynomial prod = u * v;
        if (!gcd(prod, prod.derivative(x)).is_constant()) continue;
        auto pf = factorize(prod, false);
        Polynomial back = Polynomial::constant(pf.content.num(), xv);
        for (auto& [p, m] : pf.factors) back = back * p.pow(m);
        CHECK(back == prod);
        ++done;
    }
    CHECK(done == 25);
}

TEST_CASE("multivariate factorization reproduces the worked example") {
    Polynomial f = P("6*b*c^3+15*b^2*c^2+9*b^3*c+6*a*c^3+21*a*b*c^2+18*a*b^2*c"
                     "+6*a^2*c^2+9*a^2*b*c",
                     abc);
    auto fac = factorize(f, false);
    CHECK(fac.content == BigRat(3));
    REQUIRE(fac.factors.size() == 4);
    std::multiset<std::string> got;
    for (auto& [p, m] : fac.factors) {
        CHECK(m == 1);
        got.insert(p.to_string());
    }
    std::multiset<std::string> expect{"c", "3*b+2*c", "a+b", "a+b+c"};
    CHECK(got == expect);
    CHECK(fac.expand(abc) == f);
}

TEST_CASE("irreducible stays put") {
    Polynomial f = P("x+y", xy);
    auto fac = factorize(f, false);
    REQUIRE(fac.factors.size() == 1);
    CHECK(fac.factors[0] == std::pair{f, 1u});

    auto c12 = factorize(Polynomial::constant(BigInt(12), xv), false);
    CHECK(c12.content == BigRat(12));
    CHECK(c12.factors.empty());

    auto z = factorize(Polynomial(xv), true);
    CHECK(z.zero_flag);
}

TEST_CASE("multivariate construct-then-factor") {
    RngState rng(103);
    int done = 0;
    for (int t = 0; t < 60 && done < 12; ++t) {
        Polynomial u = rand_nonzero_poly(abc, rng, 4, 2, 8).primitive_part();
        Polynomial v = rand_nonzero_poly(abc, rng, 4, 2, 8).primitive_part();
        Polynomial w = rand_nonzero_poly(abc, rng, 4, 2, 8).primitive_part();
        if (u.is_constant() || v.is_constant() || w.is_constant()) continue;
        Polynomial prod = u * v * w;
        auto fac = factorize(prod, false);
        CHECK(fac.expand(abc) == prod);
        unsigned total_mult = 0;
        for (auto& [p, m] : fac.factors) total_mult += m;
        CHECK(total_mult >= 3);
        ++done;
    }
    CHECK(done == 12);
}

TEST_CASE("multiply-back identity on random factorizations") {
    RngState rng(107);
    for (int t = 0; t < 120; ++t) {
        Polynomial f = rand_nonzero_poly(abc, rng, 6, 4, 30);
        auto fac = factorize(f, false);
        CHECK(fac.expand(abc) == f);
    }
}

TEST_CASE("small emitted factors pass the irreducibility oracle") {
    RngState rng(109);
    int checked = 0;
    for (int t = 0; t < 60 && checked < 40; ++t) {
        Polynomial f = rand_nonzero_poly(xv, rng, 5, 4, 25);
        if (f.is_constant()) continue;
        auto fac = factorize(f, false);
        for (auto& [p, m] : fac.factors) {
            if (p.total_degree() <= 4) {
                CHECK(irreducible_oracle_univar(p, 0));
                ++checked;
            }
        }
    }
    CHECK(checked >= 40);
}

TEST_CASE("factorization determinism and cache transparency") {
    Polynomial f = P("6*b*c^3+15*b^2*c^2+9*b^3*c+6*a*c^3+21*a*b*c^2+18*a*b^2*c"
                     "+6*a^2*c^2+9*a^2*b*c",
                     abc);
    FactorCache cache(8);
    auto r1 = factorize(f, false, &cache);
    auto r2 = factorize(f, false, &cache);  // hit
    auto r3 = factorize(f, false);          // no cache
    CHECK(r1 == r2);
    CHECK(r1 == r3);
    CHECK(cache.size() >= 1);

    // LRU eviction keeps the cache bounded.
    FactorCache tiny(2);
    for (long k = 1; k <= 5; ++k) {
        Polynomial g = P("x^2", xv) + Polynomial::constant(BigInt(k), xv);
        factorize(g, false, &tiny);
    }
    CHECK(tiny.size() == 2);
}
