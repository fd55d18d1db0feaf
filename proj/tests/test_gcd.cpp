#include <catch2/catch_amalgamated.hpp>

#include "helpers.hpp"
#include "polyform/gcd.hpp"

using namespace polyform;
using namespace polyform::testing;

namespace {
const VarTablePtr abc = make_vars({"a", "b", "c"});
const VarTablePtr xv = make_vars({"x"});

Polynomial normalized(Polynomial p) {
    if (!p.is_zero() && p.lc().sign() < 0) p = -p;
    return p;
}
}  // namespace

TEST_CASE("univariate gcd mod p") {
    ModDomain z101 = ModDomain::mod(101);
    auto x = xv->find("x").value();
    DenseUniPoly f = to_dense(P("x^2-1", xv, z101), x);
    DenseUniPoly g = to_dense(P("x-1", xv, z101), x);
    DenseUniPoly h = gcd_univariate_modp(f, g);
    CHECK(from_dense(h, x, xv) == P("x+100", xv, z101));
    CHECK(h.lc().is_one());

    CHECK(gcd_univariate_modp(f, DenseUniPoly(z101)) == f.monic());

    RngState rng(61);
    for (int t = 0; t < 200; ++t) {
        Polynomial u = rand_nonzero_poly(xv, rng, 5, 6, 100, z101);
        Polynomial v = rand_nonzero_poly(xv, rng, 5, 6, 100, z101);
        Polynomial w = rand_nonzero_poly(xv, rng, 5, 6, 100, z101);
        DenseUniPoly du = to_dense(u, x), dv = to_dense(v, x), dw = to_dense(w, x);
        if (gcd_univariate_modp(du, dv).degree() != 0) continue;  // want coprime u,v
        DenseUniPoly h2 = gcd_univariate_modp(du * dw, dv * dw);
        CHECK(h2 == dw.monic());
        CHECK(DenseUniPoly::divmod(du * dw, h2).second.is_zero());
    }
}

TEST_CASE("heuristic gcd") {
    // The worked pair: both share c-free part? Construct explicitly.
    Polynomial common = P("a+b", abc) * P("a+b+c", abc);
    Polynomial f = Polynomial::constant(BigInt(3), abc) * common * P("3b+2c", abc);
    Polynomial g = Polynomial::constant(BigInt(2), abc) * common * P("c", abc);
    auto h = gcd_heuristic(f, g);
    REQUIRE(h.has_value());
    CHECK(normalized(*h) == common);

    auto self = gcd_heuristic(f, f);
    REQUIRE(self.has_value());
    CHECK(normalized(*self) == normalized(f));

    auto one = gcd_heuristic(P("x+1", xv), P("x-1", xv));
    REQUIRE(one.has_value());
    CHECK(one->is_one());
}

TEST_CASE("zippel gcd on constructed instances") {
    RngState rng(67);
    int done = 0;
    for (int t = 0; t < 60 && done < 40; ++t) {
        Polynomial h = rand_nonzero_poly(abc, rng, 10, 3, 20).primitive_part();
        Polynomial u = rand_nonzero_poly(abc, rng, 10, 3, 20);
        Polynomial v = rand_nonzero_poly(abc, rng, 10, 3, 20);
        if (h.is_constant()) continue;
        Polynomial hu = h * u, hv = h * v;
        if (hu.is_zero() || hv.is_zero()) continue;
        Polynomial g = gcd_zippel(hu, hv);
        // g is a common divisor containing h.
        CHECK((hu % g).is_zero());
        CHECK((hv % g).is_zero());
        CHECK((g % h).is_zero());
        ++done;
    }
    CHECK(done == 40);

    Polynomial f = P("a*b+b^2+3", abc);
    CHECK(gcd_zippel(f, Polynomial::constant(BigInt(1), abc)).is_one());
}

TEST_CASE("gcd dispatcher and properties") {
    CHECK(gcd(P("4x+4", xv), P("6x+6", xv)) == P("2x+2", xv));
    CHECK(gcd(P("x+1", xv), Polynomial(xv)) == P("x+1", xv));
    CHECK(gcd(Polynomial(xv), P("0-x-1", xv)) == P("x+1", xv));
    CHECK_THROWS_AS(gcd_multi({}), DomainError);
    CHECK(gcd_multi({P("0-4x-4", xv)}) == P("4x+4", xv));
    CHECK(gcd_multi({P("4x+4", xv), P("6x+6", xv), P("2x^2-2", xv)}) == P("2x+2", xv));

    RngState rng(71);
    for (int t = 0; t < 60; ++t) {
        Polynomial f = rand_nonzero_poly(abc, rng, 8, 3, 15);
        Polynomial g = rand_nonzero_poly(abc, rng, 8, 3, 15);
        Polynomial h = gcd(f, g);
        CHECK((f % h).is_zero());
        CHECK((g % h).is_zero());
        CHECK(h.lc().sign() > 0);
        CHECK(gcd(g, f) == h);
    }

    // gcd(f*c, g*c) picks up c, up to normalization.
    for (int t = 0; t < 25; ++t) {
        Polynomial f = rand_nonzero_poly(abc, rng, 6, 2, 10);
        Polynomial g = rand_nonzero_poly(abc, rng, 6, 2, 10);
        Polynomial c = rand_nonzero_poly(abc, rng, 4, 2, 10).primitive_part();
        if (c.is_constant()) continue;
        Polynomial h1 = gcd(f * c, g * c);
        Polynomial h2 = gcd(f, g);
        CHECK((h1 % (h2 * c).primitive_part()).is_zero());
        CHECK(((h2 * c * BigInt::gcd(f.icontent(), g.icontent())) % h1).is_zero());
    }
}

TEST_CASE("heuristic agrees with zippel on 500 constructed instances") {
    RngState rng(73);
    int considered = 0;
    for (int t = 0; t < 1200 && considered < 500; ++t) {
        Polynomial h = rand_nonzero_poly(abc, rng, 6, 2, 10).primitive_part();
        Polynomial u = rand_nonzero_poly(abc, rng, 6, 2, 10);
        Polynomial v = rand_nonzero_poly(abc, rng, 6, 2, 10);
        Polynomial f = h * u, g = h * v;
        if (f.is_zero() || g.is_zero()) continue;
        auto heur = gcd_heuristic(f.primitive_part(), g.primitive_part());
        if (!heur) continue;
        ++considered;
        Polynomial z = gcd_zippel(f.primitive_part(), g.primitive_part());
        CHECK(normalized(*heur) == normalized(z));
    }
    CHECK(considered == 500);
}

TEST_CASE("poly inverse") {
    auto [s1, p1] = poly_inverse(P("x", xv), P("x^2+1", xv));
    CHECK(s1 * BigRat(1) == BigRat(-1));
    CHECK(p1 == P("x", xv));  // -1 * x = -x

    auto [s2, p2] = poly_inverse(Polynomial::constant(BigInt(1), xv), P("x^2+5", xv));
    CHECK(s2 == BigRat(1));
    CHECK(p2.is_one());

    // (p3*p1) == 1 mod p2 over Q: multiply back and reduce.
    auto checkinv = [&](const Polynomial& a, const Polynomial& m) {
        auto [s, p] = poly_inverse(a, m);
        Polynomial prod = p * a;  // scale s applies to the whole product
        // prod * s mod m must be the constant 1: reduce prod mod m over Q by
        // clearing denominators: s = n/d, so n * prod == d (mod m).
        Polynomial r = (s.num() * prod) % m;
        Polynomial expect = Polynomial::constant(s.den(), m.vars());
        CHECK(r == expect);
    };
    checkinv(P("x+2", xv), P("x^2+1", xv));
    checkinv(P("3x+1", xv), P("x^3+x+7", xv));
    checkinv(Polynomial::constant(BigInt(2), xv), P("x^2+1", xv));

    CHECK_THROWS_AS(poly_inverse(P("x+1", xv), P("x^2+2x+1", xv)), DomainError);
    CHECK_THROWS_AS(poly_inverse(P("a*b", abc), P("a^2", abc)), DomainError);

    // Modular inverse over Z/101: multiply-back oracle on random coprime pairs.
    ModDomain z101 = ModDomain::mod(101);
    auto x = xv->find("x").value();
    RngState rng(79);
    int done = 0;
    for (int t = 0; t < 200 && done < 100; ++t) {
        Polynomial a = rand_nonzero_poly(xv, rng, 4, 5, 100, z101);
        Polynomial m = rand_nonzero_poly(xv, rng, 4, 6, 100, z101);
        if (m.degree(x) < 1) continue;
        DenseUniPoly da = to_dense(a, x), dm = to_dense(m, x);
        if (gcd_univariate_modp(da, dm).degree() != 0) continue;
        auto [s, p] = poly_inverse(a, m);
        CHECK(s == BigRat(1));
        Polynomial r = (p * a) % m;
        CHECK(r == Polynomial::constant(BigInt(1), xv, z101));
        CHECK(p.degree(x) < m.degree(x));
        ++done;
    }
    CHECK(done == 100);
}
