#include <catch2/catch_amalgamated.hpp>

#include "helpers.hpp"
#include "polyform/polynomial.hpp"

using namespace polyform;
using namespace polyform::testing;

namespace {
const VarTablePtr abc = make_vars({"a", "b", "c"});
const VarTablePtr xy = make_vars({"x", "y"});
const VarTablePtr xv = make_vars({"x"});
}  // namespace

TEST_CASE("polynomial addition merges") {
    CHECK(P("x+1", xv) + P("x-1", xv) == P("2x", xv));
    Polynomial f = P("3a^2*b - c + 7", abc);
    CHECK(f + Polynomial(abc) == f);

    RngState rng(17);
    for (int t = 0; t < 100; ++t) {
        Polynomial a = rand_poly(abc, rng, 100, 8, 50);
        Polynomial b = rand_poly(abc, rng, 100, 8, 50);
        CHECK((a + b) - b == a);
        CHECK(((a + b) + b) == (a + (b + b)));
        CHECK((a + b).check_invariants());
    }
}

TEST_CASE("heap multiplication") {
    CHECK(P("a+b", abc) * P("a+b", abc) == P("a^2+2*a*b+b^2", abc));

    // 3*(a+b)*(a+b+c)*(3*b+2*c), the worked product.
    Polynomial f = Polynomial::constant(BigInt(3), abc) * P("a+b", abc) *
                   P("a+b+c", abc) * P("3b+2c", abc);
    CHECK(f == P("6*b*c^2+15*b^2*c+9*b^3+6*a*c^2+21*a*b*c+18*a*b^2+6*a^2*c+9*a^2*b", abc));
    CHECK(f.term_count() == 8);

    RngState rng(23);
    for (int t = 0; t < 10; ++t) {
        Polynomial a = rand_poly(abc, rng, 200, 10, 1000);
        Polynomial b = rand_poly(abc, rng, 200, 10, 1000);
        Polynomial h = Polynomial::mul_heap(a, b);
        CHECK(h == naive_mul(a, b));
        CHECK(h.check_invariants());
    }
}

TEST_CASE("heap multiplication equals naive oracle on 500 random pairs") {
    RngState rng(29);
    for (int t = 0; t < 500; ++t) {
        Polynomial a = rand_poly(abc, rng, 30, 6, 100);
        Polynomial b = rand_poly(abc, rng, 30, 6, 100);
        CHECK(Polynomial::mul_heap(a, b) == naive_mul(a, b));
    }
}

TEST_CASE("ring axioms on random samples") {
    RngState rng(31);
    for (int t = 0; t < 50; ++t) {
        Polynomial a = rand_poly(abc, rng, 20, 5, 30);
        Polynomial b = rand_poly(abc, rng, 20, 5, 30);
        Polynomial c = rand_poly(abc, rng, 20, 5, 30);
        CHECK(a * b == b * a);
        CHECK((a * b) * c == a * (b * c));
        CHECK(a * (b + c) == a * b + a * c);
    }
}

TEST_CASE("divmod heap") {
    auto [q1, r1] = Polynomial::divmod_heap(P("x^2-1", xv), P("x-1", xv));
    CHECK(q1 == P("x+1", xv));
    CHECK(r1.is_zero());

    auto [q2, r2] = Polynomial::divmod_heap(P("x^2*y+x", xy), P("x*y", xy));
    CHECK(q2 == P("x", xy));
    CHECK(r2 == P("x", xy));

    CHECK_THROWS_AS(Polynomial::divmod_heap(P("x", xv), Polynomial(xv)), DomainError);

    RngState rng(37);
    for (int t = 0; t < 200; ++t) {
        Polynomial g = rand_nonzero_poly(abc, rng, 10, 4, 20);
        Polynomial h = rand_nonzero_poly(abc, rng, 10, 4, 20);
        Polynomial f = g * h;
        auto [q, r] = Polynomial::divmod_heap(f, g);
        CHECK(r.is_zero());
        CHECK(q == h);
    }
    // f = q*g + r and lt(g) divides no term of r, in monomial or (over the
    // integers) coefficient sense.
    for (int t = 0; t < 200; ++t) {
        Polynomial f = rand_poly(abc, rng, 25, 6, 40);
        Polynomial g = rand_nonzero_poly(abc, rng, 8, 3, 10);
        auto [q, r] = Polynomial::divmod_heap(f, g);
        CHECK(q * g + r == f);
        const auto& lt = g.lead();
        for (const auto& m : r.monomials()) {
            bool mono_div = true;
            for (std::size_t v = 0; v < m.exps.size(); ++v)
                if (m.exps[v] < lt.exps[v]) mono_div = false;
            bool coeff_div = m.coeff.divisible_by(lt.coeff);
            CHECK_FALSE((mono_div && coeff_div));
        }
    }
}

TEST_CASE("divmod over prime field") {
    ModDomain z101 = ModDomain::mod(101);
    RngState rng(41);
    for (int t = 0; t < 100; ++t) {
        Polynomial f = rand_poly(xy, rng, 15, 6, 100, z101);
        Polynomial g = rand_nonzero_poly(xy, rng, 6, 3, 100, z101);
        auto [q, r] = Polynomial::divmod_heap(f, g);
        CHECK(q * g + r == f);
        // Over a field only monomial divisibility can block reduction.
        const auto& lt = g.lead();
        for (const auto& m : r.monomials()) {
            bool mono_div = true;
            for (std::size_t v = 0; v < m.exps.size(); ++v)
                if (m.exps[v] < lt.exps[v]) mono_div = false;
            CHECK_FALSE(mono_div);
        }
    }
}

TEST_CASE("content and primitive part") {
    auto [c1, p1] = P("6x+4x*y", xy).content_primpart();
    CHECK(c1 == BigRat(2));
    CHECK(p1 == P("3x+2x*y", xy));

    auto [c2, p2] = P("-3x-3", xv).content_primpart();
    CHECK(c2 == BigRat(-3));
    CHECK(p2 == P("x+1", xv));
    CHECK(p2.lc().sign() > 0);

    auto [c0, p0] = Polynomial(xv).content_primpart();
    CHECK(c0.is_zero());
    CHECK(p0.is_zero());

    RngState rng(43);
    for (int t = 0; t < 100; ++t) {
        Polynomial f = rand_nonzero_poly(abc, rng, 12, 5, 60);
        auto [c, p] = f.content_primpart();
        CHECK(p.icontent().is_one());
        CHECK(p.lc().sign() > 0);
        CHECK(p * c.num() == f * c.den());
    }
}

TEST_CASE("eval_subst") {
    Polynomial f = P("c+b+a", abc);
    auto c = abc->find("c").value();
    CHECK(f.eval_subst(c, P("0-b-a", abc)).is_zero());
    CHECK(P("2c+3b", abc).eval_subst(c, P("0-b-a", abc)) == P("b-2a", abc));
    Polynomial g = P("a^2*c + c^2", abc);
    CHECK(g.eval_subst(c, Polynomial::monomial(BigInt(1), c, 1, abc)) == g);
    CHECK(g.eval_subst(c, BigInt(2)) == P("2*a^2+4", abc));

    // Substitution is a ring homomorphism.
    RngState rng(47);
    for (int t = 0; t < 50; ++t) {
        Polynomial a = rand_poly(abc, rng, 10, 4, 20);
        Polynomial b = rand_poly(abc, rng, 10, 4, 20);
        Polynomial v = rand_poly(abc, rng, 4, 2, 10);
        CHECK((a + b).eval_subst(c, v) == a.eval_subst(c, v) + b.eval_subst(c, v));
        CHECK((a * b).eval_subst(c, v) == a.eval_subst(c, v) * b.eval_subst(c, v));
    }
}

TEST_CASE("newton interpolation") {
    ModDomain z101 = ModDomain::mod(101);
    auto xvar = xv->find("x").value();

    std::vector<std::pair<BigInt, Polynomial>> pts;
    for (long x : {0, 1, 2})
        pts.push_back({BigInt(x), Polynomial::constant(BigInt(x * x + 1), xv, z101)});
    CHECK(Polynomial::interpolate_newton(xvar, pts, z101) ==
          P("x^2+1", xv, z101));

    std::vector<std::pair<BigInt, Polynomial>> single{
        {BigInt(0), Polynomial::constant(BigInt(7), xv, z101)}};
    CHECK(Polynomial::interpolate_newton(xvar, single, z101) ==
          Polynomial::constant(BigInt(7), xv, z101));

    std::vector<std::pair<BigInt, Polynomial>> dup{
        {BigInt(1), Polynomial(xv, z101)}, {BigInt(102), Polynomial(xv, z101)}};
    CHECK_THROWS_AS(Polynomial::interpolate_newton(xvar, dup, z101), DomainError);

    // Evaluate-then-interpolate on random degree-10 polynomials.
    RngState rng(53);
    for (int t = 0; t < 30; ++t) {
        Polynomial f = rand_poly(xv, rng, 11, 10, 100, z101);
        std::vector<std::pair<BigInt, Polynomial>> p2;
        for (long x = 0; x <= 10; ++x)
            p2.push_back({BigInt(x), f.eval_subst(xvar, BigInt(x))});
        CHECK(Polynomial::interpolate_newton(xvar, p2, z101) == f);
    }

    // Interpolation with polynomial values in another variable.
    auto yvals = [&](long x) { return P("x+1", xy, z101) * BigInt(x); };
    std::vector<std::pair<BigInt, Polynomial>> pv;
    auto yvar = xy->find("y").value();
    for (long x : {0, 1, 2}) pv.push_back({BigInt(x), yvals(x)});
    Polynomial interp = Polynomial::interpolate_newton(yvar, pv, z101);
    CHECK(interp == P("x*y + y", xy, z101));
}

TEST_CASE("dense round trip") {
    auto xvar = xv->find("x").value();
    Polynomial f = P("x^3+2", xv);
    DenseUniPoly d = to_dense(f, xvar);
    CHECK(d.coeffs().size() == 4);
    CHECK(d[0] == BigInt(2));
    CHECK(d[3] == BigInt(1));
    CHECK(from_dense(d, xvar, xv) == f);

    DenseUniPoly z = to_dense(Polynomial(xv), xvar);
    CHECK(z.is_zero());
    CHECK(from_dense(z, xvar, xv).is_zero());

    CHECK_THROWS_AS(to_dense(P("x*y", xy), xy->find("x").value()), DomainError);

    RngState rng(59);
    for (int t = 0; t < 100; ++t) {
        Polynomial p = rand_poly(xv, rng, 10, 12, 50);
        CHECK(from_dense(to_dense(p, xvar), xvar, xv) == p);
    }
}

TEST_CASE("exponent overflow checks") {
    auto tight = make_vars({"x"}, 8);
    Polynomial f = Polynomial::monomial(BigInt(1), 0, 8, tight);
    CHECK_THROWS_AS(f * f, OverflowError);
    CHECK_THROWS_AS(Polynomial::monomial(BigInt(1), 0, 9, tight), OverflowError);
}

TEST_CASE("variable table unification") {
    auto ab = make_vars({"a", "b"});
    auto bc = make_vars({"b", "c"});
    Polynomial f = P("a+b", ab);
    Polynomial g = P("b+c", bc);
    Polynomial s = f + g;
    CHECK(s.vars()->names() == std::vector<std::string>{"a", "b", "c"});
    CHECK(s == P("a+2b+c", abc));

    ModDomain z5 = ModDomain::mod(5);
    CHECK_THROWS_AS(P("a", ab, z5) + P("a", ab, ModDomain::mod(7)), DomainError);
    // Integers embed into modular domains.
    CHECK(P("a", ab, z5) + P("4a", ab) == Polynomial(ab, z5));
}

TEST_CASE("canonical text") {
    CHECK(Polynomial(abc).to_string() == "0");
    CHECK(P("a^2 - 2a*b + 1", abc).to_string() == "a^2-2*a*b+1");
    CHECK((-P("a", abc)).to_string() == "-a");
    Polynomial f = Polynomial::constant(BigInt(3), abc) * P("a+b", abc) *
                   P("a+b+c", abc) * P("3b+2c", abc);
    CHECK(f.to_string() ==
          "9*a^2*b+6*a^2*c+18*a*b^2+21*a*b*c+6*a*c^2+9*b^3+15*b^2*c+6*b*c^2");
}
