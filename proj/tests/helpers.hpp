#ifndef POLYFORM_TEST_HELPERS_HPP
#define POLYFORM_TEST_HELPERS_HPP

// Shared test utilities: a small polynomial term parser (sums of integer
// monomials, no parentheses), random sparse polynomial generation, and the
// naive quadratic multiplication oracle.

#include <cctype>
#include <string>
#include <vector>

#include "polyform/polynomial.hpp"
#include "polyform/random.hpp"

namespace polyform::testing {

// Parses "9*a^2*b-6*a*c^2+3" style sums over the given table.
inline Polynomial P(const std::string& text, const VarTablePtr& vars,
                    ModDomain dom = ModDomain::integers()) {
    std::vector<Monomial> ms;
    std::size_t i = 0;
    auto skip = [&] {
        while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    };
    skip();
    while (i < text.size()) {
        int sign = 1;
        if (text[i] == '+') {
            ++i;
        } else if (text[i] == '-') {
            sign = -1;
            ++i;
        }
        skip();
        BigInt coeff(1);
        bool saw_coeff = false;
        if (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
            std::string num;
            while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i])))
                num += text[i++];
            coeff = BigInt(num);
            saw_coeff = true;
        }
        std::vector<std::uint32_t> exps(vars->size(), 0);
        bool saw_var = false;
        skip();
        while (i < text.size() && (text[i] == '*' || std::isalpha(static_cast<unsigned char>(text[i])))) {
            if (text[i] == '*') {
                ++i;
                skip();
            }
            std::string name;
            while (i < text.size() &&
                   (std::isalnum(static_cast<unsigned char>(text[i])) || text[i] == '_'))
                name += text[i++];
            if (name.empty()) throw std::runtime_error("test parse error: " + text);
            std::uint32_t e = 1;
            if (i < text.size() && text[i] == '^') {
                ++i;
                std::string num;
                while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i])))
                    num += text[i++];
                e = static_cast<std::uint32_t>(std::stoul(num));
            }
            auto idx = vars->find(name);
            if (!idx) throw std::runtime_error("test parse: unknown variable " + name);
            exps[*idx] += e;
            saw_var = true;
            skip();
        }
        if (!saw_coeff && !saw_var) throw std::runtime_error("test parse error: " + text);
        ms.push_back({BigInt(sign) * coeff, std::move(exps)});
        skip();
    }
    return Polynomial::from_monomials(std::move(ms), vars, dom);
}

inline Polynomial rand_poly(const VarTablePtr& vars, RngState& rng, int max_terms,
                            std::uint32_t max_deg, long coeff_range,
                            ModDomain dom = ModDomain::integers()) {
    std::vector<Monomial> ms;
    auto nterms = rng.random(static_cast<std::uint64_t>(max_terms) + 1) - 1;
    for (std::uint64_t t = 0; t < nterms; ++t) {
        BigInt c(static_cast<long>(rng.random(2 * coeff_range)) - coeff_range);
        std::vector<std::uint32_t> e(vars->size());
        for (auto& x : e) x = static_cast<std::uint32_t>(rng.random(max_deg + 1) - 1);
        ms.push_back({std::move(c), std::move(e)});
    }
    return Polynomial::from_monomials(std::move(ms), vars, dom);
}

inline Polynomial rand_nonzero_poly(const VarTablePtr& vars, RngState& rng,
                                    int max_terms, std::uint32_t max_deg,
                                    long coeff_range,
                                    ModDomain dom = ModDomain::integers()) {
    for (;;) {
        Polynomial p = rand_poly(vars, rng, max_terms, max_deg, coeff_range, dom);
        if (!p.is_zero()) return p;
    }
}

// Quadratic schoolbook multiplication, the oracle for mul_heap.
inline Polynomial naive_mul(const Polynomial& a, const Polynomial& b) {
    auto [ua, ub] = Polynomial::unify(a, b);
    std::vector<Monomial> ms;
    for (const auto& x : ua.monomials())
        for (const auto& y : ub.monomials()) {
            std::vector<std::uint32_t> e(x.exps.size());
            for (std::size_t v = 0; v < e.size(); ++v) e[v] = x.exps[v] + y.exps[v];
            ms.push_back({x.coeff * y.coeff, std::move(e)});
        }
    return Polynomial::from_monomials(std::move(ms), ua.vars(), ua.domain());
}

}  // namespace polyform::testing

#endif
