#ifndef POLYFORM_POLYNOMIAL_HPP
#define POLYFORM_POLYNOMIAL_HPP

// Sparse multivariate polynomials in a degree-sparse, variable-dense
// representation: only nonzero monomials are stored, each carrying the full
// exponent vector over an ordered variable table. Monomials are kept
// strictly descending under graded lexicographic order. Coefficients live
// in a tagged domain (integers, Z/p, Z/p^k); modular coefficients are
// stored as least non-negative representatives.

#include <algorithm>
#include <cstdint>
#include <memory>
#include <optional>
#include <queue>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "polyform/bigint.hpp"
#include "polyform/errors.hpp"
#include "polyform/numeric.hpp"

namespace polyform {

class VarTable {
  public:
    static constexpr std::uint32_t kDefaultMaxPower = 32767;

    VarTable() = default;
    explicit VarTable(std::vector<std::string> names,
                      std::uint32_t max_power = kDefaultMaxPower)
        : names_(std::move(names)), max_power_(max_power) {
        for (std::size_t i = 0; i < names_.size(); ++i)
            for (std::size_t j = i + 1; j < names_.size(); ++j)
                if (names_[i] == names_[j])
                    throw DomainError("VarTable: duplicate variable " + names_[i]);
    }

    std::size_t size() const { return names_.size(); }
    const std::string& name(std::size_t i) const { return names_[i]; }
    const std::vector<std::string>& names() const { return names_; }
    std::uint32_t max_power() const { return max_power_; }

    std::optional<std::size_t> find(const std::string& n) const {
        for (std::size_t i = 0; i < names_.size(); ++i)
            if (names_[i] == n) return i;
        return std::nullopt;
    }

  private:
    std::vector<std::string> names_;
    std::uint32_t max_power_ = kDefaultMaxPower;
};

using VarTablePtr = std::shared_ptr<const VarTable>;

inline VarTablePtr make_vars(std::vector<std::string> names,
                             std::uint32_t max_power = VarTable::kDefaultMaxPower) {
    return std::make_shared<const VarTable>(std::move(names), max_power);
}

struct Monomial {
    BigInt coeff;
    std::vector<std::uint32_t> exps;  // one slot per variable in the table
};

// Graded lexicographic comparison of exponent vectors of equal length:
// total degree first, then left-to-right exponents.
inline int cmp_exps(const std::vector<std::uint32_t>& a,
                    const std::vector<std::uint32_t>& b) {
    long long da = 0, db = 0;
    for (auto e : a) da += e;
    for (auto e : b) db += e;
    if (da != db) return da < db ? -1 : 1;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] != b[i]) return a[i] < b[i] ? -1 : 1;
    return 0;
}

class Polynomial {
  public:
    Polynomial() : domain_(ModDomain::integers()), vars_(make_vars({})) {}
    explicit Polynomial(VarTablePtr vars, ModDomain domain = ModDomain::integers())
        : domain_(std::move(domain)), vars_(std::move(vars)) {}

    static Polynomial constant(const BigInt& c, VarTablePtr vars,
                               ModDomain domain = ModDomain::integers()) {
        Polynomial p(std::move(vars), std::move(domain));
        BigInt r = p.domain_.reduce(c);
        if (!r.is_zero())
            p.mono_.push_back({std::move(r), std::vector<std::uint32_t>(p.vars_->size(), 0)});
        return p;
    }

    // c * x_var^power
    static Polynomial monomial(const BigInt& c, std::size_t var, std::uint32_t power,
                               VarTablePtr vars, ModDomain domain = ModDomain::integers()) {
        Polynomial p(std::move(vars), std::move(domain));
        if (var >= p.vars_->size()) throw DomainError("Polynomial: variable index out of range");
        if (power > p.vars_->max_power())
            throw OverflowError("Polynomial: exponent exceeds max power bound");
        BigInt r = p.domain_.reduce(c);
        if (!r.is_zero()) {
            std::vector<std::uint32_t> e(p.vars_->size(), 0);
            e[var] = power;
            p.mono_.push_back({std::move(r), std::move(e)});
        }
        return p;
    }

    // Terms may arrive unsorted and with repeats; normalizes.
    static Polynomial from_monomials(std::vector<Monomial> ms, VarTablePtr vars,
                                     ModDomain domain = ModDomain::integers()) {
        Polynomial p(std::move(vars), std::move(domain));
        p.mono_ = std::move(ms);
        p.normalize();
        return p;
    }

    const ModDomain& domain() const { return domain_; }
    const VarTablePtr& vars() const { return vars_; }
    const std::vector<Monomial>& monomials() const { return mono_; }

    bool is_zero() const { return mono_.empty(); }
    bool is_constant() const {
        return mono_.empty() || (mono_.size() == 1 && total_degree() == 0);
    }
    bool is_one() const {
        return mono_.size() == 1 && total_degree() == 0 && mono_[0].coeff.is_one();
    }
    std::size_t term_count() const { return mono_.size(); }

    // Constant value; zero polynomial yields 0.
    BigInt constant_value() const {
        if (mono_.empty()) return BigInt(0);
        if (!is_constant()) throw DomainError("Polynomial: not a constant");
        return mono_[0].coeff;
    }

    const Monomial& lead() const {
        if (mono_.empty()) throw DomainError("Polynomial: zero has no leading term");
        return mono_.front();
    }
    const BigInt& lc() const { return lead().coeff; }

    long total_degree() const {
        if (mono_.empty()) return -1;
        long d = 0;
        for (auto e : mono_[0].exps) d += e;
        return d;
    }

    long degree(std::size_t var) const {
        long d = -1;
        for (const auto& m : mono_) d = std::max(d, static_cast<long>(m.exps[var]));
        return d;
    }

    // Indices of variables that actually occur.
    std::vector<std::size_t> used_vars() const {
        std::vector<std::size_t> r;
        for (std::size_t v = 0; v < vars_->size(); ++v)
            for (const auto& m : mono_)
                if (m.exps[v] > 0) {
                    r.push_back(v);
                    break;
                }
        return r;
    }

    bool is_univariate_in(std::size_t var) const {
        auto u = used_vars();
        return u.empty() || (u.size() == 1 && u[0] == var);
    }

    Polynomial with_domain(const ModDomain& d) const {
        Polynomial r(vars_, d);
        r.mono_ = mono_;
        r.normalize();
        return r;
    }

    // Reinterpret modular coefficients as balanced integers.
    Polynomial to_integers_balanced() const {
        Polynomial r(vars_, ModDomain::integers());
        r.mono_.reserve(mono_.size());
        for (const auto& m : mono_) {
            BigInt c = domain_.balanced(m.coeff);
            if (!c.is_zero()) r.mono_.push_back({std::move(c), m.exps});
        }
        return r;
    }

    friend Polynomial operator-(const Polynomial& a) {
        Polynomial r(a.vars_, a.domain_);
        r.mono_.reserve(a.mono_.size());
        for (const auto& m : a.mono_)
            r.mono_.push_back({a.domain_.reduce(-m.coeff), m.exps});
        return r;
    }

    // Merge addition of two sorted polynomials.
    friend Polynomial operator+(const Polynomial& a, const Polynomial& b) {
        auto [ua, ub] = unify(a, b);
        Polynomial r(ua.vars_, ua.domain_);
        r.mono_.reserve(ua.mono_.size() + ub.mono_.size());
        std::size_t i = 0, j = 0;
        while (i < ua.mono_.size() && j < ub.mono_.size()) {
            int c = cmp_exps(ua.mono_[i].exps, ub.mono_[j].exps);
            if (c > 0) {
                r.mono_.push_back(ua.mono_[i++]);
            } else if (c < 0) {
                r.mono_.push_back(ub.mono_[j++]);
            } else {
                BigInt s = r.domain_.reduce(ua.mono_[i].coeff + ub.mono_[j].coeff);
                if (!s.is_zero()) r.mono_.push_back({std::move(s), ua.mono_[i].exps});
                ++i;
                ++j;
            }
        }
        for (; i < ua.mono_.size(); ++i) r.mono_.push_back(ua.mono_[i]);
        for (; j < ub.mono_.size(); ++j) r.mono_.push_back(ub.mono_[j]);
        return r;
    }
    friend Polynomial operator-(const Polynomial& a, const Polynomial& b) { return a + (-b); }

    friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
        return mul_heap(a, b);
    }
    friend Polynomial operator*(const Polynomial& a, const BigInt& c) {
        Polynomial r(a.vars_, a.domain_);
        r.mono_.reserve(a.mono_.size());
        for (const auto& m : a.mono_) {
            BigInt v = a.domain_.reduce(m.coeff * c);
            if (!v.is_zero()) r.mono_.push_back({std::move(v), m.exps});
        }
        return r;
    }
    friend Polynomial operator*(const BigInt& c, const Polynomial& a) { return a * c; }

    Polynomial& operator+=(const Polynomial& b) { return *this = *this + b; }
    Polynomial& operator-=(const Polynomial& b) { return *this = *this - b; }
    Polynomial& operator*=(const Polynomial& b) { return *this = *this * b; }

    friend bool operator==(const Polynomial& a, const Polynomial& b) {
        if (a.vars_ == b.vars_ || a.vars_->names() == b.vars_->names())
            return a.mono_equal(b);
        auto [ua, ub] = unify(a, b);
        return ua.mono_equal(ub);
    }
    friend bool operator!=(const Polynomial& a, const Polynomial& b) { return !(a == b); }

    /** Heap multiplication.
     *
     *  Streams the |f| merge rows f_i * g_* through a binary max-heap keyed
     *  by the product monomial, combining entries with equal keys, so terms
     *  come out sorted and deduplicated in one pass. One heap entry lives
     *  per term of the smaller operand.
     */
    static Polynomial mul_heap(const Polynomial& a, const Polynomial& b) {
        auto [ua, ub] = unify(a, b);
        if (ua.is_zero() || ub.is_zero()) return Polynomial(ua.vars_, ua.domain_);
        const Polynomial& f = ua.mono_.size() <= ub.mono_.size() ? ua : ub;
        const Polynomial& g = ua.mono_.size() <= ub.mono_.size() ? ub : ua;

        Polynomial r(ua.vars_, ua.domain_);
        const std::uint32_t maxp = r.vars_->max_power();

        struct Entry {
            std::vector<std::uint32_t> exps;
            std::size_t fi, gi;
        };
        auto cmp = [](const Entry& x, const Entry& y) {
            return cmp_exps(x.exps, y.exps) < 0;
        };
        std::priority_queue<Entry, std::vector<Entry>, decltype(cmp)> heap(cmp);

        auto product_exps = [&](std::size_t fi, std::size_t gi) {
            std::vector<std::uint32_t> e(r.vars_->size());
            for (std::size_t v = 0; v < e.size(); ++v) {
                std::uint64_t s = static_cast<std::uint64_t>(f.mono_[fi].exps[v]) +
                                  g.mono_[gi].exps[v];
                if (s > maxp)
                    throw OverflowError("mul_heap: exponent exceeds max power bound");
                e[v] = static_cast<std::uint32_t>(s);
            }
            return e;
        };

        for (std::size_t i = 0; i < f.mono_.size(); ++i)
            heap.push({product_exps(i, 0), i, 0});

        while (!heap.empty()) {
            std::vector<std::uint32_t> key = heap.top().exps;
            BigInt sum(0);
            while (!heap.empty() && heap.top().exps == key) {
                Entry e = heap.top();
                heap.pop();
                sum += f.mono_[e.fi].coeff * g.mono_[e.gi].coeff;
                if (e.gi + 1 < g.mono_.size())
                    heap.push({product_exps(e.fi, e.gi + 1), e.fi, e.gi + 1});
            }
            sum = r.domain_.reduce(sum);
            if (!sum.is_zero()) r.mono_.push_back({std::move(sum), std::move(key)});
        }
        return r;
    }

    /** Heap division with remainder under the graded-lex order.
     *
     *  Computes f = q*g + r by streaming the pending difference f - q*g
     *  through a heap: terms of f plus one row per quotient term. A popped
     *  lead term goes to the quotient when the lead monomial of g divides
     *  it monomially and (over the integers) its coefficient divides
     *  exactly; otherwise it moves to the remainder. So no remainder term
     *  is divisible by the lead term of g, in both senses.
     */
    static std::pair<Polynomial, Polynomial> divmod_heap(const Polynomial& a,
                                                         const Polynomial& b) {
        auto [f, g] = unify(a, b);
        if (g.is_zero()) throw DomainError("divmod_heap: division by zero polynomial");
        Polynomial q(f.vars_, f.domain_);
        Polynomial r(f.vars_, f.domain_);
        if (f.is_zero()) return {q, r};

        const ModDomain& dom = f.domain_;
        const auto& glead = g.mono_.front();
        // Inverse of lc(g) when it is a unit in a modular domain.
        std::optional<BigInt> lginv;
        if (!dom.is_integers()) {
            BigInt pr(static_cast<unsigned long>(dom.p()));
            if (BigInt::gcd(glead.coeff, pr).is_one())
                lginv = BigInt::invmod(glead.coeff, dom.modulus());
        }

        struct Entry {
            std::vector<std::uint32_t> exps;
            bool from_f;
            std::size_t qi, gi;  // qi unused for f-entries (gi = f index)
        };
        auto cmp = [](const Entry& x, const Entry& y) {
            return cmp_exps(x.exps, y.exps) < 0;
        };
        std::priority_queue<Entry, std::vector<Entry>, decltype(cmp)> heap(cmp);

        const std::uint32_t maxp = f.vars_->max_power();
        auto sum_exps = [&](const std::vector<std::uint32_t>& x,
                            const std::vector<std::uint32_t>& y) {
            std::vector<std::uint32_t> e(x.size());
            for (std::size_t v = 0; v < e.size(); ++v) {
                std::uint64_t s = static_cast<std::uint64_t>(x[v]) + y[v];
                if (s > maxp)
                    throw OverflowError("divmod_heap: exponent exceeds max power bound");
                e[v] = static_cast<std::uint32_t>(s);
            }
            return e;
        };

        heap.push({f.mono_[0].exps, true, 0, 0});

        while (!heap.empty()) {
            std::vector<std::uint32_t> key = heap.top().exps;
            BigInt sum(0);
            while (!heap.empty() && heap.top().exps == key) {
                Entry e = heap.top();
                heap.pop();
                if (e.from_f) {
                    sum += f.mono_[e.gi].coeff;
                    if (e.gi + 1 < f.mono_.size())
                        heap.push({f.mono_[e.gi + 1].exps, true, 0, e.gi + 1});
                } else {
                    sum -= q.mono_[e.qi].coeff * g.mono_[e.gi].coeff;
                    if (e.gi + 1 < g.mono_.size())
                        heap.push({sum_exps(q.mono_[e.qi].exps, g.mono_[e.gi + 1].exps),
                                   false, e.qi, e.gi + 1});
                }
            }
            sum = dom.reduce(sum);
            if (sum.is_zero()) continue;

            bool divisible = true;
            for (std::size_t v = 0; v < key.size(); ++v)
                if (key[v] < glead.exps[v]) {
                    divisible = false;
                    break;
                }
            BigInt qc;
            if (divisible) {
                if (dom.is_integers()) {
                    if (sum.divisible_by(glead.coeff))
                        qc = BigInt::divexact(sum, glead.coeff);
                    else
                        divisible = false;
                } else if (lginv) {
                    qc = dom.reduce(sum * *lginv);
                } else if (sum.divisible_by(glead.coeff)) {
                    qc = dom.reduce(BigInt::divexact(sum, glead.coeff));
                } else {
                    divisible = false;
                }
            }
            if (divisible) {
                std::vector<std::uint32_t> qe(key.size());
                for (std::size_t v = 0; v < key.size(); ++v) qe[v] = key[v] - glead.exps[v];
                q.mono_.push_back({std::move(qc), std::move(qe)});
                if (g.mono_.size() > 1)
                    heap.push({sum_exps(q.mono_.back().exps, g.mono_[1].exps), false,
                               q.mono_.size() - 1, 1});
            } else {
                r.mono_.push_back({std::move(sum), std::move(key)});
            }
        }
        return {std::move(q), std::move(r)};
    }

    friend Polynomial operator/(const Polynomial& a, const Polynomial& b) {
        return divmod_heap(a, b).first;
    }
    friend Polynomial operator%(const Polynomial& a, const Polynomial& b) {
        return divmod_heap(a, b).second;
    }
    bool divides(const Polynomial& f) const { return (f % *this).is_zero(); }

    Polynomial pow(unsigned long e) const {
        Polynomial base = *this;
        Polynomial r = constant(BigInt(1), vars_, domain_);
        while (e) {
            if (e & 1) r = r * base;
            base = (e >>= 1) ? base * base : base;
        }
        return r;
    }

    //  Integer content: positive gcd of all coefficients (0 for the zero
    //  polynomial). Works on the stored representatives.
    BigInt icontent() const {
        BigInt g(0);
        for (const auto& m : mono_) {
            g = BigInt::gcd(g, m.coeff);
            if (g.is_one()) break;
        }
        return g;
    }

    // Signed rational content and primitive part: f = content * prim where
    // prim has coprime integer coefficients and positive leading
    // coefficient. Zero returns the (0, 0) sentinel.
    std::pair<BigRat, Polynomial> content_primpart() const {
        if (mono_.empty()) return {BigRat(0), *this};
        if (!domain_.is_integers())
            throw DomainError("content_primpart: integer coefficients required");
        BigInt g = icontent();
        if (lc().sign() < 0) g = -g;
        Polynomial prim(vars_, domain_);
        prim.mono_.reserve(mono_.size());
        for (const auto& m : mono_)
            prim.mono_.push_back({BigInt::divexact(m.coeff, g), m.exps});
        return {BigRat(g), std::move(prim)};
    }

    Polynomial primitive_part() const {
        if (mono_.empty()) return *this;
        return content_primpart().second;
    }

    Polynomial derivative(std::size_t var) const {
        Polynomial r(vars_, domain_);
        for (const auto& m : mono_) {
            if (m.exps[var] == 0) continue;
            BigInt c = domain_.reduce(m.coeff * BigInt(static_cast<long>(m.exps[var])));
            if (c.is_zero()) continue;
            auto e = m.exps;
            --e[var];
            r.mono_.push_back({std::move(c), std::move(e)});
        }
        r.normalize();
        return r;
    }

    // Polynomial coefficient of x_var^k (a polynomial in the other
    // variables, same table with the var slot zeroed).
    Polynomial coefficient_of(std::size_t var, std::uint32_t k) const {
        Polynomial r(vars_, domain_);
        for (const auto& m : mono_)
            if (m.exps[var] == k) {
                auto e = m.exps;
                e[var] = 0;
                r.mono_.push_back({m.coeff, std::move(e)});
            }
        r.normalize();
        return r;
    }

    // Leading coefficient viewed as a univariate polynomial in x_var.
    Polynomial lcoeff_wrt(std::size_t var) const {
        long d = degree(var);
        if (d < 0) return Polynomial(vars_, domain_);
        return coefficient_of(var, static_cast<std::uint32_t>(d));
    }

    // Exact composition: substitute x_var := value, expanded and
    // normalized via a power table on the grouped coefficients.
    Polynomial eval_subst(std::size_t var, const Polynomial& value) const {
        if (var >= vars_->size()) throw DomainError("eval_subst: unknown variable");
        long d = degree(var);
        if (d <= 0 && !(d == 0)) return *this;  // zero polynomial
        Polynomial acc(vars_, domain_);
        // Horner over descending powers of var.
        for (long k = d; k >= 0; --k) {
            if (k != d) acc = acc * value;
            acc += coefficient_of(var, static_cast<std::uint32_t>(k));
        }
        return acc;
    }
    Polynomial eval_subst(std::size_t var, const BigInt& value) const {
        return eval_subst(var, constant(value, vars_, domain_));
    }

    /** Newton interpolation over Z/p.
     *
     *  Reconstructs the unique polynomial N of degree < #points in x_var
     *  with N(x_i) = V_i from values that may themselves be polynomials in
     *  the remaining variables.
     */
    static Polynomial interpolate_newton(
        std::size_t var, const std::vector<std::pair<BigInt, Polynomial>>& points,
        const ModDomain& dom) {
        if (!dom.is_field())
            throw DomainError("interpolate_newton: prime field domain required");
        if (points.empty()) throw DomainError("interpolate_newton: no points");
        const VarTablePtr& vars = points[0].second.vars();
        for (std::size_t i = 0; i < points.size(); ++i)
            for (std::size_t j = i + 1; j < points.size(); ++j)
                if (dom.reduce(points[i].first - points[j].first).is_zero())
                    throw DomainError("interpolate_newton: duplicate abscissae");

        Polynomial newton(vars, dom);   // accumulated interpolant
        Polynomial basis = constant(BigInt(1), vars, dom);  // prod (x - x_j)
        for (std::size_t k = 0; k < points.size(); ++k) {
            Polynomial residue =
                points[k].second.with_domain(dom) - newton.eval_subst(var, points[k].first);
            if (!residue.is_zero()) {
                BigInt denom(1);
                for (std::size_t j = 0; j < k; ++j)
                    denom = dom.reduce(denom * (points[k].first - points[j].first));
                residue = residue * BigInt::invmod(denom, dom.modulus());
                newton += residue * basis;
            }
            basis = basis * (monomial(BigInt(1), var, 1, vars, dom) -
                             constant(points[k].first, vars, dom));
        }
        return newton;
    }

    // Canonical text, descending term order, NoSpaces style.
    std::string to_string() const {
        if (mono_.empty()) return "0";
        std::ostringstream os;
        bool first = true;
        for (const auto& m : mono_) {
            BigInt c = m.coeff;
            bool neg = c.sign() < 0;
            if (neg) c = -c;
            if (!first)
                os << (neg ? "-" : "+");
            else if (neg)
                os << "-";
            first = false;
            bool havevars = false;
            std::ostringstream vs;
            for (std::size_t v = 0; v < m.exps.size(); ++v) {
                if (m.exps[v] == 0) continue;
                if (havevars) vs << "*";
                vs << vars_->name(v);
                if (m.exps[v] > 1) vs << "^" << m.exps[v];
                havevars = true;
            }
            if (!havevars) {
                os << c.to_string();
            } else if (c.is_one()) {
                os << vs.str();
            } else {
                os << c.to_string() << "*" << vs.str();
            }
        }
        return os.str();
    }

    friend std::ostream& operator<<(std::ostream& os, const Polynomial& p) {
        return os << p.to_string();
    }

    // Total order on same-table polynomials: term-by-term from the top,
    // monomial first, then coefficient; prefixes sort first.
    friend int cmp(const Polynomial& a, const Polynomial& b) {
        for (std::size_t i = 0; i < a.mono_.size() && i < b.mono_.size(); ++i) {
            int c = cmp_exps(a.mono_[i].exps, b.mono_[i].exps);
            if (c != 0) return c;
            c = cmp(a.mono_[i].coeff, b.mono_[i].coeff);
            if (c != 0) return c;
        }
        if (a.mono_.size() != b.mono_.size())
            return a.mono_.size() < b.mono_.size() ? -1 : 1;
        return 0;
    }

    // Largest absolute coefficient.
    BigInt max_norm() const {
        BigInt n(0);
        for (const auto& m : mono_)
            if (m.coeff.abs() > n) n = m.coeff.abs();
        return n;
    }
    BigInt l2_norm_sq() const {
        BigInt n(0);
        for (const auto& m : mono_) n += m.coeff * m.coeff;
        return n;
    }

    // Rebuild invariants after bulk edits: sorted, merged, zero-free.
    void normalize() {
        for (auto& m : mono_) {
            if (m.exps.size() != vars_->size())
                throw DomainError("Polynomial: exponent vector of wrong length");
            m.coeff = domain_.reduce(m.coeff);
        }
        std::sort(mono_.begin(), mono_.end(), [](const Monomial& x, const Monomial& y) {
            return cmp_exps(x.exps, y.exps) > 0;
        });
        std::vector<Monomial> out;
        out.reserve(mono_.size());
        for (auto& m : mono_) {
            if (!out.empty() && out.back().exps == m.exps)
                out.back().coeff = domain_.reduce(out.back().coeff + m.coeff);
            else
                out.push_back(std::move(m));
            if (!out.empty() && out.back().coeff.is_zero()) out.pop_back();
        }
        mono_ = std::move(out);
    }

    // Checkable invariant scan: strict descending order, unique exponent
    // vectors, no zero coefficients, reduced representatives.
    bool check_invariants() const {
        for (std::size_t i = 0; i < mono_.size(); ++i) {
            if (mono_[i].coeff.is_zero()) return false;
            if (mono_[i].exps.size() != vars_->size()) return false;
            if (i + 1 < mono_.size() && cmp_exps(mono_[i].exps, mono_[i + 1].exps) <= 0)
                return false;
            if (!domain_.is_integers() &&
                (mono_[i].coeff.sign() < 0 || mono_[i].coeff >= domain_.modulus()))
                return false;
        }
        return true;
    }

    // Bring two operands onto a shared table (name union, left order
    // first) and a shared domain.
    static std::pair<Polynomial, Polynomial> unify(const Polynomial& a,
                                                   const Polynomial& b) {
        if (a.domain_ != b.domain_) {
            // Integers embed into any modular domain; distinct modular
            // domains do not mix.
            if (a.domain_.is_integers()) {
                return unify(a.with_domain(b.domain_), b);
            } else if (b.domain_.is_integers()) {
                return unify(a, b.with_domain(a.domain_));
            }
            throw DomainError("Polynomial: incompatible coefficient domains");
        }
        if (a.vars_ == b.vars_ || a.vars_->names() == b.vars_->names())
            return {a, b};
        std::vector<std::string> names = a.vars_->names();
        for (const auto& n : b.vars_->names())
            if (!a.vars_->find(n)) names.push_back(n);
        auto merged = make_vars(std::move(names),
                                std::max(a.vars_->max_power(), b.vars_->max_power()));
        return {a.remap(merged), b.remap(merged)};
    }

    // Re-express on a table that contains all used variables.
    Polynomial remap(const VarTablePtr& nv) const {
        std::vector<std::size_t> where(vars_->size());
        for (std::size_t v = 0; v < vars_->size(); ++v) {
            auto idx = nv->find(vars_->name(v));
            if (!idx) {
                if (degree(v) > 0)
                    throw DomainError("Polynomial: variable " + vars_->name(v) +
                                      " missing from target table");
                where[v] = 0;
            } else {
                where[v] = *idx;
            }
        }
        Polynomial r(nv, domain_);
        r.mono_.reserve(mono_.size());
        for (const auto& m : mono_) {
            std::vector<std::uint32_t> e(nv->size(), 0);
            for (std::size_t v = 0; v < vars_->size(); ++v)
                if (m.exps[v]) e[where[v]] = m.exps[v];
            r.mono_.push_back({m.coeff, std::move(e)});
        }
        r.normalize();
        return r;
    }

  private:
    bool mono_equal(const Polynomial& o) const {
        if (mono_.size() != o.mono_.size()) return false;
        for (std::size_t i = 0; i < mono_.size(); ++i)
            if (mono_[i].coeff != o.mono_[i].coeff || mono_[i].exps != o.mono_[i].exps)
                return false;
        return true;
    }

    ModDomain domain_;
    VarTablePtr vars_;
    std::vector<Monomial> mono_;
};

// ---------------------------------------------------------------------------
// Dense univariate polynomials: an array of coefficients indexed by
// exponent, used where dense algorithms (Euclid mod p, Berlekamp) win.
// ---------------------------------------------------------------------------

class DenseUniPoly {
  public:
    DenseUniPoly() : domain_(ModDomain::integers()) {}
    explicit DenseUniPoly(ModDomain d, std::vector<BigInt> coeffs = {})
        : domain_(std::move(d)), c_(std::move(coeffs)) {
        trim();
    }

    const ModDomain& domain() const { return domain_; }
    const std::vector<BigInt>& coeffs() const { return c_; }
    bool is_zero() const { return c_.empty(); }
    long degree() const { return static_cast<long>(c_.size()) - 1; }
    const BigInt& operator[](std::size_t i) const { return c_[i]; }
    BigInt coeff(std::size_t i) const { return i < c_.size() ? c_[i] : BigInt(0); }
    const BigInt& lc() const {
        if (c_.empty()) throw DomainError("DenseUniPoly: zero has no leading coefficient");
        return c_.back();
    }

    void set_coeff(std::size_t i, const BigInt& v) {
        if (i >= c_.size()) c_.resize(i + 1, BigInt(0));
        c_[i] = domain_.reduce(v);
        trim();
    }

    static DenseUniPoly constant(const BigInt& v, const ModDomain& d) {
        DenseUniPoly r(d);
        r.set_coeff(0, v);
        return r;
    }

    friend DenseUniPoly operator+(const DenseUniPoly& a, const DenseUniPoly& b) {
        DenseUniPoly r(a.domain_);
        r.c_.resize(std::max(a.c_.size(), b.c_.size()), BigInt(0));
        for (std::size_t i = 0; i < r.c_.size(); ++i)
            r.c_[i] = a.domain_.reduce(a.coeff(i) + b.coeff(i));
        r.trim();
        return r;
    }
    friend DenseUniPoly operator-(const DenseUniPoly& a, const DenseUniPoly& b) {
        DenseUniPoly r(a.domain_);
        r.c_.resize(std::max(a.c_.size(), b.c_.size()), BigInt(0));
        for (std::size_t i = 0; i < r.c_.size(); ++i)
            r.c_[i] = a.domain_.reduce(a.coeff(i) - b.coeff(i));
        r.trim();
        return r;
    }
    friend DenseUniPoly operator*(const DenseUniPoly& a, const DenseUniPoly& b) {
        if (a.is_zero() || b.is_zero()) return DenseUniPoly(a.domain_);
        DenseUniPoly r(a.domain_);
        r.c_.assign(a.c_.size() + b.c_.size() - 1, BigInt(0));
        for (std::size_t i = 0; i < a.c_.size(); ++i)
            for (std::size_t j = 0; j < b.c_.size(); ++j)
                r.c_[i + j] = a.domain_.reduce(r.c_[i + j] + a.c_[i] * b.c_[j]);
        r.trim();
        return r;
    }

    // Division with remainder; lc(b) must be a unit in the domain.
    static std::pair<DenseUniPoly, DenseUniPoly> divmod(const DenseUniPoly& a,
                                                        const DenseUniPoly& b) {
        if (b.is_zero()) throw DomainError("DenseUniPoly: division by zero");
        const ModDomain& dom = a.domain_;
        DenseUniPoly q(dom), r = a;
        if (a.degree() < b.degree()) return {q, r};
        BigInt inv;
        if (dom.is_integers()) {
            if (!b.lc().abs().is_one())
                throw DomainError("DenseUniPoly: integer division needs unit lc");
            inv = b.lc();  // +-1
        } else {
            inv = BigInt::invmod(b.lc(), dom.modulus());
        }
        q.c_.assign(a.degree() - b.degree() + 1, BigInt(0));
        while (!r.is_zero() && r.degree() >= b.degree()) {
            std::size_t shift = r.degree() - b.degree();
            BigInt qc = dom.is_integers() ? r.lc() * inv : dom.reduce(r.lc() * inv);
            q.c_[shift] = qc;
            for (long i = 0; i <= b.degree(); ++i)
                r.c_[shift + i] = dom.reduce(r.c_[shift + i] - qc * b.c_[i]);
            r.trim();
        }
        q.trim();
        return {q, r};
    }

    // Divide by the leading coefficient; it must be a unit in the domain.
    DenseUniPoly monic() const {
        if (is_zero()) return *this;
        if (domain_.is_integers()) {
            if (!lc().abs().is_one()) throw DomainError("DenseUniPoly: non-unit lc");
            return lc().is_one() ? *this : *this * BigInt(-1);
        }
        BigInt inv = BigInt::invmod(lc(), domain_.modulus());
        return *this * inv;
    }

    friend DenseUniPoly operator*(const DenseUniPoly& a, const BigInt& s) {
        DenseUniPoly r(a.domain_);
        r.c_.reserve(a.c_.size());
        for (const auto& v : a.c_) r.c_.push_back(a.domain_.reduce(v * s));
        r.trim();
        return r;
    }

    BigInt eval(const BigInt& x) const {
        BigInt acc(0);
        for (std::size_t i = c_.size(); i-- > 0;) acc = domain_.reduce(acc * x + c_[i]);
        return acc;
    }

    DenseUniPoly derivative() const {
        DenseUniPoly r(domain_);
        if (c_.size() <= 1) return r;
        r.c_.resize(c_.size() - 1);
        for (std::size_t i = 1; i < c_.size(); ++i)
            r.c_[i - 1] = domain_.reduce(c_[i] * BigInt(static_cast<long>(i)));
        r.trim();
        return r;
    }

    friend bool operator==(const DenseUniPoly& a, const DenseUniPoly& b) {
        return a.c_ == b.c_;
    }
    friend bool operator!=(const DenseUniPoly& a, const DenseUniPoly& b) {
        return !(a == b);
    }

  private:
    void trim() {
        while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
    }

    ModDomain domain_;
    std::vector<BigInt> c_;
};

// Lossless round trip between the sparse and dense univariate forms.
inline DenseUniPoly to_dense(const Polynomial& f, std::size_t var) {
    if (!f.is_univariate_in(var))
        throw DomainError("to_dense: polynomial is not univariate in that variable");
    DenseUniPoly r(f.domain());
    for (const auto& m : f.monomials()) r.set_coeff(m.exps[var], m.coeff);
    return r;
}

inline Polynomial from_dense(const DenseUniPoly& d, std::size_t var,
                             const VarTablePtr& vars) {
    std::vector<Monomial> ms;
    for (std::size_t i = 0; i < d.coeffs().size(); ++i) {
        if (d.coeffs()[i].is_zero()) continue;
        std::vector<std::uint32_t> e(vars->size(), 0);
        e[var] = static_cast<std::uint32_t>(i);
        ms.push_back({d.coeffs()[i], std::move(e)});
    }
    return Polynomial::from_monomials(std::move(ms), vars, d.domain());
}

}  // namespace polyform

#endif
