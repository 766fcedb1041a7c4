#pragma once

/**
 * @file duality.hpp
 * @brief Homology as the dual of a cup ring.
 *
 * Homology classes are coordinates in the basis dual to the monomial basis:
 * dual(m) pairs to 1 with m and to 0 with every other monomial. The cap
 * product follows the convention
 *
 *     <b, a cap x> = <b cup a, x>,
 *
 * so cap(a, dual(m)) = sign(m/a, a) dual(m/a) whenever a divides m.
 * Orientations put coefficient +1 on the top monomial.
 */

#include "loopalg/graded_ring.hpp"

#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace loopalg {

class HomologyElement {
public:
    using Terms = std::map<Monomial, Scalar>;

    HomologyElement() = default;
    explicit HomologyElement(Ring ring) : ring_(std::move(ring)) {}
    HomologyElement(Ring ring, const Monomial& m, Scalar c = 1) : ring_(std::move(ring)) { add(m, std::move(c)); }

    const Ring& ring() const { return ring_; }
    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    Scalar coefficient(const Monomial& m) const
    {
        auto it = terms_.find(m);
        return it == terms_.end() ? Scalar(0) : it->second;
    }

    void add(const Monomial& m, const Scalar& c)
    {
        if (!ring_.valid(m))
            throw std::invalid_argument("dual monomial does not belong to ring");
        if (c == 0)
            return;
        auto [it, inserted] = terms_.try_emplace(m, c);
        if (!inserted) {
            it->second += c;
            if (it->second == 0)
                terms_.erase(it);
        }
    }

    std::optional<int> degree() const
    {
        std::optional<int> d;
        for (const auto& [m, c] : terms_) {
            int dm = ring_.degree(m);
            if (d && *d != dm)
                return std::nullopt;
            d = dm;
        }
        return d;
    }

    HomologyElement& operator+=(const HomologyElement& o)
    {
        require_same_ring(ring_, o.ring_, "add");
        for (const auto& [m, c] : o.terms_)
            add(m, c);
        return *this;
    }
    HomologyElement& operator-=(const HomologyElement& o)
    {
        require_same_ring(ring_, o.ring_, "subtract");
        for (const auto& [m, c] : o.terms_)
            add(m, -c);
        return *this;
    }
    HomologyElement& operator*=(const Scalar& s)
    {
        if (s == 0) {
            terms_.clear();
            return *this;
        }
        for (auto& [m, c] : terms_)
            c *= s;
        return *this;
    }

    friend HomologyElement operator+(HomologyElement a, const HomologyElement& b) { return a += b; }
    friend HomologyElement operator-(HomologyElement a, const HomologyElement& b) { return a -= b; }
    friend HomologyElement operator-(HomologyElement a) { return a *= Scalar(-1); }
    friend HomologyElement operator*(const Scalar& s, HomologyElement a) { return a *= s; }

    friend bool operator==(const HomologyElement& a, const HomologyElement& b)
    {
        return a.ring_ == b.ring_ && a.terms_ == b.terms_;
    }

    /// Dual monomials printed as [..], e.g. "-[alpha xi1 xi3]".
    std::string to_string() const
    {
        if (terms_.empty())
            return "0";
        std::string out;
        for (const auto& [m, c] : terms_) {
            if (!out.empty())
                out += c < 0 ? " - " : " + ";
            else if (c < 0)
                out += "-";
            Scalar a = abs(c);
            if (a != 1)
                out += to_short_string(a) + "*";
            out += "[" + ring_.to_string(m) + "]";
        }
        return out;
    }

private:
    Ring ring_;
    Terms terms_;
};

inline HomologyElement dual(const Ring& r, const Monomial& m) { return HomologyElement(r, m); }

/// Kronecker pairing sum_m c(m) x(m).
inline Scalar pairing(const RingElement& c, const HomologyElement& x)
{
    require_same_ring(c.ring(), x.ring(), "pairing");
    Scalar s = 0;
    for (const auto& [m, coef] : c.terms())
        s += coef * x.coefficient(m);
    return s;
}

inline HomologyElement cap(const RingElement& c, const HomologyElement& x)
{
    require_same_ring(c.ring(), x.ring(), "cap");
    const Ring& r = c.ring();
    HomologyElement out(r);
    for (const auto& [mc, cc] : c.terms()) {
        for (const auto& [mx, cx] : x.terms()) {
            if (!mx.divisible_by(mc))
                continue;
            std::vector<int> e(r.size());
            for (std::size_t i = 0; i < e.size(); ++i)
                e[i] = mx[i] - mc[i];
            Monomial b(std::move(e));
            Scalar v = cc * cx;
            if (r.product_sign_odd(b, mc))
                v = -v;
            out.add(b, v);
        }
    }
    return out;
}

/// Graded ring homomorphism given by generator images. Validated on construction.
class RingMap {
public:
    RingMap(Ring source, Ring target, std::vector<RingElement> images)
        : source_(std::move(source)), target_(std::move(target)), images_(std::move(images))
    {
        if (images_.size() != source_.size())
            throw std::invalid_argument("ring map: one image per source generator required");
        for (std::size_t i = 0; i < images_.size(); ++i) {
            const auto& g = source_.generator(i);
            const auto& img = images_[i];
            require_same_ring(img.ring(), target_, "ring map image");
            if (!img.is_zero() && img.degree() != std::optional<int>(g.degree))
                throw std::invalid_argument("ring map: image of '" + g.name + "' has the wrong degree");
            if (!cup_power(img, g.truncation).is_zero())
                throw std::invalid_argument("ring map: image of '" + g.name + "' violates its truncation");
        }
    }

    const Ring& source() const { return source_; }
    const Ring& target() const { return target_; }
    const RingElement& image(std::size_t i) const { return images_.at(i); }

    RingElement operator()(const RingElement& x) const
    {
        require_same_ring(x.ring(), source_, "ring map");
        RingElement out(target_);
        for (const auto& [m, c] : x.terms()) {
            RingElement term = RingElement::one(target_);
            for (std::size_t i = 0; i < m.size(); ++i)
                for (int e = 0; e < m[i]; ++e)
                    term = cup(term, images_[i]);
            term *= c;
            out += term;
        }
        return out;
    }

private:
    Ring source_;
    Ring target_;
    std::vector<RingElement> images_;
};

/// Homology pushforward dual to a ring map f^*: <c, f_* x> = <f^* c, x>.
inline HomologyElement pushforward(const RingMap& pullback, const HomologyElement& x)
{
    require_same_ring(x.ring(), pullback.target(), "pushforward");
    HomologyElement out(pullback.source());
    for (const auto& m : full_basis(pullback.source())) {
        Scalar v = pairing(pullback(RingElement(pullback.source(), m)), x);
        out.add(m, v);
    }
    return out;
}

/// Closed oriented manifold modelled by its cohomology ring.
class OrientedSpace {
public:
    OrientedSpace() = default;
    OrientedSpace(std::string name, Ring ring)
        : name_(std::move(name)), ring_(std::move(ring)), fundamental_(ring_, ring_.top_monomial())
    {
    }

    const std::string& name() const { return name_; }
    const Ring& ring() const { return ring_; }
    int dimension() const { return ring_.top_degree(); }
    const HomologyElement& fundamental() const { return fundamental_; }

private:
    std::string name_;
    Ring ring_;
    HomologyElement fundamental_;
};

/// Poincare dual c cap [M].
inline HomologyElement pd(const OrientedSpace& s, const RingElement& c)
{
    if (!c.is_zero() && !c.degree())
        throw std::invalid_argument("pd: input is not homogeneous");
    return cap(c, s.fundamental());
}

/// Inverse of pd by coordinate transport: dual(m) comes from sign(m, top/m) * top/m.
inline RingElement pd_inverse(const OrientedSpace& s, const HomologyElement& x)
{
    require_same_ring(x.ring(), s.ring(), "pd_inverse");
    if (!x.is_zero() && !x.degree())
        throw std::invalid_argument("pd_inverse: input is not homogeneous");
    const Ring& r = s.ring();
    const Monomial top = r.top_monomial();
    RingElement out(r);
    for (const auto& [m, c] : x.terms()) {
        std::vector<int> e(r.size());
        for (std::size_t i = 0; i < e.size(); ++i)
            e[i] = top[i] - m[i];
        Monomial q(std::move(e));
        out.add(q, r.product_sign_odd(m, q) ? Scalar(-c) : c);
    }
    return out;
}

/// Wrong-way map f_! = PD_E o f^* o PD_B^{-1} for f: E -> B, given f^*: H*(B) -> H*(E).
inline HomologyElement gysin(const RingMap& pullback, const OrientedSpace& base, const OrientedSpace& total,
                             const HomologyElement& x)
{
    require_same_ring(pullback.source(), base.ring(), "gysin (base)");
    require_same_ring(pullback.target(), total.ring(), "gysin (total space)");
    return pd(total, pullback(pd_inverse(base, x)));
}

/// d_* for the diagonal d: M -> M x M, as a class in the dual of tensor_ring(R, R).
/// The coefficient of dual(a|b) is <a cup b, x>.
inline HomologyElement diagonal_pushforward(const Ring& ring, const Ring& square, const HomologyElement& x)
{
    require_same_ring(x.ring(), ring, "diagonal_pushforward");
    require_tensor_of(square, ring, ring);
    if (!x.is_zero() && !x.degree())
        throw std::invalid_argument("diagonal_pushforward: input is not homogeneous");
    HomologyElement out(square);
    const std::size_t g = ring.size();
    for (const auto& [m, c] : x.terms()) {
        // every factorisation m = a * b
        std::vector<int> a(g, 0);
        auto rec = [&](auto&& self, std::size_t i) -> void {
            if (i == g) {
                Monomial ma(a);
                std::vector<int> be(g);
                for (std::size_t j = 0; j < g; ++j)
                    be[j] = m[j] - a[j];
                Monomial mb(std::move(be));
                out.add(concat(ma, mb), ring.product_sign_odd(ma, mb) ? Scalar(-c) : c);
                return;
            }
            for (int e = 0; e <= m[i]; ++e) {
                a[i] = e;
                self(self, i + 1);
            }
            a[i] = 0;
        };
        rec(rec, 0);
    }
    return out;
}

inline HomologyElement diagonal_pushforward(const Ring& ring, const HomologyElement& x)
{
    return diagonal_pushforward(ring, tensor_ring(ring, ring), x);
}

} // namespace loopalg
