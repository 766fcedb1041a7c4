#pragma once

/**
 * @file graded_ring.hpp
 * @brief Truncated graded-commutative algebras over Q.
 *
 * A Ring is presented by an ordered list of generators, each with a degree
 * and a truncation exponent t (g^t = 0). Monomials are stored in normal form,
 * i.e. as exponent vectors in generator declaration order. Multiplying two
 * normal-form monomials moves the factors of the right operand past those of
 * the left operand; every transposition of two odd-degree factors costs a sign.
 */

#include "loopalg/rational.hpp"

#include <algorithm>
#include <compare>
#include <cstddef>
#include <map>
#include <memory>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace loopalg {

struct Generator {
    std::string name;
    int degree = 0;
    /// Smallest power that vanishes. 1 means the generator itself is zero.
    int truncation = 2;

    friend bool operator==(const Generator&, const Generator&) = default;
};

/// Exponent vector indexed by generator position.
struct Monomial {
    std::vector<int> exps;

    Monomial() = default;
    explicit Monomial(std::vector<int> e) : exps(std::move(e)) {}

    std::size_t size() const { return exps.size(); }
    int operator[](std::size_t i) const { return exps[i]; }
    bool is_one() const
    {
        return std::all_of(exps.begin(), exps.end(), [](int e) { return e == 0; });
    }
    /// True if every exponent of `other` is <= the corresponding exponent here.
    bool divisible_by(const Monomial& other) const
    {
        for (std::size_t i = 0; i < exps.size(); ++i)
            if (other.exps[i] > exps[i])
                return false;
        return true;
    }

    friend auto operator<=>(const Monomial&, const Monomial&) = default;
    friend bool operator==(const Monomial&, const Monomial&) = default;
};

class Ring {
public:
    Ring() : data_(std::make_shared<const Data>()) {}

    explicit Ring(std::vector<Generator> gens)
    {
        for (std::size_t i = 0; i < gens.size(); ++i) {
            const auto& g = gens[i];
            if (g.degree < 0)
                throw std::invalid_argument("generator '" + g.name + "' has negative degree");
            if (g.truncation < 1)
                throw std::invalid_argument("generator '" + g.name + "' has truncation < 1");
            if (g.degree % 2 != 0 && g.truncation > 2)
                throw std::invalid_argument("odd generator '" + g.name + "' must truncate at power 2");
            for (std::size_t j = 0; j < i; ++j)
                if (gens[j].name == g.name)
                    throw std::invalid_argument("duplicate generator name '" + g.name + "'");
        }
        data_ = std::make_shared<const Data>(Data{std::move(gens)});
    }

    const std::vector<Generator>& generators() const { return data_->gens; }
    std::size_t size() const { return data_->gens.size(); }
    const Generator& generator(std::size_t i) const { return data_->gens.at(i); }

    std::optional<std::size_t> index_of(const std::string& name) const
    {
        for (std::size_t i = 0; i < size(); ++i)
            if (data_->gens[i].name == name)
                return i;
        return std::nullopt;
    }

    std::size_t index(const std::string& name) const
    {
        auto idx = index_of(name);
        if (!idx)
            throw std::invalid_argument("no generator named '" + name + "'");
        return *idx;
    }

    int top_degree() const
    {
        int d = 0;
        for (const auto& g : data_->gens)
            d += g.degree * (g.truncation - 1);
        return d;
    }

    Monomial one() const { return Monomial(std::vector<int>(size(), 0)); }

    Monomial top_monomial() const
    {
        std::vector<int> e(size());
        for (std::size_t i = 0; i < size(); ++i)
            e[i] = data_->gens[i].truncation - 1;
        return Monomial(std::move(e));
    }

    /// Monomial g_idx^power, or nullopt if the power vanishes.
    std::optional<Monomial> power(std::size_t idx, int p) const
    {
        if (p >= data_->gens.at(idx).truncation)
            return std::nullopt;
        auto m = one();
        m.exps[idx] = p;
        return m;
    }

    int degree(const Monomial& m) const
    {
        int d = 0;
        for (std::size_t i = 0; i < size(); ++i)
            d += m.exps[i] * data_->gens[i].degree;
        return d;
    }

    bool valid(const Monomial& m) const
    {
        if (m.size() != size())
            return false;
        for (std::size_t i = 0; i < size(); ++i)
            if (m.exps[i] < 0 || m.exps[i] >= data_->gens[i].truncation)
                return false;
        return true;
    }

    /// Parity of the Koszul sign for the product a*b, both in normal form:
    /// sum over generator pairs (g in a, h in b) with pos(g) > pos(h) of deg g deg h e_a(g) e_b(h).
    bool product_sign_odd(const Monomial& a, const Monomial& b) const
    {
        bool odd = false;
        int odd_b_before = 0;
        for (std::size_t i = 0; i < size(); ++i) {
            if (data_->gens[i].degree % 2 == 0)
                continue;
            if (a.exps[i] % 2 != 0 && odd_b_before % 2 != 0)
                odd = !odd;
            if (b.exps[i] % 2 != 0)
                ++odd_b_before;
        }
        return odd;
    }

    /// Normal-form product with its sign, or nullopt if a truncation is hit.
    std::optional<std::pair<Monomial, bool>> multiply(const Monomial& a, const Monomial& b) const
    {
        std::vector<int> e(size());
        for (std::size_t i = 0; i < size(); ++i) {
            e[i] = a.exps[i] + b.exps[i];
            if (e[i] >= data_->gens[i].truncation)
                return std::nullopt;
        }
        return std::make_pair(Monomial(std::move(e)), product_sign_odd(a, b));
    }

    std::string to_string(const Monomial& m) const
    {
        std::string out;
        for (std::size_t i = 0; i < size(); ++i) {
            if (m.exps[i] == 0)
                continue;
            if (!out.empty())
                out += ' ';
            out += data_->gens[i].name;
            if (m.exps[i] > 1)
                out += '^' + std::to_string(m.exps[i]);
        }
        return out.empty() ? "1" : out;
    }

    /// Structural equality: same generator list.
    friend bool operator==(const Ring& x, const Ring& y)
    {
        return x.data_ == y.data_ || x.data_->gens == y.data_->gens;
    }

private:
    struct Data {
        std::vector<Generator> gens;
    };
    std::shared_ptr<const Data> data_;
};

inline void require_same_ring(const Ring& x, const Ring& y, const char* what)
{
    if (!(x == y))
        throw std::invalid_argument(std::string(what) + ": operands live in different rings");
}

/// Sparse Q-linear combination of normal-form monomials.
class RingElement {
public:
    using Terms = std::map<Monomial, Scalar>;

    RingElement() = default;
    explicit RingElement(Ring ring) : ring_(std::move(ring)) {}
    RingElement(Ring ring, const Monomial& m, Scalar c = 1) : ring_(std::move(ring)) { add(m, std::move(c)); }

    static RingElement one(const Ring& r) { return RingElement(r, r.one()); }
    static RingElement generator(const Ring& r, const std::string& name)
    {
        auto m = r.power(r.index(name), 1);
        return m ? RingElement(r, *m) : RingElement(r);
    }

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
            throw std::invalid_argument("monomial does not belong to ring");
        if (c == 0)
            return;
        auto [it, inserted] = terms_.try_emplace(m, c);
        if (!inserted) {
            it->second += c;
            if (it->second == 0)
                terms_.erase(it);
        }
    }

    /// Degree if all monomials share one; nullopt for zero or mixed degrees.
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

    RingElement& operator+=(const RingElement& o)
    {
        require_same_ring(ring_, o.ring_, "add");
        for (const auto& [m, c] : o.terms_)
            add(m, c);
        return *this;
    }
    RingElement& operator-=(const RingElement& o)
    {
        require_same_ring(ring_, o.ring_, "subtract");
        for (const auto& [m, c] : o.terms_)
            add(m, -c);
        return *this;
    }
    RingElement& operator*=(const Scalar& s)
    {
        if (s == 0) {
            terms_.clear();
            return *this;
        }
        for (auto& [m, c] : terms_)
            c *= s;
        return *this;
    }

    friend RingElement operator+(RingElement a, const RingElement& b) { return a += b; }
    friend RingElement operator-(RingElement a, const RingElement& b) { return a -= b; }
    friend RingElement operator-(RingElement a) { return a *= Scalar(-1); }
    friend RingElement operator*(const Scalar& s, RingElement a) { return a *= s; }

    friend bool operator==(const RingElement& a, const RingElement& b)
    {
        return a.ring_ == b.ring_ && a.terms_ == b.terms_;
    }

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
            if (m.is_one())
                out += to_short_string(a);
            else if (a == 1)
                out += ring_.to_string(m);
            else
                out += to_short_string(a) + "*" + ring_.to_string(m);
        }
        return out;
    }

private:
    Ring ring_;
    Terms terms_;
};

/// Bilinear cup product with the Koszul sign rule.
inline RingElement cup(const RingElement& a, const RingElement& b)
{
    require_same_ring(a.ring(), b.ring(), "cup");
    const Ring& r = a.ring();
    RingElement out(r);
    for (const auto& [ma, ca] : a.terms())
        for (const auto& [mb, cb] : b.terms())
            if (auto prod = r.multiply(ma, mb))
                out.add(prod->first, prod->second ? Scalar(-ca * cb) : Scalar(ca * cb));
    return out;
}

inline RingElement operator*(const RingElement& a, const RingElement& b) { return cup(a, b); }

/// a^p under cup, with a^0 = 1.
inline RingElement cup_power(const RingElement& a, int p)
{
    RingElement out = RingElement::one(a.ring());
    for (int i = 0; i < p; ++i)
        out = cup(out, a);
    return out;
}

/// All monomials of degree exactly d, in lexicographic exponent order.
inline std::vector<Monomial> basis(const Ring& ring, int d)
{
    std::vector<Monomial> out;
    if (d < 0)
        return out;
    const auto& gens = ring.generators();
    // remaining[i] = maximal degree reachable from generators i..end
    std::vector<int> remaining(gens.size() + 1, 0);
    for (std::size_t i = gens.size(); i-- > 0;)
        remaining[i] = remaining[i + 1] + gens[i].degree * (gens[i].truncation - 1);
    std::vector<int> exps(gens.size(), 0);
    auto rec = [&](auto&& self, std::size_t i, int left) -> void {
        if (i == gens.size()) {
            if (left == 0)
                out.emplace_back(exps);
            return;
        }
        if (left > remaining[i])
            return;
        for (int e = 0; e < gens[i].truncation; ++e) {
            int used = e * gens[i].degree;
            if (used > left)
                break;
            exps[i] = e;
            self(self, i + 1, left - used);
        }
        exps[i] = 0;
    };
    rec(rec, 0, d);
    return out;
}

/// Every monomial of the ring, grouped by increasing degree.
inline std::vector<Monomial> full_basis(const Ring& ring)
{
    std::vector<Monomial> out;
    for (int d = 0; d <= ring.top_degree(); ++d) {
        auto b = basis(ring, d);
        out.insert(out.end(), b.begin(), b.end());
    }
    return out;
}

/// (degree, dimension) for degrees 0..max_d.
inline std::vector<std::pair<int, std::size_t>> poincare_series(const Ring& ring, int max_d)
{
    std::vector<std::pair<int, std::size_t>> out;
    for (int d = 0; d <= max_d; ++d)
        out.emplace_back(d, basis(ring, d).size());
    return out;
}

inline std::size_t total_dimension(const Ring& ring)
{
    std::size_t dim = 1;
    for (const auto& g : ring.generators())
        dim *= static_cast<std::size_t>(g.truncation);
    return dim;
}

/// Generators of x followed by those of y. Colliding names get a "1." / "2." prefix.
inline Ring tensor_ring(const Ring& x, const Ring& y)
{
    auto taken = [](const std::vector<Generator>& gs, const std::string& name) {
        return std::any_of(gs.begin(), gs.end(), [&](const Generator& g) { return g.name == name; });
    };
    std::vector<Generator> gens;
    for (auto g : x.generators()) {
        if (taken(y.generators(), g.name))
            g.name = "1." + g.name;
        gens.push_back(g);
    }
    for (auto g : y.generators()) {
        if (taken(x.generators(), g.name)) {
            g.name = "2." + g.name;
            while (taken(gens, g.name))
                g.name = "2." + g.name;
        }
        gens.push_back(g);
    }
    return Ring(std::move(gens));
}

/// Concatenated exponent vector a|b.
inline Monomial concat(const Monomial& a, const Monomial& b)
{
    std::vector<int> e = a.exps;
    e.insert(e.end(), b.exps.begin(), b.exps.end());
    return Monomial(std::move(e));
}

/// Splits a monomial of a tensor ring into its factor of length `left` and the rest.
inline std::pair<Monomial, Monomial> split(const Monomial& m, std::size_t left)
{
    return {Monomial(std::vector<int>(m.exps.begin(), m.exps.begin() + static_cast<std::ptrdiff_t>(left))),
            Monomial(std::vector<int>(m.exps.begin() + static_cast<std::ptrdiff_t>(left), m.exps.end()))};
}

inline void require_tensor_of(const Ring& t, const Ring& x, const Ring& y)
{
    if (t.size() != x.size() + y.size())
        throw std::invalid_argument("cross: target is not the tensor of the factor rings");
    for (std::size_t i = 0; i < t.size(); ++i) {
        const auto& g = t.generator(i);
        const auto& h = i < x.size() ? x.generator(i) : y.generator(i - x.size());
        if (g.degree != h.degree || g.truncation != h.truncation)
            throw std::invalid_argument("cross: target is not the tensor of the factor rings");
    }
}

/// Cross product a x b in tensor_ring(x, y). Normal form of a x b is a|b, no sign.
inline RingElement cross(const Ring& tensor, const RingElement& a, const RingElement& b)
{
    require_tensor_of(tensor, a.ring(), b.ring());
    RingElement out(tensor);
    for (const auto& [ma, ca] : a.terms())
        for (const auto& [mb, cb] : b.terms())
            out.add(concat(ma, mb), ca * cb);
    return out;
}

} // namespace loopalg
