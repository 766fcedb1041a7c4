#pragma once

/**
 * @file string_topology.hpp
 * @brief Loop homology generators, the string topology coproduct and the
 *        Goresky-Hingston product for M = CP^n, HP^n.
 *
 * H_*(LM, M; Q) has the basis A_k^i, B_k^i (k >= 1, 0 <= i <= n-1) and
 * H^*(LM, M; Q) the dual basis sigma_k^i, mu_k^i. The coproduct is available
 * in two independent forms:
 *
 *  - coproduct_closed applies the splitting formula directly;
 *  - coproduct_pipeline pushes the Gamma_k representative of a generator
 *    through the Thom class cap, the Gysin map of p_V, the diagonal of SM and
 *    the Gysin maps of p_L at the two split levels.
 *
 * Both forms are unsigned: no Koszul sign is attached when a cross product
 * is formed from two factors.
 */

#include "loopalg/duality.hpp"
#include "loopalg/report.hpp"
#include "loopalg/spaces.hpp"

#include <array>
#include <compare>
#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace loopalg {

enum class LoopKind : char { A = 'A', B = 'B' };
enum class CohKind : char { sigma = 's', mu = 'm' };

struct LoopKey {
    LoopKind kind = LoopKind::A;
    int k = 1;
    int i = 0;
    friend auto operator<=>(const LoopKey&, const LoopKey&) = default;
};

struct CohKey {
    CohKind kind = CohKind::sigma;
    int k = 1;
    int i = 0;
    friend auto operator<=>(const CohKey&, const CohKey&) = default;
};

inline int degree(const SpaceParams& p, const LoopKey& key)
{
    return key.kind == LoopKind::A ? deg_A(p, key.k, key.i) : deg_B(p, key.k, key.i);
}

/// sigma_k^i and mu_k^i have the degrees of A_k^i and B_k^i.
inline int degree(const SpaceParams& p, const CohKey& key)
{
    return key.kind == CohKind::sigma ? deg_A(p, key.k, key.i) : deg_B(p, key.k, key.i);
}

inline std::string to_string(const LoopKey& key)
{
    return std::string(1, static_cast<char>(key.kind)) + "[" + std::to_string(key.k) + "," + std::to_string(key.i) + "]";
}

inline std::string to_string(const CohKey& key)
{
    return std::string(1, static_cast<char>(key.kind)) + "[" + std::to_string(key.k) + "," + std::to_string(key.i) + "]";
}

/// Kronecker dual partner of a loop generator.
inline CohKey dual_key(const LoopKey& key)
{
    return {key.kind == LoopKind::A ? CohKind::sigma : CohKind::mu, key.k, key.i};
}

/**
 * Sparse Q-combination of Arity-fold cross products of basis keys.
 * LoopClass, TensorLoopClass and CohClass are instances.
 */
template <class Key, std::size_t Arity>
class Combination {
public:
    using Index = std::array<Key, Arity>;
    using Terms = std::map<Index, Scalar>;

    Combination() = default;
    explicit Combination(SpaceParams params) : params_(params) {}

    static Combination of(SpaceParams params, const Index& idx, const Scalar& c = 1)
    {
        Combination out(params);
        out.add(idx, c);
        return out;
    }

    const SpaceParams& params() const { return params_; }
    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t size() const { return terms_.size(); }

    Scalar coefficient(const Index& idx) const
    {
        auto it = terms_.find(idx);
        return it == terms_.end() ? Scalar(0) : it->second;
    }

    void add(const Index& idx, const Scalar& c)
    {
        for (const auto& key : idx)
            check_loop_index(params_, key.k, key.i);
        if (c == 0)
            return;
        auto [it, inserted] = terms_.try_emplace(idx, c);
        if (!inserted) {
            it->second += c;
            if (it->second == 0)
                terms_.erase(it);
        }
    }

    /// Total degree if homogeneous, nullopt for zero or mixed degrees.
    std::optional<int> degree() const
    {
        std::optional<int> d;
        for (const auto& [idx, c] : terms_) {
            int di = index_degree(idx);
            if (d && *d != di)
                return std::nullopt;
            d = di;
        }
        return d;
    }

    int index_degree(const Index& idx) const
    {
        int d = 0;
        for (const auto& key : idx)
            d += loopalg::degree(params_, key);
        return d;
    }

    Combination& operator+=(const Combination& o)
    {
        require_params(o);
        for (const auto& [idx, c] : o.terms_)
            add(idx, c);
        return *this;
    }
    Combination& operator-=(const Combination& o)
    {
        require_params(o);
        for (const auto& [idx, c] : o.terms_)
            add(idx, -c);
        return *this;
    }
    Combination& operator*=(const Scalar& s)
    {
        if (s == 0) {
            terms_.clear();
            return *this;
        }
        for (auto& [idx, c] : terms_)
            c *= s;
        return *this;
    }

    friend Combination operator+(Combination a, const Combination& b) { return a += b; }
    friend Combination operator-(Combination a, const Combination& b) { return a -= b; }
    friend Combination operator*(const Scalar& s, Combination a) { return a *= s; }
    friend bool operator==(const Combination& a, const Combination& b)
    {
        return a.params_ == b.params_ && a.terms_ == b.terms_;
    }

private:
    void require_params(const Combination& o) const
    {
        if (!(params_ == o.params_))
            throw std::invalid_argument("combination: operands belong to different spaces");
    }

    SpaceParams params_;
    Terms terms_;
};

using LoopClass = Combination<LoopKey, 1>;
using TensorLoopClass = Combination<LoopKey, 2>;
using TripleLoopClass = Combination<LoopKey, 3>;
using CohClass = Combination<CohKey, 1>;
using TensorCohClass = Combination<CohKey, 2>;

inline LoopClass loop_class(const SpaceParams& p, LoopKey key, const Scalar& c = 1) { return LoopClass::of(p, {key}, c); }
inline CohClass coh_class(const SpaceParams& p, CohKey key, const Scalar& c = 1) { return CohClass::of(p, {key}, c); }

/// All A/B keys with k <= max_k, ordered by (kind, k, i).
inline std::vector<LoopKey> loop_basis(const SpaceParams& p, int max_k)
{
    std::vector<LoopKey> out;
    for (auto kind : {LoopKind::A, LoopKind::B})
        for (int k = 1; k <= max_k; ++k)
            for (int i = 0; i < p.n; ++i)
                out.push_back({kind, k, i});
    return out;
}

inline std::vector<CohKey> coh_basis(const SpaceParams& p, int max_k)
{
    std::vector<CohKey> out;
    for (const auto& key : loop_basis(p, max_k))
        out.push_back(dual_key(key));
    return out;
}

// ---------------------------------------------------------------------------
// Coproduct, closed form

inline TensorLoopClass coproduct_closed(const SpaceParams& p, const LoopKey& key)
{
    check_loop_index(p, key.k, key.i);
    TensorLoopClass out(p);
    for (int m = 1; m <= key.k - 1; ++m) {
        for (int j = 0; j <= key.i; ++j) {
            LoopKey a_left{LoopKind::A, m, j};
            LoopKey a_right{LoopKind::A, key.k - m, key.i - j};
            if (key.kind == LoopKind::A) {
                out.add({a_left, a_right}, 1);
            } else {
                out.add({a_left, LoopKey{LoopKind::B, key.k - m, key.i - j}}, 1);
                out.add({LoopKey{LoopKind::B, m, j}, a_right}, 1);
            }
        }
    }
    return out;
}

inline TensorLoopClass coproduct_closed(const LoopClass& x)
{
    TensorLoopClass out(x.params());
    for (const auto& [idx, c] : x.terms())
        out += c * coproduct_closed(x.params(), idx[0]);
    return out;
}

/// (coproduct x id) applied to a tensor.
inline TripleLoopClass coproduct_on_left(const TensorLoopClass& t)
{
    TripleLoopClass out(t.params());
    for (const auto& [idx, c] : t.terms()) {
        const TensorLoopClass cop = coproduct_closed(t.params(), idx[0]);
        for (const auto& [split, d] : cop.terms())
            out.add({split[0], split[1], idx[1]}, c * d);
    }
    return out;
}

/// (id x coproduct) applied to a tensor.
inline TripleLoopClass coproduct_on_right(const TensorLoopClass& t)
{
    TripleLoopClass out(t.params());
    for (const auto& [idx, c] : t.terms()) {
        const TensorLoopClass cop = coproduct_closed(t.params(), idx[1]);
        for (const auto& [split, d] : cop.terms())
            out.add({idx[0], split[0], split[1]}, c * d);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Thom class and Gamma_k representatives

struct ThomTerm {
    int m = 1;           ///< the interval I_m carrying eta_m; eta_m cap [I] = [t_m]
    RingElement xi;      ///< xi_{2m} in H*(Gamma_k)
};

/// tau_k = sum_{m=1}^{k-1} xi_{2m} x eta_m.
struct ThomPullback {
    int k = 1;
    std::vector<ThomTerm> terms;
};

inline ThomPullback thom_pullback(const SpaceCatalog& cat, int k)
{
    const Ring g = cat.gamma(k).ring();
    ThomPullback out{k, {}};
    for (int m = 1; m <= k - 1; ++m)
        out.terms.push_back({m, RingElement::generator(g, xi_name(2 * m))});
    return out;
}

struct ThomCapTerm {
    int m = 1;
    HomologyElement value;  ///< X_m, the Gamma_k factor of X_m x [t_m]
};

/// (xi_{2m} x eta_m) cap (X x [I]) = (-1)^{deg X} (xi_{2m} cap X) x [t_m], one entry per m.
inline std::vector<ThomCapTerm> cap_with_thom(const SpaceCatalog& cat, int k, const HomologyElement& x)
{
    std::vector<ThomCapTerm> out;
    if (x.is_zero()) {
        for (const auto& t : thom_pullback(cat, k).terms)
            out.push_back({t.m, HomologyElement(x.ring())});
        return out;
    }
    auto d = x.degree();
    if (!d)
        throw std::invalid_argument("cap_with_thom: input is not homogeneous");
    const Scalar sign = sign_of(*d % 2 != 0);
    for (const auto& t : thom_pullback(cat, k).terms)
        out.push_back({t.m, sign * cap(t.xi, x)});
    return out;
}

/// Monomial alpha^i beta^b xi_1 ... xi_{2k-1} of Gamma_k, omitting xi_{2 skip} when skip > 0.
inline Monomial gamma_monomial(const Ring& g, int k, int i, bool with_beta, int skip = 0)
{
    auto m = g.one();
    m.exps[g.index("alpha")] = i;
    m.exps[g.index("beta")] = with_beta ? 1 : 0;
    for (int l = 1; l <= 2 * k - 1; ++l)
        m.exps[g.index(xi_name(l))] = (skip > 0 && l == 2 * skip) ? 0 : 1;
    if (!g.valid(m))
        throw std::out_of_range("gamma_monomial: alpha power out of range");
    return m;
}

/// A_k^i -> -[a_i x_{1..2k-1}],  B_k^i -> [a_i b x_{1..2k-1}].
inline HomologyElement representative(const SpaceCatalog& cat, const LoopKey& key)
{
    check_loop_index(cat.params(), key.k, key.i);
    const Ring g = cat.gamma(key.k).ring();
    const bool is_b = key.kind == LoopKind::B;
    return HomologyElement(g, gamma_monomial(g, key.k, key.i, is_b), is_b ? Scalar(1) : Scalar(-1));
}

/// Signals a broken internal invariant of the pipeline, typically a sign-convention bug.
struct PipelineError : std::logic_error {
    using std::logic_error::logic_error;
};

/// Reads off A/B coordinates of a Gamma_k class from the representatives. Throws on leftovers.
inline LoopClass recognize(const SpaceCatalog& cat, int k, const HomologyElement& x)
{
    LoopClass out(cat.params());
    HomologyElement rest = x;
    for (auto kind : {LoopKind::A, LoopKind::B}) {
        for (int i = 0; i < cat.params().n; ++i) {
            LoopKey key{kind, k, i};
            const auto rep = representative(cat, key);
            const auto& [mon, rc] = *rep.terms().begin();
            Scalar c = rest.coefficient(mon) / rc;
            if (c == 0)
                continue;
            out.add({key}, c);
            rest -= c * rep;
        }
    }
    if (!rest.is_zero())
        throw PipelineError("class " + rest.to_string() + " in Gamma_" + std::to_string(k) +
                            " is not a combination of A/B representatives");
    return out;
}

/**
 * Solves apply(y) = target over the full dual basis of `source`, assuming
 * apply sends each basis element to a single signed dual monomial (true for
 * Gysin maps and pushforwards of monomial ring maps). The solution is checked
 * by re-applying the map.
 */
template <class Apply>
HomologyElement solve_by_basis(const Ring& source, const HomologyElement& target, Apply&& apply, const char* what)
{
    std::map<Monomial, std::pair<Monomial, Scalar>> table;
    for (const auto& u : full_basis(source)) {
        HomologyElement img = apply(dual(source, u));
        if (img.is_zero())
            continue;
        if (img.terms().size() != 1)
            throw PipelineError(std::string(what) + ": image of a basis element is not a single dual monomial");
        const auto& [mon, c] = *img.terms().begin();
        if (!table.try_emplace(mon, u, c).second)
            throw PipelineError(std::string(what) + ": two basis elements share an image");
    }
    HomologyElement y(source);
    for (const auto& [mon, c] : target.terms()) {
        auto it = table.find(mon);
        if (it == table.end())
            throw PipelineError(std::string(what) + ": " + target.to_string() + " is not in the image");
        y.add(it->second.first, c / it->second.second);
    }
    if (!(apply(y) == target))
        throw PipelineError(std::string(what) + ": preimage does not reproduce " + target.to_string());
    return y;
}

inline TensorLoopClass coproduct_pipeline(const SpaceCatalog& cat, const LoopKey& key)
{
    const SpaceParams& p = cat.params();
    check_loop_index(p, key.k, key.i);
    const int k = key.k;
    const OrientedSpace gk = cat.gamma(k);
    const OrientedSpace& sm = cat.sm();
    const OrientedSpace& fiber = cat.sm_fiber();
    const RingMap section = cat.section_pullback();
    const std::size_t sm_gens = sm.ring().size();

    TensorLoopClass out(p);
    for (const auto& [m, xm] : cap_with_thom(cat, k, representative(cat, key))) {
        // X_m = (p_V)_! Y_m with Y_m in H_*(SM x_M SM)
        const RingMap pv = cat.pullback_pV(k, m);
        HomologyElement ym = solve_by_basis(
            fiber.ring(), xm, [&](const HomologyElement& h) { return gysin(pv, fiber, gk, h); }, "p_V Gysin");
        // Y_m is the image of an SM class under the section u -> (u, u)
        HomologyElement z = solve_by_basis(
            sm.ring(), ym, [&](const HomologyElement& h) { return pushforward(section, h); }, "section");
        // (p, p)_! d_* z, then read off A/B at levels m and k - m
        const OrientedSpace g_left = cat.gamma(m);
        const OrientedSpace g_right = cat.gamma(k - m);
        const RingMap pl_left = cat.pullback_pL(m);
        const RingMap pl_right = cat.pullback_pL(k - m);
        const HomologyElement diag = diagonal_pushforward(sm.ring(), cat.sm_square(), z);
        for (const auto& [mon, c] : diag.terms()) {
            auto [u, v] = split(mon, sm_gens);
            LoopClass left = recognize(cat, m, gysin(pl_left, sm, g_left, dual(sm.ring(), u)));
            LoopClass right = recognize(cat, k - m, gysin(pl_right, sm, g_right, dual(sm.ring(), v)));
            for (const auto& [li, lc] : left.terms())
                for (const auto& [ri, rc] : right.terms())
                    out.add({li[0], ri[0]}, c * lc * rc);
        }
    }
    return out;
}

inline TensorLoopClass coproduct_pipeline(const SpaceCatalog& cat, const LoopClass& x)
{
    if (!(x.params() == cat.params()))
        throw std::invalid_argument("coproduct_pipeline: class and catalog belong to different spaces");
    TensorLoopClass out(x.params());
    for (const auto& [idx, c] : x.terms())
        out += c * coproduct_pipeline(cat, idx[0]);
    return out;
}

// ---------------------------------------------------------------------------
// Goresky-Hingston product and duality

inline CohClass gh_product(const SpaceParams& p, const CohKey& a, const CohKey& b)
{
    CohClass out(p);
    if (a.kind == CohKind::mu && b.kind == CohKind::mu)
        return out;
    if (a.i + b.i > p.n - 1)
        return out;
    const CohKind kind = (a.kind == CohKind::mu || b.kind == CohKind::mu) ? CohKind::mu : CohKind::sigma;
    out.add({CohKey{kind, a.k + b.k, a.i + b.i}}, 1);
    return out;
}

inline CohClass gh_product(const CohClass& a, const CohClass& b)
{
    if (!(a.params() == b.params()))
        throw std::invalid_argument("gh_product: operands belong to different spaces");
    CohClass out(a.params());
    for (const auto& [ia, ca] : a.terms())
        for (const auto& [ib, cb] : b.terms())
            out += (ca * cb) * gh_product(a.params(), ia[0], ib[0]);
    return out;
}

/// Applies the product to every pair of a tensor.
inline CohClass gh_product(const TensorCohClass& t)
{
    CohClass out(t.params());
    for (const auto& [idx, c] : t.terms())
        out += c * gh_product(t.params(), idx[0], idx[1]);
    return out;
}

/// Kronecker pairing: sigma_k^i <-> A_k^i, mu_k^i <-> B_k^i.
template <std::size_t Arity>
Scalar gh_dual_pairing(const Combination<CohKey, Arity>& a, const Combination<LoopKey, Arity>& x)
{
    Scalar s = 0;
    for (const auto& [ix, cx] : x.terms()) {
        std::array<CohKey, Arity> partner;
        for (std::size_t f = 0; f < Arity; ++f)
            partner[f] = dual_key(ix[f]);
        s += cx * a.coefficient(partner);
    }
    return s;
}

/// <a (*) b, X> = <a x b, coproduct X> for basis a, b with k_a + k_b <= max_k and basis X with k <= max_k.
inline VerificationReport verify_duality(const SpaceParams& p, int max_k)
{
    VerificationReport rep{"duality"};
    std::vector<std::pair<LoopKey, TensorLoopClass>> coproducts;
    for (const auto& x : loop_basis(p, max_k))
        coproducts.emplace_back(x, coproduct_closed(p, x));
    for (const auto& a : coh_basis(p, max_k - 1)) {
        for (const auto& b : coh_basis(p, max_k - a.k)) {
            const CohClass prod = gh_product(p, a, b);
            const TensorCohClass cross = TensorCohClass::of(p, {a, b});
            for (const auto& [x, cx] : coproducts) {
                const Scalar lhs = gh_dual_pairing(prod, loop_class(p, x));
                const Scalar rhs = gh_dual_pairing(cross, cx);
                rep.check(lhs == rhs, [&] {
                    return "<" + to_string(a) + " (*) " + to_string(b) + ", " + to_string(x) + "> = " +
                           to_short_string(lhs) + " but <" + to_string(a) + " x " + to_string(b) +
                           ", coproduct> = " + to_short_string(rhs) + " on " + p.label();
                });
            }
        }
    }
    return rep;
}

/// Sum over all ordered splits k = m1 + m2 + m3 and i = j1 + j2 + j3 (with one B slot for B_k^i).
inline TripleLoopClass triple_split(const SpaceParams& p, const LoopKey& key)
{
    TripleLoopClass out(p);
    for (int m1 = 1; m1 <= key.k - 2; ++m1)
        for (int m2 = 1; m1 + m2 <= key.k - 1; ++m2)
            for (int j1 = 0; j1 <= key.i; ++j1)
                for (int j2 = 0; j1 + j2 <= key.i; ++j2) {
                    std::array<LoopKey, 3> idx{LoopKey{LoopKind::A, m1, j1}, LoopKey{LoopKind::A, m2, j2},
                                               LoopKey{LoopKind::A, key.k - m1 - m2, key.i - j1 - j2}};
                    if (key.kind == LoopKind::A) {
                        out.add(idx, 1);
                        continue;
                    }
                    for (std::size_t slot = 0; slot < 3; ++slot) {
                        auto with_b = idx;
                        with_b[slot].kind = LoopKind::B;
                        out.add(with_b, 1);
                    }
                }
    return out;
}

/// (coproduct x id) o coproduct = (id x coproduct) o coproduct, and both equal the triple split.
inline VerificationReport verify_coassociativity(const SpaceParams& p, int max_k)
{
    VerificationReport rep{"coassoc"};
    for (const auto& x : loop_basis(p, max_k)) {
        const TensorLoopClass once = coproduct_closed(p, x);
        const TripleLoopClass left = coproduct_on_left(once);
        const TripleLoopClass right = coproduct_on_right(once);
        rep.check(left == right, [&] { return "coassociativity fails on " + to_string(x) + " for " + p.label(); });
        rep.check(left == triple_split(p, x),
                  [&] { return "iterated coproduct of " + to_string(x) + " differs from the triple split"; });
    }
    return rep;
}

/// coproduct_pipeline == coproduct_closed on every basis generator with k <= max_k.
inline VerificationReport verify_pipeline(const SpaceCatalog& cat, int max_k)
{
    VerificationReport rep{"pipeline"};
    const SpaceParams& p = cat.params();
    for (const auto& x : loop_basis(p, max_k)) {
        std::optional<std::string> err;
        bool same = false;
        try {
            same = coproduct_pipeline(cat, x) == coproduct_closed(p, x);
        } catch (const PipelineError& e) {
            err = e.what();
        }
        rep.check(same, [&] {
            return "pipeline disagrees with closed form on " + to_string(x) + " for " + p.label() +
                   (err ? ": " + *err : std::string());
        });
    }
    return rep;
}

/**
 * Signed cap and Gysin values on Gamma_k for all k <= max_k, 1 <= m <= k-1, 0 <= i <= n-1:
 *
 *   xi_{2m} cap -[a_i x_{1..2k-1}]  = +[a_i x_{..^2m..}]
 *   xi_{2m} cap  [a_i b x_{1..2k-1}] = -[a_i b x_{..^2m..}]
 *   (p_L)_! a~_i       = -[a_i x_{1..2k-1}]
 *   (p_L)_! a~_i b~    = +[a_i b x_{1..2k-1}]
 *   (p_V)_! [a^_i]     = -[a_i x_{..^2m..}]
 *   (p_V)_! [a^_i b^]  = -[a_i b x_{..^2m..}]
 *
 * plus the Thom-cap terms of both representatives, which carry a minus sign.
 */
inline VerificationReport verify_gysin(const SpaceCatalog& cat, int max_k)
{
    VerificationReport rep{"gysin"};
    const SpaceParams& p = cat.params();
    const OrientedSpace& sm = cat.sm();
    const OrientedSpace& fiber = cat.sm_fiber();
    const Ring& sr = sm.ring();
    const Ring& fr = fiber.ring();
    auto sm_dual = [&](int i, bool b) {
        auto m = sr.one();
        m.exps[0] = i;
        m.exps[1] = b ? 1 : 0;
        return dual(sr, m);
    };
    auto fiber_dual = [&](int i, bool b) {
        auto m = fr.one();
        m.exps[0] = i;
        m.exps[1] = b ? 1 : 0;
        return dual(fr, m);
    };
    for (int k = 1; k <= max_k; ++k) {
        const OrientedSpace gk = cat.gamma(k);
        const Ring& g = gk.ring();
        const RingMap pl = cat.pullback_pL(k);
        for (int i = 0; i < p.n; ++i) {
            const std::string at = " (k=" + std::to_string(k) + ", i=" + std::to_string(i) + ", " + p.label() + ")";
            const HomologyElement full_a(g, gamma_monomial(g, k, i, false), -1);
            const HomologyElement full_b(g, gamma_monomial(g, k, i, true), 1);
            rep.check(gysin(pl, sm, gk, sm_dual(i, false)) == full_a, [&] { return "(p_L)_!(a~_i) sign" + at; });
            rep.check(gysin(pl, sm, gk, sm_dual(i, true)) == full_b, [&] { return "(p_L)_!(a~_i b~) sign" + at; });
            const auto thom_a = cap_with_thom(cat, k, full_a);
            const auto thom_b = cap_with_thom(cat, k, full_b);
            for (int m = 1; m <= k - 1; ++m) {
                const std::string atm = at + " m=" + std::to_string(m);
                const RingElement xi = RingElement::generator(g, xi_name(2 * m));
                const HomologyElement cut_a(g, gamma_monomial(g, k, i, false, m));
                const HomologyElement cut_b(g, gamma_monomial(g, k, i, true, m));
                rep.check(cap(xi, full_a) == cut_a, [&] { return "xi_2m cap -[a_i x] sign" + atm; });
                rep.check(cap(xi, full_b) == -cut_b, [&] { return "xi_2m cap [a_i b x] sign" + atm; });
                const RingMap pv = cat.pullback_pV(k, m);
                rep.check(gysin(pv, fiber, gk, fiber_dual(i, false)) == -cut_a,
                          [&] { return "(p_V)_!([a^_i]) sign" + atm; });
                rep.check(gysin(pv, fiber, gk, fiber_dual(i, true)) == -cut_b,
                          [&] { return "(p_V)_!([a^_i b^]) sign" + atm; });
                rep.check(thom_a.at(static_cast<std::size_t>(m - 1)).value == -cut_a,
                          [&] { return "Thom cap on A representative" + atm; });
                rep.check(thom_b.at(static_cast<std::size_t>(m - 1)).value == -cut_b,
                          [&] { return "Thom cap on B representative" + atm; });
            }
        }
    }
    return rep;
}

// ---------------------------------------------------------------------------
// Presentation R'/I with generators omega, alpha_1..alpha_{n-1}, beta_0..beta_{n-1}

struct PresMonomial {
    int omega = 0;
    std::map<int, int> alpha;  ///< i in 1..n-1 -> exponent
    std::map<int, int> beta;   ///< i in 0..n-1 -> exponent

    static PresMonomial alpha_factor(int i)
    {
        PresMonomial m;
        if (i == 0)
            m.omega = 1;
        else
            m.alpha[i] = 1;
        return m;
    }
    static PresMonomial beta_factor(int i)
    {
        PresMonomial m;
        m.beta[i] = 1;
        return m;
    }

    int factor_count() const
    {
        int c = omega;
        for (const auto& [i, e] : alpha)
            c += e;
        for (const auto& [i, e] : beta)
            c += e;
        return c;
    }
    int index_sum() const
    {
        int s = 0;
        for (const auto& [i, e] : alpha)
            s += i * e;
        for (const auto& [i, e] : beta)
            s += i * e;
        return s;
    }
    int beta_count() const
    {
        int c = 0;
        for (const auto& [i, e] : beta)
            c += e;
        return c;
    }

    friend PresMonomial operator*(PresMonomial a, const PresMonomial& b)
    {
        a.omega += b.omega;
        for (const auto& [i, e] : b.alpha)
            a.alpha[i] += e;
        for (const auto& [i, e] : b.beta)
            a.beta[i] += e;
        return a;
    }

    std::string to_string() const
    {
        std::string out;
        auto put = [&](const std::string& name, int e) {
            if (e == 0)
                return;
            if (!out.empty())
                out += ' ';
            out += name + (e > 1 ? "^" + std::to_string(e) : "");
        };
        put("w", omega);
        for (const auto& [i, e] : alpha)
            put("a" + std::to_string(i), e);
        for (const auto& [i, e] : beta)
            put("b" + std::to_string(i), e);
        return out.empty() ? "1" : out;
    }

    friend auto operator<=>(const PresMonomial&, const PresMonomial&) = default;
    friend bool operator==(const PresMonomial&, const PresMonomial&) = default;
};

/// Drops zero exponents so that equal monomials compare equal.
inline PresMonomial canonical(PresMonomial m)
{
    std::erase_if(m.alpha, [](const auto& kv) { return kv.second == 0; });
    std::erase_if(m.beta, [](const auto& kv) { return kv.second == 0; });
    return m;
}

/// omega^a prod alpha_i prod beta_i -> sigma_k^s, mu_k^s or 0 (k = factor count, s = index sum).
inline CohClass presentation_normalize(const SpaceParams& p, const PresMonomial& m)
{
    for (const auto& [i, e] : m.alpha)
        if (e < 0 || i < 1 || i > p.n - 1)
            throw std::out_of_range("alpha_" + std::to_string(i) + " is not a generator for n=" + std::to_string(p.n));
    for (const auto& [i, e] : m.beta)
        if (e < 0 || i < 0 || i > p.n - 1)
            throw std::out_of_range("beta_" + std::to_string(i) + " is not a generator for n=" + std::to_string(p.n));
    if (m.omega < 0)
        throw std::out_of_range("negative omega exponent");
    const int k = m.factor_count();
    if (k == 0)
        throw std::invalid_argument("the constant monomial is not in R'");
    CohClass out(p);
    const int s = m.index_sum();
    const int c = m.beta_count();
    if (s > p.n - 1 || c > 1)
        return out;
    out.add({CohKey{c == 0 ? CohKind::sigma : CohKind::mu, k, s}}, 1);
    return out;
}

/// A generating relation lhs = rhs of I; rhs == nullopt means lhs = 0. alpha_0 stands for omega.
struct PresRelation {
    PresMonomial lhs;
    std::optional<PresMonomial> rhs;
};

inline std::vector<PresRelation> presentation_relations(const SpaceParams& p)
{
    const int n = p.n;
    std::vector<PresRelation> out;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            if (i <= j && i + j > n - 1)
                out.push_back({PresMonomial::alpha_factor(i) * PresMonomial::alpha_factor(j), std::nullopt});
            if (i + j > n - 1)
                out.push_back({PresMonomial::alpha_factor(i) * PresMonomial::beta_factor(j), std::nullopt});
            if (i <= j)
                out.push_back({PresMonomial::beta_factor(i) * PresMonomial::beta_factor(j), std::nullopt});
        }
    for (int s = 0; s <= n - 1; ++s)
        for (int i = 0; i <= s; ++i)
            for (int k = 0; k <= s; ++k) {
                if (i == k)
                    continue;
                if (i <= s - i && k <= s - k)
                    out.push_back({PresMonomial::alpha_factor(i) * PresMonomial::alpha_factor(s - i),
                                   PresMonomial::alpha_factor(k) * PresMonomial::alpha_factor(s - k)});
                out.push_back({PresMonomial::alpha_factor(i) * PresMonomial::beta_factor(s - i),
                               PresMonomial::alpha_factor(k) * PresMonomial::beta_factor(s - k)});
            }
    return out;
}

/**
 * Rewrites a monomial modulo I using only the generating relations:
 * beta_i beta_j -> 0, alpha_i alpha_j -> omega alpha_{i+j} or 0, alpha_i beta_j -> omega beta_{i+j} or 0.
 * Returns the normal form omega^a x (1 | alpha_s | beta_s), or nullopt if the monomial lies in I.
 */
inline std::optional<PresMonomial> reduce_modulo_relations(const SpaceParams& p, PresMonomial m)
{
    const int n = p.n;
    m = canonical(std::move(m));
    for (;;) {
        if (m.beta_count() >= 2)
            return std::nullopt;
        std::vector<int> alphas;
        for (const auto& [i, e] : m.alpha)
            for (int r = 0; r < e; ++r)
                alphas.push_back(i);
        if (alphas.size() >= 2) {
            const int i = alphas[0];
            const int j = alphas[1];
            if (i + j > n - 1)
                return std::nullopt;
            m.alpha[i] -= 1;
            m.alpha[j] -= 1;
            m.omega += 1;
            m.alpha[i + j] += 1;
            m = canonical(std::move(m));
            continue;
        }
        if (alphas.size() == 1 && m.beta_count() == 1) {
            const int i = alphas[0];
            const int j = m.beta.begin()->first;
            if (i + j > n - 1)
                return std::nullopt;
            m.alpha[i] -= 1;
            m.beta[j] -= 1;
            m.omega += 1;
            m.beta[i + j] += 1;
            m = canonical(std::move(m));
            continue;
        }
        return m;
    }
}

/// All monomials of R' with 1 <= factor count <= max_count.
inline std::vector<PresMonomial> presentation_monomials(const SpaceParams& p, int max_count)
{
    // generators: omega, alpha_1..alpha_{n-1}, beta_0..beta_{n-1}
    std::vector<PresMonomial> gens{PresMonomial::alpha_factor(0)};
    for (int i = 1; i < p.n; ++i)
        gens.push_back(PresMonomial::alpha_factor(i));
    for (int i = 0; i < p.n; ++i)
        gens.push_back(PresMonomial::beta_factor(i));
    std::vector<PresMonomial> out;
    PresMonomial cur;
    auto rec = [&](auto&& self, std::size_t g, int left) -> void {
        if (g == gens.size()) {
            if (cur.factor_count() > 0)
                out.push_back(canonical(cur));
            return;
        }
        PresMonomial saved = cur;
        for (int e = 0; e <= left; ++e) {
            self(self, g + 1, left - e);
            cur = cur * gens[g];
        }
        cur = saved;
    };
    rec(rec, 0, max_count);
    return out;
}

/**
 * Checks that presentation_normalize induces a ring isomorphism R'/I -> (H^*(LM, M), (*)) up to
 * factor count max_level: relations map consistently (also after multiplication by monomials),
 * products map to products, every sigma_k^i / mu_k^i with k <= max_level is hit, monomials with
 * the same image agree modulo I, and omega^k = sigma_k^0 != 0 for k <= omega_max.
 */
inline VerificationReport verify_presentation(const SpaceParams& p, int max_level, int omega_max = 12)
{
    VerificationReport rep{"presentation"};
    const auto monos = presentation_monomials(p, max_level);

    for (const auto& rel : presentation_relations(p)) {
        std::vector<PresMonomial> multipliers{PresMonomial{}};
        for (const auto& q : monos)
            if (q.factor_count() + rel.lhs.factor_count() <= max_level)
                multipliers.push_back(q);
        for (const auto& q : multipliers) {
            const CohClass l = presentation_normalize(p, canonical(q * rel.lhs));
            const CohClass r = rel.rhs ? presentation_normalize(p, canonical(q * *rel.rhs)) : CohClass(p);
            rep.check(l == r, [&] {
                return "relation " + rel.lhs.to_string() + " = " + (rel.rhs ? rel.rhs->to_string() : "0") +
                       " not respected after multiplying by " + q.to_string() + " for " + p.label();
            });
        }
    }

    std::map<PresMonomial, CohClass> image;
    for (const auto& m : monos)
        image.emplace(m, presentation_normalize(p, m));
    for (const auto& a : monos)
        for (const auto& b : monos) {
            if (a.factor_count() + b.factor_count() > max_level)
                continue;
            rep.check(image.at(canonical(a * b)) == gh_product(image.at(a), image.at(b)), [&] {
                return "normalize(" + a.to_string() + " * " + b.to_string() + ") != product of images for " +
                       p.label();
            });
        }

    std::set<CohKey> hit;
    std::map<CohKey, PresMonomial> class_of;
    for (const auto& m : monos) {
        const CohClass& img = image.at(m);
        const auto reduced = reduce_modulo_relations(p, m);
        const CohClass reduced_img = reduced ? presentation_normalize(p, *reduced) : CohClass(p);
        rep.check(reduced_img == img, [&] { return "reduction modulo I changes the image of " + m.to_string(); });
        rep.check(img.is_zero() == !reduced.has_value(),
                  [&] { return m.to_string() + " maps to 0 but is nonzero modulo I (or vice versa)"; });
        if (img.is_zero() || !reduced)
            continue;
        const CohKey key = img.terms().begin()->first[0];
        hit.insert(key);
        auto [it, inserted] = class_of.try_emplace(key, *reduced);
        rep.check(inserted || it->second == *reduced, [&] {
            return "monomials " + m.to_string() + " and " + it->second.to_string() + " both map to " + to_string(key) +
                   " but differ modulo I";
        });
    }
    for (const auto& key : coh_basis(p, max_level))
        rep.check(hit.count(key) == 1, [&] { return to_string(key) + " is not hit by any monomial"; });

    for (int k = 1; k <= omega_max; ++k) {
        PresMonomial w;
        w.omega = k;
        const CohClass img = presentation_normalize(p, w);
        rep.check(!img.is_zero() && img == coh_class(p, {CohKind::sigma, k, 0}),
                  [&] { return "omega^" + std::to_string(k) + " does not map to s[" + std::to_string(k) + ",0]"; });
    }
    return rep;
}

// ---------------------------------------------------------------------------
// Betti numbers of H_*(LM, M)

inline int betti(const SpaceParams& p, int d)
{
    int count = 0;
    for (int k = 1; p.index(k) <= d; ++k)
        for (int i = 0; i < p.n; ++i) {
            count += deg_A(p, k, i) == d ? 1 : 0;
            count += deg_B(p, k, i) == d ? 1 : 0;
        }
    return count;
}

struct BettiTable {
    std::vector<std::pair<int, int>> rows;  ///< (degree, rank)
    /// True if levels above the cap could contribute to degrees <= max_d.
    bool truncated = false;
};

/// Ranks for degrees 0..max_d, counting only generators with k <= max_level.
inline BettiTable betti_table(const SpaceParams& p, int max_d, int max_level)
{
    BettiTable t;
    std::vector<int> counts(static_cast<std::size_t>(std::max(max_d, 0)) + 1, 0);
    for (int k = 1; k <= max_level && p.index(k) <= max_d; ++k)
        for (int i = 0; i < p.n; ++i)
            for (int d : {deg_A(p, k, i), deg_B(p, k, i)})
                if (d <= max_d)
                    ++counts[static_cast<std::size_t>(d)];
    for (int d = 0; d <= max_d; ++d)
        t.rows.emplace_back(d, counts[static_cast<std::size_t>(d)]);
    t.truncated = p.index(max_level + 1) <= max_d;
    return t;
}

} // namespace loopalg
