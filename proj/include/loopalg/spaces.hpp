#pragma once

/**
 * @file spaces.hpp
 * @brief Rings and maps attached to M = CP^n and M = HP^n.
 *
 * Conventions for M of real dimension N with index jump lambda:
 *
 *   H*(SM)          = Q[at, bt] / (at^n, bt^2)                 |at| = lambda+1, |bt| = N+lambda
 *   H*(SM x_M SM)   = Q[ah, bh, xh] / (ah^n, bh^2, xh^2)        |xh| = N-1
 *   H*(Gamma_k)     = Q[alpha, beta, xi1..xi{2k-1}] / (...)     |xi odd| = lambda, |xi even| = N-1
 *
 * The index of the k-fold iterated critical manifold is
 * lambda_k = k lambda + (k-1)(N-1).
 */

#include "loopalg/duality.hpp"
#include "loopalg/report.hpp"

#include <cstddef>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace loopalg {

enum class Family { complex, quaternionic };

inline std::string family_token(Family f) { return f == Family::complex ? "cp" : "hp"; }

inline Family parse_family(const std::string& token)
{
    if (token == "cp")
        return Family::complex;
    if (token == "hp")
        return Family::quaternionic;
    throw std::invalid_argument("unknown space '" + token + "' (expected cp or hp)");
}

struct SpaceParams {
    Family family = Family::complex;
    int n = 1;

    SpaceParams() = default;
    SpaceParams(Family f, int n_) : family(f), n(n_)
    {
        if (n < 1)
            throw std::invalid_argument("n must be >= 1");
    }

    int lambda() const { return family == Family::complex ? 1 : 3; }
    /// Real dimension of M.
    int N() const { return family == Family::complex ? 2 * n : 4 * n; }
    int index(int k) const { return k * lambda() + (k - 1) * (N() - 1); }

    std::string label() const { return family_token(family) + std::to_string(n); }

    friend bool operator==(const SpaceParams&, const SpaceParams&) = default;
};

inline void check_loop_index(const SpaceParams& p, int k, int i)
{
    if (k < 1)
        throw std::out_of_range("k must be >= 1, got " + std::to_string(k));
    if (i < 0 || i > p.n - 1)
        throw std::out_of_range("index i=" + std::to_string(i) + " out of range for n=" + std::to_string(p.n));
}

/// Degree of A_k^i.
inline int deg_A(const SpaceParams& p, int k, int i)
{
    check_loop_index(p, k, i);
    return p.index(k) + i * (p.lambda() + 1);
}

/// Degree of B_k^i.
inline int deg_B(const SpaceParams& p, int k, int i)
{
    check_loop_index(p, k, i);
    return p.index(k) + (i + 1) * (p.lambda() + 1) + p.N() - 1;
}

inline Ring sm_ring(const SpaceParams& p)
{
    return Ring({{"alpha_t", p.lambda() + 1, p.n}, {"beta_t", p.N() + p.lambda(), 2}});
}

inline Ring sm_fiber_ring(const SpaceParams& p)
{
    return Ring({{"alpha_h", p.lambda() + 1, p.n}, {"beta_h", p.N() + p.lambda(), 2}, {"xi_h", p.N() - 1, 2}});
}

inline std::string xi_name(int l) { return "xi" + std::to_string(l); }

inline Ring gamma_ring_of(const SpaceParams& p, int k)
{
    if (k < 1)
        throw std::out_of_range("Gamma_k needs k >= 1, got " + std::to_string(k));
    std::vector<Generator> gens{{"alpha", p.lambda() + 1, p.n}, {"beta", p.N() + p.lambda(), 2}};
    for (int l = 1; l <= 2 * k - 1; ++l)
        gens.push_back({xi_name(l), l % 2 == 1 ? p.lambda() : p.N() - 1, 2});
    return Ring(std::move(gens));
}

/// Immutable catalog of the spaces for one M. Gamma_1..Gamma_{max_level} are built eagerly.
class SpaceCatalog {
public:
    explicit SpaceCatalog(SpaceParams params, int max_level = 8)
        : params_(params), sm_("SM", sm_ring(params)), fiber_("SMxSM", sm_fiber_ring(params)),
          sm_square_(tensor_ring(sm_.ring(), sm_.ring()))
    {
        for (int k = 1; k <= max_level; ++k)
            gammas_.emplace(k, OrientedSpace("Gamma_" + std::to_string(k), gamma_ring_of(params, k)));
    }

    const SpaceParams& params() const { return params_; }
    const OrientedSpace& sm() const { return sm_; }
    /// SM x_M SM.
    const OrientedSpace& sm_fiber() const { return fiber_; }
    /// tensor_ring(H*(SM), H*(SM)).
    const Ring& sm_square() const { return sm_square_; }

    OrientedSpace gamma(int k) const
    {
        auto it = gammas_.find(k);
        if (it != gammas_.end())
            return it->second;
        return OrientedSpace("Gamma_" + std::to_string(k), gamma_ring_of(params_, k));
    }

    /// p_L^*: H*(SM) -> H*(Gamma_k), alpha_t -> alpha, beta_t -> beta.
    RingMap pullback_pL(int k) const
    {
        const Ring g = gamma(k).ring();
        return RingMap(sm_.ring(), g, {RingElement::generator(g, "alpha"), RingElement::generator(g, "beta")});
    }

    /// p_V^*: H*(SM x_M SM) -> H*(Gamma_k), alpha_h -> alpha, beta_h -> beta, xi_h -> xi_{2m}.
    RingMap pullback_pV(int k, int m) const
    {
        if (m < 1 || m > k - 1)
            throw std::out_of_range("p_V needs 1 <= m <= k-1, got k=" + std::to_string(k) +
                                    " m=" + std::to_string(m));
        const Ring g = gamma(k).ring();
        return RingMap(fiber_.ring(), g,
                       {RingElement::generator(g, "alpha"), RingElement::generator(g, "beta"),
                        RingElement::generator(g, xi_name(2 * m))});
    }

    /// Section SM -> SM x_M SM, u -> (u, u), in cohomology: xi_h restricts to 0.
    RingMap section_pullback() const
    {
        const Ring& s = sm_.ring();
        return RingMap(fiber_.ring(), s,
                       {RingElement::generator(s, "alpha_t"), RingElement::generator(s, "beta_t"), RingElement(s)});
    }

private:
    SpaceParams params_;
    OrientedSpace sm_;
    OrientedSpace fiber_;
    Ring sm_square_;
    std::map<int, OrientedSpace> gammas_;
};

/// Coefficients of prod_f (1 + t^{d_f}) times the series of SM, up to degree max_d.
inline std::vector<std::size_t> expected_gamma_series(const SpaceParams& p, int k, int max_d)
{
    std::vector<std::size_t> series(static_cast<std::size_t>(max_d) + 1, 0);
    for (const auto& [d, dim] : poincare_series(sm_ring(p), max_d))
        series[static_cast<std::size_t>(d)] = dim;
    auto times = [&](int shift) {
        for (int d = max_d; d >= shift; --d)
            series[static_cast<std::size_t>(d)] += series[static_cast<std::size_t>(d - shift)];
    };
    for (int i = 0; i < k; ++i)
        times(p.lambda());
    for (int i = 0; i < k - 1; ++i)
        times(p.N() - 1);
    return series;
}

/// Structural checks on Gamma_k and the A/B degrees for k <= max_k.
/// The full Poincare series comparison runs for k <= series_max_k only.
inline VerificationReport verify_rings(const SpaceParams& p, int max_k, int series_max_k = 6)
{
    VerificationReport rep{"rings"};
    const std::string where = " for " + p.label();
    for (int k = 1; k <= max_k; ++k) {
        const Ring g = gamma_ring_of(p, k);
        const std::string at = " at k=" + std::to_string(k) + where;
        const std::size_t expected_dim = static_cast<std::size_t>(2 * p.n) << (2 * k - 1);
        rep.check(total_dimension(g) == expected_dim, [&] { return "dim H*(Gamma_k) mismatch" + at; });
        rep.check(g.top_degree() == p.index(k) + 2 * p.N() - 1, [&] { return "top degree mismatch" + at; });
        rep.check(basis(g, g.top_degree()).size() == 1, [&] { return "top degree not one-dimensional" + at; });
        if (k <= series_max_k) {
            auto expected = expected_gamma_series(p, k, g.top_degree());
            auto actual = poincare_series(g, g.top_degree());
            std::size_t sum = 0;
            bool same = true;
            for (const auto& [d, dim] : actual) {
                same = same && dim == expected[static_cast<std::size_t>(d)];
                sum += dim;
            }
            rep.check(same, [&] { return "Poincare series of Gamma_k mismatch" + at; });
            rep.check(sum == expected_dim, [&] { return "enumerated basis size mismatch" + at; });
        }
        for (int i = 0; i < p.n; ++i) {
            rep.check(deg_A(p, k, i) % 2 != 0, [&] { return "deg A_k^" + std::to_string(i) + " even" + at; });
            rep.check(deg_B(p, k, i) % 2 == 0, [&] { return "deg B_k^" + std::to_string(i) + " odd" + at; });
        }
    }
    return rep;
}

} // namespace loopalg
