// Acceptance run: one line per criterion, nonzero exit if any criterion fails or runs over its time budget.

#include "test_support.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <set>
#include <string>
#include <vector>

using namespace loopalg;

namespace {

const std::vector<Family> families{Family::complex, Family::quaternionic};

struct Criterion {
    int id;
    std::string title;
    double budget_s;  // 0 = no limit
    std::function<VerificationReport()> body;
};

VerificationReport sign_gate()
{
    VerificationReport rep{"sign gate"};
    for (auto f : families)
        for (int n : {2, 3})
            rep.merge(verify_gysin(SpaceCatalog(SpaceParams(f, n), 4), 4));
    return rep;
}

VerificationReport oracle_equivalence()
{
    VerificationReport rep{"pipeline"};
    for (auto f : families)
        for (int n = 1; n <= 3; ++n)
            rep.merge(verify_pipeline(SpaceCatalog(SpaceParams(f, n), 6), 6));
    return rep;
}

VerificationReport duality()
{
    VerificationReport rep{"duality"};
    for (auto f : families)
        for (int n = 1; n <= 3; ++n)
            rep.merge(verify_duality(SpaceParams(f, n), 6));
    return rep;
}

VerificationReport coassociativity()
{
    VerificationReport rep{"coassoc"};
    for (auto f : families)
        for (int n = 1; n <= 3; ++n)
            rep.merge(verify_coassociativity(SpaceParams(f, n), 6));
    return rep;
}

VerificationReport presentation()
{
    VerificationReport rep{"presentation"};
    for (auto f : families)
        for (int n = 1; n <= 3; ++n)
            rep.merge(verify_presentation(SpaceParams(f, n), 6, 12));
    return rep;
}

VerificationReport structure()
{
    VerificationReport rep{"rings"};
    for (auto f : families)
        for (int n = 1; n <= 3; ++n)
            rep.merge(verify_rings(SpaceParams(f, n), 12, 6));
    return rep;
}

void kernel_exhaustive(VerificationReport& rep, const OrientedSpace& s)
{
    const Ring& r = s.ring();
    const Ring sq = tensor_ring(r, r);
    const auto all = full_basis(r);
    const std::string where = " on " + s.name();
    std::vector<RingElement> el;
    for (const auto& m : all)
        el.emplace_back(r, m);

    for (std::size_t a = 0; a < all.size(); ++a)
        for (std::size_t b = 0; b < all.size(); ++b) {
            const bool odd = (r.degree(all[a]) * r.degree(all[b])) % 2 != 0;
            const RingElement ab = cup(el[a], el[b]);
            rep.check(ab == sign_of(odd) * cup(el[b], el[a]), [&] { return "graded commutativity" + where; });
            for (std::size_t c = 0; c < all.size(); ++c) {
                rep.check(cup(ab, el[c]) == cup(el[a], cup(el[b], el[c])), [&] { return "associativity" + where; });
                const HomologyElement x = dual(r, all[c]);
                rep.check(cap(cup(el[b], el[a]), x) == cap(el[b], cap(el[a], x)),
                          [&] { return "cap module axiom" + where; });
            }
        }

    std::set<Monomial> images;
    for (std::size_t a = 0; a < all.size(); ++a) {
        const HomologyElement x = pd(s, el[a]);
        const bool unit = x.terms().size() == 1 && abs(x.terms().begin()->second) == 1;
        rep.check(unit, [&] { return "pd of a basis class is not a signed basis class" + where; });
        if (unit)
            images.insert(x.terms().begin()->first);
        rep.check(pd_inverse(s, x) == el[a], [&] { return "pd_inverse o pd != id" + where; });
    }
    rep.check(images.size() == all.size(), [&] { return "pd is not bijective" + where; });

    for (const auto& m : all) {
        const HomologyElement x = dual(r, m);
        const HomologyElement dx = diagonal_pushforward(r, sq, x);
        for (std::size_t a = 0; a < all.size(); ++a)
            for (std::size_t b = 0; b < all.size(); ++b) {
                if (r.degree(all[a]) + r.degree(all[b]) != r.degree(m))
                    continue;
                rep.check(pairing(cross(sq, el[a], el[b]), dx) == pairing(cup(el[a], el[b]), x),
                          [&] { return "diagonal pushforward is not dual to cup" + where; });
            }
    }
}

void kernel_random(VerificationReport& rep, const OrientedSpace& s, std::mt19937& rng, int trials)
{
    using loopalg::testing::random_element;
    using loopalg::testing::random_homogeneous;
    using loopalg::testing::random_homology;
    const Ring& r = s.ring();
    const Ring sq = tensor_ring(r, r);
    const std::string where = " on random combinations in " + s.name();
    for (int t = 0; t < trials; ++t) {
        const RingElement a = random_homogeneous(r, rng);
        const RingElement b = random_homogeneous(r, rng);
        const RingElement c = random_element(r, rng);
        const HomologyElement x = random_homology(r, rng);
        const bool odd = (*a.degree() * *b.degree()) % 2 != 0;
        rep.check(cup(a, b) == sign_of(odd) * cup(b, a), [&] { return "graded commutativity" + where; });
        rep.check(cup(cup(a, b), c) == cup(a, cup(b, c)), [&] { return "associativity" + where; });
        rep.check(cap(cup(b, a), x) == cap(b, cap(a, x)), [&] { return "cap module axiom" + where; });
        rep.check(pd_inverse(s, pd(s, a)) == a, [&] { return "pd round trip" + where; });
        rep.check(pairing(cross(sq, a, b), diagonal_pushforward(r, sq, x)) == pairing(cup(a, b), x),
                  [&] { return "diagonal/cup adjunction" + where; });
    }
}

VerificationReport kernel()
{
    VerificationReport rep{"kernel"};
    std::vector<OrientedSpace> spaces;
    for (auto f : families) {
        const SpaceParams p(f, 2);
        spaces.emplace_back("SM(" + p.label() + ")", sm_ring(p));
        spaces.emplace_back("Gamma_2(" + p.label() + ")", gamma_ring_of(p, 2));
    }
    for (const auto& s : spaces)
        kernel_exhaustive(rep, s);
    std::mt19937 rng(1000);
    for (const auto& s : spaces)
        kernel_random(rep, s, rng, 250);
    return rep;
}

} // namespace

int main()
{
    const std::vector<Criterion> criteria{
        {1, "sign gate: cap and Gysin values, cp/hp, n in {2,3}, k <= 4", 10, sign_gate},
        {2, "pipeline == closed form, k <= 6, n <= 3, cp/hp", 120, oracle_equivalence},
        {3, "<a (*) b, X> = <a x b, coproduct X>, total level <= 6, cp/hp", 120, duality},
        {4, "coassociativity, k <= 6", 0, coassociativity},
        {5, "presentation ring map, surjective for k <= 6, omega^k != 0 for k <= 12", 0, presentation},
        {6, "Gamma_k dimension, top degree, A/B parity, k <= 12", 0, structure},
        {7, "kernel properties on SM and Gamma_2 of CP^2/HP^2 + 1000 random checks", 30, kernel},
    };

    bool all_ok = true;
    for (const auto& c : criteria) {
        const auto start = std::chrono::steady_clock::now();
        const VerificationReport rep = c.body();
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        const bool in_time = c.budget_s == 0 || secs < c.budget_s;
        const bool ok = rep.passed() && in_time;
        all_ok = all_ok && ok;
        std::printf("[%s] %d %s: %s, %.2f s%s\n", ok ? "PASS" : "FAIL", c.id, c.title.c_str(), rep.summary().c_str(),
                    secs, in_time ? "" : " (over budget)");
    }
    return all_ok ? 0 : 1;
}
