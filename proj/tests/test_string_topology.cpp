#include "test_support.hpp"

#include <gtest/gtest.h>

using namespace loopalg;
using loopalg::testing::mono;

namespace {

const SpaceParams cp2(Family::complex, 2);
const SpaceParams cp3(Family::complex, 3);
const SpaceParams hp2(Family::quaternionic, 2);

LoopKey A(int k, int i) { return {LoopKind::A, k, i}; }
LoopKey B(int k, int i) { return {LoopKind::B, k, i}; }
CohKey s(int k, int i) { return {CohKind::sigma, k, i}; }
CohKey mu(int k, int i) { return {CohKind::mu, k, i}; }

TensorLoopClass tensor(const SpaceParams& p, std::initializer_list<std::pair<LoopKey, LoopKey>> pairs)
{
    TensorLoopClass out(p);
    for (const auto& [a, b] : pairs)
        out.add({a, b}, 1);
    return out;
}

/// alpha^i (beta) xi_1 ... xi_{2k-1} without xi_skip.
Monomial gamma_mono(const Ring& r, int k, int i, bool b, int skip = 0)
{
    auto m = r.one();
    m.exps[r.index("alpha")] = i;
    m.exps[r.index("beta")] = b ? 1 : 0;
    for (int l = 1; l <= 2 * k - 1; ++l)
        if (l != skip)
            m.exps[r.index(xi_name(l))] = 1;
    return m;
}

PresMonomial w() { return PresMonomial::alpha_factor(0); }
PresMonomial a(int i) { return PresMonomial::alpha_factor(i); }
PresMonomial b(int i) { return PresMonomial::beta_factor(i); }

} // namespace

// ---------------------------------------------------------------------------
// closed coproduct

TEST(Coproduct, LevelOneVanishes)
{
    for (int i = 0; i < 2; ++i) {
        EXPECT_TRUE(coproduct_closed(cp2, A(1, i)).is_zero());
        EXPECT_TRUE(coproduct_closed(cp2, B(1, i)).is_zero());
    }
}

TEST(Coproduct, A31OnCp2)
{
    const auto c = coproduct_closed(cp2, A(3, 1));
    EXPECT_EQ(c, tensor(cp2, {{A(1, 0), A(2, 1)}, {A(1, 1), A(2, 0)}, {A(2, 0), A(1, 1)}, {A(2, 1), A(1, 0)}}));
    EXPECT_EQ(degree(cp2, A(3, 1)), 11);
    EXPECT_EQ(c.degree(), std::optional<int>(8));
}

TEST(Coproduct, B20OnCp2)
{
    EXPECT_EQ(coproduct_closed(cp2, B(2, 0)), tensor(cp2, {{A(1, 0), B(1, 0)}, {B(1, 0), A(1, 0)}}));
}

TEST(Coproduct, TermCounts)
{
    for (const SpaceParams& p : {cp2, cp3, hp2})
        for (const auto& x : loop_basis(p, 6)) {
            const std::size_t per_split = static_cast<std::size_t>(x.i + 1) * (x.kind == LoopKind::A ? 1 : 2);
            EXPECT_EQ(coproduct_closed(p, x).size(), static_cast<std::size_t>(x.k - 1) * per_split) << to_string(x);
        }
}

TEST(Coproduct, DegreeLaw)
{
    for (const SpaceParams& p : {cp2, cp3, hp2})
        for (const auto& x : loop_basis(p, 6)) {
            const auto c = coproduct_closed(p, x);
            for (const auto& [idx, coeff] : c.terms())
                EXPECT_EQ(c.index_degree(idx), degree(p, x) + 1 - p.N()) << to_string(x);
        }
}

TEST(Coproduct, SymmetricUnderFactorSwap)
{
    for (const auto& x : loop_basis(cp3, 5)) {
        const auto c = coproduct_closed(cp3, x);
        TensorLoopClass swapped(cp3);
        for (const auto& [idx, coeff] : c.terms())
            swapped.add({idx[1], idx[0]}, coeff);
        EXPECT_EQ(swapped, c) << to_string(x);
    }
}

TEST(Coproduct, LinearOnClasses)
{
    const LoopClass x = loop_class(cp2, A(3, 1), Scalar(3, 2)) + loop_class(cp2, B(2, 0), -2);
    EXPECT_EQ(coproduct_closed(x),
              Scalar(3, 2) * coproduct_closed(cp2, A(3, 1)) - Scalar(2) * coproduct_closed(cp2, B(2, 0)));
}

TEST(Coproduct, RejectsBadIndices)
{
    EXPECT_THROW(coproduct_closed(cp2, A(0, 0)), std::out_of_range);
    EXPECT_THROW(coproduct_closed(cp2, B(2, 2)), std::out_of_range);
}

TEST(Coproduct, CoassociativeAndEqualToTripleSplit)
{
    for (const SpaceParams& p : {cp2, cp3, hp2})
        for (const auto& x : loop_basis(p, 6)) {
            const auto once = coproduct_closed(p, x);
            const auto left = coproduct_on_left(once);
            EXPECT_EQ(left, coproduct_on_right(once)) << to_string(x);
            EXPECT_EQ(left, triple_split(p, x)) << to_string(x);
        }
}

TEST(Coproduct, TripleSplitOfA30)
{
    TripleLoopClass expected(cp2);
    expected.add({A(1, 0), A(1, 0), A(1, 0)}, 1);
    EXPECT_EQ(triple_split(cp2, A(3, 0)), expected);
    EXPECT_EQ(verify_coassociativity(cp2, 6).summary().rfind("PASS", 0), 0u);
}

// ---------------------------------------------------------------------------
// Thom class and representatives

TEST(Thom, PullbackTerms)
{
    const SpaceCatalog cat(cp2, 4);
    EXPECT_TRUE(thom_pullback(cat, 1).terms.empty());
    const auto t2 = thom_pullback(cat, 2);
    ASSERT_EQ(t2.terms.size(), 1u);
    EXPECT_EQ(t2.terms[0].m, 1);
    EXPECT_EQ(t2.terms[0].xi, RingElement::generator(cat.gamma(2).ring(), "xi2"));
    const auto t3 = thom_pullback(cat, 3);
    ASSERT_EQ(t3.terms.size(), 2u);
    EXPECT_EQ(t3.terms[1].m, 2);
    EXPECT_EQ(t3.terms[1].xi, RingElement::generator(cat.gamma(3).ring(), "xi4"));
}

TEST(Thom, Representatives)
{
    const SpaceCatalog cat(cp2, 3);
    const Ring g = cat.gamma(3).ring();
    EXPECT_EQ(representative(cat, A(3, 1)), HomologyElement(g, gamma_mono(g, 3, 1, false), -1));
    EXPECT_EQ(representative(cat, B(3, 0)), HomologyElement(g, gamma_mono(g, 3, 0, true), 1));
}

TEST(Thom, CapValuesCarryMinusSign)
{
    for (const SpaceParams& p : {cp2, hp2}) {
        const SpaceCatalog cat(p, 4);
        for (int k = 2; k <= 4; ++k) {
            const Ring g = cat.gamma(k).ring();
            for (int i = 0; i < p.n; ++i)
                for (bool with_b : {false, true}) {
                    const auto terms = cap_with_thom(cat, k, representative(cat, with_b ? B(k, i) : A(k, i)));
                    ASSERT_EQ(terms.size(), static_cast<std::size_t>(k - 1));
                    for (int m = 1; m < k; ++m) {
                        EXPECT_EQ(terms[static_cast<std::size_t>(m - 1)].m, m);
                        EXPECT_EQ(terms[static_cast<std::size_t>(m - 1)].value,
                                  HomologyElement(g, gamma_mono(g, k, i, with_b, 2 * m), -1));
                    }
                }
        }
    }
}

TEST(Thom, LevelOneHasNoTerms)
{
    const SpaceCatalog cat(cp2, 2);
    EXPECT_TRUE(cap_with_thom(cat, 1, representative(cat, A(1, 0))).empty());
}

TEST(Thom, SignGateSuitePasses)
{
    for (auto f : {Family::complex, Family::quaternionic})
        for (int n = 2; n <= 3; ++n) {
            const SpaceCatalog cat(SpaceParams(f, n), 4);
            const auto rep = verify_gysin(cat, 4);
            EXPECT_TRUE(rep.passed()) << rep.summary();
        }
}

// ---------------------------------------------------------------------------
// pipeline

TEST(Pipeline, Examples)
{
    const SpaceCatalog cat(cp2, 4);
    EXPECT_EQ(coproduct_pipeline(cat, A(2, 0)), tensor(cp2, {{A(1, 0), A(1, 0)}}));
    EXPECT_EQ(coproduct_pipeline(cat, B(2, 1)),
              tensor(cp2, {{A(1, 0), B(1, 1)}, {A(1, 1), B(1, 0)}, {B(1, 0), A(1, 1)}, {B(1, 1), A(1, 0)}}));
    EXPECT_TRUE(coproduct_pipeline(cat, A(1, 0)).is_zero());
}

TEST(Pipeline, AgreesWithClosedForm)
{
    for (const SpaceParams& p : {cp2, cp3, hp2, SpaceParams(Family::quaternionic, 3)}) {
        const SpaceCatalog cat(p, 4);
        for (const auto& x : loop_basis(p, 4))
            EXPECT_EQ(coproduct_pipeline(cat, x), coproduct_closed(p, x)) << to_string(x) << " on " << p.label();
    }
}

TEST(Pipeline, LinearOnClasses)
{
    const SpaceCatalog cat(hp2, 3);
    const LoopClass x = loop_class(hp2, A(3, 1), 5) + loop_class(hp2, B(3, 0), Scalar(-1, 3));
    EXPECT_EQ(coproduct_pipeline(cat, x), coproduct_closed(x));
}

TEST(Pipeline, RecognizeRejectsForeignClasses)
{
    const SpaceCatalog cat(cp2, 2);
    const Ring g = cat.gamma(2).ring();
    EXPECT_THROW(recognize(cat, 2, HomologyElement(g, mono(g, {{"xi1", 1}}))), PipelineError);
    const auto both = representative(cat, A(2, 1)) + Scalar(2) * representative(cat, B(2, 0));
    LoopClass expected = loop_class(cp2, A(2, 1)) + loop_class(cp2, B(2, 0), 2);
    EXPECT_EQ(recognize(cat, 2, both), expected);
}

TEST(Pipeline, SolveByBasisFailsLoudlyOutsideImage)
{
    const SpaceCatalog cat(cp2, 3);
    const Ring& sm = cat.sm().ring();
    const Ring& fr = cat.sm_fiber().ring();
    const RingMap section = cat.section_pullback();
    // classes with an xi_h factor are not pushed forward from SM
    const HomologyElement target(fr, mono(fr, {{"xi_h", 1}}));
    EXPECT_THROW(solve_by_basis(sm, target, [&](const HomologyElement& h) { return pushforward(section, h); }, "section"),
                 PipelineError);
}

TEST(Pipeline, SuiteReportsPass)
{
    const SpaceCatalog cat(cp3, 5);
    const auto rep = verify_pipeline(cat, 5);
    EXPECT_TRUE(rep.passed()) << rep.summary();
    EXPECT_EQ(rep.checks, loop_basis(cp3, 5).size());
}

// ---------------------------------------------------------------------------
// Goresky-Hingston product

TEST(Product, Examples)
{
    EXPECT_EQ(gh_product(cp2, s(1, 0), s(1, 0)), coh_class(cp2, s(2, 0)));
    EXPECT_TRUE(gh_product(cp2, s(1, 1), s(1, 1)).is_zero());
    EXPECT_TRUE(gh_product(cp2, mu(1, 0), mu(2, 1)).is_zero());
    EXPECT_EQ(gh_product(cp2, s(1, 0), mu(1, 1)), coh_class(cp2, mu(2, 1)));
    EXPECT_EQ(gh_product(cp2, mu(1, 1), s(2, 0)), coh_class(cp2, mu(3, 1)));
}

TEST(Product, CommutativeAndAssociativeOnBasis)
{
    for (const SpaceParams& p : {cp2, cp3, hp2}) {
        const auto basis = coh_basis(p, 4);
        for (const auto& x : basis)
            for (const auto& y : basis) {
                EXPECT_EQ(gh_product(p, x, y), gh_product(p, y, x));
                for (const auto& z : basis) {
                    const auto left = gh_product(gh_product(p, x, y), coh_class(p, z));
                    const auto right = gh_product(coh_class(p, x), gh_product(p, y, z));
                    EXPECT_EQ(left, right) << to_string(x) << " " << to_string(y) << " " << to_string(z);
                }
            }
    }
}

TEST(Product, DegreeLaw)
{
    for (const SpaceParams& p : {cp2, cp3, hp2}) {
        const auto basis = coh_basis(p, 5);
        for (const auto& x : basis)
            for (const auto& y : basis) {
                const auto prod = gh_product(p, x, y);
                if (!prod.is_zero()) {
                    EXPECT_EQ(prod.degree(), degree(p, x) + degree(p, y) + p.N() - 1);
                }
            }
    }
}

TEST(Product, BilinearAndTensorForm)
{
    const CohClass x = coh_class(cp3, s(1, 0), 2) + coh_class(cp3, mu(1, 1), Scalar(1, 2));
    const CohClass y = coh_class(cp3, s(2, 1), -1);
    EXPECT_EQ(gh_product(x, y), coh_class(cp3, s(3, 1), -2) + coh_class(cp3, mu(3, 2), Scalar(-1, 2)));
    TensorCohClass t(cp3);
    t.add({s(1, 0), s(1, 1)}, 3);
    t.add({mu(1, 2), s(1, 1)}, 1);
    EXPECT_EQ(gh_product(t), coh_class(cp3, s(2, 1), 3));
}

TEST(Product, DifferentSpacesThrow)
{
    EXPECT_THROW(gh_product(coh_class(cp2, s(1, 0)), coh_class(hp2, s(1, 0))), std::invalid_argument);
}

// ---------------------------------------------------------------------------
// duality

TEST(Duality, DualBasisPairing)
{
    EXPECT_EQ(gh_dual_pairing(coh_class(cp2, s(2, 0)), loop_class(cp2, A(2, 0))), 1);
    EXPECT_EQ(gh_dual_pairing(coh_class(cp2, s(2, 0)), loop_class(cp2, B(2, 0))), 0);
    EXPECT_EQ(gh_dual_pairing(coh_class(cp2, mu(1, 1), 3), loop_class(cp2, B(1, 1), Scalar(1, 2))), Scalar(3, 2));
}

TEST(Duality, BothSidesOnA20)
{
    const Scalar lhs = gh_dual_pairing(gh_product(cp2, s(1, 0), s(1, 0)), loop_class(cp2, A(2, 0)));
    const Scalar rhs = gh_dual_pairing(TensorCohClass::of(cp2, {s(1, 0), s(1, 0)}), coproduct_closed(cp2, A(2, 0)));
    EXPECT_EQ(lhs, 1);
    EXPECT_EQ(rhs, 1);
}

TEST(Duality, SweepPasses)
{
    const auto rep = verify_duality(cp2, 5);
    EXPECT_TRUE(rep.passed()) << rep.summary();
    EXPECT_TRUE(verify_duality(hp2, 5).passed());
    EXPECT_TRUE(verify_duality(cp3, 4).passed());
}

TEST(Duality, PairingAgainstPipelineCoproduct)
{
    const SpaceCatalog cat(hp2, 4);
    for (const auto& x : loop_basis(hp2, 4)) {
        const auto cx = coproduct_pipeline(cat, x);
        for (const auto& u : coh_basis(hp2, 3))
            for (const auto& v : coh_basis(hp2, 3))
                EXPECT_EQ(gh_dual_pairing(gh_product(hp2, u, v), loop_class(hp2, x)),
                          gh_dual_pairing(TensorCohClass::of(hp2, {u, v}), cx));
    }
}

// ---------------------------------------------------------------------------
// presentation

TEST(Presentation, Examples)
{
    EXPECT_EQ(presentation_normalize(cp2, w() * a(1)), coh_class(cp2, s(2, 1)));
    EXPECT_EQ(presentation_normalize(cp2, w() * a(1)), gh_product(cp2, s(1, 0), s(1, 1)));
    EXPECT_TRUE(presentation_normalize(cp2, b(0) * b(1)).is_zero());
    EXPECT_EQ(presentation_normalize(cp3, a(1) * b(1) * w()), coh_class(cp3, mu(3, 2)));
    EXPECT_TRUE(presentation_normalize(cp3, a(2) * b(1)).is_zero());
}

TEST(Presentation, OmegaIsNotNilpotent)
{
    PresMonomial m;
    for (int k = 1; k <= 12; ++k) {
        m = m * w();
        EXPECT_EQ(presentation_normalize(hp2, m), coh_class(hp2, s(k, 0)));
    }
}

TEST(Presentation, ConstantMonomialIsRejected)
{
    EXPECT_THROW(presentation_normalize(cp2, PresMonomial{}), std::invalid_argument);
    EXPECT_THROW(presentation_normalize(cp2, a(2)), std::out_of_range);
}

TEST(Presentation, RingMapOnMonomialPairs)
{
    for (const SpaceParams& p : {cp2, cp3}) {
        const auto monos = presentation_monomials(p, 3);
        for (const auto& x : monos)
            for (const auto& y : monos)
                EXPECT_EQ(presentation_normalize(p, x * y),
                          gh_product(presentation_normalize(p, x), presentation_normalize(p, y)))
                    << x.to_string() << " * " << y.to_string();
    }
}

TEST(Presentation, RelationsMapConsistently)
{
    for (const SpaceParams& p : {cp2, cp3, hp2}) {
        const auto rels = presentation_relations(p);
        EXPECT_FALSE(rels.empty());
        for (const auto& rel : rels) {
            const auto lhs = presentation_normalize(p, rel.lhs);
            if (rel.rhs) {
                EXPECT_EQ(lhs, presentation_normalize(p, *rel.rhs)) << rel.lhs.to_string();
            } else {
                EXPECT_TRUE(lhs.is_zero()) << rel.lhs.to_string();
            }
        }
    }
}

TEST(Presentation, ReductionAgreesWithNormalForm)
{
    const auto monos = presentation_monomials(cp3, 4);
    for (const auto& m : monos) {
        const auto reduced = reduce_modulo_relations(cp3, m);
        const auto image = presentation_normalize(cp3, m);
        if (!reduced) {
            EXPECT_TRUE(image.is_zero()) << m.to_string();
            continue;
        }
        EXPECT_LE(reduced->factor_count() - reduced->omega, 1) << m.to_string();
        EXPECT_EQ(presentation_normalize(cp3, *reduced), image) << m.to_string();
    }
}

TEST(Presentation, MonomialEnumerationCount)
{
    // generators omega, a1, b0, b1 for n=2: monomials with 1..2 factors
    EXPECT_EQ(presentation_monomials(cp2, 2).size(), 4u + 10u);
}

TEST(Presentation, SuitePasses)
{
    for (const SpaceParams& p : {cp2, cp3, hp2}) {
        const auto rep = verify_presentation(p, 5, 12);
        EXPECT_TRUE(rep.passed()) << rep.summary();
    }
}

// ---------------------------------------------------------------------------
// Betti numbers

TEST(Betti, Examples)
{
    EXPECT_EQ(betti(cp2, 5), 1);
    EXPECT_EQ(betti(cp2, 2), 0);
    EXPECT_EQ(betti(cp2, 0), 0);
    EXPECT_EQ(betti(cp2, 1), 1);
    EXPECT_EQ(betti(cp2, 6), 1);
}

TEST(Betti, AgreesWithBasisEnumeration)
{
    for (const SpaceParams& p : {cp2, cp3, hp2}) {
        const auto basis = loop_basis(p, 12);
        for (int d = 0; d < p.index(13); ++d) {
            int count = 0;
            for (const auto& x : basis)
                count += degree(p, x) == d ? 1 : 0;
            EXPECT_EQ(betti(p, d), count) << p.label() << " degree " << d;
        }
    }
}

TEST(Betti, TableFlagsTruncation)
{
    const auto t = betti_table(cp2, 12, 2);
    ASSERT_EQ(t.rows.size(), 13u);
    EXPECT_TRUE(t.truncated);
    EXPECT_EQ(t.rows[9].second, 0);  // A_3^0 has degree 9 but sits above the cap
    const auto full = betti_table(cp2, 12, 8);
    EXPECT_FALSE(full.truncated);
    for (const auto& [d, rank] : full.rows)
        EXPECT_EQ(rank, betti(cp2, d));
}
