#include <gtest/gtest.h>

#include <algorithm>
#include <set>
#include <string>

#include "fixtures.hpp"
#include "generators.hpp"
#include "ofd/error.hpp"
#include "ofd/lattice.hpp"
#include "oracles.hpp"

using namespace ofd;

namespace {

using Listing = std::vector<std::string>;

Listing names(const Relation& r, const std::vector<Ofd>& ofds) {
    Listing out;
    for (const auto& d : ofds) {
        std::string s;
        for (AttrIndex a : d.lhs) s += (s.empty() ? "" : ",") + r.schema()[a];
        out.push_back(s + "->" + r.schema()[d.rhs]);
    }
    return out;
}

DiscoveryConfig config(OfdKind kind, double tau = 1.0) {
    DiscoveryConfig cfg;
    cfg.kind = kind;
    cfg.tau = tau;
    cfg.threads = 1;
    return cfg;
}

LatticeLevel level_of(std::initializer_list<AttrSet> sets) {
    std::vector<LatticeNode> nodes;
    for (AttrSet s : sets) {
        LatticeNode n;
        n.attrs = s;
        nodes.push_back(std::move(n));
    }
    return LatticeLevel(std::move(nodes));
}

std::vector<AttrSet> attrs_of(const LatticeLevel& level) {
    std::vector<AttrSet> out;
    for (const auto& n : level.nodes()) out.push_back(n.attrs);
    std::sort(out.begin(), out.end(), AttrSet::lex_less);
    return out;
}

}  // namespace

TEST(Lattice, ClinicalSynonyms) {
    auto r = ofd::testing::clinical();
    auto result = discover(r, ofd::testing::clinical_ontology(), config(OfdKind::synonym()));
    EXPECT_EQ(names(r, result.ofds),
              (Listing{"CC->CTRY", "CTRY->CC", "SYMP->DIAG", "DIAG->SYMP", "MED->CC", "MED->CTRY", "MED->SYMP",
                       "MED->DIAG", "CTRY,SYMP->MED", "CTRY,DIAG->MED"}));
    for (const auto& d : result.ofds) EXPECT_DOUBLE_EQ(*d.support, 1.0);
}

TEST(Lattice, ClinicalInheritanceTwo) {
    auto r = ofd::testing::clinical();
    auto result = discover(r, ofd::testing::clinical_ontology(), config(OfdKind::inheritance(2)));
    // SYMP and DIAG induce the same partition here, so SYMP alone already
    // reaches MED and {SYMP, DIAG} -> MED is not minimal.
    EXPECT_EQ(names(r, result.ofds),
              (Listing{"CC->CTRY", "CC->MED", "CTRY->CC", "CTRY->MED", "SYMP->DIAG", "SYMP->MED", "DIAG->SYMP",
                       "DIAG->MED", "MED->CC", "MED->CTRY", "MED->SYMP", "MED->DIAG"}));
}

TEST(Lattice, ExtendedClinicalInheritanceTwo) {
    auto r = ofd::testing::clinical_extended();
    auto result = discover(r, ofd::testing::clinical_ontology(), config(OfdKind::inheritance(2)));
    auto listing = names(r, result.ofds);
    EXPECT_NE(std::find(listing.begin(), listing.end(), "SYMP,DIAG->MED"), listing.end());
    EXPECT_EQ(std::find(listing.begin(), listing.end(), "SYMP->MED"), listing.end());
    EXPECT_EQ(std::find(listing.begin(), listing.end(), "DIAG->MED"), listing.end());
    EXPECT_EQ(listing, (Listing{"CC->CTRY", "CTRY->CC", "MED->DIAG", "CC,DIAG->SYMP", "CC,DIAG->MED", "CC,MED->SYMP",
                                "CTRY,DIAG->SYMP", "CTRY,DIAG->MED", "CTRY,MED->SYMP", "SYMP,DIAG->MED",
                                "SYMP,MED->CC", "SYMP,MED->CTRY"}));

    auto theta1 = names(r, discover(r, ofd::testing::clinical_ontology(), config(OfdKind::inheritance(1))).ofds);
    EXPECT_EQ(std::find(theta1.begin(), theta1.end(), "SYMP,DIAG->MED"), theta1.end());
}

TEST(Lattice, SingleAttributeRelationHasNoDependencies) {
    auto r = parse_relation("A\n1\n1\n2\n");
    auto result = discover(r, Ontology{}, config(OfdKind::synonym()));
    EXPECT_TRUE(result.ofds.empty());
    EXPECT_TRUE(result.per_level.empty());
}

TEST(Lattice, EmptyRelation) {
    auto r = parse_relation("A,B,C\n");
    auto result = discover(r, Ontology{}, config(OfdKind::synonym()));
    EXPECT_EQ(names(r, result.ofds), (Listing{"A->B", "A->C", "B->A", "B->C", "C->A", "C->B"}));
}

TEST(Lattice, RejectsInvalidTau) {
    auto r = ofd::testing::clinical();
    EXPECT_THROW(discover(r, Ontology{}, config(OfdKind::synonym(), 0.0)), ConfigError);
    EXPECT_THROW(discover(r, Ontology{}, config(OfdKind::synonym(), 1.5)), ConfigError);
}

TEST(Lattice, NextLevelJoinsSharedPrefixes) {
    AttrSet a{0}, b{1}, c{2}, d{3};
    EXPECT_EQ(attrs_of(calculate_next_level(level_of({a, b, c}))), (std::vector<AttrSet>{a | b, a | c, b | c}));
    EXPECT_EQ(attrs_of(calculate_next_level(level_of({a | b, a | c, b | c}))), (std::vector<AttrSet>{a | b | c}));
    EXPECT_TRUE(calculate_next_level(level_of({a | b, c | d})).empty());
    // {0,1,2} needs {1,2}.
    EXPECT_TRUE(calculate_next_level(level_of({a | b, a | c})).empty());
}

TEST(Lattice, CandidateSetsPruneNonMinimalCandidates) {
    auto r = ofd::testing::clinical();
    auto o = ofd::testing::clinical_ontology();
    Verifier v(r, o);
    auto cfg = config(OfdKind::synonym());
    auto level1 = initial_level(r, cfg);
    auto level2 = calculate_next_level(level1);
    auto out2 = compute_ofds(level2, level1, v, cfg);
    const AttrIndex cc = r.attribute("CC"), ctry = r.attribute("CTRY"), med = r.attribute("MED");
    const auto* node = level2.find(AttrSet{cc, ctry});
    ASSERT_NE(node, nullptr);
    EXPECT_FALSE(node->candidates.contains(ctry));
    EXPECT_FALSE(node->candidates.contains(cc));
    EXPECT_TRUE(std::any_of(out2.ofds.begin(), out2.ofds.end(),
                            [&](const Ofd& d) { return d.lhs == AttrSet{cc} && d.rhs == ctry; }));

    auto level3 = calculate_next_level(level2);
    compute_ofds(level3, level2, v, cfg);
    const auto* triple = level3.find(AttrSet{cc, ctry, med});
    ASSERT_NE(triple, nullptr);
    // MED determines CC, so no antecedent containing MED is tried for CC.
    auto plan = apply_optimizations(*triple, level2, cfg);
    for (const auto& c : plan) EXPECT_NE(c.rhs, cc);
}

TEST(Lattice, SuperkeyCandidatesHoldWithoutVerification) {
    auto r = ofd::testing::clinical();
    auto cfg = config(OfdKind::synonym());
    auto level1 = initial_level(r, cfg);
    auto level2 = calculate_next_level(level1);
    const AttrIndex med = r.attribute("MED"), cc = r.attribute("CC");
    const auto* node = level2.find(AttrSet{cc, med});
    ASSERT_NE(node, nullptr);
    LatticeNode copy{node->attrs, node->partition, r.all_attributes(), node->superkey};
    auto plan = apply_optimizations(copy, level1, cfg);
    bool saw = false;
    for (const auto& c : plan) {
        if (c.rhs == cc) {
            saw = true;
            EXPECT_EQ(c.action, CandidateAction::holds_by_key);
        }
    }
    EXPECT_TRUE(saw);
    cfg.optimizations.opt3 = false;
    for (const auto& c : apply_optimizations(copy, level1, cfg)) EXPECT_EQ(c.action, CandidateAction::verify);
}

TEST(Lattice, KeysFound) {
    auto r = ofd::testing::clinical();
    auto result = discover(r, ofd::testing::clinical_ontology(), config(OfdKind::synonym()));
    std::set<std::uint64_t> keys;
    for (AttrSet k : result.keys_found) keys.insert(k.mask());
    EXPECT_TRUE(keys.contains(AttrSet{r.attribute("MED")}.mask()));
    EXPECT_TRUE(keys.contains(r.attributes({"CTRY", "SYMP"}).mask()));
    EXPECT_FALSE(keys.contains(r.attributes({"CC", "MED"}).mask()));
}

TEST(Lattice, PerLevelStatistics) {
    auto r = ofd::testing::clinical();
    auto result = discover(r, ofd::testing::clinical_ontology(), config(OfdKind::synonym()));
    ASSERT_FALSE(result.per_level.empty());
    std::size_t total = 0;
    for (std::size_t i = 0; i < result.per_level.size(); ++i) {
        EXPECT_EQ(result.per_level[i].level, i + 1);
        EXPECT_GE(result.per_level[i].elapsed_seconds, 0.0);
        total += result.per_level[i].ofds;
    }
    EXPECT_EQ(total, result.ofds.size());
    EXPECT_EQ(result.per_level[0].candidates, 20u);
    EXPECT_EQ(result.per_level[0].ofds, 8u);
}

TEST(Lattice, MaxLevelTruncatesCleanly) {
    for (std::uint64_t seed = 0; seed < 60; ++seed) {
        auto inst = ofd::testing::random_instance(seed);
        auto full = discover(inst.relation, inst.ontology, config(OfdKind::inheritance(1)));
        for (std::size_t k = 1; k <= 4; ++k) {
            auto cfg = config(OfdKind::inheritance(1));
            cfg.max_level = k;
            auto capped = discover(inst.relation, inst.ontology, cfg);
            ASSERT_LE(capped.per_level.size(), k);
            for (std::size_t i = 0; i < capped.per_level.size(); ++i) {
                EXPECT_EQ(capped.per_level[i].candidates, full.per_level[i].candidates);
                EXPECT_EQ(capped.per_level[i].ofds, full.per_level[i].ofds);
            }
            std::vector<Ofd> expected;
            for (const auto& d : full.ofds)
                if (d.lhs.size() <= k) expected.push_back(d);
            EXPECT_EQ(capped.ofds, expected) << "seed " << seed << " k " << k;
        }
    }
}

TEST(Lattice, MatchesOracleOnRandomInstances) {
    for (std::uint64_t seed = 0; seed < 120; ++seed) {
        auto inst = ofd::testing::random_instance(seed);
        for (OfdKind kind : {OfdKind::synonym(), OfdKind::inheritance(0), OfdKind::inheritance(1),
                             OfdKind::inheritance(2)}) {
            auto expected = ofd::testing::oracle::discover(inst.relation, inst.ontology, kind);
            auto got = discover(inst.relation, inst.ontology, config(kind)).ofds;
            ASSERT_EQ(names(inst.relation, got), names(inst.relation, expected))
                << "seed " << seed << " kind " << kind.name() << " " << kind.theta;
        }
    }
}

TEST(Lattice, ApproximateMatchesOracle) {
    for (std::uint64_t seed = 0; seed < 120; ++seed) {
        auto inst = ofd::testing::random_instance(seed);
        for (double tau : {0.6, 0.8, 0.9}) {
            for (OfdKind kind : {OfdKind::synonym(), OfdKind::inheritance(2)}) {
                auto expected = ofd::testing::oracle::discover(inst.relation, inst.ontology, kind, tau);
                auto got = discover(inst.relation, inst.ontology, config(kind, tau)).ofds;
                ASSERT_EQ(names(inst.relation, got), names(inst.relation, expected))
                    << "seed " << seed << " tau " << tau;
                for (std::size_t i = 0; i < got.size(); ++i) {
                    EXPECT_NEAR(*got[i].support, *expected[i].support, 1e-12);
                    EXPECT_GE(*got[i].support, tau - 1e-9);
                }
            }
        }
    }
}

TEST(Lattice, OptimizationsDoNotChangeResults) {
    for (std::uint64_t seed = 0; seed < 60; ++seed) {
        auto inst = ofd::testing::random_instance(seed);
        for (double tau : {1.0, 0.8}) {
            auto reference = discover(inst.relation, inst.ontology, config(OfdKind::inheritance(1), tau)).ofds;
            for (const auto& opts : Optimizations::all_combinations()) {
                auto cfg = config(OfdKind::inheritance(1), tau);
                cfg.optimizations = opts;
                ASSERT_EQ(discover(inst.relation, inst.ontology, cfg).ofds, reference) << "seed " << seed;
            }
        }
    }
}

TEST(Lattice, SupportCountingAgreesWithExactCheck) {
    for (std::uint64_t seed = 0; seed < 60; ++seed) {
        auto inst = ofd::testing::random_instance(seed);
        auto cfg = config(OfdKind::synonym());
        auto exact = discover(inst.relation, inst.ontology, cfg).ofds;
        cfg.force_support_counting = true;
        EXPECT_EQ(discover(inst.relation, inst.ontology, cfg).ofds, exact) << "seed " << seed;
    }
}

TEST(Lattice, ThreadCountDoesNotChangeResults) {
    for (std::uint64_t seed = 0; seed < 40; ++seed) {
        auto inst = ofd::testing::random_instance(seed);
        auto cfg = config(OfdKind::inheritance(2), 0.85);
        auto serial = discover(inst.relation, inst.ontology, cfg).ofds;
        cfg.threads = 4;
        auto parallel = discover(inst.relation, inst.ontology, cfg).ofds;
        ASSERT_EQ(parallel, serial);
        for (std::size_t i = 0; i < serial.size(); ++i) EXPECT_EQ(*parallel[i].support, *serial[i].support);
    }
}

TEST(Lattice, OutputIsNonTrivialAndAntichainPerRhs) {
    for (std::uint64_t seed = 0; seed < 80; ++seed) {
        auto inst = ofd::testing::random_instance(seed);
        auto ofds = discover(inst.relation, inst.ontology, config(OfdKind::synonym(), 0.9)).ofds;
        for (const auto& d : ofds) {
            EXPECT_FALSE(d.lhs.contains(d.rhs));
            for (const auto& e : ofds)
                if (e.rhs == d.rhs) EXPECT_FALSE(e.lhs.is_proper_subset_of(d.lhs));
        }
        EXPECT_TRUE(std::is_sorted(ofds.begin(), ofds.end(), ofd_less));
    }
}
