#include <gtest/gtest.h>

#include "idmap/fca.hpp"
#include "test_support.hpp"

using namespace idmap;
namespace ts = testing_support;

namespace {

const std::vector<std::string> kCommon = {"MyLine", "DrawingShapes", "PaintJPanel", "MyShape"};
const std::vector<std::string> kOnlyR1 = {"MyRectangle", "MyOval"};
const std::vector<std::string> kOnlyR2 = {"MyRoundRectangle", "My3DRectangle"};

CodeModel release(const std::string& name, const std::vector<std::string>& extra) {
  CodeModel m;
  m.variant_name = name;
  m.identifiers.insert(package_id("shapes"));
  for (const auto& c : kCommon) m.identifiers.insert(class_id("shapes." + c));
  for (const auto& c : extra) m.identifiers.insert(class_id("shapes." + c));
  refresh_stats(m);
  return m;
}

FormalContext table_one() {
  std::vector<CodeModel> models = {release("Release 1", kOnlyR1),
                                   release("Release 2", kOnlyR2)};
  return build_context(models, MapKind::Classes);
}

IdentifierSet classes(const std::vector<std::string>& names) {
  IdentifierSet out;
  for (const auto& n : names) out.insert(class_id("shapes." + n));
  return out;
}

// The attribute- and object-concepts among all concepts, picked by comparing
// against plain incidence columns and rows.
std::set<std::pair<std::vector<std::size_t>, std::vector<std::size_t>>> selected_from_lattice(
    const FormalContext& ctx) {
  std::set<std::pair<std::vector<std::size_t>, std::vector<std::size_t>>> out;
  for (const auto& c : brute_force_lattice(ctx)) {
    bool keep = false;
    for (std::size_t m = 0; m < ctx.attribute_count() && !keep; ++m) {
      bool same = true;
      for (std::size_t g = 0; g < ctx.object_count(); ++g)
        if (c.extent.test(g) != ctx.incident(g, m)) same = false;
      keep = same;
    }
    for (std::size_t g = 0; g < ctx.object_count() && !keep; ++g) {
      bool same = true;
      for (std::size_t m = 0; m < ctx.attribute_count(); ++m)
        if (c.intent.test(m) != ctx.incident(g, m)) same = false;
      keep = same;
    }
    if (keep) out.insert({indices(c.extent), indices(c.intent)});
  }
  return out;
}

}  // namespace

TEST(FormalContext, TableOneShape) {
  auto ctx = table_one();
  ASSERT_EQ(ctx.object_count(), 2u);
  ASSERT_EQ(ctx.attribute_count(), 8u);
  EXPECT_EQ(ctx.objects(), (std::vector<std::string>{"Release 1", "Release 2"}));
  for (const auto& id : classes(kCommon)) {
    auto m = *ctx.attribute_index(id);
    EXPECT_TRUE(ctx.incident(0, m) && ctx.incident(1, m));
  }
  for (const auto& id : classes(kOnlyR1)) {
    auto m = *ctx.attribute_index(id);
    EXPECT_TRUE(ctx.incident(0, m) && !ctx.incident(1, m));
  }
  for (const auto& id : classes(kOnlyR2)) {
    auto m = *ctx.attribute_index(id);
    EXPECT_TRUE(!ctx.incident(0, m) && ctx.incident(1, m));
  }
}

TEST(FormalContext, IdenticalModelsGiveIdenticalRows) {
  std::vector<CodeModel> models = {release("A", kOnlyR1), release("B", kOnlyR1)};
  auto ctx = build_context(models, MapKind::All);
  EXPECT_EQ(ctx.row(0), ctx.row(1));
}

TEST(FormalContext, DisjointModelsHaveOneCrossPerColumn) {
  std::vector<CodeModel> models(3);
  for (int i = 0; i < 3; ++i) {
    models[i].variant_name = "V" + std::to_string(i);
    models[i].identifiers = {package_id("p" + std::to_string(i)),
                             class_id("p" + std::to_string(i) + ".C")};
  }
  auto ctx = build_context(models, MapKind::All);
  EXPECT_EQ(ctx.attribute_count(), 6u);
  for (std::size_t m = 0; m < ctx.attribute_count(); ++m)
    EXPECT_EQ(ctx.column(m).count(), 1u);
}

TEST(FormalContext, RejectsBadInput) {
  std::vector<CodeModel> one = {release("A", {})};
  EXPECT_THROW(build_context(one, MapKind::Classes), UsageError);
  std::vector<CodeModel> dup = {release("A", {}), release("A", {})};
  EXPECT_THROW(build_context(dup, MapKind::Classes), UsageError);
}

TEST(Derivation, TableOneExamples) {
  auto ctx = table_one();
  auto attrs = ctx.attribute_bits({class_id("shapes.MyLine")});
  EXPECT_EQ(derive_objects(ctx, attrs), ctx.all_objects());
  EXPECT_EQ(derive_attributes(ctx, ctx.no_objects()), ctx.all_attributes());
  EXPECT_EQ(ctx.attribute_set(derive_attributes(ctx, ctx.all_objects())), classes(kCommon));
}

TEST(Derivation, ClosureIsExtensive) {
  ts::Rng rng(7);
  for (int i = 0; i < 300; ++i) {
    auto ctx = ts::random_context(rng, 6, 40);
    Bits attrs(ctx.attribute_count());
    for (std::size_t m = 0; m < attrs.size(); ++m) attrs[m] = ts::coin(rng, 0.3);
    auto closed = derive_attributes(ctx, derive_objects(ctx, attrs));
    EXPECT_TRUE(attrs.is_subset_of(closed));
    Bits objs(ctx.object_count());
    for (std::size_t g = 0; g < objs.size(); ++g) objs[g] = ts::coin(rng, 0.5);
    EXPECT_TRUE(objs.is_subset_of(derive_objects(ctx, derive_attributes(ctx, objs))));
  }
}

TEST(AocPoset, TableOneHasThreeConcepts) {
  auto ctx = table_one();
  auto poset = build_aoc_poset(ctx);
  ASSERT_EQ(poset.concepts.size(), 3u);
  const auto& top = poset.concepts[0];
  EXPECT_EQ(top.extent, ctx.all_objects());
  EXPECT_EQ(poset.identifiers(top.reduced_intent), classes(kCommon));
  EXPECT_EQ(poset.names(poset.concepts[1].reduced_extent),
            std::vector<std::string>{"Release 1"});
  EXPECT_EQ(poset.identifiers(poset.concepts[1].reduced_intent), classes(kOnlyR1));
  EXPECT_EQ(poset.names(poset.concepts[2].reduced_extent),
            std::vector<std::string>{"Release 2"});
  EXPECT_EQ(poset.identifiers(poset.concepts[2].reduced_intent), classes(kOnlyR2));
  std::vector<std::pair<std::size_t, std::size_t>> edges = {{1, 0}, {2, 0}};
  EXPECT_EQ(poset.hasse_edges, edges);
  EXPECT_EQ(poset.top(), 0u);
}

TEST(AocPoset, IdenticalRowsGiveOneConcept) {
  std::vector<CodeModel> models = {release("A", kOnlyR1), release("B", kOnlyR1),
                                   release("C", kOnlyR1)};
  auto poset = build_aoc_poset(build_context(models, MapKind::Classes));
  ASSERT_EQ(poset.concepts.size(), 1u);
  EXPECT_TRUE(poset.concepts[0].reduced_intent.all());
  EXPECT_TRUE(poset.concepts[0].reduced_extent.all());
  EXPECT_TRUE(poset.hasse_edges.empty());
}

TEST(AocPoset, ConceptsAreFormalConcepts) {
  ts::Rng rng(99);
  for (int i = 0; i < 200; ++i) {
    auto ctx = ts::random_context(rng, 6, 40);
    for (const auto& c : build_aoc_poset(ctx).concepts) EXPECT_TRUE(is_formal_concept(ctx, c));
  }
}

TEST(AocPoset, MatchesBruteForceSelection) {
  ts::Rng rng(5);
  for (int i = 0; i < 300; ++i) {
    auto ctx = ts::random_context(rng, 6, 40);
    std::set<std::pair<std::vector<std::size_t>, std::vector<std::size_t>>> got;
    for (const auto& c : build_aoc_poset(ctx).concepts)
      got.insert({indices(c.extent), indices(c.intent)});
    ASSERT_EQ(got, selected_from_lattice(ctx)) << "context #" << i;
  }
}

TEST(AocPoset, HasseEdgesAreCoveringPairs) {
  ts::Rng rng(17);
  for (int i = 0; i < 200; ++i) {
    auto poset = build_aoc_poset(ts::random_context(rng, 6, 20));
    const auto& cs = poset.concepts;
    std::set<std::pair<std::size_t, std::size_t>> edges(poset.hasse_edges.begin(),
                                                        poset.hasse_edges.end());
    for (std::size_t a = 0; a < cs.size(); ++a)
      for (std::size_t b = 0; b < cs.size(); ++b) {
        bool below = cs[a].extent != cs[b].extent && cs[a].extent.is_subset_of(cs[b].extent);
        bool between = false;
        for (std::size_t c = 0; c < cs.size() && below; ++c)
          if (c != a && c != b && cs[a].extent.is_subset_of(cs[c].extent) &&
              cs[c].extent.is_subset_of(cs[b].extent) && cs[c].extent != cs[a].extent &&
              cs[c].extent != cs[b].extent)
            between = true;
        EXPECT_EQ(edges.contains({a, b}), below && !between);
      }
  }
}

TEST(AocPoset, OrderingIsDeterministic) {
  ts::Rng rng(3);
  for (int i = 0; i < 50; ++i) {
    auto ctx = ts::random_context(rng, 6, 30);
    auto a = build_aoc_poset(ctx);
    auto b = build_aoc_poset(ctx);
    ASSERT_EQ(a.concepts.size(), b.concepts.size());
    for (std::size_t k = 0; k < a.concepts.size(); ++k) {
      EXPECT_EQ(a.concepts[k].extent, b.concepts[k].extent);
      EXPECT_EQ(a.concepts[k].reduced_intent, b.concepts[k].reduced_intent);
    }
    for (std::size_t k = 1; k < a.concepts.size(); ++k)
      EXPECT_GE(a.concepts[k - 1].extent.count(), a.concepts[k].extent.count());
  }
}

TEST(BruteForce, TableOneHasFourConcepts) {
  auto lattice = brute_force_lattice(table_one());
  ASSERT_EQ(lattice.size(), 4u);
  EXPECT_TRUE(lattice.back().extent.none());
  EXPECT_TRUE(lattice.back().intent.all());
}

TEST(BruteForce, DegenerateContexts) {
  FormalContext single(MapKind::Classes, {"only"}, {class_id("p.A"), class_id("p.B")},
                       {Bits(2, 3ul)});
  EXPECT_LE(brute_force_lattice(single).size(), 2u);
  FormalContext empty(MapKind::Classes, {"a", "b"}, {}, {Bits(0), Bits(0)});
  EXPECT_EQ(brute_force_lattice(empty).size(), 1u);
  EXPECT_EQ(build_aoc_poset(empty).concepts.size(), 1u);
}

TEST(BruteForce, RefusesLargeContexts) {
  std::vector<std::string> objects;
  for (int i = 0; i < 17; ++i) objects.push_back("V" + std::to_string(i));
  FormalContext big(MapKind::Classes, objects, {}, std::vector<Bits>(17, Bits(0)));
  EXPECT_THROW(brute_force_lattice(big), UsageError);
}
