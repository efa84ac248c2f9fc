#include <gtest/gtest.h>

#include <filesystem>

#include "frobrel/frl.hpp"
#include "frobrel/search.hpp"

using namespace frobrel;
namespace fs = std::filesystem;

namespace {

std::vector<fs::path> data_files() {
  std::vector<fs::path> out;
  for (const auto& e : fs::directory_iterator(FROBREL_DATA_DIR))
    if (e.path().extension() == ".frl") out.push_back(e.path());
  std::sort(out.begin(), out.end());
  return out;
}

template <class T>
const T& get(const frl::Document& d, const std::string& name) {
  return std::get<T>(d.select(name).value);
}

std::size_t error_line(const std::string& text) {
  try {
    frl::parse(text);
  } catch (const SyntaxError& e) {
    return e.line();
  }
  return 0;
}

}  // namespace

TEST(Frl, EveryDataFileRoundtrips) {
  auto files = data_files();
  ASSERT_GE(files.size(), 7u);
  for (const auto& p : files) {
    auto doc = frl::load(p.string());
    auto text = frl::to_string(doc);
    auto again = frl::parse(text);
    ASSERT_EQ(again.entries().size(), doc.entries().size()) << p;
    for (std::size_t i = 0; i < doc.entries().size(); ++i) {
      EXPECT_EQ(again.entries()[i].name, doc.entries()[i].name) << p;
      EXPECT_TRUE(again.entries()[i].value == doc.entries()[i].value) << p << " " << doc.entries()[i].name;
      EXPECT_EQ(again.entries()[i].tags, doc.entries()[i].tags) << p;
    }
    EXPECT_EQ(frl::to_string(again), text) << p;
  }
}

TEST(Frl, DataFilesHoldTheExpectedStructures) {
  auto dir = std::string(FROBREL_DATA_DIR) + "/";
  auto z2 = frl::load(dir + "z2.frl");
  EXPECT_TRUE(check_frob2(get<Frob2>(z2, "Z2_group")).all());
  const auto& z2g = get<Frob2>(z2, "Z2_group");
  for (std::size_t r = 0; r < 4; ++r) EXPECT_EQ(z2g.mult.image(r), examples::cyclic_group(2).mult.image(r));
  auto t3 = frl::load(dir + "t3.frl");
  const auto& t = get<Frob3>(t3, "T3");
  for (std::size_t r = 0; r < t.lambda.rows(); ++r) EXPECT_EQ(t.lambda.image(r), examples::cyclic_heap(3).lambda.image(r));
  auto z4 = frl::load(dir + "z4_groupoid.frl");
  EXPECT_TRUE(check_groupoid(get<Groupoid>(z4, "Z4")).all());
  auto conns = frl::load(dir + "z2_connectors.frl");
  EXPECT_TRUE(check_connector(get<Connector>(conns, "trivial")).all());
  EXPECT_TRUE(check_connector(get<Connector>(conns, "xor")).all());
  auto rels = frl::load(dir + "relations.frl");
  const auto& diag = get<FinRel>(rels, "diag");
  EXPECT_EQ(diag.src().arity(), 2u);
  EXPECT_EQ(diag.count(), 3u);
}

TEST(Frl, PrintedStructuresReload) {
  frl::Document doc;
  doc.add("T", examples::tproj(2));
  doc.add("sym3", examples::s3());
  doc.add("C", examples::discrete_connector(2));
  doc.add("G", frob2_to_groupoid(groupoid_to_frob2(examples::indiscrete_groupoid(2))));
  auto back = frl::parse(frl::to_string(doc));
  EXPECT_EQ(get<Frob3>(back, "T"), examples::tproj(2));
  EXPECT_EQ(get<Frob2>(back, "sym3"), examples::s3());
  EXPECT_EQ(get<Connector>(back, "C"), examples::discrete_connector(2));
  EXPECT_EQ(get<Groupoid>(back, "G"), get<Groupoid>(doc, "G"));
}

TEST(Frl, SyntaxErrorsCarryPositions) {
  EXPECT_EQ(error_line("object A 2\nfrob2 F {\n  carrier A\n  mult { (0,0) => 0 }\n}\n"), 4u);
  EXPECT_EQ(error_line("object A 2\nrel r : A -> A {\n  (0,0\n}\n"), 4u);
  EXPECT_EQ(error_line("banana A 2\n"), 1u);
  try {
    frl::parse("object A 2\n\n   rel r : A -> A { (0 0) }");
    FAIL();
  } catch (const SyntaxError& e) {
    EXPECT_EQ(e.line(), 3u);
    EXPECT_GT(e.column(), 1u);
  }
}

TEST(Frl, SemanticErrors) {
  EXPECT_THROW(frl::parse("object A 2\nobject A 3\n"), Error);
  EXPECT_THROW(frl::parse("object A 2\nrel r : A -> A { (0,5) }\n"), Error);
  EXPECT_THROW(frl::parse("rel r : B -> B { }\n"), Error);
  EXPECT_THROW(frl::load("/nonexistent/file.frl"), InputError);
}

TEST(Frl, Select) {
  auto doc = frl::parse("object A 2\nrel r : A -> A { (0,1) }\nrel s : A -> A { }\n");
  EXPECT_THROW(doc.select(), InputError);
  EXPECT_EQ(get<FinRel>(doc, "r").count(), 1u);
  EXPECT_THROW(doc.select("missing"), InputError);
  auto one = frl::parse("object A 2\nrel r : A -> A { (0,1) }\n");
  EXPECT_EQ(one.select().name, "r");
  EXPECT_THROW(frl::parse("object A 2\n").select(), InputError);
}
