#include <gtest/gtest.h>

#include <bit>
#include <cstdint>
#include <functional>
#include <random>

#include "setval/builtin.hpp"
#include "setval/reproduce.hpp"
#include "setval/serialize.hpp"

using namespace setval;
using setval::io::json;
using setval::io::ParseError;

namespace {

using FI = FlaggedInterval;

std::string data(const std::string& name) { return std::string(SETVAL_DATA_DIR) + "/" + name; }
std::string fixture(const std::string& name) {
  return std::string(SETVAL_TEST_DATA_DIR) + "/" + name;
}

// Round trip through text, as a file would.
json reparse(const json& j) { return json::parse(io::pretty(j)); }

std::string where_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const ParseError& e) {
    return e.where();
  }
  return "no error";
}

}  // namespace

TEST(Interval, FormatAndParse) {
  EXPECT_EQ(io::format_interval(FI(0, 1, false, true)), "(0, 1]");
  EXPECT_EQ(io::parse_interval("[1/2, 2)"), FI(0.5, 2, true, false));
  EXPECT_EQ(io::parse_interval(" ( -1.25 , 3 ) "), FI::open(-1.25, 3));
  EXPECT_EQ(io::parse_interval("[1, 1]"), FI::point(1));
  EXPECT_THROW(io::parse_interval("(1, 1]"), ParseError);
  EXPECT_THROW(io::parse_interval("[1; 2]"), ParseError);
  EXPECT_THROW(io::parse_interval("[1/0, 2]"), ParseError);
  EXPECT_THROW(io::parse_interval("1, 2"), ParseError);
}

TEST(Interval, BitExactDoubles) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-1e3, 1e3);
  for (int k = 0; k < 2000; ++k) {
    double a = u(rng), b = u(rng);
    if (a > b) std::swap(a, b);
    if (a == b) continue;
    const FI iv(a, b, k % 2 == 0, k % 3 == 0);
    const FI back = io::parse_interval(io::format_interval(iv));
    EXPECT_EQ(std::bit_cast<std::uint64_t>(back.lo()), std::bit_cast<std::uint64_t>(a));
    EXPECT_EQ(std::bit_cast<std::uint64_t>(back.hi()), std::bit_cast<std::uint64_t>(b));
    EXPECT_EQ(back, iv);
  }
}

TEST(Maps, RandomRoundTrip) {
  std::mt19937_64 rng(17);
  for (int k = 0; k < 40; ++k) {
    const std::size_t dim = 1 + k % 2, codim = 1 + (k / 2) % 2;
    const PiecewiseMap t = random_piecewise_map(rng, dim, codim, 4);
    const json j = io::to_json(t);
    const PiecewiseMap back = io::map_from_json(reparse(j));
    EXPECT_EQ(io::to_json(back), j);
    for (const auto& x : Grid(Point(dim, 0), Point(dim, 2), 0.25).points()) {
      EXPECT_EQ(back.evaluate(x), t.evaluate(x));
    }
  }
}

TEST(Maps, GuardsAndMultipleBoundsRoundTrip) {
  // adherence and meet produce guards and several bounds per side
  const AbstractEconomy e = example_4_1_economy(2);
  for (const PiecewiseMap& t :
       {adherence(constraint_preference(e, 0)), t_upper(e.agent(1).a, 0.5, e.agent(1).target),
        selection_product(e).factor(0)}) {
    const json j = io::to_json(t);
    EXPECT_EQ(io::to_json(io::map_from_json(reparse(j))), j);
  }
}

TEST(Documents, ShippedFilesMatchBuiltins) {
  {
    const io::MapDocument d = io::map_document_from_json(io::read_document(data("ex2_1.map")));
    EXPECT_EQ(io::to_json(d.map), io::to_json(example_2_1_map()));
    ASSERT_TRUE(d.target);
    EXPECT_EQ(*d.target, example_2_1_target());
  }
  {
    const io::PairDocument d = io::pair_from_json(io::read_document(data("ex2_2.pair")));
    const MapPair pr = example_2_2_pair();
    EXPECT_EQ(io::to_json(d.t1), io::to_json(pr.t1));
    EXPECT_EQ(io::to_json(d.t2), io::to_json(pr.t2));
    EXPECT_EQ(d.target, pr.target);
  }
  {
    const AbstractEconomy e = io::economy_from_json(io::read_document(data("ex4_1_n2.econ")));
    EXPECT_EQ(io::economy_document(e), io::economy_document(example_4_1_economy(2)));
  }
  {
    const io::InfoEconomyDocument d =
        io::info_economy_from_json(io::read_document(data("radner_toy.econ")));
    EXPECT_EQ(io::info_economy_document(d.economy), io::info_economy_document(radner_toy()));
    EXPECT_EQ(d.price_step, 0.125);
  }
}

TEST(Documents, TypeDetection) {
  EXPECT_EQ(io::document_type(io::read_document(data("ex2_1.map"))), "map");
  EXPECT_EQ(io::document_type(io::read_document(data("ex2_2.pair"))), "pair");
  EXPECT_EQ(io::document_type(io::read_document(data("ex4_1_n2.econ"))), "economy");
  EXPECT_EQ(io::document_type(io::read_document(data("radner_toy.econ"))), "info-economy");
  EXPECT_THROW(io::document_type(json{{"type", "nothing"}}), ParseError);
  EXPECT_THROW(io::map_document_from_json(io::read_document(data("ex2_2.pair"))), ParseError);
}

TEST(Documents, InfoEconomyWithPreferencesAndOverrides) {
  SignalTable signals(SignalTable::Labels{{"a", "a"}, {"a", "b"}},
                      {{Point{0.5, 0.25, 0.25}, SignalTable::Labels{{"a", "b"}, {"a", "b"}}}});
  const double m = 2;
  const PiecewiseMap q = constant_map(BoxSet::of(Box(3, FI::closed(0, m))),
                                      BoxSet::of(Box(3, FI::closed(1.5, 2))));
  const InfoEconomy e(2, 1, {{0.5, 0.25, 0.25}, {0.25, 0.5, 0}}, signals, {q, q}, m);
  const json j = io::info_economy_document(e, 0.25);
  const io::InfoEconomyDocument back = io::info_economy_from_json(reparse(j));
  EXPECT_EQ(io::info_economy_document(back.economy, back.price_step), j);
  EXPECT_EQ(back.economy.signals().labels(0, Point{0.5, 0.25, 0.25}),
            (std::vector<std::string>{"a", "b"}));
}

TEST(Documents, SerializedEconomyReverifies) {
  // Certificates recomputed from a fresh economy built from text agree
  // with the original at every grid point.
  const AbstractEconomy e = example_4_1_economy(2);
  const AbstractEconomy back = io::economy_from_json(reparse(io::economy_document(e)));
  const EquilibriumVerifier v1(e), v2(back);
  for (const auto& x : Grid({0, 0}, {4, 4}, 0.25).points()) {
    EXPECT_EQ(v1.verify(x).valid, v2.verify(x).valid);
  }
}

TEST(Errors, Locations) {
  EXPECT_EQ(where_of([] { io::map_document_from_json(io::read_document(fixture("bad_interval.map"))); }),
            "/map/pieces/1/region/0");
  const std::string syntax = where_of([] { io::read_document(fixture("malformed.map")); });
  EXPECT_EQ(syntax.rfind(fixture("malformed.map") + ":", 0), 0u) << syntax;
  EXPECT_EQ(where_of([] { io::read_document(fixture("missing.map")); }), fixture("missing.map"));
  json doc = io::map_document(example_2_1_map());
  doc["map"]["pieces"][0]["value"][0]["box"] = 3;
  EXPECT_EQ(where_of([&] { io::map_document_from_json(doc); }), "/map/pieces/0/value/0/box");
  doc = io::map_document(example_2_1_map());
  doc["map"]["pieces"][1]["region"] = json::array({"(1, 3)"});
  EXPECT_EQ(where_of([&] { io::map_document_from_json(doc); }), "/map");
  doc = io::economy_document(example_4_1_economy(1));
  doc["agents"][0].erase("P");
  EXPECT_EQ(where_of([&] { io::economy_from_json(doc); }), "/agents/0");
}

TEST(Fixtures, TestDocumentsLoad) {
  const AbstractEconomy free = io::economy_from_json(io::read_document(fixture("empty_preference.econ")));
  EXPECT_EQ(search_equilibria(free, Grid({0, 0}, {1, 1}, 0.5)).size(), 9u);
  const AbstractEconomy none = io::economy_from_json(io::read_document(fixture("impossible.econ")));
  EXPECT_TRUE(search_equilibria(none, Grid({0}, {3}, 0.125)).empty());
  const io::MapDocument sel = io::map_document_from_json(io::read_document(fixture("selection.map")));
  EXPECT_TRUE(sel.region && sel.candidate);
  const AbstractEconomy ns = io::economy_from_json(io::read_document(fixture("no_selection.econ")));
  EXPECT_EQ(check_theorem_4_3_hypotheses(ns, {0.5}, {}, Grid({0}, {1}, 0.25), 0.25, 1e-9).status,
            Status::unverified);
}

TEST(Records, ReportAndCertificates) {
  const CheckReport r = check_usc(example_2_1_map(), Grid({0}, {2}, 1.0 / 64), 1.0 / 64, 1e-9);
  const json jr = io::to_json(r);
  EXPECT_EQ(jr["record"], "report");
  EXPECT_EQ(jr["status"], "fail");
  const EquilibriumCertificate c = verify_equilibrium(example_4_1_economy(2), {1.5, 1.5});
  const json jc = io::to_json(c);
  EXPECT_EQ(jc["record"], "equilibrium");
  EXPECT_EQ(jc["valid"], true);
  EXPECT_EQ(jc["x"], json::array({1.5, 1.5}));
}
