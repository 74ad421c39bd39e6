#include <gtest/gtest.h>

#include <algorithm>

#include "setval/builtin.hpp"
#include "setval/economy.hpp"

using namespace setval;

namespace {

using FI = FlaggedInterval;

BoxSet line(FI iv) { return BoxSet::of({iv}); }
BoxSet cube(FI iv, std::size_t n) { return BoxSet::of(Box(n, iv)); }

constexpr double kTol = 1e-9;

// One agent on X = [0, 1] with the given maps; D = X.
AbstractEconomy one_agent(PiecewiseMap a, PiecewiseMap b, PiecewiseMap p) {
  return AbstractEconomy({Agent{{FI::closed(0, 1)}, line(FI::closed(0, 1)), std::move(a),
                                std::move(b), std::move(p)}});
}

PiecewiseMap constant_on_unit(BoxSet v) { return constant_map(line(FI::closed(0, 1)), std::move(v)); }

// Two agents, X_i = D_i = [0, 1], P ≡ ∅, A = B ≡ [0, 1].
AbstractEconomy free_economy() {
  const BoxSet x = cube(FI::closed(0, 1), 2);
  std::vector<Agent> agents;
  for (int i = 0; i < 2; ++i) {
    agents.push_back(Agent{{FI::closed(0, 1)}, line(FI::closed(0, 1)),
                           constant_map(x, line(FI::closed(0, 1))),
                           constant_map(x, line(FI::closed(0, 1))), constant_map(x, BoxSet(1))});
  }
  return AbstractEconomy(std::move(agents));
}

}  // namespace

TEST(Verify, ExampleFourOneEquilibrium) {
  const AbstractEconomy e = example_4_1_economy(2);
  const EquilibriumCertificate c = verify_equilibrium(e, {1.5, 1.5});
  EXPECT_TRUE(c.valid);
  for (const auto& a : c.agents) {
    EXPECT_TRUE(a.in_b_adherence);
    EXPECT_TRUE(a.b_piece.has_value());
    EXPECT_TRUE(a.b_adherence.contains(Point{1.5}));
    EXPECT_TRUE(a.a_cap_p.empty());
  }
}

TEST(Verify, ExampleFourOneInnerPointFails) {
  const EquilibriumCertificate c = verify_equilibrium(example_4_1_economy(2), {0.25, 0.25});
  EXPECT_FALSE(c.valid);
  for (const auto& a : c.agents) EXPECT_EQ(a.a_cap_p, line(FI::closed(1.5, 2)));
}

TEST(Verify, OutsideSpaceThrows) {
  EXPECT_THROW(verify_equilibrium(example_4_1_economy(2), {5, 0}), DomainError);
}

TEST(Search, ExampleFourOneMatchesAnalyticSet) {
  // A∩P is nonempty exactly on (0,1)^2 and B̄_i(x) ⊇ [0,2] everywhere, so the
  // equilibria in D are the points of [0,2]^2 outside the open unit square.
  const AbstractEconomy e = example_4_1_economy(2);
  const Grid g({0, 0}, {2, 2}, 0.125);
  const auto found = search_equilibria(e, g);
  std::vector<Point> expect;
  for (const auto& x : g.points()) {
    if (!cube(FI::open(0, 1), 2).contains(x)) expect.push_back(x);
  }
  std::vector<Point> got;
  for (const auto& c : found) got.push_back(c.x);
  EXPECT_EQ(got, expect);
  EXPECT_NE(std::find(got.begin(), got.end(), Point{1.5, 1.5}), got.end());
  // coherence with point verification
  for (const auto& x : g.points()) {
    const bool listed = std::find(got.begin(), got.end(), x) != got.end();
    EXPECT_EQ(verify_equilibrium(e, x).valid, listed);
  }
}

TEST(Search, NoPreferenceEveryPoint) {
  const AbstractEconomy e = free_economy();
  const Grid g({0, 0}, {1, 1}, 0.25);
  EXPECT_EQ(search_equilibria(e, g).size(), g.size());
}

TEST(Search, UnreachableBudgetIsEmpty) {
  // B(x) = [x + 1/2, x + 1] ∩ [0, 3] never contains x
  const BoxSet dom = line(FI::closed(0, 3));
  const auto lo = AffineForm::coordinate(0.5, 1, 0, 1), hi = AffineForm::coordinate(1, 1, 0, 1);
  const PiecewiseMap b(dom, 1, {{{FI::closed(0, 3)}, {AffineBox::interval(lo, hi, true, true)}}});
  const AbstractEconomy e({Agent{{FI::closed(0, 3)}, line(FI::closed(0, 1)), b, b,
                                 constant_map(dom, BoxSet(1))}});
  EXPECT_TRUE(search_equilibria(e, Grid({0}, {3}, 1.0 / 16)).empty());
}

TEST(Economy, Validation) {
  const PiecewiseMap a = constant_on_unit(line(FI::closed(0, 1)));
  EXPECT_THROW(AbstractEconomy({}), std::invalid_argument);
  EXPECT_THROW(AbstractEconomy({Agent{{FI::closed(0, 1)}, line(FI::open(0, 1)), a, a, a}}),
               std::invalid_argument);
  const PiecewiseMap wide = constant_map(line(FI::closed(0, 2)), line(FI::closed(0, 1)));
  EXPECT_THROW(AbstractEconomy({Agent{{FI::closed(0, 1)}, line(FI::closed(0, 1)), wide, a, a}}),
               DomainError);
}

TEST(Theorem41, ExampleFourOnePassesAllConditions) {
  const AbstractEconomy e = example_4_1_economy(2);
  const CheckReport r =
      check_theorem_4_1_hypotheses(e, {4, 2, 0.5}, Grid({0, 0}, {4, 4}, 0.125), 0.125, kTol);
  for (const char* c : {"(1)", "(2)", "(3)", "(4)", "(5)", "(6)"}) {
    EXPECT_EQ(r.status_of(c), Status::pass) << c;
  }
  EXPECT_TRUE(r.passed());
}

TEST(Theorem41, ReflexivePreferenceFailsCondition6) {
  const BoxSet all = line(FI::closed(0, 1));
  const AbstractEconomy e =
      one_agent(constant_on_unit(all), constant_on_unit(all), constant_on_unit(all));
  const CheckReport r = check_theorem_4_1_hypotheses(e, {0.5, 0.25}, Grid({0}, {1}, 0.125), 0.125, kTol);
  EXPECT_EQ(r.status_of("(6)"), Status::fail);
  EXPECT_FALSE(r.witnesses().empty());
}

TEST(Theorem41, NonConvexChoiceFailsCondition2) {
  const BoxSet split = unite(line(FI::closed(0, 0.25)), line(FI::closed(0.75, 1)));
  const AbstractEconomy e = one_agent(constant_on_unit(split), constant_on_unit(line(FI::closed(0, 1))),
                                      constant_on_unit(BoxSet(1)));
  const CheckReport r = check_theorem_4_1_hypotheses(e, {0.5, 0.25}, Grid({0}, {1}, 0.125), 0.125, kTol);
  EXPECT_EQ(r.status_of("(2)"), Status::fail);
}

TEST(Theorem42, ExampleTwoTwoDualCondition) {
  const CheckReport r = check_theorem_4_2_hypotheses(example_2_2_economy(), {2.5, 1, 0.5},
                                                     Grid({0}, {2}, 1.0 / 64), 1.0 / 64, kTol);
  EXPECT_EQ(r.status_of("(4)"), Status::pass);
}

TEST(Theorem42, ExampleFourOnePreferenceExceedsTarget) {
  const AbstractEconomy e = example_4_1_economy(2);
  const CheckReport r =
      check_theorem_4_2_hypotheses(e, {4, 2, 0.5}, Grid({0, 0}, {4, 4}, 0.125), 0.125, kTol);
  EXPECT_EQ(r.status_of("(2)"), Status::fail);
  const Verdict* v = r.find("(2) P_1 ⊆ D_1");
  ASSERT_NE(v, nullptr);
  ASSERT_FALSE(v->witnesses.empty());
  // Oracle: the upper endpoint 2 + x_1 of P_1 on [0,1)^2 exceeds 2 iff x_1 > 0.
  for (const auto& w : v->witnesses) {
    const Point& x = w.point;
    const bool on_half_open = x[0] < 1 && x[1] < 1;
    EXPECT_TRUE(on_half_open && x[0] > 0) << x[0] << "," << x[1];
  }
}

TEST(Theorem43, ExampleFourOneWithConstantSelection) {
  const AbstractEconomy e = example_4_1_economy(2);
  const PiecewiseMap cand = constant_map(e.space(), line(FI::closed(1.5, 2)));
  const Grid g({0, 0}, {4, 4}, 1.0 / 16);
  const CheckReport r = check_theorem_4_3_hypotheses(e, {0.5, 0.25}, {cand, cand}, g, g.step(), kTol);
  EXPECT_EQ(r.status_of("(4)"), Status::pass);
  const CheckReport h = check_theorem_4_3_hypotheses(e, {0.5, 0.25}, {}, g, g.step(), kTol);
  EXPECT_EQ(h.status_of("(4)"), Status::pass);
}

TEST(Theorem43, HeuristicFailureIsUnverified) {
  // P(x) = {x} on (0, 1): every proposal meets the diagonal.
  const auto id = AffineForm::coordinate(0, 1, 0, 1);
  const PiecewiseMap p = from_cases(line(FI::closed(0, 1)), 1,
                                    {{line(FI::open(0, 1)), {AffineBox::interval(id, id, true, true)}}},
                                    PieceValue{});
  const BoxSet all = line(FI::closed(0, 1));
  const AbstractEconomy e = one_agent(constant_on_unit(all), constant_on_unit(all), p);
  const CheckReport r =
      check_theorem_4_3_hypotheses(e, {0.5}, {}, Grid({0}, {1}, 0.25), 0.25, kTol);
  EXPECT_EQ(r.status_of("(1)"), Status::pass);
  EXPECT_EQ(r.status_of("(2)"), Status::pass);
  EXPECT_EQ(r.status_of("(3)"), Status::pass);
  EXPECT_EQ(r.status_of("(4)"), Status::unverified);
  EXPECT_EQ(r.status, Status::unverified);
}

TEST(Theorem43, EmptyBudgetAtZeroFailsCondition2) {
  const PiecewiseMap b = from_cases(line(FI::closed(0, 1)), 1, {{line(FI::point(0)), {}}},
                                    PieceValue{AffineBox::constant({FI::closed(0, 1)}, 1)});
  const AbstractEconomy e = one_agent(b, b, constant_on_unit(BoxSet(1)));
  const CheckReport r =
      check_theorem_4_3_hypotheses(e, {0.5}, {}, Grid({0}, {1}, 0.125), 0.125, kTol);
  EXPECT_EQ(r.status_of("(2)"), Status::fail);
}

TEST(Openness, ExampleFourOneWIsOpenUnitSquare) {
  const AbstractEconomy e = example_4_1_economy(2);
  const OpennessResult o = w_openness(e, 0, Grid({0, 0}, {4, 4}, 0.125), 0.125);
  ASSERT_TRUE(o.w);
  EXPECT_EQ(*o.w, cube(FI::open(0, 1), 2));
  EXPECT_TRUE(o.open);
}

TEST(Openness, ClosedWIsNotOpen) {
  const BoxSet all = line(FI::closed(0, 1));
  const PiecewiseMap p = from_cases(all, 1, {{line(FI::closed(0, 0.5)), {AffineBox::constant({FI::point(1)}, 1)}}},
                                    PieceValue{});
  const AbstractEconomy e = one_agent(constant_on_unit(all), constant_on_unit(all), p);
  EXPECT_FALSE(w_openness(e, 0, Grid({0}, {1}, 0.125), 0.125).open);
}

TEST(RemarkFourOne, ClosedGraphBudgetAdherenceIsClosure) {
  // B(x) = [0, x] on [0, 1] has a closed graph; with A = B the equilibrium
  // clause x ∈ B̄(x) reads x ∈ cl B(x).
  const auto zero = AffineForm::constant_form(0, 1), id = AffineForm::coordinate(0, 1, 0, 1);
  const PiecewiseMap b(line(FI::closed(0, 1)), 1,
                       {{{FI::closed(0, 1)}, {AffineBox::interval(zero, id, true, true)}}});
  const PiecewiseMap adh = adherence(b), cl = closure_values(b);
  for (const auto& x : Grid({0}, {1}, 1.0 / 32).points()) EXPECT_EQ(adh.evaluate(x), cl.evaluate(x));
  const AbstractEconomy e = one_agent(b, b, constant_on_unit(BoxSet(1)));
  for (const auto& x : Grid({0}, {1}, 1.0 / 32).points()) {
    EXPECT_EQ(verify_equilibrium(e, x).valid, cl.evaluate(x).contains(x));
  }
}

TEST(SelectionProduct, ExampleFourOne) {
  const ProductMap s = selection_product(example_4_1_economy(2));
  // A∩P on W_1 = (0,1)^2, B_1 elsewhere
  EXPECT_EQ(s.factor(0).evaluate(Point{0.25, 0.25}), line(FI::closed(1.5, 2)));
  EXPECT_EQ(s.factor(0).evaluate(Point{1.5, 1.5}), line({0, 2, true, false}));
}
