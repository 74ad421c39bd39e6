#include "setval/builtin.hpp"

namespace setval {

namespace {

using FI = FlaggedInterval;

BoxSet line(FI iv) { return BoxSet::of({iv}); }

PieceValue constant_value(FI iv, std::size_t xdim) { return {AffineBox::constant({iv}, xdim)}; }

BoxSet cube(FI iv, std::size_t n) { return BoxSet::of(Box(n, iv)); }

}  // namespace

PiecewiseMap example_2_1_map() {
  return from_cases(line(FI::open(0, 2)), 1,
                    {{line({0, 1, false, true}), constant_value(FI::open(0, 1), 1)},
                     {line(FI::open(1, 2)), constant_value({1, 2, true, false}, 1)}},
                    std::nullopt);
}

BoxSet example_2_1_target() { return line(FI::point(1)); }

MapPair example_2_2_pair() {
  BoxSet dom = line(FI::open(0, 2));
  auto two_minus_x = AffineBox::interval(AffineForm::coordinate(2, -1, 0, 1),
                                         AffineForm::constant_form(2, 1), true, true);
  PiecewiseMap t1 = from_cases(dom, 1,
                               {{line(FI::open(0, 1)), {two_minus_x}},
                                {line(FI::point(1)), constant_value(FI::point(4), 1)},
                                {line(FI::open(1, 2)), constant_value(FI::closed(1, 2), 1)}},
                               std::nullopt);
  PiecewiseMap t2 = from_cases(dom, 1,
                               {{line({0, 1, false, true}), constant_value(FI::closed(2, 3), 1)},
                                {line(FI::open(1, 2)), constant_value(FI::point(2), 1)}},
                               std::nullopt);
  return {t1, t2, line(FI::closed(1, 2))};
}

AbstractEconomy example_2_2_economy() {
  MapPair pr = example_2_2_pair();
  PiecewiseMap b = constant_map(pr.t1.domain(), line(FI::closed(1, 2)));
  return AbstractEconomy({Agent{{FI::open(0, 2)}, pr.target, pr.t1, b, pr.t2}});
}

AbstractEconomy example_4_1_economy(std::size_t n) {
  if (n == 0) throw std::invalid_argument("example economy needs at least one agent");
  const BoxSet x = cube(FI::closed(0, 4), n);
  const BoxSet inner = cube(FI::open(0, 0.5), n);
  const BoxSet unit = cube(FI::open(0, 1), n);
  const BoxSet origin = cube(FI::point(0), n);
  const BoxSet half_open = cube({0, 1, true, false}, n);
  std::vector<Agent> agents;
  for (std::size_t i = 0; i < n; ++i) {
    auto one_minus = AffineForm::coordinate(1, -1, i, n);
    auto two = AffineForm::constant_form(2, n);
    PiecewiseMap a = from_cases(
        x, 1,
        {{inner, {AffineBox::interval(one_minus, two, true, true)}},
         {difference(unit, inner), {AffineBox::interval(one_minus, two, true, false)}},
         {origin, constant_value(FI::closed(3, 4), n)}},
        constant_value(FI::closed(0, 0.5), n));
    PiecewiseMap p = from_cases(
        x, 1,
        {{half_open, {AffineBox::interval(AffineForm::constant_form(1.5, n),
                                          AffineForm::coordinate(2, 1, i, n), true, true)}}},
        constant_value(FI::closed(1, 2), n));
    PiecewiseMap b = from_cases(x, 1,
                                {{unit, constant_value(FI::closed(0, 2), n)},
                                 {origin, constant_value(FI::closed(3, 4), n)}},
                                constant_value({0, 2, true, false}, n));
    agents.push_back(Agent{{FI::closed(0, 4)}, line(FI::closed(0, 2)), a, b, p});
  }
  return AbstractEconomy(std::move(agents));
}

InfoEconomy radner_toy() {
  SignalTable signals(SignalTable::Labels{{"pooled", "pooled"}, {"s1", "s2"}});
  return InfoEconomy(2, 1, {{0.25, 0.25, 0.25}, {0.25, 0.5, 0.0}}, std::move(signals));
}

}  // namespace setval
