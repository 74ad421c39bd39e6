// One line per acceptance criterion, nonzero exit when any is red.
#include <chrono>
#include <cstdio>
#include <string>
#include <vector>

#include "setval/reproduce.hpp"

using namespace setval;

namespace {

int failures = 0;

void line(const std::string& name, bool ok, const std::string& detail) {
  std::printf("[%s] %s  (%s)\n", ok ? "PASS" : "FAIL", name.c_str(), detail.c_str());
  if (!ok) ++failures;
}

std::string first_failure(const GoldenSection& s) {
  for (const auto& c : s.checks) {
    if (!c.passed) return "failed: " + c.name + (c.detail.empty() ? "" : " -- " + c.detail);
  }
  return std::to_string(s.checks.size()) + " checks";
}

std::string timed(const GoldenSection& s) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f s, ", s.seconds);
  return buf + first_failure(s);
}

}  // namespace

int main() {
  const ReproduceOptions o;
  const auto start = std::chrono::steady_clock::now();
  const std::vector<GoldenSection> all = reproduce_all(o);
  const double total =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  const GoldenSection& ex21 = all[0];
  const GoldenSection& ex22 = all[1];
  const GoldenSection& ex41 = all[2];
  const GoldenSection& lemma22 = all[3];
  const GoldenSection& lemma21 = all[4];
  const GoldenSection& scheme = all[5];
  const GoldenSection& radner = all[6];

  line("example 2.1 golden, eps in {0.1, 0.5, 1}, step 1/64, under 1 s",
       ex21.passed() && ex21.seconds < 1.0, timed(ex21));
  line("example 2.2 golden, eps in {0.5, 2.5}", ex22.passed(), timed(ex22));
  line("example 4.1 golden (n = 2), eps in {1/2, 2, 4}, step 1/8, under 10 s",
       ex41.passed() && ex41.seconds < 10.0, timed(ex41));
  line("lemma 2.2 suite, 3 built-ins exact + 50 random maps, chain {1, 1/2, 1/4, 1/8}",
       lemma22.passed(), timed(lemma22));
  line("lemma 2.1 suite, 20 random usc maps", lemma21.passed(), timed(lemma21));
  line("fixed-point scheme, certified points and Q_V nesting", scheme.passed(), timed(scheme));
  line("radner pipeline, inclusion sweep at step 1/8 and clause (1) for every certificate",
       radner.passed(), timed(radner));

  bool every = true;
  for (const auto& s : all) every = every && s.passed();
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.2f s over %zu sections", total, all.size());
  line("reproduce-paper end to end, every section passes, under 60 s", every && total < 60.0,
       buf);

  return failures == 0 ? 0 : 1;
}
