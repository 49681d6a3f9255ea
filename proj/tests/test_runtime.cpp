#include <gtest/gtest.h>

#include <fstream>
#include <sstream>
#include <stdexcept>

#include "bctx/errors.hpp"
#include "bctx/judgment.hpp"
#include "bctx/parallel.hpp"
#include "bctx/report.hpp"

using namespace bctx;

namespace {

std::string slurp(const std::string& rel) {
  std::ifstream in(std::string(FIXTURE_DIR) + "/" + rel);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

CaseResult fails_on_multiples(std::size_t i, std::size_t k) {
  if (i >= k && i % k == 0) return Bindings{{"i", std::to_string(i)}};
  return std::nullopt;
}

}  // namespace

TEST(RunCases, ParallelMatchesSerial) {
  for (std::size_t k : {7u, 97u, 1000u, 5000u})
    for (int jobs : {2, 3, 8}) {
      auto f = [k](std::size_t i) { return fails_on_multiples(i, k); };
      CaseOutcome s = run_cases_serial(4000, f);
      CaseOutcome p = run_cases(4000, jobs, f);
      EXPECT_EQ(s.cases, p.cases);
      EXPECT_EQ(s.counterexample, p.counterexample);
    }
  CaseOutcome all = run_cases(100, 4, [](std::size_t) -> CaseResult { return std::nullopt; });
  EXPECT_EQ(all.cases, 100u);
  EXPECT_FALSE(all.counterexample);
}

TEST(RunCases, ReportsFirstFailure) {
  CaseOutcome o = run_cases(1000, 4, [](std::size_t i) { return fails_on_multiples(i, 7); });
  EXPECT_EQ(o.cases, 8u);
  ASSERT_TRUE(o.counterexample);
  EXPECT_EQ((*o.counterexample)[0].second, "7");
}

TEST(RunCases, ExceptionsBecomeCounterexamples) {
  CaseOutcome o = run_cases(10, 2, [](std::size_t i) -> CaseResult {
    if (i == 3) throw std::runtime_error("boom");
    return std::nullopt;
  });
  ASSERT_TRUE(o.counterexample);
  EXPECT_EQ(to_text(*o.counterexample), "case = 3; exception = boom");
}

TEST(Report, Formats) {
  CheckReport ok{"b_lemma", 12, true, std::nullopt, 1.25};
  CheckReport bad{"a_lemma", 3, false, Bindings{{"L", "[ty_of n1 a]"}, {"X", "n1"}}, 0};
  EXPECT_EQ(to_text(ok), "b_lemma: PASS (12 cases, 1.2 ms)");
  auto j = to_json(bad);
  EXPECT_EQ(j["verdict"], "fail");
  EXPECT_EQ(j["counterexample"]["L"], "[ty_of n1 a]");
  EXPECT_FALSE(to_json(ok).contains("counterexample"));
  std::string s = structured({ok, bad});
  EXPECT_LT(s.find("a_lemma"), s.find("b_lemma"));
  EXPECT_EQ(s.find("{\"name\":\"a_lemma\",\"cases\":3,\"verdict\":\"fail\""), 0u);
  std::string t = text_report({ok, bad});
  EXPECT_EQ(t.find("a_lemma: FAIL (3 cases, 0.0 ms)\n  counterexample: L = [ty_of n1 a]; X = n1\n"), 0u);
}

TEST(Judgments, ParseFixtures) {
  auto js = parse_judgments(slurp("judgments/paper_linear.jdg"));
  ASSERT_EQ(js.size(), 3u);
  EXPECT_EQ(js[0].line, 2u);
  EXPECT_TRUE(js[0].expected);
  ASSERT_TRUE(js[0].ty.has_value());
  EXPECT_FALSE(js[1].expected);
  EXPECT_FALSE(js[1].ty.has_value());
  for (const auto& j : js) EXPECT_EQ(decide(System::Linear, false, j.ctx, j.term, j.ty), j.expected) << j.text;
  for (const auto& j : js) EXPECT_EQ(decide(System::Linear, true, j.ctx, j.term, j.ty), j.expected) << j.text;
  for (const auto& j : parse_judgments(slurp("judgments/paper_stlc.jdg")))
    EXPECT_TRUE(decide(System::Stlc, false, j.ctx, j.term, j.ty));
  for (const auto& j : parse_judgments(slurp("judgments/ml.jdg"))) {
    EXPECT_EQ(decide(System::Ml, false, j.ctx, j.term, j.ty), j.expected) << j.text;
    EXPECT_EQ(decide(System::Ml, true, j.ctx, j.term, j.ty), j.expected) << j.text;
  }
}

TEST(Judgments, ErrorsCarryFileLine) {
  try {
    parse_judgments(slurp("judgments/malformed.jdg"));
    FAIL();
  } catch (const SyntaxError& e) {
    EXPECT_EQ(e.line(), 2u);
  }
  EXPECT_THROW(parse_judgments("|- abs a (x\\ x) => maybe"), SyntaxError);
  EXPECT_THROW(parse_judgments("[ty_of n1 a] |- n2 => yes"), UnboundIdentifier);
}

TEST(Translations, ParseFixtures) {
  auto items = parse_translations(slurp("translations/let.trm"));
  ASSERT_EQ(items.size(), 3u);
  for (const auto& it : items) {
    ASSERT_TRUE(it.expected.has_value());
    EXPECT_EQ(translate(it.ctx, it.src), *it.expected);
  }
  EXPECT_EQ(elems(items[2].ctx).size(), 1u);
  auto bad = parse_translations(slurp("translations/nonlinear.trm"));
  ASSERT_EQ(bad.size(), 1u);
  EXPECT_THROW(translate(bad[0].ctx, bad[0].src), TranslationError);
}
