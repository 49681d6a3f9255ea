// Serial reference against the OpenMP fan-out of run_cases, on two real
// workloads: perm vs the literal relation, and the relational/algorithmic
// linear typing cross-check.

#include <benchmark/benchmark.h>

#include "bctx/ctx.hpp"
#include "bctx/gen.hpp"
#include "bctx/parallel.hpp"
#include "bctx/typing.hpp"

using namespace bctx;

namespace {

const std::vector<Ctx<char>>& perm_domain() {
  static const auto dom = gen_ctxs<char>({'a', 'b'}, 3, 2);
  return dom;
}

CaseResult perm_case(std::size_t i) {
  const auto& dom = perm_domain();
  const auto& g1 = dom[i / dom.size()];
  const auto& g2 = dom[i % dom.size()];
  if (perm(g1, g2) != perm_rel(g1, g2)) return Bindings{{"G1", "?"}};
  return std::nullopt;
}

struct TypingDomain {
  std::vector<TyCtx> ctxs;
  std::vector<Tm> terms;
};

const TypingDomain& typing_domain() {
  static const TypingDomain d = [] {
    TypingDomain d;
    auto pool = name_pool(2);
    auto tys = type_universe(2);
    d.ctxs.push_back(TyCtx());
    for (const auto& t : tys) d.ctxs.push_back(TyCtx::list({TyAssoc{pool[0], t}}));
    d.terms = gen_terms(TermSpace{pool, {Ty::base("a"), Ty::arrow(Ty::base("a"), Ty::base("a"))}, true}, 4);
    return d;
  }();
  return d;
}

CaseResult typing_case(std::size_t i) {
  const auto& d = typing_domain();
  const auto& g = d.ctxs[i / d.terms.size()];
  const auto& e = d.terms[i % d.terms.size()];
  if (mltype_check_top(g, e).has_value() == mltype_types(g, e).empty()) return Bindings{{"e", print_term(e)}};
  return std::nullopt;
}

template <CaseResult (*F)(std::size_t)>
void run(benchmark::State& state, std::size_t n) {
  int jobs = static_cast<int>(state.range(0));
  for (auto _ : state) {
    CaseOutcome o = jobs == 0 ? run_cases_serial(n, F) : run_cases(n, jobs, F);
    benchmark::DoNotOptimize(o.cases);
  }
  state.SetItemsProcessed(static_cast<int64_t>(state.iterations() * n));
}

void BM_PermOracle(benchmark::State& state) {
  std::size_t n = perm_domain().size();
  run<perm_case>(state, n * n);
}

void BM_TypingOracle(benchmark::State& state) {
  const auto& d = typing_domain();
  run<typing_case>(state, d.ctxs.size() * d.terms.size());
}

}  // namespace

// 0 selects the serial reference; other values are OpenMP thread counts.
BENCHMARK(BM_PermOracle)->Arg(0)->Arg(1)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_TypingOracle)->Arg(0)->Arg(1)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
