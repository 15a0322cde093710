//
// gcat - exact computation with finite categories and group actions
//

#include <benchmark/benchmark.h>

#include <variant>

#include "gcat/actions.hpp"
#include "gcat/corpus.hpp"
#include "gcat/dwyer.hpp"
#include "gcat/fincat.hpp"
#include "gcat/homology.hpp"
#include "gcat/monoid.hpp"
#include "gcat/sset.hpp"

using namespace gcat;

namespace {

  void BM_NerveOrdinal(benchmark::State& state) {
    auto c   = ordinal(static_cast<int>(state.range(0)));
    for (auto _ : state) {
      benchmark::DoNotOptimize(nerve(c, 4));
    }
  }
  BENCHMARK(BM_NerveOrdinal)->Arg(3)->Arg(6)->Arg(9);

  void BM_HomologyBoundary(benchmark::State& state) {
    int  n = static_cast<int>(state.range(0));
    auto x = standard_boundary(n, n + 1);
    for (auto _ : state) {
      benchmark::DoNotOptimize(homology(*x));
    }
  }
  BENCHMARK(BM_HomologyBoundary)->Arg(2)->Arg(3)->Arg(4);

  void BM_HomologyChaoticNerve(benchmark::State& state) {
    auto e = chaotic_left_translation(cyclic_group(static_cast<int>(state.range(0))));
    auto x = nerve(e.carrier, 4);
    for (auto _ : state) {
      benchmark::DoNotOptimize(homology(*x));
    }
  }
  BENCHMARK(BM_HomologyChaoticNerve)->Arg(2)->Arg(3);

  void BM_PresentedPushout(benchmark::State& state) {
    auto spans = dwyer_spans(20240611, 8, 10);
    for (auto _ : state) {
      for (auto const& s : spans) {
        benchmark::DoNotOptimize(presented_pushout(s.i, s.c));
      }
    }
  }
  BENCHMARK(BM_PresentedPushout);

  void BM_DwyerPushout(benchmark::State& state) {
    auto spans = dwyer_spans(20240611, 8, 10);
    std::vector<DwyerWitness> ws;
    for (auto const& s : spans) {
      ws.push_back(*find_dwyer_witness(s.i));
    }
    for (auto _ : state) {
      for (std::size_t k = 0; k < spans.size(); ++k) {
        benchmark::DoNotOptimize(dwyer_pushout(spans[k].c, ws[k]));
      }
    }
  }
  BENCHMARK(BM_DwyerPushout);

  void BM_FunctorCategory(benchmark::State& state) {
    auto t = chaotic_category({"a", "b"});
    auto c = ordinal(static_cast<int>(state.range(0)));
    for (auto _ : state) {
      benchmark::DoNotOptimize(functor_category(t, product_category(c, c)));
    }
  }
  BENCHMARK(BM_FunctorCategory)->Arg(1)->Arg(2)->Arg(3);

}  // namespace

BENCHMARK_MAIN();
