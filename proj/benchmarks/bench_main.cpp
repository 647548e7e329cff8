#include <benchmark/benchmark.h>

#include "lsnet/corpus.hpp"
#include "lsnet/net_rewrite.hpp"
#include "lsnet/readback.hpp"
#include "lsnet/term_rewrite.hpp"
#include "lsnet/translate.hpp"

using namespace lsnet;

namespace {

// a representative mid-size term with sharing, nesting and all three redexes
const char* kTerm = "(\\f. \\x. f (f x)) ((\\y. y y)[w<-z x] (\\u. u)) (x (y z)[q<-x])";

ExprPtr bench_term() {
  static ExprPtr t = well_name(parse_expr(kTerm));
  return t;
}

void BM_parse(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(parse_expr(kTerm));
}
BENCHMARK(BM_parse);

void BM_translate(benchmark::State& state) {
  ExprPtr t = bench_term();
  for (auto _ : state) benchmark::DoNotOptimize(translate(t));
}
BENCHMARK(BM_translate);

void BM_validate(benchmark::State& state) {
  Net n = translate(bench_term());
  for (auto _ : state) benchmark::DoNotOptimize(validate(n));
}
BENCHMARK(BM_validate);

void BM_is_correct(benchmark::State& state) {
  Net n = translate(bench_term());
  for (auto _ : state) benchmark::DoNotOptimize(is_correct(n));
}
BENCHMARK(BM_is_correct);

void BM_read_back(benchmark::State& state) {
  Net n = translate(bench_term());
  for (auto _ : state) benchmark::DoNotOptimize(read_back(n));
}
BENCHMARK(BM_read_back);

void BM_net_iso(benchmark::State& state) {
  Net a = translate(bench_term());
  Net b = translate(bench_term());
  for (auto _ : state) benchmark::DoNotOptimize(net_iso(a, b));
}
BENCHMARK(BM_net_iso);

void BM_guided_read_back(benchmark::State& state) {
  ExprPtr t = bench_term();
  Net n = translate(t);
  for (auto _ : state) benchmark::DoNotOptimize(guided_read_back(n, t));
}
BENCHMARK(BM_guided_read_back);

void BM_term_step(benchmark::State& state) {
  ExprPtr t = bench_term();
  auto rs = find_term_redexes(t);
  for (auto _ : state) benchmark::DoNotOptimize(apply_term_redex(t, rs.front()));
}
BENCHMARK(BM_term_step);

void BM_net_step(benchmark::State& state) {
  Net n = translate(bench_term());
  auto rs = find_net_redexes(n);
  for (auto _ : state) benchmark::DoNotOptimize(apply_net_redex(n, rs.front()));
}
BENCHMARK(BM_net_step);

void BM_corpus_size6(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(count_terms({6, {"x", "y", "z"}}));
}
BENCHMARK(BM_corpus_size6);

}  // namespace

BENCHMARK_MAIN();
