#include "qfsplit/criteria.hpp"
#include "qfsplit/frobenius.hpp"
#include "qfsplit/groebner.hpp"
#include "qfsplit/strata.hpp"
#include "qfsplit/witt.hpp"

#include <benchmark/benchmark.h>

#include <functional>

using namespace qfsplit;

namespace {

Polynomial dense_form(const RingPtr& r, int d) {
  // Sum of all degree-d monomials with coefficients 1, 2, ... mod p.
  Polynomial f(r);
  Coeff c = 1;
  std::vector<int> e(r->nvars(), 0);
  std::function<void(std::size_t, int)> rec = [&](std::size_t i, int left) {
    if (i + 1 == e.size()) {
      e[i] = left;
      f += Polynomial::monomial(r, Monomial(e), c);
      c = c % (r->characteristic() - 1) + 1;
      return;
    }
    for (int k = left; k >= 0; --k) {
      e[i] = k;
      rec(i + 1, left - k);
    }
  };
  rec(0, d);
  return f;
}

void BM_multiply(benchmark::State& st) {
  auto r = make_ring(7, {"x", "y", "z", "w"});
  Polynomial f = dense_form(r, static_cast<int>(st.range(0)));
  for (auto _ : st) benchmark::DoNotOptimize(f * f);
  st.counters["terms"] = static_cast<double>(f.size());
}
BENCHMARK(BM_multiply)->Arg(3)->Arg(5)->Arg(8);

void BM_delta1(benchmark::State& st) {
  auto r = make_ring(static_cast<std::uint32_t>(st.range(0)), {"x", "y", "z"});
  Polynomial f = dense_form(r, 3);
  for (auto _ : st) benchmark::DoNotOptimize(delta1(f));
}
BENCHMARK(BM_delta1)->Arg(2)->Arg(3)->Arg(5);

void BM_theta(benchmark::State& st) {
  auto r = make_ring(2, {"x", "y", "z", "w"});
  Polynomial f = dense_form(r, 4);
  Polynomial delta = delta1(f);
  Polynomial a = power(f, 3);
  for (auto _ : st) benchmark::DoNotOptimize(theta(a, delta));
}
BENCHMARK(BM_theta);

void BM_buchberger(benchmark::State& st) {
  auto r = make_ring(32003, {"x", "y", "z", "w"});
  std::vector<Polynomial> gens{parse_polynomial("x+y+z+w", r), parse_polynomial("x*y+y*z+z*w+w*x", r),
                               parse_polynomial("x*y*z+y*z*w+z*w*x+w*x*y", r),
                               parse_polynomial("x*y*z*w-1", r)};
  for (auto _ : st) benchmark::DoNotOptimize(buchberger(r, gens));
}
BENCHMARK(BM_buchberger);

void BM_height_local(benchmark::State& st) {
  auto r = make_ring(2, {"x", "y", "z"});
  Problem e8(r, {parse_polynomial("z^2+x^3+y^5", r)});
  for (auto _ : st) benchmark::DoNotOptimize(height_local(e8));
}
BENCHMARK(BM_height_local)->Unit(benchmark::kMillisecond);

void BM_height_graded_quartic(benchmark::State& st) {
  auto r = make_ring(3, {"x", "y", "z", "w"});
  Problem q(r, {parse_polynomial("x^4+y^4+z^4+w^4+x*y*z*w+x^2*y*z", r)});
  for (auto _ : st) benchmark::DoNotOptimize(height_graded_cy(q, Grading::standard(4), 4));
}
BENCHMARK(BM_height_graded_quartic)->Unit(benchmark::kMillisecond);

void BM_qfs_decide_del_pezzo(benchmark::State& st) {
  auto r = make_ring(2, {"x", "y", "z", "w"});
  Problem f(r, {parse_polynomial("w^2+x*y*z*(x+y+z)", r)});
  for (auto _ : st) benchmark::DoNotOptimize(qfs_decide(f));
}
BENCHMARK(BM_qfs_decide_del_pezzo)->Unit(benchmark::kMillisecond);

void BM_strata(benchmark::State& st) {
  FamilyContext ctx(2, static_cast<std::size_t>(st.range(0)));
  for (auto _ : st) benchmark::DoNotOptimize(strata_polynomials(ctx, 3));
}
BENCHMARK(BM_strata)->Arg(3)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
