// Benchmark comparing the OpenMP kernels against their serial reference
// implementations: generator evaluation, Jacobian assembly, and the batch
// verification loop.

#include <chrono>
#include <iostream>

#include "kap/reconstruct.hpp"
#include "kap/tangent.hpp"

using namespace kap;

namespace {

template <class Fn>
double time_ms(Fn&& fn, int reps) {
  auto start = std::chrono::steady_clock::now();
  for (int r = 0; r < reps; ++r) fn();
  auto stop = std::chrono::steady_clock::now();
  return std::chrono::duration<double, std::milli>(stop - start).count() / reps;
}

void row(const std::string& name, double serial_ms, double parallel_ms) {
  std::cout << name << ": serial " << serial_ms << " ms, parallel " << parallel_ms
            << " ms, speedup " << (parallel_ms > 0 ? serial_ms / parallel_ms : 0.0) << "\n";
}

}  // namespace

int main() {
  const int n = 8;
  MarkedCurve c = random_curve(n, 20240901, 3);
  MultiPoint p = omega(c);
  std::vector<MinorIndex> gens = generators(n);
  ChartIndex ci = chart(p);
  std::cout << "n=" << n << ", generators=" << gens.size() << "\n";

  row("evaluate_all",
      time_ms([&] { evaluate_all_serial(gens, p); }, 20),
      time_ms([&] { evaluate_all(gens, p); }, 20));

  row("linearize_all",
      time_ms([&] { linearize_all_serial(gens, p, ci); }, 20),
      time_ms([&] { linearize_all(gens, p, ci); }, 20));

  const int trials = 24;
  auto batch_serial = [&] {
    for (int i = 0; i < trials; ++i) {
      MarkedCurve ci2 = random_curve(6, trial_seed(7, static_cast<std::uint64_t>(i)), i % 7);
      MultiPoint pi = omega(ci2);
      if (!is_member(pi).member()) std::abort();
      (void)jacobian_nullity(pi);
    }
  };
  auto batch_parallel = [&] {
#pragma omp parallel for schedule(dynamic)
    for (int i = 0; i < trials; ++i) {
      MarkedCurve ci2 = random_curve(6, trial_seed(7, static_cast<std::uint64_t>(i)), i % 7);
      MultiPoint pi = omega(ci2);
      if (!is_member(pi).member()) std::abort();
      (void)jacobian_nullity(pi);
    }
  };
  row("verify batch (n=6, 24 trials)", time_ms(batch_serial, 3), time_ms(batch_parallel, 3));
  return 0;
}
