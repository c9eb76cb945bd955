// Compares the serial reference kernels with their OpenMP counterparts.
// Prints one CSV row per (kernel, size).

#include <CLI11.hpp>

#include <chrono>
#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include "nldist/analysis.hpp"
#include "nldist/box.hpp"
#include "nldist/parallel.hpp"
#include "nldist/random.hpp"
#include "nldist/wiring.hpp"

namespace {

using Clock = std::chrono::steady_clock;

template <typename F>
double best_seconds(int reps, F&& f) {
  double best = 1e300;
  for (int r = 0; r < reps; ++r) {
    const auto t0 = Clock::now();
    f();
    const double s = std::chrono::duration<double>(Clock::now() - t0).count();
    if (s < best) best = s;
  }
  return best;
}

void report(const char* kernel, const std::string& size, double serial, double parallel, double gap) {
  std::printf("%s,%s,%.6e,%.6e,%.3f,%.3e\n", kernel, size.c_str(), serial, parallel,
              parallel > 0 ? serial / parallel : 0.0, gap);
}

}  // namespace

int main(int argc, char** argv) {
  using namespace nldist;
  configure_threads_from_env();

  CLI::App app{"Serial vs OpenMP kernel benchmark"};
  std::vector<int> dims{4, 8, 16, 32, 48, 64};
  std::vector<int> region_steps{200, 1000, 2000};
  int reps = 3;
  int threads = 0;
  std::uint64_t seed = 7;
  app.add_option("--d", dims, "Box dimensions for the wire kernel");
  app.add_option("--region-steps", region_steps, "Grid intervals for the region map");
  app.add_option("--reps", reps, "Repetitions per measurement (best is reported)")->check(CLI::PositiveNumber);
  app.add_option("--threads", threads, "OpenMP threads (default: runtime/NLDIST_THREADS)");
  app.add_option("--seed", seed, "Seed for the random boxes and wirings");
  CLI11_PARSE(app, argc, argv);
  if (threads > 0) set_threads(threads);

  std::cerr << "openmp=" << (openmp_enabled() ? "on" : "off") << " threads=" << max_threads() << '\n';
  std::printf("kernel,size,serial_s,parallel_s,speedup,max_abs_diff\n");

  Rng rng(seed);
  for (int d : dims) {
    const Box p = random_nonsignaling_box(d, rng);
    const Box q = random_nonsignaling_box(d, rng);
    const WiringSpec w = random_wiring(d, rng);
    ProbTable ref(d), par(d);
    const double ts = best_seconds(reps, [&] { ref = wire_reference(p.table(), q.table(), w); });
    const double tp = best_seconds(reps, [&] { par = wire_parallel(p.table(), q.table(), w); });
    report("wire", "d=" + std::to_string(d), ts, tp, max_abs_diff(ref, par));
  }

  for (int steps : region_steps) {
    const auto points = simplex_grid(steps);
    std::vector<RegionPoint> ref, par;
    const Dim d = Dim::finite(3);
    const double ts = best_seconds(reps, [&] { ref = region_map_serial(points, d); });
    const double tp = best_seconds(reps, [&] { par = region_map(points, d); });
    double gap = 0.0;
    for (std::size_t i = 0; i < ref.size(); ++i) {
      gap = std::max(gap, std::abs(ref[i].margin - par[i].margin));
    }
    report("region", "steps=" + std::to_string(steps), ts, tp, gap);
  }
  return 0;
}
