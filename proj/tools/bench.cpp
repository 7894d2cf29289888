// Times the parallel kernels against the serial reference paths.
// Results must agree exactly; the timings are informational.

#include <chrono>
#include <cstdio>
#include <vector>

#include "asdim/coarse.hpp"
#include "asdim/oracle.hpp"
#include "asdim/sequence.hpp"
#include "asdim/space.hpp"

using namespace asdim;
using Clock = std::chrono::steady_clock;

static double ms_since(Clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

static bool bench_space(const char* label, SpaceRef X) {
  WitnessOptions opt;
  opt.mode = ScheduleMode::lax_2;
  opt.splitter = SplitterKind::greedy;
  const GuidedSequence seq = build_witnessing_sequence(X, opt);
  std::vector<SplitCover> covers;
  for (const auto& lv : seq.levels) covers.push_back(lv.cover);

  auto t0 = Clock::now();
  const auto table = dF_table(*X, covers);
  const double fast_ms = ms_since(t0);

  t0 = Clock::now();
  bool agree = true;
  for (Point x = 0; x < X->size() && agree; ++x)
    for (Point y = 0; y < X->size(); ++y)
      if (oracle::oracle_dF(X->size(), covers, x, y) != table[x][y]) {
        agree = false;
        break;
      }
  const double oracle_ms = ms_since(t0);

  t0 = Clock::now();
  const bool fast_metric = validate_metric(*X).ok();
  const double vm_ms = ms_since(t0);

  t0 = Clock::now();
  const bool slow_metric = oracle::triple_scan_triangle(*X).ok();
  const double ts_ms = ms_since(t0);

  std::printf("%-18s dF_table %8.2f ms  oracle_dF %8.2f ms  %s\n", label, fast_ms, oracle_ms,
              agree ? "agree" : "MISMATCH");
  std::printf("%-18s triangle %8.2f ms  triple_scan %7.2f ms  %s\n", label, vm_ms, ts_ms,
              fast_metric == slow_metric ? "agree" : "MISMATCH");
  return agree && fast_metric == slow_metric;
}

int main() {
  bool ok = true;
  ok &= bench_space("path(256)", std::make_shared<FiniteMetricSpace>(make_path(256)));
  ok &= bench_space("grid(16,16,linf)",
                    std::make_shared<FiniteMetricSpace>(make_grid(16, 16, GridNorm::linf)));
  ok &= bench_space("random(40)", std::make_shared<FiniteMetricSpace>(make_random(40, 16, 7)));
  return ok ? 0 : 1;
}
