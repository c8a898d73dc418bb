// Compares the serial reference paths against the OpenMP kernels on the two
// enumeration-heavy operations. Wall times only; both paths must agree
// exactly (the equality is also enforced by the test suite).

#include <chrono>
#include <cstdio>

#include "affkm/casimir.hpp"

using namespace affkm;

namespace {

double run_ms(Exec exec, const RootSystem& rs, const AffineWeight& top, long depth,
              std::size_t* support_size, std::size_t* pair_rows) {
  const auto t0 = std::chrono::steady_clock::now();
  WeightSupport s = enumerate_support(rs, top, depth, exec);
  PairAuditReport rep = primitive_pair_audit(rs, s, top, exec);
  const double ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  *support_size = s.size();
  *pair_rows = rep.rows.size();
  return ms;
}

} // namespace

int main() {
  struct Case {
    const char* type;
    long depth;
  };
  const Case cases[] = {{"A1", 5}, {"A2", 3}, {"B2", 2}, {"C2", 2}};

  std::printf("%-6s %-6s %-10s %-8s %-12s %-12s %-8s\n", "type", "depth", "weights", "pairs",
              "serial_ms", "parallel_ms", "speedup");
  for (const Case& c : cases) {
    RootSystem rs(parse_simple_type(c.type), +1);
    const AffineWeight top = lambda0_weight(rs);
    std::size_t n1 = 0, p1 = 0, n2 = 0, p2 = 0;
    const double serial = run_ms(Exec::serial, rs, top, c.depth, &n1, &p1);
    const double parallel = run_ms(Exec::parallel, rs, top, c.depth, &n2, &p2);
    if (n1 != n2 || p1 != p2) {
      std::printf("MISMATCH between serial and parallel results for %s\n", c.type);
      return 1;
    }
    std::printf("%-6s %-6ld %-10zu %-8zu %-12.1f %-12.1f %-8.2f\n", c.type, c.depth, n1, p1,
                serial, parallel, parallel > 0 ? serial / parallel : 0.0);
  }
  std::printf("threads: %d\n", exec_threads());
  return 0;
}
