#include "nldist/wiring.hpp"

#include <stdexcept>
#include <string>
#include <utility>

namespace nldist {

std::string_view to_string(Protocol p) { return p == Protocol::A ? "A" : "B"; }

Protocol parse_protocol(std::string_view text) {
  if (text == "A" || text == "a") return Protocol::A;
  if (text == "B" || text == "b") return Protocol::B;
  throw std::invalid_argument("unknown protocol '" + std::string(text) + "' (expected A or B)");
}

namespace {

void check_table(const std::vector<std::vector<int>>& t, std::size_t rows, std::size_t cols,
                 int max_value, const char* name) {
  if (t.size() != rows) {
    throw std::invalid_argument(std::string("wiring table ") + name + " must have " +
                                std::to_string(rows) + " rows");
  }
  for (const auto& row : t) {
    if (row.size() != cols) {
      throw std::invalid_argument(std::string("wiring table ") + name + " must have " +
                                  std::to_string(cols) + " columns");
    }
    for (int v : row) {
      if (v < 0 || v > max_value) {
        throw std::invalid_argument(std::string("wiring table ") + name + " entry " +
                                    std::to_string(v) + " out of range");
      }
    }
  }
}

void check_same_dim(const ProbTable& first, const ProbTable& second, const WiringSpec& spec) {
  if (first.dim() != second.dim() || first.dim() != spec.dim()) {
    throw std::invalid_argument("wire: boxes and wiring must share the same dimension");
  }
}

}  // namespace

WiringSpec::WiringSpec(int d, InputTable fa, InputTable fb, OutputTable ga, OutputTable gb)
    : d_(d), fa_(std::move(fa)), fb_(std::move(fb)), ga_(std::move(ga)), gb_(std::move(gb)) {
  require_dimension(d);
  const auto n = static_cast<std::size_t>(d);
  check_table(fa_, 2, n, 1, "fa");
  check_table(fb_, 2, n, 1, "fb");
  check_table(ga_, n, n, d - 1, "ga");
  check_table(gb_, n, n, d - 1, "gb");
}

int comparator(int k, int d) {
  require_dimension(d);
  if (k < 0 || k >= d) {
    throw std::invalid_argument("comparator: symbol " + std::to_string(k) + " out of range for d=" +
                                std::to_string(d));
  }
  return k == d - 1 ? 1 : 0;
}

WiringSpec comparator_wiring(int d, int offset) {
  require_dimension(d);
  if (offset < 0 || offset >= d) {
    throw std::invalid_argument("comparator_wiring: offset " + std::to_string(offset) +
                                " out of range");
  }
  const auto n = static_cast<std::size_t>(d);
  WiringSpec::InputTable f(2, std::vector<int>(n));
  WiringSpec::OutputTable g(n, std::vector<int>(n));
  for (int x = 0; x < 2; ++x) {
    for (int k = 0; k < d; ++k) f[x][k] = comparator(k, d) * x;
  }
  for (int k1 = 0; k1 < d; ++k1) {
    for (int k2 = 0; k2 < d; ++k2) g[k1][k2] = (k1 + k2 + offset) % d;
  }
  return WiringSpec(d, f, f, g, g);
}

WiringSpec protocol_wiring(Protocol protocol, int d) {
  return comparator_wiring(d, protocol == Protocol::A ? 0 : 1);
}

ProbTable wire_reference(const ProbTable& first, const ProbTable& second, const WiringSpec& spec) {
  check_same_dim(first, second, spec);
  const int d = spec.dim();
  ProbTable out(d);
  for (int x = 0; x < 2; ++x) {
    for (int y = 0; y < 2; ++y) {
      for (int a1 = 0; a1 < d; ++a1) {
        for (int b1 = 0; b1 < d; ++b1) {
          const double p1 = first(x, y, a1, b1);
          const int x2 = spec.fa(x, a1);
          const int y2 = spec.fb(y, b1);
          for (int a2 = 0; a2 < d; ++a2) {
            for (int b2 = 0; b2 < d; ++b2) {
              out(x, y, spec.ga(a1, a2), spec.gb(b1, b2)) += p1 * second(x2, y2, a2, b2);
            }
          }
        }
      }
    }
  }
  return out;
}

ProbTable wire_parallel(const ProbTable& first, const ProbTable& second, const WiringSpec& spec) {
  check_same_dim(first, second, spec);
  const int d = spec.dim();

  // Preimages of each output symbol under the output maps.
  std::vector<std::vector<std::pair<int, int>>> pre_a(static_cast<std::size_t>(d));
  std::vector<std::vector<std::pair<int, int>>> pre_b(static_cast<std::size_t>(d));
  for (int k1 = 0; k1 < d; ++k1) {
    for (int k2 = 0; k2 < d; ++k2) {
      pre_a[static_cast<std::size_t>(spec.ga(k1, k2))].emplace_back(k1, k2);
      pre_b[static_cast<std::size_t>(spec.gb(k1, k2))].emplace_back(k1, k2);
    }
  }

  ProbTable out(d);
  double* dst = out.values().data();
  const long long dd = static_cast<long long>(d) * d;
  const long long cells = 4 * dd;

  // Each cell is owned by one iteration and summed in a fixed order, so the
  // result does not depend on the schedule.
#pragma omp parallel for schedule(static)
  for (long long cell = 0; cell < cells; ++cell) {
    const int ctx = static_cast<int>(cell / dd);
    const int x = ctx / 2;
    const int y = ctx % 2;
    const int a = static_cast<int>((cell % dd) / d);
    const int b = static_cast<int>(cell % d);
    double acc = 0.0;
    for (const auto& [a1, a2] : pre_a[static_cast<std::size_t>(a)]) {
      const int x2 = spec.fa(x, a1);
      for (const auto& [b1, b2] : pre_b[static_cast<std::size_t>(b)]) {
        acc += first(x, y, a1, b1) * second(x2, spec.fb(y, b1), a2, b2);
      }
    }
    dst[cell] = acc;
  }
  return out;
}

Box wire(const Box& first, const Box& second, const WiringSpec& spec) {
  return Box::from_table(wire_parallel(first.table(), second.table(), spec));
}

}  // namespace nldist
