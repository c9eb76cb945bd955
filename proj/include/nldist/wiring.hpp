#pragma once

#include <string_view>
#include <vector>

#include "nldist/box.hpp"

namespace nldist {

enum class Protocol { A, B };

std::string_view to_string(Protocol p);
Protocol parse_protocol(std::string_view text);

// Deterministic depth-2 wiring of two boxes into one. Alice feeds
// x2 = fa(x, a1) into the second box and outputs a = ga(a1, a2); Bob does
// the same with fb, gb. Locality is structural: no table reads the other
// party's data.
class WiringSpec {
 public:
  using InputTable = std::vector<std::vector<int>>;   // [input][first-box output] -> bit
  using OutputTable = std::vector<std::vector<int>>;  // [a1][a2] -> symbol

  WiringSpec(int d, InputTable fa, InputTable fb, OutputTable ga, OutputTable gb);

  int dim() const noexcept { return d_; }
  int fa(int x, int a1) const noexcept { return fa_[x][a1]; }
  int fb(int y, int b1) const noexcept { return fb_[y][b1]; }
  int ga(int a1, int a2) const noexcept { return ga_[a1][a2]; }
  int gb(int b1, int b2) const noexcept { return gb_[b1][b2]; }

  const InputTable& fa_table() const noexcept { return fa_; }
  const InputTable& fb_table() const noexcept { return fb_; }
  const OutputTable& ga_table() const noexcept { return ga_; }
  const OutputTable& gb_table() const noexcept { return gb_; }

  friend bool operator==(const WiringSpec&, const WiringSpec&) = default;

 private:
  int d_;
  InputTable fa_, fb_;
  OutputTable ga_, gb_;
};

/// 1 iff k == d - 1.
int comparator(int k, int d);

// f(x, a1) = comparator(a1) * x, g(a1, a2) = (a1 + a2 + offset) mod d, same for Bob.
// Offset 0 is protocol A, offset 1 is protocol B.
WiringSpec comparator_wiring(int d, int offset);
WiringSpec protocol_wiring(Protocol protocol, int d);

// Exact composed table
//   P(a b | x y) = sum_{a1 b1 a2 b2} [a = ga(a1,a2)] [b = gb(b1,b2)]
//                  P1(a1 b1 | x y) P2(a2 b2 | fa(x,a1), fb(y,b1)).
// wire_reference is the literal serial sum and serves as the oracle;
// wire_parallel gathers per output cell and runs under OpenMP.
ProbTable wire_reference(const ProbTable& first, const ProbTable& second, const WiringSpec& spec);
ProbTable wire_parallel(const ProbTable& first, const ProbTable& second, const WiringSpec& spec);

// Validated composition; uses the parallel kernel.
Box wire(const Box& first, const Box& second, const WiringSpec& spec);

}  // namespace nldist
