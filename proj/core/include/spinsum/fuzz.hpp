#pragma once

#include "spinsum/catalog.hpp"
#include "spinsum/eval.hpp"
#include "spinsum/pachner.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace spinsum {

// Applies a move to a patch that normalize_marking already prepared.
using Mover = std::function<Transformed(const MarkedTriangulation&, const Signs&, const PachnerMove&)>;

Mover default_mover();
// 2-2 with the new diagonal's sign negated. Only for exercising the
// failure path.
Mover negative_control_mover();

struct FuzzOptions {
  int moves = 200;
  std::uint64_t seed = 1;
  // 1-3 is suppressed once the complex has this many extra triangles.
  int max_growth = 8;
  std::array<int, 2> choice = {1, 1};
  bool shrink = true;
};

struct LabelDelta {
  std::vector<std::uint64_t> vertex, edge, triangle;
};

// One applied move. The relabeling table is (created, removed).
struct MoveRecord {
  int step = 0;
  PachnerMove move;
  std::uint64_t target_label = 0;
  std::vector<MarkingMove> marking;
  LabelDelta created, removed;
};

struct FuzzFailure {
  int step = 0;  // index of the offending move
  std::string reason;
};

struct FuzzReport {
  std::string surface;
  std::string algebra;
  std::uint64_t seed = 0;
  int requested = 0;
  std::vector<MoveRecord> log;
  std::optional<FuzzFailure> failure;
  std::vector<PachnerMove> shrunk;  // minimal failing sequence, replayable from the start
  int max_triangles = 0;
  bool passed() const { return !failure.has_value(); }
};

// Random mixed moves with marking normalization. After each move the
// complex is validated, the signs must stay admissible and T_A must equal
// the starting value; closed surfaces also keep their Arf invariant.
FuzzReport run_fuzz(const SpinSurface& start, const Evaluator& ev, const FuzzOptions& opt,
                    const Mover& mover = default_mover());

struct ReplayResult {
  int applied = 0;
  std::optional<FuzzFailure> failure;
  bool inapplicable = false;  // some move no longer fits the complex
};

ReplayResult replay(const SpinSurface& start, const Evaluator& ev, const std::vector<PachnerMove>& moves,
                    const Mover& mover = default_mover());

// Greedy one-at-a-time deletion until every remaining move is needed.
std::vector<PachnerMove> shrink_failure(const SpinSurface& start, const Evaluator& ev,
                                        std::vector<PachnerMove> moves, const Mover& mover = default_mover());

// One JSON object per line.
std::string move_log_json_lines(const std::vector<MoveRecord>& log);
std::vector<PachnerMove> parse_move_log(const std::string& json_lines);
std::string fuzz_report_json(const FuzzReport& r);

}  // namespace spinsum
