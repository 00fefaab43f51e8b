#pragma once

#include <deque>
#include <functional>
#include <memory>
#include <optional>
#include <stdexcept>
#include <unordered_map>
#include <vector>

#include "stonework/clopen.hpp"

namespace stonework {

/// One piece of a piecewise translation: on `region`, the map acts by the
/// single group element `move`.
struct Piece {
  ClopenPtr region;
  DyadicElem move;
};

class ScanCapError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Piecewise translation of the point space with lazily produced pieces.
/// Pieces are pairwise disjoint by construction; a point is moved by the
/// first (hence only) piece containing it.  Copies share the underlying
/// piece stream, so forcing pieces through one handle benefits all of them.
/// A map value must stay on one thread while pieces are being extended.
class PiecewiseMap {
 public:
  using Producer = std::function<std::optional<Piece>()>;

  PiecewiseMap() = default;
  static PiecewiseMap finite(std::shared_ptr<const FeasibleSpace> space,
                             std::vector<Piece> pieces);
  static PiecewiseMap lazy(std::shared_ptr<const FeasibleSpace> space,
                           Producer more);

  /// Value at the point addressed by k.  Scans at most scan_cap pieces,
  /// producing new ones as needed; throws ScanCapError beyond the cap and
  /// runtime_error when the piece stream ends without covering k.
  FinSet apply(const FinSet& k, int scan_cap) const;

  /// Piece by index, forcing production; nullptr when the stream is shorter.
  /// Pieces live in a deque, so the reference stays valid while later pieces
  /// are produced (production can reenter through transport nodes).
  const Piece* piece(size_t idx) const;

  /// Pieces produced so far (diagnostics and serialization).
  const std::deque<Piece>& forced_pieces() const;
  bool exhausted() const;

  const std::shared_ptr<const FeasibleSpace>& space() const;

  /// The map as a plain point function with a fixed scan budget, for use in
  /// transport nodes.
  std::function<FinSet(const FinSet&)> as_function(int scan_cap) const;

 private:
  struct State;
  std::shared_ptr<State> st_;
};

/// The identity as a one-piece map.
PiecewiseMap identity_map(std::shared_ptr<const FeasibleSpace> space);

/// Successor in the canonical enumeration, as a piecewise translation: the
/// j-th piece holds the points containing {1..j-1} but not j and moves them
/// by the group element supported on {1..j}.  Infinitely many pieces,
/// produced on demand.
PiecewiseMap odometer_map(std::shared_ptr<const FeasibleSpace> space);

/// Composition a after b.  Pieces are the pairwise overlays: on
/// (b-region & preimage of a-region under the b-move) the composite moves
/// by the product of the two moves.  Pairs are produced along diagonals so
/// every point is covered after finitely many pulls.
///
/// prune_depth > 0 drops pieces with no witness on the {1..prune_depth}
/// window, which caps the stream length by the window size; the composite
/// is then exact on that window only.  Without pruning, nesting composites
/// multiplies piece counts.
PiecewiseMap compose(const PiecewiseMap& a, const PiecewiseMap& b,
                     int prune_depth = 0);

/// Restriction: pieces of m cut down to `where`.  Points outside `where`
/// are not covered.  prune_depth as in compose.
PiecewiseMap restrict_map(const PiecewiseMap& m, const ClopenPtr& where,
                          int prune_depth = 0);

/// Concatenation of finitely many maps with disjoint domains, pulled round
/// robin.
PiecewiseMap overlay(std::shared_ptr<const FeasibleSpace> space,
                     std::vector<PiecewiseMap> parts);

/// Self-inverse exchange of two disjoint nonempty clopen sets, built by the
/// alternating shrinking induction: repeatedly pick the first uncovered
/// witness on each side, translate a neighbourhood of the A-side witness
/// onto the B side, and shrink it (via split) whenever it would swallow
/// either remainder whole.  The resulting map interchanges A and B, sends
/// a to b, is the identity off their union, and equals its own inverse
/// piece by piece.
PiecewiseMap build_swap(std::shared_ptr<const FeasibleSpace> space,
                        const ClopenPtr& A, const ClopenPtr& B,
                        const FinSet& a, const FinSet& b, int depth);

}  // namespace stonework
