#pragma once

#include <array>

#include "algebra.hpp"

namespace surfalg {

// Cells of one triangle scaffold.  Family 0 cells contain lifts of corner 0
// and are indexed 1..n by nesting; family 1 (corner 1) indexed 0..n-1;
// family 2 (corner 2) indexed 1..n.
struct CellRef {
  int tri = -1;
  int family = -1;
  int index = 0;
  friend bool operator==(const CellRef&, const CellRef&) = default;
};

// A simple segment joins the white point W(t,s) to one of its three lattice
// neighbours: spoke 0 to v(t,s), spoke 1 to v(t,s-1), spoke 2 to v(t+1,s).
struct Segment {
  int tri = -1;
  int t = 0;
  int s = 0;
  int spoke = 0;
  friend bool operator==(const Segment&, const Segment&) = default;
};

struct TriScaffold {
  int face = -1;
  std::array<int, 3> corner{};        // punctures, ccw along the face word
  std::array<SignedEdge, 3> side{};   // side i runs corner i -> corner i+1
  int whites = 0;
  int interior_blacks = 0;
  int edge_blacks_per_side = 0;
  // zigzag[family][k] = orientation-ordered list of segments
  std::array<std::vector<std::vector<Segment>>, 3> zigzags;
};

struct CoveringData {
  MarkedSurface base;
  int n = 0;
  Ctx base_ctx_hint;  // not owned by construction; here for convenience

  MarkedSurface cover;
  std::vector<TriScaffold> tris;

  // Projection and fibers.
  std::vector<int> cover_punc_base;             // cover puncture -> base
  std::vector<int> cover_edge_base;             // cover edge -> base or -1
  std::vector<std::vector<int>> fiber;          // base puncture -> lifts
  std::vector<std::vector<int>> lifts_of_edge;  // base edge -> cover edges
  std::vector<Segment> ramification;            // interior black points

  // Cell bookkeeping: sheet labels per cell and the puncture lift it holds.
  std::vector<std::vector<int>> cell_lift;  // [tri][local cell id] -> lift

  // Two-coloring of cover punctures for n = 2 (edges run white -> black).
  std::vector<char> is_white;

  int lift_count(int base_punc) const {
    return static_cast<int>(fiber[base_punc].size());
  }
  int local_cells() const { return 3 * n; }
  int cell_local_id(int family, int index) const {
    // family 0: index 1..n -> 0..n-1; family 1: 0..n-1; family 2: 1..n.
    int off = family == 1 ? index : index - 1;
    return family * n + off;
  }
};

// Builds the n-sheeted ramified cover of a triangulated surface without
// internal punctures.  For n = 2 the cover carries the lifted polygon
// decomposition (one hexagon per base triangle, edges oriented from white
// to black punctures); for n >= 3 it carries the cell decomposition (one
// triangle per white point, one hexagon around each ramification point).
CoveringData build_covering(const MarkedSurface& base, int n);

// Sidecar text: lift/fiber/ram lines.
std::string render_covering_map(const CoveringData& c);

// Sheet swap of a two-sheeted cover, as a symmetry of the cover surface.
SurfaceSymmetry deck_involution(const CoveringData& c);

// Anti-involutions combining the deck swap with path reversal; sign is the
// +1 or -1 variant.  Extended anti-multiplicatively; on tensors the slots
// swap.
AlgebraElement deck_anti_involution(const CoveringData& c, int sign,
                                    const AlgebraElement& x);
Tensor2 deck_anti_involution(const CoveringData& c, int sign,
                             const Tensor2& t);

}  // namespace surfalg
