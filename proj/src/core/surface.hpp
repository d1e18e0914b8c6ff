#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace surfalg {

// All throwing paths in the core use SurfError; `kind` is a stable
// machine-readable tag, `what()` the human diagnostic.
class SurfError : public std::runtime_error {
 public:
  SurfError(std::string kind, const std::string& msg)
      : std::runtime_error(msg), kind_(std::move(kind)) {}
  const std::string& kind() const { return kind_; }

 private:
  std::string kind_;
};

struct EdgeRec {
  std::string name;
  int tail = -1;  // puncture index
  int head = -1;
};

// Signed reference to an edge inside a face word: +1 traverses tail->head.
struct SignedEdge {
  int edge = -1;
  int sign = 1;
  friend bool operator==(const SignedEdge&, const SignedEdge&) = default;
};

// One end of an edge: (edge, head?) with head = the arc terminates there.
struct EndRef {
  int edge = -1;
  bool head = false;
  friend bool operator==(const EndRef&, const EndRef&) = default;
};

struct Face {
  std::string name;
  // Boundary word in composition order: index 0 is the leftmost (= last
  // traversed) letter; traversal iterates from the back.  The face lies on
  // the left of the traversal.
  std::vector<SignedEdge> word;
};

struct ValidationReport {
  std::vector<std::string> violations;
  std::vector<std::string> flags;  // non-fatal, e.g. fan-order-sensitive
  bool ok() const { return violations.empty(); }
  std::string to_string() const;
};

class MarkedSurface {
 public:
  std::string name;
  std::vector<std::string> punctures;
  std::vector<EdgeRec> edges;
  std::vector<Face> faces;
  // fans[p] lists the edge-ends crossing the decoration curve at puncture p,
  // in crossing order along the curve's orientation.
  std::vector<std::vector<EndRef>> fans;

  int puncture_index(std::string_view id) const;
  int edge_index(std::string_view id) const;
  const std::string& edge_name(int e) const { return edges[e].name; }

  // Endpoint of a traversal: +e runs tail->head.
  int traversal_source(SignedEdge s) const {
    return s.sign > 0 ? edges[s.edge].tail : edges[s.edge].head;
  }
  int traversal_target(SignedEdge s) const {
    return s.sign > 0 ? edges[s.edge].head : edges[s.edge].tail;
  }

  // Fan position of an end, -1 if absent.
  int fan_position(int puncture, EndRef end) const;
  int end_puncture(EndRef end) const {
    return end.head ? edges[end.edge].head : edges[end.edge].tail;
  }

  // Number of faces whose words mention the edge, counted with multiplicity.
  int face_multiplicity(int edge) const;
  bool is_internal(int edge) const { return face_multiplicity(edge) == 2; }
};

// Line-oriented parser; '#' starts a comment.  Throws SurfError("parse", ...)
// with the offending line number.
MarkedSurface parse_surface(const std::string& text);

// Bit-exact inverse of parse_surface on valid data: declaration order,
// single spaces, trailing newline.
std::string serialize_surface(const MarkedSurface& s);

ValidationReport validate(const MarkedSurface& s);

int euler_characteristic(const MarkedSurface& s);

// Diagonal exchange inside the quadrilateral formed by the two triangles
// adjacent to `diag`.  The edge record keeps its id and name; endpoints,
// the two face words, and the four corner fans are rewritten.
MarkedSurface flip_triangulation(const MarkedSurface& s, int diag);

// Orientation-preserving isomorphism of combinatorial data.  edge_map sends
// edge e of the source to a signed edge of the target; sign -1 means the
// reference orientations disagree.
struct SurfaceSymmetry {
  std::vector<int> punc_map;
  std::vector<SignedEdge> edge_map;
  std::vector<int> face_map;
};

// Checks incidence, face words up to cyclic rotation, and fan orders.
ValidationReport validate_symmetry(const SurfaceSymmetry& f,
                                   const MarkedSurface& src,
                                   const MarkedSurface& dst);

SurfaceSymmetry compose(const SurfaceSymmetry& second,
                        const SurfaceSymmetry& first);
bool identity_on_punctures(const SurfaceSymmetry& f);

// The symmetry with identity maps.
SurfaceSymmetry identity_symmetry(const MarkedSurface& s);

// If the surfaces are isomorphic via a map fixing every puncture, return it.
// Used to certify that flipping twice restores the original triangulation.
std::optional<SurfaceSymmetry> find_puncture_fixing_isomorphism(
    const MarkedSurface& src, const MarkedSurface& dst);

// Reconstruct fan orders from the face corner structure: at every corner the
// departing end immediately precedes the arriving end.  Requires a boundary
// puncture structure (each chain is linear, anchored at boundary edges).
void derive_fans_from_faces(MarkedSurface& s);

}  // namespace surfalg
