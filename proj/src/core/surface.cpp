#include "surface.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

namespace surfalg {

std::string ValidationReport::to_string() const {
  std::ostringstream os;
  if (ok()) {
    os << "pass";
    if (!flags.empty()) {
      os << " (flags:";
      for (const auto& f : flags) os << ' ' << f;
      os << ")";
    }
  } else {
    os << "fail";
    for (const auto& v : violations) os << "\n  violation: " << v;
    for (const auto& f : flags) os << "\n  flag: " << f;
  }
  return os.str();
}

int MarkedSurface::puncture_index(std::string_view id) const {
  for (size_t i = 0; i < punctures.size(); ++i)
    if (punctures[i] == id) return static_cast<int>(i);
  return -1;
}

int MarkedSurface::edge_index(std::string_view id) const {
  for (size_t i = 0; i < edges.size(); ++i)
    if (edges[i].name == id) return static_cast<int>(i);
  return -1;
}

int MarkedSurface::fan_position(int puncture, EndRef end) const {
  const auto& fan = fans[puncture];
  for (size_t i = 0; i < fan.size(); ++i)
    if (fan[i] == end) return static_cast<int>(i);
  return -1;
}

int MarkedSurface::face_multiplicity(int edge) const {
  int count = 0;
  for (const auto& f : faces)
    for (const auto& se : f.word)
      if (se.edge == edge) ++count;
  return count;
}

namespace {

std::vector<std::string> split_ws(const std::string& line) {
  std::vector<std::string> out;
  std::istringstream is(line);
  std::string tok;
  while (is >> tok) out.push_back(tok);
  return out;
}

[[noreturn]] void parse_fail(int line_no, const std::string& msg) {
  throw SurfError("parse", "line " + std::to_string(line_no) + ": " + msg);
}

}  // namespace

MarkedSurface parse_surface(const std::string& text) {
  MarkedSurface s;
  std::istringstream is(text);
  std::string line;
  int line_no = 0;
  bool have_name = false;
  std::set<std::string> seen_ids;

  auto require_new_id = [&](const std::string& id) {
    if (!seen_ids.insert(id).second) parse_fail(line_no, "duplicate id " + id);
  };

  while (std::getline(is, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos)
      line.erase(hash);
    auto toks = split_ws(line);
    if (toks.empty()) continue;
    const std::string& kw = toks[0];
    if (kw == "surface") {
      if (toks.size() != 2) parse_fail(line_no, "expected: surface <name>");
      if (have_name) parse_fail(line_no, "repeated surface line");
      s.name = toks[1];
      have_name = true;
    } else if (kw == "puncture") {
      if (toks.size() < 2) parse_fail(line_no, "expected: puncture <id> ...");
      for (size_t i = 1; i < toks.size(); ++i) {
        require_new_id(toks[i]);
        s.punctures.push_back(toks[i]);
        s.fans.emplace_back();
      }
    } else if (kw == "edge") {
      if (toks.size() != 4)
        parse_fail(line_no, "expected: edge <id> <tail> <head>");
      require_new_id(toks[1]);
      int tail = s.puncture_index(toks[2]);
      int head = s.puncture_index(toks[3]);
      if (tail < 0) parse_fail(line_no, "undeclared puncture " + toks[2]);
      if (head < 0) parse_fail(line_no, "undeclared puncture " + toks[3]);
      s.edges.push_back(EdgeRec{toks[1], tail, head});
    } else if (kw == "face") {
      if (toks.size() < 3)
        parse_fail(line_no, "expected: face <id> <signed-edge> ...");
      require_new_id(toks[1]);
      Face f;
      f.name = toks[1];
      for (size_t i = 2; i < toks.size(); ++i) {
        const std::string& t = toks[i];
        if (t.size() < 2 || (t[0] != '+' && t[0] != '-'))
          parse_fail(line_no, "signed edge must start with + or -: " + t);
        int e = s.edge_index(t.substr(1));
        if (e < 0) parse_fail(line_no, "undeclared edge " + t.substr(1));
        f.word.push_back(SignedEdge{e, t[0] == '+' ? 1 : -1});
      }
      s.faces.push_back(std::move(f));
    } else if (kw == "fan") {
      if (toks.size() < 3 || toks[1].empty() || toks[1].back() != ':')
        parse_fail(line_no, "expected: fan <puncture>: <end> ...");
      int p = s.puncture_index(toks[1].substr(0, toks[1].size() - 1));
      if (p < 0) parse_fail(line_no, "undeclared puncture in fan");
      if (!s.fans[p].empty()) parse_fail(line_no, "repeated fan for puncture");
      for (size_t i = 2; i < toks.size(); ++i) {
        const std::string& t = toks[i];
        auto dot = t.rfind('.');
        if (dot == std::string::npos || dot + 2 != t.size() ||
            (t[dot + 1] != 't' && t[dot + 1] != 'h'))
          parse_fail(line_no, "end must be <edge>.t or <edge>.h: " + t);
        int e = s.edge_index(t.substr(0, dot));
        if (e < 0) parse_fail(line_no, "undeclared edge " + t.substr(0, dot));
        s.fans[p].push_back(EndRef{e, t[dot + 1] == 'h'});
      }
    } else {
      parse_fail(line_no, "unknown keyword " + kw);
    }
  }
  if (!have_name) throw SurfError("parse", "missing surface line");
  return s;
}

std::string serialize_surface(const MarkedSurface& s) {
  std::ostringstream os;
  os << "surface " << s.name << "\n";
  if (!s.punctures.empty()) {
    os << "puncture";
    for (const auto& p : s.punctures) os << ' ' << p;
    os << "\n";
  }
  for (const auto& e : s.edges)
    os << "edge " << e.name << ' ' << s.punctures[e.tail] << ' '
       << s.punctures[e.head] << "\n";
  for (const auto& f : s.faces) {
    os << "face " << f.name;
    for (const auto& se : f.word)
      os << ' ' << (se.sign > 0 ? '+' : '-') << s.edges[se.edge].name;
    os << "\n";
  }
  for (size_t p = 0; p < s.punctures.size(); ++p) {
    os << "fan " << s.punctures[p] << ':';
    for (const auto& end : s.fans[p])
      os << ' ' << s.edges[end.edge].name << '.' << (end.head ? 'h' : 't');
    os << "\n";
  }
  return os.str();
}

ValidationReport validate(const MarkedSurface& s) {
  ValidationReport rep;
  auto fail = [&](const std::string& m) { rep.violations.push_back(m); };

  // Fan coverage: every end exactly once, in the right puncture's fan.
  for (size_t e = 0; e < s.edges.size(); ++e) {
    for (bool head : {false, true}) {
      EndRef end{static_cast<int>(e), head};
      int want = s.end_puncture(end);
      int total = 0;
      for (size_t p = 0; p < s.punctures.size(); ++p) {
        int c = 0;
        for (const auto& x : s.fans[p])
          if (x == end) ++c;
        if (c > 0 && static_cast<int>(p) != want)
          fail("fan coverage: end " + s.edges[e].name +
               (head ? ".h" : ".t") + " listed at wrong puncture " +
               s.punctures[p]);
        total += c;
      }
      if (total != 1)
        fail("fan coverage: end " + s.edges[e].name + (head ? ".h" : ".t") +
             " appears " + std::to_string(total) + " times");
    }
  }
  for (size_t p = 0; p < s.punctures.size(); ++p) {
    std::set<std::pair<int, bool>> seen;
    for (const auto& x : s.fans[p])
      if (!seen.insert({x.edge, x.head}).second)
        fail("fan coverage: duplicate end in fan of " + s.punctures[p]);
  }

  // Edge/face incidence: every edge in one face (external) or two (internal),
  // counted with multiplicity.
  for (size_t e = 0; e < s.edges.size(); ++e) {
    int m = s.face_multiplicity(static_cast<int>(e));
    if (m != 1 && m != 2)
      fail("edge multiplicity: " + s.edges[e].name + " occurs " +
           std::to_string(m) + " times in face words");
  }

  // Face composability: consecutive letters chain as paths, cyclically.
  for (const auto& f : s.faces) {
    if (f.word.empty()) {
      fail("face composability: empty word in " + f.name);
      continue;
    }
    for (size_t i = f.word.size(); i-- > 0;) {
      // letter at i is traversed before letter at i-1 (composition order).
      const SignedEdge cur = f.word[i];
      const SignedEdge next = f.word[i == 0 ? f.word.size() - 1 : i - 1];
      if (s.traversal_target(cur) != s.traversal_source(next))
        fail("face composability: " + f.name + " breaks after " +
             s.edges[cur.edge].name);
    }
  }

  // Euler characteristic bound (surface with boundary).
  int chi = euler_characteristic(s);
  if (chi > 1)
    fail("euler characteristic: chi = " + std::to_string(chi) + " > 1");

  // Degenerate by decree: disk with fewer than three boundary punctures.
  if (chi == 1 && s.punctures.size() <= 2)
    fail("degenerate-disk: disk with " + std::to_string(s.punctures.size()) +
         " boundary punctures is excluded");

  // Connectivity of the puncture/edge graph (Euler bookkeeping assumes it).
  if (!s.punctures.empty()) {
    std::vector<char> seen(s.punctures.size(), 0);
    std::vector<int> stack{0};
    seen[0] = 1;
    while (!stack.empty()) {
      int p = stack.back();
      stack.pop_back();
      for (const auto& e : s.edges) {
        for (int q : {e.tail, e.head})
          if ((e.tail == p || e.head == p) && !seen[q]) {
            seen[q] = 1;
            stack.push_back(q);
          }
      }
    }
    if (std::find(seen.begin(), seen.end(), 0) != seen.end())
      fail("connectivity: puncture graph is disconnected");
  }

  // Parallel edges sharing both endpoints make fan order the only thing
  // distinguishing them; flag for downstream certification.
  for (size_t e = 0; e < s.edges.size(); ++e)
    for (size_t g = e + 1; g < s.edges.size(); ++g) {
      auto key = [&](const EdgeRec& r) {
        return std::minmax(r.tail, r.head);
      };
      if (key(s.edges[e]) == key(s.edges[g])) {
        rep.flags.push_back("fan-order-sensitive: " + s.edges[e].name + "," +
                            s.edges[g].name);
      }
    }

  return rep;
}

int euler_characteristic(const MarkedSurface& s) {
  return static_cast<int>(s.punctures.size()) -
         static_cast<int>(s.edges.size()) + static_cast<int>(s.faces.size());
}

namespace {

// Rotate a face word cyclically so that the (unique) letter referring to
// `edge` sits leftmost.  Sign of that letter is returned via out.
std::vector<SignedEdge> rotate_word_to_edge(const std::vector<SignedEdge>& w,
                                            int edge, int* sign_out) {
  int pos = -1;
  for (size_t i = 0; i < w.size(); ++i)
    if (w[i].edge == edge) {
      if (pos >= 0)
        throw SurfError("flip", "edge occurs twice in one face");
      pos = static_cast<int>(i);
    }
  if (pos < 0) throw SurfError("flip", "edge not in face");
  std::vector<SignedEdge> out;
  out.reserve(w.size());
  for (size_t i = 0; i < w.size(); ++i)
    out.push_back(w[(pos + i) % w.size()]);
  *sign_out = out[0].sign;
  return out;
}

// Arrival end of a traversal (the end at its target).
EndRef arrival_end(SignedEdge se) {
  return EndRef{se.edge, se.sign > 0};
}
// Departure end of a traversal (the end at its source).
EndRef departure_end(SignedEdge se) {
  return EndRef{se.edge, se.sign < 0};
}

void erase_end(std::vector<EndRef>& fan, EndRef end, const char* what) {
  auto it = std::find(fan.begin(), fan.end(), end);
  if (it == fan.end()) throw SurfError("flip", std::string(what));
  fan.erase(it);
}

// Insert `end` between dep and arr, which must be adjacent in that order.
void insert_between(std::vector<EndRef>& fan, EndRef dep, EndRef arr,
                    EndRef end) {
  auto itd = std::find(fan.begin(), fan.end(), dep);
  auto ita = std::find(fan.begin(), fan.end(), arr);
  if (itd == fan.end() || ita == fan.end() || ita != itd + 1)
    throw SurfError("flip", "quadrilateral corner ends not adjacent in fan");
  fan.insert(ita, end);
}

}  // namespace

MarkedSurface flip_triangulation(const MarkedSurface& s, int diag) {
  if (diag < 0 || diag >= static_cast<int>(s.edges.size()))
    throw SurfError("flip", "no such edge");
  std::vector<int> adj;
  for (size_t i = 0; i < s.faces.size(); ++i)
    for (const auto& se : s.faces[i].word)
      if (se.edge == diag) adj.push_back(static_cast<int>(i));
  if (adj.size() == 1)
    throw SurfError("flip", "edge " + s.edges[diag].name + " is external");
  if (adj.size() != 2 || adj[0] == adj[1])
    throw SurfError("flip", "edge " + s.edges[diag].name +
                                " is not shared by two distinct faces");
  for (int fi : adj)
    if (s.faces[fi].word.size() != 3)
      throw SurfError("flip", "adjacent face " + s.faces[fi].name +
                                  " is not a triangle");
  // Shared-edge count: exactly one shared edge, else the quadrilateral is
  // degenerate.
  {
    std::multiset<int> e0, e1;
    for (const auto& se : s.faces[adj[0]].word) e0.insert(se.edge);
    for (const auto& se : s.faces[adj[1]].word) e1.insert(se.edge);
    int shared = 0;
    for (int e : e0) shared += e1.count(e) ? 1 : 0;
    if (shared != 1)
      throw SurfError("flip", "quadrilateral degenerate: faces share " +
                                  std::to_string(shared) + " edges");
  }

  // Orient: face_r traverses diag against its reference orientation,
  // face_l traverses it along.  Quad corners (A,B,C,D) counterclockwise with
  // diag = A->C, face_r = (A,B,C), face_l = (A,C,D).
  int s0, s1;
  auto w0 = rotate_word_to_edge(s.faces[adj[0]].word, diag, &s0);
  auto w1 = rotate_word_to_edge(s.faces[adj[1]].word, diag, &s1);
  if (s0 == s1)
    throw SurfError("flip", "faces traverse the diagonal the same way");
  const auto& wr = (s0 < 0) ? w0 : w1;  // [-d, r2, r1]
  const auto& wl = (s0 < 0) ? w1 : w0;  // [+d, l2, l1]
  int face_r = (s0 < 0) ? adj[0] : adj[1];
  int face_l = (s0 < 0) ? adj[1] : adj[0];
  SignedEdge r1 = wr[2], r2 = wr[1];  // A->B, B->C
  SignedEdge l1 = wl[2], l2 = wl[1];  // C->D, D->A
  int A = s.edges[diag].tail, C = s.edges[diag].head;
  int B = s.traversal_target(r1);
  int D = s.traversal_target(l1);
  if (s.traversal_source(r1) != A || s.traversal_target(r2) != C ||
      s.traversal_source(l1) != C || s.traversal_target(l2) != A)
    throw SurfError("flip", "face words do not close around the diagonal");

  MarkedSurface out = s;
  // New diagonal B->D keeps the edge record.
  out.edges[diag].tail = B;
  out.edges[diag].head = D;
  SignedEdge dp{diag, 1}, dm{diag, -1};
  // (A,B,D): traverse r1, +d', l2 ; (B,C,D): traverse r2, l1, -d'.
  out.faces[face_r].word = {l2, dp, r1};
  out.faces[face_l].word = {dm, l1, r2};

  // Fans: drop the old diagonal ends, insert the new ones at the corners.
  erase_end(out.fans[A], EndRef{diag, false}, "old diagonal tail not in fan");
  erase_end(out.fans[C], EndRef{diag, true}, "old diagonal head not in fan");
  insert_between(out.fans[B], departure_end(r2), arrival_end(r1),
                 EndRef{diag, false});
  insert_between(out.fans[D], departure_end(l2), arrival_end(l1),
                 EndRef{diag, true});
  return out;
}

ValidationReport validate_symmetry(const SurfaceSymmetry& f,
                                   const MarkedSurface& src,
                                   const MarkedSurface& dst) {
  ValidationReport rep;
  auto fail = [&](const std::string& m) { rep.violations.push_back(m); };
  if (f.punc_map.size() != src.punctures.size() ||
      f.edge_map.size() != src.edges.size() ||
      f.face_map.size() != src.faces.size()) {
    fail("size mismatch");
    return rep;
  }
  auto is_perm = [](std::vector<int> v, size_t n) {
    std::sort(v.begin(), v.end());
    for (size_t i = 0; i < v.size(); ++i)
      if (v[i] != static_cast<int>(i)) return false;
    return v.size() == n;
  };
  std::vector<int> eimg;
  for (auto& se : f.edge_map) eimg.push_back(se.edge);
  if (!is_perm(f.punc_map, dst.punctures.size()) ||
      !is_perm(eimg, dst.edges.size()) ||
      !is_perm(f.face_map, dst.faces.size())) {
    fail("maps are not bijections");
    return rep;
  }
  // Incidence.
  for (size_t e = 0; e < src.edges.size(); ++e) {
    const auto& se = f.edge_map[e];
    int t = f.punc_map[src.edges[e].tail], h = f.punc_map[src.edges[e].head];
    if (se.sign < 0) std::swap(t, h);
    if (dst.edges[se.edge].tail != t || dst.edges[se.edge].head != h)
      fail("incidence broken at edge " + src.edges[e].name);
  }
  auto map_signed = [&](SignedEdge x) {
    SignedEdge y = f.edge_map[x.edge];
    y.sign *= x.sign;
    return y;
  };
  // Face words up to cyclic rotation.
  for (size_t fi = 0; fi < src.faces.size(); ++fi) {
    std::vector<SignedEdge> img;
    for (auto& se : src.faces[fi].word) img.push_back(map_signed(se));
    const auto& w = dst.faces[f.face_map[fi]].word;
    bool match = false;
    if (w.size() == img.size()) {
      for (size_t k = 0; k < w.size() && !match; ++k) {
        bool all = true;
        for (size_t i = 0; i < w.size(); ++i)
          if (w[(i + k) % w.size()] != img[i]) {
            all = false;
            break;
          }
        match = all;
      }
    }
    if (!match) fail("face word not preserved at " + src.faces[fi].name);
  }
  // Fan orders.
  for (size_t p = 0; p < src.punctures.size(); ++p) {
    std::vector<EndRef> img;
    for (auto& end : src.fans[p]) {
      SignedEdge se = f.edge_map[end.edge];
      img.push_back(EndRef{se.edge, se.sign > 0 ? end.head : !end.head});
    }
    if (img != dst.fans[f.punc_map[p]])
      fail("fan order not preserved at " + src.punctures[p]);
  }
  return rep;
}

SurfaceSymmetry compose(const SurfaceSymmetry& second,
                        const SurfaceSymmetry& first) {
  SurfaceSymmetry r;
  for (int p : first.punc_map) r.punc_map.push_back(second.punc_map[p]);
  for (auto se : first.edge_map) {
    SignedEdge t = second.edge_map[se.edge];
    t.sign *= se.sign;
    r.edge_map.push_back(t);
  }
  for (int fc : first.face_map) r.face_map.push_back(second.face_map[fc]);
  return r;
}

bool identity_on_punctures(const SurfaceSymmetry& f) {
  for (size_t i = 0; i < f.punc_map.size(); ++i)
    if (f.punc_map[i] != static_cast<int>(i)) return false;
  return true;
}

SurfaceSymmetry identity_symmetry(const MarkedSurface& s) {
  SurfaceSymmetry f;
  for (size_t i = 0; i < s.punctures.size(); ++i)
    f.punc_map.push_back(static_cast<int>(i));
  for (size_t i = 0; i < s.edges.size(); ++i)
    f.edge_map.push_back(SignedEdge{static_cast<int>(i), 1});
  for (size_t i = 0; i < s.faces.size(); ++i)
    f.face_map.push_back(static_cast<int>(i));
  return f;
}

void derive_fans_from_faces(MarkedSurface& s) {
  struct EndKey {
    int edge;
    bool head;
    bool operator<(const EndKey& o) const {
      return edge != o.edge ? edge < o.edge : head < o.head;
    }
    bool operator==(const EndKey& o) const {
      return edge == o.edge && head == o.head;
    }
  };
  std::vector<std::map<EndKey, EndKey>> succ(s.punctures.size());
  std::vector<std::set<EndKey>> has_pred(s.punctures.size());
  std::vector<std::set<EndKey>> all_ends(s.punctures.size());
  for (size_t e = 0; e < s.edges.size(); ++e) {
    all_ends[s.edges[e].tail].insert(EndKey{static_cast<int>(e), false});
    all_ends[s.edges[e].head].insert(EndKey{static_cast<int>(e), true});
  }
  for (const auto& f : s.faces) {
    const auto& w = f.word;
    const size_t m = w.size();
    for (size_t i = 0; i < m; ++i) {
      // traversal order runs from the back of the stored word
      SignedEdge cur = w[m - 1 - i];
      SignedEdge next = w[(2 * m - 2 - i) % m];
      int p = s.traversal_target(cur);
      if (p != s.traversal_source(next))
        throw SurfError("fans", "face word not composable in " + f.name);
      EndKey arr{cur.edge, cur.sign > 0};
      EndKey dep{next.edge, next.sign < 0};
      auto [it, fresh] = succ[p].insert({dep, arr});
      if (!fresh && !(it->second == arr))
        throw SurfError("fans", "conflicting corner structure at " +
                                    s.punctures[p]);
      has_pred[p].insert(arr);
    }
  }
  s.fans.assign(s.punctures.size(), {});
  for (size_t p = 0; p < s.punctures.size(); ++p) {
    std::vector<EndKey> starts;
    for (const auto& end : all_ends[p])
      if (!has_pred[p].count(end)) starts.push_back(end);
    if (all_ends[p].empty()) continue;
    if (starts.size() != 1)
      throw SurfError("fans", "corner chain at " + s.punctures[p] +
                                  " has " + std::to_string(starts.size()) +
                                  " starts (need a boundary puncture)");
    EndKey cur = starts[0];
    std::set<EndKey> seen;
    while (true) {
      if (!seen.insert(cur).second)
        throw SurfError("fans", "corner chain cycles at " + s.punctures[p]);
      s.fans[p].push_back(EndRef{cur.edge, cur.head});
      auto it = succ[p].find(cur);
      if (it == succ[p].end()) break;
      cur = it->second;
    }
    if (s.fans[p].size() != all_ends[p].size())
      throw SurfError("fans", "corner chain at " + s.punctures[p] +
                                  " does not cover all ends");
  }
}

std::optional<SurfaceSymmetry> find_puncture_fixing_isomorphism(
    const MarkedSurface& src, const MarkedSurface& dst) {
  if (src.punctures != dst.punctures || src.edges.size() != dst.edges.size() ||
      src.faces.size() != dst.faces.size())
    return std::nullopt;
  SurfaceSymmetry f;
  f.punc_map.resize(src.punctures.size());
  for (size_t i = 0; i < src.punctures.size(); ++i)
    f.punc_map[i] = static_cast<int>(i);
  // Edge map: match by endpoints; among parallel candidates, respect fan
  // order by matching positionally within each fan.  Surfaces here are small;
  // try candidate assignments greedily and verify at the end.
  f.edge_map.assign(src.edges.size(), SignedEdge{-1, 1});
  std::vector<char> used(dst.edges.size(), 0);
  for (size_t e = 0; e < src.edges.size(); ++e) {
    for (size_t g = 0; g < dst.edges.size(); ++g) {
      if (used[g]) continue;
      if (src.edges[e].tail == dst.edges[g].tail &&
          src.edges[e].head == dst.edges[g].head) {
        f.edge_map[e] = SignedEdge{static_cast<int>(g), 1};
        used[g] = 1;
        break;
      }
      if (src.edges[e].tail == dst.edges[g].head &&
          src.edges[e].head == dst.edges[g].tail) {
        f.edge_map[e] = SignedEdge{static_cast<int>(g), -1};
        used[g] = 1;
        break;
      }
    }
    if (f.edge_map[e].edge < 0) return std::nullopt;
  }
  // Face map by image word match up to rotation.
  f.face_map.assign(src.faces.size(), -1);
  std::vector<char> fused(dst.faces.size(), 0);
  for (size_t fi = 0; fi < src.faces.size(); ++fi) {
    std::vector<SignedEdge> img;
    for (auto& se : src.faces[fi].word) {
      SignedEdge t = f.edge_map[se.edge];
      t.sign *= se.sign;
      img.push_back(t);
    }
    for (size_t gj = 0; gj < dst.faces.size(); ++gj) {
      if (fused[gj] || dst.faces[gj].word.size() != img.size()) continue;
      bool match = false;
      for (size_t k = 0; k < img.size() && !match; ++k) {
        bool all = true;
        for (size_t i = 0; i < img.size(); ++i)
          if (dst.faces[gj].word[(i + k) % img.size()] != img[i]) {
            all = false;
            break;
          }
        match = all;
      }
      if (match) {
        f.face_map[fi] = static_cast<int>(gj);
        fused[gj] = 1;
        break;
      }
    }
    if (f.face_map[fi] < 0) return std::nullopt;
  }
  if (!validate_symmetry(f, src, dst).ok()) return std::nullopt;
  return f;
}

}  // namespace surfalg
