#include "covering.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

namespace surfalg {

namespace {

// Union-find over small integer sets.
struct DSU {
  std::vector<int> parent;
  explicit DSU(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(int a, int b) { parent[find(a)] = find(b); }
};

struct SideBlack {
  CellRef ender;    // cell of the zigzag ending at this black point
  CellRef starter;  // cell of the zigzag starting here
  Segment arc;      // the side arc crossing next to it
};

// Data of side i at black index k (1..n counted from the side's first
// corner), for sheet count n.
SideBlack side_black(int tri, int side, int k, int n) {
  SideBlack b;
  switch (side) {
    case 0:
      b.ender = CellRef{tri, 0, k};
      b.starter = CellRef{tri, 1, k - 1};
      b.arc = Segment{tri, k, 1, 1};
      break;
    case 1:
      b.ender = CellRef{tri, 1, n - k};
      b.starter = CellRef{tri, 2, k};
      b.arc = Segment{tri, n, k, 2};
      break;
    default:
      b.ender = CellRef{tri, 2, n + 1 - k};
      b.starter = CellRef{tri, 0, n + 1 - k};
      b.arc = Segment{tri, n + 1 - k, n + 1 - k, 0};
      break;
  }
  return b;
}

// The two cells separated by a segment.
std::array<CellRef, 2> segment_cells(const Segment& g) {
  switch (g.spoke) {
    case 0:
      return {CellRef{g.tri, 0, g.t}, CellRef{g.tri, 2, g.s}};
    case 1:
      return {CellRef{g.tri, 0, g.t}, CellRef{g.tri, 1, g.t - g.s}};
    default:
      return {CellRef{g.tri, 1, g.t - g.s}, CellRef{g.tri, 2, g.s}};
  }
}

}  // namespace

CoveringData build_covering(const MarkedSurface& base, int n) {
  if (n < 2) throw SurfError("covering", "sheet count must be at least 2");
  for (const auto& f : base.faces)
    if (f.word.size() != 3)
      throw SurfError("covering", "face " + f.name + " is not a triangle");
  for (size_t p = 0; p < base.punctures.size(); ++p) {
    bool on_boundary = false;
    for (size_t e = 0; e < base.edges.size(); ++e)
      if ((base.edges[e].tail == static_cast<int>(p) ||
           base.edges[e].head == static_cast<int>(p)) &&
          base.face_multiplicity(static_cast<int>(e)) == 1)
        on_boundary = true;
    if (!on_boundary)
      throw SurfError("covering",
                      "internal puncture " + base.punctures[p] +
                          " is not supported by the covering construction");
  }

  CoveringData cov;
  cov.base = base;
  cov.n = n;
  const int nt = static_cast<int>(base.faces.size());

  // Per-triangle scaffolds.  Corners are read off the face word and rotated
  // so that corner 0 has the smallest puncture index; this pins sheet labels.
  for (int fi = 0; fi < nt; ++fi) {
    const auto& w = base.faces[fi].word;
    std::array<SignedEdge, 3> trav{w[2], w[1], w[0]};  // traversal order
    std::array<int, 3> corner{base.traversal_source(trav[0]),
                              base.traversal_source(trav[1]),
                              base.traversal_source(trav[2])};
    if (base.traversal_target(trav[2]) != corner[0])
      throw SurfError("covering", "face word of " + base.faces[fi].name +
                                      " does not close");
    int rot = 0;
    for (int i = 1; i < 3; ++i)
      if (corner[i] < corner[rot]) rot = i;
    TriScaffold tri;
    tri.face = fi;
    for (int i = 0; i < 3; ++i) {
      tri.corner[i] = corner[(rot + i) % 3];
      tri.side[i] = trav[(rot + i) % 3];
    }
    tri.whites = n * (n + 1) / 2;
    tri.interior_blacks = n * (n - 1) / 2;
    tri.edge_blacks_per_side = n;
    // zigzags: family 0 runs left side -> bottom, 1 bottom -> right,
    // 2 right -> left, turning right at whites and left at blacks.
    tri.zigzags[0].resize(n);
    for (int t = 1; t <= n; ++t)
      for (int s = t; s >= 1; --s) {
        tri.zigzags[0][t - 1].push_back(Segment{fi, t, s, 0});
        tri.zigzags[0][t - 1].push_back(Segment{fi, t, s, 1});
      }
    tri.zigzags[1].resize(n);
    for (int d = 0; d < n; ++d)
      for (int s = 1; s <= n - d; ++s) {
        tri.zigzags[1][d].push_back(Segment{fi, d + s, s, 1});
        tri.zigzags[1][d].push_back(Segment{fi, d + s, s, 2});
      }
    tri.zigzags[2].resize(n);
    for (int s = 1; s <= n; ++s)
      for (int t = n; t >= s; --t) {
        tri.zigzags[2][s - 1].push_back(Segment{fi, t, s, 2});
        tri.zigzags[2][s - 1].push_back(Segment{fi, t, s, 0});
      }
    cov.tris.push_back(std::move(tri));

    for (int t = 2; t <= n; ++t)
      for (int s = 1; s < t; ++s)
        cov.ramification.push_back(Segment{fi, t, s, -1});
  }

  auto gid = [&](const CellRef& c) {
    return c.tri * cov.local_cells() + cov.cell_local_id(c.family, c.index);
  };
  auto cell_corner = [&](const CellRef& c) {
    return cov.tris[c.tri].corner[c.family];
  };

  // Incidences of base edges.
  struct Incidence {
    int tri;
    int side;
    int sign;
  };
  std::vector<std::vector<Incidence>> inc(base.edges.size());
  for (int fi = 0; fi < nt; ++fi)
    for (int i = 0; i < 3; ++i) {
      SignedEdge se = cov.tris[fi].side[i];
      inc[se.edge].push_back(Incidence{fi, i, se.sign});
    }

  // Glue cells across internal edges; record the side-arc identifications.
  DSU cells(nt * cov.local_cells());
  std::map<std::array<int, 4>, Segment> arc_alias;  // segment key -> canonical
  auto seg_key = [](const Segment& g) {
    return std::array<int, 4>{g.tri, g.t, g.s, g.spoke};
  };
  for (size_t e = 0; e < base.edges.size(); ++e) {
    if (inc[e].size() == 1) continue;
    if (inc[e].size() != 2)
      throw SurfError("covering", "edge " + base.edges[e].name +
                                      " has bad face multiplicity");
    const Incidence &ia = inc[e][0], &ib = inc[e][1];
    if (ia.sign == ib.sign)
      throw SurfError("covering",
                      "edge " + base.edges[e].name +
                          " traversed twice in the same direction");
    for (int ke = 1; ke <= n; ++ke) {
      int ka = ia.sign > 0 ? ke : n + 1 - ke;
      int kb = ib.sign > 0 ? ke : n + 1 - ke;
      SideBlack a = side_black(ia.tri, ia.side, ka, n);
      SideBlack b = side_black(ib.tri, ib.side, kb, n);
      cells.unite(gid(a.ender), gid(b.starter));
      cells.unite(gid(b.ender), gid(a.starter));
      // The crossing arcs on the two sides are the same cover edge.
      Segment canon = std::min(a.arc, b.arc, [](const Segment& x,
                                                const Segment& y) {
        return std::array<int, 4>{x.tri, x.t, x.s, x.spoke} <
               std::array<int, 4>{y.tri, y.t, y.s, y.spoke};
      });
      arc_alias[seg_key(a.arc)] = canon;
      arc_alias[seg_key(b.arc)] = canon;
    }
  }

  // Puncture lifts: one per cell class.  Order classes by base puncture then
  // by smallest member cell.
  std::map<int, std::vector<int>> class_members;  // root -> cells
  for (int fi = 0; fi < nt; ++fi)
    for (int fam = 0; fam < 3; ++fam)
      for (int idx = (fam == 1 ? 0 : 1); idx <= (fam == 1 ? n - 1 : n); ++idx) {
        CellRef c{fi, fam, idx};
        class_members[cells.find(gid(c))].push_back(gid(c));
      }
  struct LiftClass {
    int base_punc;
    int min_cell;
    int root;
  };
  std::vector<LiftClass> classes;
  for (auto& [root, members] : class_members) {
    std::sort(members.begin(), members.end());
    CellRef any{members[0] / cov.local_cells(), 0, 0};
    // recover family/index of the representative
    int local = members[0] % cov.local_cells();
    any.family = local / n;
    any.index = any.family == 1 ? local % n : local % n + 1;
    int bp = cell_corner(any);
    for (int m : members) {
      CellRef c{m / cov.local_cells(), 0, 0};
      int loc = m % cov.local_cells();
      c.family = loc / n;
      c.index = c.family == 1 ? loc % n : loc % n + 1;
      if (cell_corner(c) != bp)
        throw SurfError("covering", "inconsistent lift class");
    }
    classes.push_back(LiftClass{bp, members[0], root});
  }
  std::sort(classes.begin(), classes.end(),
            [](const LiftClass& a, const LiftClass& b) {
              return std::tie(a.base_punc, a.min_cell) <
                     std::tie(b.base_punc, b.min_cell);
            });
  std::map<int, int> root_to_lift;
  cov.fiber.assign(base.punctures.size(), {});
  for (const auto& cl : classes) {
    int lift = static_cast<int>(cov.cover_punc_base.size());
    root_to_lift[cl.root] = lift;
    cov.cover_punc_base.push_back(cl.base_punc);
    cov.fiber[cl.base_punc].push_back(lift);
    cov.cover.punctures.push_back(
        base.punctures[cl.base_punc] + "_" +
        std::to_string(cov.fiber[cl.base_punc].size()));
  }
  for (size_t p = 0; p < base.punctures.size(); ++p)
    if (static_cast<int>(cov.fiber[p].size()) != n)
      throw SurfError("covering", "puncture " + base.punctures[p] + " has " +
                                      std::to_string(cov.fiber[p].size()) +
                                      " lifts, expected " + std::to_string(n));
  cov.cell_lift.assign(nt, std::vector<int>(cov.local_cells(), -1));
  for (int fi = 0; fi < nt; ++fi)
    for (int loc = 0; loc < cov.local_cells(); ++loc)
      cov.cell_lift[fi][loc] =
          root_to_lift.at(cells.find(fi * cov.local_cells() + loc));

  auto lift_of_cell = [&](const CellRef& c) {
    return cov.cell_lift[c.tri][cov.cell_local_id(c.family, c.index)];
  };

  // Cover edges.  Side arcs exist for every n; interior (diagonal) arcs only
  // enter the emitted decomposition for n >= 3.
  std::map<std::array<int, 4>, int> arc_of_segment;
  auto canon_seg = [&](const Segment& g) {
    auto it = arc_alias.find(seg_key(g));
    return it == arc_alias.end() ? g : it->second;
  };
  cov.lifts_of_edge.assign(base.edges.size(), {});
  auto add_cover_edge = [&](const Segment& canon, int base_edge, int tail_lift,
                            int head_lift, const std::string& name) {
    int id = static_cast<int>(cov.cover.edges.size());
    arc_of_segment[seg_key(canon)] = id;
    cov.cover.edges.push_back(EdgeRec{name, tail_lift, head_lift});
    cov.cover_edge_base.push_back(base_edge);
    if (base_edge >= 0) cov.lifts_of_edge[base_edge].push_back(id);
    return id;
  };

  for (size_t e = 0; e < base.edges.size(); ++e) {
    const Incidence& ia = inc[e][0];
    for (int ke = 1; ke <= n; ++ke) {
      int ka = ia.sign > 0 ? ke : n + 1 - ke;
      SideBlack a = side_black(ia.tri, ia.side, ka, n);
      // the ender cell holds the lift of the side's first corner, the
      // starter cell the second; the tail lift lies over e's base tail
      int first_lift = lift_of_cell(a.ender);
      int second_lift = lift_of_cell(a.starter);
      int tail_lift = ia.sign > 0 ? first_lift : second_lift;
      int head_lift = ia.sign > 0 ? second_lift : first_lift;
      add_cover_edge(canon_seg(a.arc), static_cast<int>(e), tail_lift,
                     head_lift,
                     base.edges[e].name + "_" + std::to_string(ke));
    }
  }

  if (n >= 3) {
    for (int fi = 0; fi < nt; ++fi)
      for (int t = 1; t <= n; ++t)
        for (int s = 1; s <= t; ++s)
          for (int spoke = 0; spoke < 3; ++spoke) {
            Segment g{fi, t, s, spoke};
            if (arc_of_segment.count(seg_key(canon_seg(g)))) continue;
            auto cc = segment_cells(g);
            std::string name = base.faces[fi].name + "_w" +
                               std::to_string(t) + "_" + std::to_string(s) +
                               "_" + char('a' + spoke);
            add_cover_edge(g, -1, lift_of_cell(cc[0]), lift_of_cell(cc[1]),
                           name);
          }
  }

  // Faces: walk corner cycles and spell signed words (stored leftmost-last).
  auto make_face = [&](const std::string& name,
                       const std::vector<CellRef>& corners,
                       const std::vector<Segment>& arcs) {
    Face f;
    f.name = name;
    const size_t m = corners.size();
    std::vector<SignedEdge> traversal;
    for (size_t i = 0; i < m; ++i) {
      int eid = arc_of_segment.at(seg_key(canon_seg(arcs[i])));
      int from = lift_of_cell(corners[i]);
      int to = lift_of_cell(corners[(i + 1) % m]);
      const EdgeRec& rec = cov.cover.edges[eid];
      int sign;
      if (rec.tail == from && rec.head == to)
        sign = 1;
      else if (rec.head == from && rec.tail == to)
        sign = -1;
      else
        throw SurfError("covering", "face walk endpoint mismatch at " + name);
      traversal.push_back(SignedEdge{eid, sign});
    }
    f.word.assign(traversal.rbegin(), traversal.rend());
    cov.cover.faces.push_back(std::move(f));
  };

  if (n == 2) {
    for (int fi = 0; fi < nt; ++fi) {
      std::vector<CellRef> corners{{fi, 0, 1}, {fi, 1, 0}, {fi, 2, 2},
                                   {fi, 0, 2}, {fi, 1, 1}, {fi, 2, 1}};
      std::vector<Segment> arcs{{fi, 1, 1, 1}, {fi, 2, 2, 2}, {fi, 2, 2, 0},
                                {fi, 2, 1, 1}, {fi, 2, 1, 2}, {fi, 1, 1, 0}};
      make_face(base.faces[fi].name + "_hex", corners, arcs);
    }
  } else {
    for (int fi = 0; fi < nt; ++fi) {
      for (int t = 1; t <= n; ++t)
        for (int s = 1; s <= t; ++s) {
          std::vector<CellRef> corners{
              {fi, 0, t}, {fi, 1, t - s}, {fi, 2, s}};
          std::vector<Segment> arcs{
              {fi, t, s, 1}, {fi, t, s, 2}, {fi, t, s, 0}};
          make_face(base.faces[fi].name + "_w" + std::to_string(t) + "_" +
                        std::to_string(s),
                    corners, arcs);
        }
      for (int t = 2; t <= n; ++t)
        for (int s = 1; s < t; ++s) {
          std::vector<CellRef> corners{{fi, 2, s},     {fi, 0, t},
                                       {fi, 1, t - s - 1}, {fi, 2, s},
                                       {fi, 0, t},     {fi, 1, t - s - 1}};
          std::vector<Segment> arcs{{fi, t, s, 0},     {fi, t, s + 1, 1},
                                    {fi, t - 1, s, 2}, {fi, t, s, 0},
                                    {fi, t, s + 1, 1}, {fi, t - 1, s, 2}};
          make_face(base.faces[fi].name + "_b" + std::to_string(t) + "_" +
                        std::to_string(s),
                    corners, arcs);
        }
    }
  }

  cov.cover.name = base.name + "_cover" + std::to_string(n);

  // For two sheets, re-orient every edge from a white lift to a black lift;
  // the lifted decomposition is bipartite and this matches the labeling the
  // mutation formulas use.
  if (n == 2) {
    const int np = static_cast<int>(cov.cover.punctures.size());
    std::vector<std::vector<std::pair<int, int>>> adj(np);  // (other, edge)
    for (size_t eid = 0; eid < cov.cover.edges.size(); ++eid) {
      const auto& rec = cov.cover.edges[eid];
      adj[rec.tail].push_back({rec.head, static_cast<int>(eid)});
      adj[rec.head].push_back({rec.tail, static_cast<int>(eid)});
    }
    cov.is_white.assign(np, -1);
    std::vector<int> stack;
    for (int seed = 0; seed < np; ++seed) {
      if (cov.is_white[seed] != -1) continue;
      cov.is_white[seed] = 1;
      stack.push_back(seed);
      while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        for (auto [w, eid] : adj[v]) {
          (void)eid;
          if (cov.is_white[w] == -1) {
            cov.is_white[w] = cov.is_white[v] ? 0 : 1;
            stack.push_back(w);
          } else if (cov.is_white[w] == cov.is_white[v]) {
            throw SurfError("covering",
                            "two-sheeted cover is not bipartite; cannot "
                            "orient edges white to black");
          }
        }
      }
    }
    for (auto& rec : cov.cover.edges)
      if (!cov.is_white[rec.tail]) {
        std::swap(rec.tail, rec.head);
        // flip every face-word sign referring to this edge
        int eid = static_cast<int>(&rec - cov.cover.edges.data());
        for (auto& fc : cov.cover.faces)
          for (auto& se : fc.word)
            if (se.edge == eid) se.sign = -se.sign;
      }
  }

  derive_fans_from_faces(cov.cover);

  ValidationReport vr = validate(cov.cover);
  if (!vr.ok())
    throw SurfError("covering", "constructed cover fails validation:\n" +
                                    vr.to_string());
  return cov;
}

std::string render_covering_map(const CoveringData& c) {
  std::ostringstream os;
  for (size_t e = 0; e < c.base.edges.size(); ++e) {
    os << "lift " << c.base.edges[e].name << " ->";
    for (int id : c.lifts_of_edge[e]) os << ' ' << c.cover.edges[id].name;
    os << "\n";
  }
  for (size_t p = 0; p < c.base.punctures.size(); ++p) {
    os << "fiber " << c.base.punctures[p] << " ->";
    for (int l : c.fiber[p]) os << ' ' << c.cover.punctures[l];
    os << "\n";
  }
  os << "ram " << c.ramification.size() << "\n";
  return os.str();
}

SurfaceSymmetry deck_involution(const CoveringData& c) {
  if (c.n != 2)
    throw SurfError("covering", "deck involution requires two sheets");
  SurfaceSymmetry f;
  f.punc_map.assign(c.cover.punctures.size(), -1);
  for (const auto& lifts : c.fiber) {
    f.punc_map[lifts[0]] = lifts[1];
    f.punc_map[lifts[1]] = lifts[0];
  }
  f.edge_map.assign(c.cover.edges.size(), SignedEdge{-1, 1});
  for (const auto& lifts : c.lifts_of_edge) {
    for (int round = 0; round < 2; ++round) {
      int a = lifts[round], b = lifts[1 - round];
      const auto& ra = c.cover.edges[a];
      const auto& rb = c.cover.edges[b];
      int sign;
      if (f.punc_map[ra.tail] == rb.tail && f.punc_map[ra.head] == rb.head)
        sign = 1;
      else if (f.punc_map[ra.tail] == rb.head &&
               f.punc_map[ra.head] == rb.tail)
        sign = -1;
      else
        throw SurfError("covering", "deck involution endpoint mismatch");
      f.edge_map[a] = SignedEdge{b, sign};
    }
  }
  f.face_map.resize(c.cover.faces.size());
  std::iota(f.face_map.begin(), f.face_map.end(), 0);
  return f;
}

namespace {

void require_cover_ctx(const CoveringData& c, const Ctx& ctx) {
  if (ctx->surface().name != c.cover.name ||
      ctx->surface().edges.size() != c.cover.edges.size())
    throw SurfError("mismatch", "element is not over this cover");
}

}  // namespace

AlgebraElement deck_anti_involution(const CoveringData& c, int sign,
                                    const AlgebraElement& x) {
  require_cover_ctx(c, x.ctx());
  SurfaceSymmetry theta = deck_involution(c);
  AlgebraElement out(x.ctx());
  const Rational fiber = x.ctx()->fiber_scalar();
  for (const auto& [w, coeff] : x.terms()) {
    Rational cf = coeff;
    Word img;
    // anti-multiplicative: reverse the letters, (theta . g)^(-1) each
    for (auto it = w.rbegin(); it != w.rend(); ++it) {
      SignedEdge m = theta.edge_map[it->edge];
      if (m.sign < 0) cf *= fiber;
      if (sign < 0) cf = -cf;
      img.push_back(Letter{m.edge, static_cast<int8_t>(-m.sign * it->exp)});
    }
    out.add_term(cf, img);
  }
  return out;
}

Tensor2 deck_anti_involution(const CoveringData& c, int sign,
                             const Tensor2& t) {
  require_cover_ctx(c, t.ctx());
  Tensor2 out(t.ctx());
  for (const auto& [k, coeff] : t.terms()) {
    AlgebraElement a =
        deck_anti_involution(c, sign, AlgebraElement::from_word(t.ctx(), k[0]));
    AlgebraElement b =
        deck_anti_involution(c, sign, AlgebraElement::from_word(t.ctx(), k[1]));
    // slots swap
    for (const auto& [wb, cb] : b.terms())
      for (const auto& [wa, ca] : a.terms())
        out.add_term(coeff * ca * cb, wb, wa);
  }
  return out;
}

}  // namespace surfalg
