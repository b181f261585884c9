#include "isogreen/graph.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <map>
#include <set>

namespace isogreen {

namespace {

constexpr double kPi = 3.14159265358979323846;

double cross(Vec2 a, Vec2 b) { return a.real() * b.imag() - a.imag() * b.real(); }
double dot(Vec2 a, Vec2 b) { return a.real() * b.real() + a.imag() * b.imag(); }

std::int64_t cell_key(double x, double y) {
  const auto cx = static_cast<std::int64_t>(std::floor(x));
  const auto cy = static_cast<std::int64_t>(std::floor(y));
  return ((cx & 0xFFFFFFFFll) << 32) | (cy & 0xFFFFFFFFll);
}

}  // namespace

int lift_l1(const LiftVector& a, const LiftVector& b) {
  int s = 0;
  for (int j = 0; j < kMaxTrackDirections; ++j) s += std::abs(a[j] - b[j]);
  return s;
}

int StepMultiset::l1() const {
  int s = 0;
  for (int j = 0; j < d; ++j) s += std::abs(steps[j]);
  return s;
}

Direction Direction::negated() const {
  Direction r = *this;
  for (int j = 0; j < d; ++j) r.n[j] = -r.n[j];
  return r;
}

double Direction::l1() const {
  double s = 0.0;
  for (int j = 0; j < d; ++j) s += std::abs(n[j]);
  return s;
}

Direction direction_from_steps(const StepMultiset& s) {
  const int N = s.l1();
  if (N == 0) throw DomainError("direction_from_steps: zero displacement");
  Direction r;
  r.d = s.d;
  for (int j = 0; j < s.d; ++j) r.n[j] = static_cast<double>(s.steps[j]) / N;
  return r;
}

Direction DirectionMap::at_angle(double phi) const {
  const double cx = std::cos(phi), cy = std::sin(phi);
  Direction r;
  r.d = d;
  double l1 = 0.0;
  for (int j = 0; j < d; ++j) {
    r.n[j] = rows[j][0] * cx + rows[j][1] * cy;
    l1 += std::abs(r.n[j]);
  }
  if (l1 < 1e-14) throw DomainError("DirectionMap: degenerate direction");
  for (int j = 0; j < d; ++j) r.n[j] /= l1;
  return r;
}

void IsoradialGraph::finalize() {
  if (d_ < 1 || d_ > kMaxTrackDirections)
    throw DomainError("graph: track direction count out of range");
  for (int j = 0; j + 1 < d_; ++j)
    if (!(track_angles_[j] < track_angles_[j + 1]))
      throw DomainError("graph: track angles must be strictly ordered");
  if (!(track_angles_[d_ - 1] < track_angles_[0] + kPi))
    throw DomainError("graph: track angles must fit in a half turn");

  // drop diamond vertices that sit on no rhombus (isolated window corners)
  {
    std::vector<char> used(pos_.size(), 0);
    for (const Rhombus& r : rhombi_)
      for (int c : r.corner) used[c] = 1;
    std::vector<int> remap(pos_.size(), -1);
    int next = 0;
    for (std::size_t i = 0; i < pos_.size(); ++i)
      if (used[i]) remap[i] = next++;
    if (next != static_cast<int>(pos_.size())) {
      std::vector<Vec2> pos2(next);
      std::vector<char> primal2(next);
      for (std::size_t i = 0; i < pos_.size(); ++i)
        if (remap[i] >= 0) {
          pos2[remap[i]] = pos_[i];
          primal2[remap[i]] = primal_[i];
        }
      pos_ = std::move(pos2);
      primal_ = std::move(primal2);
      for (Rhombus& r : rhombi_)
        for (int& c : r.corner) c = remap[c];
      if (periodic_) {
        PeriodicStructure ps;
        ps.domain_size = periodic_->domain_size;
        ps.t1 = periodic_->t1;
        ps.t2 = periodic_->t2;
        ps.coords.assign(next, {-1, 0, 0});
        for (std::size_t i = 0; i < periodic_->coords.size(); ++i)
          if (remap[i] >= 0) ps.coords[remap[i]] = periodic_->coords[i];
        for (const auto& [key, id] : periodic_->vertex_index)
          if (remap[id] >= 0) ps.vertex_index[key] = remap[id];
        periodic_ = std::move(ps);
      }
    }
  }

  const int n = diamond_vertex_count();

  adj_.assign(n, {});
  std::set<std::pair<int, int>> seen;
  auto classify_step = [&](Vec2 v) -> std::pair<int, int> {
    for (int f = 0; f < d_; ++f) {
      const Vec2 e(std::cos(track_angles_[f]), std::sin(track_angles_[f]));
      if (std::abs(v - e) < 1e-6) return {f, +1};
      if (std::abs(v + e) < 1e-6) return {f, -1};
    }
    throw DomainError("graph: diamond step matches no track direction");
  };
  for (auto& r : rhombi_) {
    if (!primal_[r.corner[0]])
      std::rotate(r.corner.begin(), r.corner.begin() + 1, r.corner.end());
    for (int s = 0; s < 4; ++s) {
      const int a = r.corner[s], b = r.corner[(s + 1) % 4];
      const auto key = std::minmax(a, b);
      if (!seen.insert(key).second) continue;
      const auto [fam, sign] = classify_step(pos_[b] - pos_[a]);
      adj_[a].push_back({b, fam, sign});
      adj_[b].push_back({a, fam, -sign});
    }
  }

  reference_ = -1;
  double best = 1e300;
  for (int i = 0; i < n; ++i) {
    if (!primal_[i]) continue;
    const double d2 = std::norm(pos_[i]);
    if (d2 < best) {
      best = d2;
      reference_ = i;
    }
  }
  if (reference_ < 0) throw DomainError("graph: no primal vertices");

  lift_.assign(n, LiftVector{});
  std::vector<char> visited(n, 0);
  std::deque<int> queue{reference_};
  visited[reference_] = 1;
  while (!queue.empty()) {
    const int v = queue.front();
    queue.pop_front();
    for (const DiamondStep& st : adj_[v]) {
      if (visited[st.to]) continue;
      visited[st.to] = 1;
      lift_[st.to] = lift_[v];
      lift_[st.to][st.family] += st.sign;
      queue.push_back(st.to);
    }
  }
  for (int i = 0; i < n; ++i)
    if (!visited[i]) throw DomainError("graph: diamond graph is disconnected");

  primal_ids_.clear();
  for (int i = 0; i < n; ++i)
    if (primal_[i]) primal_ids_.push_back(i);

  edges_.clear();
  edges_at_.assign(n, {});
  std::vector<double> angle_sum(n, 0.0);
  for (int ri = 0; ri < static_cast<int>(rhombi_.size()); ++ri) {
    const Rhombus& r = rhombi_[ri];
    const int p0 = r.corner[0], d1 = r.corner[1], p1 = r.corner[2],
              d2 = r.corner[3];
    Vec2 u1 = pos_[d1] - pos_[p0];
    Vec2 u2 = pos_[d2] - pos_[p0];
    if (cross(u1, u2) < 0.0) std::swap(u1, u2);
    const double two_theta = std::atan2(cross(u1, u2), dot(u1, u2));
    PrimalEdge e;
    e.x = p0;
    e.y = p1;
    e.theta_bar = 0.5 * two_theta;
    e.alpha_bar = std::atan2(u1.imag(), u1.real());
    e.beta_bar = e.alpha_bar + two_theta;
    e.rhombus = ri;
    const int ei = static_cast<int>(edges_.size());
    edges_.push_back(e);
    edges_at_[p0].push_back(ei);
    edges_at_[p1].push_back(ei);
    for (int s = 0; s < 4; ++s)
      angle_sum[r.corner[s]] += (s % 2 == 0) ? two_theta : kPi - two_theta;
  }

  interior_.assign(n, 0);
  for (int i = 0; i < n; ++i)
    interior_[i] = std::abs(angle_sum[i] - 2.0 * kPi) < 1e-6;

  index_points();
}

void IsoradialGraph::index_points() {
  cells_.clear();
  for (int i = 0; i < diamond_vertex_count(); ++i)
    cells_[cell_key(pos_[i].real(), pos_[i].imag())].push_back(i);
}

int IsoradialGraph::nearest_impl(Vec2 p, bool primal_only) const {
  int best = -1;
  double best_d = 1e300;
  const auto px = static_cast<std::int64_t>(std::floor(p.real()));
  const auto py = static_cast<std::int64_t>(std::floor(p.imag()));
  for (std::int64_t ring = 0; ring < 1 << 14; ++ring) {
    if (best >= 0 && static_cast<double>(ring - 1) > best_d) break;
    for (std::int64_t cx = px - ring; cx <= px + ring; ++cx) {
      for (std::int64_t cy = py - ring; cy <= py + ring; ++cy) {
        if (std::max(std::abs(cx - px), std::abs(cy - py)) != ring) continue;
        const auto it = cells_.find((cell_key(static_cast<double>(cx) + 0.5,
                                              static_cast<double>(cy) + 0.5)));
        if (it == cells_.end()) continue;
        for (int id : it->second) {
          if (primal_only && !primal_[id]) continue;
          const double d = std::abs(pos_[id] - p);
          if (d < best_d) {
            best_d = d;
            best = id;
          }
        }
      }
    }
  }
  if (best < 0) throw DomainError("nearest vertex query missed the window");
  return best;
}

int IsoradialGraph::nearest_primal(Vec2 p) const { return nearest_impl(p, true); }
int IsoradialGraph::nearest_diamond(Vec2 p) const { return nearest_impl(p, false); }

StepMultiset IsoradialGraph::minimal_path(int x, int y) const {
  if (x < 0 || y < 0 || x >= diamond_vertex_count() ||
      y >= diamond_vertex_count())
    throw DomainError("minimal_path: vertex outside the window");
  StepMultiset s;
  s.d = d_;
  for (int j = 0; j < d_; ++j) s.steps[j] = lift_[y][j] - lift_[x][j];
  return s;
}

Direction IsoradialGraph::reduced_coords(int x, int y) const {
  if (x == y) throw DomainError("reduced_coords: coincident vertices");
  return direction_from_steps(minimal_path(x, y));
}

std::vector<int> IsoradialGraph::shortest_diamond_path(int x, int y) const {
  std::vector<int> parent(diamond_vertex_count(), -1);
  std::deque<int> queue{x};
  parent[x] = x;
  while (!queue.empty()) {
    const int v = queue.front();
    queue.pop_front();
    if (v == y) break;
    for (const DiamondStep& st : adj_[v]) {
      if (parent[st.to] >= 0) continue;
      parent[st.to] = v;
      queue.push_back(st.to);
    }
  }
  if (parent[y] < 0) throw DomainError("shortest_diamond_path: unreachable");
  std::vector<int> path{y};
  while (path.back() != x) path.push_back(parent[path.back()]);
  std::reverse(path.begin(), path.end());
  return path;
}

bool IsoradialGraph::flippable(int id) const {
  if (id < 0 || id >= diamond_vertex_count()) return false;
  return interior_[id] && adj_[id].size() == 3;
}

IsoradialGraph IsoradialGraph::star_triangle_flip(int id) const {
  if (!flippable(id))
    throw DomainError("star_triangle_flip: site is not a flippable hexagon center");

  // The three rhombi at the center tile a hexagon. The flip pushes the
  // center across the cube: h' = h + delta_a + delta_b + delta_c, and the
  // hexagon is re-tiled by the three complementary rhombi.
  const std::vector<DiamondStep>& steps = adj_[id];
  Vec2 delta(0, 0);
  LiftVector new_lift = lift_[id];
  for (const DiamondStep& st : steps) {
    delta += pos_[st.to] - pos_[id];
    new_lift[st.family] += st.sign;
  }

  std::map<std::pair<int, int>, int> far_of;  // {u_i,u_j} -> far corner w_ij
  for (const Rhombus& r : rhombi_) {
    for (int s = 0; s < 4; ++s) {
      if (r.corner[s] != id) continue;
      const int u1 = r.corner[(s + 1) % 4], u2 = r.corner[(s + 3) % 4];
      far_of[std::minmax(u1, u2)] = r.corner[(s + 2) % 4];
    }
  }
  if (far_of.size() != 3)
    throw DomainError("star_triangle_flip: center is not on exactly 3 rhombi");

  IsoradialGraph g = *this;
  g.pos_[id] = pos_[id] + delta;
  g.lift_[id] = new_lift;
  g.primal_[id] = !primal_[id];

  const int ua = steps[0].to, ub = steps[1].to, uc = steps[2].to;
  const int wab = far_of.at(std::minmax(ua, ub));
  const int wbc = far_of.at(std::minmax(ub, uc));
  const int wca = far_of.at(std::minmax(uc, ua));
  int slot = 0;
  std::array<Rhombus, 3> fresh{Rhombus{{ua, wab, id, wca}},
                               Rhombus{{ub, wbc, id, wab}},
                               Rhombus{{uc, wca, id, wbc}}};
  for (Rhombus& r : g.rhombi_)
    for (int s = 0; s < 4; ++s)
      if (r.corner[s] == id && slot < 3) {
        r = fresh[slot++];
        break;
      }
  g.finalize();
  return g;
}

std::vector<Direction> IsoradialGraph::flatness_diagnostic(
    double ray_angle, const std::vector<double>& radii) const {
  const Vec2 dir(std::cos(ray_angle), std::sin(ray_angle));
  const int x0 = reference_;
  std::vector<Direction> out;
  out.reserve(radii.size());
  for (double r : radii) {
    const int y = nearest_primal(pos_[x0] + r * dir);
    if (y == x0) throw DomainError("flatness_diagnostic: radius too small");
    out.push_back(reduced_coords(x0, y));
  }
  return out;
}

int IsoradialGraph::periodic_vertex(int dom, int n1, int n2) const {
  if (!periodic_) throw DomainError("periodic_vertex: graph is not periodic");
  const auto it = periodic_->vertex_index.find({dom, n1, n2});
  if (it == periodic_->vertex_index.end())
    throw DomainError("periodic_vertex: copy outside the window");
  return it->second;
}

std::vector<std::string> IsoradialGraph::audit(double tol) const {
  std::vector<std::string> bad;
  auto complain = [&](const std::string& s) {
    if (bad.size() < 32) bad.push_back(s);
  };

  for (const Rhombus& r : rhombi_) {
    Vec2 sum(0, 0);
    for (int s = 0; s < 4; ++s) {
      const Vec2 v = pos_[r.corner[(s + 1) % 4]] - pos_[r.corner[s]];
      if (std::abs(std::abs(v) - 1.0) > tol)
        complain("rhombus side is not unit length");
      sum += v;
    }
    if (std::abs(sum) > tol) complain("rhombus does not close up");
    if (primal_[r.corner[1]] || primal_[r.corner[3]] || !primal_[r.corner[0]] ||
        !primal_[r.corner[2]])
      complain("rhombus corners do not alternate primal/dual");
  }
  for (const PrimalEdge& e : edges_) {
    if (!(e.theta_bar > eps_ - 1e-12 && e.theta_bar < kPi / 2 - eps_ + 1e-12))
      complain("half-angle outside (eps, pi/2 - eps)");
    if (std::abs((e.beta_bar - e.alpha_bar) / 2 - e.theta_bar) > tol)
      complain("rhombus vector angles do not match the half-angle");
  }
  for (int i = 0; i < diamond_vertex_count(); ++i) {
    int psum = 0;
    for (int j = 0; j < d_; ++j) psum += lift_[i][j];
    const bool even = ((psum % 2) + 2) % 2 == 0;
    if (even != static_cast<bool>(primal_[i]))
      complain("lift parity disagrees with the primal flag");
    Vec2 rebuilt = pos_[reference_];
    for (int j = 0; j < d_; ++j) {
      const Vec2 e(std::cos(track_angles_[j]), std::sin(track_angles_[j]));
      rebuilt += static_cast<double>(lift_[i][j] - lift_[reference_][j]) * e;
    }
    if (std::abs(rebuilt - pos_[i]) > 1e-7)
      complain("position is not the projection of the lift");
  }
  return bad;
}

// ---------------------------------------------------------------------------
// direct lattice builders

IsoradialGraph IsoradialGraph::build_square(double theta_bar, int extent,
                                            double eps) {
  if (!(theta_bar > eps && theta_bar < kPi / 2 - eps))
    throw DomainError("build_square: half-angle outside (eps, pi/2 - eps)");
  if (extent < 1) throw DomainError("build_square: extent must be >= 1");

  IsoradialGraph g;
  g.d_ = 2;
  g.eps_ = eps;
  g.track_angles_ = {-theta_bar, theta_bar};
  const double c = std::cos(theta_bar), s = std::sin(theta_bar);
  const int E = extent;
  const int pw = 2 * E + 1;

  auto pid = [&](int i, int j) { return (i + E) * pw + (j + E); };
  const int np = pw * pw;
  auto did = [&](int i, int j) { return np + (i + E) * (2 * E) + (j + E); };

  for (int i = -E; i <= E; ++i)
    for (int j = -E; j <= E; ++j) {
      g.pos_.push_back(Vec2(2.0 * c * i, 2.0 * s * j));
      g.primal_.push_back(1);
    }
  for (int i = -E; i < E; ++i)
    for (int j = -E; j < E; ++j) {
      g.pos_.push_back(Vec2(2.0 * c * (i + 0.5), 2.0 * s * (j + 0.5)));
      g.primal_.push_back(0);
    }

  for (int i = -E; i < E; ++i)
    for (int j = -E + 1; j < E; ++j)
      g.rhombi_.push_back(Rhombus{{pid(i, j), did(i, j - 1), pid(i + 1, j), did(i, j)}});
  for (int j = -E; j < E; ++j)
    for (int i = -E + 1; i < E; ++i)
      g.rhombi_.push_back(Rhombus{{pid(i, j), did(i - 1, j), pid(i, j + 1), did(i, j)}});

  PeriodicStructure ps;
  ps.domain_size = 1;
  ps.t1 = Vec2(2.0 * c, 0.0);
  ps.t2 = Vec2(0.0, 2.0 * s);
  ps.coords.assign(g.pos_.size(), {-1, 0, 0});
  for (int i = -E; i <= E; ++i)
    for (int j = -E; j <= E; ++j) {
      ps.coords[pid(i, j)] = {0, i, j};
      ps.vertex_index[{0, i, j}] = pid(i, j);
    }
  g.periodic_ = std::move(ps);

  DirectionMap dm;
  dm.d = 2;
  dm.rows[0] = {1.0 / (2.0 * c), -1.0 / (2.0 * s)};
  dm.rows[1] = {1.0 / (2.0 * c), 1.0 / (2.0 * s)};
  g.dirmap_ = dm;

  g.finalize();
  return g;
}

IsoradialGraph IsoradialGraph::build_triangular(int extent, double eps) {
  if (extent < 1) throw DomainError("build_triangular: extent must be >= 1");
  if (!(kPi / 6 > eps))
    throw DomainError("build_triangular: eps excludes the pi/6 half-angle");

  IsoradialGraph g;
  g.d_ = 3;
  g.eps_ = eps;
  g.track_angles_ = {kPi / 6, kPi / 2, 5.0 * kPi / 6};
  const int E = extent;
  const int pw = 2 * E + 1;
  const Vec2 v1(std::sqrt(3.0), 0.0);
  const Vec2 v2(std::sqrt(3.0) / 2.0, 1.5);

  auto pt = [&](int a, int b) {
    return static_cast<double>(a) * v1 + static_cast<double>(b) * v2;
  };
  auto pid = [&](int a, int b) { return (a + E) * pw + (b + E); };
  const int np = pw * pw;
  auto uid = [&](int a, int b) { return np + ((a + E) * 2 * E + (b + E)) * 2; };
  auto wid = [&](int a, int b) { return uid(a, b) + 1; };

  for (int a = -E; a <= E; ++a)
    for (int b = -E; b <= E; ++b) {
      g.pos_.push_back(pt(a, b));
      g.primal_.push_back(1);
    }
  const Vec2 up_c(std::sqrt(3.0) / 2.0, 0.5);  // e^{i pi/6}
  const Vec2 dn_c(std::sqrt(3.0), 1.0);
  for (int a = -E; a < E; ++a)
    for (int b = -E; b < E; ++b) {
      g.pos_.push_back(pt(a, b) + up_c);
      g.primal_.push_back(0);
      g.pos_.push_back(pt(a, b) + dn_c);
      g.primal_.push_back(0);
    }

  for (int a = -E; a <= E; ++a)
    for (int b = -E; b <= E; ++b) {
      if (a < E && b > -E && b < E)  // +v1 edge
        g.rhombi_.push_back(
            Rhombus{{pid(a, b), uid(a, b), pid(a + 1, b), wid(a, b - 1)}});
      if (b < E && a > -E && a < E)  // +v2 edge
        g.rhombi_.push_back(
            Rhombus{{pid(a, b), uid(a, b), pid(a, b + 1), wid(a - 1, b)}});
      if (a < E && b < E)  // v2-v1 edge
        g.rhombi_.push_back(
            Rhombus{{pid(a + 1, b), uid(a, b), pid(a, b + 1), wid(a, b)}});
    }

  PeriodicStructure ps;
  ps.domain_size = 1;
  ps.t1 = v1;
  ps.t2 = v2 - v1;
  ps.coords.assign(g.pos_.size(), {-1, 0, 0});
  for (int a = -E; a <= E; ++a)
    for (int b = -E; b <= E; ++b) {
      ps.coords[pid(a, b)] = {0, a + b, b};
      ps.vertex_index[{0, a + b, b}] = pid(a, b);
    }
  g.periodic_ = std::move(ps);

  DirectionMap dm;
  dm.d = 3;
  const double r3 = std::sqrt(3.0);
  dm.rows[0] = {1.0 / r3, 1.0 / 3.0};
  dm.rows[1] = {0.0, 2.0 / 3.0};
  dm.rows[2] = {-1.0 / r3, 1.0 / 3.0};
  g.dirmap_ = dm;

  g.finalize();
  return g;
}

IsoradialGraph IsoradialGraph::build_alternating(double theta_a_bar,
                                                 double theta_b_bar, int extent,
                                                 double eps) {
  if (extent < 1) throw DomainError("build_alternating: extent must be >= 1");
  if (std::abs(theta_a_bar - theta_b_bar) < 1e-9)
    throw DomainError("build_alternating: equal angles; use build_square");
  for (double t : {theta_a_bar, theta_b_bar})
    if (!(t > eps && t < kPi / 2 - eps))
      throw DomainError("build_alternating: half-angle outside (eps, pi/2 - eps)");
  if (!((theta_a_bar + theta_b_bar) / 2 > eps &&
        (theta_a_bar + theta_b_bar) / 2 < kPi / 2 - eps))
    throw DomainError("build_alternating: mixed half-angle outside range");

  IsoradialGraph g;
  g.d_ = 3;
  g.eps_ = eps;
  std::vector<double> reps = {-theta_a_bar, -theta_b_bar, theta_a_bar};
  std::sort(reps.begin(), reps.end());
  g.track_angles_ = reps;

  const int E = extent;
  const int w = 2 * E + 1;
  auto col_step = [&](int i) {
    const double th = (((i % 2) + 2) % 2 == 0) ? theta_a_bar : theta_b_bar;
    return Vec2(std::cos(th), -std::sin(th));
  };
  const Vec2 B(std::cos(theta_a_bar), std::sin(theta_a_bar));

  std::vector<Vec2> colpos(w + 1);
  {
    Vec2 acc(0, 0);
    colpos[E] = acc;  // column coordinate i = 0 at slot E
    for (int i = 0; i < E; ++i) colpos[E + i + 1] = colpos[E + i] + col_step(i);
    for (int i = -1; i >= -E; --i) colpos[E + i] = colpos[E + i + 1] - col_step(i);
  }

  auto vid = [&](int i, int j) { return (i + E) * w + (j + E); };
  for (int i = -E; i <= E; ++i)
    for (int j = -E; j <= E; ++j) {
      g.pos_.push_back(colpos[i + E] + static_cast<double>(j) * B);
      g.primal_.push_back((((i + j) % 2) + 2) % 2 == 0);
    }
  for (int i = -E; i < E; ++i)
    for (int j = -E; j < E; ++j) {
      if ((((i + j) % 2) + 2) % 2 == 0)
        g.rhombi_.push_back(
            Rhombus{{vid(i, j), vid(i + 1, j), vid(i + 1, j + 1), vid(i, j + 1)}});
      else
        g.rhombi_.push_back(
            Rhombus{{vid(i + 1, j), vid(i + 1, j + 1), vid(i, j + 1), vid(i, j)}});
    }

  PeriodicStructure ps;
  ps.domain_size = 2;
  ps.t1 = col_step(0) + col_step(1);
  ps.t2 = 2.0 * B;
  ps.coords.assign(g.pos_.size(), {-1, 0, 0});
  for (int i = -E; i <= E; ++i)
    for (int j = -E; j <= E; ++j) {
      if ((((i + j) % 2) + 2) % 2 != 0) continue;
      const int dom = ((i % 2) + 2) % 2;
      const std::array<int, 3> key = {dom, (i - dom) / 2, (j - dom) / 2};
      ps.coords[vid(i, j)] = key;
      ps.vertex_index[key] = vid(i, j);
    }
  g.periodic_ = std::move(ps);

  // Column steps alternate strictly, so per unit displacement the two column
  // families advance at the same rate n and the row family at rate m.
  {
    const Vec2 ca = col_step(0) + col_step(1);
    const double det = ca.real() * B.imag() - ca.imag() * B.real();
    const std::array<double, 2> n_rate = {B.imag() / det, -B.real() / det};
    const std::array<double, 2> m_rate = {-ca.imag() / det, ca.real() / det};
    DirectionMap dm;
    dm.d = 3;
    for (int f = 0; f < 3; ++f) {
      const double rep = g.track_angles_[f];
      if (std::abs(rep - theta_a_bar) < 1e-12)
        dm.rows[f] = m_rate;
      else if (std::abs(rep + theta_a_bar) < 1e-12)
        dm.rows[f] = n_rate;
      else
        dm.rows[f] = n_rate;  // the -theta_b column family
    }
    g.dirmap_ = dm;
  }

  g.finalize();
  return g;
}

}  // namespace isogreen
