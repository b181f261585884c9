#include <algorithm>
#include <cmath>
#include <map>
#include <string>
#include <vector>

#include "isogreen/graph.hpp"

// Train-track construction. Two families are treated as a combinatorial grid
// of pseudoline tracks (angles may vary along a family); three or more
// constant-angle families build a straight-line multigrid, with one rhombus
// per track crossing.

namespace isogreen {

namespace {

constexpr double kPi = 3.14159265358979323846;

double wrap_pi(double a) {
  a = std::fmod(a, kPi);
  if (a < 0.0) a += kPi;
  return a;
}

// signed difference b-a folded into (-pi, pi]
double angle_diff(double b, double a) {
  double d = std::fmod(b - a, 2.0 * kPi);
  if (d <= -kPi) d += 2.0 * kPi;
  if (d > kPi) d -= 2.0 * kPi;
  return d;
}

std::vector<double> direction_classes(const std::vector<double>& angles) {
  std::vector<double> reps;
  for (double a : angles) {
    const double r = wrap_pi(a);
    bool found = false;
    for (double q : reps) {
      if (std::abs(angle_diff(r, q)) < 1e-9 ||
          std::abs(std::abs(angle_diff(r, q)) - kPi) < 1e-9) {
        found = true;
        break;
      }
    }
    if (!found) reps.push_back(r);
  }
  std::sort(reps.begin(), reps.end());
  return reps;
}

}  // namespace

IsoradialGraph IsoradialGraph::build_grid_tracks(const TrackSpec& spec) {
  std::vector<double> cols = spec.families[0].angles;
  std::vector<double> rows = spec.families[1].angles;
  if (cols.empty() || rows.empty())
    throw DomainError("build_from_tracks: empty track family");

  // orient the grid so every row direction is a positive turn from every
  // column direction
  int pos_count = 0, neg_count = 0;
  for (double a : cols)
    for (double b : rows) (angle_diff(b, a) > 0 ? pos_count : neg_count)++;
  if (pos_count != 0 && neg_count != 0)
    throw DomainError("build_from_tracks: families are not transversal");
  if (neg_count > 0) std::swap(cols, rows);

  const double eps = spec.eps;
  for (double a : cols)
    for (double b : rows) {
      const double delta = angle_diff(b, a);
      if (!(delta > 2.0 * eps && delta < kPi - 2.0 * eps))
        throw DomainError("build_from_tracks: degenerate rhombus half-angle");
    }

  const int nc = static_cast<int>(cols.size());
  const int nr = static_cast<int>(rows.size());

  IsoradialGraph g;
  g.eps_ = eps;
  std::vector<double> all = cols;
  all.insert(all.end(), rows.begin(), rows.end());
  g.track_angles_ = direction_classes(all);
  g.d_ = static_cast<int>(g.track_angles_.size());

  std::vector<Vec2> cpos(nc + 1), rpos(nr + 1);
  for (int i = 0; i < nc; ++i)
    cpos[i + 1] = cpos[i] + Vec2(std::cos(cols[i]), std::sin(cols[i]));
  for (int j = 0; j < nr; ++j)
    rpos[j + 1] = rpos[j] + Vec2(std::cos(rows[j]), std::sin(rows[j]));

  int ic = nc / 2, jc = nr / 2;
  if ((ic + jc) % 2 != 0) ic > 0 ? --ic : ++ic;
  const Vec2 center = cpos[ic] + rpos[jc];

  auto vid = [&](int i, int j) { return i * (nr + 1) + j; };
  for (int i = 0; i <= nc; ++i)
    for (int j = 0; j <= nr; ++j) {
      g.pos_.push_back(cpos[i] + rpos[j] - center);
      g.primal_.push_back((i + j) % 2 == (ic + jc) % 2);
    }
  for (int i = 0; i < nc; ++i)
    for (int j = 0; j < nr; ++j)
      g.rhombi_.push_back(
          Rhombus{{vid(i, j), vid(i + 1, j), vid(i + 1, j + 1), vid(i, j + 1)}});

  // limiting reduced coordinates exist when both families are constant
  const bool cols_const =
      std::all_of(cols.begin(), cols.end(),
                  [&](double a) { return std::abs(a - cols[0]) < 1e-12; });
  const bool rows_const =
      std::all_of(rows.begin(), rows.end(),
                  [&](double a) { return std::abs(a - rows[0]) < 1e-12; });
  if (cols_const && rows_const && g.d_ == 2) {
    const Vec2 A(std::cos(cols[0]), std::sin(cols[0]));
    const Vec2 B(std::cos(rows[0]), std::sin(rows[0]));
    const double det = A.real() * B.imag() - A.imag() * B.real();
    const std::array<double, 2> col_rate = {B.imag() / det, -B.real() / det};
    const std::array<double, 2> row_rate = {-A.imag() / det, A.real() / det};
    DirectionMap dm;
    dm.d = 2;
    for (int f = 0; f < 2; ++f) {
      const double rep = g.track_angles_[f];
      const bool is_col = std::abs(angle_diff(wrap_pi(cols[0]), rep)) < 1e-9;
      const auto& rate = is_col ? col_rate : row_rate;
      const double src = is_col ? cols[0] : rows[0];
      const double sigma =
          std::abs(angle_diff(src, rep)) < 1e-9 ? 1.0 : -1.0;  // orientation
      dm.rows[f] = {sigma * rate[0], sigma * rate[1]};
    }
    g.dirmap_ = dm;
  }

  g.finalize();
  return g;
}

IsoradialGraph IsoradialGraph::build_multigrid_tracks(const TrackSpec& spec) {
  struct Line {
    int family;
    Vec2 eta;    // crossing-edge direction (the line runs perpendicular)
    double c;    // offset: the line is { p : p . eta = c }
  };
  std::vector<Line> lines;
  std::vector<double> fam_angle;
  for (const TrackFamily& fam : spec.families) {
    if (fam.angles.empty()) throw DomainError("build_from_tracks: empty family");
    for (double a : fam.angles)
      if (std::abs(a - fam.angles[0]) > 1e-12)
        throw DomainError(
            "build_from_tracks: variable angles within a family need the "
            "two-family grid mode");
    fam_angle.push_back(fam.angles[0]);
  }
  for (std::size_t f = 0; f < spec.families.size(); ++f)
    for (std::size_t h = f + 1; h < spec.families.size(); ++h) {
      const double delta = wrap_pi(fam_angle[h] - fam_angle[f]);
      const double gap = std::min(delta, kPi - delta);
      if (gap < 1e-9)
        throw DomainError("build_from_tracks: parallel tracks across families");
      if (!(std::min(delta, kPi - delta) > 2.0 * spec.eps - 1e-15))
        throw DomainError("build_from_tracks: degenerate rhombus half-angle");
    }
  for (std::size_t f = 0; f < spec.families.size(); ++f) {
    const TrackFamily& fam = spec.families[f];
    const int count = static_cast<int>(fam.angles.size());
    const Vec2 eta(std::cos(fam_angle[f]), std::sin(fam_angle[f]));
    for (int idx = 0; idx < count; ++idx) {
      const double c = fam.offsets.empty() ? idx - count / 2 + 0.5
                                           : fam.offsets[idx];
      if (std::abs(c) < 1e-9)
        throw DomainError("build_from_tracks: a track passes through the origin");
      lines.push_back({static_cast<int>(f), eta, c});
    }
  }

  double window = spec.window;
  if (window <= 0.0) {
    for (const Line& l : lines) window = std::max(window, std::abs(l.c));
    window += 1.0;
  }

  IsoradialGraph g;
  g.eps_ = spec.eps;
  g.track_angles_ = direction_classes(fam_angle);
  g.d_ = static_cast<int>(g.track_angles_.size());
  if (g.d_ != static_cast<int>(spec.families.size()))
    throw DomainError("build_from_tracks: families collapse to fewer directions");

  const int nl = static_cast<int>(lines.size());
  std::vector<char> origin_side(nl);
  for (int l = 0; l < nl; ++l) origin_side[l] = lines[l].c < 0.0;

  std::map<std::string, int> corner_ids;
  auto corner_of = [&](const std::string& key, Vec2 p) {
    const auto it = corner_ids.find(key);
    if (it != corner_ids.end()) return it->second;
    const int id = static_cast<int>(g.pos_.size());
    corner_ids.emplace(key, id);
    g.pos_.push_back(p);
    int parity = 0;
    for (int l = 0; l < nl; ++l) parity += (key[l] != 0) != (origin_side[l] != 0);
    g.primal_.push_back(parity % 2 == 0);
    return id;
  };

  std::map<std::pair<long long, long long>, int> crossing_seen;
  for (int a = 0; a < nl; ++a) {
    for (int b = a + 1; b < nl; ++b) {
      if (lines[a].family == lines[b].family) continue;
      const double det = lines[a].eta.real() * lines[b].eta.imag() -
                         lines[a].eta.imag() * lines[b].eta.real();
      const Vec2 p((lines[a].c * lines[b].eta.imag() -
                    lines[b].c * lines[a].eta.imag()) / det,
                   (lines[b].c * lines[a].eta.real() -
                    lines[a].c * lines[b].eta.real()) / det);
      if (std::abs(p) > window) continue;
      const std::pair<long long, long long> qk = {
          std::llround(p.real() * 1e6), std::llround(p.imag() * 1e6)};
      if (++crossing_seen[qk] > 1)
        throw DomainError("build_from_tracks: three tracks meet at a point");

      std::string base(nl, '\0');
      Vec2 base_pos(0, 0);
      for (int l = 0; l < nl; ++l) {
        if (l == a || l == b) continue;
        const double side = p.real() * lines[l].eta.real() +
                            p.imag() * lines[l].eta.imag() - lines[l].c;
        if (std::abs(side) < 1e-9)
          throw DomainError("build_from_tracks: tracks nearly concurrent");
        if (side > 0.0) {
          base[l] = 1;
          base_pos += lines[l].eta;
        }
      }
      auto corner = [&](bool sa, bool sb) {
        std::string key = base;
        Vec2 q = base_pos;
        if (sa) {
          key[a] = 1;
          q += lines[a].eta;
        }
        if (sb) {
          key[b] = 1;
          q += lines[b].eta;
        }
        return corner_of(key, q);
      };
      g.rhombi_.push_back(Rhombus{{corner(false, false), corner(true, false),
                                   corner(true, true), corner(false, true)}});
    }
  }
  if (g.rhombi_.empty())
    throw DomainError("build_from_tracks: no crossings inside the window");

  g.finalize();
  return g;
}

IsoradialGraph IsoradialGraph::build_from_tracks(const TrackSpec& spec) {
  if (spec.families.size() < 2)
    throw DomainError("build_from_tracks: need at least two families");
  if (spec.families.size() == 2) return build_grid_tracks(spec);
  return build_multigrid_tracks(spec);
}

TrackSpec make_waves_spec(int n_blocks, double angle_a, double angle_b,
                          double row_angle, int rows) {
  if (n_blocks < 1 || rows < 1) throw DomainError("make_waves_spec: bad sizes");
  std::vector<double> half;
  for (int b = 0; b < n_blocks; ++b) {
    const double a = (b % 2 == 0) ? angle_a : angle_b;
    for (int i = 0; i < (1 << b); ++i) half.push_back(a);
  }
  std::vector<double> cols(half.rbegin(), half.rend());
  cols.insert(cols.end(), half.begin(), half.end());

  TrackSpec spec;
  spec.families.resize(2);
  spec.families[0].angles = cols;
  spec.families[1].angles.assign(rows, row_angle);
  return spec;
}

}  // namespace isogreen
