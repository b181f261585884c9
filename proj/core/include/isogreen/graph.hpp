#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "isogreen/errors.hpp"

// Isoradial embeddings with their diamond graphs: unit-circumradius primal
// graph, rhombus half-angles, train-track directions, and the monotone
// surface lift to Z^d. Graphs are immutable once built; star_triangle_flip
// returns a modified copy. All builders produce a finite window; queries
// outside it fail rather than extending the graph lazily.

namespace isogreen {

using Vec2 = std::complex<double>;

inline constexpr int kMaxTrackDirections = 8;
inline constexpr double kDefaultEps = 0.05;  // rhombus half-angle margin, radians

using LiftVector = std::array<std::int32_t, kMaxTrackDirections>;

int lift_l1(const LiftVector& a, const LiftVector& b);

// Signed per-family step counts of a minimal diamond path (the step multiset;
// it is the same for every minimal path between two vertices).
struct StepMultiset {
  int d = 0;
  LiftVector steps{};
  int l1() const;
};

// Reduced coordinates n_j = N_j / N; L1 norm 1, one sign per family.
struct Direction {
  int d = 0;
  std::array<double, kMaxTrackDirections> n{};

  Direction negated() const;
  double l1() const;
};

Direction direction_from_steps(const StepMultiset& s);

struct Rhombus {
  std::array<int, 4> corner;  // cyclic, corner[0] and corner[2] primal
};

struct PrimalEdge {
  int x = -1, y = -1;     // diamond vertex ids of the primal endpoints
  double theta_bar = 0;   // rhombus half-angle
  double alpha_bar = 0;   // rhombus vector angles; (beta-alpha)/2 = theta
  double beta_bar = 0;
  int rhombus = -1;
};

// Declared fundamental domain of a periodic builder: every primal vertex is
// (domain index, n1, n2) for the translation lattice spanned by t1, t2.
struct PeriodicStructure {
  int domain_size = 0;
  Vec2 t1, t2;
  std::vector<std::array<int, 3>> coords;          // indexed by diamond id
  std::map<std::array<int, 3>, int> vertex_index;  // (dom,n1,n2) -> diamond id
};

// Linear map from plane displacements to surface coordinate rates; defines
// the limiting reduced coordinates of planar rays on asymptotically flat
// builders.
struct DirectionMap {
  int d = 0;
  std::array<std::array<double, 2>, kMaxTrackDirections> rows{};

  Direction at_angle(double phi) const;
};

struct TrackFamily {
  std::vector<double> angles;   // per-track crossing-edge direction
  std::vector<double> offsets;  // multigrid mode only; empty = auto spacing
};

struct TrackSpec {
  std::vector<TrackFamily> families;
  double window = 0.0;  // multigrid crossing radius; 0 = derive from offsets
  double eps = kDefaultEps;
};

class IsoradialGraph {
 public:
  static IsoradialGraph build_square(double theta_bar, int extent,
                                     double eps = kDefaultEps);
  static IsoradialGraph build_triangular(int extent, double eps = kDefaultEps);
  // Square-like periodic graph whose columns alternate between two rhombus
  // geometries; fundamental domain of two primal vertices.
  static IsoradialGraph build_alternating(double theta_a_bar, double theta_b_bar,
                                          int extent, double eps = kDefaultEps);
  // De Bruijn style construction from train-track data. Two families are
  // interpreted combinatorially as a grid of pseudoline tracks (per-track
  // angles may vary along a family); three or more families require constant
  // angles per family and build a straight-line multigrid.
  static IsoradialGraph build_from_tracks(const TrackSpec& spec);

  int d() const { return d_; }
  double eps() const { return eps_; }
  const std::vector<double>& track_angles() const { return track_angles_; }

  int diamond_vertex_count() const { return static_cast<int>(pos_.size()); }
  Vec2 position(int id) const { return pos_[id]; }
  bool is_primal(int id) const { return primal_[id]; }
  bool is_interior(int id) const { return interior_[id]; }
  const LiftVector& lift(int id) const { return lift_[id]; }

  const std::vector<int>& primal_vertices() const { return primal_ids_; }
  const std::vector<PrimalEdge>& edges() const { return edges_; }
  const std::vector<Rhombus>& rhombi() const { return rhombi_; }
  // Primal edges incident to a primal vertex (indices into edges()).
  const std::vector<int>& edges_at(int id) const { return edges_at_[id]; }

  struct DiamondStep {
    int to;
    int family;
    int sign;  // +1 along e^{i alpha_fam}, -1 opposite
  };
  const std::vector<DiamondStep>& diamond_neighbors(int id) const {
    return adj_[id];
  }

  int reference_vertex() const { return reference_; }
  int nearest_primal(Vec2 p) const;
  int nearest_diamond(Vec2 p) const;

  StepMultiset minimal_path(int x, int y) const;
  Direction reduced_coords(int x, int y) const;
  // An explicit shortest diamond path (one of possibly many), by BFS.
  std::vector<int> shortest_diamond_path(int x, int y) const;

  bool flippable(int id) const;
  IsoradialGraph star_triangle_flip(int id) const;

  std::vector<Direction> flatness_diagnostic(double ray_angle,
                                             const std::vector<double>& radii) const;

  const std::optional<PeriodicStructure>& periodic() const { return periodic_; }
  int periodic_vertex(int dom, int n1, int n2) const;
  const std::optional<DirectionMap>& direction_map() const { return dirmap_; }

  // Geometric invariants: unit rhombus sides, rhombus closure, half-angle
  // range, track ordering, lift consistency. Returns human-readable
  // violations (empty = clean).
  std::vector<std::string> audit(double tol = 1e-9) const;

 private:
  static IsoradialGraph build_grid_tracks(const TrackSpec& spec);
  static IsoradialGraph build_multigrid_tracks(const TrackSpec& spec);

  // derive adjacency, lifts, parity flags, edges, interior marks; drops
  // diamond vertices that sit on no rhombus
  void finalize();

  int d_ = 0;
  double eps_ = kDefaultEps;
  std::vector<double> track_angles_;

  std::vector<Vec2> pos_;
  std::vector<char> primal_;
  std::vector<char> interior_;
  std::vector<LiftVector> lift_;
  std::vector<Rhombus> rhombi_;

  std::vector<int> primal_ids_;
  std::vector<PrimalEdge> edges_;
  std::vector<std::vector<int>> edges_at_;
  std::vector<std::vector<DiamondStep>> adj_;
  int reference_ = -1;

  std::optional<PeriodicStructure> periodic_;
  std::optional<DirectionMap> dirmap_;

  // uniform hash grid for nearest-vertex queries
  std::unordered_map<std::int64_t, std::vector<int>> cells_;
  void index_points();
  int nearest_impl(Vec2 p, bool primal_only) const;
};

// Builder configuration file (the graph-spec format). Emission is canonical:
// fixed key order, floats at 17 significant digits, so emit/parse round-trips
// bit-stably.
struct GraphSpec {
  int version = 1;
  std::string builder;  // "square" | "triangular" | "alternating" | "tracks"
  double epsilon = kDefaultEps;
  int extent = 0;
  double theta_bar = 0.0;                  // square
  double theta_a_bar = 0.0, theta_b_bar = 0.0;  // alternating
  TrackSpec tracks;                        // tracks
};

std::string write_graph_spec(const GraphSpec& spec);
GraphSpec parse_graph_spec(const std::string& text);
IsoradialGraph build_from_spec(const GraphSpec& spec);

// Two-family grid whose column angles alternate between angle_a and angle_b
// in blocks of geometrically growing length 1, 2, 4, ..., 2^(n_blocks-1),
// mirrored around the center. Reduced coordinates along a fixed planar ray
// oscillate with the blocks, so the graph is not asymptotically flat.
TrackSpec make_waves_spec(int n_blocks, double angle_a, double angle_b,
                          double row_angle, int rows);

}  // namespace isogreen
