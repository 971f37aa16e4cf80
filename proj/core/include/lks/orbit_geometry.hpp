#pragma once

#include <optional>
#include <string>
#include <vector>

#include "lks/lissajous_lks.hpp"

namespace lks {

struct KeplerElements {
  double a = 0.0;
  double e = 0.0;
  double I = 0.0;
  double arg_pericentre = 0.0;
  double node = 0.0;
  double true_anomaly = 0.0;
};

struct CartesianState {
  Vec3 x;
  Vec3 X;
};

CartesianState elements_to_cartesian(const KeplerElements& el, double mu);

enum class ElementDegeneracy { None, Circular, Equatorial, CircularEquatorial, Radial };

std::string to_string(ElementDegeneracy d);

// Elements of an elliptic state. Angles that do not exist for the detected degeneracy are empty;
// the surviving combination is filled instead (argument of latitude, longitude of pericentre,
// true longitude, or the apsidal direction of a radial orbit).
struct ElementExtraction {
  ElementDegeneracy degeneracy = ElementDegeneracy::None;
  double a = 0.0;
  double e = 0.0;
  std::optional<double> I;
  std::optional<double> arg_pericentre;
  std::optional<double> node;
  std::optional<double> true_anomaly;
  std::optional<double> arg_latitude;
  std::optional<double> longitude_of_pericentre;
  std::optional<double> true_longitude;
  std::optional<Vec3> apsidal_direction;

  // Full element set; throws DegenerateElements unless degeneracy is None.
  KeplerElements elements() const;
};

ElementExtraction cartesian_to_elements(const Vec3& x, const Vec3& X, double mu, double tol = 1e-10);

Vec3 angular_momentum_lks(const LKSState& state);
Vec3 lrl_vector_lks(const LKSState& state);

struct CartanPair {
  Vec3 M;
  Vec3 N;
  Vec3 Mp;  // projection on the (x1, x2) plane
  Vec3 Np;
};

CartanPair cartan_vectors(const LKSState& state);

// Quarter of the oriented angle from N' to M'. Throws UndefinedLambda when a projection vanishes.
double lambda_from_projections(const CartanPair& pair, double tol = 1e-12);

enum class OrbitClassKind {
  GenericCircular,
  CircularPolar,
  CircularEquatorial,
  GenericRadial,
  RadialEquatorial,
  RadialPolar,
  GenericEquatorial,
  GenericPolar,
  Generic,
};

std::string to_string(OrbitClassKind k);

// Membership of the boundary |G| + |Lambda| = L. cases is "a".."d", or two letters at a vertex.
struct EdgeInfo {
  std::string cases;
  std::string surviving;
};

struct OrbitClass {
  OrbitClassKind kind = OrbitClassKind::Generic;
  std::vector<std::string> undetermined;
  std::optional<EdgeInfo> edge;
};

inline constexpr double kClassifyTolerance = 1e-8;

OrbitClass classify(const LKSState& state, double tol = kClassifyTolerance);

struct DelaunayReport {
  double L_residual = 0.0;       // L - 2 sqrt(mu a)
  double G_residual = 0.0;       // G - 2 (x cross X) . e3
  double Lambda_residual = 0.0;  // Lambda - 2 J . e3
  double max_abs() const;
};

DelaunayReport delaunay_checks(const LKSState& state, double mu);

}  // namespace lks
