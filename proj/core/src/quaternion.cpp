#include "lks/quaternion.hpp"

#include "lks/errors.hpp"

namespace lks {

UnitVector3::UnitVector3(const Vec3& v) {
  const double n = norm(v);
  if (!(n > 0.0) || !std::isfinite(n)) fail(ErrorKind::InvalidArgument, "unit vector from zero or non-finite vector");
  v_ = v / n;
}

Quaternion rotor_q(const UnitVector3& c, double phi) { return {std::cos(phi), std::sin(phi) * c.vec()}; }

Quaternion rotor_p(const UnitVector3& xhat, double phi) { return {std::cos(phi), std::sin(phi) * xhat.vec()}; }

}  // namespace lks
