#pragma once

#include "lks/errors.hpp"
#include "lks/ks_transform.hpp"
#include "lks/lidov_kozai.hpp"
#include "lks/lissajous_lks.hpp"
#include "lks/ode.hpp"
#include "lks/orbit_geometry.hpp"
#include "lks/propagation.hpp"
#include "lks/quaternion.hpp"
