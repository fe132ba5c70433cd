#pragma once

#include "quatem/analytic_fields.hpp"
#include "quatem/chiral_maxwell.hpp"
#include "quatem/complex_quaternion.hpp"
#include "quatem/errors.hpp"
#include "quatem/geometry.hpp"
#include "quatem/integral_operators.hpp"
#include "quatem/io.hpp"
#include "quatem/kernels.hpp"
#include "quatem/medium.hpp"
