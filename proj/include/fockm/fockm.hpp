#pragma once

#include "bargmann.hpp"
#include "coeffspace.hpp"
#include "dual_algebra.hpp"
#include "errors.hpp"
#include "hermite.hpp"
#include "ladder.hpp"
#include "numeric.hpp"
#include "operators.hpp"
#include "quadrature.hpp"
#include "radial_kernel.hpp"
#include "stirling.hpp"
#include "taylor.hpp"
