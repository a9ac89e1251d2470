#pragma once

#include "dini/errors.hpp"
#include "dini/numerics.hpp"
#include "dini/specfun.hpp"
#include "dini/zeros.hpp"
#include "dini/basis.hpp"
#include "dini/kernels.hpp"
#include "dini/bounds.hpp"
