#pragma once

#include "hosc/basis.hpp"
#include "hosc/core.hpp"
#include "hosc/demos.hpp"
#include "hosc/error.hpp"
#include "hosc/evolve.hpp"
#include "hosc/io.hpp"
#include "hosc/moments.hpp"
#include "hosc/random.hpp"
#include "hosc/timeexpr.hpp"
#include "hosc/transform.hpp"
#include "hosc/verify.hpp"
