#pragma once

#include "demo.hpp"
#include "errors.hpp"
#include "gabor.hpp"
#include "metaplectic.hpp"
#include "operator.hpp"
#include "random.hpp"
#include "rational.hpp"
#include "ring.hpp"
#include "signal.hpp"
#include "wilson.hpp"
#include "zak.hpp"
