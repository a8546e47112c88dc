#pragma once

#include "galg/error.hpp"
#include "galg/zmod_linalg.hpp"
#include "galg/ring.hpp"
#include "galg/ideal.hpp"
#include "galg/groupoid.hpp"
#include "galg/action.hpp"
#include "galg/globalization.hpp"
#include "galg/tensor.hpp"
#include "galg/skewring.hpp"
#include "galg/invariants.hpp"
#include "galg/morita.hpp"
#include "galg/instances.hpp"
#include "galg/io.hpp"
#include "galg/verify.hpp"
