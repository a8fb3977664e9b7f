#pragma once

#include "helix3/classify.hpp"
#include "helix3/congruence.hpp"
#include "helix3/curve_oracle.hpp"
#include "helix3/error.hpp"
#include "helix3/expr.hpp"
#include "helix3/frenet.hpp"
#include "helix3/helix.hpp"
#include "helix3/io.hpp"
#include "helix3/projection.hpp"
#include "helix3/samples.hpp"
#include "helix3/trig_extract.hpp"
#include "helix3/vec4.hpp"
