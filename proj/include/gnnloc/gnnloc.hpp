// Umbrella header. io.hpp is not included: it needs nlohmann/json.
#pragma once

#include "gnnloc/common.hpp"
#include "gnnloc/graph.hpp"
#include "gnnloc/harness.hpp"
#include "gnnloc/model.hpp"
#include "gnnloc/scene.hpp"
#include "gnnloc/spectral.hpp"
#include "gnnloc/train.hpp"
